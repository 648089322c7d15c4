//! Exact scalar arithmetic: arbitrary-precision rationals.
//!
//! `Rat` is always reduced with a positive denominator; those invariants are
//! maintained by `num_rational` on every operation, so the canonical zero is
//! `0/1` and equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

/// Lossy conversion for numeric work; exact inputs stay within f64 range
/// everywhere this is used.
pub fn to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Split into quotient and remainder so huge but cancelling parts survive.
    let (q, rem) = (num / den, num % den);
    let q: f64 = bigint_to_f64(&q);
    let frac = bigint_to_f64(&rem) / bigint_to_f64(den);
    q + frac
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    // `to_string` round-trip is exact for anything that fits in f64 and
    // saturates gracefully otherwise; fine for display-grade conversion.
    n.to_string().parse::<f64>().unwrap_or_else(|_| {
        if n.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn canonical_zero() {
        assert_eq!(ratio(0, 7), rat(0));
        assert!(is_zero(&ratio(0, 7)));
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&ratio(1, 4)), 0.25);
        assert_eq!(to_f64(&rat(-3)), -3.0);
        let big = ratio(297754, 729);
        assert!((to_f64(&big) - 408.4417009602195).abs() < 1e-9);
    }
}
