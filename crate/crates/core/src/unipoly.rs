//! Dense univariate polynomials over the rationals.
//!
//! Coefficient index equals the power; the vector carries no trailing zeros,
//! so `deg p = coeffs.len() - 1` and the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::{rat, Rat};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Coefficients given from the constant term upward, as i64 for brevity.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(rat(1))
    }

    /// The monomial `c * t^n`.
    pub fn monomial(c: Rat, n: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![rat(0); n + 1];
        coeffs[n] = c;
        UniPoly { coeffs }
    }

    pub fn var() -> Self {
        UniPoly::monomial(rat(1), 1)
    }

    /// `t - a`.
    pub fn linear_root(a: Rat) -> Self {
        UniPoly::from_coeffs(vec![-a, rat(1)])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(|| rat(0))
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == rat(1)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![rat(0); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (k, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + k;
                rem[idx] = rem[idx].clone() - c.clone() * dc.clone();
            }
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Monic greatest common divisor. Runs a primitive pseudo-remainder
    /// sequence over the integers; plain rational Euclid blows up its
    /// coefficient sizes already around degree 30.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let monic = |p: &UniPoly| {
            let lead = p.leading();
            p.scale(&(rat(1) / lead))
        };
        if self.is_zero() {
            return if other.is_zero() {
                UniPoly::zero()
            } else {
                monic(other)
            };
        }
        if other.is_zero() {
            return monic(self);
        }
        let mut a = primitive_ints(self);
        let mut b = primitive_ints(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = pseudo_rem(&a, &b);
            if r.is_empty() {
                let coeffs = b
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                return monic(&UniPoly::from_coeffs(coeffs));
            }
            a = b;
            b = strip_content(r);
        }
    }

    /// `self(inner)` by Horner over polynomials.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Multiplicity of the rational root `a` (zero if not a root).
    pub fn root_multiplicity(&self, a: &Rat) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut p = self.clone();
        let lin = UniPoly::linear_root(a.clone());
        let mut k = 0;
        while !p.is_zero() && p.eval(a).is_zero() {
            let (q, r) = p.div_rem(&lin);
            debug_assert!(r.is_zero());
            p = q;
            k += 1;
        }
        k
    }
}

/// Clear denominators and strip integer content; sign normalized positive.
fn primitive_ints(p: &UniPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = &lcm / lcm.gcd(c.denom()) * c.denom();
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    strip_content(ints)
}

fn strip_content(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while matches!(v.last(), Some(c) if c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if v.last().unwrap().sign() == num_bigint::Sign::Minus {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

/// One full pseudo-remainder: prem(a, b) with deg a >= deg b >= 0.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    while r.len() > db {
        let ri = r.last().unwrap().clone();
        if ri.is_zero() {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - db;
        for c in &mut r {
            *c = &*c * &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &ri * bc;
        }
        while matches!(r.last(), Some(c) if c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*t", c)?,
                _ => write!(f, "{}*t^{}", c, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn division_and_gcd() {
        // (h-4)^3 + 27h^2 = h^3 + 15h^2 + 48h - 64 = (h-1)(h+8)^2
        let p = UniPoly::from_ints(&[-64, 48, 15, 1]);
        let built = &UniPoly::linear_root(rat(4)).pow(3)
            + &UniPoly::monomial(rat(27), 2);
        assert_eq!(p, built);
        let factored = &UniPoly::linear_root(rat(1)) * &UniPoly::linear_root(rat(-8)).pow(2);
        assert_eq!(p, factored);
        let (q, r) = p.div_rem(&UniPoly::linear_root(rat(1)));
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::linear_root(rat(-8)).pow(2));
        let g = p.gcd(&p.derivative());
        assert_eq!(g, UniPoly::linear_root(rat(-8)));
    }

    #[test]
    fn multiplicities() {
        let p = UniPoly::from_ints(&[-64, 48, 15, 1]);
        assert_eq!(p.root_multiplicity(&rat(1)), 1);
        assert_eq!(p.root_multiplicity(&rat(-8)), 2);
        assert_eq!(p.root_multiplicity(&rat(0)), 0);
    }

    #[test]
    fn compose_horner() {
        // (t^2) o (t+1) = t^2 + 2t + 1
        let sq = UniPoly::monomial(rat(1), 2);
        let shift = UniPoly::from_ints(&[1, 1]);
        assert_eq!(sq.compose(&shift), UniPoly::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn eval_horner() {
        let p = UniPoly::from_ints(&[-64, 48, 15, 1]);
        assert_eq!(p.eval(&rat(1)), rat(0));
        assert_eq!(p.eval(&ratio(1, 2)), ratio(-64 * 8 + 48 * 4 + 15 * 2 + 1, 8));
    }
}
