//! The real-line preimage equation: Im(H(x + iy)) = 0 splits off the factor
//! y and a singular quartic with a node at h = 4. Verified exactly in Q[x, y].

use crate::error::{Error, Result};
use crate::multipoly::{MultiPoly, Var};
use crate::rational::rat;

/// Complex polynomial split into exact real and imaginary parts.
#[derive(Clone)]
struct SplitPoly {
    re: MultiPoly,
    im: MultiPoly,
}

impl SplitPoly {
    fn new(re: MultiPoly, im: MultiPoly) -> Self {
        SplitPoly { re, im }
    }

    fn mul(&self, other: &SplitPoly) -> SplitPoly {
        SplitPoly {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }
}

/// The quartic factor of Eq-free form:
/// ((x-4)^2 + y^2)^2 + 16 (x-4) ((x-4)^2 + y^2) + 16 (3 (x-4)^2 - y^2).
pub fn quartic_factor() -> MultiPoly {
    let u = &MultiPoly::var(Var::X) - &MultiPoly::constant(rat(4));
    let y = MultiPoly::var(Var::Y);
    let r2 = &u.pow(2) + &y.pow(2);
    let a = r2.pow(2);
    let b = (&u * &r2).scale(&rat(16));
    let c = (&u.pow(2).scale(&rat(3)) - &y.pow(2)).scale(&rat(16));
    &(&a + &b) + &c
}

/// Exact identity: Im(H(x+iy)) * (-27)(x^2+y^2)^2 equals y times the quartic
/// factor (rational scalar 1), and the y = 0 slice of the quartic factors as
/// x (x-4)^2 (x+8). Returns the reported scalar on success.
pub fn quartic_identity_check() -> Result<String> {
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);

    // (z - 4)^3 with z = x + iy
    let z_minus_4 = SplitPoly::new(&x - &MultiPoly::constant(rat(4)), y.clone());
    let cube = z_minus_4.mul(&z_minus_4).mul(&z_minus_4);
    // conj(z)^2
    let conj_z = SplitPoly::new(x.clone(), -&y);
    let conj_sq = conj_z.mul(&conj_z);
    // Im[(z-4)^3 conj(z)^2] = Im(H(z)) * (-27) |z|^4
    let im_part = cube.mul(&conj_sq).im;

    let rhs = &y * &quartic_factor();
    let diff = &im_part - &rhs;
    if !diff.is_zero() {
        return Err(Error::IdentityFailed {
            check: "quartic_identity".into(),
            witness: format!("{}", diff),
        });
    }

    // y = 0 specialization of the quartic factor: x (x-4)^2 (x+8)
    let slice = quartic_factor().eval_partial(&[(Var::Y, rat(0))]);
    let u = &x - &MultiPoly::constant(rat(4));
    let expect = &(&x * &u.pow(2)) * &(&x + &MultiPoly::constant(rat(8)));
    let sdiff = &slice - &expect;
    if !sdiff.is_zero() {
        return Err(Error::IdentityFailed {
            check: "quartic_real_slice".into(),
            witness: format!("{}", sdiff),
        });
    }

    Ok("Im(H) * (-27)|h|^4 = y * quartic; scalar 1; slice x(x-4)^2(x+8)".to_string())
}
