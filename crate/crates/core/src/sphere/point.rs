//! Points of the Riemann sphere as normalized projective pairs.

use std::fmt;

use num_complex::Complex64;

/// Projective pair (a, b), h = a/b, with b = 0 the point at infinity.
/// Normalized so max(|a|, |b|) = 1; equality is cross-product comparison.
#[derive(Debug, Clone, Copy)]
pub struct SpherePoint {
    a: Complex64,
    b: Complex64,
}

impl SpherePoint {
    pub fn from_pair(a: Complex64, b: Complex64) -> SpherePoint {
        assert!(
            a.norm() > 0.0 || b.norm() > 0.0,
            "projective pair cannot be (0, 0)"
        );
        let mut p = SpherePoint { a, b };
        p.normalize();
        p
    }

    pub fn finite(h: Complex64) -> SpherePoint {
        if h.re.abs() > 1e300 || h.im.abs() > 1e300 {
            // keep huge finite inputs well-conditioned in the far chart
            return SpherePoint::from_pair(Complex64::new(1.0, 0.0), h.inv());
        }
        SpherePoint::from_pair(h, Complex64::new(1.0, 0.0))
    }

    pub fn real(x: f64) -> SpherePoint {
        SpherePoint::finite(Complex64::new(x, 0.0))
    }

    pub fn infinity() -> SpherePoint {
        SpherePoint {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    fn normalize(&mut self) {
        let na = self.a.norm();
        let nb = self.b.norm();
        let scale = na.max(nb);
        debug_assert!(scale > 0.0);
        self.a /= scale;
        self.b /= scale;
    }

    pub fn pair(&self) -> (Complex64, Complex64) {
        (self.a, self.b)
    }

    pub fn is_infinity(&self) -> bool {
        self.b.norm() == 0.0
    }

    /// Affine value; `None` at infinity.
    pub fn value(&self) -> Option<Complex64> {
        if self.is_infinity() {
            None
        } else {
            Some(self.a / self.b)
        }
    }

    pub fn conj(&self) -> SpherePoint {
        SpherePoint {
            a: self.a.conj(),
            b: self.b.conj(),
        }
    }

    /// Chordal distance |a1 b2 - a2 b1| / (|(a1,b1)| |(a2,b2)|), at most 1.
    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        let cross = (self.a * other.b - other.a * self.b).norm();
        let n1 = (self.a.norm_sqr() + self.b.norm_sqr()).sqrt();
        let n2 = (other.a.norm_sqr() + other.b.norm_sqr()).sqrt();
        cross / (n1 * n2)
    }

    pub fn approx_eq(&self, other: &SpherePoint, tol: f64) -> bool {
        self.chordal(other) <= tol
    }

    /// Real within tolerance (the point at infinity is real).
    pub fn is_real(&self, tol: f64) -> bool {
        self.chordal(&self.conj()) <= tol
    }

    /// One application of H in projective form: (a, b) -> (-(a - 4b)^3, 27 a^2 b).
    /// Total on the sphere; the image pair never degenerates.
    pub fn eval_h(&self) -> SpherePoint {
        let u = self.a - 4.0 * self.b;
        let na = -(u * u * u);
        let nb = 27.0 * self.a * self.a * self.b;
        SpherePoint::from_pair(na, nb)
    }

    pub fn eval_iterate(&self, n: u32) -> SpherePoint {
        let mut p = *self;
        for _ in 0..n {
            p = p.eval_h();
        }
        p
    }

    /// Derivative dH/dh = -(1/27) (h-4)^2 (h+8) / h^3 at a finite point.
    pub fn eval_h_derivative(&self) -> Option<Complex64> {
        let h = self.value()?;
        let u = h - 4.0;
        Some(-(u * u) * (h + 8.0) / (27.0 * h * h * h))
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => write!(f, "inf"),
            Some(h) => {
                if h.im == 0.0 {
                    write!(f, "{}", h.re)
                } else {
                    write!(f, "{}{}{}i", h.re, if h.im < 0.0 { "-" } else { "+" }, h.im.abs())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_orbit_exact() {
        // 4 -> 0 -> inf -> inf, and -8 -> 1 -> 1
        let p4 = SpherePoint::real(4.0);
        let zero = p4.eval_h();
        assert_eq!(zero.value().unwrap(), Complex64::new(0.0, 0.0));
        let inf = zero.eval_h();
        assert!(inf.is_infinity());
        assert!(inf.eval_h().is_infinity());

        let m8 = SpherePoint::real(-8.0);
        let one = m8.eval_h();
        assert_eq!(one.value().unwrap(), Complex64::new(1.0, 0.0));
        assert!(one.eval_h().approx_eq(&one, 1e-15));
    }

    #[test]
    fn frozen_values() {
        // H(2) = 2/27 (paper closed form)
        let v = SpherePoint::real(2.0).eval_h().value().unwrap();
        assert!((v - Complex64::new(2.0 / 27.0, 0.0)).norm() < 1e-15);
        // H(H(2)) = 297754/729
        let v2 = SpherePoint::real(2.0).eval_iterate(2).value().unwrap();
        assert!((v2 - Complex64::new(297754.0 / 729.0, 0.0)).norm() < 1e-11);
        // H^3(0) = inf through the orbit 0 -> inf -> inf
        assert!(SpherePoint::real(0.0).eval_iterate(3).is_infinity());
        // H^2(1) = 1
        assert!(SpherePoint::real(1.0)
            .eval_iterate(2)
            .approx_eq(&SpherePoint::real(1.0), 1e-15));
    }

    #[test]
    fn scale_invariance() {
        let lambda = Complex64::new(-2.5, 1.25);
        let p = SpherePoint::from_pair(Complex64::new(0.3, -1.1), Complex64::new(0.7, 0.2));
        let q = SpherePoint::from_pair(
            lambda * Complex64::new(0.3, -1.1),
            lambda * Complex64::new(0.7, 0.2),
        );
        assert!(p.approx_eq(&q, 1e-14));
        assert!(p.eval_h().approx_eq(&q.eval_h(), 1e-14));
    }

    #[test]
    fn conjugation_equivariance() {
        let p = SpherePoint::finite(Complex64::new(1.7, -0.4));
        let lhs = p.conj().eval_h();
        let rhs = p.eval_h().conj();
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn chordal_metric_basics() {
        let zero = SpherePoint::real(0.0);
        let inf = SpherePoint::infinity();
        assert!((zero.chordal(&inf) - 1.0).abs() < 1e-15);
        assert_eq!(zero.chordal(&zero), 0.0);
        // huge finite point is close to infinity
        let big = SpherePoint::real(1e12);
        assert!(big.chordal(&inf) < 1e-11);
    }

    #[test]
    fn derivative_vanishes_exactly_at_critical_points() {
        assert_eq!(
            SpherePoint::real(4.0).eval_h_derivative().unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            SpherePoint::real(-8.0).eval_h_derivative().unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert!(SpherePoint::real(2.0).eval_h_derivative().unwrap().norm() > 0.0);
    }
}
