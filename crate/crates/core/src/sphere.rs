//! Dynamics of H on the Riemann sphere in the h coordinate.

pub mod cubic;
pub mod point;
pub mod preimage;
pub mod quartic;
pub mod trace;

pub use cubic::{solve_preimage, track_root, PreimageRoot, DEDUP_TOL, RESIDUAL_TOL};
pub use point::SpherePoint;
pub use preimage::{
    analytic_passport, analytic_passport_default, critical_containment_check, iterated_preimages,
    AnalyticPassport, PreimageNode, PreimageTree,
};
pub use quartic::{quartic_factor, quartic_identity_check};
pub use trace::{
    trace_preimage_curves, IntervalClass, TraceConfig, TraceResult, TracedCurve, VertexMatch,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::ProjRat;
    use crate::rational::{rat, ratio, to_f64, Rat};
    use num_complex::Complex64;

    /// Numeric iteration agrees with the symbolically composed iterate at
    /// exact rational points, up to 1e-9, for n <= 4.
    #[test]
    fn numeric_iterates_match_symbolic_composition() {
        let h1 = crate::hesse::hstar_h();
        let mut sym = h1.clone();
        for n in 1..=4u32 {
            if n > 1 {
                sym = sym.compose(&h1).unwrap();
            }
            for (p, q) in [(2i64, 1i64), (-3, 1), (7, 2), (-1, 3), (9, 4), (22, 7)] {
                let x: Rat = ratio(p, q);
                let expected = sym.eval(&x);
                let got = SpherePoint::real(to_f64(&rat(0)) + to_f64(&x)).eval_iterate(n);
                match expected {
                    ProjRat::Finite(v) => {
                        let ev = Complex64::new(to_f64(&v), 0.0);
                        let target = SpherePoint::finite(ev);
                        assert!(
                            got.approx_eq(&target, 1e-9),
                            "n = {}, x = {}/{}: {} vs {}",
                            n,
                            p,
                            q,
                            got,
                            target
                        );
                    }
                    ProjRat::Infinity => assert!(got.chordal(&SpherePoint::infinity()) < 1e-9),
                }
            }
        }
    }

    /// Fixed points: 1 and infinity; 0 is strictly pre-fixed.
    #[test]
    fn fixed_point_census() {
        assert!(SpherePoint::real(1.0)
            .eval_h()
            .approx_eq(&SpherePoint::real(1.0), 1e-15));
        assert!(SpherePoint::infinity().eval_h().is_infinity());
        let zero_image = SpherePoint::real(0.0).eval_h();
        assert!(zero_image.is_infinity());
        assert!(!SpherePoint::real(0.0).approx_eq(&zero_image, 0.5));
    }
}
