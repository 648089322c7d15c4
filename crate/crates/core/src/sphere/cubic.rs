//! The preimage cubic of H: for a target value c, the fiber H^{-1}(c) is the
//! root set of g(h) = (h - 4)^3 + 27 c h^2.
//!
//! Critical targets {0, 1, inf} get their exact divisors. Everywhere else the
//! three roots are simple; they are seeded per regime (Cardano generically,
//! local expansions when c is close to a critical value, the far chart when
//! |c| is hugs) and polished by Newton on the factored form, which evaluates
//! without cancellation even for c down at 1e-40.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sphere::point::SpherePoint;

/// Default relative dedup tolerance on normalized projective pairs.
pub const DEDUP_TOL: f64 = 1e-8;
/// Residual acceptance threshold for polished roots.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct PreimageRoot {
    pub point: SpherePoint,
    pub multiplicity: u32,
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn g(h: Complex64, c: Complex64) -> Complex64 {
    let u = h - 4.0;
    u * u * u + 27.0 * c * h * h
}

fn g_prime(h: Complex64, c: Complex64) -> Complex64 {
    let u = h - 4.0;
    3.0 * u * u + 54.0 * c * h
}

/// g rewritten in the far chart w = 1/h, cleared by h^3:
/// g~(w) = (1 - 4w)^3 + 27 c w.
fn g_far(w: Complex64, c: Complex64) -> Complex64 {
    let u = 1.0 - 4.0 * w;
    u * u * u + 27.0 * c * w
}

fn g_far_prime(w: Complex64, c: Complex64) -> Complex64 {
    let u = 1.0 - 4.0 * w;
    -12.0 * u * u + 27.0 * c
}

fn newton<F, D>(f: F, d: D, mut z: Complex64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    // Plain Newton; near-multiple roots converge linearly, so allow plenty
    // of iterations and stop on a stagnant step.
    for _ in 0..200 {
        let fv = f(z);
        let dv = d(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = fv / dv;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Polish a near-root of g(., c), switching to the far chart when |h| > 8.
pub fn polish_root(c: Complex64, seed: SpherePoint) -> SpherePoint {
    match seed.value() {
        Some(h) if h.norm() <= 8.0 => {
            let r = newton(|z| g(z, c), |z| g_prime(z, c), h);
            SpherePoint::finite(r)
        }
        other => {
            let w0 = match other {
                Some(h) => h.inv(),
                None => c64(0.0),
            };
            let w = newton(|z| g_far(z, c), |z| g_far_prime(z, c), w0);
            if w.norm() == 0.0 {
                SpherePoint::infinity()
            } else {
                SpherePoint::from_pair(c64(1.0), w)
            }
        }
    }
}

/// Relative backward error of a candidate root, chart-aware.
pub fn residual(c: Complex64, p: &SpherePoint) -> f64 {
    match p.value() {
        Some(h) if h.norm() <= 8.0 => {
            let u = (h - 4.0).norm();
            let scale = u * u * u + 27.0 * c.norm() * h.norm_sqr() + 64.0;
            g(h, c).norm() / scale
        }
        other => {
            let w = match other {
                Some(h) => h.inv(),
                None => c64(0.0),
            };
            let u = (1.0 - 4.0 * w).norm();
            let scale = u * u * u + 27.0 * c.norm() * w.norm() + 1.0;
            g_far(w, c).norm() / scale
        }
    }
}

fn cbrt(z: Complex64) -> Complex64 {
    z.powf(1.0 / 3.0)
}

const OMEGA: Complex64 = Complex64::new(-0.5, 0.866_025_403_784_438_6);

/// Cardano roots of the monic cubic h^3 + a2 h^2 + a1 h + a0.
fn cardano(a2: Complex64, a1: Complex64, a0: Complex64) -> [Complex64; 3] {
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    // pick the branch that avoids cancellation in u^3
    let u3a = -q / 2.0 + disc;
    let u3b = -q / 2.0 - disc;
    let u3 = if u3a.norm() >= u3b.norm() { u3a } else { u3b };
    let mut roots = [c64(0.0); 3];
    if u3.norm() == 0.0 {
        // p = q = 0: triple root at the shift point
        for r in &mut roots {
            *r = -shift;
        }
        return roots;
    }
    let u = cbrt(u3);
    for (k, r) in roots.iter_mut().enumerate() {
        let uk = u * OMEGA.powu(k as u32);
        *r = uk - p / (3.0 * uk) - shift;
    }
    roots
}

/// Seed candidates for the three roots of g(., c), regime by |c|.
fn seeds(c: Complex64) -> Vec<SpherePoint> {
    let mut out = Vec::with_capacity(3);
    if c.norm() < 1e-3 {
        // roots split off the triple point 4: (h-4)^3 ~ -432 c
        let delta = cbrt(-432.0 * c);
        for k in 0..3u32 {
            out.push(SpherePoint::finite(c64(4.0) + delta * OMEGA.powu(k)));
        }
    } else if (c - c64(1.0)).norm() < 1e-3 {
        // double point at -8 splits as -8 +- sqrt(192 (c-1)); simple root
        // near 1 moves with derivative -3
        let s = (192.0 * (c - c64(1.0))).sqrt();
        out.push(SpherePoint::finite(c64(-8.0) + s));
        out.push(SpherePoint::finite(c64(-8.0) - s));
        out.push(SpherePoint::finite(c64(1.0) - (c - c64(1.0)) / 3.0));
    } else if c.norm() > 1e3 {
        // two roots collapse toward the double pole 0, one escapes to -27c
        let s = (c64(-64.0) / (27.0 * c)).sqrt();
        out.push(SpherePoint::finite(s));
        out.push(SpherePoint::finite(-s));
        out.push(SpherePoint::from_pair(c64(1.0), -1.0 / (27.0 * c - 12.0)));
    } else {
        for r in cardano(27.0 * c - c64(12.0), c64(48.0), c64(-64.0)) {
            out.push(SpherePoint::finite(r));
        }
    }
    out
}

/// Exact critical fibers, straight from the divisors of H.
fn exact_fiber(c: &SpherePoint) -> Option<Vec<PreimageRoot>> {
    if c.is_infinity() {
        return Some(vec![
            PreimageRoot {
                point: SpherePoint::real(0.0),
                multiplicity: 2,
            },
            PreimageRoot {
                point: SpherePoint::infinity(),
                multiplicity: 1,
            },
        ]);
    }
    let v = c.value().unwrap();
    if v == c64(0.0) {
        return Some(vec![PreimageRoot {
            point: SpherePoint::real(4.0),
            multiplicity: 3,
        }]);
    }
    if v == c64(1.0) {
        return Some(vec![
            PreimageRoot {
                point: SpherePoint::real(1.0),
                multiplicity: 1,
            },
            PreimageRoot {
                point: SpherePoint::real(-8.0),
                multiplicity: 2,
            },
        ]);
    }
    None
}

/// The fiber H^{-1}(c) with multiplicities summing to 3.
pub fn solve_preimage(c: &SpherePoint, tol: f64) -> Result<Vec<PreimageRoot>> {
    if let Some(fiber) = exact_fiber(c) {
        return Ok(fiber);
    }
    let cv = c.value().expect("finite non-critical target");
    let mut roots: Vec<SpherePoint> = Vec::with_capacity(3);
    for seed in seeds(cv) {
        let r = polish_root(cv, seed);
        let res = residual(cv, &r);
        if res > RESIDUAL_TOL {
            return Err(Error::RootFindingDiverged {
                target: format!("{}", c),
                residual: res,
            });
        }
        roots.push(r);
    }

    // cluster within tol, then demand clear separation between clusters
    let mut clusters: Vec<PreimageRoot> = Vec::new();
    'outer: for r in roots {
        for cl in &mut clusters {
            if cl.point.approx_eq(&r, tol) {
                cl.multiplicity += 1;
                continue 'outer;
            }
        }
        clusters.push(PreimageRoot {
            point: r,
            multiplicity: 1,
        });
    }
    for i in 0..clusters.len() {
        for j in (i + 1)..clusters.len() {
            let d = clusters[i].point.chordal(&clusters[j].point);
            if d < 10.0 * tol {
                return Err(Error::DedupAmbiguity {
                    near: format!("{}", clusters[i].point),
                    separation: d,
                });
            }
        }
    }
    // away from the critical values the fiber is simple; a merged cluster
    // here means the polish collapsed two branches
    if clusters.iter().any(|cl| cl.multiplicity > 1) {
        let bad = clusters.iter().find(|cl| cl.multiplicity > 1).unwrap();
        return Err(Error::DedupAmbiguity {
            near: format!("{}", bad.point),
            separation: 0.0,
        });
    }
    debug_assert_eq!(clusters.iter().map(|r| r.multiplicity).sum::<u32>(), 3);
    Ok(clusters)
}

/// Continue a single known branch of the fiber to a nearby target: Newton
/// from `start` on g(., c). Used by curve tracing where the full fiber is
/// already threaded.
pub fn track_root(c: &SpherePoint, start: &SpherePoint) -> Result<SpherePoint> {
    if let Some(fiber) = exact_fiber(c) {
        let best = fiber
            .iter()
            .min_by(|x, y| {
                x.point
                    .chordal(start)
                    .partial_cmp(&y.point.chordal(start))
                    .unwrap()
            })
            .unwrap();
        return Ok(best.point);
    }
    let cv = c.value().unwrap();
    let r = polish_root(cv, *start);
    let res = residual(cv, &r);
    if res > RESIDUAL_TOL {
        return Err(Error::RootFindingDiverged {
            target: format!("{}", c),
            residual: res,
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_has_root(fiber: &[PreimageRoot], h: SpherePoint, mult: u32, tol: f64) {
        let hit = fiber
            .iter()
            .find(|r| r.point.approx_eq(&h, tol))
            .unwrap_or_else(|| panic!("no root near {}", h));
        assert_eq!(hit.multiplicity, mult, "multiplicity at {}", h);
    }

    #[test]
    fn critical_fibers_exact() {
        let f0 = solve_preimage(&SpherePoint::real(0.0), DEDUP_TOL).unwrap();
        assert_eq!(f0.len(), 1);
        assert_has_root(&f0, SpherePoint::real(4.0), 3, 0.0);

        let f1 = solve_preimage(&SpherePoint::real(1.0), DEDUP_TOL).unwrap();
        assert_eq!(f1.len(), 2);
        assert_has_root(&f1, SpherePoint::real(1.0), 1, 0.0);
        assert_has_root(&f1, SpherePoint::real(-8.0), 2, 0.0);

        let finf = solve_preimage(&SpherePoint::infinity(), DEDUP_TOL).unwrap();
        assert_eq!(finf.len(), 2);
        assert_has_root(&finf, SpherePoint::real(0.0), 2, 0.0);
        assert_has_root(&finf, SpherePoint::infinity(), 1, 0.0);
    }

    #[test]
    fn generic_fiber_roundtrip() {
        for c in [
            Complex64::new(0.37, 0.0),
            Complex64::new(-3.0, 1.5),
            Complex64::new(12.0, -7.0),
            Complex64::new(0.5, 0.0),
        ] {
            let target = SpherePoint::finite(c);
            let fiber = solve_preimage(&target, DEDUP_TOL).unwrap();
            assert_eq!(fiber.len(), 3);
            for r in &fiber {
                assert_eq!(r.multiplicity, 1);
                assert!(
                    r.point.eval_h().approx_eq(&target, 1e-9),
                    "H(root) != c at c = {}",
                    c
                );
            }
        }
    }

    #[test]
    fn near_critical_regimes() {
        // c tiny: roots split off 4 at scale (432 c)^(1/3)
        for mag in [1e-6, 1e-12, 1e-21, 1e-40] {
            let target = SpherePoint::finite(Complex64::new(mag, 0.0));
            let fiber = solve_preimage(&target, DEDUP_TOL).unwrap();
            assert_eq!(fiber.len(), 3, "at c = {:e}", mag);
            let expect = (432.0 * mag).powf(1.0 / 3.0);
            for r in &fiber {
                let d = (r.point.value().unwrap() - Complex64::new(4.0, 0.0)).norm();
                // the first-order splitting radius, up to its own O(d) error
                assert!((d - expect).abs() < 0.2 * expect, "c={:e}", mag);
                assert!(r.point.eval_h().approx_eq(&target, 1e-9));
            }
        }
        // c near 1: double point -8 splits at scale sqrt(192 |c-1|)
        let target = SpherePoint::finite(Complex64::new(1.0 + 1e-10, 0.0));
        let fiber = solve_preimage(&target, DEDUP_TOL).unwrap();
        assert_eq!(fiber.len(), 3);
        for r in &fiber {
            assert!(r.point.eval_h().approx_eq(&target, 1e-9));
        }
        // c huge: two roots near 0, one near -27c
        let big = Complex64::new(-4e11, 3e10);
        let target = SpherePoint::finite(big);
        let fiber = solve_preimage(&target, DEDUP_TOL).unwrap();
        assert_eq!(fiber.len(), 3);
        for r in &fiber {
            assert!(r.point.eval_h().approx_eq(&target, 1e-9));
        }
        let far = fiber
            .iter()
            .map(|r| r.point.chordal(&SpherePoint::infinity()))
            .fold(f64::INFINITY, f64::min);
        assert!(far < 1e-10, "one root should sit near infinity");
    }

    #[test]
    fn cardano_against_known_factorization() {
        // H(h) = c with c such that the cubic factors nicely: c = -5/27 gives
        // (h-4)^3 - 5 h^2 = 0 ... just verify residuals and forward images
        let c = Complex64::new(-5.0 / 27.0, 0.0);
        let target = SpherePoint::finite(c);
        let fiber = solve_preimage(&target, DEDUP_TOL).unwrap();
        for r in &fiber {
            assert!(residual(c, &r.point) < 1e-14);
        }
    }

    #[test]
    fn track_follows_branch() {
        // walk c along (0,1) and keep hold of the branch through h in (1,4)
        let mut h = SpherePoint::real(2.0);
        let mut c = SpherePoint::real(2.0).eval_h();
        for k in 1..40 {
            let t = 2.0 / 27.0 + k as f64 * 0.02;
            let next = SpherePoint::real(t);
            h = track_root(&next, &h).unwrap();
            c = next;
        }
        assert!(h.eval_h().approx_eq(&c, 1e-9));
        // the branch stays real inside (1,4) which maps onto (0,1)
        let hv = h.value().unwrap();
        assert!(hv.im.abs() < 1e-9 && hv.re > 1.0 && hv.re < 4.0);
    }
}
