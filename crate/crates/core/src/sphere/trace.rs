//! Tracing of G_n, the preimage of the real circle under the n-th iterate.
//!
//! Each of the three oriented intervals between consecutive points of
//! {0, 1, inf} is sampled, every sample is pulled back through the full
//! depth-n preimage tree, and the 3^n resulting point clouds are threaded
//! into oriented polylines by nearest-neighbor continuation. Polyline ends
//! are then walked down a geometric parameter tail onto the vertex fibers.


use serde::Serialize;

use crate::error::{Error, Result};
use crate::sphere::cubic::{track_root, DEDUP_TOL};
use crate::sphere::point::SpherePoint;
use crate::sphere::preimage::iterated_preimages;

pub const MAX_TRACE_LEVEL: u32 = 4;
/// Polyline ends must land this close to a vertex-fiber point.
const SNAP_TOL: f64 = 1e-7;
/// Bisection budget while threading.
const MAX_REFINE_DEPTH: u32 = 14;
/// Geometric tail budget; each step shrinks the parameter gap 8x.
const MAX_TAIL_STEPS: u32 = 70;

/// The three decorations: the interval of the real line an edge maps onto,
/// oriented from negative to positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntervalClass {
    /// (inf, 0): the negative reals, entered from infinity.
    IntNeg,
    /// (0, 1).
    Int01,
    /// (1, inf).
    Int1Inf,
}

impl IntervalClass {
    pub const ALL: [IntervalClass; 3] =
        [IntervalClass::IntNeg, IntervalClass::Int01, IntervalClass::Int1Inf];

    /// Oriented endpoints on the sphere.
    pub fn endpoints(&self) -> (SpherePoint, SpherePoint) {
        match self {
            IntervalClass::IntNeg => (SpherePoint::infinity(), SpherePoint::real(0.0)),
            IntervalClass::Int01 => (SpherePoint::real(0.0), SpherePoint::real(1.0)),
            IntervalClass::Int1Inf => (SpherePoint::real(1.0), SpherePoint::infinity()),
        }
    }

    /// Interior parameterization; t in (0, 1) increasing along orientation.
    pub fn at(&self, t: f64) -> SpherePoint {
        debug_assert!(t > 0.0 && t < 1.0);
        match self {
            IntervalClass::IntNeg => SpherePoint::real((t - 1.0) / t),
            IntervalClass::Int01 => SpherePoint::real(t),
            IntervalClass::Int1Inf => SpherePoint::real(1.0 / (1.0 - t)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IntervalClass::IntNeg => "intNeg",
            IntervalClass::Int01 => "int01",
            IntervalClass::Int1Inf => "int1Inf",
        }
    }
}

/// Which endpoint fiber a polyline end landed on.
#[derive(Debug, Clone)]
pub struct VertexMatch {
    /// The vertex-fiber point the end converged to.
    pub target: SpherePoint,
    /// Index into the endpoint's fiber leaf list.
    pub leaf_index: usize,
    /// Final chordal distance between the last traced point and the target.
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct TracedCurve {
    pub class: IntervalClass,
    /// Oriented along the lift of the real orientation.
    pub points: Vec<SpherePoint>,
    pub start: VertexMatch,
    pub end: VertexMatch,
}

impl TracedCurve {
    pub fn is_real(&self, tol: f64) -> bool {
        self.points.iter().all(|p| p.is_real(tol))
    }

    /// Strictly in the open upper half-plane away from the endpoints.
    pub fn in_upper_half_plane(&self) -> bool {
        let interior = &self.points[1..self.points.len().saturating_sub(1)];
        !interior.is_empty()
            && interior
                .iter()
                .all(|p| p.value().map(|h| h.im > 0.0).unwrap_or(false))
    }
}

#[derive(Debug, Clone)]
pub struct TraceResult {
    pub level: u32,
    pub curves: Vec<TracedCurve>,
}

#[derive(Debug, Clone, Copy)]
pub struct TraceConfig {
    pub samples_per_edge: usize,
    pub dedup_tol: f64,
    pub continuation_factor: f64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            samples_per_edge: 33,
            dedup_tol: DEDUP_TOL,
            continuation_factor: 8.0,
        }
    }
}

/// A branch under continuation: the chain of preimage points level by level
/// (the last entry is the traced leaf) plus the polyline gathered so far.
/// The chain at the first sample is kept for the start-side tail.
#[derive(Debug, Clone)]
struct Branch {
    first_chain: Vec<SpherePoint>,
    chain: Vec<SpherePoint>,
    points: Vec<SpherePoint>,
}

impl Branch {
    fn leaf(&self) -> SpherePoint {
        *self.chain.last().unwrap()
    }
}

/// All depth-n chains over a regular value: 3^n of them, each running from
/// the first preimage level down to the leaf.
fn fiber_chains(c: &SpherePoint, n: u32, tol: f64) -> Result<Vec<Vec<SpherePoint>>> {
    let tree = iterated_preimages(c, n, tol)?;
    let leaf_ids = tree.levels.last().unwrap();
    let mut chains = Vec::with_capacity(leaf_ids.len());
    for &id in leaf_ids {
        let mut chain = Vec::with_capacity(n as usize);
        let mut cur = Some(id);
        while let Some(i) = cur {
            chain.push(tree.nodes[i].point);
            cur = tree.nodes[i].parent;
        }
        chain.reverse();
        chains.push(chain);
    }
    Ok(chains)
}

/// Greedy minimum-distance bijection between branch leaves and fiber chains.
/// Returns per-branch fiber index and the matched step distances.
fn match_fiber(ends: &[SpherePoint], fiber: &[Vec<SpherePoint>]) -> (Vec<usize>, Vec<f64>) {
    let k = ends.len();
    let mut pairs = Vec::with_capacity(k * k);
    for (b, e) in ends.iter().enumerate() {
        for (f, chain) in fiber.iter().enumerate() {
            pairs.push((e.chordal(chain.last().unwrap()), b, f));
        }
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut branch_to_fiber = vec![usize::MAX; k];
    let mut fiber_used = vec![false; k];
    let mut dists = vec![0.0; k];
    let mut assigned = 0;
    for (d, b, f) in pairs {
        if branch_to_fiber[b] != usize::MAX || fiber_used[f] {
            continue;
        }
        branch_to_fiber[b] = f;
        fiber_used[f] = true;
        dists[b] = d;
        assigned += 1;
        if assigned == k {
            break;
        }
    }
    (branch_to_fiber, dists)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v[v.len() / 2]
}

struct Tracer<'a> {
    class: IntervalClass,
    n: u32,
    cfg: &'a TraceConfig,
    branches: Vec<Branch>,
    t_cur: f64,
}

impl<'a> Tracer<'a> {
    /// Move every branch from t_cur to t_next, bisecting when some branch
    /// jumps beyond the adaptive threshold.
    fn advance(&mut self, t_next: f64, depth: u32) -> Result<()> {
        let c = self.class.at(t_next);
        let fiber = fiber_chains(&c, self.n, self.cfg.dedup_tol)?;
        let ends: Vec<SpherePoint> = self.branches.iter().map(|b| b.leaf()).collect();
        let (assign, dists) = match_fiber(&ends, &fiber);
        let med = median(dists.clone());
        let threshold = self.cfg.continuation_factor * med.max(1e-12);
        let worst = dists.iter().cloned().fold(0.0, f64::max);
        if worst > threshold {
            if depth >= MAX_REFINE_DEPTH {
                return Err(Error::ContinuationJump {
                    at: format!("{} at t = {}", self.class.name(), t_next),
                    step: worst,
                    threshold,
                });
            }
            let mid = 0.5 * (self.t_cur + t_next);
            self.advance(mid, depth + 1)?;
            return self.advance(t_next, depth + 1);
        }
        for (b, branch) in self.branches.iter_mut().enumerate() {
            branch.chain = fiber[assign[b]].clone();
            branch.points.push(branch.leaf());
        }
        self.t_cur = t_next;
        Ok(())
    }
}

/// Walk one branch end down a geometric parameter tail onto the endpoint's
/// vertex fiber. Appends the tail points and returns the landing.
#[allow(clippy::too_many_arguments)]
fn tail_to_vertex(
    class: IntervalClass,
    chain: &mut [SpherePoint],
    gap0: f64,
    toward_start: bool,
    vertex_leaves: &[SpherePoint],
    out: &mut Vec<SpherePoint>,
) -> Result<VertexMatch> {
    let mut gap = gap0;
    for _ in 0..MAX_TAIL_STEPS {
        gap /= 8.0;
        let t = if toward_start { gap } else { 1.0 - gap };
        if !(t > 0.0 && t < 1.0) {
            break;
        }
        let mut target = class.at(t);
        for point in chain.iter_mut() {
            *point = track_root(&target, point)?;
            target = *point;
        }
        let leaf = *chain.last().unwrap();
        out.push(leaf);
        let (best_idx, best_d) = vertex_leaves
            .iter()
            .enumerate()
            .map(|(i, v)| (i, leaf.chordal(v)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if best_d <= SNAP_TOL {
            return Ok(VertexMatch {
                target: vertex_leaves[best_idx],
                leaf_index: best_idx,
                distance: best_d,
            });
        }
    }
    Err(Error::ContinuationJump {
        at: format!("{} endpoint tail", class.name()),
        step: gap,
        threshold: SNAP_TOL,
    })
}

/// Vertex fiber of the n-th iterate over an interval endpoint.
fn vertex_fiber(v: &SpherePoint, n: u32, tol: f64) -> Result<Vec<SpherePoint>> {
    if n == 0 {
        return Ok(vec![*v]);
    }
    Ok(iterated_preimages(v, n, tol)?
        .leaves()
        .map(|l| l.point)
        .collect())
}

/// Trace (H^n)^{-1} of the three decorated intervals into oriented polylines.
pub fn trace_preimage_curves(n: u32, cfg: &TraceConfig) -> Result<TraceResult> {
    if n > MAX_TRACE_LEVEL {
        return Err(Error::SizeLimit {
            level: n,
            max: MAX_TRACE_LEVEL,
        });
    }
    if cfg.samples_per_edge < 8 {
        return Err(Error::SizeLimit {
            level: cfg.samples_per_edge as u32,
            max: 8,
        });
    }
    let k = cfg.samples_per_edge;
    // cosine-graded interior parameters, denser toward both endpoints
    let ts: Vec<f64> = (0..k)
        .map(|i| {
            let u = (i as f64 + 1.0) / (k as f64 + 1.0);
            0.5 * (1.0 - (std::f64::consts::PI * u).cos())
        })
        .collect();

    let mut curves = Vec::new();
    for class in IntervalClass::ALL {
        let (start_v, end_v) = class.endpoints();
        let start_fiber = vertex_fiber(&start_v, n, cfg.dedup_tol)?;
        let end_fiber = vertex_fiber(&end_v, n, cfg.dedup_tol)?;

        if n == 0 {
            // the base circle itself, one decorated segment per class
            let mut points = vec![start_v];
            points.extend(ts.iter().map(|&t| class.at(t)));
            points.push(end_v);
            curves.push(TracedCurve {
                class,
                points,
                start: VertexMatch {
                    target: start_v,
                    leaf_index: 0,
                    distance: 0.0,
                },
                end: VertexMatch {
                    target: end_v,
                    leaf_index: 0,
                    distance: 0.0,
                },
            });
            continue;
        }

        // seed branches from the first sample's fiber
        let first = fiber_chains(&class.at(ts[0]), n, cfg.dedup_tol)?;
        let mut tracer = Tracer {
            class,
            n,
            cfg,
            branches: first
                .into_iter()
                .map(|chain| Branch {
                    points: vec![*chain.last().unwrap()],
                    first_chain: chain.clone(),
                    chain,
                })
                .collect(),
            t_cur: ts[0],
        };
        for &t in &ts[1..] {
            tracer.advance(t, 0)?;
        }

        for branch in tracer.branches {
            // tail toward the start (reversed so the polyline stays oriented)
            let mut chain_start = branch.first_chain.clone();
            let mut tail_start = Vec::new();
            let start = tail_to_vertex(
                class,
                &mut chain_start,
                ts[0],
                true,
                &start_fiber,
                &mut tail_start,
            )?;
            let mut chain_end = branch.chain.clone();
            let mut tail_end = Vec::new();
            let end = tail_to_vertex(
                class,
                &mut chain_end,
                1.0 - *ts.last().unwrap(),
                false,
                &end_fiber,
                &mut tail_end,
            )?;
            tail_start.reverse();
            let mut points = tail_start;
            points.extend(branch.points);
            points.extend(tail_end);
            curves.push(TracedCurve {
                class,
                points,
                start,
                end,
            });
        }
    }
    Ok(TraceResult { level: n, curves })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(p: &SpherePoint, x: f64) -> bool {
        p.approx_eq(&SpherePoint::real(x), 1e-6)
    }

    #[test]
    fn level_zero_is_the_decorated_circle() {
        let r = trace_preimage_curves(0, &TraceConfig::default()).unwrap();
        assert_eq!(r.curves.len(), 3);
        for c in &r.curves {
            assert!(c.is_real(1e-12));
        }
    }

    #[test]
    fn level_one_topology() {
        let r = trace_preimage_curves(1, &TraceConfig::default()).unwrap();
        assert_eq!(r.curves.len(), 9);
        let real: Vec<_> = r.curves.iter().filter(|c| c.is_real(1e-7)).collect();
        let complex: Vec<_> = r.curves.iter().filter(|c| !c.is_real(1e-7)).collect();
        assert_eq!(real.len(), 5, "five real segments");
        assert_eq!(complex.len(), 4, "four quartic arcs");
        let upper: Vec<_> = complex
            .iter()
            .filter(|c| c.in_upper_half_plane())
            .collect();
        assert_eq!(upper.len(), 2, "two arcs in the upper half-plane");

        // the upper arcs connect 4 to 0 and 4 to -8
        let mut endpoint_sets: Vec<Vec<f64>> = upper
            .iter()
            .map(|c| {
                let mut e = vec![
                    c.start.target.value().unwrap().re,
                    c.end.target.value().unwrap().re,
                ];
                e.sort_by(|a, b| a.partial_cmp(b).unwrap());
                e
            })
            .collect();
        endpoint_sets.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
        assert!((endpoint_sets[0][0] + 8.0).abs() < 1e-6); // 4 to -8
        assert!((endpoint_sets[0][1] - 4.0).abs() < 1e-6);
        assert!(endpoint_sets[1][0].abs() < 1e-6); // 4 to 0
        assert!((endpoint_sets[1][1] - 4.0).abs() < 1e-6);
    }

    #[test]
    fn real_segment_one_four_has_int01_decoration() {
        let r = trace_preimage_curves(1, &TraceConfig::default()).unwrap();
        let seg = r
            .curves
            .iter()
            .find(|c| {
                c.class == IntervalClass::Int01
                    && c.is_real(1e-7)
                    && near(&c.start.target, 4.0)
                    && near(&c.end.target, 1.0)
            })
            .expect("real (1,4) segment oriented 4 -> 1");
        // H is decreasing there: the lift runs from 4 down to 1
        let first = seg.points.first().unwrap().value().unwrap().re;
        let last = seg.points.last().unwrap().value().unwrap().re;
        assert!(first > last);
        for p in &seg.points {
            let x = p.value().unwrap().re;
            assert!(x > 1.0 - 1e-6 && x < 4.0 + 1e-6);
        }
    }

    #[test]
    fn endpoints_land_on_vertex_fibers() {
        let r = trace_preimage_curves(2, &TraceConfig::default()).unwrap();
        assert_eq!(r.curves.len(), 27);
        for c in &r.curves {
            assert!(c.start.distance <= 1e-6, "start {:e}", c.start.distance);
            assert!(c.end.distance <= 1e-6, "end {:e}", c.end.distance);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(trace_preimage_curves(5, &TraceConfig::default()).is_err());
        let cfg = TraceConfig {
            samples_per_edge: 4,
            ..TraceConfig::default()
        };
        assert!(trace_preimage_curves(1, &cfg).is_err());
    }
}
