//! Iterated preimage trees of H and their analytic passports.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sphere::cubic::{solve_preimage, DEDUP_TOL};
use crate::sphere::point::SpherePoint;

/// Hard cap: 3^n leaves must stay below 1e5.
pub const MAX_TREE_LEVEL: u32 = 10;

#[derive(Debug, Clone)]
pub struct PreimageNode {
    pub point: SpherePoint,
    /// Local degree of H^(depth) at this point: product of the one-step
    /// multiplicities along the chain up to the root value.
    pub local_degree: u32,
    /// Index of the parent node one level up; `None` for the root value.
    pub parent: Option<usize>,
}

/// Breadth-first preimage tree of depth n over a root value.
#[derive(Debug, Clone)]
pub struct PreimageTree {
    pub root: SpherePoint,
    pub depth: u32,
    /// Node storage; levels[k] indexes the nodes of depth k (1-based levels).
    pub nodes: Vec<PreimageNode>,
    pub levels: Vec<Vec<usize>>,
}

impl PreimageTree {
    pub fn leaves(&self) -> impl Iterator<Item = &PreimageNode> {
        self.levels
            .last()
            .into_iter()
            .flatten()
            .map(move |&i| &self.nodes[i])
    }

    /// Leaf local degrees, descending.
    pub fn leaf_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.leaves().map(|n| n.local_degree).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Full preimage tree of depth n over c, leaf degrees summing to 3^n.
pub fn iterated_preimages(c: &SpherePoint, n: u32, tol: f64) -> Result<PreimageTree> {
    if n == 0 || n > MAX_TREE_LEVEL {
        return Err(Error::SizeLimit {
            level: n,
            max: MAX_TREE_LEVEL,
        });
    }
    let mut tree = PreimageTree {
        root: *c,
        depth: n,
        nodes: vec![],
        levels: vec![],
    };
    let mut frontier: Vec<(SpherePoint, u32, Option<usize>)> = vec![(*c, 1, None)];
    for _level in 0..n {
        let mut next_frontier = Vec::with_capacity(frontier.len() * 3);
        let mut level_ids = Vec::new();
        for (point, degree, parent) in &frontier {
            let fiber = solve_preimage(point, tol)?;
            for root in fiber {
                let id = tree.nodes.len();
                tree.nodes.push(PreimageNode {
                    point: root.point,
                    local_degree: degree * root.multiplicity,
                    parent: *parent,
                });
                level_ids.push(id);
                next_frontier.push((root.point, degree * root.multiplicity, Some(id)));
            }
        }
        // ambiguity guard across branches: leaves of one level must be
        // either identical fiber points of a shared parent (impossible for
        // distinct parents) or clearly separated
        for i in 0..level_ids.len() {
            for j in (i + 1)..level_ids.len() {
                let a = &tree.nodes[level_ids[i]];
                let b = &tree.nodes[level_ids[j]];
                if a.parent != b.parent {
                    let d = a.point.chordal(&b.point);
                    if d < 10.0 * tol {
                        return Err(Error::DedupAmbiguity {
                            near: format!("{}", a.point),
                            separation: d,
                        });
                    }
                }
            }
        }
        tree.levels.push(level_ids);
        frontier = next_frontier;
    }
    let total: u32 = tree.leaves().map(|l| l.local_degree).sum();
    debug_assert_eq!(total, 3u32.pow(n));
    Ok(tree)
}

/// The three leaf-degree multisets of H^(n) over 0, 1 and infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyticPassport {
    pub level: u32,
    pub over_zero: Vec<u32>,
    pub over_one: Vec<u32>,
    pub over_infinity: Vec<u32>,
}

impl AnalyticPassport {
    pub fn partitions(&self) -> [&[u32]; 3] {
        [&self.over_zero, &self.over_one, &self.over_infinity]
    }

    /// Sphere bookkeeping for a clean degree-3^n Belyi cover:
    /// #leaves(0) + #leaves(1) + #leaves(inf) - 3^n = 2.
    pub fn euler_count(&self) -> i64 {
        self.over_zero.len() as i64 + self.over_one.len() as i64
            + self.over_infinity.len() as i64
            - 3i64.pow(self.level)
    }
}

pub fn analytic_passport(n: u32, tol: f64) -> Result<AnalyticPassport> {
    let over = |c: SpherePoint| -> Result<Vec<u32>> {
        Ok(iterated_preimages(&c, n, tol)?.leaf_degrees())
    };
    let p = AnalyticPassport {
        level: n,
        over_zero: over(SpherePoint::real(0.0))?,
        over_one: over(SpherePoint::real(1.0))?,
        over_infinity: over(SpherePoint::infinity())?,
    };
    let deg = 3u32.pow(n);
    for part in p.partitions() {
        let sum: u32 = part.iter().sum();
        if sum != deg {
            return Err(Error::IdentityFailed {
                check: "passport_degree_sum".into(),
                witness: format!("partition sums to {} at level {}", sum, n),
            });
        }
    }
    if p.euler_count() != 2 {
        return Err(Error::IdentityFailed {
            check: "passport_euler_count".into(),
            witness: format!("V-count gives {}", p.euler_count()),
        });
    }
    Ok(p)
}

/// All critical points of H^(n): the backward orbit of Crit(H) = {4, -8, 0}
/// up to depth n-1. Verifies every critical value lies in {0, 1, inf}.
pub fn critical_containment_check(n: u32, tol: f64) -> Result<String> {
    if n == 0 || n > 6 {
        return Err(Error::SizeLimit { level: n, max: 6 });
    }
    let crit = [
        SpherePoint::real(4.0),
        SpherePoint::real(-8.0),
        SpherePoint::real(0.0),
    ];
    let mut points: Vec<SpherePoint> = crit.to_vec();
    for c in &crit {
        for depth in 1..n {
            let tree = iterated_preimages(c, depth, tol)?;
            for leaf in tree.leaves() {
                points.push(leaf.point);
            }
        }
    }
    // dedup within tolerance
    let mut distinct: Vec<SpherePoint> = Vec::new();
    'outer: for p in points {
        for q in &distinct {
            if p.approx_eq(q, 10.0 * tol) {
                continue 'outer;
            }
        }
        distinct.push(p);
    }
    let targets = [
        SpherePoint::real(0.0),
        SpherePoint::real(1.0),
        SpherePoint::infinity(),
    ];
    for p in &distinct {
        let value = p.eval_iterate(n);
        let dist = targets
            .iter()
            .map(|t| value.chordal(t))
            .fold(f64::INFINITY, f64::min);
        if dist > 1e-6 {
            return Err(Error::IdentityFailed {
                check: "critical_containment".into(),
                witness: format!(
                    "critical point {} has value {} at distance {:e} from {{0,1,inf}}",
                    p, value, dist
                ),
            });
        }
    }
    Ok(format!(
        "{} critical points of the {}-th iterate all map into {{0, 1, inf}}",
        distinct.len(),
        n
    ))
}

/// Default-tolerance passport.
pub fn analytic_passport_default(n: u32) -> Result<AnalyticPassport> {
    analytic_passport(n, DEDUP_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_fibers() {
        let t = iterated_preimages(&SpherePoint::real(0.0), 1, DEDUP_TOL).unwrap();
        let leaves: Vec<_> = t.leaves().collect();
        assert_eq!(leaves.len(), 1);
        assert!(leaves[0].point.approx_eq(&SpherePoint::real(4.0), 0.0));
        assert_eq!(leaves[0].local_degree, 3);
    }

    #[test]
    fn level_two_over_one() {
        let t = iterated_preimages(&SpherePoint::real(1.0), 2, DEDUP_TOL).unwrap();
        assert_eq!(t.leaf_degrees(), vec![2, 2, 2, 2, 1]);
    }

    #[test]
    fn level_two_over_infinity() {
        let t = iterated_preimages(&SpherePoint::infinity(), 2, DEDUP_TOL).unwrap();
        assert_eq!(t.leaf_degrees(), vec![6, 2, 1]);
        // chain check: 4 -> 0 -> inf contributes 3*2
        let six = t
            .leaves()
            .find(|l| l.local_degree == 6)
            .expect("degree-6 leaf");
        assert!(six.point.approx_eq(&SpherePoint::real(4.0), 1e-9));
    }

    #[test]
    fn passports_frozen() {
        let p1 = analytic_passport_default(1).unwrap();
        assert_eq!(p1.over_zero, vec![3]);
        assert_eq!(p1.over_one, vec![2, 1]);
        assert_eq!(p1.over_infinity, vec![2, 1]);
        assert_eq!(p1.euler_count(), 2);

        let p2 = analytic_passport_default(2).unwrap();
        assert_eq!(p2.over_zero, vec![3, 3, 3]);
        assert_eq!(p2.over_one, vec![2, 2, 2, 2, 1]);
        assert_eq!(p2.over_infinity, vec![6, 2, 1]);
        assert_eq!(p2.euler_count(), 2);

        // level 3, derived by walking the critical chains by hand
        let p3 = analytic_passport_default(3).unwrap();
        assert_eq!(p3.over_zero, vec![3; 9]);
        let mut expect_one = vec![2; 13];
        expect_one.push(1);
        assert_eq!(p3.over_one, expect_one);
        assert_eq!(p3.over_infinity, vec![6, 6, 6, 6, 2, 1]);
    }

    #[test]
    fn leaf_degrees_sum_through_level_six() {
        for n in 1..=6 {
            for c in [
                SpherePoint::real(0.0),
                SpherePoint::real(1.0),
                SpherePoint::infinity(),
            ] {
                let t = iterated_preimages(&c, n, DEDUP_TOL).unwrap();
                let sum: u32 = t.leaves().map(|l| l.local_degree).sum();
                assert_eq!(sum, 3u32.pow(n), "level {} over {}", n, c);
            }
        }
    }

    #[test]
    fn refinement_under_one_more_level() {
        // every level-(n+1) leaf degree is its one-step multiplicity times
        // its parent's degree
        let t = iterated_preimages(&SpherePoint::infinity(), 3, DEDUP_TOL).unwrap();
        for leaf in t.leaves() {
            if let Some(pid) = leaf.parent {
                let parent = &t.nodes[pid];
                assert_eq!(leaf.local_degree % parent.local_degree, 0);
                let step = leaf.local_degree / parent.local_degree;
                assert!((1..=3).contains(&step));
            }
        }
    }

    #[test]
    fn critical_containment_small_levels() {
        assert!(critical_containment_check(1, DEDUP_TOL).is_ok());
        let msg = critical_containment_check(2, DEDUP_TOL).unwrap();
        assert!(msg.contains("10 critical points"), "{}", msg);
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            iterated_preimages(&SpherePoint::real(0.0), 11, DEDUP_TOL),
            Err(Error::SizeLimit { .. })
        ));
    }
}
