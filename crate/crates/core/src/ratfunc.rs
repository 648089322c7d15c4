//! Univariate rational functions over the rationals, tagged by coordinate.
//!
//! The same dynamical system is written in four coordinates (`m`, `M = m^3`,
//! `j`, `h = j/1728`, plus the Legendre `lambda`); the tag stops formulas in
//! different coordinates from being combined by accident. Values on the
//! projective line are `Rat` or the point at infinity.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum VarTag {
    M,
    BigM,
    J,
    H,
    Lambda,
}

impl VarTag {
    pub fn name(self) -> &'static str {
        match self {
            VarTag::M => "m",
            VarTag::BigM => "M",
            VarTag::J => "j",
            VarTag::H => "h",
            VarTag::Lambda => "lambda",
        }
    }
}

/// A point of the projective line over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjRat {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for ProjRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjRat::Finite(r) => write!(f, "{}", r),
            ProjRat::Infinity => write!(f, "inf"),
        }
    }
}

/// Normalized rational function: numerator and denominator coprime, the
/// denominator monic and nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    tag: VarTag,
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(tag: VarTag, num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut f = RatFunc { tag, num, den };
        f.normalize();
        Ok(f)
    }

    pub fn from_poly(tag: VarTag, num: UniPoly) -> Self {
        RatFunc::new(tag, num, UniPoly::one()).unwrap()
    }

    pub fn identity(tag: VarTag) -> Self {
        RatFunc::from_poly(tag, UniPoly::var())
    }

    pub fn constant(tag: VarTag, c: Rat) -> Self {
        RatFunc::from_poly(tag, UniPoly::constant(c))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = UniPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > Some(0) {
            let (qn, rn) = self.num.div_rem(&g);
            let (qd, rd) = self.den.div_rem(&g);
            debug_assert!(rn.is_zero() && rd.is_zero());
            self.num = qn;
            self.den = qd;
        }
        let lead = self.den.leading();
        if lead != rat(1) {
            let inv = rat(1) / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn tag(&self) -> VarTag {
        self.tag
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Rename the coordinate. Deliberate escape hatch for plugging a formula
    /// into another coordinate's slot, as the commutation identities do.
    pub fn with_variable(&self, tag: VarTag) -> RatFunc {
        RatFunc { tag, ..self.clone() }
    }

    /// Degree as a self-map of the projective line.
    pub fn map_degree(&self) -> usize {
        let dn = self.num.degree().map_or(0, |d| d);
        let dd = self.den.degree().unwrap_or(0);
        dn.max(dd)
    }

    /// Exact evaluation on the projective line.
    pub fn eval_proj(&self, p: &ProjRat) -> ProjRat {
        match p {
            ProjRat::Finite(t) => {
                let n = self.num.eval(t);
                let d = self.den.eval(t);
                if d.is_zero() {
                    if n.is_zero() {
                        // normalized coprime pair cannot share a root
                        unreachable!("coprime pair vanished simultaneously");
                    }
                    ProjRat::Infinity
                } else {
                    ProjRat::Finite(n / d)
                }
            }
            ProjRat::Infinity => {
                let dn = self.num.degree().map_or(-1, |d| d as i64);
                let dd = self.den.degree().map_or(-1, |d| d as i64);
                match dn.cmp(&dd) {
                    std::cmp::Ordering::Greater => ProjRat::Infinity,
                    std::cmp::Ordering::Less => ProjRat::Finite(rat(0)),
                    std::cmp::Ordering::Equal => {
                        ProjRat::Finite(self.num.leading() / self.den.leading())
                    }
                }
            }
        }
    }

    pub fn eval(&self, t: &Rat) -> ProjRat {
        self.eval_proj(&ProjRat::Finite(t.clone()))
    }

    /// Formal derivative `(n'd - nd')/d^2`, normalized.
    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        RatFunc::new(self.tag, n, d).unwrap()
    }

    /// Exact composition `self(inner)`. Both functions must live in the same
    /// coordinate; use `with_variable` first when plugging across coordinates.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        assert_eq!(
            self.tag, inner.tag,
            "composition across coordinates {} and {}",
            self.tag.name(),
            inner.tag.name()
        );
        let r = &inner.num;
        let s = &inner.den;
        let dp = self.num.degree().unwrap_or(0);
        let dq = self.den.degree().unwrap_or(0);
        // p(r/s) = sum p_i r^i s^(dp-i) / s^dp, likewise for q; the s powers
        // cancel against each other up to s^(dq-dp).
        // p(r/s) * s^dmax = sum p_i r^i s^(dmax-i), built by Horner with the
        // s powers carried incrementally.
        let lift = |p: &UniPoly, dmax: usize| -> UniPoly {
            let mut acc = UniPoly::constant(p.coeff(dmax));
            let mut spow = UniPoly::one();
            for i in (0..dmax).rev() {
                spow = &spow * s;
                acc = &(&acc * r) + &spow.scale(&p.coeff(i));
            }
            acc
        };
        let num_lift = lift(&self.num, dp);
        let den_lift = lift(&self.den, dq);
        // cancel the shared s power up front; the gcd pass only has the
        // accidental factors left to find
        let e = dp.min(dq);
        let num = &num_lift * &s.pow((dq - e) as u32);
        let den = &den_lift * &s.pow((dp - e) as u32);
        RatFunc::new(self.tag, num, den)
    }

    /// Order of vanishing at a point of the projective line: positive for a
    /// zero, negative for a pole, zero otherwise.
    pub fn order_at(&self, p: &ProjRat) -> i64 {
        match p {
            ProjRat::Finite(a) => {
                let kn = self.num.root_multiplicity(a) as i64;
                let kd = self.den.root_multiplicity(a) as i64;
                kn - kd
            }
            ProjRat::Infinity => {
                let dn = self.num.degree().map_or(0, |d| d as i64);
                let dd = self.den.degree().map_or(0, |d| d as i64);
                dd - dn
            }
        }
    }

    /// Ratio of leading coefficients, the value/growth scale at infinity.
    pub fn leading_ratio(&self) -> Rat {
        self.num.leading() / self.den.leading()
    }

    /// Cross-multiplied equality on possibly different representatives.
    pub fn equal_as_map(&self, other: &RatFunc) -> bool {
        self.tag == other.tag && &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({}) in {}", self.num, self.den, self.tag.name())
    }
}
