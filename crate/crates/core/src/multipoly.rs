//! Sparse multivariate polynomials over the rationals.
//!
//! The variable set is fixed: the projective coordinates `X0, X1, X2`, the
//! pencil parameter `m`, and the real/imaginary coordinates `x, y`. That is
//! every ring the identity suite needs, so exponent vectors are fixed-width
//! arrays and the term map stays allocation-friendly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::{rat, Rat};

/// Number of variables in the global ring.
pub const NVARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X0 = 0,
    X1 = 1,
    X2 = 2,
    M = 3,
    X = 4,
    Y = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X0, Var::X1, Var::X2, Var::M, Var::X, Var::Y];

    pub fn name(self) -> &'static str {
        match self {
            Var::X0 => "X0",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::M => "m",
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

pub type Exponents = [u32; NVARS];

/// Sparse polynomial: exponent vector -> nonzero rational coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(rat(1))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0u32; NVARS];
        e[v as usize] = 1;
        let mut p = MultiPoly::zero();
        p.terms.insert(e, rat(1));
        p
    }

    /// Single term `c * prod v_i^(e_i)`.
    pub fn term(c: Rat, exps: &[(Var, u32)]) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let mut e = [0u32; NVARS];
        for &(v, k) in exps {
            e[v as usize] += k;
        }
        let mut p = MultiPoly::zero();
        p.terms.insert(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, e: &Exponents) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v as usize]).max()
    }

    fn insert_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> MultiPoly {
        let i = v as usize;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            out.insert_term(e2, c.clone() * rat(e[i] as i64));
        }
        out
    }

    /// Substitute exact rational values for a subset of the variables.
    pub fn eval_partial(&self, assign: &[(Var, Rat)]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e2 = *e;
            for (v, val) in assign {
                let k = e2[*v as usize];
                if k > 0 {
                    let mut p = rat(1);
                    for _ in 0..k {
                        p *= val.clone();
                    }
                    coeff *= p;
                    e2[*v as usize] = 0;
                }
            }
            out.insert_term(e2, coeff);
        }
        out
    }

    /// Exact full evaluation; every variable appearing must be assigned.
    pub fn eval(&self, assign: &[(Var, Rat)]) -> Rat {
        let reduced = self.eval_partial(assign);
        if reduced.is_zero() {
            return rat(0);
        }
        assert!(
            reduced.terms.len() == 1 && reduced.terms.keys().next() == Some(&[0; NVARS]),
            "eval left unassigned variables"
        );
        reduced.terms.values().next().unwrap().clone()
    }

    /// True when every term is homogeneous of degree `d` in the given variables.
    pub fn is_homogeneous_in(&self, vars: &[Var], d: u32) -> bool {
        self.terms
            .keys()
            .all(|e| vars.iter().map(|v| e[*v as usize]).sum::<u32>() == d)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..NVARS {
                    e[i] += eb[i];
                }
                out.insert_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest total degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse((e.iter().sum::<u32>(), **e)));
        for (e, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    write!(f, "*{}", Var::ALL[i].name())?;
                } else if k > 1 {
                    write!(f, "*{}^{}", Var::ALL[i].name(), k)?;
                }
            }
        }
        Ok(())
    }
}

/// Determinant of a 3x3 polynomial matrix by permutation expansion.
pub fn det3(mat: &[[MultiPoly; 3]; 3]) -> MultiPoly {
    let m = |i: usize, j: usize| &mat[i][j];
    let mut det = MultiPoly::zero();
    let plus = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    let minus = [(0, 2, 1), (1, 0, 2), (2, 1, 0)];
    for (a, b, c) in plus {
        det = &det + &(&(m(0, a) * m(1, b)) * m(2, c));
    }
    for (a, b, c) in minus {
        det = &det - &(&(m(0, a) * m(1, b)) * m(2, c));
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn x0() -> MultiPoly {
        MultiPoly::var(Var::X0)
    }
    fn x1() -> MultiPoly {
        MultiPoly::var(Var::X1)
    }
    fn x2() -> MultiPoly {
        MultiPoly::var(Var::X2)
    }

    /// The pencil member X0^3 + X1^3 + X2^3 - 3m X0X1X2.
    pub(crate) fn pencil_cubic() -> MultiPoly {
        let cubes = &(&x0().pow(3) + &x1().pow(3)) + &x2().pow(3);
        let tri = MultiPoly::term(rat(-3), &[(Var::M, 1), (Var::X0, 1), (Var::X1, 1), (Var::X2, 1)]);
        &cubes + &tri
    }

    #[test]
    fn difference_of_squares() {
        let sum = &x0() + &x1();
        let diff = &x0() - &x1();
        let prod = &sum * &diff;
        let expect = &x0().pow(2) - &x1().pow(2);
        assert_eq!(prod, expect);
    }

    #[test]
    fn additive_identity() {
        let f = pencil_cubic();
        assert_eq!(&f + &MultiPoly::zero(), f);
    }

    #[test]
    fn cancellation() {
        let f = pencil_cubic();
        let cubes = &(&x0().pow(3) + &x1().pow(3)) + &x2().pow(3);
        let d = &f - &cubes;
        assert_eq!(
            d,
            MultiPoly::term(rat(-3), &[(Var::M, 1), (Var::X0, 1), (Var::X1, 1), (Var::X2, 1)])
        );
    }

    #[test]
    fn partial_derivatives_of_pencil() {
        let f = pencil_cubic();
        let fx0 = f.partial(Var::X0);
        let expect = &x0().pow(2).scale(&rat(3))
            - &MultiPoly::term(rat(3), &[(Var::M, 1), (Var::X1, 1), (Var::X2, 1)]);
        assert_eq!(fx0, expect);
        let fx0x1 = fx0.partial(Var::X1);
        assert_eq!(
            fx0x1,
            MultiPoly::term(rat(-3), &[(Var::M, 1), (Var::X2, 1)])
        );
        assert_eq!(x1().pow(3).partial(Var::X2), MultiPoly::zero());
    }

    #[test]
    fn det3_diagonal() {
        let z = MultiPoly::zero;
        let d = |p: MultiPoly| p.scale(&rat(6));
        let mat = [
            [d(x0()), z(), z()],
            [z(), d(x1()), z()],
            [z(), z(), d(x2())],
        ];
        let det = det3(&mat);
        let expect = MultiPoly::term(rat(216), &[(Var::X0, 1), (Var::X1, 1), (Var::X2, 1)]);
        assert_eq!(det, expect);
    }

    #[test]
    fn det3_identity() {
        let z = MultiPoly::zero;
        let one = MultiPoly::one;
        let mat = [
            [one(), z(), z()],
            [z(), one(), z()],
            [z(), z(), one()],
        ];
        assert_eq!(det3(&mat), MultiPoly::one());
    }

    #[test]
    fn det3_hesse_pencil_matrix() {
        // Second partials of the pencil member, expanded by an independent route
        // (cofactor expansion here, permutation expansion in det3).
        let f = pencil_cubic();
        let vars = [Var::X0, Var::X1, Var::X2];
        let mut mat: [[MultiPoly; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                mat[i][j] = f.partial(vars[i]).partial(vars[j]);
            }
        }
        let det = det3(&mat);

        // cofactor expansion along the first row
        let minor = |r0: usize, c0: usize, r1: usize, c1: usize| -> MultiPoly {
            &(&mat[r0][c0] * &mat[r1][c1]) - &(&mat[r0][c1] * &mat[r1][c0])
        };
        let cof = &(&(&mat[0][0] * &minor(1, 1, 2, 2)) - &(&mat[0][1] * &minor(1, 0, 2, 2)))
            + &(&mat[0][2] * &minor(1, 0, 2, 1));
        assert_eq!(det, cof);

        // -54 m^2 (X0^3+X1^3+X2^3) + (216 - 54 m^3) X0X1X2
        let cubes = &(&x0().pow(3) + &x1().pow(3)) + &x2().pow(3);
        let tri = MultiPoly::term(rat(1), &[(Var::X0, 1), (Var::X1, 1), (Var::X2, 1)]);
        let msq = MultiPoly::term(rat(-54), &[(Var::M, 2)]);
        let tri_coeff = &MultiPoly::constant(rat(216))
            + &MultiPoly::term(rat(-54), &[(Var::M, 3)]);
        let expect = &(&msq * &cubes) + &(&tri_coeff * &tri);
        assert_eq!(det, expect);
    }

    #[test]
    fn eval_exact() {
        let f = pencil_cubic();
        let v = f.eval(&[
            (Var::X0, rat(1)),
            (Var::X1, rat(2)),
            (Var::X2, rat(3)),
            (Var::M, ratio(1, 2)),
        ]);
        // 1 + 8 + 27 - 3*(1/2)*6 = 27
        assert_eq!(v, rat(27));
    }

    #[test]
    fn homogeneity() {
        let f = pencil_cubic();
        assert!(f.is_homogeneous_in(&[Var::X0, Var::X1, Var::X2], 3));
        assert!(!(&f + &MultiPoly::one()).is_homogeneous_in(&[Var::X0, Var::X1, Var::X2], 3));
    }
}
