//! Engines for the degree-3 hessian dynamical system on the compactified
//! moduli space of elliptic curves: exact identity verification, iterated
//! preimage dynamics on the Riemann sphere, substitution triangulations with
//! their dessins d'enfants, and the euclidean rep-tile model.
//!
//! Module map:
//! - [`rational`], [`multipoly`], [`unipoly`], [`ratfunc`]: the exact algebra kernel;
//! - [`hesse`]: ternary cubics, the hessian operator, the pencil, j-invariants
//!   and the exact identity suite;
//! - [`sphere`]: numerical dynamics in the `h` coordinate (iterates, preimage
//!   trees, passports, curve tracing);
//! - [`dessin`]: decorated half-edge triangulations, doubling, dessins and
//!   ribbon-graph isomorphism;
//! - [`lattes`]: the exact euclidean 30-60-90 rep-tile model over Q(sqrt 3);
//! - [`report`]: structured pass/fail records for the verification suite;
//! - [`render`]: SVG and DOT emission.

pub mod error;
pub mod multipoly;
pub mod ratfunc;
pub mod rational;
pub mod report;
pub mod unipoly;

pub mod hesse;
pub mod sphere;

pub use error::{Error, Result};
