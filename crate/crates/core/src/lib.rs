//! Exact-arithmetic engine for rank-2 generalized cluster scattering
//! diagrams.
//!
//! The crate computes wall-functions of the scattering diagram determined by
//! two incoming walls with functions
//!
//! ```text
//!     P1 = 1 + p_{1,1} x + ... + p_{1,l1} x^{l1}    on the line R*e1,
//!     P2 = 1 + p_{2,1} y + ... + p_{2,l2} y^{l2}    on the line R*e2,
//! ```
//!
//! over the coefficient ring `Z[p_{1,1}, ..., p_{1,l1}, p_{2,1}, ..., p_{2,l2}]`,
//! together with the objects built on top of them:
//!
//! * [`scatter`] — diagrams, wall crossing, and order-by-order consistency
//!   completion; every outgoing wall is a ray `R_{<=0}(a, b)` with `a, b > 0`
//!   coprime.
//! * [`dyck`] — maximal Dyck paths and the weighting predicates whose
//!   weighted counts give the same wall-function coefficients by pure
//!   combinatorics.
//! * [`greedy`] — greedy-element coefficients by recursion, a third
//!   independent route to the same numbers.
//! * [`broken`] — broken lines, theta functions, and the product expansions
//!   they satisfy.
//! * [`invariants`] — Euler characteristics of framed quiver moduli and
//!   relative Gromov–Witten numbers extracted from wall-functions.
//! * [`poly`] — the underlying exact polynomial, series, and Laurent
//!   arithmetic.
//!
//! All arithmetic is exact (`num-bigint` / `num-rational`); nothing here
//! floats.

pub mod broken;
pub mod dyck;
pub mod greedy;
pub mod invariants;
pub mod poly;
pub mod scatter;
