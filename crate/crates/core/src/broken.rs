//! Broken lines and theta functions for standard consistent diagrams.
//!
//! A broken line for the exponent `m0` with endpoint `Q` is a piecewise
//! linear path coming in from infinity: each segment carries a Laurent
//! monomial `c x^m` and travels in direction `-m`, the first segment
//! carries `x^{m0}`, and at a wall with function `f` and primitive normal
//! `n` the monomial may be multiplied by the `x^{kappa * step}` term of
//! `f^{|<n, m>|}` (the pairing is automatically positive against the
//! crossing direction), changing the direction accordingly.  The theta
//! function is the sum of the final monomials over all broken lines:
//!
//! ```text
//!     theta_{m0}(Q) = sum_beta  c(beta) x^{m(beta)}.
//! ```
//!
//! The search runs backward from `Q`: for a candidate final exponent the
//! backward ray is intersected exactly (rational arithmetic) with every
//! wall, and at each genuine crossing the bend is undone in all ways that
//! keep the exponent inside `m0 + N^2`.  Every endpoint and bend point is
//! checked to be off every other wall; a violation panics rather than
//! silently miscounting, so callers pick generic rational endpoints.
//!
//! Coefficients are graded by total weight exactly: a broken line whose
//! final exponent is `m0 + v` has coefficient weight `v_1 + v_2`, so a
//! weight budget is also a complete enumeration bound.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::{series_pow, Laurent, PPoly, Scalar};
use crate::scatter::Diagram;

/// An exact point of the plane.
pub type Point = (BigRational, BigRational);

/// The rational point `(xn/xd, yn/yd)`.
///
/// # Panics
///
/// Panics when a denominator is zero.
#[must_use]
pub fn point(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
    (
        BigRational::new(BigInt::from(xn), BigInt::from(xd)),
        BigRational::new(BigInt::from(yn), BigInt::from(yd)),
    )
}

/// One bend of a broken line: the wall's positive direction and the chosen
/// term index of its crossing series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bend {
    pub wall: (i64, i64),
    pub kappa: u32,
}

/// A family of broken lines sharing a bend pattern; `coeff` aggregates the
/// coefficient choices at each bend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrokenLine<N: Scalar> {
    pub final_exp: (i64, i64),
    /// Bends in the order the line meets them (from infinity to `Q`).
    pub bends: Vec<Bend>,
    pub coeff: PPoly<N>,
}

struct Wall<'a, N: Scalar> {
    step: (i64, i64),
    normal: (i64, i64),
    slots: &'a [PPoly<N>],
    ray: bool,
}

fn collect_walls<N: Scalar>(d: &Diagram<N>) -> Vec<Wall<'_, N>> {
    assert_eq!(d.m1(), (1, 0), "broken lines need a standard diagram");
    assert_eq!(d.m2(), (0, 1), "broken lines need a standard diagram");
    let mut walls = vec![
        Wall {
            step: (1, 0),
            normal: (0, 1),
            slots: d.f1(),
            ray: false,
        },
        Wall {
            step: (0, 1),
            normal: (1, 0),
            slots: d.f2(),
            ray: false,
        },
    ];
    for (v, slots) in d.rays() {
        walls.push(Wall {
            step: *v,
            normal: (-v.1, v.0),
            slots,
            ray: true,
        });
    }
    walls
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Cross product of a rational point with an integer direction.
fn cross(p: &Point, d: (i64, i64)) -> BigRational {
    &p.0 * rat(d.1) - &p.1 * rat(d.0)
}

fn on_wall<N: Scalar>(p: &Point, w: &Wall<'_, N>) -> bool {
    if !Zero::is_zero(&cross(p, w.step)) {
        return false;
    }
    // On the wall's line; rays only occupy the closed negative half.
    !w.ray || !p.0.is_positive()
}

/// The crossing of the backward ray `{p + t m : t > 0}` with a wall, if
/// any.
///
/// # Panics
///
/// Panics when the ray is collinear with the wall's line or passes through
/// the origin — both genericity violations.
fn crossing<N: Scalar>(p: &Point, m: (i64, i64), w: &Wall<'_, N>) -> Option<Point> {
    let d = w.step;
    let md = m.0 * d.1 - m.1 * d.0;
    let pd = cross(p, d);
    if md == 0 {
        assert!(
            !Zero::is_zero(&pd),
            "genericity violated: segment collinear with a wall"
        );
        return None;
    }
    let t = -pd / rat(md);
    if !t.is_positive() {
        return None;
    }
    let x = (&p.0 + &t * rat(m.0), &p.1 + &t * rat(m.1));
    assert!(
        !(Zero::is_zero(&x.0) && Zero::is_zero(&x.1)),
        "genericity violated: segment through the origin"
    );
    if w.ray && !Signed::is_negative(&x.0) {
        return None;
    }
    Some(x)
}

struct Search<'a, N: Scalar> {
    walls: Vec<Wall<'a, N>>,
    powers: HashMap<(usize, i64), Vec<PPoly<N>>>,
    m0: (i64, i64),
    series_len: usize,
    out: Vec<BrokenLine<N>>,
}

impl<N: Scalar> Search<'_, N> {
    fn factor(&mut self, wall: usize, j: i64, kappa: usize) -> PPoly<N> {
        let slots = self.walls[wall].slots;
        let len = self.series_len;
        let series = self
            .powers
            .entry((wall, j))
            .or_insert_with(|| series_pow(slots, j, len));
        series.get(kappa).cloned().unwrap_or_else(PPoly::zero)
    }

    fn dfs(
        &mut self,
        p: &Point,
        m: (i64, i64),
        skip: Option<usize>,
        coeff: &PPoly<N>,
        bends: &mut Vec<Bend>,
    ) {
        for (i, w) in self.walls.iter().enumerate() {
            if Some(i) != skip {
                assert!(
                    !on_wall(p, w),
                    "genericity violated: endpoint or bend point on a wall"
                );
            }
        }
        if m == self.m0 {
            let mut fwd = bends.clone();
            fwd.reverse();
            let final_exp = fwd.iter().fold(self.m0, |acc, b| {
                (
                    acc.0 + i64::from(b.kappa) * b.wall.0,
                    acc.1 + i64::from(b.kappa) * b.wall.1,
                )
            });
            self.out.push(BrokenLine {
                final_exp,
                bends: fwd,
                coeff: coeff.clone(),
            });
            return;
        }
        if m == (0, 0) {
            return;
        }
        for i in 0..self.walls.len() {
            let Some(x) = crossing(p, m, &self.walls[i]) else {
                continue;
            };
            let step = self.walls[i].step;
            let normal = self.walls[i].normal;
            let mut kappa: u32 = 1;
            loop {
                let k = i64::from(kappa);
                let m_prev = (m.0 - k * step.0, m.1 - k * step.1);
                if m_prev.0 < self.m0.0 || m_prev.1 < self.m0.1 {
                    break;
                }
                let j = (normal.0 * m_prev.0 + normal.1 * m_prev.1).abs();
                if j != 0 {
                    let f = self.factor(i, j, kappa as usize);
                    if !f.is_zero() {
                        let new_coeff = coeff.mul(&f);
                        bends.push(Bend { wall: step, kappa });
                        self.dfs(&x, m_prev, Some(i), &new_coeff, bends);
                        bends.pop();
                    }
                }
                kappa += 1;
            }
        }
    }
}

/// All broken-line families for the exponent `m0` ending at `q`, with the
/// added exponent bounded by `v_1 + v_2 <= maxw` (equivalently, coefficient
/// weight at most `maxw`).
///
/// # Panics
///
/// Panics when `m0 = 0` or when `q` (or some bend point) fails genericity.
#[must_use]
pub fn broken_lines<N: Scalar>(
    d: &Diagram<N>,
    m0: (i64, i64),
    q: &Point,
    maxw: u32,
) -> Vec<BrokenLine<N>> {
    assert!(m0 != (0, 0), "the zero exponent has only the trivial line");
    let mut search = Search {
        walls: collect_walls(d),
        powers: HashMap::new(),
        m0,
        series_len: maxw as usize + 1,
        out: Vec::new(),
    };
    for v1 in 0..=maxw {
        for v2 in 0..=(maxw - v1) {
            let mf = (m0.0 + i64::from(v1), m0.1 + i64::from(v2));
            let mut bends = Vec::new();
            search.dfs(q, mf, None, &PPoly::one(), &mut bends);
        }
    }
    search.out
}

/// The theta function `theta_{m0}` evaluated by broken-line count at the
/// endpoint `q`, through coefficient weight `maxw`.
#[must_use]
pub fn theta<N: Scalar>(d: &Diagram<N>, m0: (i64, i64), q: &Point, maxw: u32) -> Laurent<N> {
    let mut out = Laurent::zero();
    for bl in broken_lines(d, m0, q, maxw) {
        out.add_poly_at(bl.final_exp, &bl.coeff);
    }
    out
}

/// The structure constant `alpha(p1, p2; q)`: the coefficient of
/// `theta_q` in `theta_{p1} theta_{p2}`, computed from pairs of broken
/// lines ending at a common generic point near `q` with final exponents
/// summing to `q`.
#[must_use]
pub fn structure_constant<N: Scalar>(
    d: &Diagram<N>,
    p1: (i64, i64),
    p2: (i64, i64),
    q: (i64, i64),
) -> PPoly<N> {
    let need = (q.0 - p1.0 - p2.0, q.1 - p1.1 - p2.1);
    if need.0 < 0 || need.1 < 0 {
        return PPoly::zero();
    }
    let needw = (need.0 + need.1) as u32;
    let z = (
        rat(q.0) + BigRational::new(BigInt::from(1), BigInt::from(1_000_033)),
        rat(q.1) + BigRational::new(BigInt::from(1), BigInt::from(5_000_011)),
    );
    let t1 = theta(d, p1, &z, needw);
    let t2 = theta(d, p2, &z, needw);
    let mut out = PPoly::zero();
    for (e, c) in t1.iter() {
        let c2 = t2.coeff((q.0 - e.0, q.1 - e.1));
        if !c2.is_zero() {
            out.add_assign(&c.mul(&c2));
        }
    }
    out
}

/// Sum of the final coefficients of broken lines for `m0 = (-d1, -d2)`
/// ending deep on the ray `(a, b)` with final exponent `m0 + k (a, b)` —
/// a position where every such line bends exactly once, at that ray, so
/// the sum equals the `x^{k (a,b)}` coefficient of the ray function raised
/// to `|<n, m0>| = |a d2 - b d1|`.
///
/// The endpoint is `-T (a, b)` pushed off the ray by a tiny multiple of
/// `(-b, a)` whose sign matches `a d2 - b d1`.
///
/// # Panics
///
/// Panics when `(d1, d2)` is parallel to `(a, b)`, or when a found line
/// violates the one-bend shape.
#[must_use]
pub fn one_bending_broken_count<N: Scalar>(
    d: &Diagram<N>,
    d1: i64,
    d2: i64,
    a: i64,
    b: i64,
    k: u32,
) -> PPoly<N> {
    let m0 = (-d1, -d2);
    let mu = a * d2 - b * d1;
    assert!(mu != 0, "initial exponent parallel to the ray");
    let t = rat(1_000_003);
    let eps = BigRational::new(BigInt::from(mu.signum()), BigInt::from(1_000_033));
    let z = (-&t * rat(a) + &eps * rat(-b), -t * rat(b) + eps * rat(a));
    let mf = (m0.0 + i64::from(k) * a, m0.1 + i64::from(k) * b);
    let mut search = Search {
        walls: collect_walls(d),
        powers: HashMap::new(),
        m0,
        series_len: k as usize + 1,
        out: Vec::new(),
    };
    let mut bends = Vec::new();
    search.dfs(&z, mf, None, &PPoly::one(), &mut bends);
    let mut sum = PPoly::zero();
    for bl in &search.out {
        assert_eq!(bl.bends.len(), 1, "expected exactly one bend");
        assert_eq!(bl.bends[0].wall, (a, b), "bend at an unexpected wall");
        assert_eq!(bl.bends[0].kappa, k);
        sum.add_assign(&bl.coeff);
    }
    sum
}
