//! Euler characteristics of framed quiver moduli and relative
//! Gromov–Witten numbers, both read off wall-function power coefficients.
//!
//! Interpreting the commuting variable `p_{i,j}` as the `j`-th elementary
//! symmetric polynomial `e_j` in `l_i` framing variables turns a
//! coefficient monomial into a sum over ordered partitions:
//!
//! ```text
//!     p1^{Q1} p2^{Q2} = sum_{P1, P2}  mu^{Q1}_{P1} mu^{Q2}_{P2} s^{P1} t^{P2},
//! ```
//!
//! with `mu^{Q}_{P} in N` the expansion coefficients.  Pairing the power
//! coefficients `lambda^{(m)}` of a ray's wall function against a fixed
//! ordered-partition pair then yields the Euler characteristic of the
//! corresponding framed moduli space (`m` copies of the framing on the
//! back or front side), and the alternating binomial sum
//!
//! ```text
//!     N_{a,b}[(P1, P2)] = (1/k) sum_{i=1}^{k} (-1)^{i-1}/i binom(k, i)
//!                          sum_{Q1, Q2} lambda^{(i)}(Q1, Q2) mu mu
//! ```
//!
//! extracts the rational count of degree-`k(a,b)` rational curves with
//! tangency profiles `P1`, `P2`.  Both pairings are exact: integers for
//! Euler characteristics, reduced fractions for the curve counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{binomial, PPoly, Side};
use crate::scatter::{gcd_i64, lambda, lambda_on};

/// Expansion of `prod_j e_j(s_1..s_l)^{q[j-1]}` into monomials, as a map
/// from exponent vectors of length `l = p_len` to coefficients.
fn expand_elementary(q: &[u32], l: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let mut acc = BTreeMap::new();
    acc.insert(vec![0u32; l], BigInt::one());
    for (idx, &mult) in q.iter().enumerate() {
        let j = idx + 1;
        if mult == 0 {
            continue;
        }
        if j > l {
            return BTreeMap::new();
        }
        // Monomials of e_j: the size-j subsets of the l variables.
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut choose = vec![0usize; j];
        fn rec(start: usize, pos: usize, j: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if pos == j {
                out.push(cur[..j].to_vec());
                return;
            }
            for v in start..l {
                cur[pos] = v;
                rec(v + 1, pos + 1, j, l, cur, out);
            }
        }
        rec(0, 0, j, l, &mut choose, &mut subsets);
        for _ in 0..mult {
            let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
            for (exps, c) in &acc {
                for s in &subsets {
                    let mut e = exps.clone();
                    for &v in s {
                        e[v] += 1;
                    }
                    let entry = next.entry(e).or_insert_with(BigInt::zero);
                    *entry += c;
                }
            }
            acc = next;
        }
    }
    acc
}

/// The coefficient `mu^{Q}_{P}` of the monomial `s^{P}` in
/// `prod_j e_j(s_1, ..., s_l)^{Q_j}`, where `l` is the length of `p` and
/// `q` lists the multiplicities `Q_1, Q_2, ...`.
#[must_use]
pub fn mu_coeff(q: &[u32], p: &[u32]) -> BigInt {
    let l = p.len();
    if q.len() > l && q[l..].iter().any(|&m| m > 0) {
        return BigInt::zero();
    }
    expand_elementary(q, l)
        .remove(&p.to_vec())
        .unwrap_or_else(BigInt::zero)
}

/// Which side of the moduli problem carries the `m`-fold framing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Framing {
    /// `m = b` copies; read off a denominator vector just above the ray.
    Back,
    /// `m = a` copies; read off a denominator vector just below the ray.
    Front,
}

/// Euler characteristic of the framed moduli space attached to the ray
/// `(a, b)` at step `k` with dimension-vector partitions `p1`, `p2` (over
/// `p1.len()` and `p2.len()` framing variables).
///
/// # Panics
///
/// Panics unless `(a, b)` is primitive and positive and the partition
/// totals are `ka` and `kb`.
#[must_use]
pub fn euler_char(a: i64, b: i64, k: u32, p1: &[u32], p2: &[u32], framing: Framing) -> BigInt {
    assert!(a >= 1 && b >= 1 && gcd_i64(a, b) == 1, "ray must be primitive positive");
    let total1: u32 = p1.iter().sum();
    let total2: u32 = p2.iter().sum();
    assert_eq!(i64::from(total1), i64::from(k) * a, "first partition total");
    assert_eq!(i64::from(total2), i64::from(k) * b, "second partition total");
    if k == 0 {
        return BigInt::one();
    }
    let kk = i64::from(k);
    let (d1, d2) = match framing {
        Framing::Back => (kk * a * b + 1, kk * b * b),
        Framing::Front => (kk * a * a, kk * a * b + 1),
    };
    let lam = lambda_on(p1.len(), p2.len(), d1, d2, k * a as u32, k * b as u32);
    partition_pairing(&lam, p1, p2)
}

/// Pairing of a coefficient polynomial against an ordered-partition pair:
/// `sum_{Q1, Q2} poly(Q1, Q2) mu^{Q1}_{p1} mu^{Q2}_{p2}`.
fn partition_pairing(poly: &PPoly<BigInt>, p1: &[u32], p2: &[u32]) -> BigInt {
    let mut sum = BigInt::zero();
    for (mono, c) in poly.iter() {
        let m1 = mu_coeff(mono.exponents(Side::X), p1);
        if Zero::is_zero(&m1) {
            continue;
        }
        let m2 = mu_coeff(mono.exponents(Side::Y), p2);
        sum += c * m1 * m2;
    }
    sum
}

/// The alternating binomial sum over precomputed power coefficients
/// `powers[i-1] = lambda^{(i)}` at step `k`.
fn gw_from_powers(powers: &[PPoly<BigInt>], k: u32, p1: &[u32], p2: &[u32]) -> BigRational {
    let mut n = BigRational::zero();
    for i in 1..=k {
        let s = partition_pairing(&powers[i as usize - 1], p1, p2);
        if Zero::is_zero(&s) {
            continue;
        }
        let mut term = BigRational::new(binomial(i64::from(k), i) * s, BigInt::from(i));
        if i % 2 == 0 {
            term = -term;
        }
        n += term;
    }
    n / BigRational::from_integer(BigInt::from(k))
}

/// The relative Gromov–Witten number `N_{a,b}[(P1, P2)]` of degree
/// `k (a, b)` with tangency profiles `p1` (over `l1` variables) and `p2`
/// (over `l2`), via the alternating binomial sum over wall-function
/// powers.
///
/// # Panics
///
/// Panics unless `(a, b)` is primitive and positive, the partition lengths
/// are `l1` and `l2`, and the totals are `ka` and `kb` with `k >= 1`.
#[must_use]
pub fn gw_invariant(
    a: i64,
    b: i64,
    k: u32,
    p1: &[u32],
    p2: &[u32],
    l1: usize,
    l2: usize,
) -> BigRational {
    assert!(a >= 1 && b >= 1 && gcd_i64(a, b) == 1, "ray must be primitive positive");
    assert!(k >= 1);
    assert_eq!(p1.len(), l1, "first partition length");
    assert_eq!(p2.len(), l2, "second partition length");
    let total1: u32 = p1.iter().sum();
    let total2: u32 = p2.iter().sum();
    assert_eq!(i64::from(total1), i64::from(k) * a, "first partition total");
    assert_eq!(i64::from(total2), i64::from(k) * b, "second partition total");
    let powers: Vec<PPoly<BigInt>> = (1..=k)
        .map(|i| lambda(l1, l2, a, b, k, i64::from(i)))
        .collect();
    gw_from_powers(&powers, k, p1, p2)
}
