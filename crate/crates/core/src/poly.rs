//! Exact polynomial and series arithmetic over the two-sided coefficient
//! alphabet.
//!
//! Every computation in this crate happens in (a truncation of) the ring
//!
//! ```text
//!     R = Z[p_{1,1}, …, p_{1,l1}, p_{2,1}, …, p_{2,l2}]
//! ```
//!
//! or its `BigRational` analogue, and in Laurent polynomials over `R` in two
//! monomial directions `x` and `y`.  The variable `p_{i,k}` carries *weight*
//! `k` on side `i`; truncations are always by total weight, which is the
//! grading that makes wall-crossing computations converge order by order.
//!
//! The representations are deliberately plain: sorted maps keyed by exponent
//! data with exact big-integer coefficients.  Nothing here is clever; the
//! value is that equality of values is equality of mathematical objects.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The two families of coefficient variables.
///
/// Side `X` variables `p_{1,k}` scale powers of `x` in the first initial
/// wall-function, side `Y` variables `p_{2,k}` scale powers of `y` in the
/// second one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    X,
    Y,
}

impl Side {
    /// The opposite side.
    #[must_use]
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }

    /// `1` for side `X`, `2` for side `Y` (the conventional subscript).
    #[must_use]
    pub fn index(self) -> usize {
        match self {
            Side::X => 1,
            Side::Y => 2,
        }
    }
}

/// Exact coefficient arithmetic used throughout the engine.
///
/// Implemented for `BigInt` (all integral computations) and `BigRational`
/// (logarithms and enumerative invariants).  The trait is deliberately
/// explicit about reference semantics so that callers never clone more than
/// necessary.
pub trait Scalar: Clone + Eq + Ord + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_value(self) -> Self;
    /// Divides by a nonzero integer.
    ///
    /// # Panics
    ///
    /// Panics if `d == 0` or if the division is not exact in the scalar ring.
    fn div_exact_i64(&self, d: i64) -> Self;
    fn is_negative(&self) -> bool;
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_value(self) -> Self {
        -self
    }
    fn div_exact_i64(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        let (q, r) = self.div_rem(&BigInt::from(d));
        assert!(num_traits::Zero::is_zero(&r), "inexact integer division: {self} / {d}");
        q
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_value(self) -> Self {
        -self
    }
    fn div_exact_i64(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        self / BigRational::from_integer(BigInt::from(d))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// A monomial in the coefficient variables, e.g. `p_{1,1}^2 p_{2,3}`.
///
/// Exponents are stored per side as a vector whose entry at position `k-1`
/// is the exponent of the weight-`k` variable.  Trailing zeros are trimmed,
/// so structural equality coincides with mathematical equality and the
/// derived lexicographic order is a valid term order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PMonomial {
    q1: Vec<u32>,
    q2: Vec<u32>,
}

fn trim_trailing_zeros(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl PMonomial {
    /// The identity monomial `1`.
    #[must_use]
    pub fn one() -> Self {
        PMonomial::default()
    }

    /// The single variable `p_{side,k}` (so `k >= 1`).
    ///
    /// # Panics
    ///
    /// Panics if `k == 0`; the weight-zero symbol is the constant `1` and is
    /// never materialised.
    #[must_use]
    pub fn var(side: Side, k: usize) -> Self {
        Self::var_pow(side, k, 1)
    }

    /// The power `p_{side,k}^e`.
    #[must_use]
    pub fn var_pow(side: Side, k: usize, e: u32) -> Self {
        assert!(k >= 1, "variable slots are indexed from 1");
        let mut m = PMonomial::one();
        if e > 0 {
            let v = match side {
                Side::X => &mut m.q1,
                Side::Y => &mut m.q2,
            };
            v.resize(k, 0);
            v[k - 1] = e;
        }
        m
    }

    /// Builds a monomial from explicit exponent vectors (entry `k-1` is the
    /// exponent of the weight-`k` variable).
    #[must_use]
    pub fn from_exponents(mut q1: Vec<u32>, mut q2: Vec<u32>) -> Self {
        trim_trailing_zeros(&mut q1);
        trim_trailing_zeros(&mut q2);
        PMonomial { q1, q2 }
    }

    /// `true` for the identity monomial.
    #[must_use]
    pub fn is_one(&self) -> bool {
        self.q1.is_empty() && self.q2.is_empty()
    }

    /// Exponent of `p_{side,k}`.
    #[must_use]
    pub fn exp(&self, side: Side, k: usize) -> u32 {
        assert!(k >= 1);
        let v = self.exponents(side);
        v.get(k - 1).copied().unwrap_or(0)
    }

    /// The trimmed exponent vector of one side.
    #[must_use]
    pub fn exponents(&self, side: Side) -> &[u32] {
        match side {
            Side::X => &self.q1,
            Side::Y => &self.q2,
        }
    }

    /// `sum_k k * exp(side, k)`: the weight carried on one side.
    #[must_use]
    pub fn weight(&self, side: Side) -> u32 {
        self.exponents(side)
            .iter()
            .enumerate()
            .map(|(i, e)| (i as u32 + 1) * e)
            .sum()
    }

    /// Total weight over both sides; this is the truncation grading.
    #[must_use]
    pub fn total_weight(&self) -> u32 {
        self.weight(Side::X) + self.weight(Side::Y)
    }

    /// `sum_k exp(side, k)`: the number of variables (with multiplicity).
    #[must_use]
    pub fn degree(&self, side: Side) -> u32 {
        self.exponents(side).iter().sum()
    }

    /// Product of two monomials.
    #[must_use]
    pub fn mul(&self, other: &PMonomial) -> PMonomial {
        fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
            let n = a.len().max(b.len());
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                out.push(a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0));
            }
            out
        }
        PMonomial::from_exponents(add(&self.q1, &other.q1), add(&self.q2, &other.q2))
    }

    /// The power `self^e`.
    #[must_use]
    pub fn pow(&self, e: u32) -> PMonomial {
        let scale = |v: &[u32]| v.iter().map(|x| x * e).collect::<Vec<_>>();
        if e == 0 {
            return PMonomial::one();
        }
        PMonomial::from_exponents(scale(&self.q1), scale(&self.q2))
    }

    /// Keeps only terms whose every variable slot is divisible by `l`,
    /// renaming `p_{i,lk}` to `p_{i,k}`; returns `None` when some occupied
    /// slot is not divisible by `l`.
    #[must_use]
    pub fn subsample_weights(&self, l: usize) -> Option<PMonomial> {
        assert!(l >= 1);
        let shrink = |v: &[u32]| -> Option<Vec<u32>> {
            let mut out = vec![0; v.len() / l + 1];
            for (i, &e) in v.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let k = i + 1;
                if k % l != 0 {
                    return None;
                }
                out[k / l - 1] += e;
            }
            Some(out)
        };
        Some(PMonomial::from_exponents(
            shrink(&self.q1)?,
            shrink(&self.q2)?,
        ))
    }
}

impl fmt::Display for PMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (side, v) in [(Side::X, &self.q1), (Side::Y, &self.q2)] {
            for (i, &e) in v.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "p{}_{}", side.index(), i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial in the coefficient variables with `Scalar` coefficients.
///
/// Zero coefficients are never stored, so `PPoly` equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PPoly<N: Scalar> {
    terms: BTreeMap<PMonomial, N>,
}

impl<N: Scalar> Default for PPoly<N> {
    fn default() -> Self {
        PPoly::zero()
    }
}

impl<N: Scalar> PPoly<N> {
    /// The zero polynomial.
    #[must_use]
    pub fn zero() -> Self {
        PPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    #[must_use]
    pub fn one() -> Self {
        PPoly::constant(N::one())
    }

    /// A constant polynomial.
    #[must_use]
    pub fn constant(c: N) -> Self {
        let mut p = PPoly::zero();
        p.add_term(PMonomial::one(), c);
        p
    }

    /// The single variable `p_{side,k}` as a polynomial.
    #[must_use]
    pub fn var(side: Side, k: usize) -> Self {
        PPoly::monomial(PMonomial::var(side, k), N::one())
    }

    /// The polynomial `c * mono`.
    #[must_use]
    pub fn monomial(mono: PMonomial, c: N) -> Self {
        let mut p = PPoly::zero();
        p.add_term(mono, c);
        p
    }

    /// Builds a polynomial from a list of terms (repeated monomials are
    /// accumulated).
    #[must_use]
    pub fn from_terms(terms: impl IntoIterator<Item = (PMonomial, N)>) -> Self {
        let mut p = PPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&PMonomial::one())
                .is_some_and(|c| *c == N::one())
    }

    /// Number of stored terms.
    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(monomial, coefficient)` pairs in term order.
    pub fn iter(&self) -> impl Iterator<Item = (&PMonomial, &N)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (`None` when absent, i.e. zero).
    #[must_use]
    pub fn get(&self, mono: &PMonomial) -> Option<&N> {
        self.terms.get(mono)
    }

    /// The coefficient of the identity monomial.
    #[must_use]
    pub fn constant_term(&self) -> N {
        self.terms
            .get(&PMonomial::one())
            .cloned()
            .unwrap_or_else(N::zero)
    }

    /// Adds `c * mono` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, mono: PMonomial, c: N) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds another polynomial in place.
    pub fn add_assign(&mut self, other: &PPoly<N>) {
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// Subtracts another polynomial in place.
    pub fn sub_assign(&mut self, other: &PPoly<N>) {
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c.clone().neg_value());
        }
    }

    #[must_use]
    pub fn add(&self, other: &PPoly<N>) -> PPoly<N> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    #[must_use]
    pub fn sub(&self, other: &PPoly<N>) -> PPoly<N> {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    #[must_use]
    pub fn neg(&self) -> PPoly<N> {
        let mut out = PPoly::zero();
        for (m, c) in self.iter() {
            out.add_term(m.clone(), c.clone().neg_value());
        }
        out
    }

    /// Multiplies every coefficient by a scalar.
    #[must_use]
    pub fn scale(&self, c: &N) -> PPoly<N> {
        if c.is_zero() {
            return PPoly::zero();
        }
        let mut out = PPoly::zero();
        for (m, a) in self.iter() {
            out.add_term(m.clone(), a.mul_ref(c));
        }
        out
    }

    /// Multiplies every term by a monomial.
    #[must_use]
    pub fn mul_mono(&self, mono: &PMonomial) -> PPoly<N> {
        let mut out = PPoly::zero();
        for (m, a) in self.iter() {
            out.add_term(m.mul(mono), a.clone());
        }
        out
    }

    /// Full product.
    #[must_use]
    pub fn mul(&self, other: &PPoly<N>) -> PPoly<N> {
        self.mul_trunc(other, u32::MAX)
    }

    /// Product, dropping every result term of total weight above `maxw`.
    #[must_use]
    pub fn mul_trunc(&self, other: &PPoly<N>, maxw: u32) -> PPoly<N> {
        let mut out = PPoly::zero();
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (m1, c1) in self.iter() {
            let w1 = m1.total_weight();
            if w1 > maxw {
                continue;
            }
            for (m2, c2) in other.iter() {
                if maxw != u32::MAX && w1 + m2.total_weight() > maxw {
                    continue;
                }
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    /// Drops all terms of total weight above `maxw`.
    #[must_use]
    pub fn truncate(&self, maxw: u32) -> PPoly<N> {
        let mut out = PPoly::zero();
        for (m, c) in self.iter() {
            if m.total_weight() <= maxw {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Applies a scalar map to every coefficient.
    #[must_use]
    pub fn map_scalars<M: Scalar>(&self, f: impl Fn(&N) -> M) -> PPoly<M> {
        let mut out = PPoly::zero();
        for (m, c) in self.iter() {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Evaluates the polynomial by substituting a scalar for every variable.
    #[must_use]
    pub fn specialize(&self, value: &impl Fn(Side, usize) -> N) -> N {
        let mut total = N::zero();
        for (m, c) in self.iter() {
            let mut term = c.clone();
            for side in [Side::X, Side::Y] {
                for (i, &e) in m.exponents(side).iter().enumerate() {
                    for _ in 0..e {
                        term = term.mul_ref(&value(side, i + 1));
                    }
                }
            }
            total.add_assign_ref(&term);
        }
        total
    }

    /// Keeps only terms all of whose variable slots are divisible by `l` and
    /// renames `p_{i,lk}` to `p_{i,k}`.
    #[must_use]
    pub fn subsample_weights(&self, l: usize) -> PPoly<N> {
        let mut out = PPoly::zero();
        for (m, c) in self.iter() {
            if let Some(m2) = m.subsample_weights(l) {
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Smallest total weight among stored terms.
    #[must_use]
    pub fn min_total_weight(&self) -> Option<u32> {
        self.iter().map(|(m, _)| m.total_weight()).min()
    }

    /// Largest total weight among stored terms.
    #[must_use]
    pub fn max_total_weight(&self) -> Option<u32> {
        self.iter().map(|(m, _)| m.total_weight()).max()
    }

    /// If all terms share one `(x-side weight, y-side weight)` pair, returns
    /// it.  The zero polynomial is homogeneous of any bidegree (`None`).
    #[must_use]
    pub fn homogeneous_biweight(&self) -> Option<(u32, u32)> {
        let mut it = self.iter();
        let (m0, _) = it.next()?;
        let bw = (m0.weight(Side::X), m0.weight(Side::Y));
        for (m, _) in it {
            if (m.weight(Side::X), m.weight(Side::Y)) != bw {
                return None;
            }
        }
        Some(bw)
    }

    /// `true` when some coefficient is negative.
    #[must_use]
    pub fn has_negative_coeff(&self) -> bool {
        self.iter().any(|(_, c)| c.is_negative())
    }
}

impl<N: Scalar> fmt::Display for PPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == N::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<N: Scalar> fmt::Debug for PPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A truncated power series in one formal variable `z` with `PPoly`
/// coefficients; entry `k` is the coefficient of `z^k`.
pub type Series<N> = Vec<PPoly<N>>;

/// Product of two series truncated to length `len`.
#[must_use]
pub fn series_mul<N: Scalar>(a: &[PPoly<N>], b: &[PPoly<N>], len: usize) -> Series<N> {
    let mut out = vec![PPoly::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if bj.is_zero() {
                continue;
            }
            let prod = ai.mul(bj);
            out[i + j].add_assign(&prod);
        }
    }
    out
}

/// Multiplicative inverse of a series with constant term `1`, to length
/// `len`.
///
/// # Panics
///
/// Panics unless `a[0] == 1`.
#[must_use]
pub fn series_inv<N: Scalar>(a: &[PPoly<N>], len: usize) -> Series<N> {
    assert!(
        a.first().is_some_and(PPoly::is_one),
        "series inverse requires constant term 1"
    );
    let mut out = vec![PPoly::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = PPoly::one();
    for n in 1..len {
        // out[n] = -sum_{k=1..=n} a[k] * out[n-k]
        let mut acc = PPoly::zero();
        for k in 1..=n {
            if let Some(ak) = a.get(k) {
                if !ak.is_zero() && !out[n - k].is_zero() {
                    acc.add_assign(&ak.mul(&out[n - k]));
                }
            }
        }
        out[n] = acc.neg();
    }
    out
}

/// Integer power `a^e` of a series with constant term `1`, truncated to
/// length `len`; negative exponents go through the inverse.
#[must_use]
pub fn series_pow<N: Scalar>(a: &[PPoly<N>], e: i64, len: usize) -> Series<N> {
    let mut out = vec![PPoly::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = PPoly::one();
    if e == 0 {
        return out;
    }
    let base = if e < 0 {
        series_inv(a, len)
    } else {
        let mut b: Series<N> = a.iter().take(len).cloned().collect();
        b.resize(len, PPoly::zero());
        b
    };
    let mut exp = e.unsigned_abs();
    let mut sq = base;
    while exp > 0 {
        if exp & 1 == 1 {
            out = series_mul(&out, &sq, len);
        }
        exp >>= 1;
        if exp > 0 {
            sq = series_mul(&sq, &sq, len);
        }
    }
    out
}

/// Formal logarithm of a series with constant term `1`, truncated to length
/// `len`.
///
/// Coefficients are divided exactly by integers, so this is meant for
/// `BigRational` scalars (with `BigInt` it panics unless every division
/// happens to be exact).
#[must_use]
pub fn series_log<N: Scalar>(a: &[PPoly<N>], len: usize) -> Series<N> {
    assert!(
        a.first().is_some_and(PPoly::is_one),
        "series logarithm requires constant term 1"
    );
    let mut out = vec![PPoly::zero(); len];
    if len <= 1 {
        return out;
    }
    // u = a - 1; log(1+u) = sum_{i>=1} (-1)^{i+1} u^i / i.
    let mut u: Series<N> = a.iter().take(len).cloned().collect();
    u.resize(len, PPoly::zero());
    u[0] = PPoly::zero();
    let mut upow = u.clone();
    let mut i = 1i64;
    loop {
        if upow.iter().all(PPoly::is_zero) {
            break;
        }
        for (k, c) in upow.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.map_scalars(|x| {
                let v = x.div_exact_i64(i);
                if i % 2 == 0 {
                    v.neg_value()
                } else {
                    v
                }
            });
            out[k].add_assign(&scaled);
        }
        i += 1;
        if i as usize >= len {
            break;
        }
        upow = series_mul(&upow, &u, len);
    }
    out
}

/// A Laurent polynomial in `x, y` with `PPoly` coefficients, keyed by the
/// exponent pair.
///
/// This is the working representation for elements acted on by
/// wall-crossings and for theta functions.  Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent<N: Scalar> {
    terms: BTreeMap<(i64, i64), PPoly<N>>,
}

impl<N: Scalar> Default for Laurent<N> {
    fn default() -> Self {
        Laurent::zero()
    }
}

impl<N: Scalar> Laurent<N> {
    /// The zero element.
    #[must_use]
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    /// The constant `1`.
    #[must_use]
    pub fn one() -> Self {
        Laurent::monomial((0, 0), PPoly::one())
    }

    /// `poly * x^{e.0} y^{e.1}`.
    #[must_use]
    pub fn monomial(e: (i64, i64), poly: PPoly<N>) -> Self {
        let mut l = Laurent::zero();
        l.add_poly_at(e, &poly);
        l
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored exponents.
    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient polynomial at an exponent (zero polynomial when absent).
    #[must_use]
    pub fn coeff(&self, e: (i64, i64)) -> PPoly<N> {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Iterates over `(exponent, coefficient)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &PPoly<N>)> {
        self.terms.iter()
    }

    /// Adds `poly * x^{e.0} y^{e.1}` in place.
    pub fn add_poly_at(&mut self, e: (i64, i64), poly: &PPoly<N>) {
        if poly.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(poly.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(poly);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds another element in place.
    pub fn add_assign(&mut self, other: &Laurent<N>) {
        for (e, p) in other.iter() {
            self.add_poly_at(*e, p);
        }
    }

    /// Subtracts another element in place.
    pub fn sub_assign(&mut self, other: &Laurent<N>) {
        for (e, p) in other.iter() {
            self.add_poly_at(*e, &p.neg());
        }
    }

    #[must_use]
    pub fn add(&self, other: &Laurent<N>) -> Laurent<N> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    #[must_use]
    pub fn sub(&self, other: &Laurent<N>) -> Laurent<N> {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// Product, dropping result terms whose coefficient monomials exceed
    /// total weight `maxw`.
    #[must_use]
    pub fn mul_trunc(&self, other: &Laurent<N>, maxw: u32) -> Laurent<N> {
        let mut out = Laurent::zero();
        for (e1, p1) in self.iter() {
            let w1 = match p1.min_total_weight() {
                Some(w) => w,
                None => continue,
            };
            if w1 > maxw {
                continue;
            }
            for (e2, p2) in other.iter() {
                let w2 = p2.min_total_weight().unwrap_or(0);
                if w1 + w2 > maxw {
                    continue;
                }
                let prod = p1.mul_trunc(p2, maxw);
                out.add_poly_at((e1.0 + e2.0, e1.1 + e2.1), &prod);
            }
        }
        out
    }

    /// Full product.
    #[must_use]
    pub fn mul(&self, other: &Laurent<N>) -> Laurent<N> {
        self.mul_trunc(other, u32::MAX)
    }

    /// Multiplies every coefficient by a fixed polynomial.
    #[must_use]
    pub fn scale_poly(&self, p: &PPoly<N>) -> Laurent<N> {
        let mut out = Laurent::zero();
        for (e, q) in self.iter() {
            out.add_poly_at(*e, &q.mul(p));
        }
        out
    }

    /// Drops all coefficient terms of total weight above `maxw`.
    #[must_use]
    pub fn truncate(&self, maxw: u32) -> Laurent<N> {
        let mut out = Laurent::zero();
        for (e, p) in self.iter() {
            out.add_poly_at(*e, &p.truncate(maxw));
        }
        out
    }

    /// `true` when this element is exactly `x^{e.0} y^{e.1}`.
    #[must_use]
    pub fn is_monomial_one(&self, e: (i64, i64)) -> bool {
        self.terms.len() == 1 && self.terms.get(&e).is_some_and(PPoly::is_one)
    }

    /// `true` when some coefficient of some term is negative.
    #[must_use]
    pub fn has_negative_coeff(&self) -> bool {
        self.iter().any(|(_, p)| p.has_negative_coeff())
    }
}

impl<N: Scalar> fmt::Display for Laurent<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, p) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})*x^{}*y^{}", e.0, e.1)?;
        }
        Ok(())
    }
}

impl<N: Scalar> fmt::Debug for Laurent<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Generalized binomial coefficient `C(n, k)` for integer `n` (possibly
/// negative) and `k >= 0`, computed exactly.
#[must_use]
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::from(1);
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    for i in 1..=k as i64 {
        let (q, r) = num.div_rem(&BigInt::from(i));
        debug_assert!(num_traits::Zero::is_zero(&r));
        let _ = r;
        num = q;
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(side: Side, k: usize) -> PPoly<BigInt> {
        PPoly::var(side, k)
    }

    #[test]
    fn monomial_multiplication_adds_exponents() {
        let a = PMonomial::var(Side::X, 1).mul(&PMonomial::var(Side::X, 3));
        assert_eq!(a.exp(Side::X, 1), 1);
        assert_eq!(a.exp(Side::X, 3), 1);
        assert_eq!(a.weight(Side::X), 4);
        assert_eq!(a.weight(Side::Y), 0);
        let b = a.mul(&PMonomial::var_pow(Side::Y, 2, 3));
        assert_eq!(b.total_weight(), 10);
        assert_eq!(b.degree(Side::Y), 3);
    }

    #[test]
    fn trailing_zero_trim_makes_equal_monomials_equal() {
        let a = PMonomial::from_exponents(vec![1, 0, 0], vec![]);
        let b = PMonomial::var(Side::X, 1);
        assert_eq!(a, b);
    }

    #[test]
    fn ppoly_addition_cancels_to_zero() {
        let a = p(Side::X, 1);
        let b = a.neg();
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn ppoly_product_expands_binomial_square() {
        // (1 + p11)^2 = 1 + 2 p11 + p11^2
        let f = PPoly::one().add(&p(Side::X, 1));
        let sq = f.mul(&f);
        assert_eq!(sq.len(), 3);
        assert_eq!(
            sq.get(&PMonomial::var(Side::X, 1)),
            Some(&BigInt::from(2))
        );
        assert_eq!(
            sq.get(&PMonomial::var_pow(Side::X, 1, 2)),
            Some(&BigInt::from(1))
        );
    }

    #[test]
    fn truncated_product_drops_heavy_terms() {
        let f = PPoly::one().add(&p(Side::X, 2));
        let g = PPoly::one().add(&p(Side::Y, 2));
        let prod = f.mul_trunc(&g, 3);
        // The p12*p22 term has weight 4 and must be gone.
        assert_eq!(prod.len(), 3);
    }

    #[test]
    fn series_inverse_is_inverse() {
        let f: Series<BigInt> = vec![PPoly::one(), p(Side::X, 1), p(Side::X, 2)];
        let inv = series_inv(&f, 8);
        let prod = series_mul(&f, &inv, 8);
        assert!(prod[0].is_one());
        for c in &prod[1..] {
            assert!(c.is_zero(), "inverse failed: residue {c}");
        }
    }

    #[test]
    fn series_power_matches_repeated_multiplication() {
        let f: Series<BigInt> = vec![PPoly::one(), p(Side::X, 1), p(Side::X, 2)];
        let cube = series_mul(&series_mul(&f, &f, 7), &f, 7);
        assert_eq!(series_pow(&f, 3, 7), cube);
        let back = series_mul(&series_pow(&f, -3, 7), &cube, 7);
        assert!(back[0].is_one());
        for c in &back[1..] {
            assert!(c.is_zero());
        }
    }

    #[test]
    fn series_log_of_geometric_series_has_harmonic_coefficients() {
        // log(1/(1-z)) = sum z^i / i with constant coefficients.
        let one = PPoly::<BigRational>::one();
        let geo: Series<BigRational> = vec![one.clone(), one.clone(), one.clone(), one.clone()];
        // geo = 1 + z + z^2 + z^3 = (1 - z)^{-1} truncated.
        let lg = series_log(&geo, 4);
        for i in 1..4 {
            let expect = BigRational::from_i64(1).div_exact_i64(i as i64);
            assert_eq!(lg[i].constant_term(), expect, "coefficient of z^{i}");
        }
    }

    #[test]
    fn laurent_product_adds_exponents_and_truncates() {
        let a = Laurent::monomial((1, 0), PPoly::one().add(&p(Side::X, 1)));
        let b = Laurent::monomial((-1, 2), PPoly::one().add(&p(Side::Y, 1)));
        let ab = a.mul_trunc(&b, 1);
        assert_eq!(ab.coeff((0, 2)).len(), 3); // 1 + p11 + p21; p11*p21 truncated
    }

    #[test]
    fn subsample_keeps_only_divisible_slots() {
        // p12*p22^2 subsamples by 2 to p11*p21^2; p11 does not survive.
        let m = PMonomial::var(Side::X, 2).mul(&PMonomial::var_pow(Side::Y, 2, 2));
        let s = m.subsample_weights(2).unwrap();
        assert_eq!(s, PMonomial::var(Side::X, 1).mul(&PMonomial::var_pow(Side::Y, 1, 2)));
        assert_eq!(PMonomial::var(Side::X, 1).subsample_weights(2), None);
    }

    #[test]
    fn generalized_binomial_handles_negative_upper_index() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(3, 0), BigInt::from(1));
    }

    #[test]
    fn specialize_substitutes_values_per_slot() {
        // 2*p12*p21 at p -> C(l,k) with l1=2,l2=1: 2 * C(2,2) * C(1,1) = 2.
        let f = PPoly::monomial(
            PMonomial::var(Side::X, 2).mul(&PMonomial::var(Side::Y, 1)),
            BigInt::from(2),
        );
        let v = f.specialize(&|side, k| match side {
            Side::X => binomial(2, k as u32),
            Side::Y => binomial(1, k as u32),
        });
        assert_eq!(v, BigInt::from(2));
    }
}
