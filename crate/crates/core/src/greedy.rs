//! Greedy elements of rank-2 generalized cluster algebras, computed by the
//! sharpened coefficient recursion.
//!
//! The greedy element attached to a denominator vector `(d1, d2)` is the
//! pointed Laurent polynomial
//!
//! ```text
//!     x[d1, d2] = x1^{-d1} x2^{-d2} * sum_{p,q >= 0} c(p, q) x1^p x2^q
//! ```
//!
//! with `c(0, 0) = 1`, whose coefficients `c(p, q)` lie in
//! `Z[p_{1,1}, ..., p_{1,l1}, p_{2,1}, ..., p_{2,l2}]` and are determined by
//! a recursion in terms of the exchange polynomials
//!
//! ```text
//!     P1(t) = 1 + p_{1,1} t + ... + p_{1,l1} t^{l1},
//!     P2(t) = 1 + p_{2,1} t + ... + p_{2,l2} t^{l2}.
//! ```
//!
//! Writing `pi(m, n)` for the coefficient of `t^n` in `P^m` and
//! `sigma(m, n)` for the coefficient of `t^n` in `P^{-m}` (both for
//! `m >= 0`, and both *defined to vanish* for `m < 0` unless `n = 0`, where
//! they are `1`), the recursion picks one of two equivalent branches by the
//! sign of `d1*q - d2*p`:
//!
//! ```text
//!     c(p, q) = - sum_{k=1}^{p} c(p-k, q) sigma_1(d2-q, k)   if d1*q <= d2*p,
//!     c(p, q) = - sum_{k=1}^{q} c(p, q-k) sigma_2(d1-p, k)   otherwise,
//! ```
//!
//! where `sigma_1` uses `P1` and `sigma_2` uses `P2`.  On the diagonal
//! `d1*q = d2*p` the two branches agree.  The module also exposes the
//! associated partial sums `d_plus` / `d_minus`, whose vanishing pattern
//! characterises which branch is active, and a slow checker that recomputes
//! `c(p, q)` as a coefficientwise maximum of the two branches.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::poly::{Laurent, PPoly, Scalar, Series, Side};

/// Coefficient table for one greedy element, with cached exchange-polynomial
/// power series.
#[must_use]
pub struct GreedyCtx {
    l1: usize,
    l2: usize,
    d1: i64,
    d2: i64,
    /// Memoized `c(p, q)`.
    coeffs: HashMap<(u32, u32), PPoly<BigInt>>,
    /// Memo for the independent branch-maximum checker.
    tmax_memo: HashMap<(u32, u32), PPoly<BigInt>>,
    /// Power series of `P1^m` and `P1^{-m}` by `m >= 0`, to the needed
    /// length; same for `P2`.
    pows: [HashMap<i64, Series<BigInt>>; 2],
}

/// Coefficient of `t^n` in `P^m` for the side's exchange polynomial, under
/// the greedy convention: zero when `m < 0` and `n > 0`, one when `n = 0`.
#[must_use]
pub fn pi(ctx: &mut GreedyCtx, side: Side, m: i64, n: u32) -> PPoly<BigInt> {
    ctx.power_coeff(side, m, n)
}

/// Coefficient of `t^n` in `P^{-m}`, under the same convention (zero when
/// `m < 0` and `n > 0`, one when `n = 0`).
#[must_use]
pub fn sigma(ctx: &mut GreedyCtx, side: Side, m: i64, n: u32) -> PPoly<BigInt> {
    ctx.power_coeff(side, -m, n)
}

impl GreedyCtx {
    /// New context for the greedy element `x[d1, d2]` with exchange degrees
    /// `(l1, l2)`.
    pub fn new(l1: usize, l2: usize, d1: i64, d2: i64) -> Self {
        let mut ctx = GreedyCtx {
            l1,
            l2,
            d1,
            d2,
            coeffs: HashMap::new(),
            tmax_memo: HashMap::new(),
            pows: [HashMap::new(), HashMap::new()],
        };
        ctx.coeffs.insert((0, 0), PPoly::one());
        ctx
    }

    #[must_use]
    pub fn d1(&self) -> i64 {
        self.d1
    }

    #[must_use]
    pub fn d2(&self) -> i64 {
        self.d2
    }

    fn exchange_poly(&self, side: Side) -> Series<BigInt> {
        let l = match side {
            Side::X => self.l1,
            Side::Y => self.l2,
        };
        let mut s: Series<BigInt> = Vec::with_capacity(l + 1);
        s.push(PPoly::one());
        for k in 1..=l {
            s.push(PPoly::var(side, k));
        }
        s
    }

    /// Cached power series `P_side^m` of length at least `len`.  Grown in
    /// powers of two and recomputed from scratch when a previously cached
    /// copy is too short, so repeated deepening stays amortized against the
    /// final length.
    fn cached_pow(&mut self, side: Side, m: i64, len: usize) -> &Series<BigInt> {
        let idx = side.index() - 1;
        let too_short = self.pows[idx].get(&m).is_none_or(|s| s.len() < len);
        if too_short {
            let base = self.exchange_poly(side);
            let s = crate::poly::series_pow(&base, m, len.next_power_of_two());
            self.pows[idx].insert(m, s);
        }
        &self.pows[idx][&m]
    }

    /// Coefficient of `t^n` in `P_side^m`, with the greedy convention for
    /// negative `m`.
    fn power_coeff(&mut self, side: Side, m: i64, n: u32) -> PPoly<BigInt> {
        if n == 0 {
            return PPoly::one();
        }
        if m < 0 {
            return PPoly::zero();
        }
        let s = self.cached_pow(side, m, n as usize + 1);
        s.get(n as usize).cloned().unwrap_or_else(PPoly::zero)
    }

    /// Coefficient of `t^n` in `P_side^{-m}` with the greedy convention:
    /// genuinely the inverse-power coefficient for `m >= 0`, but forced to
    /// `0` for `m < 0, n > 0` and to `1` for `n = 0`.
    fn sigma_coeff(&mut self, side: Side, m: i64, n: u32) -> PPoly<BigInt> {
        if m >= 0 {
            if n == 0 {
                return PPoly::one();
            }
            let s = self.cached_pow(side, -m, n as usize + 1);
            s.get(n as usize).cloned().unwrap_or_else(PPoly::zero)
        } else {
            // Negative exponent of the inverse: the greedy convention kills
            // every positive-degree coefficient.
            if n == 0 {
                PPoly::one()
            } else {
                PPoly::zero()
            }
        }
    }

    /// The greedy coefficient `c(p, q)`.
    pub fn coeff(&mut self, p: u32, q: u32) -> PPoly<BigInt> {
        if let Some(c) = self.coeffs.get(&(p, q)) {
            return c.clone();
        }
        let c = self.compute_coeff(p, q);
        self.coeffs.insert((p, q), c.clone());
        c
    }

    fn compute_coeff(&mut self, p: u32, q: u32) -> PPoly<BigInt> {
        let (d1, d2) = (self.d1, self.d2);
        if p == 0 && q == 0 {
            return PPoly::one();
        }
        // Degenerate denominator vectors: at most one exchange polynomial
        // contributes.
        if d1 <= 0 && d2 <= 0 {
            return PPoly::zero();
        }
        if d1 <= 0 {
            // x[d1, d2] = x1^{-d1} x2^{-d2} P1(x1)^{d2}.
            return if q == 0 {
                self.power_coeff(Side::X, d2, p)
            } else {
                PPoly::zero()
            };
        }
        if d2 <= 0 {
            return if p == 0 {
                self.power_coeff(Side::Y, d1, q)
            } else {
                PPoly::zero()
            };
        }
        if d1 * i64::from(q) <= d2 * i64::from(p) {
            // Horizontal branch.
            let mut acc = PPoly::zero();
            for k in 1..=p {
                let c = self.coeff(p - k, q);
                if c.is_zero() {
                    continue;
                }
                let s = self.sigma_coeff(Side::X, d2 - i64::from(q), k);
                if s.is_zero() {
                    continue;
                }
                acc.add_assign(&c.mul(&s));
            }
            acc.neg()
        } else {
            let mut acc = PPoly::zero();
            for k in 1..=q {
                let c = self.coeff(p, q - k);
                if c.is_zero() {
                    continue;
                }
                let s = self.sigma_coeff(Side::Y, d1 - i64::from(p), k);
                if s.is_zero() {
                    continue;
                }
                acc.add_assign(&c.mul(&s));
            }
            acc.neg()
        }
    }

    /// `d_plus(p, q) = c(p, q) + sum_{k=1}^{p} c(p-k, q) sigma_1(d2-q, k)`;
    /// vanishes whenever `d1*q <= d2*p`.
    pub fn d_plus(&mut self, p: u32, q: u32) -> PPoly<BigInt> {
        if p == 0 && q == 0 {
            return PPoly::one();
        }
        let mut acc = self.coeff(p, q);
        for k in 1..=p {
            let c = self.coeff(p - k, q);
            if c.is_zero() {
                continue;
            }
            let s = self.sigma_coeff(Side::X, self.d2 - i64::from(q), k);
            if s.is_zero() {
                continue;
            }
            acc.add_assign(&c.mul(&s));
        }
        acc
    }

    /// `d_minus(p, q) = c(p, q) + sum_{k=1}^{q} c(p, q-k) sigma_2(d1-p, k)`;
    /// vanishes whenever `d1*q >= d2*p`.
    pub fn d_minus(&mut self, p: u32, q: u32) -> PPoly<BigInt> {
        if p == 0 && q == 0 {
            return PPoly::one();
        }
        let mut acc = self.coeff(p, q);
        for k in 1..=q {
            let c = self.coeff(p, q - k);
            if c.is_zero() {
                continue;
            }
            let s = self.sigma_coeff(Side::Y, self.d1 - i64::from(p), k);
            if s.is_zero() {
                continue;
            }
            acc.add_assign(&c.mul(&s));
        }
        acc
    }

    /// Upper bound on `p` with `c(p, q)` possibly nonzero.
    #[must_use]
    pub fn support_p_max(&self) -> u32 {
        (self.d1.max(0) + self.l1 as i64 * self.d2.max(0)) as u32
    }

    /// Upper bound on `q` with `c(p, q)` possibly nonzero.
    #[must_use]
    pub fn support_q_max(&self) -> u32 {
        (self.d2.max(0) + self.l2 as i64 * self.d1.max(0)) as u32
    }

    /// The full greedy element as a Laurent polynomial in `(x1, x2)`.
    pub fn element(&mut self) -> Laurent<BigInt> {
        let mut out = Laurent::zero();
        for p in 0..=self.support_p_max() {
            for q in 0..=self.support_q_max() {
                let c = self.coeff(p, q);
                if !c.is_zero() {
                    out.add_poly_at(
                        (i64::from(p) - self.d1, i64::from(q) - self.d2),
                        &c,
                    );
                }
            }
        }
        out
    }
}

/// Coefficientwise maximum of two polynomials, as used by the branch-free
/// characterization of greedy coefficients.  Both inputs must have
/// nonnegative coefficients wherever they disagree in a way that makes the
/// maximum well defined; this is only used as a cross-check.
#[must_use]
pub fn coefficientwise_max(a: &PPoly<BigInt>, b: &PPoly<BigInt>) -> PPoly<BigInt> {
    let mut out = a.clone();
    for (mono, coeff) in b.iter() {
        let cur = out.get(mono).cloned().unwrap_or_else(BigInt::zero);
        if *coeff > cur {
            let mut delta = coeff.clone();
            delta.sub_assign_ref(&cur);
            out.add_term(mono.clone(), delta);
        }
    }
    out
}

/// Recomputes `c(p, q)` as the coefficientwise maximum of the two branch
/// sums, without ever choosing a branch.  Only for cross-checking the
/// sharpened recursion.
pub fn coeff_via_tmax(ctx: &mut GreedyCtx, p: u32, q: u32) -> PPoly<BigInt> {
    if p == 0 && q == 0 {
        return PPoly::one();
    }
    if let Some(c) = ctx.tmax_memo.get(&(p, q)) {
        return c.clone();
    }
    let (d1, d2) = (ctx.d1, ctx.d2);
    if d1 <= 0 && d2 <= 0 {
        return PPoly::zero();
    }
    if d1 <= 0 {
        return if q == 0 {
            ctx.power_coeff(Side::X, d2, p)
        } else {
            PPoly::zero()
        };
    }
    if d2 <= 0 {
        return if p == 0 {
            ctx.power_coeff(Side::Y, d1, q)
        } else {
            PPoly::zero()
        };
    }
    let mut horiz = PPoly::zero();
    for k in 1..=p {
        let c = coeff_via_tmax(ctx, p - k, q);
        if c.is_zero() {
            continue;
        }
        let s = ctx.sigma_coeff(Side::X, d2 - i64::from(q), k);
        if s.is_zero() {
            continue;
        }
        horiz.add_assign(&c.mul(&s));
    }
    let mut vert = PPoly::zero();
    for k in 1..=q {
        let c = coeff_via_tmax(ctx, p, q - k);
        if c.is_zero() {
            continue;
        }
        let s = ctx.sigma_coeff(Side::Y, d1 - i64::from(p), k);
        if s.is_zero() {
            continue;
        }
        vert.add_assign(&c.mul(&s));
    }
    let out = coefficientwise_max(&horiz.neg(), &vert.neg());
    ctx.tmax_memo.insert((p, q), out.clone());
    out
}

/// Convenience: the greedy element `x[d1, d2]` for exchange degrees
/// `(l1, l2)`.
#[must_use]
pub fn greedy_element(l1: usize, l2: usize, d1: i64, d2: i64) -> Laurent<BigInt> {
    GreedyCtx::new(l1, l2, d1, d2).element()
}
