//! Maximal Dyck paths, edge weightings, shadows, and the compatibility
//! predicates that count wall-function coefficients combinatorially.
//!
//! The maximal Dyck path `P(d1, d2)` runs from `(0,0)` to `(d1, d2)` and is
//! the lattice path weakly below the diagonal that stays closest to it: the
//! `j`-th vertical edge comes immediately after horizontal edge number
//! `ceil(j*d1/d2)`.  A *weighting* assigns to each horizontal edge an
//! integer in `0..=l2` and to each vertical edge an integer in `0..=l1`;
//! its weight monomial is
//!
//! ```text
//!     wt(w) = prod_i p_{2, w(u_i)} * prod_j p_{1, w(v_j)}
//! ```
//!
//! over horizontal edges `u_i` and vertical edges `v_j` (weight `0` means no
//! contribution).  Compatibility, shadows, shadowed weightings and tight
//! weightings are the successively stronger predicates implemented below;
//! sums of `wt` over them reproduce greedy-element coefficients and
//! wall-function coefficients, which is what the rest of the crate checks
//! them against.

use num_bigint::BigInt;

use crate::poly::{PMonomial, PPoly, Side};

/// Horizontal (east) or vertical (north) edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Horizontal,
    Vertical,
}

/// A maximal Dyck path together with index tables for its edges.
#[derive(Clone, Debug)]
#[must_use]
pub struct DyckPath {
    d1: usize,
    d2: usize,
    kinds: Vec<EdgeKind>,
    horizontals: Vec<usize>,
    verticals: Vec<usize>,
}

/// Builds the maximal Dyck path `P(d1, d2)`.
pub fn maximal_dyck_path(d1: usize, d2: usize) -> DyckPath {
    let mut kinds = Vec::with_capacity(d1 + d2);
    // Vertical edge j (1-based) follows horizontal edge ceil(j*d1/d2).
    let mut j = 1usize;
    for h in 1..=d1 {
        kinds.push(EdgeKind::Horizontal);
        while j <= d2 && (j * d1).div_ceil(d2) == h {
            kinds.push(EdgeKind::Vertical);
            j += 1;
        }
    }
    // d1 == 0: all vertical edges come "after zero horizontal edges".
    while j <= d2 {
        kinds.insert(0, EdgeKind::Vertical);
        j += 1;
    }
    let horizontals = kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| **k == EdgeKind::Horizontal)
        .map(|(i, _)| i)
        .collect();
    let verticals = kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| **k == EdgeKind::Vertical)
        .map(|(i, _)| i)
        .collect();
    DyckPath {
        d1,
        d2,
        kinds,
        horizontals,
        verticals,
    }
}

impl DyckPath {
    /// Number of horizontal edges.
    #[must_use]
    pub fn d1(&self) -> usize {
        self.d1
    }

    /// Number of vertical edges.
    #[must_use]
    pub fn d2(&self) -> usize {
        self.d2
    }

    /// Total number of edges.
    #[must_use]
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    /// Kind of the edge at a path position.
    #[must_use]
    pub fn kind(&self, idx: usize) -> EdgeKind {
        self.kinds[idx]
    }

    /// Path positions of the horizontal edges, in order.
    #[must_use]
    pub fn horizontals(&self) -> &[usize] {
        &self.horizontals
    }

    /// Path positions of the vertical edges, in order.
    #[must_use]
    pub fn verticals(&self) -> &[usize] {
        &self.verticals
    }

    /// Edge positions of the cyclic subpath from `from` to `to`, both
    /// inclusive; when `from == to` the subpath is the single edge.
    #[must_use]
    pub fn cyclic_subpath(&self, from: usize, to: usize) -> Vec<usize> {
        let n = self.len();
        let len = (to + n - from) % n + 1;
        (0..len).map(|i| (from + i) % n).collect()
    }
}

/// A weighting of a Dyck path: `weights[i]` is the value on edge `i` (path
/// position order).
pub type Weighting = Vec<u32>;

/// The weight monomial of a weighting: horizontal edges contribute side-`Y`
/// variables, vertical edges side-`X` variables.
#[must_use]
pub fn weight_monomial(path: &DyckPath, w: &Weighting) -> PMonomial {
    let mut q1 = Vec::new();
    let mut q2 = Vec::new();
    for (i, &wi) in w.iter().enumerate() {
        if wi == 0 {
            continue;
        }
        let k = wi as usize;
        match path.kind(i) {
            EdgeKind::Horizontal => {
                if q2.len() < k {
                    q2.resize(k, 0);
                }
                q2[k - 1] += 1;
            }
            EdgeKind::Vertical => {
                if q1.len() < k {
                    q1.resize(k, 0);
                }
                q1[k - 1] += 1;
            }
        }
    }
    PMonomial::from_exponents(q1, q2)
}

/// Sum of weights over vertical edges (the side-`X` total, usually `p`).
#[must_use]
pub fn vertical_total(path: &DyckPath, w: &Weighting) -> u32 {
    path.verticals().iter().map(|&i| w[i]).sum()
}

/// Sum of weights over horizontal edges (the side-`Y` total, usually `q`).
#[must_use]
pub fn horizontal_total(path: &DyckPath, w: &Weighting) -> u32 {
    path.horizontals().iter().map(|&i| w[i]).sum()
}

/// Compatibility of a weighting.
///
/// For every pair `(u, v)` of a horizontal edge `u` and a vertical edge `v`
/// with `w(u) > 0` and `w(v) > 0`, the cyclic subpath from `u` to `v` must
/// contain a *witness* edge `e`: either a vertical `e != v` such that the
/// number of vertical edges in the subpath `u..=e` equals the weight of its
/// horizontal edges, or a horizontal `e != u` such that the number of
/// horizontal edges in `e..=v` equals the weight of its vertical edges.
#[must_use]
pub fn is_compatible(path: &DyckPath, w: &Weighting) -> bool {
    for &u in path.horizontals() {
        if w[u] == 0 {
            continue;
        }
        for &v in path.verticals() {
            if w[v] == 0 {
                continue;
            }
            if !pair_has_witness(path, w, u, v) {
                return false;
            }
        }
    }
    true
}

fn pair_has_witness(path: &DyckPath, w: &Weighting, u: usize, v: usize) -> bool {
    let n = path.len();
    let sub_len = (v + n - u) % n + 1;
    // Pass 1: vertical witnesses (prefix condition, inclusive counters) and
    // subpath totals for pass 2.
    let mut vert_count = 0u32;
    let mut horiz_weight = 0u32;
    let mut horiz_count = 0u32;
    let mut vert_weight = 0u32;
    for i in 0..sub_len {
        let e = (u + i) % n;
        match path.kind(e) {
            EdgeKind::Vertical => {
                vert_count += 1;
                vert_weight += w[e];
                // e != v: v is the last edge of the subpath.
                if i + 1 < sub_len && vert_count == horiz_weight {
                    return true;
                }
            }
            EdgeKind::Horizontal => {
                horiz_count += 1;
                horiz_weight += w[e];
            }
        }
    }
    // Pass 2: horizontal witnesses.  For a horizontal `e != u` the counts
    // over `e..=v` are the totals minus the strict prefix before `e`.
    let mut hc_before = 0u32;
    let mut vw_before = 0u32;
    for i in 0..sub_len {
        let e = (u + i) % n;
        match path.kind(e) {
            EdgeKind::Horizontal => {
                if i > 0 && horiz_count - hc_before == vert_weight - vw_before {
                    return true;
                }
                hc_before += 1;
            }
            EdgeKind::Vertical => {
                vw_before += w[e];
            }
        }
    }
    false
}

/// The shadow of an edge under a weighting.
///
/// A positively weighted horizontal edge `e` casts its shadow forward: onto
/// the vertical edges of the minimal cyclic subpath `e..=v` (with `v`
/// vertical) in which the number of vertical edges equals the weight of the
/// horizontal edges, or onto all vertical edges if no such subpath exists.
/// A positively weighted vertical edge casts backward onto horizontal edges
/// symmetrically.  Zero-weighted edges cast no shadow.
#[must_use]
pub fn shadow(path: &DyckPath, w: &Weighting, e: usize) -> Vec<usize> {
    if w[e] == 0 {
        return Vec::new();
    }
    let n = path.len();
    match path.kind(e) {
        EdgeKind::Horizontal => {
            let mut vert_in = Vec::new();
            let mut horiz_weight = w[e];
            for step in 1..n {
                let f = (e + step) % n;
                match path.kind(f) {
                    EdgeKind::Vertical => {
                        vert_in.push(f);
                        if vert_in.len() as u32 == horiz_weight {
                            return vert_in;
                        }
                    }
                    EdgeKind::Horizontal => horiz_weight += w[f],
                }
            }
            path.verticals().to_vec()
        }
        EdgeKind::Vertical => {
            let mut horiz_in = Vec::new();
            let mut vert_weight = w[e];
            for step in 1..n {
                let f = (e + n - step % n) % n;
                match path.kind(f) {
                    EdgeKind::Horizontal => {
                        horiz_in.push(f);
                        if horiz_in.len() as u32 == vert_weight {
                            horiz_in.reverse();
                            return horiz_in;
                        }
                    }
                    EdgeKind::Vertical => vert_weight += w[f],
                }
            }
            path.horizontals().to_vec()
        }
    }
}

/// Union of the shadows of all edges of one kind, as a membership mask over
/// path positions.
#[must_use]
pub fn shadow_union(path: &DyckPath, w: &Weighting, kind: EdgeKind) -> Vec<bool> {
    let mut mask = vec![false; path.len()];
    let edges = match kind {
        EdgeKind::Horizontal => path.horizontals(),
        EdgeKind::Vertical => path.verticals(),
    };
    for &e in edges {
        for f in shadow(path, w, e) {
            mask[f] = true;
        }
    }
    mask
}

/// Shadowed with the vertical support covered: every positively weighted
/// vertical edge lies in the shadow of the horizontal edges.
#[must_use]
pub fn is_shadowed_plus(path: &DyckPath, w: &Weighting) -> bool {
    if !is_compatible(path, w) {
        return false;
    }
    vertical_support_covered(path, w)
}

/// Shadowed with the horizontal support covered: every positively weighted
/// horizontal edge lies in the shadow of the vertical edges.
#[must_use]
pub fn is_shadowed_minus(path: &DyckPath, w: &Weighting) -> bool {
    if !is_compatible(path, w) {
        return false;
    }
    horizontal_support_covered(path, w)
}

fn vertical_support_covered(path: &DyckPath, w: &Weighting) -> bool {
    let mask = shadow_union(path, w, EdgeKind::Horizontal);
    path.verticals().iter().all(|&v| w[v] == 0 || mask[v])
}

fn horizontal_support_covered(path: &DyckPath, w: &Weighting) -> bool {
    let mask = shadow_union(path, w, EdgeKind::Vertical);
    path.horizontals().iter().all(|&u| w[u] == 0 || mask[u])
}

/// A weighting is shadowed when it is compatible and at least one side's
/// support is covered by the other side's shadows.
#[must_use]
pub fn is_shadowed(path: &DyckPath, w: &Weighting) -> bool {
    if !is_compatible(path, w) {
        return false;
    }
    vertical_support_covered(path, w) || horizontal_support_covered(path, w)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// A weighting is tight when it is shadowed, its totals `(p, q)` satisfy
/// `p <= d1`, `q <= d2`, and `p*d2 - q*d1 = ±gcd(p, q)`.
#[must_use]
pub fn is_tight(path: &DyckPath, w: &Weighting) -> bool {
    let p = u64::from(vertical_total(path, w));
    let q = u64::from(horizontal_total(path, w));
    if p > path.d1() as u64 || q > path.d2() as u64 {
        return false;
    }
    let det = p as i64 * path.d2() as i64 - q as i64 * path.d1() as i64;
    let g = gcd_u64(p, q) as i64;
    if det.abs() != g {
        return false;
    }
    is_shadowed(path, w)
}

/// Which predicate a weighting enumeration should apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingKind {
    /// No predicate: every weighting with the requested totals.
    All,
    Compatible,
    Shadowed,
    ShadowedPlus,
    ShadowedMinus,
    Tight,
}

/// Evaluates one predicate on a weighting.
#[must_use]
pub fn satisfies(path: &DyckPath, w: &Weighting, kind: GradingKind) -> bool {
    match kind {
        GradingKind::All => true,
        GradingKind::Compatible => is_compatible(path, w),
        GradingKind::Shadowed => is_shadowed(path, w),
        GradingKind::ShadowedPlus => is_shadowed_plus(path, w),
        GradingKind::ShadowedMinus => is_shadowed_minus(path, w),
        GradingKind::Tight => is_tight(path, w),
    }
}

/// Enumerates all weightings of `P(d1, d2)` with vertical values in
/// `0..=l1`, horizontal values in `0..=l2`, vertical total `p` and
/// horizontal total `q`, that satisfy the predicate.  Weightings are
/// reported in path-position order.
#[must_use]
pub fn enumerate_weighted(
    d1: usize,
    d2: usize,
    p: u32,
    q: u32,
    l1: usize,
    l2: usize,
    kind: GradingKind,
) -> Vec<Weighting> {
    let path = maximal_dyck_path(d1, d2);
    let mut out = Vec::new();
    for_each_weighting(&path, p, q, l1, l2, &mut |w| {
        if satisfies(&path, w, kind) {
            out.push(w.clone());
        }
    });
    out
}

/// Sum of weight monomials over the enumerated weightings, together with
/// their number.
#[must_use]
pub fn weighted_sum(
    d1: usize,
    d2: usize,
    p: u32,
    q: u32,
    l1: usize,
    l2: usize,
    kind: GradingKind,
) -> (u64, PPoly<BigInt>) {
    let path = maximal_dyck_path(d1, d2);
    let mut count = 0u64;
    let mut sum = PPoly::zero();
    for_each_weighting(&path, p, q, l1, l2, &mut |w| {
        if satisfies(&path, w, kind) {
            count += 1;
            sum.add_term(weight_monomial(&path, w), num_bigint::BigInt::from(1));
        }
    });
    (count, sum)
}

/// Enumerates every weighting of `P(d1, d2)` once and buckets the predicate
/// survivors by their totals `(p, q)`, returning per bucket the count and
/// the sum of weight monomials.  This is the cheap way to compare a whole
/// coefficient table against an independent computation.
#[must_use]
pub fn sums_by_totals(
    d1: usize,
    d2: usize,
    l1: usize,
    l2: usize,
    kind: GradingKind,
) -> std::collections::BTreeMap<(u32, u32), (u64, PPoly<BigInt>)> {
    let path = maximal_dyck_path(d1, d2);
    let mut out: std::collections::BTreeMap<(u32, u32), (u64, PPoly<BigInt>)> =
        std::collections::BTreeMap::new();
    let mut w = vec![0u32; path.len()];
    enumerate_all(&path, &mut w, 0, l1 as u32, l2 as u32, &mut |w| {
        if satisfies(&path, w, kind) {
            let p = vertical_total(&path, w);
            let q = horizontal_total(&path, w);
            let entry = out
                .entry((p, q))
                .or_insert_with(|| (0, PPoly::zero()));
            entry.0 += 1;
            entry.1.add_term(weight_monomial(&path, w), BigInt::from(1));
        }
    });
    out
}

fn enumerate_all(
    path: &DyckPath,
    w: &mut Weighting,
    idx: usize,
    l1: u32,
    l2: u32,
    f: &mut impl FnMut(&Weighting),
) {
    if idx == path.len() {
        f(w);
        return;
    }
    let cap = match path.kind(idx) {
        EdgeKind::Vertical => l1,
        EdgeKind::Horizontal => l2,
    };
    for v in 0..=cap {
        w[idx] = v;
        enumerate_all(path, w, idx + 1, l1, l2, f);
    }
    w[idx] = 0;
}

/// Counts the weightings with a prescribed weight monomial satisfying the
/// predicate.  Only the support placements compatible with the monomial are
/// visited, so this stays fast even on large paths.
#[must_use]
pub fn count_with_monomial(
    d1: usize,
    d2: usize,
    mono: &PMonomial,
    kind: GradingKind,
) -> u64 {
    let path = maximal_dyck_path(d1, d2);
    // Multisets of values dictated by the monomial, one per side.
    let vert_values = multiset_from_exponents(mono.exponents(Side::X));
    let horiz_values = multiset_from_exponents(mono.exponents(Side::Y));
    let mut count = 0u64;
    let mut w = vec![0u32; path.len()];
    place_values(
        &path,
        &mut w,
        &vert_values,
        0,
        path.verticals(),
        0,
        &mut |path, w| {
            place_values(path, w, &horiz_values, 0, path.horizontals(), 0, &mut |path, w| {
                if satisfies(path, w, kind) {
                    count += 1;
                }
            });
        },
    );
    count
}

fn multiset_from_exponents(exps: &[u32]) -> Vec<u32> {
    let mut vals = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            vals.push(i as u32 + 1);
        }
    }
    vals
}

/// Places the distinct values of `values[from..]` onto the listed edges (a
/// strictly increasing choice of positions per value group) and calls `f`
/// for every complete placement.
fn place_values(
    path: &DyckPath,
    w: &mut Vec<u32>,
    values: &[u32],
    from: usize,
    edges: &[usize],
    min_slot: usize,
    f: &mut impl FnMut(&DyckPath, &mut Vec<u32>),
) {
    if from == values.len() {
        f(path, w);
        return;
    }
    let v = values[from];
    // Group of equal values starting at `from`.
    let mut to = from;
    while to < values.len() && values[to] == v {
        to += 1;
    }
    let group = to - from;
    choose_slots(path, w, v, group, edges, min_slot, 0, values, to, f);
}

#[allow(clippy::too_many_arguments)]
fn choose_slots(
    path: &DyckPath,
    w: &mut Vec<u32>,
    value: u32,
    remaining: usize,
    edges: &[usize],
    start: usize,
    _depth: usize,
    values: &[u32],
    next_from: usize,
    f: &mut impl FnMut(&DyckPath, &mut Vec<u32>),
) {
    if remaining == 0 {
        place_values(path, w, values, next_from, edges, 0, f);
        return;
    }
    if edges.len() < start + remaining {
        return;
    }
    for i in start..=edges.len() - remaining {
        let e = edges[i];
        if w[e] != 0 {
            continue;
        }
        w[e] = value;
        choose_slots(path, w, value, remaining - 1, edges, i + 1, 0, values, next_from, f);
        w[e] = 0;
    }
}

/// Calls `f` for every weighting with the given totals and slot bounds.
fn for_each_weighting(
    path: &DyckPath,
    p: u32,
    q: u32,
    l1: usize,
    l2: usize,
    f: &mut impl FnMut(&Weighting),
) {
    let mut w = vec![0u32; path.len()];
    let verts: Vec<usize> = path.verticals().to_vec();
    let horizs: Vec<usize> = path.horizontals().to_vec();
    fill_side(path, &mut w, &verts, 0, p, l1 as u32, &mut |path, w| {
        fill_side(path, w, &horizs, 0, q, l2 as u32, &mut |_, w| f(w));
    });
}

fn fill_side(
    path: &DyckPath,
    w: &mut Weighting,
    edges: &[usize],
    idx: usize,
    remaining: u32,
    cap: u32,
    f: &mut impl FnMut(&DyckPath, &mut Weighting),
) {
    if idx == edges.len() {
        if remaining == 0 {
            f(path, w);
        }
        return;
    }
    // Budget pruning: the rest of this side can absorb at most cap per edge.
    let slots_left = (edges.len() - idx) as u32;
    if remaining > cap * slots_left {
        return;
    }
    let e = edges[idx];
    for v in 0..=cap.min(remaining) {
        w[e] = v;
        fill_side(path, w, edges, idx + 1, remaining - v, cap, f);
    }
    w[e] = 0;
}
