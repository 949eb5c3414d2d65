//! Intervals (modules), indecomposability, critical vertices and
//! pair-minimality.
//!
//! Everything here reduces to one primitive: the smallest interval containing
//! a seed set, grown by repeatedly absorbing any outside vertex that sees the
//! current set non-uniformly. A graph is decomposable exactly when the
//! closure of some pair is a proper subset of the vertex set.

use crate::error::{Error, Result};
use crate::graph::{full_mask, Bits, Graph, VertexId, VertexSet};
use crate::iso::pinned_pq_isomorphism;

/// Largest graph handed to exhaustive subset enumeration.
pub const ENUMERATION_CAP: usize = 16;

/// Smallest interval of `G[within]` containing `seed` (both as masks).
pub(crate) fn closure_mask(g: &Graph, within: u64, seed: u64) -> u64 {
    let mut s = seed;
    loop {
        let mut grown = false;
        for z in Bits(within & !s) {
            let seen = g.row(z) & s;
            if seen != 0 && seen != s {
                s |= 1 << z;
                grown = true;
            }
        }
        if !grown {
            return s;
        }
    }
}

/// Whether `s` is an interval of `G[within]`.
pub(crate) fn is_interval_mask(g: &Graph, within: u64, s: u64) -> bool {
    Bits(within & !s).all(|z| {
        let seen = g.row(z) & s;
        seen == 0 || seen == s
    })
}

/// Indecomposability of `G[within]`; at most two vertices counts as
/// indecomposable.
pub(crate) fn is_indecomposable_mask(g: &Graph, within: u64) -> bool {
    let count = within.count_ones();
    if count <= 2 {
        return true;
    }
    let mut outer = within;
    while outer != 0 {
        let x = outer.trailing_zeros();
        outer &= outer - 1;
        for y in Bits(outer) {
            if closure_mask(g, within, 1 << x | 1 << y) != within {
                return false;
            }
        }
    }
    true
}

/// Smallest (size, then lexicographic) proper pair closure of `G[within]`.
pub(crate) fn least_pair_closure(g: &Graph, within: u64) -> Option<u64> {
    if within.count_ones() <= 2 {
        return None;
    }
    let mut best: Option<VertexSet> = None;
    let universe = g.n();
    let mut outer = within;
    while outer != 0 {
        let x = outer.trailing_zeros();
        outer &= outer - 1;
        for y in Bits(outer) {
            let c = closure_mask(g, within, 1 << x | 1 << y);
            if c != within {
                let c = VertexSet::from_mask(universe, c);
                if best.is_none_or(|b| c < b) {
                    best = Some(c);
                }
            }
        }
    }
    best.map(|b| b.mask())
}

pub fn is_interval(g: &Graph, x: &VertexSet) -> bool {
    is_interval_mask(g, g.all_mask(), x.mask() & g.all_mask())
}

/// Inclusion-smallest interval of `g` containing `seed`.
pub fn interval_closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    VertexSet::from_mask(g.n(), closure_mask(g, g.all_mask(), seed.mask() & g.all_mask()))
}

pub fn is_indecomposable(g: &Graph) -> bool {
    is_indecomposable_mask(g, g.all_mask())
}

/// A nontrivial interval when `g` is decomposable: the least proper pair
/// closure, which is itself a minimal nontrivial interval.
pub fn decomposition_witness(g: &Graph) -> Option<VertexSet> {
    least_pair_closure(g, g.all_mask()).map(|m| VertexSet::from_mask(g.n(), m))
}

/// Every interval `I` with `1 < |I| < n`, sorted by size then members.
pub fn nontrivial_intervals(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > ENUMERATION_CAP {
        return Err(Error::SizeCapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let all = full_mask(n);
    let mut out: Vec<VertexSet> = (1..all)
        .filter(|s: &u64| s.count_ones() >= 2 && *s != all)
        .filter(|&s| is_interval_mask(g, all, s))
        .map(|s| VertexSet::from_mask(n, s))
        .collect();
    out.sort();
    Ok(out)
}

/// Vertices whose deletion leaves a decomposable graph.
pub fn critical_vertices(g: &Graph) -> Result<VertexSet> {
    if !is_indecomposable(g) || g.n() < 2 {
        return Err(Error::NotIndecomposable);
    }
    let all = g.all_mask();
    let crit = Bits(all)
        .filter(|&v| !is_indecomposable_mask(g, all & !(1 << v)))
        .fold(0u64, |m, v| m | 1 << v);
    Ok(VertexSet::from_mask(g.n(), crit))
}

/// Whether every vertex of the indecomposable graph `g` is critical.
pub fn is_critical_graph(g: &Graph) -> Result<bool> {
    Ok(critical_vertices(g)?.len() == g.n())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityMode {
    /// Pinned walk onto `P_m` / `Q_m` or their complements.
    Fast,
    /// Every proper subset of size at least 3 containing the pair.
    BruteForce,
}

/// Whether `g` is minimal for `{a, b}`.
pub fn is_pair_minimal(g: &Graph, a: VertexId, b: VertexId) -> Result<bool> {
    is_pair_minimal_with(g, a, b, MinimalityMode::Fast)
}

pub fn is_pair_minimal_with(
    g: &Graph,
    a: VertexId,
    b: VertexId,
    mode: MinimalityMode,
) -> Result<bool> {
    let n = g.n();
    if n < 4 {
        return Err(Error::SizeTooSmall { n, min: 4 });
    }
    for v in [a, b] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if a == b {
        return Err(Error::DegeneratePair);
    }
    if !is_indecomposable(g) {
        return Err(Error::NotIndecomposable);
    }
    Ok(match mode {
        MinimalityMode::Fast => pinned_pq_isomorphism(g, a, b).is_some(),
        MinimalityMode::BruteForce => brute_force_minimal(g, a, b),
    })
}

fn brute_force_minimal(g: &Graph, a: VertexId, b: VertexId) -> bool {
    let pair = 1u64 << a | 1u64 << b;
    let rest: Vec<VertexId> = Bits(g.all_mask() & !pair).collect();
    // every proper subset of the remaining vertices, added to the pair
    for code in 0u64..(1u64 << rest.len()) - 1 {
        let mut x = pair;
        for (i, &v) in rest.iter().enumerate() {
            if code >> i & 1 == 1 {
                x |= 1 << v;
            }
        }
        if x.count_ones() >= 3 && is_indecomposable_mask(g, x) {
            return false;
        }
    }
    true
}
