//! Brute-force reference implementations. Nothing here calls the closure
//! machinery in `modular`; everything is subset enumeration over the bare
//! definitions.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ORACLE_CAP: usize = 16;

/// Pair index order used by [`graph_code`]: `(0,1), (0,2), …, (n-2,n-1)`.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Bit `i` set iff the `i`-th pair in lexicographic order is an edge.
/// Only meaningful for `n <= 11`.
pub fn graph_code(g: &Graph) -> u64 {
    pairs(g.n())
        .enumerate()
        .filter(|(_, (u, v))| g.has_edge(*u, *v))
        .fold(0, |c, (i, _)| c | 1 << i)
}

pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n);
    for (i, (u, v)) in pairs(n).enumerate() {
        if code >> i & 1 == 1 {
            g.set_edge(u, v, true);
        }
    }
    g
}

fn cap(g: &Graph) -> Result<()> {
    if g.n() > ORACLE_CAP {
        return Err(Error::SizeCapExceeded {
            n: g.n(),
            cap: ORACLE_CAP,
        });
    }
    Ok(())
}

/// No subset `I` with `1 < |I| < n` is an interval: for each candidate,
/// every outside vertex must see all of `I` or none of it.
pub fn oracle_indecomposable(g: &Graph) -> Result<bool> {
    cap(g)?;
    let n = g.n();
    let rows: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| g.has_edge(u, v)).fold(0u32, |r, v| r | 1 << v))
        .collect();
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    for s in 1u32..all {
        let size = s.count_ones();
        if size < 2 {
            continue;
        }
        let interval = (0..n).filter(|&z| s >> z & 1 == 0).all(|z| {
            let hits = (rows[z] & s).count_ones();
            hits == 0 || hits == size
        });
        if interval {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum vertex cover size by increasing-size subset search.
pub fn oracle_min_cover_size(ig: &Graph) -> Result<usize> {
    cap(ig)?;
    let n = ig.n();
    let edges: Vec<(usize, usize)> = pairs(n).filter(|&(u, v)| ig.has_edge(u, v)).collect();
    (0..=n)
        .find(|&k| {
            (0u32..(1u32 << n))
                .filter(|c| c.count_ones() as usize == k)
                .any(|c| edges.iter().all(|&(u, v)| c >> u & 1 == 1 || c >> v & 1 == 1))
        })
        .ok_or_else(|| Error::Anomaly("no vertex cover".into()))
}

/// `I(G)` edges by the definition, each deletion judged by
/// [`oracle_indecomposable`].
pub fn oracle_indecomposability_edges(g: &Graph) -> Result<Vec<(usize, usize)>> {
    cap(g)?;
    let n = g.n();
    let mut out = Vec::new();
    for (x, y) in pairs(n) {
        let keep: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
        let h = Graph::from_fn(keep.len(), |i, j| g.has_edge(keep[i], keep[j]));
        if oracle_indecomposable(&h)? {
            out.push((x, y));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_path;

    #[test]
    fn codes_round_trip() {
        for code in 0u64..1 << 10 {
            assert_eq!(graph_code(&graph_from_code(5, code)), code);
        }
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_indecomposable(&make_path(4)).unwrap());
        for code in 0..8 {
            assert!(!oracle_indecomposable(&graph_from_code(3, code)).unwrap());
        }
        assert!(matches!(
            oracle_indecomposable(&Graph::empty(17)),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn min_cover_examples() {
        assert_eq!(oracle_min_cover_size(&Graph::empty(5)).unwrap(), 0);
        assert_eq!(oracle_min_cover_size(&Graph::complete(3)).unwrap(), 2);
        let edges = oracle_indecomposability_edges(&make_path(9)).unwrap();
        assert_eq!(edges, vec![(0, 1), (0, 8), (7, 8)]);
        let ig = Graph::from_edges(9, edges).unwrap();
        assert_eq!(oracle_min_cover_size(&ig).unwrap(), 2);
    }
}
