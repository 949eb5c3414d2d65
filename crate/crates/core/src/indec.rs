//! The indecomposability graph `I(G)` and vertex-cover queries on it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, VertexSet};
use crate::modular::{is_indecomposable, is_indecomposable_mask};

/// Edge `{x, y}` iff `G - {x, y}` is indecomposable.
pub fn indecomposability_graph(g: &Graph) -> Result<Graph> {
    if !is_indecomposable(g) {
        return Err(Error::NotIndecomposable);
    }
    let n = g.n();
    let all = g.all_mask();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let hits: Vec<bool> = pairs
        .par_iter()
        .map(|&(x, y)| is_indecomposable_mask(g, all & !(1 << x) & !(1 << y)))
        .collect();
    Graph::from_edges(
        n,
        pairs.into_iter().zip(hits).filter(|(_, h)| *h).map(|(p, _)| p),
    )
}

/// Whether every edge of `ig` meets `s`.
pub fn is_set_covered(ig: &Graph, s: &VertexSet) -> bool {
    let s = s.mask();
    Bits(ig.all_mask() & !s).all(|v| ig.row(v) & !s == 0)
}

/// Whether `G - {x, y}` is decomposable for every pair avoiding `{a, b}`;
/// that is, whether `I(G)` is `{a, b}`-covered, without building `I(G)`.
pub fn is_pair_covering(g: &Graph, a: usize, b: usize) -> bool {
    let rest = g.all_mask() & !(1 << a) & !(1 << b);
    let all = g.all_mask();
    let mut outer = rest;
    while outer != 0 {
        let x = outer.trailing_zeros();
        outer &= outer - 1;
        for y in Bits(outer) {
            if is_indecomposable_mask(g, all & !(1 << x) & !(1 << y)) {
                return false;
            }
        }
    }
    true
}

/// Every vertex cover of `ig` with exactly `k` vertices, lexicographic.
pub fn covers_of_size_at_most(ig: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    if k > 3 {
        return Err(Error::KTooLarge(k));
    }
    let n = ig.n();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    combos(n, k, 0, &mut pick, &mut |c| {
        let s = VertexSet::from_vertices(n, c.iter().copied()).expect("in range");
        if is_set_covered(ig, &s) {
            out.push(s);
        }
    });
    Ok(out)
}

fn combos(n: usize, k: usize, from: usize, pick: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for v in from..n {
        pick.push(v);
        combos(n, k, v + 1, pick, f);
        pick.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_path, make_q};

    fn labels(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().map(|(u, v)| (u + 1, v + 1)).collect()
    }

    fn set(n: usize, l: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, l.iter().map(|v| v - 1)).unwrap()
    }

    #[test]
    fn remark_examples() {
        let ip6 = indecomposability_graph(&make_path(6)).unwrap();
        assert_eq!(labels(&ip6), vec![(1, 2), (1, 6), (5, 6)]);
        let iq6 = indecomposability_graph(&make_q(6).unwrap()).unwrap();
        assert_eq!(labels(&iq6), vec![(1, 2), (2, 6), (5, 6)]);
        let iq9 = indecomposability_graph(&make_q(9).unwrap()).unwrap();
        assert_eq!(labels(&iq9), vec![(1, 2), (1, 9), (2, 9), (8, 9)]);
        assert_eq!(
            indecomposability_graph(&Graph::complete(5)),
            Err(Error::NotIndecomposable)
        );
    }

    #[test]
    fn cover_examples() {
        let ip9 = indecomposability_graph(&make_path(9)).unwrap();
        assert!(is_set_covered(&ip9, &set(9, &[1, 8])));
        assert!(!is_set_covered(&ip9, &set(9, &[4, 5])));
        assert!(is_set_covered(&Graph::empty(4), &VertexSet::empty(4)));
        assert!(is_pair_covering(&make_path(9), 0, 7));
        assert!(!is_pair_covering(&make_path(9), 3, 4));
    }

    #[test]
    fn cover_listing() {
        let ip14 = indecomposability_graph(&make_path(14)).unwrap();
        let covers = covers_of_size_at_most(&ip14, 2).unwrap();
        assert!(covers.contains(&set(14, &[1, 13])));
        assert!(covers.contains(&set(14, &[2, 14])));
        // pairs that meet {1,2},{1,14},{13,14}: {1,13},{1,14},{2,14}
        assert_eq!(covers.len(), 3);
        assert!(covers_of_size_at_most(&Graph::complete(3), 1).unwrap().is_empty());
        assert_eq!(covers_of_size_at_most(&ip14, 4), Err(Error::KTooLarge(4)));
        let iq14 = indecomposability_graph(&make_q(14).unwrap()).unwrap();
        assert!(!covers_of_size_at_most(&iq14, 2).unwrap().is_empty());
    }
}
