//! Isomorphism search for small graphs.
//!
//! [`are_isomorphic`] is a plain degree-refined backtracking search.
//! [`pinned_pq_isomorphism`] never searches: a path or a `Q` graph with both
//! ends pinned leaves exactly one candidate map, which is walked out and then
//! checked edge by edge.

use serde::Serialize;

use crate::families::{make_path, make_q};
use crate::graph::{Bits, Graph, VertexId};

/// Vertex invariant used to prune candidates: degree followed by the sorted
/// degrees of the neighbours.
fn vertex_keys(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            let mut key: Vec<usize> = g.neighbors(v).iter().map(|w| g.degree(w)).collect();
            key.sort_unstable();
            key.insert(0, g.degree(v));
            key
        })
        .collect()
}

/// Finds an isomorphism from `g` onto `h`, returned as `map[v_g] = v_h`.
///
/// Vertices of `g` are assigned in ascending order and candidates are tried
/// in ascending order, so the result is the lexicographically least
/// isomorphism.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<VertexId>> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let kg = vertex_keys(g);
    let kh = vertex_keys(h);
    let mut sorted_g = kg.clone();
    let mut sorted_h = kh.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return None;
    }
    // candidates[u] = mask of h-vertices with the same key as u
    let candidates: Vec<u64> = kg
        .iter()
        .map(|key| {
            kh.iter()
                .enumerate()
                .filter(|(_, k)| *k == key)
                .fold(0u64, |m, (t, _)| m | 1 << t)
        })
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    if extend(g, h, &candidates, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    h: &Graph,
    candidates: &[u64],
    u: usize,
    map: &mut [VertexId],
    used: &mut u64,
) -> bool {
    if u == g.n() {
        return true;
    }
    // image of N_g(u) among already-mapped vertices
    let mut want = 0u64;
    for w in Bits(g.row(u) & ((1u64 << u) - 1)) {
        want |= 1 << map[w];
    }
    for t in Bits(candidates[u] & !*used) {
        if h.row(t) & *used != want {
            continue;
        }
        map[u] = t;
        *used |= 1 << t;
        if extend(g, h, candidates, u + 1, map, used) {
            return true;
        }
        *used &= !(1 << t);
    }
    map[u] = usize::MAX;
    false
}

/// The two minimal families for a pinned pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PqFamily {
    P,
    Q,
}

impl PqFamily {
    pub fn build(self, n: usize) -> Graph {
        match self {
            PqFamily::P => make_path(n),
            PqFamily::Q => make_q(n).expect("Q needs at least 4 vertices"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedIso {
    pub family: PqFamily,
    /// The map goes from the complement of the input graph.
    pub complemented: bool,
    /// `map[v]` is the 0-based label of `v` in the target `P_m` / `Q_m`.
    pub map: Vec<VertexId>,
}

/// Isomorphism from `g` or its complement onto `P_m` or `Q_m` sending
/// `{a, b}` to `{1, m}` (0-based `{0, m-1}`).
///
/// Tried in the order P, Q, complement-P, complement-Q; within each, `a ↦ 1`
/// before `b ↦ 1`. Returns `None` for `m < 4` or `a == b`.
pub fn pinned_pq_isomorphism(g: &Graph, a: VertexId, b: VertexId) -> Option<PinnedIso> {
    let m = g.n();
    if m < 4 || a == b || a >= m || b >= m {
        return None;
    }
    let comp = g.complement();
    for (k, complemented) in [(g, false), (&comp, true)] {
        for family in [PqFamily::P, PqFamily::Q] {
            for (s, t) in [(a, b), (b, a)] {
                let walked = match family {
                    PqFamily::P => walk_path(k, s, t),
                    PqFamily::Q => walk_q(k, s, t),
                };
                if let Some(map) = walked {
                    if k.is_isomorphism(&family.build(m), &map) {
                        return Some(PinnedIso {
                            family,
                            complemented,
                            map,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Follows the unique Hamiltonian path from `start` inside `allowed`.
fn walk_within(g: &Graph, allowed: u64, start: VertexId) -> Option<Vec<VertexId>> {
    let len = allowed.count_ones() as usize;
    let mut order = Vec::with_capacity(len);
    let mut visited = 1u64 << start;
    let mut cur = start;
    order.push(cur);
    while order.len() < len {
        let next = g.row(cur) & allowed & !visited;
        if next.count_ones() != 1 {
            return None;
        }
        cur = next.trailing_zeros() as usize;
        visited |= 1 << cur;
        order.push(cur);
    }
    Some(order)
}

/// Candidate map onto `P_m` with `s ↦ 0` and `t ↦ m-1`.
fn walk_path(g: &Graph, s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
    if g.degree(s) != 1 || g.degree(t) != 1 {
        return None;
    }
    let order = walk_within(g, g.all_mask(), s)?;
    if *order.last()? != t {
        return None;
    }
    let mut map = vec![0; g.n()];
    for (label, &v) in order.iter().enumerate() {
        map[v] = label;
    }
    Some(map)
}

/// Candidate map onto `Q_m` with `s ↦ 0` and `t ↦ m-1`: `t` hangs off the
/// hub (label `m-2`), and the rest is a path starting at `s`.
fn walk_q(g: &Graph, s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
    let m = g.n();
    if g.degree(t) != 1 {
        return None;
    }
    let hub = g.row(t).trailing_zeros() as usize;
    if hub == s {
        return None;
    }
    let rest = g.all_mask() & !(1 << t) & !(1 << hub);
    let order = walk_within(g, rest, s)?;
    let mut map = vec![0; m];
    for (label, &v) in order.iter().enumerate() {
        map[v] = label;
    }
    map[hub] = m - 2;
    map[t] = m - 1;
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_halfgraph;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..left.len() {
                let x = left.remove(i);
                cur.push(x);
                rec(cur, left, out);
                cur.pop();
                left.insert(i, x);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }

    /// Brute-force pinned oracle: any bijection from g or its complement
    /// onto P_m / Q_m mapping {a,b} onto {0, m-1}.
    fn brute_pinned(g: &Graph, a: usize, b: usize) -> bool {
        let m = g.n();
        let targets = [make_path(m), make_q(m).unwrap()];
        let comp = g.complement();
        all_perms(m).iter().any(|p| {
            let ends = (p[a] == 0 && p[b] == m - 1) || (p[b] == 0 && p[a] == m - 1);
            ends && targets
                .iter()
                .any(|t| g.is_isomorphism(t, p) || comp.is_isomorphism(t, p))
        })
    }

    #[test]
    fn reversed_path_maps_by_reflection() {
        let p = make_path(5);
        let reflection = [4, 3, 2, 1, 0];
        let rev = p.relabel(&reflection);
        assert!(p.is_isomorphism(&rev, &reflection));
        // the relabelled path is the same graph, so the least map is the identity
        assert_eq!(are_isomorphic(&p, &rev), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn p4_is_self_complementary() {
        let p = make_path(4);
        let c = p.complement();
        let brute = all_perms(4).into_iter().filter(|m| p.is_isomorphism(&c, m)).count();
        assert!(brute > 0);
        let map = are_isomorphic(&p, &c).unwrap();
        assert!(p.is_isomorphism(&c, &map));
    }

    #[test]
    fn p6_and_q6_differ() {
        let p = make_path(6);
        let q = make_q(6).unwrap();
        assert!(all_perms(6).iter().all(|m| !p.is_isomorphism(&q, m)));
        assert_eq!(are_isomorphic(&p, &q), None);
    }

    #[test]
    fn reflexive_returns_identity() {
        let g = make_halfgraph(8).unwrap();
        assert_eq!(are_isomorphic(&g, &g), Some((0..8).collect()));
    }

    #[test]
    fn pinned_examples() {
        let p9 = make_path(9);
        let hit = pinned_pq_isomorphism(&p9, 0, 8).unwrap();
        assert_eq!(hit.family, PqFamily::P);
        assert!(!hit.complemented);
        assert_eq!(hit.map, (0..9).collect::<Vec<_>>());

        let q8 = make_q(8).unwrap();
        let hit = pinned_pq_isomorphism(&q8, 0, 7).unwrap();
        assert_eq!(hit.family, PqFamily::Q);
        assert!(!hit.complemented);
        assert_eq!(hit.map, (0..8).collect::<Vec<_>>());

        assert_eq!(pinned_pq_isomorphism(&p9, 1, 8), None);
    }

    #[test]
    fn pinned_finds_complemented_q() {
        let q = make_q(7).unwrap().complement();
        let hit = pinned_pq_isomorphism(&q, 6, 0).unwrap();
        assert_eq!((hit.family, hit.complemented), (PqFamily::Q, true));
    }

    #[test]
    fn pinned_agrees_with_brute_force_on_all_graphs_up_to_6() {
        use crate::verify::oracle::{graph_code, graph_from_code};
        use std::collections::HashMap;
        for n in 4..=6usize {
            // every relabelling of P_n, Q_n and their complements, keyed by
            // edge code, with the pinned endpoint pairs it realises
            let mut table: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
            let targets = [make_path(n), make_q(n).unwrap()];
            for t in targets.iter().flat_map(|t| [t.clone(), t.complement()]) {
                for p in all_perms(n) {
                    let img = t.relabel(&p);
                    let (a, b) = (p[0].min(p[n - 1]), p[0].max(p[n - 1]));
                    table.entry(graph_code(&img)).or_default().push((a, b));
                }
            }
            for code in 0u64..1 << (n * (n - 1) / 2) {
                let g = graph_from_code(n, code);
                let pinned = table.get(&code);
                for a in 0..n {
                    for b in a + 1..n {
                        let expect = pinned.is_some_and(|v| v.contains(&(a, b)));
                        assert_eq!(
                            pinned_pq_isomorphism(&g, a, b).is_some(),
                            expect,
                            "{g:?} pair {a},{b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pinned_agrees_with_brute_force_on_p7_q7_perturbations() {
        for base in [make_path(7), make_q(7).unwrap()] {
            for u in 0..7 {
                for v in u + 1..7 {
                    let mut g = base.clone();
                    g.set_edge(u, v, !g.has_edge(u, v));
                    for a in 0..7 {
                        for b in a + 1..7 {
                            assert_eq!(
                                pinned_pq_isomorphism(&g, a, b).is_some(),
                                brute_pinned(&g, a, b)
                            );
                        }
                    }
                }
            }
        }
    }
}
