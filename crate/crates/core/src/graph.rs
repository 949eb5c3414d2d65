//! Finite simple undirected graphs stored as one bit row per vertex.
//!
//! Vertex ids are 0-based everywhere inside the library. Anything that
//! leaves the process (text formats, JSON reports, the C ABI) shifts them to
//! `1..=n`.

use std::fmt;

use crate::error::{Error, Result};

/// 0-based vertex id.
pub type VertexId = usize;

/// Largest supported vertex count; one `u64` row per vertex.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Ascending iterator over the set bits of a mask.
#[derive(Debug, Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// A subset of `[0, universe)`. Iteration is ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u64,
    universe: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { bits: 0, universe }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            bits: full_mask(universe),
            universe,
        }
    }

    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let mut bits = 0u64;
        for v in vertices {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: universe,
                });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet { bits, universe })
    }

    /// Builds a set from a raw mask; bits at or above `universe` are dropped.
    pub fn from_mask(universe: usize, bits: u64) -> Self {
        VertexSet {
            bits: bits & full_mask(universe),
            universe,
        }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        v < 64 && self.bits >> v & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) {
        assert!(v < self.universe, "vertex {v} outside universe");
        self.bits |= 1 << v;
    }

    pub fn remove(&mut self, v: VertexId) {
        if v < 64 {
            self.bits &= !(1 << v);
        }
    }

    pub fn with(mut self, v: VertexId) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: VertexId) -> Self {
        self.remove(v);
        self
    }

    pub fn iter(&self) -> Bits {
        Bits(self.bits)
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        VertexSet {
            bits: !self.bits & full_mask(self.universe),
            universe: self.universe,
        }
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        VertexSet {
            bits: self.bits | other.bits,
            universe: self.universe.max(other.universe),
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> Self {
        VertexSet {
            bits: self.bits & other.bits,
            universe: self.universe.max(other.universe),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> Self {
        VertexSet {
            bits: self.bits & !other.bits,
            universe: self.universe,
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits & other.bits == 0
    }

    /// Members shifted to 1-based labels.
    pub fn to_labels(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then lexicographically by ascending members.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

/// Finite simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics above [`MAX_VERTICES`].
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph size {n} exceeds {MAX_VERTICES}");
        Graph {
            n,
            rows: vec![0; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::SizeCapExceeded {
                n,
                cap: MAX_VERTICES,
            });
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on `u < v`.
    pub fn from_fn<F>(n: usize, mut adjacent: F) -> Self
    where
        F: FnMut(VertexId, VertexId) -> bool,
    {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    pub(crate) fn set_edge(&mut self, u: VertexId, v: VertexId, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if present {
            self.rows[u] |= 1 << v;
            self.rows[v] |= 1 << u;
        } else {
            self.rows[u] &= !(1 << v);
            self.rows[v] &= !(1 << u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub(crate) fn all_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub(crate) fn row(&self, v: VertexId) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.rows[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        VertexSet::from_mask(self.n, self.rows[v])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n).flat_map(move |u| {
            Bits(self.rows[u] & !full_mask(u + 1)).map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_mask();
        Graph {
            n: self.n,
            rows: (0..self.n)
                .map(|v| !self.rows[v] & all & !(1 << v))
                .collect(),
        }
    }

    /// `G[X]` relabelled by ascending original id, with the old→new map.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<(Graph, Vec<Option<VertexId>>)> {
        if x.mask() & !self.all_mask() != 0 {
            let vertex = Bits(x.mask() & !self.all_mask()).next().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        let mut old_to_new = vec![None; self.n];
        for (new, old) in x.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        Ok((self.induced_by_mask(x.mask()), old_to_new))
    }

    pub(crate) fn induced_by_mask(&self, mask: u64) -> Graph {
        let keep: Vec<VertexId> = Bits(mask).collect();
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            let mut row = 0u64;
            for (j, &v) in keep.iter().enumerate() {
                if self.rows[u] >> v & 1 == 1 {
                    row |= 1 << j;
                }
            }
            g.rows[i] = row;
        }
        g
    }

    /// `G - S`.
    pub fn delete(&self, s: &VertexSet) -> Graph {
        self.induced_by_mask(self.all_mask() & !s.mask())
    }

    /// Image of `self` under `map` (old id → new id, a permutation of `0..n`).
    pub fn relabel(&self, map: &[VertexId]) -> Graph {
        assert_eq!(map.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(map[u], map[v], true);
        }
        g
    }

    /// Whether `map` (self-vertex → other-vertex) is an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Graph, map: &[VertexId]) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        let mut seen = 0u64;
        for &t in map {
            if t >= other.n || seen >> t & 1 == 1 {
                return false;
            }
            seen |= 1 << t;
        }
        (0..self.n).all(|u| {
            (u + 1..self.n).all(|v| self.has_edge(u, v) == other.has_edge(map[u], map[v]))
        })
    }

    /// Connected components as vertex sets, ordered by least member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.all_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in Bits(frontier) {
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            left &= !comp;
            out.push(VertexSet::from_mask(self.n, comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether `G[S]` has no edge.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.rows[v] & s.mask() == 0)
    }

    /// Whether `G[S]` is complete.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter()
            .all(|v| self.rows[v] & s.mask() == s.mask() & !(1 << v))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        write!(f, "])")
    }
}
