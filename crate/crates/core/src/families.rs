//! The named graph families, the six classes of graphs whose
//! indecomposability graph is covered by a fixed pair, and the decision
//! procedure for 2-coveredness.
//!
//! Class predicates work in a canonical frame: the base `P_{n-k}` or
//! `Q_{n-k}` sits literally on labels `1..=n-k` and the extra vertices carry
//! labels `n-k+1..=n`. Inside this module comments use the same 1-based
//! labels; code converts with [`l`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extension::{compute_partition, outside_graph_unchecked, Block, XPartition};
use crate::graph::{Bits, Graph, VertexId, VertexSet};
use crate::indec::{indecomposability_graph, is_set_covered};
use crate::iso::{are_isomorphic, pinned_pq_isomorphism, PqFamily};
use crate::modular::is_indecomposable;

/// 1-based label to 0-based id.
#[inline]
fn l(label: usize) -> VertexId {
    label - 1
}

pub fn make_path(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1)
}

pub fn make_q(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::SizeTooSmall { n, min: 4 });
    }
    let hub = l(n - 1);
    Ok(Graph::from_fn(n, |u, v| {
        if v == hub {
            u != l(n - 2)
        } else if u == hub {
            true
        } else {
            v == u + 1 && v < l(n - 1)
        }
    }))
}

/// The half graph on `0..two_n`: edges `{2k, 2l+1}` for `k <= l`.
pub fn make_halfgraph(two_n: usize) -> Result<Graph> {
    if two_n % 2 == 1 {
        return Err(Error::SizeOdd(two_n));
    }
    if two_n < 4 {
        return Err(Error::SizeTooSmall { n: two_n, min: 4 });
    }
    Ok(Graph::from_fn(two_n, |u, v| {
        let (even, odd) = if u % 2 == 0 { (u, v) } else { (v, u) };
        even % 2 == 0 && odd % 2 == 1 && even / 2 <= odd / 2
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    P,
    Q,
    PMinus1,
    QMinus1,
    PMinus3,
    QMinus3,
    PMinus5,
    QMinus5,
}

impl ClassId {
    pub const ALL: [ClassId; 8] = [
        ClassId::P,
        ClassId::Q,
        ClassId::PMinus1,
        ClassId::QMinus1,
        ClassId::PMinus3,
        ClassId::QMinus3,
        ClassId::PMinus5,
        ClassId::QMinus5,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ClassId::P => "P",
            ClassId::Q => "Q",
            ClassId::PMinus1 => "P-1",
            ClassId::QMinus1 => "Q-1",
            ClassId::PMinus3 => "P-3",
            ClassId::QMinus3 => "Q-3",
            ClassId::PMinus5 => "P-5",
            ClassId::QMinus5 => "Q-5",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            ClassId::P | ClassId::Q | ClassId::PMinus1 => 9,
            ClassId::QMinus1 => 11,
            ClassId::PMinus3 => 12,
            ClassId::QMinus3 => 10,
            ClassId::PMinus5 => 14,
            ClassId::QMinus5 => 12,
        }
    }

    /// Number of vertices outside the base.
    pub fn removed(self) -> usize {
        match self {
            ClassId::P | ClassId::Q => 0,
            ClassId::PMinus1 | ClassId::QMinus1 => 1,
            ClassId::PMinus3 | ClassId::QMinus3 => 3,
            ClassId::PMinus5 | ClassId::QMinus5 => 5,
        }
    }

    pub fn base_family(self) -> PqFamily {
        match self {
            ClassId::P | ClassId::PMinus1 | ClassId::PMinus3 | ClassId::PMinus5 => PqFamily::P,
            _ => PqFamily::Q,
        }
    }

    /// The class with the given base family and number of extra vertices.
    pub fn from_parts(family: PqFamily, removed: usize) -> Option<ClassId> {
        ClassId::ALL
            .into_iter()
            .find(|c| c.base_family() == family && c.removed() == removed)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassId::ALL
            .into_iter()
            .find(|c| c.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Outcome of a class predicate: the first failed condition when false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub reason: String,
}

impl Verdict {
    fn yes() -> Self {
        Verdict {
            holds: true,
            reason: "all conditions hold".into(),
        }
    }

    fn no(reason: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            reason: reason.into(),
        }
    }
}

fn check_frame(g: &Graph, class: ClassId) -> Result<usize> {
    let n = g.n();
    let min = class.min_n();
    if n < min {
        return Err(Error::SizeBelowClassMinimum { n, min });
    }
    let m = n - class.removed();
    let base = class.base_family().build(m);
    if g.induced_by_mask((1u64 << m) - 1) != base {
        return Err(Error::WrongFrame(format!(
            "labels 1..{m} do not induce {:?}_{m}",
            class.base_family()
        )));
    }
    Ok(m)
}

/// Evaluates the membership conditions of `class` on `g`, which must be in
/// the class's canonical frame.
pub fn class_predicate(g: &Graph, class: ClassId) -> Result<Verdict> {
    let m = check_frame(g, class)?;
    let n = g.n();
    Ok(match class {
        ClassId::P | ClassId::Q => {
            if *g == class.base_family().build(n) {
                Verdict::yes()
            } else {
                Verdict::no(format!("graph is not {}_{n}", class.tag()))
            }
        }
        ClassId::PMinus1 | ClassId::QMinus1 => {
            let nb = g.neighbors(l(n)).to_labels();
            let allowed = minus_one_neighbourhoods(class, n);
            if allowed.contains(&nb) {
                Verdict::yes()
            } else {
                Verdict::no(format!("neighbourhood {nb:?} of vertex {n} is not listed"))
            }
        }
        ClassId::PMinus3 | ClassId::QMinus3 => {
            let f = Frame::new(g, m)?;
            if class == ClassId::PMinus3 {
                f.class_g()
            } else {
                f.class_g_prime()
            }
        }
        ClassId::PMinus5 | ClassId::QMinus5 => Frame::new(g, m)?.minus_five(class),
    })
}

/// The admissible `N(n)` for the `-1` classes, as sorted 1-based labels.
fn minus_one_neighbourhoods(class: ClassId, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if class == ClassId::PMinus1 {
        out.push(vec![1]);
        out.extend((3..=n - 3).map(|k| vec![k]));
        out.push(vec![n - 1]);
        out.extend((2..=n - 3).map(|k| vec![k, k + 1]));
    } else {
        out.push((1..=n - 3).chain([n - 1]).collect());
        out.push(vec![n - 3]);
        out.extend((1..=n - 3).filter(|&k| k != 2).map(|k| vec![k, n - 2]));
        out.extend((2..=n - 4).map(|k| vec![k, k + 1, n - 2]));
    }
    out
}

/// A graph in canonical frame with its partition and outside graph.
struct Frame<'a> {
    g: &'a Graph,
    n: usize,
    m: usize,
    part: XPartition,
    /// Edges of `G_X` as sorted 1-based label pairs.
    ex: BTreeSet<(usize, usize)>,
    gx: Graph,
}

type EdgeSet = BTreeSet<(usize, usize)>;

fn edge_set(pairs: &[(usize, usize)]) -> EdgeSet {
    pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

impl<'a> Frame<'a> {
    fn new(g: &'a Graph, m: usize) -> Result<Self> {
        let x = VertexSet::from_mask(g.n(), (1u64 << m) - 1);
        let part = compute_partition(g, &x)?;
        let (gx, ids) = outside_graph_unchecked(g, x.mask());
        let ex = gx
            .edges()
            .map(|(i, j)| (ids[i] + 1, ids[j] + 1))
            .collect();
        Ok(Frame {
            g,
            n: g.n(),
            m,
            part,
            ex,
            gx,
        })
    }

    fn adj(&self, a: usize, b: usize) -> bool {
        self.g.has_edge(l(a), l(b))
    }

    /// `a` is adjacent to exactly one of `b`, `c`.
    fn split(&self, a: usize, b: usize, c: usize) -> bool {
        self.adj(a, b) != self.adj(a, c)
    }

    fn block(&self, v: usize) -> Option<Block> {
        self.part.block_of(l(v))
    }

    /// `X(u)` as sorted labels.
    fn attached(&self, u: usize) -> Vec<usize> {
        self.part.attached(l(u)).to_labels()
    }

    fn in_attached(&self, v: usize, u: usize) -> bool {
        self.block(v).map(Block::coarse) == Some(Block::AttachedMinus(l(u)))
    }

    fn e_is(&self, pairs: &[(usize, usize)]) -> bool {
        self.ex == edge_set(pairs)
    }

    fn e_has(&self, a: usize, b: usize) -> bool {
        self.ex.contains(&(a.min(b), a.max(b)))
    }

    fn exactly_one(items: &[bool]) -> Verdict {
        let held: Vec<usize> = (1..=items.len()).filter(|&i| items[i - 1]).collect();
        match held.len() {
            1 => Verdict::yes(),
            0 => Verdict::no("no assertion of the class holds"),
            _ => Verdict::no(format!("assertions {held:?} hold simultaneously")),
        }
    }

    /// The class built on `P_{n-3}`.
    ///
    /// In the second assertion the relation between `1` and `n` is read as
    /// non-adjacency.
    fn class_g(&self) -> Verdict {
        let n = self.n;
        if self.block(n - 2) != Some(Block::HullMinus) {
            return Verdict::no(format!("{} is not in X^-", n - 2));
        }
        let e = self.ex.len();
        let first = self.block(n - 1) == Some(Block::HullMinus)
            && self.attached(1) == [n]
            && self.e_is(&[(n, n - 1)])
            && self.adj(n - 1, n - 2);
        let second = self.attached(2) == [n - 1]
            && self.attached(1) == [n]
            && e >= 2
            && (!self.e_has(n, n - 1) || !self.adj(1, n));
        let third = [1, 2].into_iter().any(|u| {
            self.attached(u) == [n - 1, n]
                && ((e == 2 && self.split(u, n - 1, n))
                    || (self.e_is(&[(n, n - 2)]) && self.split(n, n - 1, u)))
        });
        Self::exactly_one(&[first, second, third])
    }

    /// The class built on `Q_{n-3}`. Every assertion is transcribed
    /// literally, including the sixth.
    fn class_g_prime(&self) -> Verdict {
        let n = self.n;
        let (a, b, c) = (n - 2, n - 1, n);
        let q = n - 3;
        if self.block(a) != Some(Block::AttachedMinus(l(q))) {
            return Verdict::no(format!("{a} is not in X^-({q})"));
        }
        let e = self.ex.len();
        let blk = |v| self.block(v);
        let minus = Some(Block::HullMinus);
        let plus = Some(Block::HullPlus);
        let hull = |v| matches!(blk(v), Some(Block::HullMinus | Block::HullPlus));
        let two = [(b, a), (a, c)];

        let i1 = blk(b) == minus
            && blk(c) == plus
            && e >= 1
            && (self.split(b, c, a) || self.split(c, b, a));
        let i2 = ((blk(b) == minus && blk(c) == minus) || (blk(b) == plus && blk(c) == plus))
            && self.e_is(&[(b, a)])
            && !self.split(b, c, a);
        let i3 = blk(b) == minus
            && self.in_attached(c, n - 4)
            && e >= 2
            && (self.e_has(c, a) || e == 2);
        let i4 = blk(b) == plus && self.in_attached(c, n - 4) && self.e_is(&two);
        let i5 = hull(b)
            && blk(c) == Some(Block::AttachedMinus(l(q)))
            && self.e_is(&[(b, a)])
            && self.adj(a, c);
        let i6 = self.in_attached(b, n - 4)
            && blk(c) == Some(Block::AttachedPlus(l(n - 4)))
            && ((!self.adj(b, c) && self.e_is(&[(c, a)]))
                || (!self.adj(b, n - 4) && self.e_is(&two)));
        let i7 = self.in_attached(b, 1)
            && self.in_attached(c, 2)
            && (self.e_is(&two)
                || (self.e_has(b, c) && self.e_has(a, c) && !self.split(b, 1, c)));
        let i8 = [1, 2].into_iter().any(|u| {
            self.in_attached(b, u)
                && blk(c) == Some(Block::AttachedMinus(l(q)))
                && self.e_is(&[(b, a)])
                && self.adj(a, c)
        });
        let i9 = [1, 2].into_iter().any(|u| {
            blk(b) == Some(Block::AttachedPlus(l(u)))
                && self.in_attached(c, u)
                && ((self.e_is(&[(b, a)]) && !self.adj(b, c))
                    || (self.e_is(&two) && !self.adj(c, u)))
        });
        Self::exactly_one(&[i1, i2, i3, i4, i5, i6, i7, i8, i9])
    }

    fn minus_five(&self, class: ClassId) -> Verdict {
        for y in self.part.q_minus_blocks() {
            if !self.g.is_independent(&y) {
                return Verdict::no(format!("block {:?} of q_X^- is not empty", y.to_labels()));
            }
        }
        for y in self.part.q_plus_blocks() {
            if !self.g.is_clique(&y) {
                return Verdict::no(format!("block {:?} of q_X^+ is not complete", y.to_labels()));
            }
        }
        if !is_path_graph(&self.gx) {
            return Verdict::no("G_X is not isomorphic to P_5");
        }
        let sides = path_sides(&self.gx, self.m);
        let options: Vec<(Block, Block)> = if class == ClassId::PMinus5 {
            vec![
                (Block::HullMinus, Block::AttachedMinus(0)),
                (Block::HullMinus, Block::AttachedPlus(0)),
            ]
        } else {
            let u = l(self.m);
            [
                Block::HullMinus,
                Block::HullPlus,
                Block::AttachedMinus(0),
                Block::AttachedPlus(0),
            ]
            .into_iter()
            .map(|z| (Block::AttachedMinus(u), z))
            .collect()
        };
        let hit = options.iter().any(|&(s, t)| {
            let pair = [self.part.members(s).mask(), self.part.members(t).mask()];
            sides == pair || sides == [pair[1], pair[0]]
        });
        if hit {
            Verdict::yes()
        } else {
            Verdict::no("bipartition of G_X is not one of the listed block pairs")
        }
    }
}

fn is_path_graph(h: &Graph) -> bool {
    let n = h.n();
    h.is_connected()
        && h.edge_count() + 1 == n
        && (0..n).all(|v| h.degree(v) <= 2)
}

/// Colour classes of a connected bipartite outside graph, as masks over the
/// original ids `m..`.
fn path_sides(h: &Graph, m: usize) -> [u64; 2] {
    let mut colour = vec![usize::MAX; h.n()];
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in h.neighbors(v).iter() {
            if colour[w] == usize::MAX {
                colour[w] = 1 - colour[v];
                stack.push(w);
            }
        }
    }
    let mut sides = [0u64; 2];
    for (v, &c) in colour.iter().enumerate() {
        sides[c] |= 1 << (v + m);
    }
    sides
}

/// How many graphs to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Exhaustive,
    /// `count` uniform draws (with replacement) from the exhaustive list.
    Sampled { count: usize, seed: u64 },
}

/// Every member of `class` on `n` vertices in canonical frame, in parameter
/// order.
fn exhaustive(class: ClassId, n: usize) -> Result<Vec<Graph>> {
    let min = class.min_n();
    if n < min {
        return Err(Error::SizeBelowClassMinimum { n, min });
    }
    if n > 64 {
        return Err(Error::SizeCapExceeded { n, cap: 64 });
    }
    let m = n - class.removed();
    let base = class.base_family().build(m);
    let mut out = Vec::new();
    match class {
        ClassId::P | ClassId::Q => out.push(base),
        ClassId::PMinus1 | ClassId::QMinus1 => {
            for nb in minus_one_neighbourhoods(class, n) {
                let mask = nb.iter().fold(0u64, |a, &v| a | 1 << l(v));
                out.push(extend(&base, &[mask], |_, _| false));
            }
        }
        ClassId::PMinus3 | ClassId::QMinus3 => {
            let traces = block_traces(&base);
            let fixed = if class == ClassId::PMinus3 {
                0
            } else {
                trace_of(&base, Block::AttachedMinus(l(m)))
            };
            for &tb in &traces {
                for &tc in &traces {
                    for inner in 0u8..8 {
                        let g = extend(&base, &[fixed, tb, tc], |i, j| {
                            inner >> (i + j - 1) & 1 == 1
                        });
                        if class_predicate(&g, class)?.holds {
                            out.push(g);
                        }
                    }
                }
            }
        }
        ClassId::PMinus5 | ClassId::QMinus5 => {
            let pairs: Vec<(Block, Block)> = if class == ClassId::PMinus5 {
                vec![
                    (Block::HullMinus, Block::AttachedMinus(0)),
                    (Block::HullMinus, Block::AttachedPlus(0)),
                ]
            } else {
                [
                    Block::HullMinus,
                    Block::HullPlus,
                    Block::AttachedMinus(0),
                    Block::AttachedPlus(0),
                ]
                .into_iter()
                .map(|z| (Block::AttachedMinus(l(m)), z))
                .collect()
            };
            for (s, t) in pairs {
                for side in 1u32..31 {
                    let on_s = |i: usize| side >> i & 1 == 1;
                    let cross: Vec<(usize, usize)> = (0..5)
                        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                        .filter(|&(i, j)| on_s(i) != on_s(j))
                        .collect();
                    let traces: Vec<u64> = (0..5)
                        .map(|i| trace_of(&base, if on_s(i) { s } else { t }))
                        .collect();
                    for code in 0u64..1 << cross.len() {
                        let g = extend(&base, &traces, |i, j| {
                            if on_s(i) == on_s(j) {
                                let b = if on_s(i) { s } else { t };
                                b.is_plus()
                            } else {
                                let k = cross.iter().position(|&p| p == (i, j)).unwrap();
                                code >> k & 1 == 1
                            }
                        });
                        if class_predicate(&g, class)?.holds {
                            out.push(g);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Neighbourhood in the base shared by a block, as a mask.
pub fn trace_of(base: &Graph, block: Block) -> u64 {
    let x = base.vertices();
    block.trace(base, &x).expect("not Ext").mask()
}

/// Traces of every non-`Ext` block over `base`, in block order.
pub fn block_traces(base: &Graph) -> Vec<u64> {
    let mut out = vec![trace_of(base, Block::HullMinus), trace_of(base, Block::HullPlus)];
    for u in 0..base.n() {
        out.push(trace_of(base, Block::AttachedMinus(u)));
        out.push(trace_of(base, Block::AttachedPlus(u)));
    }
    out
}

/// Appends vertices with the given neighbourhoods in the base; `inner(i, j)`
/// (for `i < j`) decides edges between the new vertices.
pub fn extend(base: &Graph, traces: &[u64], inner: impl Fn(usize, usize) -> bool) -> Graph {
    let m = base.n();
    Graph::from_fn(m + traces.len(), |u, v| {
        if v < m {
            base.has_edge(u, v)
        } else if u < m {
            traces[v - m] >> u & 1 == 1
        } else {
            inner(u - m, v - m)
        }
    })
}

/// Members of `class` on `n` vertices, in canonical frame.
pub fn enumerate_class(class: ClassId, n: usize, budget: Budget) -> Result<Vec<Graph>> {
    let all = class_index(class, n)?;
    Ok(match budget {
        Budget::Exhaustive => all.members.clone(),
        Budget::Sampled { count, seed } => (0..count)
            .map(|i| all.members[sample_index(seed, i as u64, all.members.len())].clone())
            .collect(),
    })
}

/// Draw number `index` of a seeded uniform stream over `0..len`.
pub fn sample_index(seed: u64, index: u64, len: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.gen_range(0..len)
}

/// Exhaustive members bucketed by degree sequence for isomorphism lookups.
struct ClassIndex {
    members: Vec<Graph>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

fn degree_key(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

fn class_index(class: ClassId, n: usize) -> Result<Arc<ClassIndex>> {
    type Cache = Mutex<HashMap<(ClassId, usize), Arc<ClassIndex>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache").get(&(class, n)) {
        return Ok(hit.clone());
    }
    let members = exhaustive(class, n)?;
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, g) in members.iter().enumerate() {
        buckets.entry(degree_key(g)).or_default().push(i);
    }
    let index = Arc::new(ClassIndex { members, buckets });
    cache
        .lock()
        .expect("cache")
        .insert((class, n), index.clone());
    Ok(index)
}

/// A relabelling of `g` onto a member of `class` in canonical frame:
/// `map[v]` is the label of `v` in the member.
pub fn find_class_member(g: &Graph, class: ClassId) -> Result<Option<Vec<VertexId>>> {
    let index = class_index(class, g.n())?;
    let Some(bucket) = index.buckets.get(&degree_key(g)) else {
        return Ok(None);
    };
    Ok(bucket
        .iter()
        .find_map(|&i| are_isomorphic(g, &index.members[i])))
}

/// Brings a graph whose first `m` labels already carry the base into a
/// predicate-satisfying frame by permuting the extra vertices and, for a
/// path base, reversing the base. Returns the relabelling on success.
fn frame_relabelling(g: &Graph, class: ClassId) -> Result<Option<Vec<VertexId>>> {
    let n = g.n();
    let k = class.removed();
    let m = n - k;
    let reversals: &[bool] = if class.base_family() == PqFamily::P {
        &[false, true]
    } else {
        &[false]
    };
    for &rev in reversals {
        for perm in permutations(k) {
            let map: Vec<VertexId> = (0..n)
                .map(|v| {
                    if v >= m {
                        m + perm[v - m]
                    } else if rev {
                        m - 1 - v
                    } else {
                        v
                    }
                })
                .collect();
            if class_predicate(&g.relabel(&map), class)?.holds {
                return Ok(Some(map));
            }
        }
    }
    Ok(None)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=i).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, i);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// Relabelling of a graph in a class's base frame onto a predicate
/// member: first the frame symmetries, then a full isomorphism search.
pub fn match_class(g: &Graph, class: ClassId) -> Result<Option<Vec<VertexId>>> {
    if class.removed() == 0 {
        return Ok(class_predicate(g, class)?.holds.then(|| (0..g.n()).collect()));
    }
    if let Some(map) = frame_relabelling(g, class)? {
        return Ok(Some(map));
    }
    find_class_member(g, class)
}

/// Verdict of the 2-coveredness decision with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub two_covered: bool,
    pub cover_pair: Option<(VertexId, VertexId)>,
    pub complemented: bool,
    pub class: Option<ClassId>,
    /// The `X` with `G[X]` (or its complement) minimal for the cover pair.
    pub embedded_base: Option<VertexSet>,
    /// `relabel[v]` is the 0-based label of `v` in the class member.
    pub relabel: Option<Vec<VertexId>>,
}

impl ClassificationResult {
    fn negative() -> Self {
        ClassificationResult {
            two_covered: false,
            cover_pair: None,
            complemented: false,
            class: None,
            embedded_base: None,
            relabel: None,
        }
    }
}

/// Smallest size handled by [`classify_2covered`].
pub const CLASSIFY_MIN_N: usize = 14;

/// Decides whether `I(g)` is 2-covered and, if so, exhibits `g` or its
/// complement as a relabelled class member.
pub fn classify_2covered(g: &Graph) -> Result<ClassificationResult> {
    let n = g.n();
    if n < CLASSIFY_MIN_N {
        return Err(Error::SizeBelowTheoremBound {
            n,
            min: CLASSIFY_MIN_N,
        });
    }
    let ig = indecomposability_graph(g)?;
    if ig.edge_count() == 0 {
        return Err(Error::Anomaly("indecomposability graph has no edge".into()));
    }
    let pairs: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| is_set_covered(&ig, &VertexSet::from_mask(n, 1 << a | 1 << b)))
        .collect();
    if pairs.is_empty() {
        return Ok(ClassificationResult::negative());
    }
    for &(a, b) in &pairs {
        if let Some(x) = find_pair_minimal_base(g, a, b) {
            let result = try_base(g, a, b, x.mask())?
                .ok_or_else(|| Error::Anomaly("pinned base lost on retry".into()))?;
            verify_witness(g, &ig, &result)?;
            return Ok(result);
        }
    }
    Err(Error::Anomaly(format!(
        "I(G) is covered by {:?} but no class witness was found",
        pairs[0]
    )))
}

/// The first `X` containing `a` and `b`, of size `n`, `n-1`, `n-3` or `n-5`
/// in that order and lexicographic within a size, such that `G[X]` or its
/// complement is `{a, b}`-minimal.
pub fn find_pair_minimal_base(g: &Graph, a: VertexId, b: VertexId) -> Option<VertexSet> {
    let n = g.n();
    [0usize, 1, 3, 5]
        .into_iter()
        .filter(|&k| n >= k + 4)
        .flat_map(|k| bases_containing(n, a, b, n - k))
        .find(|&x| {
            let ids: Vec<VertexId> = Bits(x).collect();
            let local = |v: VertexId| ids.iter().position(|&w| w == v).expect("in base");
            pinned_pq_isomorphism(&g.induced_by_mask(x), local(a), local(b)).is_some()
        })
        .map(|x| VertexSet::from_mask(n, x))
}

/// Subsets of size `size` containing `a` and `b`, in lexicographic order.
fn bases_containing(n: usize, a: VertexId, b: VertexId, size: usize) -> Vec<u64> {
    let pair = 1u64 << a | 1u64 << b;
    let rest: Vec<VertexId> = Bits(((1u64 << n) - 1) & !pair).collect();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(rest: &[usize], need: usize, from: usize, pick: &mut Vec<usize>, out: &mut Vec<u64>, pair: u64) {
        if pick.len() == need {
            out.push(pick.iter().fold(pair, |m, &v| m | 1 << v));
            return;
        }
        for i in from..rest.len() {
            pick.push(rest[i]);
            rec(rest, need, i + 1, pick, out, pair);
            pick.pop();
        }
    }
    if size >= 2 {
        rec(&rest, size - 2, 0, &mut pick, &mut out, pair);
    }
    out.sort_by_key(|&m| VertexSet::from_mask(n, m));
    out
}

fn try_base(g: &Graph, a: VertexId, b: VertexId, x: u64) -> Result<Option<ClassificationResult>> {
    let n = g.n();
    let ids: Vec<VertexId> = Bits(x).collect();
    let local = |v: VertexId| ids.iter().position(|&w| w == v).expect("in base");
    let sub = g.induced_by_mask(x);
    let Some(hit) = pinned_pq_isomorphism(&sub, local(a), local(b)) else {
        return Ok(None);
    };
    let m = ids.len();
    let k = n - m;
    let kg = if hit.complemented { g.complement() } else { g.clone() };
    // g' : base via the pinned map, extra vertices in ascending id order
    let mut to_frame = vec![usize::MAX; n];
    for (i, &v) in ids.iter().enumerate() {
        to_frame[v] = hit.map[i];
    }
    for (j, v) in Bits(kg.all_mask() & !x).enumerate() {
        to_frame[v] = m + j;
    }
    let framed = kg.relabel(&to_frame);
    let (class, inner) = if k == 0 {
        match hit.family {
            PqFamily::P => (ClassId::PMinus1, (0..n).collect::<Vec<_>>()),
            PqFamily::Q => {
                // Q_n - 1 is Q_{n-1}: vertex 1 becomes the extra vertex n
                let shift: Vec<VertexId> = (0..n).map(|v| if v == 0 { n - 1 } else { v - 1 }).collect();
                (ClassId::QMinus1, shift)
            }
        }
    } else {
        let class = ClassId::from_parts(hit.family, k).expect("k in {1,3,5}");
        match match_class(&framed, class)? {
            Some(map) => (class, map),
            None => {
                return Err(Error::Anomaly(format!(
                    "a graph of the {class} frame with covered I(G) matches no class member"
                )))
            }
        }
    };
    let relabel: Vec<VertexId> = to_frame.iter().map(|&t| inner[t]).collect();
    Ok(Some(ClassificationResult {
        two_covered: true,
        cover_pair: Some((a, b)),
        complemented: hit.complemented,
        class: Some(class),
        embedded_base: Some(VertexSet::from_mask(n, x)),
        relabel: Some(relabel),
    }))
}

fn verify_witness(g: &Graph, ig: &Graph, r: &ClassificationResult) -> Result<()> {
    let fail = |what: &str| Err(Error::Anomaly(format!("classification witness rejected: {what}")));
    let (Some((a, b)), Some(class), Some(map)) = (r.cover_pair, r.class, r.relabel.as_ref()) else {
        return fail("missing fields");
    };
    if !is_set_covered(ig, &VertexSet::from_mask(g.n(), 1 << a | 1 << b)) {
        return fail("cover pair does not cover I(G)");
    }
    let k = if r.complemented { g.complement() } else { g.clone() };
    if !class_predicate(&k.relabel(map), class)?.holds {
        return fail("relabelled graph fails the class predicate");
    }
    if !is_indecomposable(g) {
        return fail("input not indecomposable");
    }
    Ok(())
}
