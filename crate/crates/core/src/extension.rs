//! How the vertices outside an indecomposable induced subgraph `G[X]` attach
//! to it: the `p_X` / `q_X` partition, the outside graph `G_X`, and the two
//! characterisations of graphs that are critical according to `G[X]`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, VertexId, VertexSet};
use crate::modular::{is_indecomposable, is_indecomposable_mask};

/// The `q_X` block of one outside vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Block {
    Ext,
    HullMinus,
    HullPlus,
    AttachedMinus(VertexId),
    AttachedPlus(VertexId),
}

impl Block {
    /// The `p_X` block: `⟨X⟩` and `X(u)` forget the sign.
    pub fn coarse(self) -> Block {
        match self {
            Block::HullPlus => Block::HullMinus,
            Block::AttachedPlus(u) => Block::AttachedMinus(u),
            b => b,
        }
    }

    /// Whether the block belongs to `q_X^-`.
    pub fn is_minus(self) -> bool {
        matches!(self, Block::HullMinus | Block::AttachedMinus(_))
    }

    pub fn is_plus(self) -> bool {
        matches!(self, Block::HullPlus | Block::AttachedPlus(_))
    }

    /// Neighbourhood inside `X` shared by every vertex of the block.
    /// `None` for `Ext`.
    pub fn trace(self, g: &Graph, x: &VertexSet) -> Option<VertexSet> {
        let nx = |u: VertexId| g.neighbors(u).intersection(x);
        match self {
            Block::Ext => None,
            Block::HullMinus => Some(VertexSet::empty(g.n())),
            Block::HullPlus => Some(*x),
            Block::AttachedMinus(u) => Some(nx(u)),
            Block::AttachedPlus(u) => Some(nx(u).with(u)),
        }
    }
}

/// The partition of `V \ X` by attachment type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPartition {
    base: VertexSet,
    blocks: Vec<Option<Block>>,
    ext: VertexSet,
    hull_minus: VertexSet,
    hull_plus: VertexSet,
    attached_minus: BTreeMap<VertexId, VertexSet>,
    attached_plus: BTreeMap<VertexId, VertexSet>,
}

impl XPartition {
    pub fn base(&self) -> &VertexSet {
        &self.base
    }

    /// Block of an outside vertex; `None` for vertices of `X`.
    pub fn block_of(&self, v: VertexId) -> Option<Block> {
        self.blocks.get(v).copied().flatten()
    }

    pub fn ext(&self) -> &VertexSet {
        &self.ext
    }

    pub fn hull_minus(&self) -> &VertexSet {
        &self.hull_minus
    }

    pub fn hull_plus(&self) -> &VertexSet {
        &self.hull_plus
    }

    /// `⟨X⟩`.
    pub fn hull(&self) -> VertexSet {
        self.hull_minus.union(&self.hull_plus)
    }

    pub fn attached_minus(&self, u: VertexId) -> VertexSet {
        self.attached_minus
            .get(&u)
            .copied()
            .unwrap_or_else(|| VertexSet::empty(self.base.universe()))
    }

    pub fn attached_plus(&self, u: VertexId) -> VertexSet {
        self.attached_plus
            .get(&u)
            .copied()
            .unwrap_or_else(|| VertexSet::empty(self.base.universe()))
    }

    /// `X(u)`.
    pub fn attached(&self, u: VertexId) -> VertexSet {
        self.attached_minus(u).union(&self.attached_plus(u))
    }

    /// Members of one block.
    pub fn members(&self, block: Block) -> VertexSet {
        match block {
            Block::Ext => self.ext,
            Block::HullMinus => self.hull_minus,
            Block::HullPlus => self.hull_plus,
            Block::AttachedMinus(u) => self.attached_minus(u),
            Block::AttachedPlus(u) => self.attached_plus(u),
        }
    }

    fn nonempty(&self, coarse: bool) -> Vec<VertexSet> {
        let mut seen: BTreeMap<Block, VertexSet> = BTreeMap::new();
        for (v, b) in self.blocks.iter().enumerate() {
            if let Some(b) = b {
                let key = if coarse { b.coarse() } else { *b };
                seen.entry(key)
                    .or_insert_with(|| VertexSet::empty(self.base.universe()))
                    .insert(v);
            }
        }
        let mut out: Vec<VertexSet> = seen.into_values().collect();
        out.sort();
        out
    }

    /// Nonempty blocks of `p_X`.
    pub fn p_blocks(&self) -> Vec<VertexSet> {
        self.nonempty(true)
    }

    /// Nonempty blocks of `q_X`.
    pub fn q_blocks(&self) -> Vec<VertexSet> {
        self.nonempty(false)
    }

    /// Nonempty blocks of `q_X^-`.
    pub fn q_minus_blocks(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = std::iter::once(self.hull_minus)
            .chain(self.attached_minus.values().copied())
            .filter(|s| !s.is_empty())
            .collect();
        out.sort();
        out
    }

    /// Nonempty blocks of `q_X^+`.
    pub fn q_plus_blocks(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = std::iter::once(self.hull_plus)
            .chain(self.attached_plus.values().copied())
            .filter(|s| !s.is_empty())
            .collect();
        out.sort();
        out
    }
}

fn check_base(g: &Graph, x: &VertexSet) -> Result<()> {
    if let Some(v) = Bits(x.mask() & !g.all_mask()).next() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if x.len() < 4 {
        return Err(Error::BaseTooSmall(x.len()));
    }
    if !is_indecomposable_mask(g, x.mask()) {
        return Err(Error::BaseNotIndecomposable);
    }
    Ok(())
}

/// Vertices `u ∈ X` with `{u, v}` an interval of `G[X ∪ {v}]`.
pub(crate) fn twins_in_base(g: &Graph, x: u64, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
    let nv = g.row(v) & x;
    Bits(x).filter(move |&u| {
        let rest = x & !(1 << u);
        g.row(u) & rest == nv & rest
    })
}

/// Computes `p_X` / `q_X`.
pub fn compute_partition(g: &Graph, x: &VertexSet) -> Result<XPartition> {
    check_base(g, x)?;
    let n = g.n();
    let xm = x.mask();
    let empty = VertexSet::empty(n);
    let mut part = XPartition {
        base: *x,
        blocks: vec![None; n],
        ext: empty,
        hull_minus: empty,
        hull_plus: empty,
        attached_minus: BTreeMap::new(),
        attached_plus: BTreeMap::new(),
    };
    for v in Bits(g.all_mask() & !xm) {
        let seen = g.row(v) & xm;
        let block = if is_indecomposable_mask(g, xm | 1 << v) {
            part.ext.insert(v);
            Block::Ext
        } else if seen == 0 {
            part.hull_minus.insert(v);
            Block::HullMinus
        } else if seen == xm {
            part.hull_plus.insert(v);
            Block::HullPlus
        } else {
            let mut twins = twins_in_base(g, xm, v);
            let u = twins.next().ok_or_else(|| {
                Error::Anomaly(format!("vertex {v} fits no block of the partition"))
            })?;
            if twins.next().is_some() {
                return Err(Error::Anomaly(format!("vertex {v} fits two blocks")));
            }
            let table = if g.has_edge(u, v) {
                &mut part.attached_plus
            } else {
                &mut part.attached_minus
            };
            table.entry(u).or_insert(empty).insert(v);
            if g.has_edge(u, v) {
                Block::AttachedPlus(u)
            } else {
                Block::AttachedMinus(u)
            }
        };
        part.blocks[v] = Some(block);
    }
    Ok(part)
}

/// Adjacency rows of `G_X` indexed by original vertex id.
pub(crate) fn outside_rows(g: &Graph, x: u64) -> Vec<u64> {
    let out = g.all_mask() & !x;
    let mut rows = vec![0u64; g.n()];
    for a in Bits(out) {
        for b in Bits(out & !((2u64 << a) - 1)) {
            if is_indecomposable_mask(g, x | 1 << a | 1 << b) {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            }
        }
    }
    rows
}

/// `G_X` on `V \ X`, relabelled by ascending original id. The second value
/// lists the original id of each new vertex.
pub fn outside_graph(g: &Graph, x: &VertexSet) -> Result<(Graph, Vec<VertexId>)> {
    check_base(g, x)?;
    if g.n() - x.len() < 2 {
        return Err(Error::OutsideTooSmall { required: 2 });
    }
    Ok(outside_graph_unchecked(g, x.mask()))
}

pub(crate) fn outside_graph_unchecked(g: &Graph, x: u64) -> (Graph, Vec<VertexId>) {
    let rows = outside_rows(g, x);
    let ids: Vec<VertexId> = Bits(g.all_mask() & !x).collect();
    let gx = Graph::from_fn(ids.len(), |i, j| rows[ids[i]] >> ids[j] & 1 == 1);
    (gx, ids)
}

fn check_proper(g: &Graph, x: &VertexSet) -> Result<()> {
    check_base(g, x)?;
    if x.len() == g.n() {
        return Err(Error::BaseNotProper);
    }
    Ok(())
}

/// Whether every vertex outside `X` is critical in the indecomposable `g`.
pub fn is_critical_according_to(g: &Graph, x: &VertexSet) -> Result<bool> {
    check_proper(g, x)?;
    if !is_indecomposable(g) {
        return Err(Error::NotIndecomposable);
    }
    Ok(outside_all_critical(g, g.all_mask(), x.mask()))
}

/// Every vertex of `within \ x` is critical in `G[within]`.
fn outside_all_critical(g: &Graph, within: u64, x: u64) -> bool {
    Bits(within & !x).all(|v| !is_indecomposable_mask(g, within & !(1 << v)))
}

/// Result of the connected-case test: four independent booleans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KConditions {
    pub k1: bool,
    pub k2: bool,
    pub k3: bool,
    pub k4: bool,
}

impl KConditions {
    pub fn all(&self) -> bool {
        self.k1 && self.k2 && self.k3 && self.k4
    }
}

/// Whether the connected-case form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KForm {
    Evaluated(KConditions),
    /// `G_X` is disconnected or fewer than three vertices lie outside `X`.
    ShapeUnsupported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub k_form: KForm,
}

impl ConditionReport {
    pub fn h_all(&self) -> bool {
        self.h1 && self.h2 && self.h3
    }
}

/// Evaluates each condition of the two characterisations separately.
pub fn check_partial_criticality_conditions(g: &Graph, x: &VertexSet) -> Result<ConditionReport> {
    check_proper(g, x)?;
    let part = compute_partition(g, x)?;
    let xm = x.mask();
    let (gx, ids) = outside_graph_unchecked(g, xm);

    let h1 = part.p_blocks() == part.q_blocks();
    let h2 = part.q_minus_blocks().iter().all(|m| g.is_independent(m))
        && part.q_plus_blocks().iter().all(|m| g.is_clique(m));
    let components = gx.components();
    let h3 = components.iter().all(|c| {
        let within = c.iter().fold(xm, |m, i| m | 1 << ids[i]);
        is_indecomposable_mask(g, within) && outside_all_critical(g, within, xm)
    });

    let k_form = if ids.len() >= 3 && components.len() == 1 {
        let p = part.p_blocks();
        let bipartite = p.len() == 2
            && p.iter().all(|block| {
                let local = block.iter().fold(0u64, |m, v| {
                    m | 1 << ids.iter().position(|&w| w == v).expect("outside vertex")
                });
                gx.is_independent(&VertexSet::from_mask(gx.n(), local))
            });
        let critical = is_indecomposable(&gx)
            && Bits(gx.all_mask()).all(|v| !is_indecomposable_mask(&gx, gx.all_mask() & !(1 << v)));
        KForm::Evaluated(KConditions {
            k1: part.ext().is_empty(),
            k2: h1,
            k3: h2,
            k4: critical && bipartite,
        })
    } else {
        KForm::ShapeUnsupported
    };
    Ok(ConditionReport { h1, h2, h3, k_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_path, make_q};

    fn prefix(n: usize, k: usize) -> VertexSet {
        VertexSet::from_mask(n, (1u64 << k) - 1)
    }

    fn path_plus(neighbours: &[usize]) -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).collect();
        edges.extend(neighbours.iter().map(|&u| (u, 5)));
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn partition_examples() {
        let p6 = make_path(6);
        let part = compute_partition(&p6, &prefix(6, 5)).unwrap();
        assert_eq!(part.block_of(5), Some(Block::Ext));
        assert_eq!(part.block_of(0), None);

        let part = compute_partition(&path_plus(&[]), &prefix(6, 5)).unwrap();
        assert_eq!(part.block_of(5), Some(Block::HullMinus));

        let part = compute_partition(&path_plus(&[1]), &prefix(6, 5)).unwrap();
        assert_eq!(part.block_of(5), Some(Block::AttachedMinus(0)));
        assert_eq!(part.attached(0).to_vec(), vec![5]);
        assert_eq!(part.p_blocks(), part.q_blocks());
    }

    #[test]
    fn partition_errors() {
        let p6 = make_path(6);
        assert_eq!(
            compute_partition(&p6, &prefix(6, 3)),
            Err(Error::BaseTooSmall(3))
        );
        let k6 = Graph::complete(6);
        assert_eq!(
            compute_partition(&k6, &prefix(6, 4)),
            Err(Error::BaseNotIndecomposable)
        );
        assert_eq!(
            outside_graph(&p6, &prefix(6, 5)).map(|_| ()),
            Err(Error::OutsideTooSmall { required: 2 })
        );
        assert_eq!(
            is_critical_according_to(&p6, &p6.vertices()),
            Err(Error::BaseNotProper)
        );
    }

    #[test]
    fn outside_graph_examples() {
        let p7 = make_path(7);
        let (gx, ids) = outside_graph(&p7, &prefix(7, 5)).unwrap();
        assert_eq!(ids, vec![5, 6]);
        assert!(gx.has_edge(0, 1));

        // two vertices of X^- never form an edge of G_X
        let g = Graph::from_edges(7, (0..4).map(|i| (i, i + 1))).unwrap();
        let (gx, _) = outside_graph(&g, &prefix(7, 5)).unwrap();
        assert_eq!(gx.edge_count(), 0);
    }

    #[test]
    fn path_seven_is_not_critical_according_to_prefix() {
        let p7 = make_path(7);
        let x = prefix(7, 5);
        assert!(!is_critical_according_to(&p7, &x).unwrap());
        let report = check_partial_criticality_conditions(&p7, &x).unwrap();
        assert!(!report.h3);
        assert_eq!(report.k_form, KForm::ShapeUnsupported);
    }

    #[test]
    fn h2_fails_on_adjacent_minus_pair() {
        // two adjacent vertices both in X^-(1) over P_5
        let mut edges: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).collect();
        edges.extend([(1, 5), (1, 6), (5, 6)]);
        let g = Graph::from_edges(7, edges).unwrap();
        let x = prefix(7, 5);
        let part = compute_partition(&g, &x).unwrap();
        assert_eq!(part.attached_minus(0).to_vec(), vec![5, 6]);
        let report = check_partial_criticality_conditions(&g, &x).unwrap();
        assert!(!report.h2);
    }

    #[test]
    fn halfgraph_extension_satisfies_every_condition() {
        // Q_6 critical according to its P_4? use G_8 with X = first four vertices
        let g = crate::families::make_halfgraph(8).unwrap();
        let x = VertexSet::from_vertices(8, [0, 1, 2, 3]).unwrap();
        if is_indecomposable_mask(&g, x.mask()) {
            let report = check_partial_criticality_conditions(&g, &x).unwrap();
            assert!(report.h_all());
        }
        let q6 = make_q(6).unwrap();
        let x = prefix(6, 4);
        let report = check_partial_criticality_conditions(&q6, &x).unwrap();
        assert_eq!(
            report.h_all(),
            is_critical_according_to(&q6, &x).unwrap()
        );
    }
}
