use rand::Rng;

use super::oracle::{
    graph_from_code, oracle_indecomposability_edges, oracle_indecomposable, oracle_min_cover_size,
};
use super::sample::{
    random_class_member, random_extension, random_graph, random_palette_extension, random_indecomposable, random_prime_subset,
    random_relabel, rng_for,
};
use super::{Mode, ModeKind, Outcome, Params, Run, Tally, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::extension::{
    check_partial_criticality_conditions, compute_partition, is_critical_according_to, outside_rows,
    Block, KForm,
};
use crate::families::{
    class_predicate, classify_2covered, enumerate_class, extend, find_pair_minimal_base,
    make_halfgraph, make_path, make_q, Budget, ClassId,
};
use crate::graph::{Bits, Graph, VertexSet};
use crate::indec::{indecomposability_graph, is_pair_covering, is_set_covered};
use crate::iso::{are_isomorphic, pinned_pq_isomorphism, PqFamily};
use crate::modular::{
    is_critical_graph, is_indecomposable, is_indecomposable_mask, is_interval_mask,
    is_pair_minimal_with, nontrivial_intervals, MinimalityMode,
};

/// One runnable statement and its `(mode, n)` envelope.
pub struct Statement {
    pub id: &'static str,
    /// The phrase of the statement the check targets.
    pub anchor: &'static str,
    pub n_min: usize,
    pub n_max: usize,
    /// `None` sweeps every size in range.
    pub default_n: Option<usize>,
    /// Largest size with an exhaustive sweep.
    pub exhaustive_max: Option<usize>,
    pub sampled: bool,
    pub default_count: u64,
    pub(crate) run: fn(&Run) -> Result<Tally>,
}

impl Statement {
    pub(crate) fn resolve(&self, p: &Params) -> Result<(Option<usize>, Mode)> {
        let envelope = |detail: String| Error::EnvelopeExceeded {
            statement: self.id.to_string(),
            detail,
        };
        let n = p.n.or(self.default_n);
        if let Some(n) = n {
            if n < self.n_min || n > self.n_max {
                return Err(envelope(format!(
                    "n = {n} outside {}..={}",
                    self.n_min, self.n_max
                )));
            }
        }
        let top = n.unwrap_or(self.n_max);
        let exhaustive_ok = self.exhaustive_max.is_some_and(|m| top <= m);
        let kind = match p.mode {
            Some(kind) => kind,
            None if exhaustive_ok => ModeKind::Exhaustive,
            None => ModeKind::Sampled,
        };
        let mode = match kind {
            ModeKind::Exhaustive if exhaustive_ok => Mode::Exhaustive,
            ModeKind::Exhaustive => {
                return Err(envelope(match self.exhaustive_max {
                    Some(m) => format!("exhaustive mode stops at n = {m}"),
                    None => "no exhaustive mode".into(),
                }))
            }
            ModeKind::Sampled if self.sampled => Mode::Sampled {
                seed: p.seed.unwrap_or(DEFAULT_SEED),
                count: p.count.unwrap_or(self.default_count),
            },
            ModeKind::Sampled => return Err(envelope("no sampled mode".into())),
        };
        Ok((n, mode))
    }
}

pub fn statement(id: &str) -> Option<&'static Statement> {
    STATEMENTS.iter().find(|s| s.id.eq_ignore_ascii_case(id))
}

const SAMPLES: u64 = 100_000;

macro_rules! st {
    ($id:expr, $anchor:expr, $lo:expr, $hi:expr, $dn:expr, $ex:expr, $sampled:expr, $count:expr, $run:expr) => {
        Statement {
            id: $id,
            anchor: $anchor,
            n_min: $lo,
            n_max: $hi,
            default_n: $dn,
            exhaustive_max: $ex,
            sampled: $sampled,
            default_count: $count,
            run: $run,
        }
    };
}

pub static STATEMENTS: &[Statement] = &[
    st!("THM-1.1", "there are y ≠ z ∈ V", 11, 16, Some(11), None, true, 1_000, thm_1_1),
    st!("THM-1.2", "there exist x ≠ y ∈ V", 6, 16, Some(6), Some(6), true, 10_000, thm_1_2),
    st!("THM-1.3", "then there exist x ≠ y", 10, 16, Some(10), None, true, 1_000, thm_1_3),
    st!("THM-1.4", "if and only if there is an isomorphism f", 4, 12, Some(6), Some(7), true, 10_000, thm_1_4),
    st!("PROP-1.5", "contains an {a,b}-minimal induced subgraph", 6, 16, Some(14), None, true, 500, prop_1_5),
    st!("REMARK-1", "edge lists of I(P_n) and I(Q_n)", 6, 16, None, Some(16), false, 0, remark_1),
    st!("REMARK-1.6", "Q_n − 1 ≃ Q_{n−1}", 5, 16, None, Some(16), false, 0, remark_1_6),
    st!("THM-1.7", "is 2-covered if and only if", 14, 16, Some(14), None, true, 1_000, thm_1_7),
    st!("THM-2.1", "realizes a partition of V∖X", 5, 12, Some(6), Some(6), true, 10_000, thm_2_1),
    st!("COR-2.2", "two distinct elements x and y", 6, 12, Some(6), Some(6), true, 10_000, cor_2_2),
    st!("REMARK-2.4", "G_X is multipartite by p_X", 6, 16, Some(12), None, true, 10_000, remark_2_4),
    st!("THM-3.1", "isomorphic to G_{2n} or its complement", 4, 12, Some(6), Some(6), true, 10_000, thm_3_1),
    st!("THM-3.2", "H1: The partitions p_X and q_X coincide", 5, 14, Some(6), Some(8), true, SAMPLES, thm_3_2),
    st!("THM-3.3", "K4: The graph G_X is critical and bipartite", 5, 14, Some(6), Some(8), true, SAMPLES, thm_3_3),
    st!("COR-3.4", "has no isolated vertices", 5, 14, Some(6), Some(8), true, SAMPLES, cor_3_4),
    st!("PROP-4.2", "N_G(n) = {k} or N_G(n) = {k,k+1}", 9, 40, Some(9), Some(25), true, SAMPLES, prop_4_2),
    st!("PROP-4.4", "N_G(n) = ℕ_{n−3} ∪ {n−1} or …", 11, 40, Some(11), Some(25), true, SAMPLES, prop_4_4),
    st!("PROP-4.7", "elements of cardinality ≥ 12 of the class 𝒢", 12, 20, Some(12), Some(20), true, SAMPLES, prop_4_7),
    st!("PROP-4.10", "elements of cardinality ≥ 10 of the class 𝒢′", 10, 20, Some(10), Some(20), true, SAMPLES, prop_4_10),
    st!("PROP-4.11", "bipartition {X⁻, X⁻(1)} or {X⁻, X⁺(1)}", 14, 20, Some(14), Some(20), true, SAMPLES, prop_4_11),
    st!("PROP-4.12", "bipartition {X⁻(n−5), Z}", 12, 20, Some(12), Some(20), true, SAMPLES, prop_4_12),
    st!("REMARK-4.9", "non trivial intervals of Q_{n−3}−{i}", 10, 20, None, Some(20), false, 0, remark_4_9),
];

fn labels(mask: u64) -> Vec<usize> {
    Bits(mask).map(|v| v + 1).collect()
}

fn pair_count(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Every labelled graph on `run.n` vertices.
fn all_graphs(run: &Run, f: impl Fn(&Graph) -> Outcome + Sync) -> Tally {
    let n = run.n;
    run.sweep(1u64 << pair_count(n), |code| f(&graph_from_code(n, code)))
}

fn thm_1_1(run: &Run) -> Result<Tally> {
    let (n, seed) = (run.n, run.seed());
    Ok(run.sweep(run.count(), |i| {
        let g = random_indecomposable(&mut rng_for(seed, i), n);
        Outcome::guard(&g, (|| {
            let ig = indecomposability_graph(&g)?;
            for x in 0..n {
                if ig.edges().all(|(u, v)| u == x || v == x) {
                    return Ok(Outcome::bad(
                        &g,
                        format!("an edge of I(G) avoiding {}", x + 1),
                        format!("every edge of I(G) meets {}", x + 1),
                    ));
                }
            }
            Ok(Outcome::ok(true))
        })())
    }))
}

fn has_indec_edge(g: &Graph) -> Outcome {
    if !is_indecomposable(g) {
        return Outcome::skip();
    }
    Outcome::guard(g, indecomposability_graph(g).map(|ig| {
        if ig.edge_count() > 0 {
            Outcome::ok(true)
        } else {
            Outcome::bad(g, "I(G) has an edge", "I(G) is edgeless")
        }
    }))
}

fn thm_1_2(run: &Run) -> Result<Tally> {
    Ok(match run.mode {
        Mode::Exhaustive => all_graphs(run, has_indec_edge),
        Mode::Sampled { seed, count } => run.sweep(count, |i| {
            has_indec_edge(&random_indecomposable(&mut rng_for(seed, i), run.n))
        }),
    })
}

fn thm_1_3(run: &Run) -> Result<Tally> {
    let (n, seed) = (run.n, run.seed());
    Ok(run.sweep(run.count(), |i| {
        let mut rng = rng_for(seed, i);
        let g = random_indecomposable(&mut rng, n);
        let Some(x) = random_prime_subset(&mut rng, &g, 4..=n - 6) else {
            return Outcome::skip();
        };
        let all = g.all_mask();
        let out: Vec<usize> = Bits(all & !x.mask()).collect();
        let found = out.iter().enumerate().any(|(k, &a)| {
            out[k + 1..]
                .iter()
                .any(|&b| is_indecomposable_mask(&g, all & !(1 << a) & !(1 << b)))
        });
        if found {
            Outcome::ok(true)
        } else {
            Outcome::bad(
                &g,
                format!("a pair outside X = {:?} with G - {{x,y}} prime", x.to_labels()),
                "no such pair",
            )
        }
    }))
}

/// Brute-force minimality against the pinned isomorphism, over all pairs.
fn minimality_agrees(g: &Graph) -> Outcome {
    let n = g.n();
    let prime = is_indecomposable(g);
    let mut any = false;
    for a in 0..n {
        for b in a + 1..n {
            let pinned = pinned_pq_isomorphism(g, a, b).is_some();
            let brute = prime
                && match is_pair_minimal_with(g, a, b, MinimalityMode::BruteForce) {
                    Ok(v) => v,
                    Err(e) => return Outcome::bad(g, "no error", e.to_string()),
                };
            if pinned != brute {
                return Outcome::bad(
                    g,
                    format!("pair {{{},{}}}: minimal = {brute}", a + 1, b + 1),
                    format!("pinned isomorphism found = {pinned}"),
                );
            }
            any |= brute;
        }
    }
    Outcome::ok(any)
}

fn thm_1_4(run: &Run) -> Result<Tally> {
    Ok(match run.mode {
        Mode::Exhaustive => all_graphs(run, minimality_agrees),
        Mode::Sampled { seed, count } => run.sweep(count, |i| {
            let mut rng = rng_for(seed, i);
            let g = if i % 4 == 0 {
                let family = if rng.gen_bool(0.5) { PqFamily::P } else { PqFamily::Q };
                let g = family.build(run.n);
                let g = if rng.gen_bool(0.5) { g.complement() } else { g };
                random_relabel(&mut rng, &g)
            } else {
                random_indecomposable(&mut rng, run.n)
            };
            minimality_agrees(&g)
        }),
    })
}

fn class_instance(rng: &mut impl Rng, n: usize) -> Graph {
    match random_class_member(rng, n) {
        Some((_, g)) => {
            let g = if rng.gen_bool(0.5) { g.complement() } else { g };
            random_relabel(rng, &g)
        }
        None => random_indecomposable(rng, n),
    }
}

fn prop_1_5(run: &Run) -> Result<Tally> {
    let (n, seed) = (run.n, run.seed());
    Ok(run.sweep(run.count(), |i| {
        let mut rng = rng_for(seed, i);
        let g = if i % 2 == 0 {
            class_instance(&mut rng, n)
        } else {
            random_indecomposable(&mut rng, n)
        };
        let mut covered = false;
        for a in 0..n {
            for b in a + 1..n {
                if !is_pair_covering(&g, a, b) {
                    continue;
                }
                covered = true;
                if find_pair_minimal_base(&g, a, b).is_none() {
                    return Outcome::bad(
                        &g,
                        format!("a {{{},{}}}-minimal induced subgraph of size n, n-1, n-3 or n-5", a + 1, b + 1),
                        "none found",
                    );
                }
            }
        }
        Outcome::ok(covered)
    }))
}

fn remark_1(run: &Run) -> Result<Tally> {
    let n = run.n;
    Ok(run.sweep(2, |which| {
        let (g, mut expected) = if which == 0 {
            (make_path(n), vec![(1, 2), (1, n), (n - 1, n)])
        } else {
            let mut e = vec![(1, 2), (2, n), (n - 1, n)];
            if n >= 8 {
                e.push((1, n));
            }
            (make_q(n).expect("n >= 6"), e)
        };
        expected.sort_unstable();
        Outcome::guard(&g, indecomposability_graph(&g).map(|ig| {
            let got: Vec<(usize, usize)> = ig.edges().map(|(u, v)| (u + 1, v + 1)).collect();
            if got == expected {
                Outcome::ok(true)
            } else {
                Outcome::bad(&g, format!("{expected:?}"), format!("{got:?}"))
            }
        }))
    }))
}

fn remark_1_6(run: &Run) -> Result<Tally> {
    let n = run.n;
    let q = make_q(n).expect("n >= 5");
    Ok(run.sweep(4, |which| {
        Outcome::guard(&q, (|| {
            Ok(match which {
                0 => {
                    let minus = q.delete(&VertexSet::from_mask(n, 1));
                    if are_isomorphic(&minus, &make_q(n - 1)?).is_some() {
                        Outcome::ok(true)
                    } else {
                        Outcome::bad(&q, "Q_n - 1 isomorphic to Q_(n-1)", "not isomorphic")
                    }
                }
                1 => {
                    let ig = indecomposability_graph(&q)?;
                    let one = is_set_covered(&ig, &VertexSet::from_mask(n, 1 | 1 << (n - 1)));
                    let two = is_set_covered(&ig, &VertexSet::from_mask(n, 2 | 1 << (n - 1)));
                    if one && two {
                        Outcome::ok(true)
                    } else {
                        Outcome::bad(&q, "{1,n}- and {2,n}-covered", format!("{{1,n}}: {one}, {{2,n}}: {two}"))
                    }
                }
                2 if n >= ClassId::PMinus1.min_n() => {
                    let p = make_path(n);
                    let v = class_predicate(&p, ClassId::PMinus1)?;
                    if v.holds {
                        Outcome::ok(true)
                    } else {
                        Outcome::bad(&p, "P_n in P-1", v.reason)
                    }
                }
                3 if n >= ClassId::QMinus1.min_n() => {
                    let shift: Vec<usize> = (0..n).map(|v| if v == 0 { n - 1 } else { v - 1 }).collect();
                    let v = class_predicate(&q.relabel(&shift), ClassId::QMinus1)?;
                    if v.holds {
                        Outcome::ok(true)
                    } else {
                        Outcome::bad(&q, "shifted Q_n in Q-1", v.reason)
                    }
                }
                _ => Outcome::skip(),
            })
        })())
    }))
}

fn thm_1_7(run: &Run) -> Result<Tally> {
    let (n, seed) = (run.n, run.seed());
    Ok(run.sweep(run.count(), |i| {
        let mut rng = rng_for(seed, i);
        let member = i % 2 == 0;
        let g = if member {
            class_instance(&mut rng, n)
        } else {
            random_indecomposable(&mut rng, n)
        };
        Outcome::guard(&g, (|| {
            let ig = Graph::from_edges(n, oracle_indecomposability_edges(&g)?)?;
            let expected = oracle_min_cover_size(&ig)? <= 2;
            let r = classify_2covered(&g)?;
            if r.two_covered != expected || (member && !r.two_covered) {
                return Ok(Outcome::bad(
                    &g,
                    format!("two_covered = {}", expected || member),
                    format!("two_covered = {}", r.two_covered),
                ));
            }
            if let (Some((a, b)), Some(class), Some(map)) = (r.cover_pair, r.class, &r.relabel) {
                let k = if r.complemented { g.complement() } else { g.clone() };
                let holds = class_predicate(&k.relabel(map), class)?.holds;
                let covers = is_set_covered(&ig, &VertexSet::from_mask(n, 1 << a | 1 << b));
                if !holds || !covers {
                    return Ok(Outcome::bad(
                        &g,
                        "witness satisfies the class predicate and covers I(G)",
                        format!("predicate {holds}, cover {covers}"),
                    ));
                }
            }
            Ok(Outcome::ok(r.two_covered))
        })())
    }))
}

fn in_hull(b: Block) -> bool {
    matches!(b, Block::HullMinus | Block::HullPlus)
}

fn anchor(b: Block) -> Option<usize> {
    match b {
        Block::AttachedMinus(u) | Block::AttachedPlus(u) => Some(u),
        _ => None,
    }
}

/// Block of `v` read off the definitions, by brute force.
fn definitional_blocks(g: &Graph, x: u64, v: usize) -> Result<Vec<Block>> {
    let mut out = Vec::new();
    if oracle_indecomposable(&g.induced_by_mask(x | 1 << v))? {
        out.push(Block::Ext);
    }
    let seen = g.row(v) & x;
    if seen == 0 {
        out.push(Block::HullMinus);
    }
    if seen == x {
        out.push(Block::HullPlus);
    }
    for u in Bits(x) {
        if Bits(x & !(1 << u)).all(|z| g.has_edge(z, u) == g.has_edge(z, v)) {
            out.push(if g.has_edge(u, v) {
                Block::AttachedPlus(u)
            } else {
                Block::AttachedMinus(u)
            });
        }
    }
    Ok(out)
}

fn partition_agrees(g: &Graph, x: u64) -> Outcome {
    Outcome::guard(g, (|| {
        let n = g.n();
        let part = compute_partition(g, &VertexSet::from_mask(n, x))?;
        let mut def = vec![None; n];
        for v in Bits(g.all_mask() & !x) {
            let blocks = definitional_blocks(g, x, v)?;
            if blocks.len() != 1 {
                return Ok(Outcome::bad(
                    g,
                    format!("X = {:?}: vertex {} in exactly one block", labels(x), v + 1),
                    format!("{blocks:?}"),
                ));
            }
            if part.block_of(v) != Some(blocks[0]) {
                return Ok(Outcome::bad(
                    g,
                    format!("X = {:?}: vertex {} in {:?}", labels(x), v + 1, blocks[0]),
                    format!("{:?}", part.block_of(v)),
                ));
            }
            def[v] = Some(blocks[0]);
        }
        let out: Vec<usize> = Bits(g.all_mask() & !x).collect();
        for &v in &out {
            for &w in &out {
                if v == w {
                    continue;
                }
                let within = x | 1 << v | 1 << w;
                if oracle_indecomposable(&g.induced_by_mask(within))? {
                    continue;
                }
                let (bv, bw) = (def[v].expect("outside"), def[w].expect("outside"));
                let (claim, set) = if let Some(u) = anchor(bv) {
                    if anchor(bw) == Some(u) {
                        continue;
                    }
                    ("{u, v} is an interval", 1 << u | 1 << v)
                } else if in_hull(bv) {
                    if in_hull(bw) {
                        continue;
                    }
                    ("X ∪ {w} is an interval", x | 1 << w)
                } else if bw == Block::Ext {
                    ("{v, w} is an interval", 1 << v | 1 << w)
                } else {
                    continue;
                };
                let holds = is_interval_mask(g, within, set);
                if !holds {
                    return Ok(Outcome::bad(
                        g,
                        format!("X = {:?}, v = {}, w = {}: {claim}", labels(x), v + 1, w + 1),
                        "not an interval",
                    ));
                }
            }
        }
        Ok(Outcome::ok(true))
    })())
}

fn thm_2_1(run: &Run) -> Result<Tally> {
    let n = run.n;
    Ok(match run.mode {
        Mode::Exhaustive => all_graphs(run, |g| {
            let mut last = Outcome::skip();
            for s in 4..n {
                let x = (1u64 << s) - 1;
                if !is_indecomposable_mask(g, x) {
                    continue;
                }
                last = partition_agrees(g, x);
                if last.mismatch.is_some() {
                    break;
                }
            }
            last
        }),
        Mode::Sampled { seed, count } => run.sweep(count, |i| {
            let mut rng = rng_for(seed, i);
            let g = if i % 2 == 0 {
                let p = rng.gen_range(0.2..0.8);
                random_graph(&mut rng, n, p)
            } else {
                random_indecomposable(&mut rng, n)
            };
            match random_prime_subset(&mut rng, &g, 4..=n - 1) {
                Some(x) => partition_agrees(&g, x.mask()),
                None => Outcome::skip(),
            }
        }),
    })
}

fn outside_pair_exists(g: &Graph, x: u64) -> Outcome {
    let out: Vec<usize> = Bits(g.all_mask() & !x).collect();
    let found = out.iter().enumerate().any(|(k, &a)| {
        out[k + 1..]
            .iter()
            .any(|&b| is_indecomposable_mask(g, x | 1 << a | 1 << b))
    });
    if found {
        Outcome::ok(true)
    } else {
        Outcome::bad(
            g,
            format!("X = {:?}: some G[X ∪ {{x,y}}] prime", labels(x)),
            "G_X is edgeless",
        )
    }
}

fn cor_2_2(run: &Run) -> Result<Tally> {
    let n = run.n;
    Ok(match run.mode {
        Mode::Exhaustive => all_graphs(run, |g| {
            if !is_indecomposable(g) {
                return Outcome::skip();
            }
            let mut last = Outcome::skip();
            for x in 1u64..g.all_mask() {
                let size = x.count_ones() as usize;
                if size < 4 || size > n - 2 || !is_indecomposable_mask(g, x) {
                    continue;
                }
                last = outside_pair_exists(g, x);
                if last.mismatch.is_some() {
                    break;
                }
            }
            last
        }),
        Mode::Sampled { seed, count } => run.sweep(count, |i| {
            let mut rng = rng_for(seed, i);
            let g = random_indecomposable(&mut rng, n);
            match random_prime_subset(&mut rng, &g, 4..=n - 2) {
                Some(x) => outside_pair_exists(&g, x.mask()),
                None => Outcome::skip(),
            }
        }),
    })
}

fn edge_translation_holds(g: &Graph, x: u64) -> Outcome {
    Outcome::guard(g, (|| {
        let n = g.n();
        let part = compute_partition(g, &VertexSet::from_mask(n, x))?;
        let gx = outside_rows(g, x);
        let out: Vec<usize> = Bits(g.all_mask() & !x).collect();
        for (k, &a) in out.iter().enumerate() {
            for &b in &out[k + 1..] {
                let (ba, bb) = (part.block_of(a).expect("outside"), part.block_of(b).expect("outside"));
                let within = x | 1 << a | 1 << b;
                let in_gx = gx[a] >> b & 1 == 1;
                let edge = g.has_edge(a, b);
                let fail = |claim: String| {
                    Ok(Outcome::bad(
                        g,
                        format!("X = {:?}, x = {}, y = {}: {claim}", labels(x), a + 1, b + 1),
                        "violated",
                    ))
                };
                if in_hull(ba) && in_hull(bb) {
                    if !is_interval_mask(g, within, x) || in_gx {
                        return fail("X is an interval and xy is not an edge of G_X".into());
                    }
                    continue;
                }
                if let (Some(u), Some(v)) = (anchor(ba), anchor(bb)) {
                    if u == v {
                        if !is_interval_mask(g, within, 1 << u | 1 << a | 1 << b) || in_gx {
                            return fail(format!("{{{}, x, y}} is an interval", u + 1));
                        }
                    } else if (edge == in_gx) == g.has_edge(u, v) {
                        return fail(format!("translation through {}, {}", u + 1, v + 1));
                    }
                    continue;
                }
                for (p, q) in [(ba, bb), (bb, ba)] {
                    if in_hull(p) && !in_hull(q) {
                        let flip = p == Block::HullPlus;
                        if (edge == in_gx) == flip {
                            return fail(format!("x in {p:?}, y outside the hull"));
                        }
                    }
                }
            }
        }
        Ok(Outcome::ok(true))
    })())
}

fn remark_2_4(run: &Run) -> Result<Tally> {
    let (n, seed) = (run.n, run.seed());
    Ok(run.sweep(run.count(), |i| {
        let mut rng = rng_for(seed, i);
        if i % 2 == 0 && n >= 9 {
            if let Some((class, g)) = random_class_member(&mut rng, n) {
                let m = n - class.removed();
                if m + 2 <= n {
                    return edge_translation_holds(&g, (1u64 << m) - 1);
                }
            }
        }
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        match random_prime_subset(&mut rng, &g, 4..=n - 2) {
            Some(x) => edge_translation_holds(&g, x.mask()),
            None => Outcome::skip(),
        }
    }))
}

fn critical_iff_halfgraph(g: &Graph) -> Outcome {
    if !is_indecomposable(g) {
        return Outcome::skip();
    }
    Outcome::guard(g, (|| {
        let n = g.n();
        let critical = is_critical_graph(g)?;
        let half = n.is_multiple_of(2) && {
            let h = make_halfgraph(n)?;
            are_isomorphic(g, &h).is_some() || are_isomorphic(g, &h.complement()).is_some()
        };
        Ok(if critical == half {
            Outcome::ok(critical)
        } else {
            Outcome::bad(g, format!("critical = {half}"), format!("critical = {critical}"))
        })
    })())
}

fn thm_3_1(run: &Run) -> Result<Tally> {
    Ok(match run.mode {
        Mode::Exhaustive => all_graphs(run, critical_iff_halfgraph),
        Mode::Sampled { seed, count } => run.sweep(count, |i| {
            critical_iff_halfgraph(&random_indecomposable(&mut rng_for(seed, i), run.n))
        }),
    })
}

/// Instance `i` of the partial-criticality space: a graph and a base `X`.
fn partial_instance(run: &Run, i: u64) -> Option<(Graph, VertexSet)> {
    let n = run.n;
    match run.mode {
        Mode::Exhaustive => {
            let k = n - 4;
            let traces: Vec<u64> = (0..k).map(|j| i >> (4 * j) & 15).collect();
            let inner = i >> (4 * k);
            let g = extend(&make_path(4), &traces, |a, b| {
                let bit = b * (b - 1) / 2 + a;
                inner >> bit & 1 == 1
            });
            Some((g, VertexSet::from_mask(n, 15)))
        }
        Mode::Sampled { seed, .. } => {
            let mut rng = rng_for(seed, i);
            if i.is_multiple_of(4) && n.is_multiple_of(2) {
                let h = make_halfgraph(n).ok()?;
                let h = if rng.gen_bool(0.5) { h.complement() } else { h };
                let g = random_relabel(&mut rng, &h);
                let x = random_prime_subset(&mut rng, &g, 4..=n - 1)?;
                return Some((g, x));
            }
            let m = rng.gen_range(4..n);
            let base = match rng.gen_range(0..3) {
                0 => make_path(m),
                1 => make_q(m).ok()?,
                _ => random_indecomposable(&mut rng, m),
            };
            let g = random_extension(&mut rng, &base, n - m);
            Some((g, VertexSet::from_mask(n, (1u64 << m) - 1)))
        }
    }
}

fn partial_count(run: &Run) -> u64 {
    match run.mode {
        Mode::Exhaustive => {
            let k = (run.n - 4) as u32;
            1u64 << (4 * k + k * k.saturating_sub(1) / 2)
        }
        Mode::Sampled { count, .. } => count,
    }
}

/// Left side of both characterisations: prime and critical according to `X`.
fn partially_critical(g: &Graph, x: &VertexSet) -> Result<bool> {
    Ok(is_indecomposable(g) && is_critical_according_to(g, x)?)
}

fn thm_3_2(run: &Run) -> Result<Tally> {
    Ok(run.sweep(partial_count(run), |i| {
        let Some((g, x)) = partial_instance(run, i) else {
            return Outcome::skip();
        };
        Outcome::guard(&g, (|| {
            let lhs = partially_critical(&g, &x)?;
            let r = check_partial_criticality_conditions(&g, &x)?;
            Ok(if lhs == r.h_all() {
                Outcome::ok(lhs)
            } else {
                Outcome::bad(
                    &g,
                    format!("X = {:?}: H1 ∧ H2 ∧ H3 = {lhs}", x.to_labels()),
                    format!("H1 = {}, H2 = {}, H3 = {}", r.h1, r.h2, r.h3),
                )
            })
        })())
    }))
}

fn thm_3_3(run: &Run) -> Result<Tally> {
    Ok(run.sweep(partial_count(run), |i| {
        let Some((g, x)) = partial_instance(run, i) else {
            return Outcome::skip();
        };
        Outcome::guard(&g, (|| {
            let r = check_partial_criticality_conditions(&g, &x)?;
            let KForm::Evaluated(k) = r.k_form else {
                return Ok(Outcome::skip());
            };
            let lhs = partially_critical(&g, &x)?;
            Ok(if lhs == k.all() {
                Outcome::ok(lhs)
            } else {
                Outcome::bad(
                    &g,
                    format!("X = {:?}: K1 ∧ K2 ∧ K3 ∧ K4 = {lhs}", x.to_labels()),
                    format!("{k:?}"),
                )
            })
        })())
    }))
}

fn cor_3_4(run: &Run) -> Result<Tally> {
    Ok(run.sweep(partial_count(run), |i| {
        let Some((g, x)) = partial_instance(run, i) else {
            return Outcome::skip();
        };
        if g.n() - x.len() < 2 {
            return Outcome::skip();
        }
        Outcome::guard(&g, (|| {
            if !partially_critical(&g, &x)? {
                return Ok(Outcome::skip());
            }
            let rows = outside_rows(&g, x.mask());
            let isolated: Vec<usize> = Bits(g.all_mask() & !x.mask())
                .filter(|&v| rows[v] == 0)
                .map(|v| v + 1)
                .collect();
            Ok(if isolated.is_empty() {
                Outcome::ok(true)
            } else {
                Outcome::bad(
                    &g,
                    format!("X = {:?}: G_X without isolated vertices", x.to_labels()),
                    format!("isolated {isolated:?}"),
                )
            })
        })())
    }))
}

/// Covered by `{1, n-k}` and prime, by the definition of `I(G)`.
fn in_class_by_definition(g: &Graph, k: usize) -> bool {
    is_indecomposable(g) && is_pair_covering(g, 0, g.n() - k - 1)
}

fn one_vertex_extensions(run: &Run, class: ClassId) -> Result<Tally> {
    let n = run.n;
    let base = class.base_family().build(n - 1);
    let count = match run.mode {
        Mode::Exhaustive => 1u64 << (n - 1),
        Mode::Sampled { count, .. } => count,
    };
    let seed = run.seed();
    Ok(run.sweep(count, |i| {
        let mask = match run.mode {
            Mode::Exhaustive => i,
            Mode::Sampled { .. } => rng_for(seed, i).gen::<u64>() & ((1u64 << (n - 1)) - 1),
        };
        let g = extend(&base, &[mask], |_, _| false);
        Outcome::guard(&g, (|| {
            let lhs = in_class_by_definition(&g, 1);
            let rhs = class_predicate(&g, class)?;
            Ok(if lhs == rhs.holds {
                Outcome::ok(lhs)
            } else {
                Outcome::bad(
                    &g,
                    format!("N({n}) = {:?}: in {class} = {lhs}", labels(mask)),
                    format!("predicate = {} ({})", rhs.holds, rhs.reason),
                )
            })
        })())
    }))
}

fn prop_4_2(run: &Run) -> Result<Tally> {
    one_vertex_extensions(run, ClassId::PMinus1)
}

fn prop_4_4(run: &Run) -> Result<Tally> {
    one_vertex_extensions(run, ClassId::QMinus1)
}

/// A definitional positive that no class member matches is a mismatch.
fn reverse_check(g: &Graph, class: ClassId) -> Outcome {
    if !in_class_by_definition(g, class.removed()) {
        return Outcome::ok(false);
    }
    Outcome::guard(g, crate::families::match_class(g, class).map(|hit| match hit {
        Some(_) => Outcome::ok(true),
        None => Outcome::bad(
            g,
            format!("prime and {{1,{}}}-covered, so a member of {class}", g.n() - class.removed()),
            "matches no member of the class",
        ),
    }))
}

fn multi_vertex_class(run: &Run, class: ClassId) -> Result<Tally> {
    let n = run.n;
    let k = class.removed();
    let base = class.base_family().build(n - k);
    match run.mode {
        Mode::Exhaustive => {
            let members = enumerate_class(class, n, Budget::Exhaustive)?;
            let mut tally = run.sweep(members.len() as u64, |i| {
                let g = &members[i as usize];
                if in_class_by_definition(g, k) {
                    Outcome::ok(true)
                } else {
                    Outcome::bad(g, format!("prime and {{1,{}}}-covered", n - k), "fails")
                }
            });
            if k == 3 {
                let traces = crate::families::block_traces(&base);
                let t = traces.len() as u64;
                tally.merge(run.sweep(t * t * t * 8, |i| {
                    let pick = |d: u64| traces[(i / d % t) as usize];
                    let inner = i / (t * t * t);
                    let g = extend(&base, &[pick(1), pick(t), pick(t * t)], |a, b| {
                        inner >> (a + b - 1) & 1 == 1
                    });
                    reverse_check(&g, class)
                }));
            }
            Ok(tally)
        }
        Mode::Sampled { seed, count } => Ok(run.sweep(count, |i| {
            let mut rng = rng_for(seed, i);
            let g = if i % 2 == 0 {
                random_extension(&mut rng, &base, k)
            } else {
                random_palette_extension(&mut rng, &base, k)
            };
            reverse_check(&g, class)
        })),
    }
}

fn prop_4_7(run: &Run) -> Result<Tally> {
    multi_vertex_class(run, ClassId::PMinus3)
}

fn prop_4_10(run: &Run) -> Result<Tally> {
    multi_vertex_class(run, ClassId::QMinus3)
}

fn prop_4_11(run: &Run) -> Result<Tally> {
    multi_vertex_class(run, ClassId::PMinus5)
}

fn prop_4_12(run: &Run) -> Result<Tally> {
    multi_vertex_class(run, ClassId::QMinus5)
}

fn first(k: usize) -> Vec<usize> {
    (1..=k).collect()
}

fn with(mut s: Vec<usize>, extra: &[usize]) -> Vec<usize> {
    s.extend_from_slice(extra);
    s.sort_unstable();
    s
}

/// The listed interval families for `Q_{n-3} - {i}`, one per applicable item.
pub(crate) fn interval_table(n: usize, i: usize) -> Vec<Vec<Vec<usize>>> {
    let t = n - 3;
    let mut items = Vec::new();
    if i == 2 {
        items.push(vec![vec![1, t]]);
    }
    if i == 3 {
        items.push(vec![vec![1, 2], vec![1, 2, t]]);
    }
    if i == 4 {
        items.push(if n >= 11 {
            vec![vec![1, 3], vec![1, 2, 3], vec![1, 2, 3, t]]
        } else {
            vec![vec![1, 3], vec![1, 2, 3], vec![1, 2, 3, 7], vec![1, 2, 3, 6, 7]]
        });
    }
    if i == 5 {
        items.push(if n != 11 {
            vec![first(4), with(first(4), &[t])]
        } else {
            vec![first(4), with(first(4), &[8]), with(first(4), &[7, 8])]
        });
    }
    if i == n - 4 {
        items.push(vec![first(n - 5)]);
    }
    if (6 <= i && i + 7 <= n) || i + 5 == n {
        items.push(vec![first(i - 1), with(first(i - 1), &[t])]);
    }
    if i + 6 == n && n >= 11 {
        items.push(vec![first(n - 7), with(first(n - 7), &[t]), with(first(n - 7), &[t, t - 1])]);
    }
    for item in &mut items {
        item.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    }
    items
}

fn remark_4_9(run: &Run) -> Result<Tally> {
    let n = run.n;
    let q = make_q(n - 3)?;
    Ok(run.sweep((n - 5) as u64, |j| {
        let i = j as usize + 2;
        let items = interval_table(n, i);
        let g = q.delete(&VertexSet::from_mask(q.n(), 1 << (i - 1)));
        let ids: Vec<usize> = (1..=q.n()).filter(|&v| v != i).collect();
        Outcome::guard(&g, nontrivial_intervals(&g).map(|found| {
            let mut got: Vec<Vec<usize>> = found
                .iter()
                .map(|s| s.iter().map(|v| ids[v]).collect())
                .collect();
            got.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            match items.first() {
                None => Outcome::bad(&g, format!("i = {i}: a listed item"), "no item applies"),
                Some(_) if items.iter().any(|it| *it != items[0]) => {
                    Outcome::bad(&g, format!("i = {i}: consistent items"), format!("{items:?}"))
                }
                Some(want) if *want == got => Outcome::ok(true),
                Some(want) => Outcome::bad(&g, format!("i = {i}: {want:?}"), format!("{got:?}")),
            }
        }))
    }))
}
