//! Seeded instance generators. Every draw takes its own RNG stream keyed by
//! `(seed, index)`, so any instance can be regenerated in isolation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::families::{block_traces, enumerate_class, extend, make_halfgraph, Budget, ClassId};
use crate::graph::{Graph, VertexSet};
use crate::iso::PqFamily;
use crate::modular::{is_indecomposable, is_indecomposable_mask};

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

pub fn random_relabel(rng: &mut impl Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

fn maybe_complement(rng: &mut impl Rng, g: Graph) -> Graph {
    if rng.gen_bool(0.5) {
        g.complement()
    } else {
        g
    }
}

/// `base` plus `k` vertices. Each new vertex copies the trace of a random
/// non-`Ext` block with probability 3/4 and is uniform otherwise; edges
/// among the new vertices are uniform.
pub fn random_extension(rng: &mut impl Rng, base: &Graph, k: usize) -> Graph {
    let traces = block_traces(base);
    let all = (1u64 << base.n()) - 1;
    let chosen: Vec<u64> = (0..k)
        .map(|_| {
            if rng.gen_bool(0.75) {
                traces[rng.gen_range(0..traces.len())]
            } else {
                rng.gen::<u64>() & all
            }
        })
        .collect();
    let inner: Vec<bool> = (0..k * k).map(|_| rng.gen_bool(0.5)).collect();
    extend(base, &chosen, |i, j| inner[i * k + j])
}

/// `base` plus `k` vertices whose traces come from a palette of one to
/// three random non-`Ext` blocks. Two new vertices from the same block are
/// adjacent with the block's sign with probability 0.85; other edges among
/// the new vertices are uniform.
pub fn random_palette_extension(rng: &mut impl Rng, base: &Graph, k: usize) -> Graph {
    // block_traces alternates minus and plus blocks, minus first
    let traces = block_traces(base);
    let size = [1, 2, 2, 3][rng.gen_range(0..4)];
    let palette: Vec<usize> = (0..size).map(|_| rng.gen_range(0..traces.len())).collect();
    let chosen: Vec<usize> = (0..k).map(|_| *palette.choose(rng).expect("nonempty")).collect();
    let inner: Vec<bool> = (0..k * k)
        .map(|c| {
            let (i, j) = (c / k, c % k);
            if chosen[i] == chosen[j] && rng.gen_bool(0.85) {
                chosen[i] % 2 == 1
            } else {
                rng.gen_bool(0.5)
            }
        })
        .collect();
    let masks: Vec<u64> = chosen.iter().map(|&t| traces[t]).collect();
    extend(base, &masks, |i, j| inner[i * k + j])
}

/// A class member on `n` vertices from a class whose minimum is at most `n`.
pub fn random_class_member(rng: &mut impl Rng, n: usize) -> Option<(ClassId, Graph)> {
    let classes: Vec<ClassId> = ClassId::ALL
        .into_iter()
        .filter(|c| c.min_n() <= n)
        .collect();
    let class = *classes.choose(rng)?;
    let seed = rng.gen();
    let g = enumerate_class(class, n, Budget::Sampled { count: 1, seed })
        .ok()?
        .pop()?;
    Some((class, g))
}

/// An indecomposable graph on `n >= 4` vertices drawn from a mixture of
/// dense random graphs, extensions of paths and `Q` graphs, class members
/// and half graphs, then complemented and relabelled at random.
pub fn random_indecomposable(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 4);
    for _ in 0..1000 {
        let g = match rng.gen_range(0..4) {
            0 => {
                let p = rng.gen_range(0.2..0.8);
                random_graph(rng, n, p)
            }
            1 => {
                let k = rng.gen_range(0..=(n - 4).min(5));
                let family = if rng.gen_bool(0.5) { PqFamily::P } else { PqFamily::Q };
                random_extension(rng, &family.build(n - k), k)
            }
            2 => match random_class_member(rng, n) {
                Some((_, g)) => g,
                None => continue,
            },
            _ => {
                let even = n - n % 2;
                let h = make_halfgraph(even).expect("even size >= 4");
                if even == n {
                    h
                } else {
                    random_extension(rng, &h, 1)
                }
            }
        };
        let g = maybe_complement(rng, g);
        if is_indecomposable(&g) {
            return random_relabel(rng, &g);
        }
    }
    crate::families::make_path(n)
}

/// A random vertex subset with size in `sizes` inducing an indecomposable
/// graph, if one turns up within a bounded number of tries.
pub fn random_prime_subset(
    rng: &mut impl Rng,
    g: &Graph,
    sizes: std::ops::RangeInclusive<usize>,
) -> Option<VertexSet> {
    if sizes.is_empty() || *sizes.start() > g.n() {
        return None;
    }
    let hi = (*sizes.end()).min(g.n());
    let mut ids: Vec<usize> = (0..g.n()).collect();
    for _ in 0..200 {
        let size = rng.gen_range(*sizes.start()..=hi);
        ids.shuffle(rng);
        let mask = ids[..size].iter().fold(0u64, |m, &v| m | 1 << v);
        if is_indecomposable_mask(g, mask) {
            return Some(VertexSet::from_mask(g.n(), mask));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible() {
        let a = random_indecomposable(&mut rng_for(3, 17), 12);
        let b = random_indecomposable(&mut rng_for(3, 17), 12);
        assert_eq!(a, b);
        assert!(is_indecomposable(&a));
    }

    #[test]
    fn prime_subset_is_prime() {
        let g = crate::families::make_path(10);
        let x = random_prime_subset(&mut rng_for(1, 1), &g, 4..=6).unwrap();
        assert!(is_indecomposable_mask(&g, x.mask()));
        assert!((4..=6).contains(&x.len()));
    }
}
