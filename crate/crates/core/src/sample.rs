//! Random words, graphs and markings for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::autos::{all_pairs, omega_element, whitehead_auto, RaagAutomorphism};
use crate::graph::{DefiningGraph, Literal};
use crate::norms::candidate_pairs;
use crate::partitions::WhiteheadPair;
use crate::words::{reduce, Word};

/// A random graph on `n` vertices with independent edges of probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> DefiningGraph {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    DefiningGraph::new(names, &edges).expect("valid random graph")
}

/// A uniformly random letter sequence of length `len`, then reduced.
pub fn random_word<R: Rng>(rng: &mut R, g: &DefiningGraph, len: usize) -> Word {
    let n = g.vertex_count();
    let letters: Vec<Literal> = (0..len)
        .map(|_| Literal { vertex: rng.gen_range(0..n), positive: rng.gen_bool(0.5) })
        .collect();
    Word(reduce(g, &letters))
}

pub fn random_omega<R: Rng>(rng: &mut R, g: &DefiningGraph) -> RaagAutomorphism {
    let syms = crate::autos::graph_symmetries(g);
    let perm = syms.choose(rng).expect("identity symmetry");
    let inversions = rng.gen::<u64>() & g.all_vertices();
    omega_element(g, perm, inversions)
}

/// A product of at most `max_moves` symmetric Whitehead automorphisms
/// interleaved with random signed symmetries.
pub fn random_symmetric_marking<R: Rng>(rng: &mut R, g: &DefiningGraph, max_moves: usize) -> RaagAutomorphism {
    let pairs = all_pairs(g, true);
    let mut a = random_omega(rng, g);
    let k = rng.gen_range(0..=max_moves);
    for _ in 0..k {
        if let Some(p) = pairs.choose(rng) {
            a = a.compose(g, &whitehead_auto(g, p));
        }
        if rng.gen_bool(0.3) {
            a = a.compose(g, &random_omega(rng, g));
        }
    }
    a
}

/// Non-symmetric Whitehead pairs, used as folds.
pub fn fold_pairs(g: &DefiningGraph) -> Vec<WhiteheadPair> {
    candidate_pairs(g, false).into_iter().filter(|p| !p.partition.is_symmetric()).collect()
}

/// A random marking that contains at least one fold, or `None` if the graph
/// has no folds.
pub fn random_fold_marking<R: Rng>(rng: &mut R, g: &DefiningGraph, max_moves: usize) -> Option<RaagAutomorphism> {
    let folds = fold_pairs(g);
    let fold = folds.choose(rng)?;
    let left = random_symmetric_marking(rng, g, max_moves / 2);
    let right = random_symmetric_marking(rng, g, max_moves / 2);
    Some(left.compose(g, &whitehead_auto(g, fold)).compose(g, &right))
}
