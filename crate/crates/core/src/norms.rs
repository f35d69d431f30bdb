//! Conjugacy lengths under a marking, the lexicographic norm prefix, and
//! norm descent by Whitehead moves.

use crate::autos::{ElementaryMove, RaagAutomorphism};
use crate::error::{Error, Result};
use crate::graph::{mask_iter, DefiningGraph, Literal};
use crate::partitions::{all_partitions, WhiteheadPair, WhiteheadPartition};
use crate::words::{conj_canon, conj_length, cyclic_reduce, is_cyclically_reduced, CyclicClass, Word};

pub const DEFAULT_TAIL_BOUND: usize = 3;

/// Crossings of `w` with `p`. Letters of `w` lying in `lk(P)` are deleted
/// first; a crossing is then a cyclically adjacent pair `(u_i, u_{i+1})` of
/// the remaining letters where `u_i` and `u_{i+1}⁻¹` lie on different sides.
///
/// Counting adjacent pairs of the full word instead (link letters included)
/// miscounts words such as `a b` for a partition based at `b` with `a` in
/// its link; with link letters removed the length-change formula is exact.
pub fn count_partition(g: &DefiningGraph, p: &WhiteheadPartition, w: &Word) -> Result<usize> {
    if !is_cyclically_reduced(g, w) {
        return Err(Error::Precondition(format!("`{}` is not cyclically reduced", w.display(g))));
    }
    Ok(count_crossings(p, w))
}

fn count_crossings(p: &WhiteheadPartition, w: &Word) -> usize {
    let link = p.link();
    let letters: Vec<Literal> = w.letters().iter().copied().filter(|x| !link.contains(*x)).collect();
    let n = letters.len();
    let side_p = p.side_p();
    (0..n)
        .filter(|&i| side_p.contains(letters[i]) != side_p.contains(letters[(i + 1) % n].inverse()))
        .count()
}

/// Occurrences of `v` or `v⁻¹` in `w`.
pub fn count_vertex(v: usize, w: &Word) -> usize {
    w.letters().iter().filter(|x| x.vertex == v).count()
}

/// A marked Salvetti complex: a marking together with its cached inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSalvetti {
    marking: RaagAutomorphism,
    inverse: RaagAutomorphism,
}

impl MarkedSalvetti {
    pub fn new(g: &DefiningGraph, marking: RaagAutomorphism) -> Self {
        let inverse = marking.invert(g);
        debug_assert!(marking.compose(g, &inverse).is_identity());
        MarkedSalvetti { marking, inverse }
    }

    pub fn identity(g: &DefiningGraph) -> Self {
        Self::new(g, RaagAutomorphism::identity(g))
    }

    pub fn marking(&self) -> &RaagAutomorphism {
        &self.marking
    }

    pub fn inverse(&self) -> &RaagAutomorphism {
        &self.inverse
    }

    /// Cyclically reduced representative of `α⁻¹(g)`.
    pub fn pulled_back(&self, g: &DefiningGraph, class: &CyclicClass) -> Word {
        cyclic_reduce(g, &self.inverse.apply(g, &class.rep))
    }

    pub fn ell(&self, g: &DefiningGraph, class: &CyclicClass) -> usize {
        conj_length(g, &self.inverse.apply(g, &class.rep))
    }

    /// The marking `α ∘ φ(P, m)`.
    pub fn whitehead_move(&self, g: &DefiningGraph, pair: &WhiteheadPair) -> MarkedSalvetti {
        let phi = RaagAutomorphism::from_move(g, ElementaryMove::Whitehead(*pair));
        let phi_inv = RaagAutomorphism::from_move(g, ElementaryMove::Whitehead(pair.inverse(g)));
        MarkedSalvetti { marking: self.marking.compose(g, &phi), inverse: phi_inv.compose(g, &self.inverse) }
    }
}

/// The implemented prefix of the lexicographic norm, compared field by field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormPrefix {
    pub w_entry: usize,
    pub zero_entry: usize,
    pub tail: Vec<usize>,
}

impl NormPrefix {
    pub fn to_text(&self) -> String {
        let tail: Vec<String> = self.tail.iter().map(|x| x.to_string()).collect();
        format!("({}, {}, [{}])", self.w_entry, self.zero_entry, tail.join(" "))
    }
}

/// The class sets a norm is evaluated on.
#[derive(Clone, Debug)]
pub struct NormContext {
    pub w: Vec<CyclicClass>,
    pub g0: Vec<CyclicClass>,
    pub tail: Vec<CyclicClass>,
}

impl NormContext {
    pub fn new(g: &DefiningGraph, w: Vec<CyclicClass>, tail_bound: usize) -> Self {
        let g0 = crate::words::enumerate_classes(g, 2);
        let tail = if tail_bound == 2 { g0.clone() } else { crate::words::enumerate_classes(g, tail_bound) };
        NormContext { w, g0, tail }
    }

    /// The context whose `W` is every class of length one.
    pub fn length_one(g: &DefiningGraph, tail_bound: usize) -> Self {
        Self::new(g, length_one_classes(g), tail_bound)
    }
}

/// Classes of the signed generators.
pub fn length_one_classes(g: &DefiningGraph) -> Vec<CyclicClass> {
    g.all_literals().iter().map(|x| CyclicClass { rep: Word::letter(x) }).collect()
}

/// Parse a class-set file: one word per line, canonicalized, duplicates and
/// trivial classes dropped.
pub fn parse_classes(g: &DefiningGraph, text: &str) -> Result<Vec<CyclicClass>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let w = Word::parse(g, line).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
            other => other,
        })?;
        let c = conj_canon(g, &w);
        if !c.is_trivial() {
            out.push(c);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn norm_prefix(g: &DefiningGraph, sigma: &MarkedSalvetti, ctx: &NormContext) -> NormPrefix {
    NormPrefix {
        w_entry: ctx.w.iter().map(|c| sigma.ell(g, c)).sum(),
        zero_entry: ctx.g0.iter().map(|c| sigma.ell(g, c)).sum(),
        tail: ctx.tail.iter().map(|c| sigma.ell(g, c)).collect(),
    }
}

/// The length of `class` after the move by `pair`, by the crossing formula.
pub fn predicted_length(
    g: &DefiningGraph,
    sigma: &MarkedSalvetti,
    pair: &WhiteheadPair,
    class: &CyclicClass,
) -> usize {
    let w = sigma.pulled_back(g, class);
    w.len() + count_crossings(&pair.partition, &w) - count_vertex(pair.multiplier.vertex, &w)
}

/// Change of the norm prefix under a move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormDelta {
    pub w_entry: i64,
    pub zero_entry: i64,
    pub tail: Vec<i64>,
}

impl NormDelta {
    fn key(&self) -> impl Iterator<Item = i64> + '_ {
        [self.w_entry, self.zero_entry].into_iter().chain(self.tail.iter().copied())
    }

    pub fn is_negative(&self) -> bool {
        self.key().find(|&d| d != 0).is_some_and(|d| d < 0)
    }

    pub fn is_zero(&self) -> bool {
        self.key().all(|d| d == 0)
    }
}

/// Pulled-back representatives of every class in a context, computed once
/// per marking.
struct Pulled {
    w: Vec<Word>,
    g0: Vec<Word>,
    tail: Vec<Word>,
}

impl Pulled {
    fn new(g: &DefiningGraph, sigma: &MarkedSalvetti, ctx: &NormContext) -> Self {
        let pull = |cs: &[CyclicClass]| cs.iter().map(|c| sigma.pulled_back(g, c)).collect();
        Pulled { w: pull(&ctx.w), g0: pull(&ctx.g0), tail: pull(&ctx.tail) }
    }

    fn delta(&self, pair: &WhiteheadPair) -> NormDelta {
        let m = pair.multiplier.vertex;
        let d = |w: &Word| count_crossings(&pair.partition, w) as i64 - count_vertex(m, w) as i64;
        NormDelta {
            w_entry: self.w.iter().map(d).sum(),
            zero_entry: self.g0.iter().map(d).sum(),
            tail: self.tail.iter().map(d).collect(),
        }
    }
}

pub fn norm_delta(
    g: &DefiningGraph,
    sigma: &MarkedSalvetti,
    ctx: &NormContext,
    pair: &WhiteheadPair,
) -> NormDelta {
    Pulled::new(g, sigma, ctx).delta(pair)
}

/// Candidate pairs in search order: partitions sorted, then multipliers by
/// vertex with the inverse literal first. Degenerate partitions are skipped.
pub fn candidate_pairs(g: &DefiningGraph, symmetric_only: bool) -> Vec<WhiteheadPair> {
    let mut out = Vec::new();
    for p in all_partitions(g, symmetric_only) {
        for v in mask_iter(p.mx_mask()) {
            for x in [Literal::neg(v), Literal::pos(v)] {
                out.push(WhiteheadPair { partition: p, multiplier: x });
            }
        }
    }
    out
}

/// The first pair whose move strictly lowers the norm prefix. If none does
/// but some pair leaves the whole prefix unchanged, the comparison is
/// undecided at this prefix and a tie error is returned.
pub fn find_reductive(
    g: &DefiningGraph,
    sigma: &MarkedSalvetti,
    ctx: &NormContext,
    candidates: &[WhiteheadPair],
) -> Result<Option<(WhiteheadPair, NormDelta)>> {
    let pulled = Pulled::new(g, sigma, ctx);
    let mut tie: Option<WhiteheadPair> = None;
    for pair in candidates {
        let d = pulled.delta(pair);
        if d.is_negative() {
            return Ok(Some((*pair, d)));
        }
        if tie.is_none() && d.is_zero() {
            tie = Some(*pair);
        }
    }
    match tie {
        Some(p) => Err(Error::TieAtBound(format!(
            "{} leaves the norm prefix unchanged",
            p.to_text(g)
        ))),
        None => Ok(None),
    }
}

/// One step of a minimization.
#[derive(Clone, Debug)]
pub struct MinimizeStep {
    pub pair: WhiteheadPair,
    pub delta: NormDelta,
    pub prefix: NormPrefix,
}

pub const MAX_MINIMIZE_STEPS: usize = 100_000;

/// Apply reductive moves until none remains.
pub fn minimize(
    g: &DefiningGraph,
    sigma: &MarkedSalvetti,
    ctx: &NormContext,
) -> Result<(MarkedSalvetti, Vec<MinimizeStep>)> {
    let candidates = candidate_pairs(g, false);
    let mut cur = sigma.clone();
    let mut prefix = norm_prefix(g, &cur, ctx);
    let mut steps = Vec::new();
    while let Some((pair, delta)) = find_reductive(g, &cur, ctx, &candidates)? {
        if steps.len() == MAX_MINIMIZE_STEPS {
            return Err(Error::BudgetExceeded(MAX_MINIMIZE_STEPS as u64));
        }
        let next = cur.whitehead_move(g, &pair);
        let next_prefix = norm_prefix(g, &next, ctx);
        if next_prefix >= prefix {
            return Err(Error::Precondition(format!(
                "move {} did not lower the norm prefix",
                pair.to_text(g)
            )));
        }
        cur = next;
        prefix = next_prefix.clone();
        steps.push(MinimizeStep { pair, delta, prefix: next_prefix });
    }
    Ok((cur, steps))
}
