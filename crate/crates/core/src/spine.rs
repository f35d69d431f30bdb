//! Maximum compatible sets of partitions, spine ranks, commuting generator
//! sets, and local graphs of Whitehead moves.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::autos::{canon_mod_omega, omega_elements, outer_equal, RaagAutomorphism};
use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, Literal};
use crate::norms::{candidate_pairs, length_one_classes, MarkedSalvetti};
use crate::partitions::{all_partitions, compatible, WhiteheadPair, WhiteheadPartition};
use crate::words::{conj_canon, CyclicClass};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Exact maximum clique by branch and bound with greedy colouring bounds.
/// `budget` caps the number of search nodes.
pub fn max_clique(adj: &[FixedBitSet], budget: u64) -> Result<Vec<usize>> {
    let n = adj.len();
    // Degeneracy order: repeatedly remove a vertex of minimum remaining degree;
    // the search then considers the last removed vertices first.
    let mut removed = FixedBitSet::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    let mut degree: Vec<usize> = adj.iter().map(|a| a.count_ones(..)).collect();
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed.contains(v)).min_by_key(|&v| (degree[v], v)).expect("vertex left");
        removed.insert(v);
        order.push(v);
        for u in adj[v].ones() {
            if !removed.contains(u) {
                degree[u] -= 1;
            }
        }
    }
    order.reverse();
    let mut search = CliqueSearch { adj, order, best: Vec::new(), nodes: 0, budget };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut current = Vec::new();
    search.expand(&mut current, all)?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

struct CliqueSearch<'a> {
    adj: &'a [FixedBitSet],
    order: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of `cand` in search order; returns vertices with
    /// their colour numbers, ascending by colour.
    fn colour(&self, cand: &FixedBitSet) -> Vec<(usize, usize)> {
        let mut uncoloured: Vec<usize> = self.order.iter().copied().filter(|&v| cand.contains(v)).collect();
        let mut out = Vec::with_capacity(uncoloured.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class: Vec<usize> = Vec::new();
            let mut rest = Vec::new();
            for v in uncoloured {
                if class.iter().all(|&u| !self.adj[v].contains(u)) {
                    class.push(v);
                } else {
                    rest.push(v);
                }
            }
            out.extend(class.into_iter().map(|v| (v, colour)));
            uncoloured = rest;
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: FixedBitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let coloured = self.colour(&cand);
        for &(v, c) in coloured.iter().rev() {
            if current.len() + c <= self.best.len() {
                return Ok(());
            }
            current.push(v);
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            if next.is_clear() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next)?;
            }
            current.pop();
            cand.set(v, false);
        }
        Ok(())
    }
}

/// Pairwise compatibility as adjacency bitsets.
pub fn compatibility_graph(g: &DefiningGraph, parts: &[WhiteheadPartition]) -> Vec<FixedBitSet> {
    let n = parts.len();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if compatible(g, &parts[i], &parts[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

/// A set of pairwise compatible partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleSet {
    pub partitions: Vec<WhiteheadPartition>,
    /// Vertex mask the bases were drawn from.
    pub base_filter: u64,
    pub symmetric_only: bool,
}

impl CompatibleSet {
    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    /// Pairwise compatibility, base filter and symmetry hold.
    pub fn is_valid(&self, g: &DefiningGraph) -> bool {
        let ps = &self.partitions;
        ps.iter().all(|p| p.bases_mask() & self.base_filter != 0 && (!self.symmetric_only || p.is_symmetric()))
            && (0..ps.len()).all(|i| (i + 1..ps.len()).all(|j| compatible(g, &ps[i], &ps[j])))
    }
}

fn max_set_among(
    parts: &[WhiteheadPartition],
    adj: &[FixedBitSet],
    base_filter: u64,
    symmetric_only: bool,
    budget: u64,
) -> Result<CompatibleSet> {
    let keep: Vec<usize> = (0..parts.len())
        .filter(|&i| parts[i].bases_mask() & base_filter != 0 && (!symmetric_only || parts[i].is_symmetric()))
        .collect();
    let sub: Vec<FixedBitSet> = keep
        .iter()
        .map(|&i| {
            let mut row = FixedBitSet::with_capacity(keep.len());
            for (k, &j) in keep.iter().enumerate() {
                if adj[i].contains(j) {
                    row.insert(k);
                }
            }
            row
        })
        .collect();
    let clique = max_clique(&sub, budget)?;
    Ok(CompatibleSet {
        partitions: clique.into_iter().map(|k| parts[keep[k]]).collect(),
        base_filter,
        symmetric_only,
    })
}

/// A maximum compatible set of (optionally symmetric) partitions with some
/// base in `base_filter`.
pub fn max_compatible_set(
    g: &DefiningGraph,
    base_filter: u64,
    symmetric_only: bool,
    budget: u64,
) -> Result<CompatibleSet> {
    let parts = all_partitions(g, symmetric_only);
    let adj = compatibility_graph(g, &parts);
    max_set_among(&parts, &adj, base_filter, symmetric_only, budget)
}

/// The four maximum compatible set sizes and a witness for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    /// M(V), the spine dimension.
    pub m_all: usize,
    /// M(L), the principal rank.
    pub m_principal: usize,
    /// MΣ(V), the symmetric spine dimension.
    pub m_sym_all: usize,
    /// MΣ(L), the symmetric principal rank.
    pub m_sym_principal: usize,
    pub witnesses: [CompatibleSet; 4],
}

impl RankReport {
    pub fn vcd(&self) -> usize {
        self.m_sym_all
    }
}

pub fn rank_report(g: &DefiningGraph, budget: u64) -> Result<RankReport> {
    let parts = all_partitions(g, false);
    let adj = compatibility_graph(g, &parts);
    let all = g.all_vertices();
    let principal = g.order_report().principal_mask();
    let w_all = max_set_among(&parts, &adj, all, false, budget)?;
    let w_pr = max_set_among(&parts, &adj, principal, false, budget)?;
    let w_sym = max_set_among(&parts, &adj, all, true, budget)?;
    let w_sym_pr = max_set_among(&parts, &adj, principal, true, budget)?;
    Ok(RankReport {
        m_all: w_all.len(),
        m_principal: w_pr.len(),
        m_sym_all: w_sym.len(),
        m_sym_principal: w_sym_pr.len(),
        witnesses: [w_all, w_pr, w_sym, w_sym_pr],
    })
}

/// MΣ(V) and MΣ(L) with witnesses, computed from symmetric partitions only.
pub fn symmetric_ranks(g: &DefiningGraph, budget: u64) -> Result<(CompatibleSet, CompatibleSet)> {
    let parts = all_partitions(g, true);
    let adj = compatibility_graph(g, &parts);
    let principal = g.order_report().principal_mask();
    Ok((
        max_set_among(&parts, &adj, g.all_vertices(), true, budget)?,
        max_set_among(&parts, &adj, principal, true, budget)?,
    ))
}

/// The virtual cohomological dimension of the symmetric outer automorphism
/// group, as the dimension of the symmetric spine.
pub fn vcd_symout(g: &DefiningGraph, budget: u64) -> Result<usize> {
    Ok(symmetric_ranks(g, budget)?.0.len())
}

/// Whether the automorphisms of two pairs commute in Out, by the
/// combinatorial criterion on partitions and multiplier vertices.
pub fn commute_combinatorial(g: &DefiningGraph, a: &WhiteheadPair, b: &WhiteheadPair) -> bool {
    let (m, n) = (a.multiplier.vertex, b.multiplier.vertex);
    if m == n {
        return compatible(g, &a.partition, &b.partition);
    }
    if g.adjacent(m, n) {
        return true;
    }
    compatible(g, &a.partition, &b.partition) && !a.partition.splits(n) && !b.partition.splits(m)
}

/// Whether the automorphisms of two pairs commute in Out, by direct computation.
pub fn commute_direct(g: &DefiningGraph, a: &WhiteheadPair, b: &WhiteheadPair) -> bool {
    let fa = crate::autos::whitehead_auto(g, a);
    let fb = crate::autos::whitehead_auto(g, b);
    outer_equal(g, &fa.compose(g, &fb), &fb.compose(g, &fa)).is_some()
}

/// A maximum compatible set of symmetric partitions based at principal
/// vertices, with multipliers whose automorphisms pairwise commute. Every
/// pair is certified by both the combinatorial criterion and direct
/// computation.
pub fn abelian_generators(g: &DefiningGraph, budget: u64) -> Result<Vec<WhiteheadPair>> {
    let order = g.order_report();
    let principal = order.principal_mask();
    let parts = all_partitions(g, true);
    let adj = compatibility_graph(g, &parts);
    let full = max_set_among(&parts, &adj, principal, true, budget)?;
    // Prefer one base per nonabelian class: the least principal member.
    let mut single = principal;
    for class in &order.classes {
        let nonabelian = class.iter().any(|&v| class.iter().any(|&w| v != w && !g.adjacent(v, w)));
        if nonabelian {
            let members: Vec<usize> = class.iter().copied().filter(|&v| principal >> v & 1 == 1).collect();
            for &v in members.iter().skip(1) {
                single &= !(1u64 << v);
            }
        }
    }
    let restricted = max_set_among(&parts, &adj, single, true, budget)?;
    let chosen = if restricted.len() == full.len() { restricted } else { full };
    let pairs: Vec<WhiteheadPair> = chosen
        .partitions
        .iter()
        .map(|p| WhiteheadPair { partition: *p, multiplier: Literal::pos(p.base()) })
        .collect();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if !commute_combinatorial(g, &pairs[i], &pairs[j]) || !commute_direct(g, &pairs[i], &pairs[j]) {
                return Err(Error::NoCertifiedAssignment(pairs.len()));
            }
        }
    }
    Ok(pairs)
}

/// Membership in the minimal set for `W` = all classes of length one: the
/// norm attains its floor `2|V|`.
pub fn in_kmin_length_one(g: &DefiningGraph, sigma: &MarkedSalvetti) -> bool {
    let total: usize = length_one_classes(g).iter().map(|c| sigma.ell(g, c)).sum();
    total == 2 * g.vertex_count()
}

/// A breadth-first neighbourhood of a marking under Whitehead moves, with
/// markings identified up to inner automorphisms and signed symmetries.
#[derive(Clone, Debug)]
pub struct MoveGraph {
    /// Canonical representatives; index 0 is the root.
    pub nodes: Vec<RaagAutomorphism>,
    pub depths: Vec<usize>,
    /// `(source, target, pair)` with target equivalent to the move of source.
    pub edges: Vec<(usize, usize, WhiteheadPair)>,
}

impl MoveGraph {
    pub fn to_dot(&self, g: &DefiningGraph) -> String {
        let mut s = String::from("digraph moves {\n");
        for (i, a) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", a.images_text(g));
        }
        for (u, v, p) in &self.edges {
            let _ = writeln!(s, "  n{u} -> n{v} [label=\"{}\"];", p.to_text(g));
        }
        s.push_str("}\n");
        s
    }
}

/// Invariant of a marking under inner automorphisms and signed symmetries.
fn outer_omega_key(g: &DefiningGraph, a: &RaagAutomorphism) -> Vec<CyclicClass> {
    let mut key: Vec<CyclicClass> = a
        .images()
        .iter()
        .map(|w| {
            let c = conj_canon(g, w);
            let d = conj_canon(g, &w.inverse());
            if c <= d {
                c
            } else {
                d
            }
        })
        .collect();
    key.sort();
    key
}

pub fn local_explore(
    g: &DefiningGraph,
    root: &MarkedSalvetti,
    depth: usize,
    symmetric_only: bool,
    budget: u64,
) -> Result<MoveGraph> {
    let omegas = omega_elements(g);
    let same = |a: &RaagAutomorphism, b: &RaagAutomorphism| {
        omegas.iter().any(|w| outer_equal(g, &a.compose(g, w), b).is_some())
    };
    let pairs = candidate_pairs(g, symmetric_only);
    let root_canon = canon_mod_omega(g, root.marking());
    let mut graph = MoveGraph { nodes: vec![root_canon.clone()], depths: vec![0], edges: Vec::new() };
    let mut buckets: HashMap<Vec<CyclicClass>, Vec<usize>> = HashMap::new();
    buckets.entry(outer_omega_key(g, &root_canon)).or_default().push(0);
    let mut markings = vec![root.clone()];
    let mut queue = VecDeque::from([0usize]);
    let mut work: u64 = 0;
    while let Some(u) = queue.pop_front() {
        if graph.depths[u] == depth {
            continue;
        }
        for pair in &pairs {
            work += 1;
            if work > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            let moved = markings[u].whitehead_move(g, pair);
            let key = outer_omega_key(g, moved.marking());
            let found = buckets
                .get(&key)
                .and_then(|ids| ids.iter().copied().find(|&id| same(moved.marking(), &graph.nodes[id])));
            let v = match found {
                Some(v) => v,
                None => {
                    let v = graph.nodes.len();
                    graph.nodes.push(canon_mod_omega(g, moved.marking()));
                    graph.depths.push(graph.depths[u] + 1);
                    buckets.entry(key).or_default().push(v);
                    markings.push(moved);
                    queue.push_back(v);
                    v
                }
            };
            if v != u && !graph.edges.iter().any(|&(a, b, _)| a == u && b == v) {
                graph.edges.push((u, v, *pair));
            }
        }
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::whitehead_auto;

    fn edgeless(n: usize) -> DefiningGraph {
        DefiningGraph::new((0..n).map(|i| format!("x{i}")).collect(), &[]).unwrap()
    }

    fn complete(n: usize) -> DefiningGraph {
        let es: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        DefiningGraph::new((0..n).map(|i| format!("x{i}")).collect(), &es).unwrap()
    }

    fn path_and_point() -> DefiningGraph {
        DefiningGraph::parse("vertices: a b c d e\nedge: a b\nedge: b c\nedge: c d\n").unwrap()
    }

    #[test]
    fn clique_small() {
        let mut adj = vec![FixedBitSet::with_capacity(4); 4];
        for (u, v) in [(0, 1), (1, 2), (0, 2), (2, 3)] {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        assert_eq!(max_clique(&adj, 1000).unwrap(), vec![0, 1, 2]);
        assert!(max_clique(&[], 10).unwrap().is_empty());
        assert!(matches!(max_clique(&adj, 1), Err(Error::BudgetExceeded(1))));
    }

    #[test]
    fn complete_graph_ranks() {
        let r = rank_report(&complete(4), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.m_all, r.m_principal, r.m_sym_all, r.m_sym_principal), (0, 0, 0, 0));
        assert!(abelian_generators(&complete(3), DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn edgeless_ranks() {
        let r = rank_report(&edgeless(3), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.m_all, r.m_sym_all, r.m_sym_principal), (3, 1, 1));
        assert_eq!(all_partitions(&edgeless(3), true).len(), 6);
        for w in &r.witnesses {
            assert!(w.is_valid(&edgeless(3)));
        }
        let r = rank_report(&edgeless(4), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.m_all, r.m_sym_all), (5, 2));
    }

    #[test]
    fn abelian_sets() {
        let e3 = edgeless(3);
        assert_eq!(abelian_generators(&e3, DEFAULT_BUDGET).unwrap().len(), 1);
        let g = path_and_point();
        let (sym, sym_pr) = symmetric_ranks(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(sym.len(), sym_pr.len());
        assert_eq!(abelian_generators(&g, DEFAULT_BUDGET).unwrap().len(), sym_pr.len());
        assert_eq!(vcd_symout(&g, DEFAULT_BUDGET).unwrap(), sym.len());
    }

    #[test]
    fn kmin_membership() {
        let g = path_and_point();
        assert!(in_kmin_length_one(&g, &MarkedSalvetti::identity(&g)));
        let fold = WhiteheadPair::parse(&g, "( b e | b^-1 d d^-1 e^-1 | a a^-1 c c^-1 ) b").unwrap();
        assert!(!in_kmin_length_one(&g, &MarkedSalvetti::new(&g, whitehead_auto(&g, &fold))));
    }

    #[test]
    fn explore_small() {
        let k3 = complete(3);
        let m = local_explore(&k3, &MarkedSalvetti::identity(&k3), 3, false, DEFAULT_BUDGET).unwrap();
        assert_eq!((m.nodes.len(), m.edges.len()), (1, 0));
        let e3 = edgeless(3);
        let m = local_explore(&e3, &MarkedSalvetti::identity(&e3), 1, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.nodes.len(), 7);
        assert!(m.nodes.iter().all(|a| a.is_symmetric(&e3)));
        assert!(m.to_dot(&e3).starts_with("digraph"));
    }
}
