//! Γ-Whitehead partitions of the signed generators and the predicates on them.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{mask_iter, DefiningGraph, LitSet, Literal};

/// A partition `(P | P̄ | lk)` of the signed generators.
///
/// The stored form is canonical: `base` is the least vertex that can serve
/// as a base and `side_p` holds its positive literal. Two values are equal
/// exactly when they describe the same unordered pair of sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WhiteheadPartition {
    base: usize,
    side_p: LitSet,
    side_q: LitSet,
    link: LitSet,
    split: u64,
    bases: u64,
}

impl WhiteheadPartition {
    /// Validate and canonicalize a partition with the given base and sides.
    /// The sides may be given in either order.
    pub fn new(g: &DefiningGraph, base: usize, side_a: LitSet, side_b: LitSet) -> Result<Self> {
        let p = Self::build(g, base, side_a, side_b)?;
        if p.side_p.len() < 2 && p.side_q.len() < 2 {
            return Err(Error::InvalidPartition("both sides are singletons".into()));
        }
        Ok(p)
    }

    fn build(g: &DefiningGraph, base: usize, side_a: LitSet, side_b: LitSet) -> Result<Self> {
        if base >= g.vertex_count() {
            return Err(Error::InvalidPartition(format!("base index {base} out of range")));
        }
        let link = LitSet::doubled(g.link_mask(base));
        let bad = |msg: &str| Err(Error::InvalidPartition(msg.to_string()));
        if !side_a.is_disjoint(side_b) || !side_a.is_disjoint(link) || !side_b.is_disjoint(link) {
            return bad("sides and link overlap");
        }
        if side_a.union(side_b).union(link) != g.all_literals() {
            return bad("sides and link do not cover every literal");
        }
        let m = Literal::pos(base);
        let (side_p, side_q) = if side_a.contains(m) && side_b.contains(m.inverse()) {
            (side_a, side_b)
        } else if side_b.contains(m) && side_a.contains(m.inverse()) {
            (side_b, side_a)
        } else {
            return bad("base and its inverse must lie on different sides");
        };
        for comp in g.components_outside_star(base) {
            if !comp.is_subset(side_p) && !comp.is_subset(side_q) {
                return bad("a component outside the base star is divided between the sides");
            }
        }
        let mut split = 0u64;
        for v in 0..g.vertex_count() {
            if side_p.contains(Literal::pos(v)) != side_p.contains(Literal::neg(v))
                && !link.contains(Literal::pos(v))
            {
                split |= 1 << v;
            }
        }
        let base_link = g.link_mask(base);
        for v in mask_iter(split) {
            if g.link_mask(v) & !base_link != 0 {
                return bad("a split vertex has link outside the base link");
            }
        }
        let bases = mask_iter(split).filter(|&v| g.link_mask(v) == base_link).fold(0u64, |a, v| a | 1 << v);
        let canon = bases.trailing_zeros() as usize;
        let (side_p, side_q) =
            if side_p.contains(Literal::pos(canon)) { (side_p, side_q) } else { (side_q, side_p) };
        if side_p.is_empty() || side_q.is_empty() {
            return bad("empty side");
        }
        Ok(WhiteheadPartition { base: canon, side_p, side_q, link, split, bases })
    }

    /// Parse the text form `( lits | lits | lits )`.
    pub fn parse(g: &DefiningGraph, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "partition must be enclosed in parentheses"))?;
        let parts: Vec<&str> = inner.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, "partition needs three `|`-separated parts"));
        }
        let sets = parts
            .iter()
            .map(|p| p.split_whitespace().map(|tok| g.literal(tok)).collect::<Result<LitSet>>())
            .collect::<Result<Vec<_>>>()?;
        let (a, b, link) = (sets[0], sets[1], sets[2]);
        let base = (0..g.vertex_count())
            .find(|&v| {
                LitSet::doubled(g.link_mask(v)) == link
                    && a.contains(Literal::pos(v)) != a.contains(Literal::neg(v))
                    && a.union(b).contains(Literal::pos(v))
                    && a.union(b).contains(Literal::neg(v))
            })
            .ok_or_else(|| Error::InvalidPartition("no vertex can serve as a base".into()))?;
        Self::new(g, base, a, b)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn side_p(&self) -> LitSet {
        self.side_p
    }

    pub fn side_q(&self) -> LitSet {
        self.side_q
    }

    pub fn link(&self) -> LitSet {
        self.link
    }

    /// Vertices whose two literals lie on different sides.
    pub fn split_mask(&self) -> u64 {
        self.split
    }

    /// Split vertices with the same link as the base; each may serve as a base.
    pub fn bases_mask(&self) -> u64 {
        self.bases
    }

    /// Maximal elements of the split set under domination. These are exactly
    /// the split vertices whose link equals the base link.
    pub fn mx_mask(&self) -> u64 {
        self.bases
    }

    pub fn splits(&self, v: usize) -> bool {
        self.split >> v & 1 == 1
    }

    /// Splits no vertex other than a single base.
    pub fn is_symmetric(&self) -> bool {
        self.split.count_ones() == 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.side_p.len() == 1 || self.side_q.len() == 1
    }

    /// The side containing literal `x`, or `None` if `x` lies in the link.
    pub fn side_of(&self, x: Literal) -> Option<LitSet> {
        if self.side_p.contains(x) {
            Some(self.side_p)
        } else if self.side_q.contains(x) {
            Some(self.side_q)
        } else {
            None
        }
    }

    pub fn sides(&self) -> [LitSet; 2] {
        [self.side_p, self.side_q]
    }

    pub fn to_text(&self, g: &DefiningGraph) -> String {
        self.display(g).to_string()
    }

    pub fn display<'a>(&'a self, g: &'a DefiningGraph) -> PartitionDisplay<'a> {
        PartitionDisplay { p: self, graph: g }
    }
}

impl PartialOrd for WhiteheadPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WhiteheadPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.side_p.lex_cmp(other.side_p))
            .then_with(|| self.side_q.lex_cmp(other.side_q))
    }
}

pub(crate) fn lits_text(g: &DefiningGraph, s: LitSet) -> String {
    s.iter().map(|x| x.display(g).to_string()).collect::<Vec<_>>().join(" ")
}

pub struct PartitionDisplay<'a> {
    p: &'a WhiteheadPartition,
    graph: &'a DefiningGraph,
}

impl fmt::Display for PartitionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        write!(
            f,
            "( {} | {} | {} )",
            lits_text(g, self.p.side_p),
            lits_text(g, self.p.side_q),
            lits_text(g, self.p.link)
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub symmetric_only: bool,
    pub allow_degenerate: bool,
}

/// Every partition that can be based at `base`, once each, sorted.
pub fn enumerate_partitions(
    g: &DefiningGraph,
    base: usize,
    opts: EnumerateOptions,
) -> Vec<WhiteheadPartition> {
    let comps = g.components_outside_star(base);
    let k = comps.len();
    let m = Literal::pos(base);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let mut p = LitSet::singleton(m);
        let mut q = LitSet::singleton(m.inverse());
        for (i, c) in comps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = p.union(*c);
            } else {
                q = q.union(*c);
            }
        }
        let degenerate = p.len() == 1 || q.len() == 1;
        if (p.len() == 1 && q.len() == 1) || (degenerate && !opts.allow_degenerate) {
            continue;
        }
        let part = WhiteheadPartition::build(g, base, p, q).expect("component assignment is valid");
        if opts.symmetric_only && !part.is_symmetric() {
            continue;
        }
        out.push(part);
    }
    out.sort();
    out
}

/// All non-degenerate partitions of the graph, deduplicated and sorted.
pub fn all_partitions(g: &DefiningGraph, symmetric_only: bool) -> Vec<WhiteheadPartition> {
    let opts = EnumerateOptions { symmetric_only, allow_degenerate: false };
    let mut out: Vec<WhiteheadPartition> =
        (0..g.vertex_count()).flat_map(|v| enumerate_partitions(g, v, opts)).collect();
    out.sort();
    out.dedup();
    out
}

/// Some base of `p` and some base of `q` are joined by an edge.
pub fn adjacent(g: &DefiningGraph, p: &WhiteheadPartition, q: &WhiteheadPartition) -> bool {
    mask_iter(p.bases).any(|b| g.link_mask(b) & q.bases != 0)
}

pub fn compatible(g: &DefiningGraph, p: &WhiteheadPartition, q: &WhiteheadPartition) -> bool {
    adjacent(g, p, q) || quadrants(p, q).sets.iter().any(|s| s.is_empty())
}

/// The four side-side intersections of two partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadrantReport {
    /// `[P∩Q, P∩Q̄, P̄∩Q, P̄∩Q̄]`.
    pub sets: [LitSet; 4],
}

impl QuadrantReport {
    /// Index pairs of opposite quadrants.
    pub const OPPOSITE: [(usize, usize); 2] = [(0, 3), (1, 2)];
}

pub fn quadrants(p: &WhiteheadPartition, q: &WhiteheadPartition) -> QuadrantReport {
    QuadrantReport {
        sets: [
            p.side_p.intersection(q.side_p),
            p.side_p.intersection(q.side_q),
            p.side_q.intersection(q.side_p),
            p.side_q.intersection(q.side_q),
        ],
    }
}

fn partition_with_side(
    g: &DefiningGraph,
    side: LitSet,
    candidates: u64,
) -> Option<WhiteheadPartition> {
    for m in mask_iter(candidates) {
        let link = LitSet::doubled(g.link_mask(m));
        if !side.is_disjoint(link) {
            continue;
        }
        let other = g.all_literals().difference(side).difference(link);
        if let Ok(p) = WhiteheadPartition::new(g, m, side, other) {
            return Some(p);
        }
    }
    None
}

/// For incompatible `p` and `q`, a pair of (possibly degenerate) partitions
/// whose sides include a pair of opposite quadrants, based at maximal split
/// vertices of `p` or `q`.
pub fn opposite_quadrant_partitions(
    g: &DefiningGraph,
    p: &WhiteheadPartition,
    q: &WhiteheadPartition,
) -> Result<Option<(WhiteheadPartition, WhiteheadPartition)>> {
    if compatible(g, p, q) {
        return Err(Error::Precondition("partitions are compatible".into()));
    }
    let quads = quadrants(p, q);
    let candidates = p.mx_mask() | q.mx_mask();
    for (i, j) in QuadrantReport::OPPOSITE {
        let x = partition_with_side(g, quads.sets[i], candidates);
        let y = partition_with_side(g, quads.sets[j], candidates);
        if let (Some(x), Some(y)) = (x, y) {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// A partition together with a multiplier literal whose vertex is a maximal
/// split vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadPair {
    pub partition: WhiteheadPartition,
    pub multiplier: Literal,
}

impl WhiteheadPair {
    pub fn new(partition: WhiteheadPartition, multiplier: Literal) -> Result<Self> {
        if partition.mx_mask() >> multiplier.vertex & 1 == 0 {
            return Err(Error::InvalidPair("multiplier is not a maximal split vertex".into()));
        }
        Ok(WhiteheadPair { partition, multiplier })
    }

    /// The side containing the multiplier.
    pub fn positive_side(&self) -> LitSet {
        self.partition.side_of(self.multiplier).expect("multiplier lies on a side")
    }

    /// The pair whose automorphism is the inverse of this one.
    pub fn inverse(&self, g: &DefiningGraph) -> WhiteheadPair {
        let x = self.multiplier;
        let swap = |s: LitSet| {
            let mut s = s;
            let had_x = s.contains(x);
            let had_inv = s.contains(x.inverse());
            s.remove(x);
            s.remove(x.inverse());
            if had_x {
                s.insert(x.inverse());
            }
            if had_inv {
                s.insert(x);
            }
            s
        };
        let p = &self.partition;
        let partition = WhiteheadPartition::build(g, p.base, swap(p.side_p), swap(p.side_q))
            .expect("swapping a base literal keeps the partition valid");
        WhiteheadPair { partition, multiplier: x.inverse() }
    }

    pub fn to_text(&self, g: &DefiningGraph) -> String {
        format!("{} {}", self.partition.to_text(g), self.multiplier.display(g))
    }

    /// Parse `( … | … | … ) <literal>`.
    pub fn parse(g: &DefiningGraph, text: &str) -> Result<Self> {
        let t = text.trim();
        let close = t.rfind(')').ok_or_else(|| Error::parse(0, "missing `)` in Whitehead pair"))?;
        let partition = WhiteheadPartition::parse(g, &t[..=close])?;
        let multiplier = g.literal(t[close + 1..].trim())?;
        WhiteheadPair::new(partition, multiplier)
    }
}
