//! Defining graphs, signed generators, and the domination order on vertices.
//!
//! Vertices are identified by their declaration index. The double graph on
//! signed generators is never stored: two literals are adjacent exactly when
//! their underlying vertices span an edge.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A signed generator `v` or `v^-1`.
///
/// Ordering follows vertex declaration order, with the inverse placed before
/// the positive literal of the same vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub vertex: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(vertex: usize) -> Self {
        Literal { vertex, positive: true }
    }

    pub fn neg(vertex: usize) -> Self {
        Literal { vertex, positive: false }
    }

    pub fn inverse(self) -> Self {
        Literal { vertex: self.vertex, positive: !self.positive }
    }

    /// Position of this literal in the global literal order.
    pub fn index(self) -> usize {
        2 * self.vertex + self.positive as usize
    }

    pub fn from_index(i: usize) -> Self {
        Literal { vertex: i / 2, positive: i % 2 == 1 }
    }

    pub fn display(self, g: &DefiningGraph) -> LiteralDisplay<'_> {
        LiteralDisplay { lit: self, graph: g }
    }
}

pub struct LiteralDisplay<'a> {
    lit: Literal,
    graph: &'a DefiningGraph,
}

impl fmt::Display for LiteralDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.graph.name(self.lit.vertex))?;
        if !self.lit.positive {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A set of literals, stored as a bitmask over literal indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LitSet(pub u128);

impl LitSet {
    pub const EMPTY: LitSet = LitSet(0);

    pub fn singleton(x: Literal) -> Self {
        LitSet(1u128 << x.index())
    }

    /// Both literals of every vertex in `mask`.
    pub fn doubled(mask: u64) -> Self {
        let mut out = 0u128;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            out |= 3u128 << (2 * v);
            m &= m - 1;
        }
        LitSet(out)
    }

    pub fn contains(self, x: Literal) -> bool {
        self.0 >> x.index() & 1 == 1
    }

    pub fn insert(&mut self, x: Literal) {
        self.0 |= 1u128 << x.index();
    }

    pub fn remove(&mut self, x: Literal) {
        self.0 &= !(1u128 << x.index());
    }

    pub fn union(self, other: LitSet) -> LitSet {
        LitSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LitSet) -> LitSet {
        LitSet(self.0 & other.0)
    }

    pub fn difference(self, other: LitSet) -> LitSet {
        LitSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_disjoint(self, other: LitSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: LitSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Literals in increasing literal order.
    pub fn iter(self) -> impl Iterator<Item = Literal> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(Literal::from_index(i))
        })
    }

    /// Lexicographic comparison of the sorted literal lists.
    pub fn lex_cmp(self, other: LitSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<Literal> for LitSet {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        let mut s = LitSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

/// Iterate the set bits of a vertex mask in increasing order.
pub fn mask_iter(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

/// A finite simplicial graph with named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    adj: Vec<u64>,
    index: HashMap<String, usize>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '^' || c == '-')
}

impl DefiningGraph {
    /// Build a graph from vertex names and edges given as index pairs.
    pub fn new<S: Into<String>>(names: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::parse(0, "graph has no vertices"));
        }
        if names.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(names.len()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::parse(0, format!("invalid vertex name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::parse(0, format!("duplicate vertex `{n}`")));
            }
        }
        let mut adj = vec![0u64; names.len()];
        for &(u, v) in edges {
            if u >= names.len() || v >= names.len() {
                return Err(Error::parse(0, "edge endpoint out of range"));
            }
            if u == v {
                return Err(Error::parse(0, format!("loop edge at `{}`", names[u])));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(DefiningGraph { names, adj, index })
    }

    /// Parse the line-oriented graph file format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut edges: Vec<(usize, String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if names.is_some() {
                    return Err(Error::parse(line_no, "more than one `vertices:` line"));
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if list.is_empty() {
                    return Err(Error::parse(line_no, "graph has no vertices"));
                }
                let mut seen = HashMap::new();
                for n in &list {
                    if !valid_name(n) {
                        return Err(Error::parse(line_no, format!("invalid vertex name `{n}`")));
                    }
                    if seen.insert(n.clone(), ()).is_some() {
                        return Err(Error::parse(line_no, format!("duplicate vertex `{n}`")));
                    }
                }
                if list.len() > MAX_VERTICES {
                    return Err(Error::TooManyVertices(list.len()));
                }
                names = Some(list);
            } else if let Some(rest) = line.strip_prefix("edge:") {
                let ends: Vec<&str> = rest.split_whitespace().collect();
                if ends.len() != 2 {
                    return Err(Error::parse(line_no, "edge line needs exactly two vertices"));
                }
                if ends[0] == ends[1] {
                    return Err(Error::parse(line_no, format!("loop edge at `{}`", ends[0])));
                }
                edges.push((line_no, ends[0].to_string(), ends[1].to_string()));
            } else {
                return Err(Error::parse(line_no, format!("unrecognised line `{line}`")));
            }
        }
        let names = names.ok_or_else(|| Error::parse(0, "missing `vertices:` line"))?;
        let lookup: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut pairs = Vec::with_capacity(edges.len());
        for (line_no, a, b) in &edges {
            let u = *lookup
                .get(a.as_str())
                .ok_or_else(|| Error::parse(*line_no, format!("edge endpoint `{a}` not declared")))?;
            let v = *lookup
                .get(b.as_str())
                .ok_or_else(|| Error::parse(*line_no, format!("edge endpoint `{b}` not declared")))?;
            pairs.push((u, v));
        }
        DefiningGraph::new(names, &pairs)
    }

    /// Serialize back to the graph file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\n", self.names.join(" "));
        for (u, v) in self.edges() {
            s.push_str(&format!("edge: {} {}\n", self.names[u], self.names[v]));
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn all_vertices(&self) -> u64 {
        if self.names.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.names.len()) - 1
        }
    }

    /// Every literal of the graph.
    pub fn all_literals(&self) -> LitSet {
        LitSet::doubled(self.all_vertices())
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn literal(&self, token: &str) -> Result<Literal> {
        match token.strip_suffix("^-1") {
            Some(v) => Ok(Literal::neg(self.vertex(v)?)),
            None => Ok(Literal::pos(self.vertex(token)?)),
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Literals commute and are distinct generators: the double-graph adjacency.
    pub fn commute(&self, x: Literal, y: Literal) -> bool {
        self.adjacent(x.vertex, y.vertex)
    }

    pub fn link_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn star_mask(&self, v: usize) -> u64 {
        self.adj[v] | 1 << v
    }

    pub fn link(&self, v: usize) -> Vec<usize> {
        mask_iter(self.adj[v]).collect()
    }

    pub fn star(&self, v: usize) -> Vec<usize> {
        mask_iter(self.star_mask(v)).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.names.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Connected components of the double graph restricted to literals
    /// outside `st(m)^±`, ordered by their least literal.
    pub fn components_outside_star(&self, m: usize) -> Vec<LitSet> {
        let outside = self.all_vertices() & !self.star_mask(m);
        let mut remaining = LitSet::doubled(outside);
        let mut comps = Vec::new();
        while let Some(seed) = remaining.iter().next() {
            let mut comp = LitSet::singleton(seed);
            let mut frontier = vec![seed];
            remaining.remove(seed);
            while let Some(x) = frontier.pop() {
                let nbrs = LitSet::doubled(self.adj[x.vertex]).intersection(remaining);
                for y in nbrs.iter() {
                    remaining.remove(y);
                    comp.insert(y);
                    frontier.push(y);
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Connected components of `Γ ∖ st(m)` as vertex masks.
    pub fn vertex_components_outside_star(&self, m: usize) -> Vec<u64> {
        let mut remaining = self.all_vertices() & !self.star_mask(m);
        let mut comps = Vec::new();
        while remaining != 0 {
            let seed = remaining.trailing_zeros() as usize;
            let mut comp = 1u64 << seed;
            let mut frontier = comp;
            remaining &= !comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & remaining;
                remaining &= !new;
                comp |= new;
                frontier |= new;
            }
            comps.push(comp);
        }
        comps
    }

    /// v ≤ w iff lk(v) ⊆ st(w).
    pub fn leq(&self, v: usize, w: usize) -> bool {
        self.adj[v] & !self.star_mask(w) == 0
    }

    /// v <∘ w iff lk(v) ⊊ lk(w).
    pub fn strictly_link_dominated(&self, v: usize, w: usize) -> bool {
        self.adj[v] & !self.adj[w] == 0 && self.adj[v] != self.adj[w]
    }

    pub fn order_report(&self) -> OrderReport {
        OrderReport::compute(self)
    }
}

/// The domination relations of a graph and the vertex classes they induce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    /// `leq[v]` is the mask of all `w` with `v ≤ w`.
    pub leq: Vec<u64>,
    /// `strict_link_leq[v]` is the mask of all `w` with `v <∘ w`.
    pub strict_link_leq: Vec<u64>,
    pub classes: Vec<Vec<usize>>,
    pub link_classes: Vec<Vec<usize>>,
    pub star_classes: Vec<Vec<usize>>,
    pub principal: Vec<usize>,
    pub maximal: Vec<usize>,
}

fn group_by_key<K: PartialEq>(n: usize, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut groups: Vec<(K, Vec<usize>)> = Vec::new();
    for v in 0..n {
        let k = key(v);
        match groups.iter_mut().find(|(gk, _)| *gk == k) {
            Some((_, members)) => members.push(v),
            None => groups.push((k, vec![v])),
        }
    }
    groups.into_iter().map(|(_, m)| m).collect()
}

impl OrderReport {
    fn compute(g: &DefiningGraph) -> Self {
        let n = g.vertex_count();
        let leq: Vec<u64> = (0..n)
            .map(|v| (0..n).filter(|&w| g.leq(v, w)).fold(0u64, |m, w| m | 1 << w))
            .collect();
        let strict_link_leq: Vec<u64> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| g.strictly_link_dominated(v, w))
                    .fold(0u64, |m, w| m | 1 << w)
            })
            .collect();
        let equiv = |v: usize| -> u64 {
            (0..n).filter(|&w| leq[v] >> w & 1 == 1 && leq[w] >> v & 1 == 1).fold(0, |m, w| m | 1 << w)
        };
        let classes = group_by_key(n, equiv);
        let link_classes = group_by_key(n, |v| g.link_mask(v));
        let star_classes = group_by_key(n, |v| g.star_mask(v));
        let principal: Vec<usize> = (0..n).filter(|&v| strict_link_leq[v] == 0).collect();
        let maximal: Vec<usize> = (0..n)
            .filter(|&v| {
                let class = equiv(v);
                mask_iter(class).all(|v2| leq[v2] & !class == 0)
            })
            .collect();
        OrderReport { leq, strict_link_leq, classes, link_classes, star_classes, principal, maximal }
    }

    pub fn is_principal(&self, v: usize) -> bool {
        self.principal.contains(&v)
    }

    pub fn principal_mask(&self) -> u64 {
        self.principal.iter().fold(0, |m, &v| m | 1 << v)
    }
}
