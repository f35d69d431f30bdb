//! Automorphisms built from elementary moves, their action on words, and
//! equality in the outer automorphism group.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{mask_iter, DefiningGraph, LitSet, Literal};
use crate::partitions::{EnumerateOptions, WhiteheadPair, WhiteheadPartition};
use crate::words::{
    back_movable, conj_length, cyclic_reduce, cyclic_reduce_with_conjugator, front_movable, normal_form,
    Word,
};

/// A generator of the untwisted automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryMove {
    /// `v ↦ v⁻¹`, all other generators fixed.
    Inversion(usize),
    /// `v ↦ perm[v]` for a permutation preserving the edges.
    Symmetry(Vec<usize>),
    Whitehead(WhiteheadPair),
}

impl ElementaryMove {
    /// Image of the positive literal of `v`.
    pub fn image(&self, g: &DefiningGraph, v: usize) -> Word {
        match self {
            ElementaryMove::Inversion(u) => {
                Word::letter(if *u == v { Literal::neg(v) } else { Literal::pos(v) })
            }
            ElementaryMove::Symmetry(perm) => Word::letter(Literal::pos(perm[v])),
            ElementaryMove::Whitehead(pair) => whitehead_image(g, pair, v),
        }
    }

    pub fn inverse(&self, g: &DefiningGraph) -> ElementaryMove {
        match self {
            ElementaryMove::Inversion(v) => ElementaryMove::Inversion(*v),
            ElementaryMove::Symmetry(perm) => {
                let mut inv = vec![0; perm.len()];
                for (v, &w) in perm.iter().enumerate() {
                    inv[w] = v;
                }
                ElementaryMove::Symmetry(inv)
            }
            ElementaryMove::Whitehead(pair) => ElementaryMove::Whitehead(pair.inverse(g)),
        }
    }

    pub fn to_text(&self, g: &DefiningGraph) -> String {
        match self {
            ElementaryMove::Inversion(v) => format!("inv {}", g.name(*v)),
            ElementaryMove::Symmetry(perm) => {
                let names: Vec<&str> = perm.iter().map(|&w| g.name(w)).collect();
                format!("sym {}", names.join(" "))
            }
            ElementaryMove::Whitehead(pair) => format!("wh {}", pair.to_text(g)),
        }
    }

    pub fn parse(g: &DefiningGraph, text: &str) -> Result<ElementaryMove> {
        let t = text.trim();
        let (kind, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match kind {
            "inv" => Ok(ElementaryMove::Inversion(g.vertex(rest.trim())?)),
            "sym" => {
                let perm = rest.split_whitespace().map(|n| g.vertex(n)).collect::<Result<Vec<_>>>()?;
                check_symmetry(g, &perm)?;
                Ok(ElementaryMove::Symmetry(perm))
            }
            "wh" => Ok(ElementaryMove::Whitehead(WhiteheadPair::parse(g, rest)?)),
            _ => Err(Error::parse(0, format!("unknown move kind `{kind}`"))),
        }
    }
}

fn check_symmetry(g: &DefiningGraph, perm: &[usize]) -> Result<()> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&w| w >= n || std::mem::replace(&mut seen[w], true)) {
        return Err(Error::InvalidAutomorphism("symmetry is not a permutation of the vertices".into()));
    }
    for (u, v) in g.edges() {
        if !g.adjacent(perm[u], perm[v]) {
            return Err(Error::InvalidAutomorphism("permutation does not preserve edges".into()));
        }
    }
    Ok(())
}

/// Image of `v` under the Whitehead automorphism of `pair`.
pub fn whitehead_image(_g: &DefiningGraph, pair: &WhiteheadPair, v: usize) -> Word {
    let x = pair.multiplier;
    let side = pair.positive_side();
    let (vp, vn) = (Literal::pos(v), Literal::neg(v));
    if v == x.vertex {
        return Word::letter(vp);
    }
    match (side.contains(vp), side.contains(vn)) {
        (true, true) => Word(vec![x, vp, x.inverse()]),
        (true, false) if pair.partition.splits(v) => Word(vec![vp, x.inverse()]),
        (false, true) if pair.partition.splits(v) => Word(vec![x, vp]),
        _ => Word::letter(vp),
    }
}

/// An automorphism, stored both as generator images and as a word in
/// elementary moves. The moves are listed in application order, so the
/// automorphism equals `moves[k-1] ∘ … ∘ moves[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaagAutomorphism {
    images: Vec<Word>,
    moves: Vec<ElementaryMove>,
}

/// Substitute `images` into `w` and normalize.
fn substitute(g: &DefiningGraph, images: &[Word], w: &Word) -> Word {
    let mut letters = Vec::new();
    for x in w.letters() {
        let img = &images[x.vertex];
        if x.positive {
            letters.extend_from_slice(img.letters());
        } else {
            letters.extend(img.letters().iter().rev().map(|y| y.inverse()));
        }
    }
    normal_form(g, &Word(letters))
}

impl RaagAutomorphism {
    pub fn identity(g: &DefiningGraph) -> Self {
        RaagAutomorphism {
            images: (0..g.vertex_count()).map(|v| Word::letter(Literal::pos(v))).collect(),
            moves: Vec::new(),
        }
    }

    /// The composite of `moves`, applied in the given order.
    pub fn from_moves(g: &DefiningGraph, moves: Vec<ElementaryMove>) -> Self {
        let mut images: Vec<Word> = Self::identity(g).images;
        for mv in &moves {
            let step: Vec<Word> = (0..g.vertex_count()).map(|v| mv.image(g, v)).collect();
            images = images.iter().map(|w| substitute(g, &step, w)).collect();
        }
        RaagAutomorphism { images, moves }
    }

    pub fn from_move(g: &DefiningGraph, mv: ElementaryMove) -> Self {
        Self::from_moves(g, vec![mv])
    }

    /// Build from generator images alone, recovering a move word by greedy
    /// length reduction. Fails if the map is not a homomorphism or if no
    /// factorization into untwisted elementary moves is found.
    pub fn from_images(g: &DefiningGraph, images: Vec<Word>) -> Result<Self> {
        if images.len() != g.vertex_count() {
            return Err(Error::InvalidAutomorphism("one image per vertex is required".into()));
        }
        let images: Vec<Word> = images.iter().map(|w| normal_form(g, w)).collect();
        check_homomorphism(g, &images)?;
        let moves = factorize(g, &images)?;
        let a = Self::from_moves(g, moves);
        debug_assert_eq!(a.images, images);
        Ok(a)
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, v: usize) -> &Word {
        &self.images[v]
    }

    pub fn moves(&self) -> &[ElementaryMove] {
        &self.moves
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, w)| w.letters() == [Literal::pos(v)])
    }

    pub fn apply(&self, g: &DefiningGraph, w: &Word) -> Word {
        substitute(g, &self.images, w)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, g: &DefiningGraph, other: &RaagAutomorphism) -> RaagAutomorphism {
        let images = other.images.iter().map(|w| self.apply(g, w)).collect();
        let mut moves = other.moves.clone();
        moves.extend(self.moves.iter().cloned());
        RaagAutomorphism { images, moves }
    }

    pub fn invert(&self, g: &DefiningGraph) -> RaagAutomorphism {
        let moves: Vec<ElementaryMove> = self.moves.iter().rev().map(|m| m.inverse(g)).collect();
        RaagAutomorphism::from_moves(g, moves)
    }

    /// Each generator maps to a conjugate of a signed generator, bijectively.
    pub fn is_symmetric(&self, g: &DefiningGraph) -> bool {
        let mut hit = 0u64;
        for w in &self.images {
            let c = cyclic_reduce(g, w);
            if c.len() != 1 {
                return false;
            }
            hit |= 1 << c.letters()[0].vertex;
        }
        hit == g.all_vertices()
    }

    pub fn to_text(&self, g: &DefiningGraph) -> String {
        let mut s = String::new();
        for (v, w) in self.images.iter().enumerate() {
            let _ = writeln!(s, "{} -> {}", g.name(v), w.display(g));
        }
        for mv in &self.moves {
            let _ = writeln!(s, "move: {}", mv.to_text(g));
        }
        s
    }

    /// Images only, one `v -> w` per line.
    pub fn images_text(&self, g: &DefiningGraph) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(v, w)| format!("{} -> {}", g.name(v), w.display(g)))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Parse the automorphism file format. When move lines are present they
    /// must compose to the listed images.
    pub fn parse(g: &DefiningGraph, text: &str) -> Result<Self> {
        let mut images: Vec<Option<Word>> = vec![None; g.vertex_count()];
        let mut moves = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |e: Error| match e {
                Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
                other => other,
            };
            if let Some(rest) = line.strip_prefix("move:") {
                moves.push(ElementaryMove::parse(g, rest).map_err(at)?);
            } else if let Some((lhs, rhs)) = line.split_once("->") {
                let v = g.vertex(lhs.trim()).map_err(at)?;
                if images[v].is_some() {
                    return Err(Error::parse(line_no, format!("vertex `{}` given twice", g.name(v))));
                }
                images[v] = Some(Word::parse(g, rhs).map_err(at)?);
            } else {
                return Err(Error::parse(line_no, format!("unrecognised line `{line}`")));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(v, w)| w.ok_or_else(|| Error::parse(0, format!("no image for `{}`", g.name(v)))))
            .collect::<Result<Vec<_>>>()?;
        if moves.is_empty() {
            return Self::from_images(g, images);
        }
        let a = Self::from_moves(g, moves);
        let given: Vec<Word> = images.iter().map(|w| normal_form(g, w)).collect();
        if a.images != given {
            return Err(Error::InvalidAutomorphism("moves do not compose to the listed images".into()));
        }
        Ok(a)
    }
}

/// Images of adjacent generators must commute.
pub fn check_homomorphism(g: &DefiningGraph, images: &[Word]) -> Result<()> {
    for (u, v) in g.edges() {
        let (a, b) = (&images[u], &images[v]);
        let comm = a.concat(b).concat(&a.inverse()).concat(&b.inverse());
        if !normal_form(g, &comm).is_empty() {
            return Err(Error::InvalidAutomorphism(format!(
                "images of {} and {} do not commute",
                g.name(u),
                g.name(v)
            )));
        }
    }
    Ok(())
}

/// Every Whitehead pair of the graph, degenerate partitions included.
pub fn all_pairs(g: &DefiningGraph, symmetric_only: bool) -> Vec<WhiteheadPair> {
    let opts = EnumerateOptions { symmetric_only, allow_degenerate: true };
    let mut parts: Vec<WhiteheadPartition> =
        (0..g.vertex_count()).flat_map(|v| crate::partitions::enumerate_partitions(g, v, opts)).collect();
    parts.sort();
    parts.dedup();
    let mut pairs = Vec::new();
    for p in parts {
        for v in mask_iter(p.mx_mask()) {
            for x in [Literal::neg(v), Literal::pos(v)] {
                pairs.push(WhiteheadPair { partition: p, multiplier: x });
            }
        }
    }
    pairs
}

fn total_len(images: &[Word]) -> usize {
    images.iter().map(Word::len).sum()
}

fn factorize(g: &DefiningGraph, images: &[Word]) -> Result<Vec<ElementaryMove>> {
    let pairs = all_pairs(g, false);
    let n = g.vertex_count();
    let mut cur = images.to_vec();
    // Moves applied on the left of the input: cur = μ_k ∘ … ∘ μ_1 ∘ α.
    let mut applied: Vec<ElementaryMove> = Vec::new();
    while total_len(&cur) > n {
        let mut best: Option<(usize, Vec<Word>, ElementaryMove)> = None;
        for pair in &pairs {
            let step: Vec<Word> = (0..n).map(|v| whitehead_image(g, pair, v)).collect();
            let next: Vec<Word> = cur.iter().map(|w| substitute(g, &step, w)).collect();
            let len = total_len(&next);
            if len < total_len(&cur) && best.as_ref().is_none_or(|(l, _, _)| len < *l) {
                best = Some((len, next, ElementaryMove::Whitehead(*pair)));
            }
        }
        match best {
            Some((_, next, mv)) => {
                cur = next;
                applied.push(mv);
            }
            None => {
                return Err(Error::InvalidAutomorphism(
                    "images could not be reduced to a signed permutation by Whitehead moves".into(),
                ))
            }
        }
    }
    // cur is now a signed permutation ω, and α = μ_1⁻¹ ∘ … ∘ μ_k⁻¹ ∘ ω.
    let mut perm = vec![0; n];
    let mut omega_moves = Vec::new();
    for (v, w) in cur.iter().enumerate() {
        if w.len() != 1 {
            return Err(Error::InvalidAutomorphism("a generator has trivial image".into()));
        }
        let x = w.letters()[0];
        perm[v] = x.vertex;
        if !x.positive {
            omega_moves.push(ElementaryMove::Inversion(v));
        }
    }
    check_symmetry(g, &perm)?;
    if perm.iter().enumerate().any(|(v, &w)| v != w) {
        omega_moves.push(ElementaryMove::Symmetry(perm));
    }
    let mut moves = omega_moves;
    moves.extend(applied.iter().rev().map(|m| m.inverse(g)));
    Ok(moves)
}

/// The partial conjugation of the component `component` (a vertex mask) of
/// `Γ ∖ st(m)` by `m`.
pub fn partial_conjugation(g: &DefiningGraph, m: usize, component: u64) -> Result<RaagAutomorphism> {
    if !g.vertex_components_outside_star(m).contains(&component) {
        return Err(Error::Precondition("not a component of the complement of the star".into()));
    }
    let side = LitSet::doubled(component).union(LitSet::singleton(Literal::pos(m)));
    let other = g.all_literals().difference(side).difference(LitSet::doubled(g.link_mask(m)));
    let p = WhiteheadPartition::new(g, m, side, other)?;
    let pair = WhiteheadPair::new(p, Literal::pos(m))?;
    Ok(RaagAutomorphism::from_move(g, ElementaryMove::Whitehead(pair)))
}

pub fn whitehead_auto(g: &DefiningGraph, pair: &WhiteheadPair) -> RaagAutomorphism {
    RaagAutomorphism::from_move(g, ElementaryMove::Whitehead(*pair))
}

/// Conjugation `v ↦ x v x⁻¹` by a word `x`, with a move word.
pub fn inner(g: &DefiningGraph, x: &Word) -> RaagAutomorphism {
    let mut a = RaagAutomorphism::identity(g);
    for &y in x.letters().iter().rev() {
        a = conjugation_by_letter(g, y).compose(g, &a);
    }
    a
}

fn conjugation_by_letter(g: &DefiningGraph, x: Literal) -> RaagAutomorphism {
    let link = LitSet::doubled(g.link_mask(x.vertex));
    let far = LitSet::singleton(x.inverse());
    let near = g.all_literals().difference(link).difference(far);
    if near.len() == 1 {
        // x is central; conjugation by it is trivial.
        return RaagAutomorphism::identity(g);
    }
    let p = WhiteheadPartition::new(g, x.vertex, near, far).expect("one side is a single base literal");
    let pair = WhiteheadPair::new(p, x).expect("base is split");
    RaagAutomorphism::from_move(g, ElementaryMove::Whitehead(pair))
}

/// Peel `h` as `s · r · t` with `s` in the subgroup on `left` and `t` in the
/// subgroup on `right`, greedily. Returns `(s, r, t)`.
fn peel_double_coset(g: &DefiningGraph, h: &Word, left: u64, right: u64) -> (Word, Word, Word) {
    let mut r: Vec<Literal> = normal_form(g, h).0;
    let mut s = Vec::new();
    let mut t = Vec::new();
    loop {
        let mut changed = false;
        while let Some(i) = front_movable(g, &r).into_iter().find(|&i| left >> r[i].vertex & 1 == 1) {
            s.push(r.remove(i));
            changed = true;
        }
        while let Some(i) = back_movable(g, &r).into_iter().find(|&i| right >> r[i].vertex & 1 == 1) {
            t.insert(0, r.remove(i));
            changed = true;
        }
        if !changed {
            break;
        }
    }
    (Word(s), Word(r), Word(t))
}

/// If `a` is inner, the element `x` with `a(v) = x v x⁻¹` for every `v`,
/// chosen of minimal length.
pub fn inner_conjugator(g: &DefiningGraph, a: &RaagAutomorphism) -> Option<Word> {
    // The solutions form a coset x·A_S of a special subgroup.
    let mut x = Word::empty();
    let mut s_mask = g.all_vertices();
    for v in 0..g.vertex_count() {
        let (p, c) = cyclic_reduce_with_conjugator(g, a.image(v));
        if c.letters() != [Literal::pos(v)] {
            return None;
        }
        let t_mask = g.star_mask(v);
        let h = normal_form(g, &x.inverse().concat(&p));
        let (s, r, _) = peel_double_coset(g, &h, s_mask, t_mask);
        if !r.is_empty() {
            return None;
        }
        x = normal_form(g, &x.concat(&s));
        s_mask &= t_mask;
    }
    let (_, r, _) = peel_double_coset(g, &x, 0, s_mask);
    let x = r;
    let ok = (0..g.vertex_count()).all(|v| {
        let conj = x.concat(&Word::letter(Literal::pos(v))).concat(&x.inverse());
        normal_form(g, &conj) == *a.image(v)
    });
    debug_assert!(ok, "coset intersection produced a wrong conjugator");
    ok.then_some(x)
}

pub fn is_inner(g: &DefiningGraph, a: &RaagAutomorphism) -> bool {
    inner_conjugator(g, a).is_some()
}

/// Decide whether `a` and `b` agree in the outer automorphism group. On
/// success returns `x` with `a(v) = x b(v) x⁻¹` for every `v`.
pub fn outer_equal(g: &DefiningGraph, a: &RaagAutomorphism, b: &RaagAutomorphism) -> Option<Word> {
    if a.images == b.images {
        return Some(Word::empty());
    }
    let c = b.invert(g).compose(g, a);
    let h = inner_conjugator(g, &c)?;
    let x = b.apply(g, &h);
    debug_assert!((0..g.vertex_count()).all(|v| {
        normal_form(g, &x.concat(b.image(v)).concat(&x.inverse())) == *a.image(v)
    }));
    Some(x)
}

/// All edge-preserving permutations of the vertices, in lexicographic order.
pub fn graph_symmetries(g: &DefiningGraph) -> Vec<Vec<usize>> {
    fn rec(g: &DefiningGraph, perm: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) {
        let n = g.vertex_count();
        let v = perm.len();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for w in 0..n {
            if used >> w & 1 == 1 || g.link_mask(v).count_ones() != g.link_mask(w).count_ones() {
                continue;
            }
            if (0..v).all(|u| g.adjacent(u, v) == g.adjacent(perm[u], w)) {
                perm.push(w);
                rec(g, perm, used | 1 << w, out);
                perm.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, &mut Vec::new(), 0, &mut out);
    out
}

/// An element of the finite group of signed graph symmetries, `v ↦ perm[v]^{±1}`
/// with the sign negative where `inversions` has bit `v` set.
pub fn omega_element(g: &DefiningGraph, perm: &[usize], inversions: u64) -> RaagAutomorphism {
    let mut moves: Vec<ElementaryMove> = mask_iter(inversions).map(ElementaryMove::Inversion).collect();
    if perm.iter().enumerate().any(|(v, &w)| v != w) {
        moves.push(ElementaryMove::Symmetry(perm.to_vec()));
    }
    RaagAutomorphism::from_moves(g, moves)
}

/// Every element of the signed symmetry group.
pub fn omega_elements(g: &DefiningGraph) -> Vec<RaagAutomorphism> {
    let syms = graph_symmetries(g);
    let mut out = Vec::with_capacity(syms.len() << g.vertex_count());
    for perm in &syms {
        for inv in 0..=g.all_vertices() {
            out.push(omega_element(g, perm, inv));
        }
    }
    out
}

/// Shorter images first, then letters by vertex with positive literals first,
/// so that the identity is the least element of its class.
fn image_key(images: &[Word]) -> Vec<(usize, Vec<(usize, bool)>)> {
    images
        .iter()
        .map(|w| (w.len(), w.letters().iter().map(|x| (x.vertex, !x.positive)).collect()))
        .collect()
}

/// The least representative of `{a ∘ ω}` over signed symmetries `ω`, in the
/// order comparing images vertex by vertex.
pub fn canon_mod_omega(g: &DefiningGraph, a: &RaagAutomorphism) -> RaagAutomorphism {
    let mut best: Option<RaagAutomorphism> = None;
    for omega in omega_elements(g) {
        let cand = a.compose(g, &omega);
        if best.as_ref().is_none_or(|b| image_key(&cand.images) < image_key(&b.images)) {
            best = Some(cand);
        }
    }
    best.expect("the signed symmetry group is nonempty")
}

/// Conjugacy length of each generator image.
pub fn image_conj_lengths(g: &DefiningGraph, a: &RaagAutomorphism) -> Vec<usize> {
    a.images.iter().map(|w| conj_length(g, w)).collect()
}
