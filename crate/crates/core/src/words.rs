//! Words in the right-angled Artin group: reduction, normal forms, cyclic
//! reduction and canonical conjugacy-class representatives.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, Literal};

/// A finite sequence of literals. Words carry no graph; every operation that
/// depends on commutation takes the ambient graph explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Literal>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Literal) -> Self {
        Word(vec![x])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Literal] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| x.inverse()).collect())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parse the word syntax: whitespace-separated literals, or `1` for the empty word.
    pub fn parse(g: &DefiningGraph, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::empty());
        }
        if text.is_empty() {
            return Err(Error::parse(0, "empty word must be written `1`"));
        }
        text.split_whitespace().map(|t| g.literal(t)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn display<'a>(&'a self, g: &'a DefiningGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph: g }
    }

    pub fn to_text(&self, g: &DefiningGraph) -> String {
        self.display(g).to_string()
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a DefiningGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, x) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x.display(self.graph))?;
        }
        Ok(())
    }
}

/// Append `x` to a reduced word, keeping it reduced.
fn push_reduced(g: &DefiningGraph, out: &mut Vec<Literal>, x: Literal) {
    let inv = x.inverse();
    for j in (0..out.len()).rev() {
        let y = out[j];
        if y == inv {
            out.remove(j);
            return;
        }
        if !g.commute(x, y) {
            break;
        }
    }
    out.push(x);
}

/// Cancel every pair that can be brought together by commutations.
pub fn reduce(g: &DefiningGraph, letters: &[Literal]) -> Vec<Literal> {
    let mut out = Vec::with_capacity(letters.len());
    for &x in letters {
        push_reduced(g, &mut out, x);
    }
    out
}

/// Whether a word is reduced, i.e. has minimal length for its group element.
pub fn is_reduced(g: &DefiningGraph, w: &Word) -> bool {
    reduce(g, &w.0).len() == w.len()
}

/// Lex-least linearization of the trace of an already reduced sequence.
fn linearize(g: &DefiningGraph, letters: &[Literal]) -> Vec<Literal> {
    let n = letters.len();
    let mut emitted = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if emitted[i] {
                continue;
            }
            let blocked = (0..i).any(|j| !emitted[j] && !g.commute(letters[i], letters[j]));
            if blocked {
                continue;
            }
            if best.is_none_or(|b| letters[i] < letters[b]) {
                best = Some(i);
            }
        }
        let b = best.expect("some letter is always available");
        emitted[b] = true;
        out.push(letters[b]);
    }
    out
}

/// The canonical reduced spelling of the group element represented by `w`.
pub fn normal_form(g: &DefiningGraph, w: &Word) -> Word {
    Word(linearize(g, &reduce(g, &w.0)))
}

/// Normal form of the product `a b`.
pub fn multiply(g: &DefiningGraph, a: &Word, b: &Word) -> Word {
    normal_form(g, &a.concat(b))
}

/// Whether two words represent the same group element.
pub fn equal_elements(g: &DefiningGraph, a: &Word, b: &Word) -> bool {
    normal_form(g, a) == normal_form(g, b)
}

/// Letters of a reduced word that commute past everything before them.
pub fn front_movable(g: &DefiningGraph, w: &[Literal]) -> Vec<usize> {
    (0..w.len()).filter(|&i| (0..i).all(|j| g.commute(w[i], w[j]))).collect()
}

/// Letters of a reduced word that commute past everything after them.
pub fn back_movable(g: &DefiningGraph, w: &[Literal]) -> Vec<usize> {
    (0..w.len()).filter(|&i| (i + 1..w.len()).all(|j| g.commute(w[i], w[j]))).collect()
}

/// Cyclically reduce `w`, returning `(p, c)` with `w = p c p⁻¹` as group
/// elements, `c` cyclically reduced and in normal form.
pub fn cyclic_reduce_with_conjugator(g: &DefiningGraph, w: &Word) -> (Word, Word) {
    let mut cur = reduce(g, &w.0);
    let mut prefix = Vec::new();
    'outer: loop {
        let fronts = front_movable(g, &cur);
        let backs = back_movable(g, &cur);
        for &i in &fronts {
            for &j in &backs {
                if i != j && cur[j] == cur[i].inverse() {
                    prefix.push(cur[i]);
                    let (lo, hi) = (i.min(j), i.max(j));
                    cur.remove(hi);
                    cur.remove(lo);
                    continue 'outer;
                }
            }
        }
        break;
    }
    (normal_form(g, &Word(prefix)), Word(linearize(g, &cur)))
}

/// A cyclically reduced word, in normal form, conjugate to `w`.
pub fn cyclic_reduce(g: &DefiningGraph, w: &Word) -> Word {
    cyclic_reduce_with_conjugator(g, w).1
}

pub fn is_cyclically_reduced(g: &DefiningGraph, w: &Word) -> bool {
    is_reduced(g, w) && cyclic_reduce(g, w).len() == w.len()
}

/// Minimal word length over the conjugacy class of `w`.
pub fn conj_length(g: &DefiningGraph, w: &Word) -> usize {
    cyclic_reduce(g, w).len()
}

/// A conjugacy class, represented by its canonical cyclically reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicClass {
    pub rep: Word,
}

impl CyclicClass {
    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_empty()
    }
}

impl PartialOrd for CyclicClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rep.len(), &self.rep).cmp(&(other.rep.len(), &other.rep))
    }
}

/// Canonical representative of the conjugacy class of `w`: the least normal
/// form reachable from a cyclic reduction by cyclic shuffles.
pub fn conj_canon(g: &DefiningGraph, w: &Word) -> CyclicClass {
    let start = cyclic_reduce(g, w);
    if start.len() <= 1 {
        return CyclicClass { rep: start };
    }
    let mut seen: HashSet<Vec<Literal>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.0.clone());
    queue.push_back(start.0);
    while let Some(cur) = queue.pop_front() {
        let mut next = Vec::new();
        for i in front_movable(g, &cur) {
            let mut v = cur.clone();
            let x = v.remove(i);
            v.push(x);
            next.push(v);
        }
        for i in back_movable(g, &cur) {
            let mut v = cur.clone();
            let x = v.remove(i);
            v.insert(0, x);
            next.push(v);
        }
        for v in next {
            let nf = linearize(g, &v);
            if seen.insert(nf.clone()) {
                queue.push_back(nf);
            }
        }
    }
    let rep = seen.into_iter().min().expect("closure contains the start word");
    CyclicClass { rep: Word(rep) }
}

/// Whether two words are conjugate.
pub fn conjugate(g: &DefiningGraph, a: &Word, b: &Word) -> bool {
    conj_canon(g, a) == conj_canon(g, b)
}

/// All nontrivial conjugacy classes of length at most `max_len`, sorted by
/// length and then representative.
pub fn enumerate_classes(g: &DefiningGraph, max_len: usize) -> Vec<CyclicClass> {
    let lits: Vec<Literal> = g.all_literals().iter().collect();
    let mut found: BTreeSet<CyclicClass> = BTreeSet::new();
    let mut stack: Vec<Vec<Literal>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if !w.is_empty() {
            let c = conj_canon(g, &Word(w.clone()));
            if c.len() == w.len() {
                found.insert(c);
            }
        }
        if w.len() == max_len {
            continue;
        }
        for &x in &lits {
            let mut v = w.clone();
            push_reduced(g, &mut v, x);
            if v.len() == w.len() + 1 {
                stack.push(v);
            }
        }
    }
    found.into_iter().collect()
}
