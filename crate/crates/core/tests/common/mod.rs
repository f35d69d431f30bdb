//! Independent oracles: plain letter-sequence manipulation with no use of
//! the library's word algorithms.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use raag_spine::{DefiningGraph, Literal, WhiteheadPair, Word};

pub type Seq = Vec<(usize, bool)>;

pub fn seq(w: &Word) -> Seq {
    w.letters().iter().map(|l| (l.vertex, l.positive)).collect()
}

pub fn word(s: &Seq) -> Word {
    Word(s.iter().map(|&(v, p)| Literal { vertex: v, positive: p }).collect())
}

pub fn inv(s: &Seq) -> Seq {
    s.iter().rev().map(|&(v, p)| (v, !p)).collect()
}

fn commutes(g: &DefiningGraph, a: usize, b: usize) -> bool {
    a == b || g.adjacent(a, b)
}

/// Cancel `x ... x⁻¹` pairs whose interior commutes with `x` until none remain.
pub fn free_reduce(g: &DefiningGraph, s: &Seq) -> Seq {
    let mut s = s.clone();
    'outer: loop {
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[j].0 == s[i].0 && s[j].1 != s[i].1 {
                    s.remove(j);
                    s.remove(i);
                    continue 'outer;
                }
                if !commutes(g, s[i].0, s[j].0) {
                    break;
                }
            }
        }
        return s;
    }
}

/// Least word, in sequence order, among all rearrangements by swaps of
/// adjacent commuting letters.
pub fn normal_form(g: &DefiningGraph, s: &Seq) -> Seq {
    let r = free_reduce(g, s);
    let mut seen = BTreeSet::from([r.clone()]);
    let mut queue = VecDeque::from([r]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            if w[i].0 != w[i + 1].0 && g.adjacent(w[i].0, w[i + 1].0) {
                let mut n = w.clone();
                n.swap(i, i + 1);
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
    }
    seen.into_iter().next().unwrap()
}

/// Length of a cyclically reduced conjugate: after reduction, delete pairs
/// `x`, `x⁻¹` where `x` commutes with everything before it and `x⁻¹` with
/// everything after it.
pub fn cyclic_length(g: &DefiningGraph, s: &Seq) -> usize {
    let mut s = free_reduce(g, s);
    'outer: loop {
        for i in 0..s.len() {
            if !s[..i].iter().all(|y| commutes(g, y.0, s[i].0)) {
                continue;
            }
            for j in i + 1..s.len() {
                if s[j].0 == s[i].0 && s[j].1 != s[i].1 && s[j + 1..].iter().all(|y| commutes(g, y.0, s[j].0)) {
                    s.remove(j);
                    s.remove(i);
                    s = free_reduce(g, &s);
                    continue 'outer;
                }
            }
        }
        return s.len();
    }
}

/// Images of the generators under the Whitehead automorphism for a pair,
/// written out from the side-membership rules.
pub fn whitehead_images(g: &DefiningGraph, pair: &WhiteheadPair) -> Vec<Seq> {
    let side = pair.positive_side();
    let x = pair.multiplier;
    let xs = (x.vertex, x.positive);
    let xi = (x.vertex, !x.positive);
    (0..g.vertex_count())
        .map(|v| {
            if v == x.vertex {
                return vec![(v, true)];
            }
            let p = side.contains(Literal::pos(v));
            let n = side.contains(Literal::neg(v));
            match (p, n) {
                (true, true) => vec![xs, (v, true), xi],
                (true, false) => vec![(v, true), xi],
                (false, true) => vec![xs, (v, true)],
                (false, false) => vec![(v, true)],
            }
        })
        .collect()
}

pub fn substitute(images: &[Seq], s: &Seq) -> Seq {
    s.iter()
        .flat_map(|&(v, p)| if p { images[v].clone() } else { inv(&images[v]) })
        .collect()
}

/// Images of the inverse automorphism: same partition with the multiplier's
/// two letters exchanged between sides.
pub fn whitehead_inverse_images(g: &DefiningGraph, pair: &WhiteheadPair) -> Vec<Seq> {
    whitehead_images(g, &pair.inverse(g))
}

/// Union-find over all elements of reduced length at most `bound`, joined by
/// conjugation with single letters. Returns a class id per normal form.
pub fn conjugacy_classes(g: &DefiningGraph, bound: usize) -> HashMap<Seq, usize> {
    let n = g.vertex_count();
    let letters: Vec<(usize, bool)> = (0..n).flat_map(|v| [(v, true), (v, false)]).collect();
    let mut ids: HashMap<Seq, usize> = HashMap::new();
    let mut frontier = vec![Seq::new()];
    ids.insert(Seq::new(), 0);
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut s = w.clone();
                s.push(l);
                let nf = normal_form(g, &s);
                if nf.len() == s.len() && !ids.contains_key(&nf) {
                    let id = ids.len();
                    ids.insert(nf.clone(), id);
                    next.push(nf);
                }
            }
        }
        frontier = next;
    }
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let elements: Vec<(Seq, usize)> = ids.iter().map(|(k, &v)| (k.clone(), v)).collect();
    for (w, id) in &elements {
        for &l in &letters {
            let mut s = vec![l];
            s.extend_from_slice(w);
            s.push((l.0, !l.1));
            let nf = normal_form(g, &s);
            if let Some(&other) = ids.get(&nf) {
                let (a, b) = (find(&mut parent, *id), find(&mut parent, other));
                parent[a] = b;
            }
        }
    }
    elements.into_iter().map(|(w, id)| (w, find(&mut parent, id))).collect()
}
