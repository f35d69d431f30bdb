//! Small graphs up to isomorphism.

use crate::graph::DefiningGraph;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Edge masks of all graphs on `n` vertices, one per isomorphism class,
/// each the least mask in its class.
pub fn canonical_edge_masks(n: usize) -> Vec<u32> {
    assert!(n <= 7, "corpus generation is limited to 7 vertices");
    let pairs = pair_index(n);
    let mut slot = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        slot[u][v] = i;
        slot[v][u] = i;
    }
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| slot[p[u]][p[v]]).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let least = maps.iter().all(|m| {
            let mut image = 0u32;
            for (i, &j) in m.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    image |= 1 << j;
                }
            }
            image >= mask
        });
        if least {
            out.push(mask);
        }
    }
    out
}

fn build(n: usize, mask: u32) -> DefiningGraph {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let edges: Vec<(usize, usize)> = pair_index(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    DefiningGraph::new(names, &edges).expect("valid corpus graph")
}

pub fn is_connected(g: &DefiningGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for v in crate::graph::mask_iter(frontier) {
            next |= g.link_mask(v);
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == g.all_vertices()
}

/// All graphs with `1..=max_n` vertices up to isomorphism, vertices named
/// `a`, `b`, ...
pub fn all_graphs(max_n: usize) -> Vec<DefiningGraph> {
    (1..=max_n)
        .flat_map(|n| canonical_edge_masks(n).into_iter().map(move |m| build(n, m)))
        .collect()
}

pub fn connected_graphs(max_n: usize) -> Vec<DefiningGraph> {
    all_graphs(max_n).into_iter().filter(is_connected).collect()
}
