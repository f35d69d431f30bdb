mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use raag_spine::autos::whitehead_auto;
use raag_spine::corpus::{all_graphs, canonical_edge_masks, connected_graphs};
use raag_spine::norms::{candidate_pairs, minimize, norm_prefix, predicted_length};
use raag_spine::partitions::{adjacent, all_partitions, compatible};
use raag_spine::sample::{random_fold_marking, random_graph, random_symmetric_marking, random_word};
use raag_spine::spine::{
    abelian_generators, commute_combinatorial, commute_direct, compatibility_graph, in_kmin_length_one,
    local_explore, rank_report, symmetric_ranks, vcd_symout, DEFAULT_BUDGET,
};
use raag_spine::words::conj_canon;
use raag_spine::{DefiningGraph, Literal, MarkedSalvetti, NormContext, WhiteheadPair, WhiteheadPartition};

use common::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn edgeless(n: usize) -> DefiningGraph {
    DefiningGraph::new((0..n).map(|i| format!("x{i}")).collect(), &[]).unwrap()
}

fn complete(n: usize) -> DefiningGraph {
    let es: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    DefiningGraph::new((0..n).map(|i| format!("x{i}")).collect(), &es).unwrap()
}

fn leafy_triangle() -> Outcome {
    let g = DefiningGraph::parse("vertices: p q r s v\nedge: p q\nedge: q r\nedge: r s\nedge: q v\nedge: r v\n")
        .map_err(|e| e.to_string())?;
    let rep = g.order_report();
    let names = |m: u64| -> Vec<&str> { (0..g.vertex_count()).filter(|v| m >> v & 1 == 1).map(|v| g.name(v)).collect() };
    let maximal: u64 = rep.maximal.iter().map(|&v| 1u64 << v).sum();
    let v = g.vertex("v").unwrap();
    check(names(rep.principal_mask()) == ["q", "r", "v"], format!("principal {:?}", names(rep.principal_mask())))?;
    check(rep.is_principal(v) && maximal >> v & 1 == 0, "v should be principal and not maximal")?;
    Ok(format!("principal {:?}, maximal {:?}", names(rep.principal_mask()), names(maximal)))
}

fn path_and_point() -> Outcome {
    let g = DefiningGraph::parse("vertices: a b c d e\nedge: a b\nedge: b c\nedge: c d\n").unwrap();
    let part = |s: &str| WhiteheadPartition::parse(&g, s).map_err(|e| e.to_string());
    let p1 = part("( a c c^-1 d d^-1 | a^-1 e e^-1 | b b^-1 )")?;
    let p2 = part("( b e | b^-1 d d^-1 e^-1 | a a^-1 c c^-1 )")?;
    let p3 = part("( d a a^-1 b b^-1 e^-1 | d^-1 e | c c^-1 )")?;
    let flags = (p1.is_symmetric(), p2.is_symmetric(), p3.is_symmetric());
    check(flags == (true, false, false), format!("symmetric flags {flags:?}"))?;
    check(compatible(&g, &p1, &p2) && adjacent(&g, &p1, &p2), "P1, P2 should be compatible and adjacent")?;
    check(!compatible(&g, &p3, &p1) && !compatible(&g, &p3, &p2), "P3 should be compatible with neither")?;
    Ok("flags (true, false, false); P1~P2 adjacent; P3 isolated".into())
}

fn length_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut trials = 0;
    while trials < 1500 {
        let n = rng.gen_range(2..=5);
        let g = random_graph(&mut rng, n, 0.4);
        let pairs = candidate_pairs(&g, false);
        if pairs.is_empty() {
            continue;
        }
        let sigma = if rng.gen_bool(0.5) {
            MarkedSalvetti::identity(&g)
        } else {
            MarkedSalvetti::new(&g, random_symmetric_marking(&mut rng, &g, 2))
        };
        let len = rng.gen_range(1..=6);
        let class = conj_canon(&g, &random_word(&mut rng, &g, len));
        if class.is_trivial() {
            continue;
        }
        let pair = pairs[rng.gen_range(0..pairs.len())];
        check(pair.partition.mx_mask() >> pair.multiplier.vertex & 1 == 1, "multiplier outside mx")?;
        let predicted = predicted_length(&g, &sigma, &pair, &class);
        let pulled = seq(&sigma.pulled_back(&g, &class));
        let oracle = cyclic_length(&g, &substitute(&whitehead_inverse_images(&g, &pair), &pulled));
        let after = sigma.whitehead_move(&g, &pair).ell(&g, &class);
        check(
            predicted == oracle && after == oracle,
            format!(
                "graph {:?}: class {} pair {}: predicted {predicted}, oracle {oracle}, moved {after}",
                g.to_text(),
                class.rep.to_text(&g),
                pair.to_text(&g)
            ),
        )?;
        trials += 1;
    }
    Ok(format!("{trials} trials, 0 mismatches"))
}

fn commuting_criterion() -> Outcome {
    let mut checked = 0u64;
    for g in all_graphs(5) {
        let parts = all_partitions(&g, false);
        let mut pairs: Vec<WhiteheadPair> = Vec::new();
        for p in &parts {
            for m in 0..g.vertex_count() {
                if p.bases_mask() >> m & 1 == 1 {
                    pairs.push(WhiteheadPair::new(*p, Literal::pos(m)).unwrap());
                }
            }
        }
        let autos: Vec<_> = pairs.iter().map(|p| whitehead_auto(&g, p)).collect();
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let (m, n) = (pairs[i].multiplier.vertex, pairs[j].multiplier.vertex);
                if m == n || g.adjacent(m, n) {
                    continue;
                }
                let (a, b) = (&autos[i], &autos[j]);
                let direct = raag_spine::autos::outer_equal(&g, &a.compose(&g, b), &b.compose(&g, a)).is_some();
                let criterion = commute_combinatorial(&g, &pairs[i], &pairs[j]);
                check(
                    direct == criterion && direct == commute_direct(&g, &pairs[i], &pairs[j]),
                    format!("graph {:?}: {} vs {}", g.to_text(), pairs[i].to_text(&g), pairs[j].to_text(&g)),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs, 0 disagreements"))
}

fn connected_six() -> Vec<DefiningGraph> {
    connected_graphs(6)
}

fn symmetric_rank_equality(corpus: &[DefiningGraph]) -> Outcome {
    let counts: Vec<usize> = (1..=6).map(|n| canonical_edge_masks(n).len()).collect();
    check(counts == [1, 2, 4, 11, 34, 156], format!("corpus class counts {counts:?}"))?;
    check(corpus.len() == 1 + 1 + 2 + 6 + 21 + 112, format!("connected corpus size {}", corpus.len()))?;
    for g in corpus {
        let (all, principal) = symmetric_ranks(g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        check(all.is_valid(g) && principal.is_valid(g), "invalid witness")?;
        check(all.len() == principal.len(), format!("graph {:?}: {} vs {}", g.to_text(), all.len(), principal.len()))?;
    }
    Ok(format!("{} connected graphs, 0 exceptions", corpus.len()))
}

fn vcd_formula(corpus: &[DefiningGraph]) -> Outcome {
    let mut total = 0;
    for g in corpus {
        let vcd = vcd_symout(g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let (sym, _) = symmetric_ranks(g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let gens = abelian_generators(g, DEFAULT_BUDGET).map_err(|e| format!("graph {:?}: {e}", g.to_text()))?;
        check(vcd == sym.len() && gens.len() == vcd, format!("graph {:?}: vcd {vcd}, gens {}", g.to_text(), gens.len()))?;
        let autos: Vec<_> = gens.iter().map(|p| whitehead_auto(g, p)).collect();
        for i in 0..autos.len() {
            for j in i + 1..autos.len() {
                let ab = autos[i].compose(g, &autos[j]);
                let ba = autos[j].compose(g, &autos[i]);
                check(raag_spine::autos::outer_equal(g, &ab, &ba).is_some(), "generators do not commute")?;
            }
        }
        total += vcd;
    }
    Ok(format!("{} graphs, 0 exceptions, total rank {total}", corpus.len()))
}

/// Largest clique by plain exhaustive extension of every clique.
fn brute_max_clique(adj: &[fixedbitset::FixedBitSet]) -> usize {
    fn grow(adj: &[fixedbitset::FixedBitSet], clique: &mut Vec<usize>, from: usize) -> usize {
        let mut best = clique.len();
        for v in from..adj.len() {
            if clique.iter().all(|&u| adj[u].contains(v)) {
                clique.push(v);
                best = best.max(grow(adj, clique, v + 1));
                clique.pop();
            }
        }
        best
    }
    grow(adj, &mut Vec::new(), 0)
}

fn free_group_values() -> Outcome {
    let mut summary = Vec::new();
    for n in 3..=5 {
        let g = edgeless(n);
        let r = rank_report(&g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        check(
            r.m_sym_all == n - 2 && r.m_all == 2 * n - 3,
            format!("E_{n}: MΣ(V)={} M(V)={}", r.m_sym_all, r.m_all),
        )?;
        if n <= 4 {
            for sym in [false, true] {
                let parts = all_partitions(&g, sym);
                let brute = brute_max_clique(&compatibility_graph(&g, &parts));
                let exact = if sym { r.m_sym_all } else { r.m_all };
                check(brute == exact, format!("E_{n} brute force {brute} vs {exact}"))?;
            }
        }
        summary.push(format!("E_{n}: MΣ(V)={} M(V)={}", r.m_sym_all, r.m_all));
    }
    Ok(summary.join("; "))
}

fn complete_graphs() -> Outcome {
    for n in 1..=6 {
        let g = complete(n);
        check(all_partitions(&g, false).is_empty(), format!("K_{n} has partitions"))?;
        let r = rank_report(&g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        check((r.m_all, r.m_principal, r.m_sym_all, r.m_sym_principal) == (0, 0, 0, 0), format!("K_{n} ranks"))?;
        check(vcd_symout(&g, DEFAULT_BUDGET).unwrap() == 0, format!("K_{n} vcd"))?;
        let m = local_explore(&g, &MarkedSalvetti::identity(&g), 2, false, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        check(m.nodes.len() == 1 && m.edges.is_empty(), format!("K_{n} move graph"))?;
    }
    Ok("K_1..K_6: no partitions, ranks 0, vcd 0, one node".into())
}

fn floor_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let path_and_point = DefiningGraph::parse("vertices: a b c d e\nedge: a b\nedge: b c\nedge: c d\n").unwrap();
    let pick = |rng: &mut ChaCha8Rng| -> DefiningGraph {
        match rng.gen_range(0..3) {
            0 => path_and_point.clone(),
            1 => edgeless(rng.gen_range(2..=4)),
            _ => {
                let n = rng.gen_range(2..=5);
                random_graph(rng, n, 0.4)
            }
        }
    };
    for _ in 0..200 {
        let g = pick(&mut rng);
        let sigma = MarkedSalvetti::new(&g, random_symmetric_marking(&mut rng, &g, 8));
        let ctx = NormContext::length_one(&g, 3);
        let w = norm_prefix(&g, &sigma, &ctx).w_entry;
        check(w == 2 * g.vertex_count() && in_kmin_length_one(&g, &sigma), format!("symmetric marking norm {w}"))?;
    }
    let mut steps_total = 0;
    let mut done = 0;
    while done < 200 {
        let g = pick(&mut rng);
        let Some(a) = random_fold_marking(&mut rng, &g, 8) else { continue };
        let sigma = MarkedSalvetti::new(&g, a);
        let ctx = NormContext::length_one(&g, 3);
        let start = norm_prefix(&g, &sigma, &ctx);
        let (fin, steps) = minimize(&g, &sigma, &ctx).map_err(|e| e.to_string())?;
        let mut prev = start;
        for s in &steps {
            check(s.prefix < prev && s.prefix.w_entry <= prev.w_entry, "norm prefix did not decrease")?;
            check(norm_prefix(&g, &fin, &ctx) <= s.prefix, "final prefix above a step")?;
            prev = s.prefix.clone();
        }
        steps_total += steps.len();
        done += 1;
    }
    Ok(format!("200 symmetric markings at the floor; 200 fold markings minimized in {steps_total} steps"))
}

fn word_oracle() -> Outcome {
    let mut words_checked = 0usize;
    for g in all_graphs(4) {
        let classes = conjugacy_classes(&g, 5);
        let mut canon_of_class: HashMap<usize, raag_spine::CyclicClass> = HashMap::new();
        let mut class_of_canon: HashMap<raag_spine::CyclicClass, usize> = HashMap::new();
        let n = g.vertex_count();
        let letters: Vec<(usize, bool)> = (0..n).flat_map(|v| [(v, true), (v, false)]).collect();
        let mut level = vec![Seq::new()];
        for len in 0..=5 {
            for s in &level {
                let class = classes[&normal_form(&g, s)];
                let canon = conj_canon(&g, &word(s));
                let a = canon_of_class.entry(class).or_insert_with(|| canon.clone());
                check(*a == canon, format!("graph {:?}: {:?} splits a conjugacy class", g.to_text(), s))?;
                let b = class_of_canon.entry(canon).or_insert(class);
                check(*b == class, format!("graph {:?}: {:?} merges conjugacy classes", g.to_text(), s))?;
                words_checked += 1;
            }
            if len < 5 {
                level = level
                    .iter()
                    .flat_map(|s| letters.iter().map(move |&l| {
                        let mut t = s.clone();
                        t.push(l);
                        t
                    }))
                    .collect();
            }
        }
    }
    Ok(format!("{words_checked} words, 0 disagreements"))
}

fn main() {
    let corpus = connected_six();
    let criteria: Vec<Criterion> = vec![
        ("1 leafy triangle principal set", Duration::from_secs(1), Box::new(leafy_triangle)),
        ("2 path-and-point partitions", Duration::from_secs(1), Box::new(path_and_point)),
        ("3 length-change formula", Duration::from_secs(60), Box::new(length_formula)),
        ("4 commuting criterion", Duration::from_secs(600), Box::new(commuting_criterion)),
        ("5 symmetric principal rank", Duration::from_secs(1800), Box::new(|| symmetric_rank_equality(&corpus))),
        ("6 vcd and commuting generators", Duration::from_secs(1800), Box::new(|| vcd_formula(&corpus))),
        ("7 free group ranks", Duration::from_secs(300), Box::new(free_group_values)),
        ("8 complete graphs", Duration::from_secs(1), Box::new(complete_graphs)),
        ("9 floor law and descent", Duration::from_secs(300), Box::new(floor_law)),
        ("10 word oracle", Duration::from_secs(600), Box::new(word_oracle)),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
