use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use raag_spine::norms::{candidate_pairs, minimize, norm_prefix, parse_classes, predicted_length};
use raag_spine::partitions::{enumerate_partitions, EnumerateOptions};
use raag_spine::sample::{random_fold_marking, random_symmetric_marking, random_word};
use raag_spine::spine::{in_kmin_length_one, local_explore, rank_report, vcd_symout, CompatibleSet};
use raag_spine::words::{conj_canon, conjugate};
use raag_spine::{DefiningGraph, Error, MarkedSalvetti, NormContext, RaagAutomorphism};

#[derive(Parser, Debug)]
#[command(name = "raagspine", version, about = "Whitehead partitions and symmetric spine ranks of RAAGs")]
struct Cli {
    /// Defining graph file.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 3)]
    tail_bound: usize,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertices, links, domination classes, principal and maximal vertices.
    GraphInfo,
    /// Partitions based at a vertex.
    Partitions {
        base: String,
        #[arg(long)]
        symmetric: bool,
    },
    /// Maximum compatible set sizes with witnesses.
    Ranks,
    /// Virtual cohomological dimension of the symmetric outer automorphism group.
    Vcd,
    /// Reduce a marking by norm-decreasing Whitehead moves.
    Minimize {
        #[arg(long)]
        auto: PathBuf,
        #[arg(long)]
        classes: PathBuf,
    },
    /// Breadth-first neighbourhood of the identity marking under Whitehead moves.
    Explore {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Randomized invariant checks on the given graph.
    Selftest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("--graph is required")]
    MissingGraph,
    #[error("selftest failed: {0}")]
    Selftest(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let domain = |e: &Error| match e {
            Error::Parse { .. } | Error::UnknownVertex(_) | Error::TooManyVertices(_) => 1,
            Error::BudgetExceeded(_) | Error::TieAtBound(_) | Error::Undecided(_) => 3,
            _ => 2,
        };
        match self {
            CliError::Io { .. } | CliError::MissingGraph => 1,
            CliError::Input { source, .. } => domain(source),
            CliError::Domain(e) => domain(e),
            CliError::Selftest(_) => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> raag_spine::Result<T>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Input { path: path.display().to_string(), source })
}

fn names(g: &DefiningGraph, vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| g.name(v)).collect::<Vec<_>>().join(" ")
}

fn graph_info(g: &DefiningGraph) -> String {
    let rep = g.order_report();
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", g.names().join(" "));
    let edges: Vec<String> = g.edges().iter().map(|&(u, v)| format!("{}-{}", g.name(u), g.name(v))).collect();
    let _ = writeln!(s, "edges: {}", edges.join(" "));
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "link {}: {}", g.name(v), names(g, g.link(v)));
    }
    let classes = |cs: &[Vec<usize>]| cs.iter().map(|c| format!("{{{}}}", names(g, c.iter().copied()))).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "classes: {}", classes(&rep.classes));
    let _ = writeln!(s, "link classes: {}", classes(&rep.link_classes));
    let _ = writeln!(s, "star classes: {}", classes(&rep.star_classes));
    let _ = writeln!(s, "principal: {}", names(g, rep.principal.iter().copied()));
    let _ = writeln!(s, "maximal: {}", names(g, rep.maximal.iter().copied()));
    s
}

fn witness_text(g: &DefiningGraph, label: &str, w: &CompatibleSet) -> String {
    let mut s = format!("witness {label} ({}):\n", w.len());
    for p in &w.partitions {
        let _ = writeln!(s, "  {}", p.to_text(g));
    }
    s
}

fn ranks(g: &DefiningGraph, budget: u64) -> Result<String, CliError> {
    let r = rank_report(g, budget)?;
    let mut s = format!(
        "M(V)={} M(L)={} MΣ(V)={} MΣ(L)={} vcd={}\n",
        r.m_all,
        r.m_principal,
        r.m_sym_all,
        r.m_sym_principal,
        r.vcd()
    );
    for (label, w) in ["M(V)", "M(L)", "MΣ(V)", "MΣ(L)"].iter().zip(&r.witnesses) {
        s.push_str(&witness_text(g, label, w));
    }
    Ok(s)
}

fn run_minimize(g: &DefiningGraph, auto: &Path, classes: &Path, tail_bound: usize) -> Result<String, CliError> {
    let a = load(auto, |t| RaagAutomorphism::parse(g, t))?;
    let w = load(classes, |t| parse_classes(g, t))?;
    let ctx = NormContext::new(g, w, tail_bound);
    let sigma = MarkedSalvetti::new(g, a);
    let mut s = format!("start {}\n", norm_prefix(g, &sigma, &ctx).to_text());
    let (fin, steps) = minimize(g, &sigma, &ctx)?;
    for (i, st) in steps.iter().enumerate() {
        let _ = writeln!(s, "step {} {} dW={} prefix {}", i + 1, st.pair.to_text(g), st.delta.w_entry, st.prefix.to_text());
    }
    let prefix = norm_prefix(g, &fin, &ctx);
    let _ = writeln!(s, "steps {}", steps.len());
    let _ = writeln!(s, "final wEntry {} prefix {}", prefix.w_entry, prefix.to_text());
    let _ = writeln!(s, "final marking {}", fin.marking().images_text(g));
    Ok(s)
}

fn selftest(g: &DefiningGraph, seed: u64, trials: usize) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fail = |m: String| CliError::Selftest(m);
    let mut s = String::new();

    let pairs = candidate_pairs(g, false);
    for _ in 0..trials {
        let (lw, lx) = (rng.gen_range(0..8), rng.gen_range(0..4));
        let w = random_word(&mut rng, g, lw);
        let x = random_word(&mut rng, g, lx);
        let conj = x.concat(&w).concat(&x.inverse());
        if conj_canon(g, &conj) != conj_canon(g, &w) || !conjugate(g, &w, &conj) {
            return Err(fail(format!("conjugacy canon of {}", w.to_text(g))));
        }
    }
    let _ = writeln!(s, "conjugacy canon: ok ({trials} trials)");

    for _ in 0..trials {
        let a = random_symmetric_marking(&mut rng, g, 6);
        let b = a.invert(g);
        if !a.compose(g, &b).is_identity() || !b.compose(g, &a).is_identity() {
            return Err(fail("two-sided inverse".into()));
        }
    }
    let _ = writeln!(s, "inverse: ok ({trials} trials)");

    let mut checked = 0;
    for _ in 0..trials {
        if pairs.is_empty() {
            break;
        }
        let sigma = MarkedSalvetti::new(g, random_symmetric_marking(&mut rng, g, 3));
        let len = rng.gen_range(1..7);
        let class = conj_canon(g, &random_word(&mut rng, g, len));
        let pair = pairs[rng.gen_range(0..pairs.len())];
        if predicted_length(g, &sigma, &pair, &class) != sigma.whitehead_move(g, &pair).ell(g, &class) {
            return Err(fail(format!("length formula for {}", pair.to_text(g))));
        }
        checked += 1;
    }
    let _ = writeln!(s, "length formula: ok ({checked} trials)");

    let ctx = NormContext::length_one(g, 3);
    for _ in 0..trials {
        let sigma = MarkedSalvetti::new(g, random_symmetric_marking(&mut rng, g, 8));
        if !in_kmin_length_one(g, &sigma) {
            return Err(fail("floor law".into()));
        }
    }
    let _ = writeln!(s, "floor law: ok ({trials} trials)");

    let mut descents = 0;
    for _ in 0..trials.min(50) {
        let Some(a) = random_fold_marking(&mut rng, g, 6) else { break };
        let sigma = MarkedSalvetti::new(g, a);
        let mut prev = norm_prefix(g, &sigma, &ctx);
        let (_, steps) = minimize(g, &sigma, &ctx)?;
        for st in steps {
            if st.prefix >= prev {
                return Err(fail("descent did not decrease".into()));
            }
            prev = st.prefix;
        }
        descents += 1;
    }
    let _ = writeln!(s, "descent: ok ({descents} trials)");
    Ok(s)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let path = cli.graph.as_ref().ok_or(CliError::MissingGraph)?;
    let g = load(path, DefiningGraph::parse)?;
    match &cli.command {
        Command::GraphInfo => Ok(graph_info(&g)),
        Command::Partitions { base, symmetric } => {
            let b = g.vertex(base)?;
            let opts = EnumerateOptions { symmetric_only: *symmetric, ..Default::default() };
            let parts = enumerate_partitions(&g, b, opts);
            let mut s = String::new();
            for p in &parts {
                let _ = writeln!(s, "{}", p.to_text(&g));
            }
            let _ = writeln!(s, "{}", parts.len());
            Ok(s)
        }
        Command::Ranks => ranks(&g, cli.budget),
        Command::Vcd => Ok(format!("vcd={}\n", vcd_symout(&g, cli.budget)?)),
        Command::Minimize { auto, classes } => run_minimize(&g, auto, classes, cli.tail_bound),
        Command::Explore { depth, symmetric, dot } => {
            let m = local_explore(&g, &MarkedSalvetti::identity(&g), *depth, *symmetric, cli.budget)?;
            if let Some(p) = dot {
                std::fs::write(p, m.to_dot(&g))
                    .map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
            }
            Ok(format!("nodes {} edges {}\n", m.nodes.len(), m.edges.len()))
        }
        Command::Selftest { trials } => selftest(&g, cli.seed, *trials),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
