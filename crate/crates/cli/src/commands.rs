use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplexreg::embedding::{embed, embed_digraph, embed_hypergraph};
use simplexreg::enumerate::{all_graphs, random_graph, random_permutation};
use simplexreg::io::{parse_any, parse_graph, AnyGraph};
use simplexreg::isomorphism::{oracle_is_isomorphic, Matcher};
use simplexreg::metrics::{telomorph_distance, Ggd, GgdMode};
use simplexreg::{serialize_graph, Graph};

use crate::report::{Field, Report, Table};
use crate::{Cli, Command, Mode, Options};

/// Largest `--max-n` accepted by `selfcheck`.
const SELFCHECK_MAX_N: usize = 7;
/// Largest vertex count swept exhaustively by `selfcheck`.
const SELFCHECK_EXHAUSTIVE_N: usize = 5;
/// Random pairs per vertex count above the exhaustive range.
const SELFCHECK_SAMPLES: usize = 2000;
/// Offending pairs listed in a failing self-check report.
const SELFCHECK_SHOWN: usize = 10;

pub struct Done {
    pub report: Report,
    pub success: bool,
}

fn done(report: Report, success: bool) -> Result<Done, String> {
    Ok(Done { report, success })
}

pub fn run(cli: &Cli) -> Result<Done, String> {
    validate(&cli.opts)?;
    let tol = cli.opts.tol;
    match &cli.command {
        Command::Embed { graph } => embed_cmd(graph),
        Command::Iso { first, second } => iso(&read_graph(first)?, &read_graph(second)?, tol),
        Command::Auto { graph } => auto(&read_graph(graph)?, tol),
        Command::Subiso { host, pattern } => subiso(&read_graph(host)?, &read_graph(pattern)?, tol),
        Command::Ggd { first, second } => ggd(&read_graph(first)?, &read_graph(second)?, &cli.opts),
        Command::Telo { graph } => telo(&read_graph(graph)?),
        Command::Selfcheck { max_n } => selfcheck(*max_n, cli.opts.seed, tol),
    }
}

fn validate(opts: &Options) -> Result<(), String> {
    if !(opts.tol > 0.0) {
        return Err(format!("--tol must be positive, got {}", opts.tol));
    }
    if opts.restarts == 0 {
        return Err("--restarts must be at least 1".into());
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn graph_lines(g: &Graph) -> Vec<String> {
    serialize_graph(g).lines().map(str::to_string).collect()
}

fn embed_cmd(path: &Path) -> Result<Done, String> {
    let text = read(path)?;
    let parsed = parse_any(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let cloud = match parsed {
        AnyGraph::Simple(g) => embed(&g),
        AnyGraph::Directed(g) => embed_digraph(&g),
        AnyGraph::Hyper(h) => embed_hypergraph(&h),
    }
    .map_err(|e| format!("{}: {e}", path.display()))?;
    let full = cloud.full();
    let table = Table {
        rows: full.nrows(),
        cols: full.ncols(),
        data: full.row_iter().map(|r| r.iter().copied().collect()).collect(),
        vertex_columns: cloud.vertex_count(),
    };
    done(Report::table(table), true)
}

fn decision_csv() -> [(&'static str, &'static str); 3] {
    [("decision", "decision"), ("residual", "residual"), ("witness_serialized", "witness")]
}

fn iso(g1: &Graph, g2: &Graph, tol: f64) -> Result<Done, String> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        let report = Report::new()
            .field("decision", Field::Bool(false))
            .field("reason", Field::Text("size mismatch".into()))
            .csv(&[("decision", "decision"), ("reason", "reason")]);
        return done(report, false);
    }
    let r = Matcher::new(tol).is_isomorphic(g1, g2);
    let mut report = Report::new()
        .field("decision", Field::Bool(r.decision))
        .field("residual", Field::Real(r.residual));
    if let Some(w) = &r.witness {
        report = report.field("witness", Field::Mapping(w.as_slice().to_vec()));
    }
    done(report.csv(&decision_csv()), r.decision)
}

fn auto(g: &Graph, tol: f64) -> Result<Done, String> {
    let count = Matcher::new(tol).count_automorphisms(g);
    let report = Report::new()
        .field("automorphisms", Field::Count(count))
        .field("nontrivial", Field::Bool(count > 1));
    done(report, true)
}

fn subiso(host: &Graph, pattern: &Graph, tol: f64) -> Result<Done, String> {
    let r = Matcher::new(tol).is_subgraph_isomorphic(host, pattern);
    let mut report = Report::new()
        .field("decision", Field::Bool(r.decision))
        .field("residual", Field::Real(r.residual));
    if let Some(w) = &r.witness {
        report = report.field("witness", Field::Mapping(w.as_slice().to_vec()));
    }
    done(report.csv(&decision_csv()), r.decision)
}

fn ggd(g1: &Graph, g2: &Graph, opts: &Options) -> Result<Done, String> {
    let r = Ggd {
        mode: match opts.mode {
            Mode::Exact => GgdMode::Exact,
            Mode::Heuristic => GgdMode::Heuristic,
        },
        restarts: opts.restarts,
        max_iters: opts.iters,
        seed: opts.seed,
        ..Ggd::default()
    }
    .compute(g1, g2)
    .map_err(|e| e.to_string())?;
    let report = Report::new()
        .field("distance", Field::Real(r.distance))
        .field("normalized", Field::Real(r.normalized))
        .field("exact", Field::Bool(r.exact))
        .field("witness", Field::Mapping(r.optimal_mapping.as_slice().to_vec()))
        .csv(&[("distance", "distance"), ("exact", "exact"), ("witness_serialized", "witness")]);
    done(report, true)
}

fn telo(g: &Graph) -> Result<Done, String> {
    let r = telomorph_distance(g).map_err(|e| e.to_string())?;
    let report = Report::new()
        .field("distance", Field::Real(r.distance))
        .field("exact", Field::Bool(true))
        .field("classes", Field::Count(r.classes as u64))
        .field("witness", Field::Graph(graph_lines(&r.witness)))
        .csv(&[("distance", "distance"), ("exact", "exact"), ("witness_serialized", "witness")]);
    done(report, true)
}

/// Exhaustive over all labeled pairs up to five vertices, seeded samples
/// above that (half of them relabelings, so both answers occur).
fn selfcheck(max_n: usize, seed: u64, tol: f64) -> Result<Done, String> {
    if max_n > SELFCHECK_MAX_N {
        return Err(format!("--max-n is {max_n}, above the limit {SELFCHECK_MAX_N}"));
    }
    let matcher = Matcher::new(tol);
    let mut pairs = 0u64;
    let mut mismatches = 0u64;
    let mut shown = Vec::new();
    let mut check = |g1: &Graph, g2: &Graph| {
        pairs += 1;
        let geometric = matcher.is_isomorphic(g1, g2).decision;
        let combinatorial = oracle_is_isomorphic(g1, g2).decision;
        if geometric != combinatorial {
            mismatches += 1;
            if shown.len() < SELFCHECK_SHOWN {
                shown.push(format!(
                    "geometric {geometric}, oracle {combinatorial}: [{}] vs [{}]",
                    graph_lines(g1).join(";"),
                    graph_lines(g2).join(";")
                ));
            }
        }
    };

    let small: Vec<Graph> = (1..=max_n.min(SELFCHECK_EXHAUSTIVE_N)).flat_map(all_graphs).collect();
    for g1 in &small {
        for g2 in &small {
            check(g1, g2);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in SELFCHECK_EXHAUSTIVE_N + 1..=max_n {
        let max_m = n * (n - 1) / 2;
        for i in 0..SELFCHECK_SAMPLES {
            let m = rand::Rng::random_range(&mut rng, 0..=max_m);
            let g1 = random_graph(n, m, &mut rng);
            let g2 = if i % 2 == 0 {
                g1.permuted(&random_permutation(n, &mut rng)).expect("valid permutation")
            } else {
                random_graph(n, m, &mut rng)
            };
            check(&g1, &g2);
        }
    }

    let mut report = Report::new()
        .field("max_n", Field::Count(max_n as u64))
        .field("pairs", Field::Count(pairs))
        .field("mismatches", Field::Count(mismatches));
    if !shown.is_empty() {
        report = report.field("offending", Field::Lines(shown));
    }
    done(report, mismatches == 0)
}
