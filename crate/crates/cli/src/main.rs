//! `tfree`: tree classification, certificate checks, censuses and counting
//! tables from the command line.
//!
//! Data goes to stdout (or `--output`), diagnostics to stderr. Exit codes: 0
//! success, 2 a requested check failed, 3 bad input.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use output::{Format, Report, Table};
use tfree::census::{run_census, sampled_equivalence, trend, CensusOptions};
use tfree::certify::{
    certify, edge_disjoint_cliques, find_certifying, structural_certifying, wpn, Partition, SearchMode,
    MAX_PATTERN_VERTICES,
};
use tfree::counting::{
    certified_lower_bound, count_family, count_family_oracle, family_table_csv, growth_formula, kleitman_table_csv,
    log2_big, FAMILY_MAX,
};
use tfree::graph::{Family, Graph};
use tfree::io::{parse_graph, parse_tree, to_graph6};
use tfree::tree::{
    canonical_code, chaining_decomposition, claim_partition, classify, enumerate_trees, is_spiked_star,
    matching_status, s4_partition, star_cover_exists, MatchingKind, Scheme, Tree, TreePartition,
};
use tfree::BigCount;

#[derive(Parser, Debug)]
#[command(name = "tfree", version, about = "Certified structure and counts for graphs without an induced tree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// write data here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Sound,
    Paper,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class of one tree and every tree-partition construction that applies
    ClassifyTree {
        #[arg(long)]
        tree: String,
    },
    /// Run the tree-partition constructions on every tree with 4..=K vertices
    VerifyClaims {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// All verdicts for a graph, a partition written as part labels, and a tree
    CheckPartition {
        #[arg(long)]
        graph: String,
        /// part label per vertex, e.g. `0,0,1,1`
        #[arg(long)]
        partition: String,
        #[arg(long)]
        tree: String,
        /// clique/stable size required of interesting partitions (default |V(T)|)
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Search for a certifying partition
    FindPartition {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value_t = Mode::Sound)]
        mode: Mode,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Exhaustive census of labeled graphs on n vertices
    Census {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// allow n = 8
        #[arg(long)]
        long_run: bool,
    },
    /// Certified proportions over a range of n
    Trend {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Planted-instance comparison of shape and witnessing verdicts
    Sampled {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Counting tables
    Count {
        /// one family with its brute-force column (l <= 6)
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 12)]
        max_l: usize,
        /// matching counts against the asymptotic estimate at these l
        #[arg(long, value_delimiter = ',')]
        kleitman: Option<Vec<usize>>,
        /// lower bound and growth estimate for this tree (with --n)
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Edge-disjoint transversal cliques in a complete j-partite graph
    CliquesConstruct {
        #[arg(long)]
        j: usize,
    },
    /// All trees on n vertices up to isomorphism
    Trees {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Assertion { message: String, report: Value },
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn assertion(message: impl Into<String>, report: &Report) -> Failure {
    Failure::Assertion { message: message.into(), report: report.value.clone() }
}

fn tree_arg(s: &str) -> Result<Tree, Failure> {
    parse_tree(s).map_err(|e| Failure::Input(format!("--tree: {e}")))
}

fn graph_arg(s: &str) -> Result<Graph, Failure> {
    parse_graph(s).map_err(|e| Failure::Input(format!("--graph: {e}")))
}

fn table<I: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: I) -> Table {
    Table { header: header.iter().map(|h| h.to_string()).collect(), rows: rows.into_iter().collect() }
}

#[derive(Serialize)]
struct SchemeResult {
    scheme: String,
    partition: Option<TreePartition>,
    error: Option<String>,
}

fn schemes_for(t: &Tree) -> Vec<SchemeResult> {
    Scheme::applicable(t)
        .into_iter()
        .map(|s| match claim_partition(t, s) {
            Ok(p) => SchemeResult { scheme: s.to_string(), partition: Some(p), error: None },
            Err(e) => SchemeResult { scheme: s.to_string(), partition: None, error: Some(e.to_string()) },
        })
        .collect()
}

fn classify_tree(t: &Tree) -> Result<Report, Failure> {
    let schemes = schemes_for(t);
    let s4 = s4_partition(t).ok().flatten();
    let perfect = matching_status(t).1 == MatchingKind::Perfect;
    let report = Report::new(json!({
        "tree_id": canonical_code(t),
        "graph6": to_graph6(t.graph()),
        "n": t.n(),
        "alpha": t.alpha(),
        "wpn": (t.n() <= MAX_PATTERN_VERTICES).then(|| wpn(t.graph())),
        "class": classify(t),
        "perfect_matching": perfect,
        "schemes": schemes,
        "s4": s4,
        "star_cover": star_cover_exists(t),
    }));
    if schemes.iter().any(|s| s.error.is_some()) {
        return Err(assertion("a construction failed", &report));
    }
    Ok(report)
}

fn verify_claims(max_n: usize) -> Result<Report, Failure> {
    if !(4..=12).contains(&max_n) {
        return Err(Failure::Input(format!("--max-n {max_n} outside 4..=12")));
    }
    let mut failures = Vec::new();
    let (mut trees, mut constructions, mut s4_checked) = (0, 0, 0);
    for n in 4..=max_n {
        for t in enumerate_trees(n) {
            trees += 1;
            for r in schemes_for(&t) {
                constructions += 1;
                if let Some(e) = r.error {
                    failures.push(format!("{} on {}: {e}", r.scheme, to_graph6(t.graph())));
                }
            }
            if let Ok(s4) = s4_partition(&t) {
                s4_checked += 1;
                let special = is_spiked_star(&t).is_some() || chaining_decomposition(&t).is_some();
                if s4.is_some() == special {
                    failures.push(format!("S4 outcome disagrees with the class of {}", to_graph6(t.graph())));
                }
                if star_cover_exists(&t) {
                    failures.push(format!("star cover for perfect-matching tree {}", to_graph6(t.graph())));
                }
            }
        }
    }
    let report = Report::new(json!({
        "max_n": max_n,
        "trees": trees,
        "constructions": constructions,
        "s4_checked": s4_checked,
        "failures": failures,
    }));
    if !failures.is_empty() {
        return Err(assertion(format!("{} claim failures", failures.len()), &report));
    }
    Ok(report)
}

fn count(
    family: Option<String>,
    max_l: usize,
    kleitman: Option<Vec<usize>>,
    tree: Option<String>,
    n: Option<usize>,
) -> Result<Report, Failure> {
    if let Some(ls) = kleitman {
        let csv = kleitman_table_csv(&ls).map_err(input)?;
        let mut lines = csv.lines();
        let header: Vec<&str> = lines.next().expect("header").split(',').collect();
        let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        let value: Vec<Value> = rows
            .iter()
            .map(|r| json!({"l": r[0].parse::<usize>().unwrap(), "matchings": r[1], "kleitman_log2": r[2].parse::<f64>().unwrap(), "ratio": r[3].parse::<f64>().unwrap()}))
            .collect();
        return Ok(Report::new(json!({ "kleitman": value })).with_table(table(&header, rows)));
    }
    if let Some(t) = tree {
        let t = tree_arg(&t)?;
        let n = n.ok_or_else(|| Failure::Input("--tree needs --n".into()))?;
        let bound = certified_lower_bound(&t, n).map_err(input)?;
        let growth = growth_formula::<f64>(&classify(&t), t.alpha(), n).ok();
        return Ok(Report::new(json!({
            "tree_id": canonical_code(&t),
            "n": n,
            "class": classify(&t).name(),
            "lower_bound": bound.to_string(),
            "lower_bound_log2": log2_big(&bound),
            "growth_estimate": growth,
        })));
    }
    if max_l > FAMILY_MAX {
        return Err(Failure::Input(format!("--max-l {max_l} above {}", FAMILY_MAX)));
    }
    if let Some(name) = family {
        let f = Family::parse(&name).ok_or_else(|| Failure::Input(format!("unknown family {name:?}")))?;
        let mut rows = Vec::new();
        let mut values = Vec::new();
        let mut mismatch = false;
        for l in 0..=max_l {
            let c: BigCount = count_family(f, l).map_err(input)?;
            let oracle = (l <= 6).then(|| count_family_oracle(f, l).expect("l <= 6"));
            let agree = oracle.as_ref().map(|o| *o == c);
            mismatch |= agree == Some(false);
            let o = oracle.map(|o| o.to_string());
            rows.push(vec![
                l.to_string(),
                c.to_string(),
                o.clone().unwrap_or_default(),
                agree.map(|a| a.to_string()).unwrap_or_default(),
            ]);
            values.push(json!({"l": l, "count": c.to_string(), "oracle": o, "agree": agree}));
        }
        let report = Report::new(json!({"family": f.name(), "rows": values}))
            .with_table(table(&["l", "count", "oracle", "agree"], rows));
        if mismatch {
            return Err(assertion("closed form disagrees with brute force", &report));
        }
        return Ok(report);
    }
    let csv = family_table_csv(max_l).map_err(input)?;
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    let values: Vec<Value> = rows
        .iter()
        .map(|r| Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect()))
        .collect();
    Ok(Report::new(json!({ "families": values })).with_table(table(&header, rows)))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::ClassifyTree { tree } => classify_tree(&tree_arg(&tree)?),
        Command::VerifyClaims { max_n } => verify_claims(max_n),
        Command::CheckPartition { graph, partition, tree, threshold } => {
            let (g, t) = (graph_arg(&graph)?, tree_arg(&tree)?);
            let p: Partition = partition.parse().map_err(|e| Failure::Input(format!("--partition: {e}")))?;
            let threshold = threshold.unwrap_or(t.n());
            let verdict = certify(&g, &p, &t, threshold).map_err(input)?;
            let case = structural_certifying(&g, &p, &t).map_err(input)?.case.map(|c| c.label());
            let mut value = serde_json::to_value(&verdict).expect("verdict serializes");
            value["case"] = json!(case);
            value["threshold"] = json!(threshold);
            Ok(Report { value, table: None })
        }
        Command::FindPartition { graph, tree, mode, threshold } => {
            let (g, t) = (graph_arg(&graph)?, tree_arg(&tree)?);
            let search = match mode {
                Mode::Sound => SearchMode::Sound,
                Mode::Paper => SearchMode::Paper(threshold.unwrap_or(t.n())),
            };
            let found = find_certifying(&g, &t, search).map_err(input)?;
            Ok(Report::new(json!({
                "found": found.is_some(),
                "partition": found.as_ref().map(|(p, _)| p.to_string()),
                "case": found.as_ref().map(|(_, c)| c.label()),
            })))
        }
        Command::Census { tree, n, shards, long_run } => {
            let t = tree_arg(&tree)?;
            let r = run_census(&t, n, CensusOptions { shards, long_run }).map_err(input)?;
            let report = Report::new(&r);
            if !r.is_sound() {
                return Err(assertion("a certified graph contains the tree", &report));
            }
            Ok(report)
        }
        Command::Trend { tree, from, to, shards } => {
            let t = tree_arg(&tree)?;
            if from > to {
                return Err(Failure::Input(format!("empty range {from}..={to}")));
            }
            let r = trend(&t, from..=to, CensusOptions { shards, long_run: false }).map_err(input)?;
            let rows = r.rows.iter().map(|x| {
                vec![x.n.to_string(), x.t_free.to_string(), x.sound_certified.to_string(), format!("{:.6}", x.proportion_f64)]
            });
            let report =
                Report::new(&r).with_table(table(&["n", "t_free", "sound_certified", "proportion"], rows));
            if r.increase_holds == Some(false) {
                return Err(assertion("certified proportion does not increase over the range", &report));
            }
            Ok(report)
        }
        Command::Sampled { tree, n, samples, seed } => {
            let t = tree_arg(&tree)?;
            let r = sampled_equivalence(&t, n, samples, seed).map_err(input)?;
            let report = Report::new(&r);
            if !r.discrepancies.is_empty() {
                return Err(assertion("shape and witnessing verdicts disagree", &report));
            }
            Ok(report)
        }
        Command::Count { family, max_l, kleitman, tree, n } => count(family, max_l, kleitman, tree, n),
        Command::CliquesConstruct { j } => {
            if !(3..=16).contains(&j) {
                return Err(Failure::Input(format!("--j {j} outside 3..=16")));
            }
            let s = edge_disjoint_cliques(j);
            let ok = s.pairwise_edge_disjoint() && s.cliques.len() >= s.r * s.r;
            let mut value = serde_json::to_value(&s).expect("serializes");
            value["count"] = json!(s.cliques.len());
            value["pairwise_edge_disjoint"] = json!(ok);
            let rows = s.cliques.iter().enumerate().map(|(i, c)| {
                vec![i.to_string(), c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")]
            });
            let report = Report { value, table: None }.with_table(table(&["clique", "vertices"], rows));
            if !ok {
                return Err(assertion("cliques are not pairwise edge-disjoint", &report));
            }
            Ok(report)
        }
        Command::Trees { n } => {
            if !(1..=14).contains(&n) {
                return Err(Failure::Input(format!("--n {n} outside 1..=14")));
            }
            let trees = enumerate_trees(n);
            let rows: Vec<Vec<String>> = trees
                .iter()
                .map(|t| vec![to_graph6(t.graph()), canonical_code(t), classify(t).name().into(), t.alpha().to_string()])
                .collect();
            let values: Vec<Value> = rows
                .iter()
                .map(|r| json!({"graph6": r[0], "tree_id": r[1], "class": r[2], "alpha": r[3].parse::<usize>().unwrap()}))
                .collect();
            Ok(Report::new(json!({"n": n, "count": trees.len(), "trees": values}))
                .with_table(table(&["graph6", "tree_id", "class", "alpha"], rows)))
        }
    }
}

fn emit(text: &str, path: &Option<PathBuf>) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_object(kind: &str, message: &str, report: Option<Value>) -> String {
    let mut e = json!({"error": {"kind": kind, "message": message}});
    if let Some(r) = report {
        e["error"]["report"] = r;
    }
    serde_json::to_string_pretty(&e).expect("serializes") + "\n"
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TFREE_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            print!("{}", error_object("input", first.trim_start_matches("error: "), None));
            return ExitCode::from(3);
        }
    };
    let (format, path) = (cli.format, cli.output.clone());
    match run(cli) {
        Ok(report) => match emit(&report.render(format), &path) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                log::error!("{msg}");
                print!("{}", error_object("input", &msg, None));
                ExitCode::from(3)
            }
        },
        Err(Failure::Input(msg)) => {
            log::error!("{msg}");
            print!("{}", error_object("input", &msg, None));
            ExitCode::from(3)
        }
        Err(Failure::Assertion { message, report }) => {
            log::error!("{message}");
            let text = error_object("assertion", &message, Some(report));
            if let Err(msg) = emit(&text, &path) {
                log::error!("{msg}");
            }
            ExitCode::from(2)
        }
    }
}
