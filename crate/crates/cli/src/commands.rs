use std::fmt::Write as _;
use std::io::Read;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use wh_core::oracle::{check_majorization, random_tuple, TupleShape, WeightOrder};
use wh_core::{
    brute_force_optimum, build_huffman, find_counterexample, gutman_index, is_degree_monotone, is_huffman,
    is_proper, proper_root, root_tree, vwwi_pairwise_with, vwwi_rooted, wiener_index, EnumerationConfig,
    GeneratingTuple, OracleError, PairwiseBackend, SearchLimits,
};

use crate::documents::{TreeDocument, TupleDocument};
use crate::{Failure, Format, Order};

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
    }
}

fn read_tuple(path: &str) -> Result<GeneratingTuple, Failure> {
    let text = read_input(path)?;
    TupleDocument::parse(&text)
        .and_then(|doc| doc.to_tuple())
        .map_err(Failure::usage)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("documents serialize"));
}

fn to_dot(doc: &TreeDocument) -> String {
    let mut out = String::from("graph huffman {\n");
    if let Some(meta) = &doc.metadata {
        writeln!(out, "  // vwwi {}", meta.vwwi).unwrap();
    }
    for v in &doc.vertices {
        writeln!(out, "  {} [label=\"{} ({})\"];", v.id, v.id, v.weight).unwrap();
    }
    for [a, b] in &doc.edges {
        writeln!(out, "  {a} -- {b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn to_edge_list(doc: &TreeDocument) -> String {
    let mut out = String::new();
    if let Some(meta) = &doc.metadata {
        writeln!(out, "# vwwi {}", meta.vwwi).unwrap();
    }
    for [a, b] in &doc.edges {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn build(input: &str, format: Format, trace: bool) -> Result<(), Failure> {
    let tuple = read_tuple(input)?;
    let result = build_huffman(&tuple).map_err(Failure::usage)?;
    if !result.optimality_guaranteed {
        eprintln!("warning: weights are not degree-monotone; the tree is not guaranteed to be optimal");
    }
    let doc = TreeDocument::from_huffman(&result, &tuple, trace);
    match format {
        Format::Json => print_json(&doc),
        Format::Dot => print!("{}", to_dot(&doc)),
        Format::Edgelist => print!("{}", to_edge_list(&doc)),
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalReport {
    vertices: usize,
    root: i64,
    vwwi: String,
    vwwi_rooted: String,
    wiener: String,
    gutman: String,
    is_proper: bool,
    is_huffman: bool,
    degree_monotone: bool,
}

pub fn eval(input: &str, root: Option<i64>) -> Result<(), Failure> {
    let text = read_input(input)?;
    let parsed = TreeDocument::parse_any(&text)
        .and_then(|doc| doc.to_tree())
        .map_err(Failure::usage)?;
    let tree = &parsed.tree;
    let root = match root {
        Some(label) => parsed
            .labels
            .binary_search(&label)
            .map_err(|_| Failure::usage(format!("root {label} is not a vertex of the tree")))?,
        None => proper_root(tree),
    };
    let rooted = root_tree(tree, root)
        .map_err(|_| Failure::usage(format!("root {} is a pendent vertex", parsed.labels[root])))?;

    let pairwise = vwwi_pairwise_with(tree, PairwiseBackend::EdgeCut);
    let bfs = vwwi_pairwise_with(tree, PairwiseBackend::Bfs);
    let via_root = vwwi_rooted(&rooted);
    if pairwise != bfs || pairwise != via_root {
        return Err(Failure {
            code: Failure::VIOLATION,
            message: format!("index formulas disagree: edge-cut {pairwise}, bfs {bfs}, rooted {via_root}"),
        });
    }
    let tuple = tree.induced_tuple();
    let report = EvalReport {
        vertices: tree.len(),
        root: parsed.labels[root],
        vwwi: pairwise.to_string(),
        vwwi_rooted: via_root.to_string(),
        wiener: wiener_index(tree).to_string(),
        gutman: gutman_index(tree).to_string(),
        is_proper: is_proper(&rooted),
        is_huffman: is_huffman(tree, &tuple).map_err(Failure::usage)?,
        degree_monotone: is_degree_monotone(&tuple),
    };
    print_json(&report);
    Ok(())
}

#[derive(Default)]
struct Tally {
    passed: usize,
    failed: usize,
    capped: usize,
    nonmonotone: usize,
}

fn verify_one(index: usize, tuple: &GeneratingTuple, config: &EnumerationConfig, tally: &mut Tally) -> Result<(), Failure> {
    let violation = |e: OracleError| Failure {
        code: Failure::VIOLATION,
        message: format!("tuple {index}: {e}"),
    };
    let report = match brute_force_optimum(tuple, config) {
        Ok(r) => r,
        Err(e @ OracleError::EnumerationCapExceeded { .. }) => {
            println!("tuple {index}: vertices={} CAP {e}", tuple.len());
            tally.capped += 1;
            return Ok(());
        }
        Err(e) => return Err(violation(e)),
    };
    let mut line = format!(
        "tuple {index}: vertices={} trees={} huffman={} optimum={} argmins={}",
        tuple.len(),
        report.trees_enumerated,
        report.huffman_vwwi,
        report.min_vwwi,
        report.argmin_count
    );
    if !is_degree_monotone(tuple) {
        let gap = &report.huffman_vwwi - &report.min_vwwi;
        write!(line, " gap={gap} NONMONOTONE").unwrap();
        tally.nonmonotone += 1;
        println!("{line}");
        return Ok(());
    }
    let majorization = check_majorization(tuple, config).map_err(violation)?;
    write!(
        line,
        " rootings={} majorization={}",
        majorization.rootings,
        if majorization.holds() { "ok" } else { "violated" }
    )
    .unwrap();
    let mut failures = Vec::new();
    if !report.huffman_is_optimal {
        failures.push("optimality");
    }
    if !report.all_argmins_are_huffman {
        failures.push("argmin");
    }
    if !majorization.holds() {
        failures.push("majorization");
    }
    if failures.is_empty() {
        line.push_str(" OK");
        tally.passed += 1;
    } else {
        write!(line, " FAIL({})", failures.join(",")).unwrap();
        tally.failed += 1;
    }
    println!("{line}");
    Ok(())
}

fn finish(tally: &Tally) -> Result<(), Failure> {
    println!(
        "summary: {} passed, {} failed, {} over the enumeration cap, {} non-monotone",
        tally.passed, tally.failed, tally.capped, tally.nonmonotone
    );
    if tally.failed > 0 {
        Err(Failure {
            code: Failure::VIOLATION,
            message: format!("{} degree-monotone tuples failed verification", tally.failed),
        })
    } else if tally.capped > 0 {
        Err(Failure {
            code: Failure::CAP,
            message: format!("{} tuples exceed the enumeration cap", tally.capped),
        })
    } else {
        Ok(())
    }
}

pub fn verify_file(input: &str) -> Result<(), Failure> {
    let tuple = read_tuple(input)?;
    let mut tally = Tally::default();
    verify_one(1, &tuple, &EnumerationConfig::from_env(), &mut tally)?;
    finish(&tally)
}

pub struct RandomCampaign {
    pub count: usize,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub seed: u64,
    pub max_weight: i64,
    pub max_denominator: i64,
    pub order: Order,
}

pub fn verify_random(campaign: &RandomCampaign) -> Result<(), Failure> {
    if campaign.min_vertices < 2 || campaign.min_vertices > campaign.max_vertices {
        return Err(Failure::usage("vertex bounds must satisfy 2 <= --min-vertices <= --max-vertices"));
    }
    if campaign.max_weight < 1 || campaign.max_denominator < 1 {
        return Err(Failure::usage("--max-weight and --max-denominator must be at least 1"));
    }
    if campaign.order == Order::Inverted && campaign.max_vertices < 5 {
        return Err(Failure::usage("inverted weights need at least 5 vertices"));
    }
    let shape = TupleShape {
        min_vertices: campaign.min_vertices,
        max_vertices: campaign.max_vertices,
        max_weight: campaign.max_weight,
        max_denominator: campaign.max_denominator,
        order: match campaign.order {
            Order::Monotone => WeightOrder::Monotone,
            Order::Inverted => WeightOrder::Inverted,
            Order::Any => WeightOrder::Any,
        },
    };
    let config = EnumerationConfig::from_env();
    let mut rng = ChaCha8Rng::seed_from_u64(campaign.seed);
    let mut tally = Tally::default();
    let mut index = 0;
    while index < campaign.count {
        let Some(tuple) = random_tuple(&mut rng, &shape) else {
            continue;
        };
        index += 1;
        verify_one(index, &tuple, &config, &mut tally)?;
    }
    finish(&tally)
}

#[derive(Serialize)]
struct CounterexampleDocument {
    tuple: TupleDocument,
    huffman_vwwi: String,
    oracle_min: String,
    gap: String,
    attempts_used: u64,
    huffman_tree: TreeDocument,
    witness_tree: TreeDocument,
}

pub fn counterexample(limits: &SearchLimits) -> Result<(), Failure> {
    match find_counterexample(limits) {
        Ok(report) => {
            let labels = report.tuple.labels();
            print_json(&CounterexampleDocument {
                tuple: TupleDocument::from_tuple(&report.tuple),
                huffman_vwwi: report.huffman_vwwi.to_string(),
                oracle_min: report.oracle_min.to_string(),
                gap: report.gap.to_string(),
                attempts_used: report.attempts_used,
                huffman_tree: TreeDocument::from_tree(&report.huffman_tree, labels),
                witness_tree: TreeDocument::from_tree(&report.witness_tree, labels),
            });
            Ok(())
        }
        Err(e @ OracleError::NotFound { .. }) => Err(Failure {
            code: 1,
            message: e.to_string(),
        }),
        Err(e) => Err(Failure {
            code: Failure::VIOLATION,
            message: e.to_string(),
        }),
    }
}
