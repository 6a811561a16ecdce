//! One function per subcommand, each mapping arguments to an [`Outcome`].

use std::io::Read;

use orient_core::benchmark::{benchmark_gap, BenchmarkConfig};
use orient_core::normalizer::{normalize_with_trace, Rewrite};
use orient_core::reductions::{
    build, extract_assignment, gadget, mutation_report, parse_dimacs, verify_gadget, CnfInstance, Flavor,
    ReductionError,
};
use orient_core::solver::{
    decide_with, oracle_min_max_with, proper_orientation_number_with, semi_proper_number_with, Limits,
};
use orient_core::{
    is_bipartite, is_planar, max_s, parse_graph, parse_orientation, serialize_graph, serialize_orientation,
    tree_number, Graph,
};
use serde_json::{json, Value};

use crate::report::{Failure, Outcome};
use crate::Command;

/// Largest instance the `reduce --solve` report cross-checks by truth table.
const BRUTE_FORCE_VARS: usize = 20;

pub fn run(command: Command) -> (&'static str, Value, Result<Outcome, Failure>) {
    let limits = Limits::from_env();
    match command {
        Command::Solve { graph } => ("solve", json!({ "graph": graph }), solve(&graph, &limits)),
        Command::Decide { graph, k, alphabet } => (
            "decide",
            json!({ "graph": graph, "k": k, "alphabet": alphabet.to_string() }),
            decide(&graph, k, &alphabet, &limits),
        ),
        Command::ProperNumber { graph } => {
            ("proper-number", json!({ "graph": graph }), proper_number(&graph, &limits))
        }
        Command::Oracle { graph, w } => ("oracle", json!({ "graph": graph, "W": w }), oracle(&graph, w, &limits)),
        Command::Normalize { graph, orientation } => (
            "normalize",
            json!({ "graph": graph, "orientation": orientation }),
            normalize(&graph, &orientation),
        ),
        Command::Tree { graph, exact } => {
            ("tree", json!({ "graph": graph, "exact": exact }), tree(&graph, exact, &limits))
        }
        Command::Reduce { flavor, cnf, solve } => (
            "reduce",
            json!({ "flavor": flavor.to_string(), "cnf": cnf, "solve": solve }),
            reduce(flavor, &cnf, solve),
        ),
        Command::Extract { flavor, cnf, orientation } => (
            "extract",
            json!({ "flavor": flavor.to_string(), "cnf": cnf, "orientation": orientation }),
            extract(flavor, &cnf, &orientation),
        ),
        Command::VerifyGadget { name, mutations } => (
            "verify-gadget",
            json!({ "name": name.to_string(), "mutations": mutations }),
            verify(name, mutations),
        ),
        Command::Benchmark { family, count, seed, min_n, max_n, p } => {
            let config = BenchmarkConfig { family, count, min_n, max_n, p, seed };
            let input = json!({
                "family": family.to_string(), "count": count, "seed": seed,
                "min_n": min_n, "max_n": max_n, "p": p,
            });
            ("benchmark", input, benchmark(&config, &limits))
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn load_cnf(path: &str, flavor: Flavor) -> Result<CnfInstance, Failure> {
    parse_dimacs(&read(path)?, flavor).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn solve(path: &str, limits: &Limits) -> Result<Outcome, Failure> {
    let g = load_graph(path)?;
    let sol = semi_proper_number_with(&g, limits)?;
    Ok(Outcome::ok(json!({
        "chi_s": sol.value,
        "vertices": g.n(),
        "edges": g.m(),
        "max_weight": sol.witness.max_weight(),
    }))
    .with_witness(Some(serialize_orientation(&g, &sol.witness))))
}

fn decide(path: &str, k: u32, alphabet: &orient_core::Alphabet, limits: &Limits) -> Result<Outcome, Failure> {
    let g = load_graph(path)?;
    Ok(match decide_with(&g, k, alphabet, limits)? {
        Some(wo) => Outcome::ok(json!({ "feasible": true })).with_witness(Some(serialize_orientation(&g, &wo))),
        None => Outcome::negative(json!({ "feasible": false })),
    })
}

fn proper_number(path: &str, limits: &Limits) -> Result<Outcome, Failure> {
    let g = load_graph(path)?;
    let sol = proper_orientation_number_with(&g, limits)?;
    Ok(Outcome::ok(json!({ "chi": sol.value, "vertices": g.n(), "edges": g.m() }))
        .with_witness(Some(serialize_orientation(&g, &sol.witness))))
}

fn oracle(path: &str, w: u32, limits: &Limits) -> Result<Outcome, Failure> {
    let g = load_graph(path)?;
    let value = oracle_min_max_with(&g, w, limits)?;
    Ok(Outcome::ok(json!({ "min_max": value, "max_weight": w })))
}

fn normalize(graph: &str, orientation: &str) -> Result<Outcome, Failure> {
    let g = load_graph(graph)?;
    let wo = parse_orientation(&g, &read(orientation)?).map_err(|e| Failure::input(format!("{orientation}: {e}")))?;
    let before = max_s(&g, &wo)?;
    let (out, trace) = normalize_with_trace(&g, &wo)?;
    let count = |pred: fn(&Rewrite) -> bool| trace.iter().filter(|s| pred(&s.rewrite)).count();
    Ok(Outcome::ok(json!({
        "max_s_before": before,
        "max_s_after": max_s(&g, &out)?,
        "max_weight_before": wo.max_weight(),
        "max_weight_after": out.max_weight(),
        "steps": trace.len(),
        "rewrites": {
            "shift": count(|r| matches!(r, Rewrite::Shift)),
            "rebalance": count(|r| matches!(r, Rewrite::Rebalance { .. })),
            "rotation": count(|r| matches!(r, Rewrite::Rotation)),
            "path_rebalance": count(|r| matches!(r, Rewrite::PathRebalance { .. })),
        },
    }))
    .with_witness(Some(serialize_orientation(&g, &out))))
}

fn tree(path: &str, exact: bool, limits: &Limits) -> Result<Outcome, Failure> {
    let g = load_graph(path)?;
    let (value, wo) = tree_number(&g)?;
    let mut result = json!({ "tree_number": value, "max_s": max_s(&g, &wo)?, "vertices": g.n() });
    let mut outcome_negative = false;
    if exact {
        let sol = semi_proper_number_with(&g, limits)?;
        result["exact"] = json!(sol.value);
        result["agrees"] = json!(sol.value == value);
        outcome_negative = sol.value != value;
    }
    let witness = Some(serialize_orientation(&g, &wo));
    Ok(if outcome_negative {
        Outcome::negative(result).with_witness(witness).note("tree_number differs from the exact solver")
    } else {
        Outcome::ok(result).with_witness(witness)
    })
}

fn reduce(flavor: Flavor, path: &str, solve: bool) -> Result<Outcome, Failure> {
    let f = load_cnf(path, flavor)?;
    let c = build(&f)?;
    let mut result = json!({
        "construction": c.which.to_string(),
        "variables": f.num_vars,
        "clauses": f.clauses.len(),
        "vertices": c.graph.n(),
        "edges": c.graph.m(),
        "planar": is_planar(&c.graph),
        "bipartite": is_bipartite(&c.graph).is_some(),
        "graph": serialize_graph(&c.graph),
    });
    if !solve {
        return Ok(Outcome::ok(result));
    }
    result["method"] = json!("exact tabulated composition over gadget layout");
    result["alphabet"] = json!(c.which.alphabet().to_string());
    if f.num_vars <= BRUTE_FORCE_VARS {
        result["satisfiable_by_truth_table"] = json!(f.brute_force().is_some());
    }
    Ok(match c.decide(2, &c.which.alphabet())? {
        Some(wo) => {
            let assignment = extract_assignment(&f, &c, &wo)?;
            result["max_s_at_most_2"] = json!(true);
            result["assignment"] = json!(assignment);
            Outcome::ok(result).with_witness(Some(serialize_orientation(&c.graph, &wo)))
        }
        None => {
            result["max_s_at_most_2"] = json!(false);
            Outcome::negative(result)
        }
    })
}

fn extract(flavor: Flavor, cnf: &str, orientation: &str) -> Result<Outcome, Failure> {
    let f = load_cnf(cnf, flavor)?;
    let c = build(&f)?;
    let wo = parse_orientation(&c.graph, &read(orientation)?)
        .map_err(|e| Failure::input(format!("{orientation}: {e}")))?;
    Ok(match extract_assignment(&f, &c, &wo) {
        Ok(assignment) => Outcome::ok(json!({ "assignment": assignment, "satisfied": true })),
        Err(e @ (ReductionError::Precondition(_) | ReductionError::Catalog(_))) => {
            Outcome::negative(json!({ "assignment": Value::Null, "satisfied": false })).note(e.to_string())
        }
        Err(e) => return Err(e.into()),
    })
}

fn verify(name: orient_core::reductions::GadgetName, mutations: bool) -> Result<Outcome, Failure> {
    let entry = gadget(name);
    let report = verify_gadget(&entry)?;
    let passed = report.passed;
    let mut result = serde_json::to_value(&report).map_err(|e| Failure::input(e.to_string()))?;
    let mut notes = Vec::new();
    if mutations {
        let rows = mutation_report(&entry)?;
        for r in rows.iter().filter(|r| !r.broken) {
            notes.push(format!("deleting {}-{} breaks no contract", r.edge.0, r.edge.1));
        }
        result["mutations"] = serde_json::to_value(&rows).map_err(|e| Failure::input(e.to_string()))?;
    }
    let mut outcome = if passed { Outcome::ok(result) } else { Outcome::negative(result) };
    outcome.diagnostics = notes;
    Ok(outcome)
}

fn benchmark(config: &BenchmarkConfig, limits: &Limits) -> Result<Outcome, Failure> {
    if config.min_n > config.max_n {
        return Err(Failure::input(format!("--min-n {} exceeds --max-n {}", config.min_n, config.max_n)));
    }
    if !(0.0..=1.0).contains(&config.p) {
        return Err(Failure::input(format!("--p {} is not a probability", config.p)));
    }
    let table = benchmark_gap(config, limits)?;
    Ok(Outcome::ok(serde_json::to_value(&table).map_err(|e| Failure::input(e.to_string()))?))
}
