//! Acceptance run: one PASS/FAIL line per criterion, with the measured
//! numbers next to the pinned thresholds. Exits non-zero if any line fails.

use std::time::{Duration, Instant};

use orient_core::benchmark::{instance, BenchmarkConfig, Family};
use orient_core::generate::{all_trees, gnp, random_semi_proper, random_tree, seeded};
use orient_core::normalizer::{ledger, normalize_with_trace};
use orient_core::reductions::cnf::{planted_cubic, random_cubic};
use orient_core::reductions::{
    build_g, build_h, extract_assignment, gadget, mutation_report, verify_gadget, CnfInstance, Flavor, GadgetName,
    Literal,
};
use orient_core::solver::{bound_chain, oracle_min_max_with, semi_proper_number_with, Limits};
use orient_core::{
    is_bipartite, is_planar, is_semi_proper, max_s, tree_number, tree_semi_proper, Alphabet, Graph,
};
use rand::Rng;
use rayon::prelude::*;

const ORACLE_BUDGET: Duration = Duration::from_secs(600);
const TREE_BATCH_BUDGET: Duration = Duration::from_secs(5);
const NORMALIZER_CASES: usize = 1000;
const NORMALIZER_MAX_WEIGHT: u32 = 5;
const NORMALIZER_MAX_EDGES: usize = 10;
const TREE_CASES: usize = 1000;
const TREE_MAX_N: usize = 200;
const MIN_CUBIC_INSTANCES: usize = 20;

struct Verdict {
    passed: bool,
    detail: String,
    notes: Vec<String>,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Self {
        Verdict { passed, detail, notes: Vec::new() }
    }
}

/// Every connected labelled graph on `n` vertices.
fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap())
        .filter(Graph::is_connected)
        .collect()
}

fn oracle_graphs() -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=5).flat_map(connected_graphs).collect();
    let mut rng = seeded(0xACCE_0001);
    for _ in 0..500 {
        let n = rng.random_range(6..=8);
        out.push(gnp(n, 0.4, &mut rng));
    }
    out
}

fn oracle_agreement(graphs: &[Graph]) -> Verdict {
    let limits = Limits { oracle_max_edges: usize::MAX, ..Limits::unbounded() };
    let start = Instant::now();
    let mismatches: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let oracle = oracle_min_max_with(g, 3, &limits).expect("oracle runs");
            let exact = semi_proper_number_with(g, &limits).expect("solver runs").value;
            (oracle != exact).then(|| format!("{:?}: oracle {oracle}, solver {exact}", g.edges()))
        })
        .collect();
    let elapsed = start.elapsed();
    let mut v = Verdict::new(
        mismatches.is_empty() && elapsed < ORACLE_BUDGET,
        format!(
            "{} graphs, {} mismatches, {:.1}s (budget {}s)",
            graphs.len(),
            mismatches.len(),
            elapsed.as_secs_f64(),
            ORACLE_BUDGET.as_secs()
        ),
    );
    v.notes = mismatches.into_iter().take(5).collect();
    v
}

fn bound_chains(oracle_set: &[Graph]) -> Verdict {
    let limits = Limits::default();
    let mut graphs: Vec<Graph> = oracle_set.to_vec();
    graphs.extend((2..=6).flat_map(all_trees));
    for family in [Family::Random, Family::RandomBipartite, Family::Trees] {
        let config = BenchmarkConfig { family, count: 100, min_n: 4, max_n: 9, p: 0.4, seed: 0xACCE_0002 };
        graphs.extend((0..config.count).map(|i| instance(&config, i)));
    }
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let chain = bound_chain(g, &limits).expect("small instances solve");
            (!chain.holds()).then(|| format!("{:?}: {chain:?}", g.edges()))
        })
        .collect();
    let mut v = Verdict::new(
        failures.is_empty(),
        format!("{} instances, {} violations of chi-1 <= chi_s <= chi <= Delta", graphs.len(), failures.len()),
    );
    v.notes = failures.into_iter().take(5).collect();
    v
}

fn normalizer_contract() -> Verdict {
    let mut rng = seeded(0xACCE_0003);
    let mut failures = Vec::new();
    let mut heavy_inputs = 0;
    let mut steps = 0;
    let mut cases = 0;
    while cases < NORMALIZER_CASES {
        let g = gnp(rng.random_range(2..=8), 0.45, &mut rng);
        if g.m() == 0 || g.m() > NORMALIZER_MAX_EDGES {
            continue;
        }
        cases += 1;
        let wo = random_semi_proper(&g, NORMALIZER_MAX_WEIGHT, &mut rng);
        if wo.max_weight() > 2 {
            heavy_inputs += 1;
        }
        let before = max_s(&g, &wo).unwrap();
        let (out, trace) = match normalize_with_trace(&g, &wo) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{:?}: {e}", g.edges()));
                continue;
            }
        };
        steps += trace.len();
        let descent = trace.iter().all(|s| s.after < s.before && s.max_s <= before);
        let ok = out.weights().iter().all(|&w| w == 1 || w == 2)
            && is_semi_proper(&g, &out).unwrap()
            && max_s(&g, &out).unwrap() <= before
            && descent
            && ledger(&out).t == 0;
        if !ok {
            failures.push(format!("{:?}", g.edges()));
        }
    }
    let mut v = Verdict::new(
        failures.is_empty(),
        format!(
            "{cases} orientations ({heavy_inputs} with a weight above 2, {steps} rewrites), {} failures",
            failures.len()
        ),
    );
    v.notes = failures.into_iter().take(5).collect();
    v
}

fn tree_checks() -> Verdict {
    let limits = Limits::default();
    let mut rng = seeded(0xACCE_0004);
    let trees: Vec<Graph> = (0..TREE_CASES).map(|_| random_tree(rng.random_range(2..=TREE_MAX_N), &mut rng)).collect();
    let mut failures = Vec::new();
    for t in &trees {
        let wo = tree_semi_proper(t).unwrap();
        if !is_semi_proper(t, &wo).unwrap() || max_s(t, &wo).unwrap() > 2 {
            failures.push(format!("layered orientation fails on {:?}", t.edges()));
        }
    }
    let mut small: Vec<Graph> = (2..=6).flat_map(all_trees).collect();
    let exhaustive = small.len();
    small.extend(trees.iter().filter(|t| t.n() <= 8).cloned());
    for n in [7, 8] {
        small.extend((0..500).map(|_| random_tree(n, &mut rng)));
    }
    let disagreements: Vec<String> = small
        .par_iter()
        .filter_map(|t| {
            let (value, _) = tree_number(t).unwrap();
            let exact = semi_proper_number_with(t, &limits).unwrap().value;
            (value != exact).then(|| format!("{:?}: tree_number {value}, solver {exact}", t.edges()))
        })
        .collect();
    failures.extend(disagreements);

    let batch: Vec<Graph> = (0..TREE_CASES).map(|_| random_tree(TREE_MAX_N, &mut rng)).collect();
    let start = Instant::now();
    for t in &batch {
        let (value, wo) = tree_number(t).unwrap();
        assert!(value <= 2 && max_s(t, &wo).unwrap() == u64::from(value));
    }
    let elapsed = start.elapsed();
    let mut v = Verdict::new(
        failures.is_empty() && elapsed < TREE_BATCH_BUDGET,
        format!(
            "{TREE_CASES} random trees (n <= {TREE_MAX_N}) semi-proper with max_s <= 2; {} small trees ({exhaustive} exhaustive up to n = 6) checked against the solver; {TREE_CASES} trees at n = {TREE_MAX_N} in {:.3}s (budget {}s); {} failures",
            small.len(),
            elapsed.as_secs_f64(),
            TREE_BATCH_BUDGET.as_secs(),
            failures.len()
        ),
    );
    v.notes = failures.into_iter().take(5).collect();
    v
}

fn gadget_contracts() -> Verdict {
    let mut notes = Vec::new();
    let mut all_pass = true;
    for name in GadgetName::ALL {
        let r = verify_gadget(&gadget(name)).expect("gadget verification runs");
        all_pass &= r.passed;
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
        notes.push(format!(
            "{name}: {} ({} checks{})",
            if r.passed { "verified" } else { "FAILED" },
            r.checks.len(),
            if failed.is_empty() { String::new() } else { format!(", failing {failed:?}") }
        ));
    }
    let t = mutation_report(&gadget(GadgetName::T)).expect("mutation run");
    let survivors: Vec<String> = t.iter().filter(|m| !m.broken).map(|m| format!("{}-{}", m.edge.0, m.edge.1)).collect();
    notes.push(format!("T mutations: {} of {} deletions break a contract", t.len() - survivors.len(), t.len()));
    for name in GadgetName::ALL.into_iter().filter(|&n| n != GadgetName::T) {
        let m = mutation_report(&gadget(name)).expect("mutation run");
        let kept: Vec<String> = m.iter().filter(|r| !r.broken).map(|r| format!("{}-{}", r.edge.0, r.edge.1)).collect();
        let sample: Vec<&String> = kept.iter().take(3).collect();
        notes.push(format!(
            "info, {name} mutations: {} of {} deletions break a contract; survivors include {sample:?}",
            m.len() - kept.len(),
            m.len()
        ));
    }
    let mut v = Verdict::new(
        all_pass && survivors.is_empty(),
        format!(
            "all 8 gadgets verified: {all_pass}; T single-edge deletions that break no contract: {}",
            if survivors.is_empty() { "none".to_string() } else { survivors.join(", ") }
        ),
    );
    v.notes = notes;
    v
}

fn literals(n: usize) -> Vec<Literal> {
    (0..n).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect()
}

/// Every type 2 instance on `1..=3` variables with at most 2 clauses:
/// clauses are ordered literal triples, instances are multisets of clauses.
fn type2_instances() -> Vec<CnfInstance> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let lits = literals(n);
        let mut clauses: Vec<[Literal; 3]> = Vec::new();
        for &a in &lits {
            for &b in &lits {
                clauses.extend(lits.iter().map(|&c| [a, b, c]));
            }
        }
        out.push(CnfInstance::new(n, vec![], Flavor::Type2));
        for (i, &c1) in clauses.iter().enumerate() {
            out.push(CnfInstance::new(n, vec![c1], Flavor::Type2));
            for &c2 in &clauses[i..] {
                out.push(CnfInstance::new(n, vec![c1, c2], Flavor::Type2));
            }
        }
    }
    out
}

struct Type2Outcome {
    agree: bool,
    sat: bool,
    two: bool,
    planar: bool,
    extracted_ok: bool,
}

fn type2_equivalence(instances: &[CnfInstance]) -> (Verdict, bool) {
    let unit = Alphabet::unit();
    let outcomes: Vec<Type2Outcome> = instances
        .par_iter()
        .map(|f| {
            let c = build_h(f).expect("every small type 2 instance is admissible");
            let sat = f.brute_force().is_some();
            let witness = c.decide(2, &unit).expect("composition runs");
            let extracted_ok = witness
                .as_ref()
                .is_none_or(|wo| extract_assignment(f, &c, wo).is_ok_and(|a| f.satisfied_by(&a)));
            // the triangle in each T forces at least 2; the witness gives at most 2
            let two = c.two_witness().expect("composition runs").is_some_and(|wo| {
                is_semi_proper(&c.graph, &wo).unwrap() && max_s(&c.graph, &wo).unwrap() == 2
            });
            Type2Outcome { agree: sat == witness.is_some(), sat, two, planar: is_planar(&c.graph), extracted_ok }
        })
        .collect();
    let disagree = outcomes.iter().filter(|o| !o.agree).count();
    let sat = outcomes.iter().filter(|o| o.sat).count();
    let not_two = outcomes.iter().filter(|o| !o.two).count();
    let bad_extract = outcomes.iter().filter(|o| !o.extracted_ok).count();
    let planar = outcomes.iter().all(|o| o.planar);
    (
        Verdict::new(
            disagree == 0 && not_two == 0 && bad_extract == 0,
            format!(
                "{} instances ({sat} satisfiable, {} not): {disagree} disagreements with the truth table, {bad_extract} bad extractions, {not_two} without chi_s(H) = 2",
                outcomes.len(),
                outcomes.len() - sat
            ),
        ),
        planar,
    )
}

fn cubic_instances() -> Vec<CnfInstance> {
    let mut rng = seeded(0xACCE_0007);
    let mut out = Vec::new();
    for n in [4, 6, 7] {
        for _ in 0..6 {
            out.extend(random_cubic(n, &mut rng));
        }
    }
    for n in [6, 9] {
        for _ in 0..4 {
            out.extend(planted_cubic(n, &mut rng));
        }
    }
    out
}

fn cubic_equivalence(instances: &[CnfInstance]) -> (Verdict, bool) {
    let one_two = Alphabet::one_two();
    let rows: Vec<(bool, bool, bool, bool)> = instances
        .par_iter()
        .map(|f| {
            let c = build_g(f).expect("generated instances are admissible");
            let sat = f.brute_force().is_some();
            let sol = c.number(&one_two).expect("composition runs");
            let extracted_ok = sol.value != 2 || extract_assignment(f, &c, &sol.witness).is_ok_and(|a| f.satisfied_by(&a));
            let certified = is_planar(&c.graph) && is_bipartite(&c.graph).is_some();
            (sat, sol.value == 2, extracted_ok, certified)
        })
        .collect();
    let sat = rows.iter().filter(|r| r.0).count();
    let disagree = rows.iter().filter(|r| r.0 != r.1).count();
    let bad_extract = rows.iter().filter(|r| !r.2).count();
    let certified = rows.iter().all(|r| r.3);
    (
        Verdict::new(
            rows.len() >= MIN_CUBIC_INSTANCES && sat > 0 && sat < rows.len() && disagree == 0 && bad_extract == 0,
            format!(
                "{} instances ({sat} 1-in-3 satisfiable, {} not; need >= {MIN_CUBIC_INSTANCES} with both kinds): {disagree} disagreements, {bad_extract} bad extractions; path: exact tabulated composition over gadget layout",
                rows.len(),
                rows.len() - sat
            ),
        ),
        certified,
    )
}

fn main() {
    let mut results: Vec<(&str, &str, Verdict)> = Vec::new();
    let mut run = |id: &'static str, name: &'static str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let mut v = f();
        v.detail.push_str(&format!(" [{:.1}s]", start.elapsed().as_secs_f64()));
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("{status} {id} {name}: {}", v.detail);
        for n in &v.notes {
            println!("     {n}");
        }
        results.push((id, name, v));
    };

    let graphs = oracle_graphs();
    run("1", "oracle agreement on small graphs", &mut || oracle_agreement(&graphs));
    run("2", "bound chain", &mut || bound_chains(&graphs));
    run("3", "normalizer contract", &mut normalizer_contract);
    run("4", "tree algorithm", &mut tree_checks);
    run("5", "gadget contracts and T mutation sensitivity", &mut gadget_contracts);
    let type2 = type2_instances();
    let mut h_planar = false;
    run("6", "type 2 equivalence for H", &mut || {
        let (v, planar) = type2_equivalence(&type2);
        h_planar = planar;
        v
    });
    let cubic = cubic_instances();
    let mut g_certified = false;
    run("7", "cubic 1-in-3 equivalence for G", &mut || {
        let (v, certified) = cubic_equivalence(&cubic);
        g_certified = certified;
        v
    });
    run("8", "planarity and bipartiteness certification", &mut || {
        let k5 = is_planar(&Graph::complete(5));
        let k33 = is_planar(&Graph::complete_bipartite(3, 3));
        Verdict::new(
            h_planar && g_certified && !k5 && !k33,
            format!(
                "every H planar: {h_planar}; every G planar and bipartite: {g_certified}; K5 rejected: {}; K3,3 rejected: {}",
                !k5, !k33
            ),
        )
    });

    let failed: Vec<&str> = results.iter().filter(|r| !r.2.passed).map(|r| r.0).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("failing: {}", failed.join(", "));
        std::process::exit(1);
    }
}
