//! Gadget catalog and contract checking.
//!
//! Every gadget is a small labelled graph with ports and a list of
//! contracts. A contract embeds the gadget in a harness (extra pendant
//! edges at the ports standing in for the rest of a host graph), tabulates
//! every value combination the ports can take over all semi-proper
//! orientations with in-sums at most 2, and compares that set with what the
//! gadget is supposed to guarantee.
//!
//! Harness stubs come in three kinds. A ghost edge leads to a free vertex
//! and may point either way with any allowed weight, which over-approximates
//! any surroundings with in-sums at most 2. An entering stub is forced into
//! the port, an exiting stub forced out of it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{is_bipartite, is_planar, Graph, GraphBuilder};
use crate::orientation::{serialize_orientation, Direction};
use crate::solver::compose::{Assembly, Layout};
use crate::solver::{Alphabet, SolveError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GadgetName {
    T,
    K,
    F1,
    F2,
    H,
    Q,
    L,
    S,
}

impl GadgetName {
    pub const ALL: [GadgetName; 8] =
        [GadgetName::T, GadgetName::K, GadgetName::F1, GadgetName::F2, GadgetName::H, GadgetName::Q, GadgetName::L, GadgetName::S];
}

impl FromStr for GadgetName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GadgetName::ALL
            .into_iter()
            .find(|g| g.to_string() == s)
            .ok_or_else(|| format!("unknown gadget {s:?} (expected one of T, K, F1, F2, H, Q, L, S)"))
    }
}

impl fmt::Display for GadgetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Adjacency fixed by the correctness argument's own wording.
    TextDetermined,
    /// Adjacency chosen to satisfy the contract; admitted only once checked.
    Reconstructed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stub {
    Ghost,
    Entering(Vec<u32>),
    Exiting(Vec<u32>),
}

/// What the set of observed port-value tuples must look like.
#[derive(Clone, Debug)]
pub enum Expect {
    /// Non-empty, and every tuple satisfies the predicate.
    Always(fn(&[u32]) -> bool),
    /// Exactly these tuples.
    Exactly(Vec<Vec<u32>>),
    /// No orientation at all.
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct Contract {
    pub id: &'static str,
    pub statement: &'static str,
    pub alphabet: Alphabet,
    /// `(port index, stub)`; a port may carry several stubs.
    pub stubs: Vec<(usize, Stub)>,
    /// Port indices whose values are reported.
    pub observe: Vec<usize>,
    pub expect: Expect,
}

#[derive(Clone, Debug)]
pub struct GadgetCatalogEntry {
    pub name: GadgetName,
    pub graph: Graph,
    pub layout: Layout,
    pub ports: Vec<(String, usize)>,
    pub contracts: Vec<Contract>,
    pub provenance: Provenance,
    /// Used in the bipartite construction, so must itself be bipartite.
    pub needs_bipartite: bool,
}

/// Builders that add one gadget copy to a [`GraphBuilder`]. Internal
/// vertices are labelled `<prefix>/<name>`; each returns the layout of the
/// edges it added.
pub mod build {
    use super::*;

    fn inner(b: &mut GraphBuilder, prefix: &str, name: &str) -> usize {
        b.add_vertex(format!("{prefix}/{name}"))
    }

    fn leaf(b: &mut GraphBuilder, edges: Vec<(usize, usize)>) -> Layout {
        for &(u, v) in &edges {
            b.add_edge(u, v);
        }
        Layout::Leaf(edges)
    }

    /// Triangle `x, neg_x, p2` with `p2` also joined to `p1` and `p3`, and
    /// `p3` joined to `p4` and `p5`.
    pub fn t(b: &mut GraphBuilder, prefix: &str, x: usize, neg_x: usize) -> Layout {
        let p: Vec<usize> = (1..=5).map(|i| inner(b, prefix, &format!("p{i}"))).collect();
        leaf(b, vec![(x, neg_x), (p[1], x), (p[1], neg_x), (p[1], p[0]), (p[1], p[2]), (p[2], p[3]), (p[2], p[4])])
    }

    /// Path `c1, q1, ..., q7, c3` with `c2` joined to `q4`.
    pub fn k(b: &mut GraphBuilder, prefix: &str, c: [usize; 3]) -> Layout {
        let q: Vec<usize> = (1..=7).map(|i| inner(b, prefix, &format!("q{i}"))).collect();
        let mut edges = vec![(c[0], q[0])];
        edges.extend(q.windows(2).map(|w| (w[0], w[1])));
        edges.push((q[6], c[2]));
        edges.push((c[1], q[3]));
        leaf(b, edges)
    }

    /// Complete bipartite graph with parts `{z, f6}` and `{f1, ..., f5}`.
    /// Returns `z` and the layout.
    pub fn f1(b: &mut GraphBuilder, prefix: &str) -> (usize, Layout) {
        let z = inner(b, prefix, "z");
        let f: Vec<usize> = (1..=6).map(|i| inner(b, prefix, &format!("f{i}"))).collect();
        let mut edges = Vec::new();
        for &fi in &f[..5] {
            edges.push((z, fi));
            edges.push((f[5], fi));
        }
        (z, leaf(b, edges))
    }

    /// Path `z1, z2, z3`, each the anchor of its own [`f1`] copy.
    pub fn f2(b: &mut GraphBuilder, prefix: &str) -> ([usize; 3], Layout) {
        let (z1, a) = f1(b, &format!("{prefix}/F1a"));
        let (z2, bb) = f1(b, &format!("{prefix}/F1b"));
        let (z3, c) = f1(b, &format!("{prefix}/F1c"));
        let path = leaf(b, vec![(z1, z2), (z2, z3)]);
        ([z1, z2, z3], Layout::Group(vec![a, bb, c, path]))
    }

    /// Edge `x, neg_x`, with the middle anchor of one [`f2`] copy joined to
    /// `x` and of another to `neg_x`.
    pub fn h(b: &mut GraphBuilder, prefix: &str, x: usize, neg_x: usize) -> Layout {
        let (za, a) = f2(b, &format!("{prefix}/F2a"));
        let (zb, bb) = f2(b, &format!("{prefix}/F2b"));
        let top = leaf(b, vec![(x, neg_x), (za[1], x), (zb[1], neg_x)]);
        Layout::Group(vec![a, bb, top])
    }

    /// Path `a, q1, ..., q7, b` with `q4` joined to the end anchor `z1` of
    /// an [`f2`] copy.
    pub fn q(b: &mut GraphBuilder, prefix: &str, a: usize, end: usize) -> Layout {
        let q: Vec<usize> = (1..=7).map(|i| inner(b, prefix, &format!("q{i}"))).collect();
        let (z, f) = f2(b, &format!("{prefix}/F2"));
        let mut edges = vec![(a, q[0])];
        edges.extend(q.windows(2).map(|w| (w[0], w[1])));
        edges.push((q[6], end));
        edges.push((q[3], z[0]));
        let path = leaf(b, edges);
        Layout::Group(vec![path, f])
    }

    /// Centre `p` with three legs `p, t_i, r_i, c_i`, each `t_i` the anchor
    /// of an [`f1`] copy.
    pub fn l(b: &mut GraphBuilder, prefix: &str, c: [usize; 3]) -> Layout {
        let p = inner(b, prefix, "p");
        let mut parts = Vec::new();
        let mut legs = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            let (t, f) = f1(b, &format!("{prefix}/F1{}", i + 1));
            parts.push(f);
            let r = inner(b, prefix, &format!("r{}", i + 1));
            legs.extend([(p, t), (t, r), (r, ci)]);
        }
        parts.push(leaf(b, legs));
        Layout::Group(parts)
    }

    /// [`q`] on every pair of ports plus one [`l`] on all three.
    pub fn s(b: &mut GraphBuilder, prefix: &str, c: [usize; 3]) -> Layout {
        Layout::Group(vec![
            q(b, &format!("{prefix}/Q12"), c[0], c[1]),
            q(b, &format!("{prefix}/Q23"), c[1], c[2]),
            q(b, &format!("{prefix}/Q13"), c[0], c[2]),
            l(b, &format!("{prefix}/L"), c),
        ])
    }
}

fn ghosts(ports: &[usize], per_port: usize) -> Vec<(usize, Stub)> {
    ports.iter().flat_map(|&p| std::iter::repeat_n((p, Stub::Ghost), per_port)).collect()
}

fn entering(ports: &[usize], weights: &[u32]) -> Vec<(usize, Stub)> {
    ports.iter().map(|&p| (p, Stub::Entering(weights.to_vec()))).collect()
}

fn sorted(t: &[u32]) -> Vec<u32> {
    let mut v = t.to_vec();
    v.sort_unstable();
    v
}

fn one_and_two(t: &[u32]) -> bool {
    sorted(t) == [1, 2]
}

fn has_two(t: &[u32]) -> bool {
    t.contains(&2)
}

fn clause_patterns(allowed: impl Fn(&[u32]) -> bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 1..=2 {
        for b in 1..=2 {
            for c in 1..=2 {
                let t = vec![a, b, c];
                if allowed(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// The contracts of the literal-pair gadgets, `T` under unit weights and
/// `H` under weights `{1, 2}`.
fn literal_pair_contracts(alphabet: Alphabet, ghosts_per_port: usize, exiting: &[(usize, usize)]) -> Vec<Contract> {
    let both = ghosts(&[0, 1], ghosts_per_port);
    let mut out = vec![Contract {
        id: "literal-pair",
        statement: "every orientation with in-sums at most 2 has {s(x), s(neg_x)} = {1, 2}",
        alphabet: alphabet.clone(),
        stubs: both,
        observe: vec![0, 1],
        expect: Expect::Always(one_and_two),
    }];
    let weights = alphabet.weights().to_vec();
    for (port, id, statement) in [
        (0, "x-edges-leave", "no outside edge can enter x"),
        (1, "neg-x-edges-leave", "no outside edge can enter neg_x"),
    ] {
        let mut stubs = ghosts(&[0, 1], ghosts_per_port);
        stubs.push((port, Stub::Entering(weights.clone())));
        out.push(Contract { id, statement, alphabet: alphabet.clone(), stubs, observe: vec![], expect: Expect::Infeasible });
    }
    let stubs = exiting.iter().flat_map(|&(p, n)| std::iter::repeat_n((p, Stub::Exiting(vec![1])), n)).collect();
    out.push(Contract {
        id: "literal-pair-realizable",
        statement: "with unit outside edges leaving the ports, both (1, 2) and (2, 1) occur",
        alphabet,
        stubs,
        observe: vec![0, 1],
        expect: Expect::Exactly(vec![vec![1, 2], vec![2, 1]]),
    });
    out
}

pub fn gadget(name: GadgetName) -> GadgetCatalogEntry {
    let mut b = GraphBuilder::new();
    let one_two = Alphabet::one_two();
    let unit = Alphabet::unit();
    let (port_names, layout, contracts, provenance, needs_bipartite): (Vec<(&str, usize)>, Layout, Vec<Contract>, _, _) =
        match name {
            GadgetName::T => {
                let x = b.add_vertex("x");
                let nx = b.add_vertex("neg_x");
                let layout = build::t(&mut b, "T", x, nx);
                let contracts = literal_pair_contracts(unit, 2, &[(0, 2), (1, 2)]);
                (vec![("x", x), ("neg_x", nx)], layout, contracts, Provenance::TextDetermined, false)
            }
            GadgetName::K => {
                let c = [b.add_vertex("c1"), b.add_vertex("c2"), b.add_vertex("c3")];
                let layout = build::k(&mut b, "K", c);
                let contracts = vec![
                    Contract {
                        id: "clause-has-two",
                        statement: "with a unit edge entering every port, some port has in-sum 2",
                        alphabet: unit.clone(),
                        stubs: entering(&[0, 1, 2], &[1]),
                        observe: vec![0, 1, 2],
                        expect: Expect::Always(has_two),
                    },
                    Contract {
                        id: "clause-realizable",
                        statement: "with a unit edge entering every port, every port pattern containing a 2 occurs",
                        alphabet: unit,
                        stubs: entering(&[0, 1, 2], &[1]),
                        observe: vec![0, 1, 2],
                        expect: Expect::Exactly(clause_patterns(has_two)),
                    },
                ];
                (vec![("c1", c[0]), ("c2", c[1]), ("c3", c[2])], layout, contracts, Provenance::Reconstructed, false)
            }
            GadgetName::F1 => {
                let (z, layout) = build::f1(&mut b, "F1");
                let contracts = vec![Contract {
                    id: "anchor-low",
                    statement: "s(z) is 0 or 1",
                    alphabet: one_two,
                    stubs: ghosts(&[0], 2),
                    observe: vec![0],
                    expect: Expect::Always(|t| t[0] <= 1),
                }];
                (vec![("z", z)], layout, contracts, Provenance::Reconstructed, true)
            }
            GadgetName::F2 => {
                let (z, layout) = build::f2(&mut b, "F2");
                let contracts = vec![Contract {
                    id: "middle-anchor-zero",
                    statement: "s(z2) = 0, and so s(z1) = s(z3) = 1",
                    alphabet: one_two,
                    stubs: ghosts(&[0, 1, 2], 2),
                    observe: vec![0, 1, 2],
                    expect: Expect::Always(|t| t == [1, 0, 1]),
                }];
                (vec![("z1", z[0]), ("z2", z[1]), ("z3", z[2])], layout, contracts, Provenance::Reconstructed, true)
            }
            GadgetName::H => {
                let x = b.add_vertex("x");
                let nx = b.add_vertex("neg_x");
                let layout = build::h(&mut b, "H", x, nx);
                let contracts = literal_pair_contracts(one_two, 2, &[(0, 3)]);
                (vec![("x", x), ("neg_x", nx)], layout, contracts, Provenance::Reconstructed, true)
            }
            GadgetName::Q => {
                let c = [b.add_vertex("c1"), b.add_vertex("c2")];
                let layout = build::q(&mut b, "Q", c[0], c[1]);
                let mut stubs = entering(&[0, 1], &[1, 2]);
                stubs.extend(ghosts(&[0, 1], 2));
                let contracts = vec![Contract {
                    id: "pair-has-two",
                    statement: "with an edge entering each port, some port has in-sum 2",
                    alphabet: one_two,
                    stubs,
                    observe: vec![0, 1],
                    expect: Expect::Always(has_two),
                }];
                (vec![("c1", c[0]), ("c2", c[1])], layout, contracts, Provenance::Reconstructed, true)
            }
            GadgetName::L => {
                let c = [b.add_vertex("c1"), b.add_vertex("c2"), b.add_vertex("c3")];
                let layout = build::l(&mut b, "L", c);
                let contracts = vec![Contract {
                    id: "not-all-two",
                    statement: "the ports never all have in-sum 2",
                    alphabet: one_two,
                    stubs: ghosts(&[0, 1, 2], 2),
                    observe: vec![0, 1, 2],
                    expect: Expect::Always(|t| t != [2, 2, 2]),
                }];
                (vec![("c1", c[0]), ("c2", c[1]), ("c3", c[2])], layout, contracts, Provenance::Reconstructed, true)
            }
            GadgetName::S => {
                let c = [b.add_vertex("c1"), b.add_vertex("c2"), b.add_vertex("c3")];
                let layout = build::s(&mut b, "S", c);
                let contracts = vec![
                    Contract {
                        id: "exactly-one-one",
                        statement: "with an edge entering every port, the port in-sums are 1, 2, 2 in some order",
                        alphabet: one_two.clone(),
                        stubs: entering(&[0, 1, 2], &[1, 2]),
                        observe: vec![0, 1, 2],
                        expect: Expect::Always(|t| sorted(t) == [1, 2, 2]),
                    },
                    Contract {
                        id: "exactly-one-one-realizable",
                        statement: "with a unit edge entering every port, each of the three patterns occurs",
                        alphabet: one_two,
                        stubs: entering(&[0, 1, 2], &[1]),
                        observe: vec![0, 1, 2],
                        expect: Expect::Exactly(vec![vec![1, 2, 2], vec![2, 1, 2], vec![2, 2, 1]]),
                    },
                ];
                (vec![("c1", c[0]), ("c2", c[1]), ("c3", c[2])], layout, contracts, Provenance::Reconstructed, true)
            }
        };
    GadgetCatalogEntry {
        name,
        graph: b.build().expect("gadget builders add simple edges"),
        layout,
        ports: port_names.into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
        contracts,
        provenance,
        needs_bipartite,
    }
}

impl GadgetCatalogEntry {
    /// The same gadget with one edge deleted.
    pub fn without_edge(&self, e: usize) -> GadgetCatalogEntry {
        let (u, v) = self.graph.edge(e);
        GadgetCatalogEntry {
            graph: self.graph.without_edge(e),
            layout: self.layout.without_edge(u, v),
            ..self.clone()
        }
    }

    fn port(&self, i: usize) -> usize {
        self.ports[i].1
    }
}

/// A gadget with a contract's stubs attached.
struct Harness {
    graph: Graph,
    layout: Layout,
    stub_edges: Vec<(usize, usize, Stub)>,
    observe: Vec<usize>,
}

fn harness(entry: &GadgetCatalogEntry, contract: &Contract) -> Harness {
    let g = &entry.graph;
    let mut b = GraphBuilder::new();
    for v in 0..g.n() {
        b.add_vertex(g.label(v).map_or_else(|| format!("v{v}"), str::to_string));
    }
    for &(u, v) in g.edges() {
        b.add_edge(u, v);
    }
    let mut stub_edges = Vec::new();
    for (i, (port, stub)) in contract.stubs.iter().enumerate() {
        let p = entry.port(*port);
        let outer = b.add_vertex(format!("stub{i}@{}", entry.ports[*port].0));
        b.add_edge(p, outer);
        stub_edges.push((p, outer, stub.clone()));
    }
    let stubs = Layout::Leaf(stub_edges.iter().map(|&(p, o, _)| (p, o)).collect());
    Harness {
        graph: b.build().expect("stubs join new vertices"),
        layout: Layout::Group(vec![entry.layout.clone(), stubs]),
        stub_edges,
        observe: contract.observe.iter().map(|&i| entry.port(i)).collect(),
    }
}

fn assembly<'a>(h: &'a Harness, contract: &Contract) -> Assembly<'a> {
    let mut asm = Assembly::new(&h.graph, &h.layout, 2, &contract.alphabet);
    for (p, outer, stub) in &h.stub_edges {
        asm.set_free(*outer);
        let e = h.graph.edge_id(*p, *outer).expect("stub edge");
        // stub vertices are added after the gadget, so the edge is (port, outer)
        let opts: Vec<(Direction, u32)> = match stub {
            Stub::Ghost => continue,
            Stub::Entering(ws) => ws.iter().map(|&w| (Direction::Reverse, w)).collect(),
            Stub::Exiting(ws) => ws.iter().map(|&w| (Direction::Forward, w)).collect(),
        };
        asm.restrict_edge(e, &opts);
    }
    asm.observe(&h.observe);
    asm
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Tabulated composition over the gadget's layout.
    Composed,
    /// Plain exhaustive search over the whole harness.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub statement: String,
    pub passed: bool,
    /// Port-value tuples over all admissible orientations.
    pub observed: Vec<Vec<u32>>,
    pub detail: String,
    /// Harness orientation violating the contract, in the orientation text
    /// format (harness vertices: the gadget's, then one per stub).
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub name: GadgetName,
    pub provenance: Provenance,
    pub vertices: usize,
    pub edges: usize,
    pub ports: Vec<String>,
    pub method: Method,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn check_contract(entry: &GadgetCatalogEntry, contract: &Contract, method: Method) -> Result<CheckResult, SolveError> {
    let h = harness(entry, contract);
    let asm = assembly(&h, contract);
    let observed = match method {
        Method::Composed => asm.observed_values()?,
        Method::Direct => asm.observed_values_direct()?,
    };
    let witness = |values: &[u32]| -> Result<Option<String>, SolveError> {
        Ok(asm.realize(values)?.map(|wo| serialize_orientation(&h.graph, &wo)))
    };
    let (passed, detail, counterexample) = match &contract.expect {
        Expect::Always(pred) => match observed.iter().find(|t| !pred(t)) {
            _ if observed.is_empty() => (false, "no admissible orientation, so the contract is vacuous".into(), None),
            Some(bad) => (false, format!("port values {bad:?} violate the contract"), witness(bad)?),
            None => (true, format!("{} port patterns, all as required", observed.len()), None),
        },
        Expect::Exactly(want) => {
            let missing: Vec<&Vec<u32>> = want.iter().filter(|t| !observed.contains(t)).collect();
            let extra: Vec<&Vec<u32>> = observed.iter().filter(|t| !want.contains(t)).collect();
            if missing.is_empty() && extra.is_empty() {
                (true, format!("exactly the {} required port patterns occur", want.len()), None)
            } else {
                let cex = match extra.first() {
                    Some(t) => witness(t)?,
                    None => None,
                };
                (false, format!("missing {missing:?}, unexpected {extra:?}"), cex)
            }
        }
        Expect::Infeasible => {
            if observed.is_empty() {
                (true, "no admissible orientation, as required".into(), None)
            } else {
                let cex = asm.solve()?.map(|wo| serialize_orientation(&h.graph, &wo));
                (false, "an admissible orientation exists".into(), cex)
            }
        }
    };
    Ok(CheckResult {
        id: contract.id.to_string(),
        statement: contract.statement.to_string(),
        passed,
        observed,
        detail,
        counterexample,
    })
}

/// Checks every contract of `entry`, plus planarity (and bipartiteness for
/// gadgets of the bipartite construction).
pub fn verify_gadget(entry: &GadgetCatalogEntry) -> Result<GadgetReport, SolveError> {
    verify_gadget_with(entry, Method::Composed)
}

pub fn verify_gadget_with(entry: &GadgetCatalogEntry, method: Method) -> Result<GadgetReport, SolveError> {
    let mut checks = Vec::new();
    let structural = |id: &str, statement: &str, passed: bool| CheckResult {
        id: id.to_string(),
        statement: statement.to_string(),
        passed,
        observed: Vec::new(),
        detail: if passed { "holds".into() } else { "fails".into() },
        counterexample: None,
    };
    checks.push(structural("planar", "the gadget graph is planar", is_planar(&entry.graph)));
    if entry.needs_bipartite {
        checks.push(structural("bipartite", "the gadget graph is bipartite", is_bipartite(&entry.graph).is_some()));
    }
    for c in &entry.contracts {
        checks.push(check_contract(entry, c, method)?);
    }
    Ok(GadgetReport {
        name: entry.name,
        provenance: entry.provenance,
        vertices: entry.graph.n(),
        edges: entry.graph.m(),
        ports: entry.ports.iter().map(|(n, _)| n.clone()).collect(),
        method,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationResult {
    pub edge: (String, String),
    /// Whether deleting the edge makes some contract fail.
    pub broken: bool,
    pub failed: Vec<String>,
}

/// Deletes each edge in turn and re-checks the contracts.
pub fn mutation_report(entry: &GadgetCatalogEntry) -> Result<Vec<MutationResult>, SolveError> {
    let name = |v: usize| entry.graph.label(v).map_or_else(|| v.to_string(), str::to_string);
    (0..entry.graph.m())
        .map(|e| {
            let mutated = entry.without_edge(e);
            let mut failed = Vec::new();
            for c in &mutated.contracts {
                if !check_contract(&mutated, c, Method::Composed)?.passed {
                    failed.push(c.id.to_string());
                }
            }
            let (u, v) = entry.graph.edge(e);
            Ok(MutationResult { edge: (name(u), name(v)), broken: !failed.is_empty(), failed })
        })
        .collect()
}
