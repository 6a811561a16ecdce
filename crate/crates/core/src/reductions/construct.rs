//! The two constructions from CNF instances, reading assignments back off
//! optimal orientations, and building orientations from assignments.
//!
//! `H` (from type 2 instances) asks whether unit weights suffice for
//! in-sums at most 2; `G` (from cubic instances) asks whether in-sums at
//! most 2 are possible at all. Variable `i` (1-based) has ports `x_i` and
//! `neg_x_i`; clause `j` has ports `c_1^j`, `c_2^j`, `c_3^j`, and its `t`-th
//! literal is joined to `c_t^j`.

use std::fmt;

use serde::Serialize;

use crate::graph::{Graph, GraphBuilder};
use crate::orientation::{is_semi_proper, max_s, s_profile, Direction, WeightedOrientation};
use crate::solver::compose::{Assembly, Layout};
use crate::solver::{Alphabet, SolveError, Solution};

use super::cnf::{validate_instance, CnfInstance, Flavor};
use super::gadgets::build;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Which {
    H,
    G,
}

impl Which {
    pub fn flavor(self) -> Flavor {
        match self {
            Which::H => Flavor::Type2,
            Which::G => Flavor::Cubic1in3,
        }
    }

    pub fn for_flavor(f: Flavor) -> Which {
        match f {
            Flavor::Type2 => Which::H,
            Flavor::Cubic1in3 => Which::G,
        }
    }

    /// Weights allowed in the orientations the construction is about.
    pub fn alphabet(self) -> Alphabet {
        match self {
            Which::H => Alphabet::unit(),
            Which::G => Alphabet::one_two(),
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid instance: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("{which} needs a {expected} instance, got {got}")]
    WrongFlavor { which: Which, expected: Flavor, got: Flavor },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("gadget catalog defect: {0}")]
    Catalog(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub which: Which,
    pub graph: Graph,
    pub layout: Layout,
    /// Edges joining a variable gadget to a clause gadget, with the
    /// variable-side endpoint.
    pub cross_edges: Vec<(usize, usize)>,
    pub x: Vec<usize>,
    pub neg_x: Vec<usize>,
    pub clause_ports: Vec<[usize; 3]>,
}

fn check(f: &CnfInstance, which: Which) -> Result<(), ReductionError> {
    if f.flavor != which.flavor() {
        return Err(ReductionError::WrongFlavor { which, expected: which.flavor(), got: f.flavor });
    }
    let v = validate_instance(f);
    if !v.ok {
        return Err(ReductionError::Invalid(v.diagnostics));
    }
    Ok(())
}

fn construct(f: &CnfInstance, which: Which) -> Result<Construction, ReductionError> {
    check(f, which)?;
    let mut b = GraphBuilder::new();
    let mut parts = Vec::new();
    let mut x = Vec::new();
    let mut neg_x = Vec::new();
    for i in 1..=f.num_vars {
        let xi = b.add_vertex(format!("x_{i}"));
        let ni = b.add_vertex(format!("neg_x_{i}"));
        parts.push(match which {
            Which::H => build::t(&mut b, &format!("T_x{i}"), xi, ni),
            Which::G => build::h(&mut b, &format!("H_x{i}"), xi, ni),
        });
        x.push(xi);
        neg_x.push(ni);
    }
    let mut clause_ports = Vec::new();
    for j in 1..=f.clauses.len() {
        let c = [1, 2, 3].map(|t| b.add_vertex(format!("c_{t}^{j}")));
        parts.push(match which {
            Which::H => build::k(&mut b, &format!("K_c{j}"), c),
            Which::G => build::s(&mut b, &format!("S_c{j}"), c),
        });
        clause_ports.push(c);
    }
    let mut cross_edges = Vec::new();
    for (clause, ports) in f.clauses.iter().zip(&clause_ports) {
        for (lit, &c) in clause.iter().zip(ports) {
            let v = if lit.negated { neg_x[lit.var] } else { x[lit.var] };
            b.add_edge(v, c);
            parts.push(Layout::Leaf(vec![(v, c)]));
            cross_edges.push((v, c));
        }
    }
    Ok(Construction {
        which,
        graph: b.build().expect("constructions add simple edges"),
        layout: Layout::Group(parts),
        cross_edges,
        x,
        neg_x,
        clause_ports,
    })
}

/// Type 2 instance to the graph `H`: a `T` gadget per variable, a `K`
/// gadget per clause, and literal-to-clause edges.
pub fn build_h(f: &CnfInstance) -> Result<Construction, ReductionError> {
    construct(f, Which::H)
}

/// Cubic instance to the graph `G`: an `H` gadget per variable, an `S`
/// gadget per clause, and variable-to-clause edges.
pub fn build_g(f: &CnfInstance) -> Result<Construction, ReductionError> {
    construct(f, Which::G)
}

pub fn build(f: &CnfInstance) -> Result<Construction, ReductionError> {
    construct(f, Which::for_flavor(f.flavor))
}

impl Construction {
    /// Exact solver over the gadget layout with in-sums at most `k`.
    pub fn assembly(&self, k: u32, alphabet: &Alphabet) -> Assembly<'_> {
        Assembly::new(&self.graph, &self.layout, k, alphabet)
    }

    /// Some semi-proper orientation with in-sums at most `k`.
    pub fn decide(&self, k: u32, alphabet: &Alphabet) -> Result<Option<WeightedOrientation>, SolveError> {
        self.assembly(k, alphabet).solve()
    }

    /// Least `k` for which [`Construction::decide`] succeeds.
    pub fn number(&self, alphabet: &Alphabet) -> Result<Solution, SolveError> {
        for k in 0..=self.graph.max_degree() as u32 {
            if let Some(witness) = self.decide(k, alphabet)? {
                return Ok(Solution { value: k, witness });
            }
        }
        Err(SolveError::Internal("no orientation within the maximum degree".into()))
    }

    fn cross_edge_ids(&self) -> Vec<(usize, Direction)> {
        self.cross_edges
            .iter()
            .map(|&(var, c)| {
                let e = self.graph.edge_id(var, c).expect("cross edge");
                let dir = if self.graph.edge(e) == (var, c) { Direction::Forward } else { Direction::Reverse };
                (e, dir)
            })
            .collect()
    }

    /// Assembly with every cross edge pointing from the variable side with
    /// weight 1.
    fn with_cross_edges_out(&self, k: u32, alphabet: &Alphabet) -> Assembly<'_> {
        let mut asm = self.assembly(k, alphabet);
        for (e, dir) in self.cross_edge_ids() {
            asm.restrict_edge(e, &[(dir, 1)]);
        }
        asm
    }

    /// An orientation of `H` with in-sum at most 2 using weights `{1, 2}`,
    /// cross edges leaving the variable gadgets with weight 1. Together with
    /// the triangle in every `T` this certifies `χ⃗ₛ(H) = 2`.
    pub fn two_witness(&self) -> Result<Option<WeightedOrientation>, SolveError> {
        self.with_cross_edges_out(2, &Alphabet::one_two()).solve()
    }

    /// Port values a variable takes under an assignment: `H` puts 1 on the
    /// true literal, `G` puts 2 on a true variable.
    fn literal_values(&self, value: bool) -> (u32, u32) {
        match (self.which, value) {
            (Which::H, true) | (Which::G, false) => (1, 2),
            (Which::H, false) | (Which::G, true) => (2, 1),
        }
    }

    /// An orientation with in-sums at most 2, cross edges leaving the
    /// variable gadgets with weight 1 and ports pinned by `assignment`,
    /// without checking that the assignment satisfies anything.
    pub fn complete(&self, assignment: &[bool]) -> Result<Option<WeightedOrientation>, SolveError> {
        let mut asm = self.with_cross_edges_out(2, &self.which.alphabet());
        for (i, &value) in assignment.iter().enumerate() {
            let (a, b) = self.literal_values(value);
            asm.restrict_values(self.x[i], 1 << a);
            asm.restrict_values(self.neg_x[i], 1 << b);
        }
        asm.solve()
    }
}

/// Reads the assignment off an optimal orientation of a construction and
/// checks that it satisfies `f`.
pub fn extract_assignment(f: &CnfInstance, c: &Construction, wo: &WeightedOrientation) -> Result<Vec<bool>, ReductionError> {
    let g = &c.graph;
    let pre = |m: String| ReductionError::Precondition(m);
    wo.check_covers(g).map_err(|e| pre(e.to_string()))?;
    if !is_semi_proper(g, wo).map_err(|e| pre(e.to_string()))? {
        return Err(pre("orientation is not semi-proper".into()));
    }
    let top = max_s(g, wo).map_err(|e| pre(e.to_string()))?;
    if top != 2 {
        return Err(pre(format!("maximum in-sum is {top}, expected 2")));
    }
    let allowed = c.which.alphabet();
    if let Some(w) = wo.weights().iter().find(|w| !allowed.weights().contains(w)) {
        return Err(pre(format!("weight {w} outside {allowed}")));
    }
    let s = s_profile(g, wo).map_err(|e| pre(e.to_string()))?;
    let assignment: Vec<bool> = c
        .x
        .iter()
        .map(|&v| match (c.which, s[v]) {
            (Which::H, 1) | (Which::G, 2) => Ok(true),
            (Which::H, 2) | (Which::G, 1) => Ok(false),
            (_, other) => Err(ReductionError::Catalog(format!("{} has in-sum {other}", g.label(v).unwrap_or("?")))),
        })
        .collect::<Result<_, _>>()?;
    if !f.satisfied_by(&assignment) {
        return Err(ReductionError::Catalog(format!("extracted assignment {assignment:?} does not satisfy the instance")));
    }
    Ok(assignment)
}

/// Orientation of the construction for `f` realising a satisfying
/// `assignment`: in-sums at most 2, cross edges of weight 1 leaving the
/// variable side, and for `H` unit weights throughout. Gadget interiors are
/// completed by search.
pub fn assignment_to_orientation(f: &CnfInstance, assignment: &[bool]) -> Result<(Construction, WeightedOrientation), ReductionError> {
    let c = build(f)?;
    if !f.satisfied_by(assignment) {
        return Err(ReductionError::Precondition("assignment does not satisfy the instance".into()));
    }
    let wo = c
        .complete(assignment)?
        .ok_or_else(|| ReductionError::Catalog("no gadget completion for a satisfying assignment".into()))?;
    let ok = is_semi_proper(&c.graph, &wo).unwrap_or(false) && max_s(&c.graph, &wo).unwrap_or(u64::MAX) <= 2;
    if !ok {
        return Err(ReductionError::Solve(SolveError::Internal("completion is not a valid orientation".into())));
    }
    Ok((c, wo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_bipartite, is_planar};
    use crate::generate::seeded;
    use crate::reductions::cnf::{planted_cubic, Literal};
    use crate::solver::decide;

    fn clause(a: Literal, b: Literal, c: Literal) -> [Literal; 3] {
        [a, b, c]
    }

    #[test]
    fn h_sizes() {
        let f = CnfInstance::new(1, vec![], Flavor::Type2);
        let c = build_h(&f).unwrap();
        assert_eq!(c.graph.n(), 7);
        let f = CnfInstance::new(3, vec![clause(Literal::pos(0), Literal::neg(1), Literal::pos(2))], Flavor::Type2);
        let c = build_h(&f).unwrap();
        assert_eq!(c.graph.n(), 3 * 7 + 10);
        assert_eq!(c.cross_edges.len(), 3);
        assert!(is_planar(&c.graph));
        assert_eq!(c.graph.find_label("c_2^1"), Some(c.clause_ports[0][1]));
        assert!(c.graph.has_edge(c.neg_x[1], c.clause_ports[0][1]));
    }

    /// Each clause omits one of four variables; no clause can have exactly
    /// one true variable in every clause, and the incidence graph is a cube.
    fn cube_instance() -> CnfInstance {
        let p = Literal::pos;
        let clauses = vec![[p(0), p(1), p(2)], [p(0), p(1), p(3)], [p(0), p(2), p(3)], [p(1), p(2), p(3)]];
        CnfInstance::new(4, clauses, Flavor::Cubic1in3)
    }

    #[test]
    fn g_is_bipartite_and_planar() {
        let f = CnfInstance::new(1, vec![], Flavor::Cubic1in3);
        // a lone variable occurs zero times, which validation rejects
        assert!(matches!(build_g(&f), Err(ReductionError::Invalid(_))));
        let f = cube_instance();
        let c = build_g(&f).unwrap();
        assert!(is_bipartite(&c.graph).is_some());
        assert!(is_planar(&c.graph));
        assert!(matches!(build_h(&f), Err(ReductionError::WrongFlavor { .. })));
    }

    #[test]
    fn h_round_trip_on_one_clause() {
        let f = CnfInstance::new(3, vec![clause(Literal::pos(0), Literal::pos(1), Literal::pos(2))], Flavor::Type2);
        let c = build_h(&f).unwrap();
        let direct = decide(&c.graph, 2, &Alphabet::unit()).unwrap().unwrap();
        let a = extract_assignment(&f, &c, &direct).unwrap();
        assert!(f.satisfied_by(&a));
        let composed = c.decide(2, &Alphabet::unit()).unwrap().unwrap();
        assert!(f.satisfied_by(&extract_assignment(&f, &c, &composed).unwrap()));
        let (_, wo) = assignment_to_orientation(&f, &[false, true, false]).unwrap();
        assert!(wo.weights().iter().all(|&w| w == 1));
        assert_eq!(max_s(&c.graph, &wo).unwrap(), 2);
        assert!(assignment_to_orientation(&f, &[false, false, false]).is_err());
        assert!(c.complete(&[false, false, false]).unwrap().is_none());
        let two = c.two_witness().unwrap().unwrap();
        assert_eq!(max_s(&c.graph, &two).unwrap(), 2);
    }

    #[test]
    fn extraction_rejects_bad_orientations() {
        let f = CnfInstance::new(3, vec![clause(Literal::pos(0), Literal::pos(1), Literal::pos(2))], Flavor::Type2);
        let c = build_h(&f).unwrap();
        let uniform = WeightedOrientation::uniform(&c.graph);
        assert!(matches!(extract_assignment(&f, &c, &uniform), Err(ReductionError::Precondition(_))));
        let two = c.two_witness().unwrap().unwrap();
        if two.weights().contains(&2) {
            assert!(matches!(extract_assignment(&f, &c, &two), Err(ReductionError::Precondition(_))));
        }
    }

    #[test]
    fn g_round_trip() {
        let f = planted_cubic(6, &mut seeded(1)).unwrap();
        let c = build_g(&f).unwrap();
        let sol = c.number(&Alphabet::one_two()).unwrap();
        assert_eq!(sol.value, 2);
        let a = extract_assignment(&f, &c, &sol.witness).unwrap();
        assert!(f.satisfied_by(&a));
        let truth = f.brute_force().unwrap();
        let (_, wo) = assignment_to_orientation(&f, &truth).unwrap();
        assert_eq!(max_s(&c.graph, &wo).unwrap(), 2);
        assert!(c.complete(&[true; 6]).unwrap().is_none());

        let unsat = cube_instance();
        assert!(unsat.brute_force().is_none());
        let c = build_g(&unsat).unwrap();
        assert!(c.decide(2, &Alphabet::one_two()).unwrap().is_none());
    }
}
