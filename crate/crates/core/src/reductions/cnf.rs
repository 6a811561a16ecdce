//! 3-CNF instances: DIMACS input and output, the two instance flavours,
//! validation, truth-table solving and random cubic monotone instances.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{is_planar, Graph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown flavor {0:?} (expected type2 or cubic1in3)")]
    Flavor(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// Zero-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }

    fn dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Ordinary 3-SAT with a planar clause/literal incidence graph.
    Type2,
    /// Monotone, every variable in exactly three clauses, planar
    /// variable/clause incidence; asks for exactly one true literal per clause.
    Cubic1in3,
}

impl FromStr for Flavor {
    type Err = CnfError;

    fn from_str(s: &str) -> Result<Self, CnfError> {
        match s {
            "type2" => Ok(Flavor::Type2),
            "cubic1in3" => Ok(Flavor::Cubic1in3),
            other => Err(CnfError::Flavor(other.to_string())),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Type2 => "type2",
            Flavor::Cubic1in3 => "cubic1in3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
    pub flavor: Flavor,
}

impl CnfInstance {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>, flavor: Flavor) -> Self {
        CnfInstance { num_vars, clauses, flavor }
    }

    /// Whether `assignment` satisfies the instance in its flavour's sense.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        if assignment.len() != self.num_vars {
            return false;
        }
        self.clauses.iter().all(|c| {
            let trues = c.iter().filter(|l| l.eval(assignment)).count();
            match self.flavor {
                Flavor::Type2 => trues >= 1,
                Flavor::Cubic1in3 => trues == 1,
            }
        })
    }

    /// First satisfying assignment in binary counting order.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars < 26, "truth table too large");
        (0u32..1 << self.num_vars)
            .map(|bits| (0..self.num_vars).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
            .find(|a| self.satisfied_by(a))
    }

    /// Type 2: clauses, then literals `x_i`, then `neg_x_i`; each clause
    /// joined to its literals and each `x_i` to `neg_x_i`. Cubic: variables
    /// then clauses, each clause joined to its variables.
    pub fn incidence_graph(&self) -> Graph {
        let n = self.num_vars;
        let m = self.clauses.len();
        let mut edges = Vec::new();
        match self.flavor {
            Flavor::Type2 => {
                for i in 0..n {
                    edges.push((m + i, m + n + i));
                }
                for (j, c) in self.clauses.iter().enumerate() {
                    for l in c {
                        edges.push((j, m + l.var + if l.negated { n } else { 0 }));
                    }
                }
                simple_graph(m + 2 * n, edges)
            }
            Flavor::Cubic1in3 => {
                for (j, c) in self.clauses.iter().enumerate() {
                    for l in c {
                        edges.push((l.var, n + j));
                    }
                }
                simple_graph(n + m, edges)
            }
        }
    }
}

fn simple_graph(n: usize, mut edges: Vec<(usize, usize)>) -> Graph {
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(n, edges).expect("deduplicated edges between distinct vertices")
}

pub fn parse_dimacs(text: &str, flavor: Flavor) -> Result<CnfInstance, CnfError> {
    let err = |line: usize, message: String| CnfError::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() {
                return Err(err(line, "second header".into()));
            }
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(err(line, "expected `p cnf <vars> <clauses>`".into()));
            }
            let nv = parts[2].parse().map_err(|_| err(line, format!("bad variable count {:?}", parts[2])))?;
            let nc = parts[3].parse().map_err(|_| err(line, format!("bad clause count {:?}", parts[3])))?;
            header = Some((nv, nc));
            continue;
        }
        let Some((nv, _)) = header else { return Err(err(line, "clause before header".into())) };
        for tok in t.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| err(line, format!("bad literal {tok:?}")))?;
            if pending.is_empty() {
                pending_line = line;
            }
            if x == 0 {
                let lits: [Literal; 3] = pending
                    .as_slice()
                    .try_into()
                    .map_err(|_| err(pending_line, format!("clause has {} literals, expected 3", pending.len())))?;
                clauses.push(lits);
                pending.clear();
                continue;
            }
            let var = x.unsigned_abs() as usize;
            if var > nv {
                return Err(err(line, format!("variable {var} exceeds declared count {nv}")));
            }
            pending.push(Literal { var: var - 1, negated: x < 0 });
        }
    }
    let Some((nv, nc)) = header else { return Err(err(0, "missing `p cnf` header".into())) };
    if !pending.is_empty() {
        return Err(err(pending_line, "clause not terminated by 0".into()));
    }
    if clauses.len() != nc {
        return Err(err(0, format!("header declares {nc} clauses, found {}", clauses.len())));
    }
    Ok(CnfInstance::new(nv, clauses, flavor))
}

pub fn to_dimacs(f: &CnfInstance) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        out.push_str(&format!("{} {} {} 0\n", c[0].dimacs(), c[1].dimacs(), c[2].dimacs()));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

pub fn validate_instance(f: &CnfInstance) -> Validation {
    let mut diagnostics = Vec::new();
    for (j, c) in f.clauses.iter().enumerate() {
        for l in c {
            if l.var >= f.num_vars {
                diagnostics.push(format!("clause {}: variable {} out of range", j + 1, l.var + 1));
            }
        }
    }
    if !diagnostics.is_empty() {
        return Validation { ok: false, diagnostics };
    }
    if f.flavor == Flavor::Cubic1in3 {
        let mut count = vec![0usize; f.num_vars];
        for (j, c) in f.clauses.iter().enumerate() {
            for l in c {
                count[l.var] += 1;
                if l.negated {
                    diagnostics.push(format!("clause {}: negated literal of variable {}", j + 1, l.var + 1));
                }
            }
        }
        for (i, &k) in count.iter().enumerate() {
            if k != 3 {
                diagnostics.push(format!("occurrence count: variable {} appears {k} times, expected 3", i + 1));
            }
        }
    }
    if !is_planar(&f.incidence_graph()) {
        diagnostics.push("incidence graph is not planar".into());
    }
    Validation { ok: diagnostics.is_empty(), diagnostics }
}

/// Random cubic monotone instance on `n` variables and `n` clauses, no
/// variable twice in a clause, planar incidence. `None` if rejection
/// sampling gives up.
pub fn random_cubic(n: usize, rng: &mut impl Rng) -> Option<CnfInstance> {
    for _ in 0..1000 {
        let mut slots: Vec<usize> = (0..n).flat_map(|v| [v; 3]).collect();
        slots.shuffle(rng);
        if let Some(f) = cubic_from_slots(n, &slots) {
            return Some(f);
        }
    }
    None
}

/// Random cubic monotone instance with `n` (a multiple of 3) variables,
/// built around a hidden 1-in-3 assignment, so it is satisfiable.
pub fn planted_cubic(n: usize, rng: &mut impl Rng) -> Option<CnfInstance> {
    assert!(n.is_multiple_of(3) && n > 0, "planted instances need a multiple of 3 variables");
    for _ in 0..1000 {
        let mut vars: Vec<usize> = (0..n).collect();
        vars.shuffle(rng);
        let (truthy, falsy) = vars.split_at(n / 3);
        let mut t: Vec<usize> = truthy.iter().flat_map(|&v| [v; 3]).collect();
        let mut f: Vec<usize> = falsy.iter().flat_map(|&v| [v; 3]).collect();
        t.shuffle(rng);
        f.shuffle(rng);
        let mut slots = Vec::with_capacity(3 * n);
        for j in 0..n {
            let mut c = [t[j], f[2 * j], f[2 * j + 1]];
            c.shuffle(rng);
            slots.extend(c);
        }
        if let Some(inst) = cubic_from_slots(n, &slots) {
            return Some(inst);
        }
    }
    None
}

fn cubic_from_slots(n: usize, slots: &[usize]) -> Option<CnfInstance> {
    let clauses: Vec<[Literal; 3]> =
        slots.chunks(3).map(|c| [Literal::pos(c[0]), Literal::pos(c[1]), Literal::pos(c[2])]).collect();
    if clauses.iter().any(|c| c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var) {
        return None;
    }
    let f = CnfInstance::new(n, clauses, Flavor::Cubic1in3);
    validate_instance(&f).ok.then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::seeded;

    #[test]
    fn dimacs_round_trip() {
        let f = parse_dimacs("c demo\np cnf 3 2\n1 -2 3 0\n-1 2\n -3 0\n", Flavor::Type2).unwrap();
        assert_eq!(f.clauses.len(), 2);
        assert_eq!(f.clauses[1], [Literal::neg(0), Literal::pos(1), Literal::neg(2)]);
        assert_eq!(parse_dimacs(&to_dimacs(&f), Flavor::Type2).unwrap(), f);
    }

    #[test]
    fn dimacs_errors() {
        assert!(parse_dimacs("1 2 3 0\n", Flavor::Type2).is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2 3 0\n", Flavor::Type2).is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 2 0\n", Flavor::Type2).is_err());
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n", Flavor::Type2).is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 2 3\n", Flavor::Type2).is_err());
        assert!("type3".parse::<Flavor>().is_err());
    }

    #[test]
    fn validation_examples() {
        let one = CnfInstance::new(3, vec![[Literal::pos(0), Literal::pos(1), Literal::pos(2)]], Flavor::Type2);
        assert!(validate_instance(&one).ok);
        let g = one.incidence_graph();
        assert_eq!((g.n(), g.m()), (7, 6));

        let twice = CnfInstance::new(
            3,
            vec![[Literal::pos(0), Literal::pos(1), Literal::pos(2)], [Literal::pos(0), Literal::pos(1), Literal::pos(2)]],
            Flavor::Cubic1in3,
        );
        let v = validate_instance(&twice);
        assert!(!v.ok);
        assert!(v.diagnostics.iter().any(|d| d.contains("occurrence count")));

        let negated = CnfInstance::new(
            3,
            vec![[Literal::neg(0), Literal::pos(1), Literal::pos(2)]; 3],
            Flavor::Cubic1in3,
        );
        let v = validate_instance(&negated);
        assert!(!v.ok);
        assert!(v.diagnostics.iter().any(|d| d.contains("negated")));
    }

    #[test]
    fn satisfaction_semantics() {
        let c = [Literal::pos(0), Literal::pos(1), Literal::pos(2)];
        let t2 = CnfInstance::new(3, vec![c], Flavor::Type2);
        let exact = CnfInstance::new(3, vec![c], Flavor::Cubic1in3);
        assert!(t2.satisfied_by(&[true, true, false]));
        assert!(!exact.satisfied_by(&[true, true, false]));
        assert!(exact.satisfied_by(&[false, true, false]));
        assert_eq!(t2.brute_force(), Some(vec![true, false, false]));
    }

    #[test]
    fn cubic_generators() {
        // three variables force K_{3,3} incidence, never planar
        assert!(planted_cubic(3, &mut seeded(0)).is_none());
        let mut rng = seeded(2);
        // no planar cubic bipartite graph has 10 vertices
        assert!(random_cubic(5, &mut seeded(0)).is_none());
        for n in [4, 6, 7] {
            let f = random_cubic(n, &mut rng).unwrap();
            assert!(validate_instance(&f).ok);
            assert_eq!(f.clauses.len(), n);
        }
        for n in [6, 9] {
            let f = planted_cubic(n, &mut rng).unwrap();
            assert!(validate_instance(&f).ok);
            assert!(f.brute_force().is_some());
        }
    }
}
