//! Exact solving of graphs assembled from edge-disjoint pieces.
//!
//! A [`Layout`] partitions the edges into leaves, grouped hierarchically.
//! For every piece we tabulate which `(value, in-flow)` combinations its
//! boundary vertices can have: the value is the vertex's final in-sum, the
//! in-flow is the part of it contributed by the piece's own edges. A group's
//! table is obtained by matching values and adding in-flows across its
//! children. Pieces with identical local structure share one table, so a
//! graph built from many copies of a few gadgets costs about as much as the
//! gadgets themselves.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::graph::Graph;
use crate::orientation::{Direction, WeightedOrientation};

use super::engine::{all_options, mask_up_to, Engine, OrderPolicy, Problem, Rule};
use super::{Alphabet, SolveError};

/// Hierarchical partition of a graph's edges, given by endpoint pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    Leaf(Vec<(usize, usize)>),
    Group(Vec<Layout>),
}

impl Layout {
    pub fn map_vertices(&self, f: &impl Fn(usize) -> usize) -> Layout {
        match self {
            Layout::Leaf(es) => Layout::Leaf(es.iter().map(|&(u, v)| (f(u), f(v))).collect()),
            Layout::Group(cs) => Layout::Group(cs.iter().map(|c| c.map_vertices(f)).collect()),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.collect_edges(&mut out);
        out
    }

    fn collect_edges(&self, out: &mut Vec<(usize, usize)>) {
        match self {
            Layout::Leaf(es) => out.extend_from_slice(es),
            Layout::Group(cs) => cs.iter().for_each(|c| c.collect_edges(out)),
        }
    }

    /// Same layout with edge `{u, v}` dropped wherever it occurs.
    pub fn without_edge(&self, u: usize, v: usize) -> Layout {
        let hit = |&(a, b): &(usize, usize)| (a, b) == (u, v) || (a, b) == (v, u);
        match self {
            Layout::Leaf(es) => Layout::Leaf(es.iter().copied().filter(|e| !hit(e)).collect()),
            Layout::Group(cs) => Layout::Group(cs.iter().map(|c| c.without_edge(u, v)).collect()),
        }
    }
}

type Row = Vec<[u8; 2]>;
/// Local graph, edge map, vertex rules and per-edge options of one leaf.
type LeafProblem = (Graph, Vec<usize>, Vec<Rule>, Vec<Vec<(Direction, u32)>>);

#[derive(Clone, Debug)]
enum Kind {
    Leaf(Vec<usize>),
    Group(Vec<usize>),
}

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    /// Global vertex ids in local order.
    verts: Vec<usize>,
    /// Local indices of boundary vertices, ascending.
    boundary: Vec<usize>,
    /// Whether each boundary vertex also has edges outside the piece.
    outside: Vec<bool>,
    sig: usize,
}

/// A graph with a layout and per-vertex and per-edge restrictions.
#[derive(Clone, Debug)]
pub struct Assembly<'a> {
    graph: &'a Graph,
    layout: &'a Layout,
    k: u32,
    masks: Vec<Option<u64>>,
    options: Vec<Vec<(Direction, u32)>>,
    observed: Vec<usize>,
}

struct Compiled {
    nodes: Vec<Node>,
    tables: Vec<Rc<Vec<Row>>>,
    sig_ids: HashMap<Vec<u32>, usize>,
    root: usize,
}

impl<'a> Assembly<'a> {
    pub fn new(graph: &'a Graph, layout: &'a Layout, k: u32, alphabet: &Alphabet) -> Self {
        Assembly {
            graph,
            layout,
            k: k.min(60),
            masks: vec![Some(mask_up_to(k)); graph.n()],
            options: vec![all_options(alphabet.weights()); graph.m()],
            observed: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Restricts the final in-sum of `v` to the values in `mask`.
    pub fn restrict_values(&mut self, v: usize, mask: u64) {
        if let Some(m) = &mut self.masks[v] {
            *m &= mask;
        }
    }

    /// Marks `v` as unconstrained and never compared.
    pub fn set_free(&mut self, v: usize) {
        self.masks[v] = None;
    }

    /// Restricts edge `e` to the given `(direction, weight)` options.
    pub fn restrict_edge(&mut self, e: usize, options: &[(Direction, u32)]) {
        self.options[e].retain(|o| options.contains(o));
    }

    /// Vertices whose values [`Assembly::observed_values`] reports.
    pub fn observe(&mut self, vertices: &[usize]) {
        self.observed = vertices.to_vec();
    }

    fn check_layout(&self) -> Result<(), SolveError> {
        let mut seen = vec![false; self.graph.m()];
        for (u, v) in self.layout.edges() {
            let e = self
                .graph
                .edge_id(u, v)
                .ok_or_else(|| SolveError::Internal(format!("layout edge {{{u},{v}}} is not in the graph")))?;
            if std::mem::replace(&mut seen[e], true) {
                return Err(SolveError::Internal(format!("layout lists edge {{{u},{v}}} twice")));
            }
        }
        if let Some(e) = seen.iter().position(|s| !s) {
            return Err(SolveError::Internal(format!("layout misses edge {:?}", self.graph.edge(e))));
        }
        for &v in &self.observed {
            if self.graph.degree(v) == 0 || self.masks[v].is_none() {
                return Err(SolveError::Internal(format!("observed vertex {v} must be constrained and have edges")));
            }
        }
        Ok(())
    }

    fn isolated_ok(&self) -> bool {
        (0..self.graph.n()).all(|v| self.graph.degree(v) > 0 || self.masks[v].is_none_or(|m| m & 1 == 1))
    }

    /// Some orientation meeting every restriction, or `None`.
    pub fn solve(&self) -> Result<Option<WeightedOrientation>, SolveError> {
        self.check_layout()?;
        if !self.isolated_ok() {
            return Ok(None);
        }
        let c = self.compile()?;
        let root = &c.nodes[c.root];
        let Some(choice) = Csp::new(&c, root, None).first() else { return Ok(None) };
        let mut wo = WeightedOrientation::uniform(self.graph);
        self.realize_children(&c, root, &choice, &mut wo)?;
        Ok(Some(wo))
    }

    /// Every combination of values the observed vertices take over all
    /// orientations meeting the restrictions.
    pub fn observed_values(&self) -> Result<Vec<Vec<u32>>, SolveError> {
        self.check_layout()?;
        if !self.isolated_ok() {
            return Ok(Vec::new());
        }
        let c = self.compile()?;
        let root = &c.nodes[c.root];
        let rows = Csp::new(&c, root, None).all();
        // root boundary is in local order; report in the order given
        let pos: Vec<usize> = self
            .observed
            .iter()
            .map(|v| root.boundary.iter().position(|&b| root.verts[b] == *v).expect("observed vertex on root boundary"))
            .collect();
        let mut out: Vec<Vec<u32>> =
            rows.into_iter().map(|r| pos.iter().map(|&p| u32::from(r[p][0])).collect()).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// An orientation in which the observed vertices take `values`.
    pub fn realize(&self, values: &[u32]) -> Result<Option<WeightedOrientation>, SolveError> {
        let mut pinned = self.clone();
        for (&v, &x) in self.observed.iter().zip(values) {
            pinned.restrict_values(v, 1u64 << x);
        }
        pinned.solve()
    }

    /// As [`Assembly::observed_values`], but by running the search engine
    /// over the whole graph with no tabulation. Exponential; for
    /// cross-checking on small graphs.
    pub fn observed_values_direct(&self) -> Result<Vec<Vec<u32>>, SolveError> {
        self.check_layout()?;
        let rules = self
            .masks
            .iter()
            .map(|m| match m {
                Some(allowed) => Rule::Normal { allowed: *allowed },
                None => Rule::Free,
            })
            .collect();
        let problem = Problem { graph: self.graph, rules, options: self.options.clone() };
        let edges: Vec<usize> = (0..self.graph.m()).collect();
        let mut seen = HashSet::new();
        if self.isolated_ok() {
            for wo in Engine::new(problem, &edges, OrderPolicy::Completion) {
                let s = crate::orientation::s_profile(self.graph, &wo).expect("engine covers the graph");
                seen.insert(self.observed.iter().map(|&v| s[v] as u32).collect::<Vec<u32>>());
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    fn compile(&self) -> Result<Compiled, SolveError> {
        let mut c = Compiled { nodes: Vec::new(), tables: Vec::new(), sig_ids: HashMap::new(), root: 0 };
        let wrapped;
        let layout = match self.layout {
            Layout::Leaf(_) => {
                wrapped = Layout::Group(vec![self.layout.clone()]);
                &wrapped
            }
            group => group,
        };
        let root = self.build(&mut c, layout, true)?;
        c.root = root;
        Ok(c)
    }

    fn build(&self, c: &mut Compiled, layout: &Layout, is_root: bool) -> Result<usize, SolveError> {
        let (kind, verts, inner_deg) = match layout {
            Layout::Leaf(pairs) => {
                let mut verts = Vec::new();
                let mut edges = Vec::new();
                for &(u, v) in pairs {
                    edges.push(self.graph.edge_id(u, v).expect("checked layout"));
                    for x in [u, v] {
                        if !verts.contains(&x) {
                            verts.push(x);
                        }
                    }
                }
                let mut deg = HashMap::new();
                for &(u, v) in pairs {
                    *deg.entry(u).or_insert(0usize) += 1;
                    *deg.entry(v).or_insert(0usize) += 1;
                }
                (Kind::Leaf(edges), verts, deg)
            }
            Layout::Group(children) => {
                let mut ids = Vec::new();
                for child in children {
                    ids.push(self.build(c, child, false)?);
                }
                let mut verts = Vec::new();
                let mut deg: HashMap<usize, usize> = HashMap::new();
                for child in children {
                    for (u, v) in child.edges() {
                        for x in [u, v] {
                            if !verts.contains(&x) {
                                verts.push(x);
                            }
                            *deg.entry(x).or_insert(0) += 1;
                        }
                    }
                }
                (Kind::Group(ids), verts, deg)
            }
        };
        let mut boundary = Vec::new();
        let mut outside = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            if self.masks[v].is_none() {
                continue;
            }
            let out = inner_deg[&v] < self.graph.degree(v);
            let watched = self.observed.contains(&v);
            if (out && !is_root) || watched {
                boundary.push(i);
                outside.push(out && !is_root);
            }
        }
        let mut node = Node { kind, verts, boundary, outside, sig: 0 };
        let sig = self.signature(c, &node);
        let next = c.sig_ids.len();
        let id = *c.sig_ids.entry(sig).or_insert(next);
        node.sig = id;
        let index = c.nodes.len();
        c.nodes.push(node);
        if id == c.tables.len() && !is_root {
            let table = self.table(c, index);
            c.tables.push(Rc::new(table));
        } else if id == c.tables.len() {
            c.tables.push(Rc::new(Vec::new()));
        }
        Ok(index)
    }

    fn signature(&self, c: &Compiled, node: &Node) -> Vec<u32> {
        let mut sig = Vec::new();
        let local: HashMap<usize, u32> = node.verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        sig.push(node.verts.len() as u32);
        sig.push(node.boundary.len() as u32);
        for (&b, &o) in node.boundary.iter().zip(&node.outside) {
            sig.extend([b as u32, u32::from(o)]);
        }
        match &node.kind {
            Kind::Leaf(edges) => {
                sig.push(0);
                for &v in &node.verts {
                    match self.masks[v] {
                        None => sig.extend([2, 0, 0]),
                        Some(m) => sig.extend([1, m as u32, (m >> 32) as u32]),
                    }
                }
                for &e in edges {
                    let (u, v) = self.graph.edge(e);
                    let (a, b) = (local[&u], local[&v]);
                    let flip = a > b;
                    sig.extend([a.min(b), a.max(b), self.options[e].len() as u32]);
                    for &(d, w) in &self.options[e] {
                        let d = if flip { d.flip() } else { d };
                        sig.extend([u32::from(d.bit()), w]);
                    }
                }
            }
            Kind::Group(children) => {
                sig.push(1);
                for &ch in children {
                    let child = &c.nodes[ch];
                    sig.push(child.sig as u32);
                    sig.push(child.boundary.len() as u32);
                    sig.extend(child.boundary.iter().map(|&b| local[&child.verts[b]]));
                }
            }
        }
        sig
    }

    /// Local graph, edge map and rules of a leaf, with boundary vertices
    /// pinned to `pins` (value, allowed in-flow mask).
    fn leaf_problem(&self, node: &Node, pins: &[(u32, u64)]) -> LeafProblem {
        let Kind::Leaf(edges) = &node.kind else { unreachable!("leaf expected") };
        let local: HashMap<usize, usize> = node.verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pairs: Vec<(usize, usize)> = edges
            .iter()
            .map(|&e| {
                let (u, v) = self.graph.edge(e);
                (local[&u], local[&v])
            })
            .collect();
        let lg = Graph::new(node.verts.len(), pairs.iter().copied()).expect("leaf edges are simple");
        // local edge id -> global edge id
        let mut map = vec![0; lg.m()];
        let mut options = vec![Vec::new(); lg.m()];
        for (&e, &(a, b)) in edges.iter().zip(&pairs) {
            let le = lg.edge_id(a, b).expect("edge present");
            map[le] = e;
            let flip = a > b;
            options[le] = self.options[e].iter().map(|&(d, w)| (if flip { d.flip() } else { d }, w)).collect();
            options[le].sort_unstable();
        }
        let mut rules: Vec<Rule> = node
            .verts
            .iter()
            .map(|&v| match self.masks[v] {
                None => Rule::Free,
                Some(m) => Rule::Normal { allowed: m & mask_up_to(self.k) },
            })
            .collect();
        for (&b, &(value, inflow)) in node.boundary.iter().zip(pins) {
            rules[b] = Rule::Pinned { value, inflow };
        }
        (lg, map, rules, options)
    }

    fn boundary_values(&self, node: &Node) -> Vec<Vec<u32>> {
        node.boundary
            .iter()
            .map(|&b| {
                let m = self.masks[node.verts[b]].unwrap_or(0) & mask_up_to(self.k);
                (0..=self.k).filter(|&x| m >> x & 1 == 1).collect()
            })
            .collect()
    }

    fn table(&self, c: &Compiled, index: usize) -> Vec<Row> {
        let node = &c.nodes[index];
        match &node.kind {
            Kind::Leaf(_) => self.leaf_table(node),
            Kind::Group(_) => Csp::new(c, node, None).all().into_iter().collect(),
        }
    }

    fn leaf_table(&self, node: &Node) -> Vec<Row> {
        let choices = self.boundary_values(node);
        let mut rows = HashSet::new();
        let mut values = vec![0u32; choices.len()];
        self.leaf_rows(node, &choices, 0, &mut values, &mut rows);
        let mut rows: Vec<Row> = rows.into_iter().collect();
        rows.sort();
        rows
    }

    fn leaf_rows(&self, node: &Node, choices: &[Vec<u32>], i: usize, values: &mut Vec<u32>, rows: &mut HashSet<Row>) {
        if i < choices.len() {
            for &x in &choices[i] {
                values[i] = x;
                self.leaf_rows(node, choices, i + 1, values, rows);
            }
            return;
        }
        let pins: Vec<(u32, u64)> = node
            .boundary
            .iter()
            .zip(&node.outside)
            .zip(values.iter())
            .map(|((_, &out), &x)| (x, if out { mask_up_to(x) } else { 1u64 << x }))
            .collect();
        let (lg, _, rules, options) = self.leaf_problem(node, &pins);
        let bpos: Vec<usize> = node.boundary.clone();
        let edges: Vec<usize> = (0..lg.m()).collect();
        let problem = Problem { graph: &lg, rules, options };
        let mut engine = Engine::new(problem, &edges, OrderPolicy::Completion);
        while engine.next_solution().is_some() {
            let inflow = engine.inflow();
            let row: Row = bpos.iter().zip(values.iter()).map(|(&b, &x)| [x as u8, inflow[b] as u8]).collect();
            rows.insert(row);
        }
    }


    fn realize_node(&self, c: &Compiled, index: usize, row: &Row, wo: &mut WeightedOrientation) -> Result<(), SolveError> {
        let node = &c.nodes[index];
        match &node.kind {
            Kind::Leaf(_) => {
                let pins: Vec<(u32, u64)> = row.iter().map(|&[x, f]| (u32::from(x), 1u64 << f)).collect();
                let (lg, map, rules, options) = self.leaf_problem(node, &pins);
                let edges: Vec<usize> = (0..lg.m()).collect();
                let problem = Problem { graph: &lg, rules, options };
                let part = Engine::new(problem, &edges, OrderPolicy::Lexicographic)
                    .next_solution()
                    .ok_or_else(|| SolveError::Internal("tabulated leaf row has no completion".into()))?;
                for (le, &e) in map.iter().enumerate() {
                    let (a, _) = lg.edge(le);
                    let same = node.verts[a] == self.graph.edge(e).0;
                    let d = if same { part.dir(le) } else { part.dir(le).flip() };
                    wo.set(e, d, part.weight(le));
                }
                Ok(())
            }
            Kind::Group(_) => {
                let choice = Csp::new(c, node, Some(row))
                    .first()
                    .ok_or_else(|| SolveError::Internal("tabulated group row has no completion".into()))?;
                self.realize_children(c, node, &choice, wo)
            }
        }
    }

    fn realize_children(&self, c: &Compiled, node: &Node, choice: &[Row], wo: &mut WeightedOrientation) -> Result<(), SolveError> {
        let Kind::Group(children) = &node.kind else { unreachable!("groups only") };
        for (&ch, row) in children.iter().zip(choice) {
            self.realize_node(c, ch, row, wo)?;
        }
        Ok(())
    }
}

/// Static part of the row-matching search over a group's children.
struct Plan {
    tables: Vec<Rc<Vec<Row>>>,
    /// Node-local index of each boundary vertex of each child.
    slots: Vec<Vec<usize>>,
    /// Positions in each child's boundary whose values are known when the
    /// search reaches it, and the child's rows keyed by those values.
    known: Vec<Vec<usize>>,
    index: Vec<HashMap<Vec<u8>, Vec<usize>>>,
    /// Search position to original child position.
    order: Vec<usize>,
    /// Vertices whose sum must equal their value once all children are in.
    closes: Vec<bool>,
    boundary: Vec<usize>,
}

struct Csp<'r> {
    plan: Plan,
    value: Vec<Option<u8>>,
    sum: Vec<u8>,
    pending: Vec<u32>,
    target: Option<&'r Row>,
    picked: Vec<usize>,
}

impl<'r> Csp<'r> {
    fn new(c: &Compiled, node: &Node, target: Option<&'r Row>) -> Self {
        let Kind::Group(child_ids) = &node.kind else { unreachable!("groups only") };
        let nv = node.verts.len();
        let local: HashMap<usize, usize> = node.verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut closes = vec![true; nv];
        for (&b, &o) in node.boundary.iter().zip(&node.outside) {
            closes[b] = !o;
        }
        let slots: Vec<Vec<usize>> = child_ids
            .iter()
            .map(|&ch| {
                let child = &c.nodes[ch];
                child.boundary.iter().map(|&b| local[&child.verts[b]]).collect()
            })
            .collect();
        let tables: Vec<Rc<Vec<Row>>> = child_ids.iter().map(|&ch| c.tables[c.nodes[ch].sig].clone()).collect();

        // greedy order: most already-known vertices first, then smaller tables
        let mut fixed = vec![false; nv];
        if target.is_some() {
            for &b in &node.boundary {
                fixed[b] = true;
            }
        }
        let mut left: Vec<usize> = (0..child_ids.len()).collect();
        let mut order = Vec::new();
        let mut known = Vec::new();
        let mut index = Vec::new();
        let mut pending = vec![0u32; nv];
        while !left.is_empty() {
            let (pos, _) = left
                .iter()
                .enumerate()
                .max_by_key(|&(_, &i)| {
                    let overlap = slots[i].iter().filter(|&&s| fixed[s]).count();
                    (overlap, std::cmp::Reverse(tables[i].len()), std::cmp::Reverse(i))
                })
                .expect("children left");
            let i = left.remove(pos);
            let kp: Vec<usize> = (0..slots[i].len()).filter(|&p| fixed[slots[i][p]]).collect();
            let mut map: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
            for (r, row) in tables[i].iter().enumerate() {
                map.entry(kp.iter().map(|&p| row[p][0]).collect()).or_default().push(r);
            }
            for &s in &slots[i] {
                fixed[s] = true;
                pending[s] += 1;
            }
            order.push(i);
            known.push(kp);
            index.push(map);
        }
        let mut value = vec![None; nv];
        if let Some(row) = target {
            for (&b, cell) in node.boundary.iter().zip(row.iter()) {
                value[b] = Some(cell[0]);
            }
        }
        let plan = Plan {
            tables: order.iter().map(|&i| tables[i].clone()).collect(),
            slots: order.iter().map(|&i| slots[i].clone()).collect(),
            known,
            index,
            order,
            closes,
            boundary: node.boundary.clone(),
        };
        let n = plan.order.len();
        Csp { plan, value, sum: vec![0; nv], pending, target, picked: vec![0; n] }
    }

    /// Rows chosen for each child (in the group's child order), if any
    /// consistent choice exists.
    fn first(mut self) -> Option<Vec<Row>> {
        if !self.dfs(0, &mut |_| true) {
            return None;
        }
        let mut out = vec![Vec::new(); self.plan.order.len()];
        for (pos, &orig) in self.plan.order.iter().enumerate() {
            out[orig] = self.plan.tables[pos][self.picked[pos]].clone();
        }
        Some(out)
    }

    /// Every boundary row of the group.
    fn all(mut self) -> HashSet<Row> {
        let mut rows = HashSet::new();
        self.dfs(0, &mut |row| {
            rows.insert(row);
            false
        });
        rows
    }

    fn dfs(&mut self, pos: usize, visit: &mut dyn FnMut(Row) -> bool) -> bool {
        if pos == self.plan.order.len() {
            let row: Row = self
                .plan
                .boundary
                .iter()
                .map(|&b| [self.value[b].expect("boundary value set"), self.sum[b]])
                .collect();
            if let Some(t) = self.target {
                if row != *t {
                    return false;
                }
            }
            return visit(row);
        }
        let key: Vec<u8> = self.plan.known[pos]
            .iter()
            .map(|&p| self.value[self.plan.slots[pos][p]].expect("known value"))
            .collect();
        let Some(cands) = self.plan.index[pos].get(&key) else { return false };
        let cands = cands.clone();
        let table = self.plan.tables[pos].clone();
        let slots = self.plan.slots[pos].clone();
        for r in cands {
            let row = &table[r];
            let mut ok = true;
            let mut applied = 0;
            for (p, &s) in slots.iter().enumerate() {
                let [x, f] = row[p];
                if self.value[s].is_none() {
                    self.value[s] = Some(x);
                }
                self.sum[s] += f;
                self.pending[s] -= 1;
                applied = p + 1;
                let v = self.value[s].expect("just set");
                if self.sum[s] > v || (self.pending[s] == 0 && self.plan.closes[s] && self.sum[s] != v) {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.picked[pos] = r;
                if self.dfs(pos + 1, visit) {
                    return true;
                }
            }
            for p in (0..applied).rev() {
                let s = slots[p];
                self.sum[s] -= row[p][1];
                self.pending[s] += 1;
                // values not known on arrival were set by this row
                if !self.plan.known[pos].contains(&p) {
                    self.value[s] = None;
                }
            }
        }
        false
    }
}
