//! Finite simple undirected graphs, the edge-list text format, and the
//! classical parameters (degree, chromatic number, bipartiteness, planarity).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rustworkx_core::petgraph::graph::UnGraph;

/// Default vertex cap for the exact chromatic number.
pub const DEFAULT_CHROMATIC_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{u},{v}}} has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("label {label:?} on vertex {vertex} is empty or contains whitespace")]
    BadLabel { vertex: usize, label: String },
    #[error("graph has {n} vertices, above the exact chromatic number cap of {cap}; skip the chromatic lower bound")]
    TooLarge { n: usize, cap: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted; the position of an edge
/// in that order is its edge id everywhere else in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    labels: BTreeMap<usize, String>,
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.chars().any(char::is_whitespace)
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange { u: a, v: b, n });
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj, labels: BTreeMap::new() })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).expect("complete bipartite graph is valid")
    }

    pub fn with_label(mut self, v: usize, label: impl Into<String>) -> Result<Self, GraphError> {
        self.set_label(v, label)?;
        Ok(self)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<(), GraphError> {
        let label = label.into();
        if v >= self.n {
            return Err(GraphError::OutOfRange { u: v, v, n: self.n });
        }
        if !valid_label(&label) {
            return Err(GraphError::BadLabel { vertex: v, label });
        }
        self.labels.insert(v, label);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbour, edge id)` pairs sorted by neighbour.
    pub fn adj(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let row = self.adj.get(u)?;
        row.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| row[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().find(|(_, l)| l.as_str() == label).map(|(&v, _)| v)
    }

    pub fn label_index(&self) -> BTreeMap<&str, usize> {
        self.labels.iter().map(|(&v, l)| (l.as_str(), v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Same vertices and labels with edge `e` deleted.
    pub fn without_edge(&self, e: usize) -> Graph {
        let edges = self.edges.iter().enumerate().filter(|&(id, _)| id != e).map(|(_, &p)| p);
        let mut g = Graph::new(self.n, edges).expect("subgraph of a simple graph is simple");
        g.labels = self.labels.clone();
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.m() + 1 == self.n && self.is_connected()
    }

    /// Subgraph induced by `vertices`, renumbered in the given order, with
    /// labels carried over.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let mut g = Graph::new(vertices.len(), edges).expect("induced subgraph is simple");
        for (&v, l) in &self.labels {
            if index[v] != usize::MAX {
                g.labels.insert(index[v], l.clone());
            }
        }
        g
    }
}

/// Incremental construction with labels, used by the gadget builders.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        let v = self.n;
        self.n += 1;
        self.labels.insert(v, label.into());
        v
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[&v]
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut g = Graph::new(self.n, self.edges)?;
        for (v, l) in self.labels {
            g.set_label(v, l)?;
        }
        Ok(g)
    }
}

/// Parses the edge-list format: `p <n> <m>`, then `e <u> <v>` and
/// `l <v> <label>` lines; `c` starts a comment line.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| GraphError::Parse { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        let mut num = |what: &str| -> Result<usize, GraphError> {
            let tok = parts.next().ok_or_else(|| err(format!("missing {what}")))?;
            tok.parse().map_err(|_| err(format!("bad {what} {tok:?}")))
        };
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(err("second header line".into()));
                }
                let n = num("vertex count")?;
                let m = num("edge count")?;
                header = Some((n, m));
            }
            "e" | "l" if header.is_none() => return Err(err("line before the `p` header".into())),
            "e" => {
                let u = num("endpoint")?;
                let v = num("endpoint")?;
                edges.push((line, u, v));
            }
            "l" => {
                let v = num("vertex")?;
                let label = parts.next().ok_or_else(|| err("missing label".into()))?;
                labels.push((line, v, label.to_string()));
            }
            other => return Err(err(format!("unknown line type {other:?}"))),
        }
        if parts.next().is_some() {
            return Err(err("trailing tokens".into()));
        }
    }
    let (n, m) = header.ok_or(GraphError::Parse { line: 0, message: "missing `p` header".into() })?;
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: 0,
            message: format!("header declares {m} edges but {} were given", edges.len()),
        });
    }
    for &(line, u, v) in &edges {
        if u >= n || v >= n {
            return Err(GraphError::Parse { line, message: format!("edge {{{u},{v}}} out of range for n = {n}") });
        }
    }
    let mut g = Graph::new(n, edges.into_iter().map(|(_, u, v)| (u, v)))?;
    for (line, v, label) in labels {
        g.set_label(v, label).map_err(|e| GraphError::Parse { line, message: e.to_string() })?;
    }
    Ok(g)
}

/// Canonical edge-list text: header, sorted edges, then labels by vertex.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    for (v, l) in g.labels() {
        let _ = writeln!(out, "l {v} {l}");
    }
    out
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

/// Proper 2-colouring if one exists.
pub fn is_bipartite(g: &Graph) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    stack.push(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Exact planarity test (left-right criterion from rustworkx-core), with the
/// `m <= 3n - 6` bound as a quick reject.
pub fn is_planar(g: &Graph) -> bool {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return false;
    }
    let pg: UnGraph<(), ()> = UnGraph::from_edges(g.edges().iter().map(|&(u, v)| (u as u32, v as u32)));
    let mut pg = pg;
    while pg.node_count() < g.n() {
        pg.add_node(());
    }
    rustworkx_core::planar::is_planar(&pg)
}

pub fn chromatic_number(g: &Graph) -> Result<usize, GraphError> {
    chromatic_number_capped(g, DEFAULT_CHROMATIC_CAP)
}

/// Exact chromatic number by DSATUR branch and bound, refusing graphs with
/// more than `cap` vertices.
pub fn chromatic_number_capped(g: &Graph, cap: usize) -> Result<usize, GraphError> {
    let n = g.n();
    if n > cap {
        return Err(GraphError::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok(0);
    }
    if g.m() == 0 {
        return Ok(1);
    }
    let lower = greedy_clique(g);
    let upper = dsatur_greedy(g);
    for k in lower..upper {
        let mut colors = vec![usize::MAX; n];
        if color_with(g, k, &mut colors, 0, 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 1;
    for s in 0..g.n() {
        let mut clique = vec![s];
        let mut cands: Vec<usize> = g.neighbors(s).collect();
        cands.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        for v in cands {
            if clique.iter().all(|&c| g.has_edge(c, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn saturation(g: &Graph, colors: &[usize], v: usize) -> usize {
    let mut seen: Vec<usize> = g.neighbors(v).map(|u| colors[u]).filter(|&c| c != usize::MAX).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn pick_dsatur(g: &Graph, colors: &[usize]) -> Option<usize> {
    (0..g.n())
        .filter(|&v| colors[v] == usize::MAX)
        .max_by_key(|&v| (saturation(g, colors, v), g.degree(v), std::cmp::Reverse(v)))
}

fn dsatur_greedy(g: &Graph) -> usize {
    let mut colors = vec![usize::MAX; g.n()];
    let mut used = 0;
    while let Some(v) = pick_dsatur(g, &colors) {
        let c = (0..).find(|&c| g.neighbors(v).all(|u| colors[u] != c)).unwrap();
        colors[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn color_with(g: &Graph, k: usize, colors: &mut [usize], done: usize, used: usize) -> bool {
    if done == g.n() {
        return true;
    }
    let v = pick_dsatur(g, colors).expect("uncoloured vertex remains");
    // a fresh colour is interchangeable with any other fresh colour
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).all(|u| colors[u] != c) {
            colors[v] = c;
            if color_with(g, k, colors, done + 1, used.max(c + 1)) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}
