//! Trees and forests: a layered orientation with in-sums at most 2, and
//! the exact value of the minimum (0, 1 or 2).

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::orientation::{Direction, WeightedOrientation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("graph has a cycle")]
    NotForest,
    #[error("graph is not connected")]
    NotConnected,
    #[error("root {0} is not a vertex")]
    BadRoot(usize),
}

/// Distance from `root` for every vertex of the tree `t`.
pub fn dfs_layering(t: &Graph, root: usize) -> Result<Vec<usize>, TreeError> {
    if root >= t.n() {
        return Err(TreeError::BadRoot(root));
    }
    if !t.is_forest() {
        return Err(TreeError::NotForest);
    }
    if !t.is_connected() {
        return Err(TreeError::NotConnected);
    }
    Ok(layers_from(t, &[root]).0)
}

/// Layer and parent of every vertex, searching from each root in turn.
fn layers_from(t: &Graph, roots: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut layer = vec![usize::MAX; t.n()];
    let mut parent = vec![usize::MAX; t.n()];
    for &r in roots {
        if layer[r] != usize::MAX {
            continue;
        }
        layer[r] = 0;
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            for y in t.neighbors(x) {
                if layer[y] == usize::MAX {
                    layer[y] = layer[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
    }
    (layer, parent)
}

/// Every edge points away from the root of its component (the smallest
/// vertex); weight 1 when the tail sits on an even layer and 2 otherwise.
/// In-sums are 0 at roots, 1 on odd layers and 2 on other even layers.
pub fn tree_semi_proper(t: &Graph) -> Result<WeightedOrientation, TreeError> {
    let roots: Vec<usize> = t.components().iter().map(|c| c[0]).collect();
    tree_semi_proper_rooted(t, &roots)
}

/// As [`tree_semi_proper`] with one chosen root per component.
pub fn tree_semi_proper_rooted(t: &Graph, roots: &[usize]) -> Result<WeightedOrientation, TreeError> {
    if let Some(&r) = roots.iter().find(|&&r| r >= t.n()) {
        return Err(TreeError::BadRoot(r));
    }
    if !t.is_forest() {
        return Err(TreeError::NotForest);
    }
    let mut all: Vec<usize> = roots.to_vec();
    all.extend(0..t.n());
    let (layer, parent) = layers_from(t, &all);
    let mut wo = WeightedOrientation::uniform(t);
    for (e, &(u, v)) in t.edges().iter().enumerate() {
        let (tail, head) = if parent[v] == u { (u, v) } else { (v, u) };
        let dir = if tail == u { Direction::Forward } else { Direction::Reverse };
        debug_assert_eq!(parent[head], tail);
        wo.set(e, dir, if layer[tail] % 2 == 0 { 1 } else { 2 });
    }
    Ok(wo)
}

/// Minimum over semi-proper orientations of the maximum in-sum, with a
/// witness. A component needs only 1 exactly when one side of its
/// bipartition is all leaves: sums in `{0, 1}` force a proper 2-colouring,
/// and a sum-1 vertex can take only one edge, so it must be a leaf.
pub fn tree_number(t: &Graph) -> Result<(u32, WeightedOrientation), TreeError> {
    if !t.is_forest() {
        return Err(TreeError::NotForest);
    }
    let layered = tree_semi_proper(t)?;
    let mut wo = layered.clone();
    let mut value = 0;
    for comp in t.components() {
        if comp.len() == 1 {
            continue;
        }
        let (layer, _) = layers_from(t, &[comp[0]]);
        let sink_parity = [0, 1].into_iter().find(|&par| {
            comp.iter().filter(|&&v| layer[v] % 2 == par).all(|&v| t.degree(v) == 1)
        });
        match sink_parity {
            Some(par) => {
                value = value.max(1);
                for &v in comp.iter().filter(|&&v| layer[v] % 2 == par) {
                    for &(u, e) in t.adj(v) {
                        let dir = if t.edge(e) == (u, v) { Direction::Forward } else { Direction::Reverse };
                        wo.set(e, dir, 1);
                    }
                }
            }
            None => value = 2,
        }
    }
    Ok((value, wo))
}
