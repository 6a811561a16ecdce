//! Repairs a semi-proper orientation with arbitrary positive weights into
//! one with every weight in `{1, 2}` without raising the maximum in-sum.
//!
//! Each iteration takes the first edge `u -> v` of weight above 2 and looks
//! at the vertices reachable from `v` along arcs (`v` included). If `v`
//! itself has the least in-sum there, the in-edges of `v` are rebalanced;
//! otherwise a directed path from `v` to a vertex `p` of least in-sum is
//! reversed and its weights rotated. Either way the pair
//! (number of heavy edges, their total weight) drops lexicographically.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::orientation::{first_violation, max_s, s_profile, OrientationError, WeightedOrientation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("input is not semi-proper: adjacent {0} and {1} have equal in-sums")]
    NotSemiProper(usize, usize),
    #[error("precondition violated: {0}")]
    Contract(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Orientation(#[from] OrientationError),
}

/// Heavy edges (weight above 2): how many, and their total weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BadEdgeLedger {
    pub t: usize,
    pub b: u64,
}

pub fn ledger(wo: &WeightedOrientation) -> BadEdgeLedger {
    let heavy = wo.weights().iter().filter(|&&w| w > 2);
    BadEdgeLedger { t: heavy.clone().count(), b: heavy.map(|&w| u64::from(w)).sum() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewrite {
    /// Weight moved between in-edges of `v`; no in-sum changed.
    Shift,
    /// In-edges of `v` reset to weights summing to `q`.
    Rebalance { q: u64 },
    /// Path reversed with all in-sums preserved.
    Rotation,
    /// Path reversed and the other in-edges of `p` reset to sum `q`.
    PathRebalance { q: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub edge: usize,
    pub rewrite: Rewrite,
    pub before: BadEdgeLedger,
    pub after: BadEdgeLedger,
    pub max_s: u64,
}

/// Vertices reachable from `v` along arcs, `v` included.
pub fn reachable(g: &Graph, wo: &WeightedOrientation, v: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &(y, e) in g.adj(x) {
            if !seen[y] && wo.tail_head(g, e) == (x, y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Vertex of least in-sum among those reachable from `v` (ties: smallest
/// index).
pub fn reachable_min_vertex(g: &Graph, wo: &WeightedOrientation, v: usize) -> Result<usize, NormalizeError> {
    let s = s_profile(g, wo)?;
    let seen = reachable(g, wo, v);
    Ok((0..g.n()).filter(|&x| seen[x]).min_by_key(|&x| (s[x], x)).expect("v reaches itself"))
}

/// In-edges of `x` in edge order.
fn in_edges(g: &Graph, wo: &WeightedOrientation, x: usize) -> Vec<usize> {
    let mut es: Vec<usize> = g.adj(x).iter().map(|&(_, e)| e).filter(|&e| wo.tail_head(g, e).1 == x).collect();
    es.sort_unstable();
    es
}

/// Smallest value in `lo..=hi` outside `forbidden`.
fn smallest_free(lo: u64, hi: u64, forbidden: &[u64]) -> Result<u64, NormalizeError> {
    (lo..=hi)
        .find(|q| !forbidden.contains(q))
        .ok_or_else(|| NormalizeError::Invariant(format!("no admissible sum in {lo}..={hi} avoiding {forbidden:?}")))
}

/// Gives the first `2 * len - q` edges weight 1 and the rest weight 2.
fn assign_sum(wo: &mut WeightedOrientation, edges: &[usize], q: u64) {
    let ones = 2 * edges.len() as u64 - q;
    for (i, &e) in edges.iter().enumerate() {
        wo.set_weight(e, if (i as u64) < ones { 1 } else { 2 });
    }
}

fn heavy_head(g: &Graph, wo: &WeightedOrientation, e: usize) -> Result<(usize, usize), NormalizeError> {
    if e >= g.m() {
        return Err(NormalizeError::Contract(format!("edge {e} does not exist")));
    }
    if wo.weight(e) <= 2 {
        return Err(NormalizeError::Contract(format!("edge {e} has weight {} (not above 2)", wo.weight(e))));
    }
    Ok(wo.tail_head(g, e))
}

fn require_semi_proper(g: &Graph, wo: &WeightedOrientation) -> Result<(), NormalizeError> {
    match first_violation(g, wo)? {
        Some((u, v)) => Err(NormalizeError::NotSemiProper(u, v)),
        None => Ok(()),
    }
}

/// Rewrite for a heavy edge `e = u -> v` when `v` has the least in-sum
/// among the vertices it reaches.
///
/// Weight is first shifted between in-edges of `v` (no in-sum changes)
/// until `e` is light or every other in-edge of `v` has weight 2. In the
/// latter case the `k` in-edges of `v` are reset to weights in `{1, 2}`
/// summing to the least `q` in `k..=2k` not taken by an in-neighbour.
pub fn case1_rebalance(g: &Graph, wo: &WeightedOrientation, e: usize) -> Result<(WeightedOrientation, Rewrite), NormalizeError> {
    let (_, v) = heavy_head(g, wo, e)?;
    require_semi_proper(g, wo)?;
    let s = s_profile(g, wo)?;
    let p = reachable_min_vertex(g, wo, v)?;
    if s[p] != s[v] {
        return Err(NormalizeError::Contract(format!("vertex {v} does not have the least in-sum among those it reaches")));
    }
    let mut out = wo.clone();
    let ins = in_edges(g, wo, v);
    while out.weight(e) > 2 {
        let Some(&f) = ins.iter().find(|&&f| f != e && out.weight(f) != 2) else { break };
        let (we, wf) = (out.weight(e), out.weight(f));
        if wf == 1 {
            out.set_weight(e, we - 1);
            out.set_weight(f, 2);
        } else {
            out.set_weight(e, 1);
            out.set_weight(f, wf + we - 1);
        }
    }
    if out.weight(e) <= 2 {
        return Ok((out, Rewrite::Shift));
    }
    let k = ins.len() as u64;
    let forbidden: Vec<u64> = ins.iter().map(|&f| s[wo.tail_head(g, f).0]).collect();
    let q = smallest_free(k, 2 * k, &forbidden)?;
    if q >= s[v] {
        return Err(NormalizeError::Invariant(format!("rebalanced sum {q} is not below the old sum {}", s[v])));
    }
    assign_sum(&mut out, &ins, q);
    Ok((out, Rewrite::Rebalance { q }))
}

/// Shortest directed path from `from` to `to` as a vertex list.
fn directed_path(g: &Graph, wo: &WeightedOrientation, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, e) in g.adj(x) {
            if parent[y] == usize::MAX && wo.tail_head(g, e) == (x, y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if parent[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Some(path)
}

/// Rewrite for a heavy edge `e = u -> v` when some vertex `p` reachable
/// from `v` has smaller in-sum than `v` (`p` must have the least in-sum
/// among the vertices `v` reaches).
///
/// Along a shortest path `v = y0 -> y1 -> ... -> ym = p` every arc is
/// reversed; `e` loses one unit, `y1 -> y0` gets weight 1 and `y(i+1) -> yi`
/// takes the old weight of `y(i-1) -> yi`. The old weight of the last arc
/// into `p` is then compensated at `p`: if two other in-edges of `p` have
/// weight 1, one becomes 2 and the other takes that old weight, so no
/// in-sum changes. Otherwise the other in-edges of `p` are reset to
/// weights in `{1, 2}` summing to the least `q` in `k-1..=2k-2` not taken by
/// their tails.
pub fn case2_reverse_path(
    g: &Graph,
    wo: &WeightedOrientation,
    e: usize,
    p: usize,
) -> Result<(WeightedOrientation, Rewrite), NormalizeError> {
    let (_, v) = heavy_head(g, wo, e)?;
    require_semi_proper(g, wo)?;
    let s = s_profile(g, wo)?;
    if p >= g.n() || !reachable(g, wo, v)[p] {
        return Err(NormalizeError::Contract(format!("vertex {p} is not reachable from {v}")));
    }
    if s[p] >= s[v] {
        return Err(NormalizeError::Contract(format!("in-sum of {p} is not below that of {v}")));
    }
    if reachable_min_vertex(g, wo, v).map(|m| s[m])? != s[p] {
        return Err(NormalizeError::Contract(format!("{p} does not have the least in-sum reachable from {v}")));
    }
    let path = directed_path(g, wo, v, p).expect("p is reachable");
    let arcs: Vec<usize> = path.windows(2).map(|w| g.edge_id(w[0], w[1]).expect("path arc")).collect();
    let old: Vec<u32> = arcs.iter().map(|&a| wo.weight(a)).collect();
    let last = *arcs.last().expect("p differs from v");
    let others: Vec<usize> = in_edges(g, wo, p).into_iter().filter(|&f| f != last).collect();
    let k = others.len() as u64 + 1;

    let mut out = wo.clone();
    out.set_weight(e, wo.weight(e) - 1);
    for (i, &a) in arcs.iter().enumerate() {
        out.reverse(a);
        out.set_weight(a, if i == 0 { 1 } else { old[i - 1] });
    }
    let into_p = *old.last().unwrap();
    let rest: u64 = others.iter().map(|&f| u64::from(wo.weight(f))).sum();
    if 2 * (k - 1) >= 2 && rest <= 2 * (k - 1) - 2 {
        let ones: Vec<usize> = others.iter().copied().filter(|&f| wo.weight(f) == 1).take(2).collect();
        if ones.len() < 2 {
            return Err(NormalizeError::Invariant("expected two other weight-1 in-edges at p".into()));
        }
        out.set_weight(ones[0], 2);
        out.set_weight(ones[1], into_p);
        return Ok((out, Rewrite::Rotation));
    }
    let forbidden: Vec<u64> = others.iter().map(|&f| s[wo.tail_head(g, f).0]).collect();
    let q = smallest_free(k - 1, 2 * k - 2, &forbidden)?;
    assign_sum(&mut out, &others, q);
    Ok((out, Rewrite::PathRebalance { q }))
}

pub fn normalize_to_12(g: &Graph, wo: &WeightedOrientation) -> Result<WeightedOrientation, NormalizeError> {
    normalize_with_trace(g, wo).map(|(out, _)| out)
}

/// As [`normalize_to_12`], also returning every rewrite applied. Each step
/// is checked: the result stays semi-proper, the maximum in-sum does not
/// grow, and the ledger drops.
pub fn normalize_with_trace(
    g: &Graph,
    wo: &WeightedOrientation,
) -> Result<(WeightedOrientation, Vec<TraceStep>), NormalizeError> {
    wo.check_covers(g)?;
    require_semi_proper(g, wo)?;
    let budget: u64 = wo.weights().iter().map(|&w| u64::from(w)).sum();
    let mut cur = wo.clone();
    let mut cur_max = max_s(g, &cur)?;
    let mut trace = Vec::new();
    while let Some(e) = (0..g.m()).find(|&e| cur.weight(e) > 2) {
        if trace.len() as u64 > budget {
            return Err(NormalizeError::Invariant(format!("no termination after {budget} rewrites")));
        }
        let before = ledger(&cur);
        let (_, v) = cur.tail_head(g, e);
        let s = s_profile(g, &cur)?;
        let p = reachable_min_vertex(g, &cur, v)?;
        let (next, rewrite) =
            if s[p] == s[v] { case1_rebalance(g, &cur, e)? } else { case2_reverse_path(g, &cur, e, p)? };
        let after = ledger(&next);
        if let Some((a, b)) = first_violation(g, &next)? {
            return Err(NormalizeError::Invariant(format!("{rewrite:?} on edge {e} made {a} and {b} clash")));
        }
        let next_max = max_s(g, &next)?;
        if next_max > cur_max {
            return Err(NormalizeError::Invariant(format!("{rewrite:?} raised the maximum in-sum to {next_max}")));
        }
        let case1 = matches!(rewrite, Rewrite::Shift | Rewrite::Rebalance { .. });
        if after >= before || (case1 && after.t >= before.t) {
            return Err(NormalizeError::Invariant(format!("{rewrite:?} moved the ledger from {before:?} to {after:?}")));
        }
        trace.push(TraceStep { edge: e, rewrite, before, after, max_s: next_max });
        cur = next;
        cur_max = next_max;
    }
    Ok((cur, trace))
}
