//! Exact optimum for tiny instances and the MST baseline.
//!
//! [`optimal_tree`] walks every labeled spanning tree through its Prüfer
//! sequence (`n^(n-2)` of them), keeps those within the hop bound and
//! returns the cheapest. It refuses instances above [`MAX_ORACLE_N`]
//! vertices unless the caller raises the limit explicitly.

use std::collections::VecDeque;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{usage, Error, Result};
use crate::instance::{CostFn, Costs, HopBound, Instance};
use crate::solve::SolveResult;
use crate::tree::RootedTree;

/// Default enumeration budget: 9^7 ≈ 4.8M trees.
pub const MAX_ORACLE_N: usize = 9;

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into edges.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Prüfer sequence of a labeled tree on `n >= 2` vertices.
pub fn prufer_encode(edges: &[(usize, usize)], n: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n.saturating_sub(2));
    for _ in 0..n.saturating_sub(2) {
        let leaf = (0..n).find(|&v| !removed[v] && degree[v] == 1).expect("tree has a leaf");
        let nb = adj[leaf].iter().copied().find(|&u| !removed[u]).expect("leaf has a neighbor");
        seq.push(nb);
        removed[leaf] = true;
        degree[nb] -= 1;
    }
    seq
}

fn bfs_far(adj: &[Vec<usize>], start: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut far = start;
    while let Some(v) = queue.pop_front() {
        if dist[v] > dist[far] {
            far = v;
        }
        for &u in &adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    (far, dist, prev)
}

fn adjacency(edges: &[(usize, usize)], n: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Roots a tree given by edges at the middle of a longest path: one center
/// for an even path length, two adjacent centers for an odd one.
pub fn center_rooted<C: CostFn + ?Sized>(costs: &C, edges: &[(usize, usize)]) -> Result<RootedTree> {
    let n = costs.n();
    if n == 1 {
        return Ok(RootedTree::with_root(1, 0));
    }
    let adj = adjacency(edges, n);
    let (a, _, _) = bfs_far(&adj, 0);
    let (b, dist, prev) = bfs_far(&adj, a);
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(prev[*path.last().unwrap()]);
    }
    let len = dist[b];
    let root = path[len / 2];
    let co = (len % 2 == 1).then(|| path[len / 2 + 1]);
    RootedTree::from_edges(costs, edges, root, co)
}

struct Best {
    w: f64,
    seq: Vec<usize>,
}

// Scans all sequences starting with `first`, in lexicographic order.
fn scan_shard<C: CostFn + ?Sized>(costs: &C, d: usize, first: usize) -> Option<Best> {
    let n = costs.n();
    let len = n - 2;
    let mut seq = vec![0usize; len];
    seq[0] = first;
    let mut best: Option<Best> = None;
    let mut adj = vec![Vec::with_capacity(n); n];
    let mut reach = vec![0.0f64; n];
    loop {
        let edges = prufer_decode(&seq, n);
        for a in adj.iter_mut() {
            a.clear();
        }
        reach.iter_mut().for_each(|r| *r = 0.0);
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
            let c = costs.cost(a, b);
            reach[a] = reach[a].max(c);
            reach[b] = reach[b].max(c);
        }
        let w: f64 = reach.iter().sum();
        if best.as_ref().is_none_or(|b| w < b.w) {
            let (far, _, _) = bfs_far(&adj, 0);
            let (other, dist, _) = bfs_far(&adj, far);
            if dist[other] <= d {
                best = Some(Best { w, seq: seq.clone() });
            }
        }
        // odometer over positions 1..len
        let mut i = len;
        loop {
            if i == 1 {
                return best;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Minimum-`W` spanning tree with hop diameter at most `d`, by exhaustive
/// enumeration. Refuses `n > MAX_ORACLE_N`.
pub fn optimal_tree(inst: &Instance, d: HopBound) -> Result<SolveResult> {
    optimal_tree_limited(inst, d, MAX_ORACLE_N)
}

/// As [`optimal_tree`] with an explicit size limit.
pub fn optimal_tree_limited(inst: &Instance, d: HopBound, max_n: usize) -> Result<SolveResult> {
    let n = inst.len();
    if n > max_n {
        return Err(Error::Budget { n, max: max_n, trees: (n as f64).powi(n as i32 - 2) });
    }
    let start = Instant::now();
    let costs = Costs::for_instance(inst);
    let edges = match n {
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            if d.get() < 2 {
                return Err(Error::Infeasible(format!("no spanning tree on {n} vertices has hop diameter <= {d}")));
            }
            let shards: Vec<Option<Best>> = (0..n).into_par_iter().map(|first| scan_shard(&costs, d.get() as usize, first)).collect();
            // shards are in lexicographic order; keep the first strict minimum
            let mut best: Option<Best> = None;
            for b in shards.into_iter().flatten() {
                if best.as_ref().is_none_or(|x| b.w < x.w) {
                    best = Some(b);
                }
            }
            let best = best.ok_or_else(|| Error::Infeasible(format!("no tree with hop diameter <= {d}")))?;
            prufer_decode(&best.seq, n)
        }
    };
    let tree = center_rooted(&costs, &edges)?;
    SolveResult::from_tree(tree, &costs, start.elapsed())
}

/// Number of labeled spanning trees the oracle walks for `n` vertices.
pub fn tree_count(n: usize) -> u64 {
    if n <= 2 {
        1
    } else {
        (n as u64).pow(n as u32 - 2)
    }
}

/// Minimum spanning tree on edge costs (dense Prim), as an edge list.
pub fn mst_edges<C: CostFn + ?Sized>(costs: &C) -> Vec<(usize, usize)> {
    let n = costs.n();
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    let mut link = vec![usize::MAX; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    key[0] = 0.0;
    for _ in 0..n {
        let mut u = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (u == usize::MAX || key[v] < key[u]) {
                u = v;
            }
        }
        in_tree[u] = true;
        if link[u] != usize::MAX {
            edges.push((u, link[u]));
        }
        for v in 0..n {
            if !in_tree[v] {
                let c = costs.cost(u, v);
                if c < key[v] {
                    key[v] = c;
                    link[v] = u;
                }
            }
        }
    }
    edges
}

pub(crate) fn mst_tree<C: CostFn + ?Sized>(costs: &C) -> RootedTree {
    center_rooted(costs, &mst_edges(costs)).expect("MST spans the instance")
}

/// The MST evaluated under `W(T)`. It ignores the hop bound.
pub fn mst_baseline(inst: &Instance) -> Result<SolveResult> {
    if inst.is_empty() {
        return Err(usage("empty instance"));
    }
    let start = Instant::now();
    let costs = Costs::for_instance(inst);
    let tree = mst_tree(&costs);
    SolveResult::from_tree(tree, &costs, start.elapsed())
}
