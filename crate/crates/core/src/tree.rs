//! Rooted spanning trees with depth and per-vertex power bookkeeping.
//!
//! A tree is stored as a parent array plus child lists. Depth is the hop
//! count to the nearest center. With an even hop bound there is one center
//! (the root); with an odd bound a second center hangs below the root as
//! its child but also carries depth 0.
//!
//! `power[v]` caches the cost of `v`'s most expensive incident tree edge,
//! so the objective is `W(T) = Σ power[v]`. The cache is maintained by
//! [`RootedTree::attach`] and [`RootedTree::reattach`] and can be checked
//! against a from-scratch recomputation with [`RootedTree::objective`] and
//! [`RootedTree::check_coherence`].

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::instance::CostFn;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<i32>,
    power: Vec<f64>,
    root: Option<usize>,
    co_center: Option<usize>,
    size: usize,
}

impl RootedTree {
    /// An empty forest over `n` vertices; nothing is in the tree yet.
    pub fn empty(n: usize) -> Self {
        RootedTree {
            parent: vec![None; n],
            children: vec![Vec::new(); n],
            depth: vec![-1; n],
            power: vec![0.0; n],
            root: None,
            co_center: None,
            size: 0,
        }
    }

    /// A tree holding only `root`.
    pub fn with_root(n: usize, root: usize) -> Self {
        let mut t = Self::empty(n);
        t.depth[root] = 0;
        t.root = Some(root);
        t.size = 1;
        t
    }

    /// Star centered at `center` spanning all `n` vertices.
    pub fn star<C: CostFn + ?Sized>(costs: &C, center: usize) -> Self {
        let n = costs.n();
        let mut t = Self::with_root(n, center);
        for v in (0..n).filter(|&v| v != center) {
            t.link(v, center, costs);
            t.depth[v] = 1;
        }
        t
    }

    /// Build from an undirected edge list, rooting at `root` and, when
    /// given, designating `co_center` (a neighbor of `root`) as the second
    /// depth-0 vertex.
    pub fn from_edges<C: CostFn + ?Sized>(costs: &C, edges: &[(usize, usize)], root: usize, co_center: Option<usize>) -> Result<Self> {
        let n = costs.n();
        if edges.len() + 1 != n {
            return Err(usage(format!("{} edges cannot span {n} vertices", edges.len())));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(usage(format!("bad edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut t = Self::with_root(n, root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut nbrs = adj[v].clone();
            nbrs.sort_unstable();
            for u in nbrs {
                if t.depth[u] >= 0 {
                    continue;
                }
                t.link(u, v, costs);
                t.depth[u] = t.depth[v] + 1;
                queue.push_back(u);
            }
        }
        if t.size != n {
            return Err(usage("edge list does not connect all vertices"));
        }
        if let Some(c) = co_center {
            t.designate_co_center(c)?;
        }
        Ok(t)
    }

    // Adds the edge child-parent and updates both power caches. Depth is
    // left to the caller.
    fn link<C: CostFn + ?Sized>(&mut self, child: usize, parent: usize, costs: &C) {
        let c = costs.cost(child, parent);
        self.parent[child] = Some(parent);
        self.children[parent].push(child);
        self.power[child] = self.power[child].max(c);
        self.power[parent] = self.power[parent].max(c);
        self.size += 1;
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Number of vertices currently in the tree.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_spanning(&self) -> bool {
        self.size == self.n() && self.n() > 0
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn co_center(&self) -> Option<usize> {
        self.co_center
    }

    pub fn centers(&self) -> impl Iterator<Item = usize> + '_ {
        self.root.into_iter().chain(self.co_center)
    }

    pub fn is_center(&self, v: usize) -> bool {
        Some(v) == self.root || Some(v) == self.co_center
    }

    pub fn contains(&self, v: usize) -> bool {
        self.depth[v] >= 0
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Depth of `v`, or -1 when `v` is not in the tree.
    pub fn depth(&self, v: usize) -> i32 {
        self.depth[v]
    }

    pub fn depths(&self) -> &[i32] {
        &self.depth
    }

    pub fn power(&self, v: usize) -> f64 {
        self.power[v]
    }

    pub fn powers(&self) -> &[f64] {
        &self.power
    }

    pub fn max_depth(&self) -> i32 {
        self.depth.iter().copied().max().unwrap_or(-1)
    }

    /// Tree neighbors of `v`: its parent followed by its children.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent[v].into_iter().chain(self.children[v].iter().copied())
    }

    /// Tree edges as `(child, parent)` pairs in vertex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v, p))).collect()
    }

    /// Sum of cached vertex powers.
    pub fn cached_objective(&self) -> f64 {
        self.power.iter().sum()
    }

    /// `W(T)`, recomputed from the edges rather than the caches.
    pub fn objective<C: CostFn + ?Sized>(&self, costs: &C) -> Result<f64> {
        if !self.is_spanning() {
            return Err(usage(format!("objective needs a spanning tree ({} of {} vertices attached)", self.size, self.n())));
        }
        Ok(self.recomputed_powers(costs).iter().sum())
    }

    fn recomputed_powers<C: CostFn + ?Sized>(&self, costs: &C) -> Vec<f64> {
        let mut p = vec![0.0f64; self.n()];
        for (v, par) in self.edges() {
            let c = costs.cost(v, par);
            p[v] = p[v].max(c);
            p[par] = p[par].max(c);
        }
        p
    }

    /// Max cost over `v`'s tree neighbors other than `excluded`.
    pub fn power_without<C: CostFn + ?Sized>(&self, v: usize, excluded: usize, costs: &C) -> f64 {
        self.neighbors(v).filter(|&u| u != excluded).map(|u| costs.cost(u, v)).fold(0.0, f64::max)
    }

    /// Starts a tree at `root`. The tree must be empty.
    pub fn set_root(&mut self, root: usize) -> Result<()> {
        if self.size != 0 {
            return Err(usage("tree already has a root"));
        }
        *self = Self::with_root(self.n(), root);
        Ok(())
    }

    /// Adds `v` as the second center: a child of the root at depth 0.
    pub fn add_co_center<C: CostFn + ?Sized>(&mut self, v: usize, costs: &C) -> Result<()> {
        let root = self.root.ok_or_else(|| usage("no root to pair a second center with"))?;
        if self.co_center.is_some() {
            return Err(usage("tree already has two centers"));
        }
        if self.contains(v) {
            return Err(usage(format!("vertex {v} is already in the tree")));
        }
        self.link(v, root, costs);
        self.depth[v] = 0;
        self.co_center = Some(v);
        Ok(())
    }

    /// Turns an existing child of the root into the second center and
    /// lifts its subtree by one level.
    pub fn designate_co_center(&mut self, v: usize) -> Result<()> {
        if self.co_center.is_some() {
            return Err(usage("tree already has two centers"));
        }
        if self.root.is_none() || self.parent[v] != self.root {
            return Err(usage(format!("vertex {v} is not a child of the root")));
        }
        self.co_center = Some(v);
        self.shift_subtree(v, -1);
        Ok(())
    }

    /// Adds out-of-tree `child` under in-tree `parent` at depth
    /// `depth(parent) + 1`.
    pub fn attach<C: CostFn + ?Sized>(&mut self, child: usize, parent: usize, costs: &C) -> Result<()> {
        if self.contains(child) {
            return Err(usage(format!("vertex {child} is already in the tree")));
        }
        if !self.contains(parent) {
            return Err(usage(format!("attach target {parent} is not in the tree")));
        }
        self.attach_unchecked(child, parent, costs);
        Ok(())
    }

    #[inline]
    pub(crate) fn attach_unchecked<C: CostFn + ?Sized>(&mut self, child: usize, parent: usize, costs: &C) {
        self.link(child, parent, costs);
        self.depth[child] = self.depth[parent] + 1;
    }

    /// Exact increase of `W(T)` if out-of-tree `out_v` were attached to
    /// in-tree `in_v`: the edge cost paid by `out_v` plus whatever `in_v`
    /// must add to its own range.
    pub fn incremental_power<C: CostFn + ?Sized>(&self, out_v: usize, in_v: usize, costs: &C) -> Result<f64> {
        if self.contains(out_v) {
            return Err(usage(format!("vertex {out_v} is already in the tree")));
        }
        if !self.contains(in_v) {
            return Err(usage(format!("vertex {in_v} is not in the tree")));
        }
        Ok(incremental(costs.cost(out_v, in_v), self.power[in_v]))
    }

    /// `true` if `x` lies in the subtree rooted at `v` (including `v`).
    pub fn in_subtree(&self, x: usize, v: usize) -> bool {
        let mut cur = Some(x);
        while let Some(c) = cur {
            if c == v {
                return true;
            }
            if self.is_center(c) && Some(c) == self.root {
                return false;
            }
            cur = self.parent[c];
        }
        false
    }

    /// Objective change if `child` (with its whole subtree) were moved under
    /// `new_parent`. Only `child`, its old parent and `new_parent` change
    /// power.
    pub fn reattach_delta<C: CostFn + ?Sized>(&self, child: usize, new_parent: usize, costs: &C) -> f64 {
        let old_parent = match self.parent[child] {
            Some(p) => p,
            None => return 0.0,
        };
        if old_parent == new_parent {
            return 0.0;
        }
        let c = costs.cost(child, new_parent);
        let child_new = self.children[child].iter().map(|&u| costs.cost(u, child)).fold(c, f64::max);
        let old_new = self.power_without(old_parent, child, costs);
        let parent_new = self.power[new_parent].max(c);
        (child_new - self.power[child]) + (old_new - self.power[old_parent]) + (parent_new - self.power[new_parent])
    }

    /// Moves `child` and its subtree under `new_parent` and returns the exact
    /// objective change. Depths in the moved branch shift by
    /// `depth(new_parent) + 1 - old depth(child)`.
    pub fn reattach<C: CostFn + ?Sized>(&mut self, child: usize, new_parent: usize, costs: &C) -> Result<f64> {
        if !self.contains(child) || !self.contains(new_parent) {
            return Err(usage(format!("reattach ({child} -> {new_parent}) needs both vertices in the tree")));
        }
        if self.is_center(child) {
            return Err(usage(format!("cannot reattach center {child}")));
        }
        if self.in_subtree(new_parent, child) {
            return Err(Error::Cycle { child, parent: new_parent });
        }
        let old_parent = self.parent[child].expect("non-center in-tree vertex has a parent");
        if old_parent == new_parent {
            return Ok(0.0);
        }
        let delta = self.reattach_delta(child, new_parent, costs);
        let c = costs.cost(child, new_parent);

        self.children[old_parent].retain(|&u| u != child);
        self.children[new_parent].push(child);
        self.parent[child] = Some(new_parent);

        self.power[old_parent] = self.power_without(old_parent, usize::MAX, costs);
        self.power[child] = self.power_without(child, usize::MAX, costs);
        self.power[new_parent] = self.power[new_parent].max(c);

        let shift = self.depth[new_parent] + 1 - self.depth[child];
        if shift != 0 {
            self.shift_subtree(child, shift);
        }
        Ok(delta)
    }

    fn shift_subtree(&mut self, v: usize, shift: i32) {
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            self.depth[u] += shift;
            stack.extend(self.children[u].iter().copied());
        }
    }

    /// Vertices of the subtree rooted at `v`, `v` first.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev().copied());
        }
        out
    }

    /// Exact hop diameter by double breadth-first search.
    pub fn hop_diameter(&self) -> Result<usize> {
        if !self.is_spanning() {
            return Err(usage("hop diameter needs a spanning tree"));
        }
        let start = self.root.expect("spanning tree has a root");
        let (far, _) = self.farthest_from(start);
        let (_, dist) = self.farthest_from(far);
        Ok(dist)
    }

    fn bfs(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    fn farthest_from(&self, start: usize) -> (usize, usize) {
        let dist = self.bfs(start);
        dist.iter().enumerate().filter(|(_, &d)| d != usize::MAX).fold((start, 0), |best, (v, &d)| if d > best.1 { (v, d) } else { best })
    }

    /// Hop counts to the nearest center, recomputed by traversal.
    pub fn traversal_depths(&self) -> Vec<i32> {
        let mut depth = vec![-1i32; self.n()];
        let mut queue = VecDeque::new();
        for c in self.centers() {
            depth[c] = 0;
            queue.push_back(c);
        }
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if depth[u] < 0 {
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        depth
    }

    /// Verifies the power caches, the depth labels and the parent links
    /// against from-scratch recomputation.
    pub fn check_coherence<C: CostFn + ?Sized>(&self, costs: &C) -> Result<()> {
        let fresh = self.recomputed_powers(costs);
        for (v, (&f, &cached)) in fresh.iter().zip(&self.power).enumerate() {
            if self.contains(v) && f != cached {
                return Err(usage(format!("power cache of {v} is {cached} but edges give {f}")));
            }
        }
        let depths = self.traversal_depths();
        if depths != self.depth {
            return Err(usage("depth labels disagree with traversal"));
        }
        for v in 0..self.n() {
            if let (Some(p), false) = (self.parent[v], self.is_center(v)) {
                if self.depth[v] != self.depth[p] + 1 {
                    return Err(usage(format!("depth of {v} is not depth of its parent + 1")));
                }
            }
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn incremental(cost: f64, attach_power: f64) -> f64 {
    cost + (cost - attach_power).max(0.0)
}
