//! Incremental-power Prim (IPP) and iterative depth refinement (MPIR).
//!
//! MPIR builds an unconstrained IPP tree around the best star center and
//! then, while some vertex is deeper than ⌊D/2⌋, applies the single branch
//! move that costs the least: some over-deep vertex, or one of its
//! ancestors below depth 1, is re-hung under a shallower vertex.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::instance::{CostFn, Costs, HopBound, Instance};
use crate::plh::{grow, SeedPricing};
use crate::solve::{degenerate_tree, SolveResult};
use crate::star::find_best_star_center;
use crate::tree::RootedTree;

/// A candidate branch move and its exact objective change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementMove {
    pub child: usize,
    pub parent: usize,
    pub delta_w: f64,
}

impl RefinementMove {
    // ordering key: (ΔW, child, parent)
    fn beats(&self, other: &RefinementMove) -> bool {
        (self.delta_w, self.child, self.parent) < (other.delta_w, other.child, other.parent)
    }
}

/// Prim-style growth from `root` where each step attaches the outside
/// vertex with the globally smallest incremental power. No depth limit.
pub fn ipp<C: CostFn + ?Sized>(costs: &C, root: usize) -> RootedTree {
    let mut tree = RootedTree::with_root(costs.n(), root);
    grow(
        costs,
        &mut tree,
        None,
        SeedPricing::Incremental,
        |outside, w| {
            let mut best = 0;
            for (i, &v) in outside.iter().enumerate().skip(1) {
                let b = outside[best];
                if w[v] < w[b] || (w[v] == w[b] && v < b) {
                    best = i;
                }
            }
            best
        },
        None,
    );
    tree
}

pub fn mpir(inst: &Instance, d: HopBound) -> Result<SolveResult> {
    let start = Instant::now();
    let costs = Costs::for_instance(inst);
    let tree = mpir_tree(&costs, d)?;
    SolveResult::from_tree(tree, &costs, start.elapsed())
}

pub fn mpir_tree<C: CostFn + ?Sized>(costs: &C, d: HopBound) -> Result<RootedTree> {
    mpir_observed(costs, d, |_, _| {})
}

/// As [`mpir_tree`], calling `observe` with the tree before each move is
/// applied.
pub(crate) fn mpir_observed<C, F>(costs: &C, d: HopBound, mut observe: F) -> Result<RootedTree>
where
    C: CostFn + ?Sized,
    F: FnMut(&RootedTree, &RefinementMove),
{
    if let Some(t) = degenerate_tree(costs, d)? {
        return Ok(t);
    }
    let n = costs.n();
    let all: Vec<usize> = (0..n).collect();
    let (v0, _) = find_best_star_center(costs, &all).expect("n >= 3");
    let mut tree = ipp(costs, v0);
    if d.is_odd() {
        // the neighbor of v0 reached by its longest edge
        let mut far: Option<(f64, usize)> = None;
        for &u in tree.children(v0) {
            let c = costs.cost(u, v0);
            if far.is_none_or(|(fc, fu)| c > fc || (c == fc && u < fu)) {
                far = Some((c, u));
            }
        }
        if let Some((_, v1)) = far {
            tree.designate_co_center(v1)?;
        }
    }

    let limit = d.max_depth() as i32;
    let mut over: Vec<usize> = (0..n).filter(|&v| tree.depth(v) > limit).collect();
    let mut considered = vec![usize::MAX; n];
    let mut pass = 0usize;
    while !over.is_empty() {
        let mv = match best_move(costs, &tree, &over, limit, &mut considered, pass) {
            Some(m) => m,
            None => fallback_move(costs, &tree, &over).ok_or_else(|| {
                Error::Infeasible(format!("no refinement move available with {} vertices over depth {limit}", over.len()))
            })?,
        };
        observe(&tree, &mv);
        tree.reattach(mv.child, mv.parent, costs)?;
        over.retain(|&v| tree.depth(v) > limit);
        pass += 1;
    }
    Ok(tree)
}

fn best_move<C: CostFn + ?Sized>(
    costs: &C,
    tree: &RootedTree,
    over: &[usize],
    limit: i32,
    considered: &mut [usize],
    pass: usize,
) -> Option<RefinementMove> {
    let n = costs.n();
    let mut best: Option<RefinementMove> = None;
    for &u in over {
        let mut cur = Some(u);
        while let Some(c) = cur {
            if c != u && tree.depth(c) <= 1 {
                break;
            }
            cur = tree.parent(c);
            if considered[c] == pass {
                continue;
            }
            considered[c] = pass;

            // legal parents: depth < min(⌊D/2⌋ - 1, depth(c) - 1)
            let bound = (limit - 1).min(tree.depth(c) - 1);
            if bound <= 0 {
                continue;
            }
            let old_parent = tree.parent(c).expect("non-center has a parent");
            let child_reach = tree.children(c).iter().map(|&x| costs.cost(x, c)).fold(0.0, f64::max);
            let old_side = tree.power_without(old_parent, c, costs) - tree.power(old_parent);
            let pc = tree.power(c);
            for p in 0..n {
                let dp = tree.depth(p);
                if dp < 0 || dp >= bound {
                    continue;
                }
                let cp = costs.cost(c, p);
                let delta_w = (cp.max(child_reach) - pc) + old_side + (tree.power(p).max(cp) - tree.power(p));
                let mv = RefinementMove { child: c, parent: p, delta_w };
                if best.as_ref().is_none_or(|b| mv.beats(b)) {
                    best = Some(mv);
                }
            }
        }
    }
    best
}

// For D < 4 the strict parent bound admits nothing; hang an over-deep
// vertex directly on a center instead.
fn fallback_move<C: CostFn + ?Sized>(costs: &C, tree: &RootedTree, over: &[usize]) -> Option<RefinementMove> {
    let mut best: Option<RefinementMove> = None;
    for &u in over {
        for z in tree.centers() {
            let mv = RefinementMove { child: u, parent: z, delta_w: tree.reattach_delta(u, z, costs) };
            if best.as_ref().is_none_or(|b| mv.beats(b)) {
                best = Some(mv);
            }
        }
    }
    best
}
