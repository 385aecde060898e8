//! Center-based recursive clustering (MPCBRC).
//!
//! Starts from the best spanning star and repeatedly promotes the best star
//! center among the leaves that still have depth budget. Every remaining
//! leaf that lowers `W(T)` by hanging under the new center is moved there.

use std::time::Instant;

use crate::error::Result;
use crate::instance::{CostFn, Costs, HopBound, Instance};
use crate::solve::{degenerate_tree, SolveResult};
use crate::star::find_best_star_center;
use crate::tree::RootedTree;

pub fn mpcbrc(inst: &Instance, d: HopBound) -> Result<SolveResult> {
    let start = Instant::now();
    let costs = Costs::for_instance(inst);
    let tree = mpcbrc_tree(&costs, d)?;
    SolveResult::from_tree(tree, &costs, start.elapsed())
}

pub fn mpcbrc_tree<C: CostFn + ?Sized>(costs: &C, d: HopBound) -> Result<RootedTree> {
    mpcbrc_observed(costs, d, |_| {})
}

/// As [`mpcbrc_tree`], calling `observe` after the initial star and after
/// every clustering round.
pub(crate) fn mpcbrc_observed<C, F>(costs: &C, d: HopBound, mut observe: F) -> Result<RootedTree>
where
    C: CostFn + ?Sized,
    F: FnMut(&RootedTree),
{
    if let Some(t) = degenerate_tree(costs, d)? {
        return Ok(t);
    }
    let n = costs.n();
    let all: Vec<usize> = (0..n).collect();
    let (v0, _) = find_best_star_center(costs, &all).expect("n >= 3");
    let mut tree = RootedTree::star(costs, v0);
    let mut leaves: Vec<usize> = all.iter().copied().filter(|&v| v != v0).collect();

    let mut co_center = None;
    if d.is_odd() {
        let (v1, _) = find_best_star_center(costs, &leaves).expect("n >= 3");
        tree.designate_co_center(v1)?;
        co_center = Some(v1);
    }
    observe(&tree);

    let limit = d.max_depth() as i32;
    loop {
        let open: Vec<usize> = leaves.iter().copied().filter(|&v| tree.depth(v) < limit).collect();
        let Some((center, _)) = find_best_star_center(costs, &open) else {
            break;
        };
        leaves.retain(|&v| v != center);
        for &u in &leaves {
            if Some(u) == co_center {
                continue;
            }
            if tree.reattach_delta(u, center, costs) < 0.0 {
                tree.reattach(u, center, costs)?;
            }
        }
        observe(&tree);
        if leaves.is_empty() {
            break;
        }
    }
    Ok(tree)
}
