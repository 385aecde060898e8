//! Quadrant center-based heuristic (MPQCH).
//!
//! The unit square is split into 2×2, 4×4, 8×8, ... equal cells. At each
//! level the best star center of every nonempty cell (over vertices not yet
//! in the tree) joins the tree under the center of the enclosing cell from
//! the previous level. Whatever is left after the last level hangs under
//! the center of its last cell. The tree always has a single center.

use std::time::Instant;

use crate::error::{usage, Result};
use crate::instance::{CostFn, Costs, HopBound, Instance, Point};
use crate::solve::{degenerate_tree, SolveResult};
use crate::star::find_best_star_center;
use crate::tree::RootedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadrantConfig {
    qsize: usize,
}

impl QuadrantConfig {
    pub fn new(qsize: usize) -> Result<Self> {
        if qsize == 0 {
            return Err(usage("qsize must be >= 1"));
        }
        Ok(QuadrantConfig { qsize })
    }

    /// The default resolution, one grid line per vertex.
    pub fn for_instance(inst: &Instance) -> Self {
        QuadrantConfig { qsize: inst.len() }
    }

    pub fn qsize(&self) -> usize {
        self.qsize
    }

    /// Number of refinement levels: `min(⌊D/2⌋ - 1, ⌊log2 qsize⌋)`, which
    /// leaves one level of depth for the final leftover pass.
    pub fn steps_count(&self, d: HopBound) -> u32 {
        let by_depth = d.max_depth().saturating_sub(1);
        by_depth.min(self.qsize.ilog2())
    }
}

/// Cell of `p` on the `2^step × 2^step` grid as `(column, row)`.
/// Coordinates on the upper boundary (or outside the square) are clamped.
pub fn cell_of(p: Point, step: u32) -> (u32, u32) {
    let k = 1u64 << step;
    let idx = |c: f64| -> u32 {
        let i = (c * k as f64).floor();
        i.clamp(0.0, (k - 1) as f64) as u32
    };
    (idx(p.x), idx(p.y))
}

pub fn mpqch(inst: &Instance, d: HopBound, cfg: &QuadrantConfig) -> Result<SolveResult> {
    let start = Instant::now();
    let costs = Costs::for_instance(inst);
    let tree = mpqch_tree(inst, &costs, d, cfg)?;
    SolveResult::from_tree(tree, &costs, start.elapsed())
}

pub fn mpqch_tree<C: CostFn + ?Sized>(inst: &Instance, costs: &C, d: HopBound, cfg: &QuadrantConfig) -> Result<RootedTree> {
    if let Some(t) = degenerate_tree(costs, d)? {
        return Ok(t);
    }
    let n = inst.len();
    let all: Vec<usize> = (0..n).collect();
    let (v0, _) = find_best_star_center(costs, &all).expect("n >= 3");
    let mut tree = RootedTree::with_root(n, v0);
    let mut outside: Vec<usize> = all.into_iter().filter(|&v| v != v0).collect();
    let mut cell_center = vec![v0; n];

    for step in 1..=cfg.steps_count(d) {
        if outside.is_empty() {
            break;
        }
        let mut keyed: Vec<((u32, u32), usize)> = outside
            .iter()
            .map(|&v| {
                let (col, row) = cell_of(inst.point(v), step);
                ((row, col), v)
            })
            .collect();
        keyed.sort_unstable();
        let mut promoted = Vec::new();
        for group in keyed.chunk_by(|a, b| a.0 == b.0) {
            let members: Vec<usize> = group.iter().map(|&(_, v)| v).collect();
            let (center, _) = find_best_star_center(costs, &members).expect("nonempty cell");
            tree.attach(center, cell_center[center], costs)?;
            promoted.push(center);
            for &u in &members {
                if u != center {
                    cell_center[u] = center;
                }
            }
        }
        promoted.sort_unstable();
        outside.retain(|v| promoted.binary_search(v).is_err());
    }
    for &u in &outside {
        tree.attach(u, cell_center[u], costs)?;
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hb(d: u32) -> HopBound {
        HopBound::new(d).unwrap()
    }

    #[test]
    fn cell_indexing() {
        let p = Point::new(0.3, 0.7);
        assert_eq!(cell_of(p, 1), (0, 1));
        assert_eq!(cell_of(p, 2), (1, 2));
        assert_eq!(cell_of(Point::new(1.0, 1.0), 3), (7, 7));
        assert_eq!(cell_of(Point::new(0.0, 0.0), 3), (0, 0));
    }

    #[test]
    fn cells_nest() {
        let inst = Instance::generate_uniform(200, 5).unwrap();
        for p in inst.points() {
            for s in 1..8 {
                let (c0, r0) = cell_of(*p, s);
                let (c1, r1) = cell_of(*p, s + 1);
                assert_eq!((c1 / 2, r1 / 2), (c0, r0));
            }
        }
    }

    #[test]
    fn steps_count_bounds() {
        let q = QuadrantConfig::new(250).unwrap();
        assert_eq!(q.steps_count(hb(15)), 6);
        assert_eq!(q.steps_count(hb(40)), 7);
        assert_eq!(q.steps_count(hb(3)), 0);
        assert_eq!(QuadrantConfig::new(1).unwrap().steps_count(hb(20)), 0);
        assert!(QuadrantConfig::new(0).is_err());
    }

    #[test]
    fn e3_traces_to_star() {
        let inst = Instance::from_coords(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)]).unwrap();
        let r = mpqch(&inst, hb(6), &QuadrantConfig::for_instance(&inst)).unwrap();
        assert_eq!(r.objective, 0.75);
        assert_eq!(r.tree.root(), Some(1));
        assert_eq!(r.max_depth, 1);
    }

    #[test]
    fn single_center_and_depth_bound() {
        for seed in 0..5 {
            let inst = Instance::generate_uniform(120, seed).unwrap();
            let cfg = QuadrantConfig::for_instance(&inst);
            for d in 2..16 {
                let r = mpqch(&inst, hb(d), &cfg).unwrap();
                assert!(r.is_feasible(hb(d)));
                assert!(r.tree.co_center().is_none() || inst.len() <= 2);
                assert!(r.max_depth <= cfg.steps_count(hb(d)) + 1);
                r.tree.check_coherence(&inst).unwrap();
            }
        }
    }

    #[test]
    fn deterministic() {
        let inst = Instance::generate_uniform(300, 8).unwrap();
        let cfg = QuadrantConfig::for_instance(&inst);
        assert_eq!(mpqch(&inst, hb(11), &cfg).unwrap().tree, mpqch(&inst, hb(11), &cfg).unwrap().tree);
    }
}
