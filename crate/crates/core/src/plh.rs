//! Prim-like construction under a depth budget.
//!
//! Each trial starts from one center (two for odd hop bounds) and grows the
//! tree one out-of-tree vertex at a time. The attach point is the eligible
//! in-tree vertex (depth < ⌊D/2⌋) with the cheapest offer, priced by
//! incremental power except for the starting centers (see [`SeedPricing`]).
//! Which out-of-tree vertex goes next, and how the centers are picked, is
//! up to the [`PlhStrategy`]. The best tree over all trials wins.
//!
//! Three strategies are provided:
//! - [`CenterBased`] (MPCBTC): every vertex is tried as center, the next
//!   vertex is the cheapest one to attach.
//! - [`Randomized`] (MPRTC): random centers and random insertion order.
//! - [`LeastSumOfCosts`] (MPCBLSoC): one trial, every choice is the best
//!   star center of the vertices still outside.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{usage, Result};
use crate::instance::{CostFn, Costs, HopBound, Instance};
use crate::solve::{degenerate_tree, SolveResult};
use crate::star::find_best_star_center;
use crate::tree::{incremental, RootedTree};

/// Pluggable choice rules for the Prim-like scheme.
pub trait PlhStrategy {
    /// Centers to start a trial from, one trial each.
    fn first_centers<C: CostFn + ?Sized>(&self, costs: &C, rng: &mut ChaCha8Rng) -> Vec<usize>;

    /// Second center for odd hop bounds, picked from `outside`.
    fn second_center<C: CostFn + ?Sized>(&self, costs: &C, v0: usize, outside: &[usize], rng: &mut ChaCha8Rng) -> usize;

    /// Position in `outside` of the next vertex to attach. `w_best[v]` is
    /// the cheapest incremental power available to `v`.
    fn next_vertex<C: CostFn + ?Sized>(&self, costs: &C, outside: &[usize], w_best: &[f64], rng: &mut ChaCha8Rng) -> usize;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CenterBased;

#[derive(Debug, Clone, Copy, Default)]
pub struct Randomized {
    /// Number of trials; `None` means one per vertex.
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LeastSumOfCosts;

fn position_of(outside: &[usize], v: usize) -> usize {
    outside.iter().position(|&u| u == v).expect("chosen vertex is outside the tree")
}

impl PlhStrategy for CenterBased {
    fn first_centers<C: CostFn + ?Sized>(&self, costs: &C, _: &mut ChaCha8Rng) -> Vec<usize> {
        (0..costs.n()).collect()
    }

    fn second_center<C: CostFn + ?Sized>(&self, costs: &C, v0: usize, outside: &[usize], _: &mut ChaCha8Rng) -> usize {
        argmin_by_vertex(outside, |v| costs.cost(v0, v))
    }

    fn next_vertex<C: CostFn + ?Sized>(&self, _: &C, outside: &[usize], w_best: &[f64], _: &mut ChaCha8Rng) -> usize {
        let mut best = 0;
        for (i, &v) in outside.iter().enumerate().skip(1) {
            let b = outside[best];
            if w_best[v] < w_best[b] || (w_best[v] == w_best[b] && v < b) {
                best = i;
            }
        }
        best
    }
}

impl PlhStrategy for Randomized {
    fn first_centers<C: CostFn + ?Sized>(&self, costs: &C, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let n = costs.n();
        (0..self.trials.unwrap_or(n)).map(|_| rng.gen_range(0..n)).collect()
    }

    fn second_center<C: CostFn + ?Sized>(&self, _: &C, _: usize, outside: &[usize], rng: &mut ChaCha8Rng) -> usize {
        outside[rng.gen_range(0..outside.len())]
    }

    fn next_vertex<C: CostFn + ?Sized>(&self, _: &C, outside: &[usize], _: &[f64], rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..outside.len())
    }
}

impl PlhStrategy for LeastSumOfCosts {
    fn first_centers<C: CostFn + ?Sized>(&self, costs: &C, _: &mut ChaCha8Rng) -> Vec<usize> {
        let all: Vec<usize> = (0..costs.n()).collect();
        find_best_star_center(costs, &all).map(|(c, _)| c).into_iter().collect()
    }

    fn second_center<C: CostFn + ?Sized>(&self, costs: &C, _: usize, outside: &[usize], _: &mut ChaCha8Rng) -> usize {
        find_best_star_center(costs, outside).expect("outside is nonempty").0
    }

    fn next_vertex<C: CostFn + ?Sized>(&self, costs: &C, outside: &[usize], _: &[f64], _: &mut ChaCha8Rng) -> usize {
        let (c, _) = find_best_star_center(costs, outside).expect("outside is nonempty");
        position_of(outside, c)
    }
}

fn argmin_by_vertex(vs: &[usize], mut key: impl FnMut(usize) -> f64) -> usize {
    let mut best = (usize::MAX, f64::INFINITY);
    for &v in vs {
        let k = key(v);
        if k < best.1 || (k == best.1 && v < best.0) {
            best = (v, k);
        }
    }
    best.0
}

/// One attach step of a trial, for replay and inspection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttachStep {
    pub vertex: usize,
    pub parent: usize,
    /// Incremental power paid at the time of the attach.
    pub increment: f64,
}

/// How offers from the starting centers are priced when growth begins.
/// Offers made after an attach always use the incremental power.
///
/// `Cost` prices a center by the plain edge cost `Power(u, center)`. Since
/// incremental power is never below the cost, that price sticks for the
/// whole trial, which biases attaches toward the centers. It reproduces the
/// reference MPCBTC and MPCBLSoC averages; `Incremental` is the strict
/// greedy reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedPricing {
    #[default]
    Cost,
    Incremental,
}

/// Greedy growth state: for every vertex outside the tree, its cheapest
/// eligible attach point and the incremental power of using it.
struct Growth {
    best_neighbor: Vec<usize>,
    w_best: Vec<f64>,
    outside: Vec<usize>,
}

impl Growth {
    fn new<C: CostFn + ?Sized>(costs: &C, tree: &RootedTree, depth_limit: i32, seed_prices: SeedPricing) -> Self {
        let n = costs.n();
        let eligible: Vec<usize> = (0..n).filter(|&v| tree.contains(v) && tree.depth(v) < depth_limit).collect();
        let outside: Vec<usize> = (0..n).filter(|&v| !tree.contains(v)).collect();
        let mut best_neighbor = vec![usize::MAX; n];
        let mut w_best = vec![f64::INFINITY; n];
        for &v in &outside {
            for &t in &eligible {
                let c = costs.cost(v, t);
                let w = match seed_prices {
                    SeedPricing::Cost => c,
                    SeedPricing::Incremental => incremental(c, tree.power(t)),
                };
                if w < w_best[v] {
                    w_best[v] = w;
                    best_neighbor[v] = t;
                }
            }
        }
        Growth { best_neighbor, w_best, outside }
    }

    // Re-prices every outside vertex against in-tree vertex `t`.
    fn offer<C: CostFn + ?Sized>(&mut self, costs: &C, tree: &RootedTree, t: usize) {
        let pt = tree.power(t);
        for &v in &self.outside {
            let w = incremental(costs.cost(t, v), pt);
            if w < self.w_best[v] {
                self.w_best[v] = w;
                self.best_neighbor[v] = t;
            }
        }
    }
}

/// Grows `tree` until it spans every vertex. Vertices at depth
/// `depth_limit` or deeper never receive children; `None` means no limit.
pub(crate) fn grow<C, F>(
    costs: &C,
    tree: &mut RootedTree,
    depth_limit: Option<i32>,
    seed_prices: SeedPricing,
    mut choose: F,
    mut trace: Option<&mut Vec<AttachStep>>,
) where
    C: CostFn + ?Sized,
    F: FnMut(&[usize], &[f64]) -> usize,
{
    let limit = depth_limit.unwrap_or(i32::MAX);
    let mut g = Growth::new(costs, tree, limit, seed_prices);
    while !g.outside.is_empty() {
        let pos = choose(&g.outside, &g.w_best);
        let u = g.outside.swap_remove(pos);
        let b = g.best_neighbor[u];
        debug_assert!(b != usize::MAX, "vertex {u} has no eligible attach point");
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(AttachStep { vertex: u, parent: b, increment: g.w_best[u] });
        }
        tree.attach_unchecked(u, b, costs);
        // b's range may have grown, which can only make it cheaper to reach
        g.offer(costs, tree, b);
        if tree.depth(u) < limit {
            g.offer(costs, tree, u);
        }
    }
}

fn trial<C: CostFn + ?Sized, S: PlhStrategy>(
    costs: &C,
    d: HopBound,
    strat: &S,
    pricing: SeedPricing,
    v0: usize,
    rng: &mut ChaCha8Rng,
    trace: Option<&mut Vec<AttachStep>>,
) -> RootedTree {
    let n = costs.n();
    let mut tree = RootedTree::with_root(n, v0);
    if d.is_odd() {
        let outside: Vec<usize> = (0..n).filter(|&v| v != v0).collect();
        let v1 = strat.second_center(costs, v0, &outside, rng);
        tree.add_co_center(v1, costs).expect("fresh second center");
    }
    grow(costs, &mut tree, Some(d.max_depth() as i32), pricing, |outside, w| strat.next_vertex(costs, outside, w, rng), trace);
    tree
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Best tree over all of the strategy's trials. Trial `k` draws from its
/// own random stream, so results do not depend on trial scheduling.
pub fn plh_tree<C: CostFn + ?Sized, S: PlhStrategy>(costs: &C, d: HopBound, strat: &S, seed: u64) -> Result<RootedTree> {
    plh_tree_priced(costs, d, strat, seed, SeedPricing::default())
}

/// As [`plh_tree`] with an explicit [`SeedPricing`].
pub fn plh_tree_priced<C: CostFn + ?Sized, S: PlhStrategy>(
    costs: &C,
    d: HopBound,
    strat: &S,
    seed: u64,
    pricing: SeedPricing,
) -> Result<RootedTree> {
    if let Some(t) = degenerate_tree(costs, d)? {
        return Ok(t);
    }
    let centers = strat.first_centers(costs, &mut trial_rng(seed, 0));
    if centers.is_empty() {
        return Err(usage("strategy produced no trial centers"));
    }
    let mut best: Option<(f64, RootedTree)> = None;
    for (k, &v0) in centers.iter().enumerate() {
        let tree = trial(costs, d, strat, pricing, v0, &mut trial_rng(seed, k as u64 + 1), None);
        let w = tree.cached_objective();
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, tree));
        }
    }
    Ok(best.expect("at least one trial").1)
}

/// Runs one trial from `v0` and records every attach step.
pub fn trace_trial<S: PlhStrategy>(
    inst: &Instance,
    d: HopBound,
    strat: &S,
    pricing: SeedPricing,
    v0: usize,
    seed: u64,
) -> Result<(RootedTree, Vec<AttachStep>)> {
    let costs = Costs::for_instance(inst);
    if inst.len() < 3 || d.get() < 2 {
        return Err(usage("tracing needs n >= 3 and D >= 2"));
    }
    let mut steps = Vec::new();
    let tree = trial(&costs, d, strat, pricing, v0, &mut trial_rng(seed, 1), Some(&mut steps));
    Ok((tree, steps))
}

/// Generic entry point: any strategy, timed.
pub fn run_plh<S: PlhStrategy>(inst: &Instance, d: HopBound, strat: &S, seed: u64) -> Result<SolveResult> {
    let start = Instant::now();
    let costs = Costs::for_instance(inst);
    let tree = plh_tree(&costs, d, strat, seed)?;
    SolveResult::from_tree(tree, &costs, start.elapsed())
}

pub fn mpcbtc_tree<C: CostFn + ?Sized>(costs: &C, d: HopBound) -> Result<RootedTree> {
    plh_tree(costs, d, &CenterBased, 0)
}

pub fn mprtc_tree<C: CostFn + ?Sized>(costs: &C, d: HopBound, seed: u64, trials: Option<usize>) -> Result<RootedTree> {
    plh_tree(costs, d, &Randomized { trials }, seed)
}

pub fn mpcblsoc_tree<C: CostFn + ?Sized>(costs: &C, d: HopBound) -> Result<RootedTree> {
    plh_tree(costs, d, &LeastSumOfCosts, 0)
}

/// Center-based tree construction: all `n` centers, cheapest vertex next.
pub fn mpcbtc(inst: &Instance, d: HopBound) -> Result<SolveResult> {
    run_plh(inst, d, &CenterBased, 0)
}

/// Randomized tree construction with `n` random trials.
pub fn mprtc(inst: &Instance, d: HopBound, seed: u64) -> Result<SolveResult> {
    run_plh(inst, d, &Randomized::default(), seed)
}

/// Least sum-of-costs construction: a single trial driven by star centers.
pub fn mpcblsoc(inst: &Instance, d: HopBound) -> Result<SolveResult> {
    run_plh(inst, d, &LeastSumOfCosts, 0)
}
