//! The Prim-like scheme with built-in and custom choice rules.
//!
//! A strategy decides the trial centers and which outside vertex is
//! attached next; the attach point itself is always the cheapest offer.

use rand_chacha::ChaCha8Rng;

use powertree::plh::{plh_tree, plh_tree_priced, CenterBased, LeastSumOfCosts, PlhStrategy, Randomized, SeedPricing};
use powertree::{CostFn, HopBound, Instance};

/// Starts from the vertex nearest the middle of the square and always
/// attaches the outside vertex closest to the middle next.
struct InsideOut {
    dist: Vec<f64>,
}

impl PlhStrategy for InsideOut {
    fn first_centers<C: CostFn + ?Sized>(&self, costs: &C, _: &mut ChaCha8Rng) -> Vec<usize> {
        let v = (0..costs.n()).min_by(|&a, &b| self.dist[a].total_cmp(&self.dist[b])).unwrap();
        vec![v]
    }

    fn second_center<C: CostFn + ?Sized>(&self, costs: &C, v0: usize, outside: &[usize], _: &mut ChaCha8Rng) -> usize {
        *outside.iter().min_by(|&&a, &&b| costs.cost(v0, a).total_cmp(&costs.cost(v0, b))).unwrap()
    }

    fn next_vertex<C: CostFn + ?Sized>(&self, _: &C, outside: &[usize], _: &[f64], _: &mut ChaCha8Rng) -> usize {
        (0..outside.len()).min_by(|&i, &j| self.dist[outside[i]].total_cmp(&self.dist[outside[j]])).unwrap()
    }
}

fn main() -> powertree::Result<()> {
    let inst = Instance::generate_uniform(150, 3)?;
    let dist = inst.points().iter().map(|p| (p.x - 0.5).hypot(p.y - 0.5)).collect();
    let inside_out = InsideOut { dist };

    for d in [5, 10, 20] {
        let d = HopBound::new(d)?;
        let w = |t: powertree::RootedTree| t.objective(&inst).unwrap();
        println!("D = {d}");
        println!("  center-based       {:.4}", w(plh_tree(&inst, d, &CenterBased, 0)?));
        println!(
            "  center-based (strict incremental seeding) {:.4}",
            w(plh_tree_priced(&inst, d, &CenterBased, 0, SeedPricing::Incremental)?)
        );
        println!("  randomized, 50     {:.4}", w(plh_tree(&inst, d, &Randomized { trials: Some(50) }, 1)?));
        println!("  least sum of costs {:.4}", w(plh_tree(&inst, d, &LeastSumOfCosts, 0)?));
        println!("  inside-out         {:.4}", w(plh_tree(&inst, d, &inside_out, 0)?));
    }
    Ok(())
}
