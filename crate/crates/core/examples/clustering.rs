//! Recursive clustering from the best spanning star, over a range of
//! hop bounds.

use powertree::clustering::mpcbrc;
use powertree::star::find_best_star_center;
use powertree::{HopBound, Instance, RootedTree};

fn main() -> powertree::Result<()> {
    let inst = Instance::generate_uniform(120, 8)?;
    let all: Vec<usize> = (0..inst.len()).collect();
    let (v0, score) = find_best_star_center(&inst, &all).unwrap();
    let star = RootedTree::star(&inst, v0);
    println!("best star center {v0} (sum + max = {score:.4}), star W = {:.4}", star.objective(&inst)?);

    for d in [2, 3, 4, 6, 10, 16, 30] {
        let r = mpcbrc(&inst, HopBound::new(d)?)?;
        let inner = (0..inst.len()).filter(|&v| !r.tree.children(v).is_empty()).count();
        println!("D = {d:>2}: W = {:.4}, depth {}, {inner} vertices with children", r.objective, r.max_depth);
    }
    Ok(())
}
