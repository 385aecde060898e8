//! IPP without a hop bound, then iterative refinement down to each D.

use powertree::refine::{ipp, mpir};
use powertree::star::find_best_star_center;
use powertree::{HopBound, Instance};

fn main() -> powertree::Result<()> {
    let inst = Instance::generate_uniform(250, 6)?;
    let all: Vec<usize> = (0..inst.len()).collect();
    let (root, _) = find_best_star_center(&inst, &all).unwrap();
    let free = ipp(&inst, root);
    println!("IPP from {root}: W = {:.4}, height {}", free.objective(&inst)?, free.max_depth());

    for d in [4, 5, 10, 15, 20, 40] {
        let r = mpir(&inst, HopBound::new(d)?)?;
        println!(
            "D = {d:>2}: W = {:.4} ({:+.1}% over IPP), diameter {}",
            r.objective,
            100.0 * (r.objective / free.objective(&inst)? - 1.0),
            r.hop_diameter
        );
    }
    Ok(())
}
