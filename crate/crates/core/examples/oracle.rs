//! Exact optimum on a tiny instance, and how far each heuristic is from it.

use powertree::oracle::{mst_baseline, optimal_tree, tree_count};
use powertree::{solve, Algorithm, HeuristicConfig, HopBound, Instance};

fn main() -> powertree::Result<()> {
    let inst = Instance::generate_uniform(8, 11)?;
    println!("{} labeled trees on 8 vertices", tree_count(8));
    println!("MST baseline W = {:.4}", mst_baseline(&inst)?.objective);

    for d in [2, 3, 4, 6] {
        let d = HopBound::new(d)?;
        let opt = optimal_tree(&inst, d)?;
        print!("D = {d}: OPT = {:.4} |", opt.objective);
        for a in Algorithm::HEURISTICS {
            let w = solve(&inst, &HeuristicConfig::new(a, d))?.objective;
            print!(" {} {:.2}x", a.name(), w / opt.objective);
        }
        println!();
    }

    // the oracle refuses instances it cannot enumerate in reasonable time
    let big = Instance::generate_uniform(12, 1)?;
    println!("n = 12: {}", optimal_tree(&big, HopBound::new(4)?).unwrap_err());
    Ok(())
}
