//! Solve one random instance with every heuristic.
//!
//!     cargo run --release --example quickstart -- 200 12

use powertree::{solve, Algorithm, HeuristicConfig, HopBound, Instance};

fn main() -> powertree::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(100) as usize;
    let d = HopBound::new(args.next().unwrap_or(10) as u32)?;
    let inst = Instance::generate_uniform(n, 42)?;

    println!("n = {n}, D = {d}");
    for algorithm in Algorithm::HEURISTICS {
        let r = solve(&inst, &HeuristicConfig::new(algorithm, d).seed(7))?;
        println!(
            "{:<9} W = {:>8.4}  depth {:>2}  diameter {:>2}  {:>8.2} ms",
            algorithm.name(),
            r.objective,
            r.max_depth,
            r.hop_diameter,
            r.elapsed.as_secs_f64() * 1e3
        );
    }
    Ok(())
}
