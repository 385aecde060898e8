//! Reading and writing OR-Library Euclidean Steiner files.
//!
//!     cargo run --example orlib -- path/to/estein100.txt
//!
//! Without an argument a small file is written and read back.

use powertree::io::{parse_orlib, write_orlib};
use powertree::{solve, Algorithm, HeuristicConfig, HopBound, Instance};

fn main() -> powertree::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map_err(|e| powertree::Error::Io(format!("{path}: {e}")))?,
        None => {
            let made: Vec<Instance> = (0..3).map(|i| Instance::generate_uniform(20 + 10 * i, i as u64)).collect::<Result<_, _>>()?;
            write_orlib(&made)
        }
    };
    let instances = parse_orlib(&text)?;
    println!("{} problems", instances.len());
    let d = HopBound::new(6)?;
    for (i, inst) in instances.iter().enumerate() {
        let r = solve(inst, &HeuristicConfig::new(Algorithm::Mprtc, d))?;
        println!("problem {}: n = {:>4}, MPRTC W at D = {d}: {:.4}", i + 1, inst.len(), r.objective);
    }

    // errors name the offending token
    match parse_orlib("1\n3\n0.1 0.2\n0.3 x\n") {
        Err(e) => println!("malformed input: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
