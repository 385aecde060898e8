//! Quadrant heuristic: grid resolution and cell layout.

use powertree::quadrant::{cell_of, mpqch, QuadrantConfig};
use powertree::{HopBound, Instance};

fn main() -> powertree::Result<()> {
    let inst = Instance::generate_uniform(500, 4)?;
    let d = HopBound::new(15)?;

    for qsize in [4, 16, 22, 64, 500] {
        let cfg = QuadrantConfig::new(qsize)?;
        let r = mpqch(&inst, d, &cfg)?;
        println!(
            "qsize {qsize:>3}: {} refinement steps, W = {:.4}, depth {}, {:.2} ms",
            cfg.steps_count(d),
            r.objective,
            r.max_depth,
            r.elapsed.as_secs_f64() * 1e3
        );
    }

    // cells nest: a point's cell at step k+1 lies inside its cell at step k
    let p = inst.point(0);
    for step in 1..=4 {
        let (col, row) = cell_of(p, step);
        println!("point 0 at step {step}: column {col}, row {row} of {}", 1u32 << step);
    }
    Ok(())
}
