//! Depth-colored SVG and DOT drawings of the six heuristics on one instance.
//!
//!     cargo run --release --example render -- out_dir

use std::path::PathBuf;

use powertree::io::{render_tree, RenderFormat};
use powertree::{solve, Algorithm, HeuristicConfig, HopBound, Instance};

fn main() -> powertree::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir).map_err(|e| powertree::Error::Io(e.to_string()))?;
    let inst = Instance::generate_uniform(250, 1)?;
    let d = HopBound::new(15)?;

    for a in Algorithm::HEURISTICS {
        let r = solve(&inst, &HeuristicConfig::new(a, d))?;
        for (fmt, ext) in [(RenderFormat::Svg, "svg"), (RenderFormat::Dot, "dot")] {
            let path = dir.join(format!("{}_n250_d15.{ext}", a.name()));
            std::fs::write(&path, render_tree(&r.tree, &inst, fmt)?).map_err(|e| powertree::Error::Io(e.to_string()))?;
        }
        println!(
            "{:<9} W = {:.4}, depth {} -> {}",
            a.name(),
            r.objective,
            r.max_depth,
            dir.join(format!("{}_n250_d15.svg", a.name())).display()
        );
    }
    Ok(())
}
