//! A small experiment grid: summary table plus per-solve CSV.
//!
//!     cargo run --release --example bench_grid

use powertree::bench::{parse_grid, run_experiment, ExperimentPlan, InstanceSource};
use powertree::io::write_results_csv;

fn main() -> powertree::Result<()> {
    let plan = ExperimentPlan {
        grid: parse_grid("100:5,10,25")?,
        source: InstanceSource::Generated { count: 5 },
        repetitions: 2,
        master_seed: 3,
        ..ExperimentPlan::default()
    };
    let (table, records) = run_experiment(&plan)?;
    print!("{}", table.to_text());

    let csv = write_results_csv(&records);
    println!("\nfirst rows of the per-solve CSV ({} rows):", records.len());
    for line in csv.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
