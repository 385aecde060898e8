use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use powertree::bench::{parse_grid, reference_grid, run_experiment, ExperimentPlan, InstanceSource};
use powertree::io::{parse_orlib, render_tree, write_results_csv, write_results_json, RenderFormat};
use powertree::oracle::optimal_tree_limited;
use powertree::{solve, Algorithm, Error, HeuristicConfig, HopBound, Instance, SolveResult};

/// Hop-bounded minimum-power spanning trees.
///
/// Every flag can also be set through the environment variable shown in
/// its help line.
#[derive(Parser)]
#[command(name = "powertree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one instance.
    Solve(SolveArgs),
    /// Run an experiment grid and write per-solve records and a summary table.
    Bench(BenchArgs),
    /// Exact optimum by exhaustive enumeration (tiny instances only).
    Oracle(OracleArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// OR-Library instance file.
    #[arg(long, env = "POWERTREE_ORLIB", conflicts_with = "generate")]
    orlib: Option<PathBuf>,
    /// Problem index inside the OR-Library file (0-based).
    #[arg(long, env = "POWERTREE_INDEX", default_value_t = 0)]
    index: usize,
    /// Generate a uniform instance: `n,seed`.
    #[arg(long, env = "POWERTREE_GENERATE")]
    generate: Option<String>,
}

impl InstanceArgs {
    fn load(&self) -> Result<Instance, Error> {
        if let Some(path) = &self.orlib {
            let mut all = read_orlib(path)?;
            if self.index >= all.len() {
                return Err(Error::Usage(format!("{} holds {} problems, no index {}", path.display(), all.len(), self.index)));
            }
            let inst = all.swap_remove(self.index);
            let outside = inst.out_of_square();
            if !outside.is_empty() {
                eprintln!("warning: {} points lie outside the unit square", outside.len());
            }
            return Ok(inst);
        }
        let spec = self.generate.as_deref().ok_or_else(|| Error::Usage("give --orlib PATH or --generate n,seed".into()))?;
        let nums = parse_u64s(spec, "--generate")?;
        match nums.as_slice() {
            [n, seed] => Instance::generate_uniform(*n as usize, *seed),
            _ => Err(Error::Usage(format!("--generate expects n,seed, got '{spec}'"))),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Algorithm: mpcbtc, mprtc, mpcblsoc, mpcbrc, mpqch, mpir, mst, oracle.
    #[arg(long, env = "POWERTREE_ALGO")]
    algo: Algorithm,
    /// Hop bound D.
    #[arg(long = "d", short = 'd', env = "POWERTREE_D")]
    d: u32,
    #[arg(long, env = "POWERTREE_SEED", default_value_t = 0)]
    seed: u64,
    /// Quadrant grid resolution (default: n).
    #[arg(long, env = "POWERTREE_QSIZE")]
    qsize: Option<usize>,
    /// Write a drawing of the tree; format from the extension (.svg or .dot).
    #[arg(long, env = "POWERTREE_RENDER")]
    render: Option<PathBuf>,
    /// Print the result as JSON.
    #[arg(long, env = "POWERTREE_JSON")]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Plan file of `key = value` lines; flags override it.
    #[arg(long, env = "POWERTREE_PLAN")]
    plan: Option<PathBuf>,
    /// Comma-separated algorithms.
    #[arg(long, env = "POWERTREE_ALGOS")]
    algos: Option<String>,
    /// Grid as `n:D,D;n:D,...` (default: the standard comparison grid).
    #[arg(long, env = "POWERTREE_GRID")]
    grid: Option<String>,
    /// OR-Library file or directory of `estein{n}.txt` files.
    #[arg(long, env = "POWERTREE_ORLIB", conflicts_with = "generate")]
    orlib: Option<PathBuf>,
    /// Generated instances: `n,count,seed` (restricts the grid to n) or `count,seed`.
    #[arg(long, env = "POWERTREE_GENERATE")]
    generate: Option<String>,
    #[arg(long, env = "POWERTREE_REPETITIONS")]
    repetitions: Option<usize>,
    #[arg(long, env = "POWERTREE_QSIZE")]
    qsize: Option<usize>,
    #[arg(long, env = "POWERTREE_THREADS")]
    threads: Option<usize>,
    /// Record time_ms as 0 so the CSV is byte-reproducible.
    #[arg(long, env = "POWERTREE_NO_TIMING")]
    no_timing: bool,
    /// Per-solve CSV output.
    #[arg(long, env = "POWERTREE_OUT")]
    out: Option<PathBuf>,
    /// Per-solve JSON output.
    #[arg(long, env = "POWERTREE_JSON_OUT")]
    json: Option<PathBuf>,
    /// Summary table output (printed to stdout when absent).
    #[arg(long, env = "POWERTREE_TABLE")]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long = "d", short = 'd', env = "POWERTREE_D")]
    d: u32,
    /// Refuse instances larger than this.
    #[arg(long, env = "POWERTREE_MAX_N", default_value_t = powertree::oracle::MAX_ORACLE_N)]
    max_n: usize,
}

fn parse_u64s(s: &str, flag: &str) -> Result<Vec<u64>, Error> {
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| Error::Usage(format!("{flag}: '{t}' is not a number")))).collect()
}

fn read_orlib(path: &Path) -> Result<Vec<Instance>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_orlib(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn report(res: &SolveResult, label: &str, json: bool) {
    if json {
        let v = serde_json::json!({
            "algorithm": label,
            "W": res.objective,
            "max_depth": res.max_depth,
            "hop_diameter": res.hop_diameter,
            "time_ms": res.elapsed.as_secs_f64() * 1000.0,
            "edges": res.tree.edges(),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!(
            "{label}: W = {:.6}  max_depth = {}  hop_diameter = {}  time = {:.3} ms",
            res.objective,
            res.max_depth,
            res.hop_diameter,
            res.elapsed.as_secs_f64() * 1000.0
        );
    }
}

fn run_solve(args: SolveArgs) -> Result<(), Error> {
    let inst = args.instance.load()?;
    let d = HopBound::new(args.d)?;
    let mut cfg = HeuristicConfig::new(args.algo, d).seed(args.seed);
    cfg.qsize = args.qsize;
    let res = solve(&inst, &cfg)?;
    if args.algo.respects_hop_bound() && !res.is_feasible(d) {
        return Err(Error::Infeasible(format!("{} produced hop diameter {} > {d}", args.algo, res.hop_diameter)));
    }
    report(&res, args.algo.name(), args.json);
    if let Some(path) = args.render {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("svg");
        let text = render_tree(&res.tree, &inst, ext.parse::<RenderFormat>()?)?;
        write_file(&path, &text)?;
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), Error> {
    let mut plan = match &args.plan {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            ExperimentPlan::parse(&text)?
        }
        None => ExperimentPlan::default(),
    };
    if let Some(a) = &args.algos {
        plan.algorithms = a.split(',').map(|s| s.parse::<Algorithm>()).collect::<Result<_, _>>()?;
    }
    if let Some(g) = &args.grid {
        plan.grid = parse_grid(g)?;
    }
    if let Some(path) = &args.orlib {
        plan.source = InstanceSource::Orlib(path.clone());
    }
    if let Some(spec) = &args.generate {
        let nums = parse_u64s(spec, "--generate")?;
        let (n, count, seed) = match nums.as_slice() {
            [n, count, seed] => (Some(*n as usize), *count, *seed),
            [count, seed] => (None, *count, *seed),
            _ => return Err(Error::Usage(format!("--generate expects n,count,seed or count,seed, got '{spec}'"))),
        };
        plan.source = InstanceSource::Generated { count: count as usize };
        plan.master_seed = seed;
        if let Some(n) = n {
            if args.grid.is_none() {
                let base = if plan.grid.iter().any(|&(m, _)| m == n) { plan.grid.clone() } else { reference_grid() };
                plan.grid = base.into_iter().filter(|&(m, _)| m == n).collect();
                if plan.grid.is_empty() {
                    return Err(Error::Usage(format!("no default hop bounds for n = {n}; pass --grid {n}:D,...")));
                }
            }
        }
    }
    if let Some(r) = args.repetitions {
        plan.repetitions = r;
    }
    if args.qsize.is_some() {
        plan.qsize = args.qsize;
    }
    if args.threads.is_some() {
        plan.threads = args.threads;
    }
    if args.no_timing {
        plan.record_timing = false;
    }
    let (table, records) = run_experiment(&plan)?;
    if let Some(p) = &args.out {
        write_file(p, &write_results_csv(&records))?;
    }
    if let Some(p) = &args.json {
        write_file(p, &write_results_json(&records))?;
    }
    match &args.table {
        Some(p) => write_file(p, &table.to_text())?,
        None => print!("{}", table.to_text()),
    }
    Ok(())
}

fn run_oracle(args: OracleArgs) -> Result<(), Error> {
    let inst = args.instance.load()?;
    let res = optimal_tree_limited(&inst, HopBound::new(args.d)?, args.max_n)?;
    report(&res, "oracle", false);
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with 2 on bad arguments; 2 is reserved for infeasibility here
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Bench(a) => run_bench(a),
        Command::Oracle(a) => run_oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Infeasible(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
