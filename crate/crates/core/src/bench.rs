//! Experiment harness: runs a grid of (algorithm, n, D) cells over a set
//! of instances and aggregates mean objective, standard deviation and mean
//! time per cell.
//!
//! Seeds are derived, never drawn: generated instance `i` of size `n` uses
//! `derive_seed(master, [INSTANCE_TAG, n, i])`, and repetition `r` of a
//! randomized algorithm on instance `i` uses
//! `derive_seed(master, [algorithm tag, n, D, i, r])`. Adding an algorithm
//! or a grid cell never changes any other solve's stream, and results do
//! not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::instance::{HopBound, Instance};
use crate::io::{parse_orlib, SolveRecord};
use crate::solve::{solve, Algorithm, HeuristicConfig};

/// Tag mixed into generated-instance seeds.
pub const INSTANCE_TAG: u64 = 0x1157_a11c;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `parts` into `master` one SplitMix64 round per part.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(master), |acc, &p| mix64(acc ^ p))
}

fn algorithm_tag(a: Algorithm) -> u64 {
    Algorithm::ALL.iter().position(|&x| x == a).unwrap() as u64 + 1
}

/// The standard comparison grid: four hop bounds for each of n = 100, 250, 500, 1000.
pub fn reference_grid() -> Vec<(usize, u32)> {
    let mut g = Vec::new();
    for (n, ds) in [(100, [5, 10, 15, 25]), (250, [10, 15, 20, 40]), (500, [15, 30, 45, 60]), (1000, [20, 40, 60, 100])] {
        g.extend(ds.iter().map(|&d| (n, d)));
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InstanceSource {
    /// An OR-Library file, or a directory holding `estein{n}.txt` files.
    Orlib(PathBuf),
    /// `count` uniform instances per size, seeded from the master seed.
    Generated { count: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub algorithms: Vec<Algorithm>,
    pub grid: Vec<(usize, u32)>,
    pub source: InstanceSource,
    /// Solves per instance for randomized algorithms.
    pub repetitions: usize,
    /// Quadrant resolution; `None` means `n`.
    pub qsize: Option<usize>,
    pub master_seed: u64,
    /// Worker count; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// When false, `time_ms` is recorded as 0 so result files are
    /// byte-reproducible.
    pub record_timing: bool,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            algorithms: Algorithm::HEURISTICS.to_vec(),
            grid: reference_grid(),
            source: InstanceSource::Generated { count: 15 },
            repetitions: 1,
            qsize: None,
            master_seed: 1,
            threads: None,
            record_timing: true,
        }
    }
}

fn parse_list<T>(value: &str, key: &str, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| f(s).ok_or_else(|| usage(format!("{key}: cannot parse '{s}'"))))
        .collect()
}

/// Parses `100:5,10;250:10,40` into `(n, D)` pairs.
pub fn parse_grid(value: &str) -> Result<Vec<(usize, u32)>> {
    let mut grid = Vec::new();
    for part in value.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (n, ds) = part.split_once(':').ok_or_else(|| usage(format!("grid entry '{part}' is not n:D,D,...")))?;
        let n: usize = n.trim().parse().map_err(|_| usage(format!("grid: bad n '{n}'")))?;
        for d in parse_list(ds, "grid", |s| s.parse::<u32>().ok())? {
            grid.push((n, d));
        }
    }
    if grid.is_empty() {
        return Err(usage("grid is empty"));
    }
    Ok(grid)
}

impl ExperimentPlan {
    /// Reads a plain `key = value` plan. Unknown keys are rejected; blank
    /// lines and `#` comments are ignored. Keys: `algorithms`, `grid`,
    /// `orlib`, `generate` (instance count), `repetitions`, `qsize`,
    /// `seed`, `threads`, `timing`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut plan = ExperimentPlan::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { token: i + 1, message: format!("line {}: expected key = value", i + 1) })?;
            let value = value.trim();
            let bad = |what: &str| Error::Parse { token: i + 1, message: format!("line {}: bad {what} '{value}'", i + 1) };
            match key.trim() {
                "algorithms" => plan.algorithms = parse_list(value, "algorithms", |s| s.parse().ok())?,
                "grid" => plan.grid = parse_grid(value)?,
                "orlib" => plan.source = InstanceSource::Orlib(PathBuf::from(value)),
                "generate" => plan.source = InstanceSource::Generated { count: value.parse().map_err(|_| bad("count"))? },
                "repetitions" => plan.repetitions = value.parse().map_err(|_| bad("repetitions"))?,
                "qsize" => plan.qsize = Some(value.parse().map_err(|_| bad("qsize"))?),
                "seed" => plan.master_seed = value.parse().map_err(|_| bad("seed"))?,
                "threads" => plan.threads = Some(value.parse().map_err(|_| bad("threads"))?),
                "timing" => plan.record_timing = value.parse().map_err(|_| bad("timing"))?,
                other => return Err(Error::Parse { token: i + 1, message: format!("line {}: unknown key '{other}'", i + 1) }),
            }
        }
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(usage("plan lists no algorithms"));
        }
        if self.grid.is_empty() {
            return Err(usage("plan grid is empty"));
        }
        if self.repetitions == 0 {
            return Err(usage("repetitions must be >= 1"));
        }
        if let Some((n, d)) = self.grid.iter().find(|(n, d)| *n == 0 || *d == 0) {
            return Err(usage(format!("grid cell ({n}, {d}) needs n >= 1 and D >= 1")));
        }
        if let InstanceSource::Generated { count: 0 } = self.source {
            return Err(usage("generate needs at least one instance"));
        }
        Ok(())
    }

    /// Loads or generates the instances for every size in the grid.
    pub fn load_instances(&self) -> Result<BTreeMap<usize, Vec<Instance>>> {
        let mut out = BTreeMap::new();
        let sizes: Vec<usize> = {
            let mut s: Vec<usize> = self.grid.iter().map(|&(n, _)| n).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        match &self.source {
            InstanceSource::Generated { count } => {
                for n in sizes {
                    let insts = (0..*count)
                        .map(|i| Instance::generate_uniform(n, derive_seed(self.master_seed, &[INSTANCE_TAG, n as u64, i as u64])))
                        .collect::<Result<Vec<_>>>()?;
                    out.insert(n, insts);
                }
            }
            InstanceSource::Orlib(path) => {
                let from_file = |p: &Path| -> Result<Vec<Instance>> {
                    let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    parse_orlib(&text)
                };
                if path.is_dir() {
                    for n in sizes {
                        let insts = from_file(&path.join(format!("estein{n}.txt")))?;
                        out.insert(n, insts);
                    }
                } else {
                    let all = from_file(path)?;
                    for n in sizes {
                        let insts: Vec<Instance> = all.iter().filter(|i| i.len() == n).cloned().collect();
                        if insts.is_empty() {
                            return Err(usage(format!("{} holds no instance with n = {n}", path.display())));
                        }
                        out.insert(n, insts);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// One aggregated cell of the results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: u32,
    /// Mean objective.
    pub av: f64,
    /// Sample standard deviation of the objective.
    pub err: f64,
    /// Mean wall-clock seconds per solve.
    pub time: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ExperimentTable {
    pub rows: Vec<TableRow>,
}

impl ExperimentTable {
    pub fn get(&self, algorithm: Algorithm, n: usize, d: u32) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.algorithm == algorithm && r.n == n && r.d == d)
    }

    /// Aggregates records cell by cell, keeping first-seen cell order.
    pub fn from_records(records: &[SolveRecord]) -> Self {
        let mut order: Vec<(Algorithm, usize, u32)> = Vec::new();
        let mut cells: BTreeMap<(Algorithm, usize, u32), Vec<&SolveRecord>> = BTreeMap::new();
        for r in records {
            let key = (r.algorithm, r.n, r.d);
            cells.entry(key).or_insert_with(|| {
                order.push(key);
                Vec::new()
            });
            cells.get_mut(&key).unwrap().push(r);
        }
        let rows = order
            .into_iter()
            .map(|key| {
                let rs = &cells[&key];
                let ws: Vec<f64> = rs.iter().map(|r| r.w).collect();
                let (av, err) = mean_and_sample_std(&ws);
                let time = rs.iter().map(|r| r.time_ms).sum::<f64>() / rs.len() as f64 / 1000.0;
                TableRow { algorithm: key.0, n: key.1, d: key.2, av, err, time, count: rs.len() }
            })
            .collect();
        ExperimentTable { rows }
    }

    /// Fixed-width text rendering, one row per cell.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{:<10} {:>6} {:>5} {:>10} {:>10} {:>10} {:>6}", "algorithm", "n", "D", "av", "err", "time", "count").unwrap();
        for r in &self.rows {
            writeln!(s, "{:<10} {:>6} {:>5} {:>10.4} {:>10.4} {:>10.4} {:>6}", r.algorithm.name(), r.n, r.d, r.av, r.err, r.time, r.count)
                .unwrap();
        }
        s
    }
}

/// Mean and sample standard deviation (n − 1 denominator; 0 for one value).
pub fn mean_and_sample_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Debug, Clone)]
struct Job {
    algorithm: Algorithm,
    n: usize,
    d: u32,
    instance: usize,
    seed: u64,
}

/// Runs every solve in the plan. Records come back in plan order: grid
/// cell, then algorithm, then instance, then repetition. Any solve that
/// breaks the hop bound aborts the run.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<(ExperimentTable, Vec<SolveRecord>)> {
    plan.validate()?;
    let instances = plan.load_instances()?;
    run_on_instances(plan, &instances)
}

/// As [`run_experiment`] with instances already in hand (keyed by size).
pub fn run_on_instances(plan: &ExperimentPlan, instances: &BTreeMap<usize, Vec<Instance>>) -> Result<(ExperimentTable, Vec<SolveRecord>)> {
    let mut jobs = Vec::new();
    for &(n, d) in &plan.grid {
        let insts = instances.get(&n).ok_or_else(|| usage(format!("no instances of size {n}")))?;
        for &algorithm in &plan.algorithms {
            let reps = if algorithm.is_randomized() { plan.repetitions } else { 1 };
            for instance in 0..insts.len() {
                for rep in 0..reps {
                    let seed = if algorithm.is_randomized() {
                        derive_seed(plan.master_seed, &[algorithm_tag(algorithm), n as u64, d as u64, instance as u64, rep as u64])
                    } else {
                        0
                    };
                    jobs.push(Job { algorithm, n, d, instance, seed });
                }
            }
        }
    }

    let run_job = |job: &Job| -> Result<SolveRecord> {
        let inst = &instances[&job.n][job.instance];
        let hb = HopBound::new(job.d)?;
        let mut cfg = HeuristicConfig::new(job.algorithm, hb).seed(job.seed);
        cfg.qsize = plan.qsize;
        let r = solve(inst, &cfg).map_err(|e| match e {
            Error::Infeasible(m) => {
                Error::Infeasible(format!("{} on instance {} (n = {}, D = {}): {m}", job.algorithm, job.instance, job.n, job.d))
            }
            other => other,
        })?;
        if job.algorithm.respects_hop_bound() && !r.is_feasible(hb) {
            return Err(Error::Infeasible(format!(
                "{} on instance {} (n = {}, D = {}) produced depth {} / diameter {}",
                job.algorithm, job.instance, job.n, job.d, r.max_depth, r.hop_diameter
            )));
        }
        Ok(SolveRecord {
            algorithm: job.algorithm,
            n: job.n,
            d: job.d,
            instance: job.instance,
            seed: job.seed,
            w: r.objective,
            time_ms: if plan.record_timing { r.elapsed.as_secs_f64() * 1000.0 } else { 0.0 },
            max_depth: r.max_depth,
            hop_diameter: r.hop_diameter,
        })
    };

    let records: Vec<SolveRecord> = match plan.threads {
        Some(1) => jobs.iter().map(run_job).collect::<Result<_>>()?,
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(|e| usage(format!("thread pool: {e}")))?;
            pool.install(|| jobs.par_iter().map(run_job).collect::<Result<_>>())?
        }
        None => jobs.par_iter().map(run_job).collect::<Result<_>>()?,
    };
    Ok((ExperimentTable::from_records(&records), records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_std() {
        let (m, s) = mean_and_sample_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(m, 5.0);
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_and_sample_std(&[3.0]), (3.0, 0.0));
    }

    #[test]
    fn seeds_are_independent_of_neighbors() {
        let a = derive_seed(1, &[3, 100, 5, 0, 0]);
        assert_eq!(a, derive_seed(1, &[3, 100, 5, 0, 0]));
        assert_ne!(a, derive_seed(1, &[3, 100, 5, 1, 0]));
        assert_ne!(a, derive_seed(2, &[3, 100, 5, 0, 0]));
    }

    #[test]
    fn plan_file() {
        let text = "# small plan\nalgorithms = mpqch, mprtc\ngrid = 100:5,10; 250:40\ngenerate = 3\nseed = 9\nthreads = 2\ntiming = false\nrepetitions = 2\n";
        let p = ExperimentPlan::parse(text).unwrap();
        assert_eq!(p.algorithms, vec![Algorithm::Mpqch, Algorithm::Mprtc]);
        assert_eq!(p.grid, vec![(100, 5), (100, 10), (250, 40)]);
        assert_eq!(p.source, InstanceSource::Generated { count: 3 });
        assert_eq!((p.master_seed, p.threads, p.record_timing, p.repetitions), (9, Some(2), false, 2));
        assert!(ExperimentPlan::parse("bogus = 1").is_err());
        assert!(ExperimentPlan::parse("grid = 100").is_err());
        assert!(ExperimentPlan::parse("algorithms = nope").is_err());
        assert!(ExperimentPlan::parse("repetitions = 0").is_err());
    }

    #[test]
    fn reference_grid_shape() {
        let g = reference_grid();
        assert_eq!(g.len(), 16);
        assert_eq!(g[0], (100, 5));
        assert_eq!(g[15], (1000, 100));
    }

    #[test]
    fn small_run_aggregates() {
        let plan = ExperimentPlan {
            algorithms: vec![Algorithm::Mpqch, Algorithm::Mprtc, Algorithm::Oracle],
            grid: vec![(6, 4)],
            source: InstanceSource::Generated { count: 4 },
            repetitions: 2,
            record_timing: false,
            ..Default::default()
        };
        let (table, records) = run_experiment(&plan).unwrap();
        assert_eq!(records.len(), 4 + 8 + 4);
        let row = table.get(Algorithm::Mprtc, 6, 4).unwrap();
        assert_eq!(row.count, 8);
        let ws: Vec<f64> = records.iter().filter(|r| r.algorithm == Algorithm::Mprtc).map(|r| r.w).collect();
        let (av, err) = mean_and_sample_std(&ws);
        assert_eq!((row.av, row.err), (av, err));
        assert!(table.to_text().contains("mprtc"));
    }
}
