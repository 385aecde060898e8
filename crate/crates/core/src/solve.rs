//! Algorithm selection and the common result type.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::instance::{CostFn, Costs, HopBound, Instance};
use crate::tree::RootedTree;
use crate::{clustering, oracle, plh, quadrant, refine};

/// Every solver the crate ships, including the two baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mpcbtc,
    Mprtc,
    Mpcblsoc,
    Mpcbrc,
    Mpqch,
    Mpir,
    Mst,
    Oracle,
}

impl Algorithm {
    /// The six hop-bounded constructive heuristics.
    pub const HEURISTICS: [Algorithm; 6] =
        [Algorithm::Mpcbtc, Algorithm::Mprtc, Algorithm::Mpcblsoc, Algorithm::Mpcbrc, Algorithm::Mpqch, Algorithm::Mpir];

    pub const ALL: [Algorithm; 8] = [
        Algorithm::Mpcbtc,
        Algorithm::Mprtc,
        Algorithm::Mpcblsoc,
        Algorithm::Mpcbrc,
        Algorithm::Mpqch,
        Algorithm::Mpir,
        Algorithm::Mst,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mpcbtc => "mpcbtc",
            Algorithm::Mprtc => "mprtc",
            Algorithm::Mpcblsoc => "mpcblsoc",
            Algorithm::Mpcbrc => "mpcbrc",
            Algorithm::Mpqch => "mpqch",
            Algorithm::Mpir => "mpir",
            Algorithm::Mst => "mst",
            Algorithm::Oracle => "oracle",
        }
    }

    /// Whether the output depends on the seed.
    pub fn is_randomized(self) -> bool {
        self == Algorithm::Mprtc
    }

    /// Whether the output is guaranteed to respect the hop bound.
    pub fn respects_hop_bound(self) -> bool {
        self != Algorithm::Mst
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            // alternate name of the quadrant heuristic
            .or((lower == "mpqbh").then_some(Algorithm::Mpqch))
            .ok_or_else(|| usage(format!("unknown algorithm '{s}'")))
    }
}

/// Everything needed to run one solver on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    pub algorithm: Algorithm,
    pub hop_bound: HopBound,
    pub seed: u64,
    /// Quadrant grid resolution; `None` means `n`.
    pub qsize: Option<usize>,
    /// Trial count for the randomized heuristic; `None` means `n`.
    pub trials: Option<usize>,
}

impl HeuristicConfig {
    pub fn new(algorithm: Algorithm, hop_bound: HopBound) -> Self {
        HeuristicConfig { algorithm, hop_bound, seed: 0, qsize: None, trials: None }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn qsize(mut self, qsize: usize) -> Self {
        self.qsize = Some(qsize);
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }
}

/// A finished solve: the tree and its measured properties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub tree: RootedTree,
    /// `W(T)` recomputed from the tree's edges.
    pub objective: f64,
    pub max_depth: u32,
    pub hop_diameter: usize,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn from_tree<C: CostFn + ?Sized>(tree: RootedTree, costs: &C, elapsed: Duration) -> Result<Self> {
        let objective = tree.objective(costs)?;
        let hop_diameter = tree.hop_diameter()?;
        let max_depth = tree.max_depth().max(0) as u32;
        Ok(SolveResult { tree, objective, max_depth, hop_diameter, elapsed })
    }

    /// Spanning, every depth within ⌊D/2⌋, hop diameter within D.
    pub fn is_feasible(&self, d: HopBound) -> bool {
        self.tree.is_spanning() && self.max_depth <= d.max_depth() && self.hop_diameter <= d.get() as usize
    }
}

/// Runs the configured algorithm and times it. Timing covers building the
/// cost table and the solver itself, not instance loading.
pub fn solve(inst: &Instance, cfg: &HeuristicConfig) -> Result<SolveResult> {
    let d = cfg.hop_bound;
    let start = Instant::now();
    let costs = Costs::for_instance(inst);
    let tree = match cfg.algorithm {
        Algorithm::Mpcbtc => plh::mpcbtc_tree(&costs, d)?,
        Algorithm::Mprtc => plh::mprtc_tree(&costs, d, cfg.seed, cfg.trials)?,
        Algorithm::Mpcblsoc => plh::mpcblsoc_tree(&costs, d)?,
        Algorithm::Mpcbrc => clustering::mpcbrc_tree(&costs, d)?,
        Algorithm::Mpqch => {
            let q = quadrant::QuadrantConfig::new(cfg.qsize.unwrap_or(inst.len()))?;
            quadrant::mpqch_tree(inst, &costs, d, &q)?
        }
        Algorithm::Mpir => refine::mpir_tree(&costs, d)?,
        Algorithm::Mst => oracle::mst_tree(&costs),
        Algorithm::Oracle => return oracle::optimal_tree(inst, d),
    };
    let elapsed = start.elapsed();
    SolveResult::from_tree(tree, &costs, elapsed)
}

/// Rejects hop bounds no spanning tree can meet and builds the forced
/// trees for one and two vertices.
pub(crate) fn degenerate_tree<C: CostFn + ?Sized>(costs: &C, d: HopBound) -> Result<Option<RootedTree>> {
    let n = costs.n();
    match n {
        0 => Err(usage("empty instance")),
        1 => Ok(Some(RootedTree::with_root(1, 0))),
        2 => {
            let mut t = RootedTree::with_root(2, 0);
            if d.is_odd() {
                t.add_co_center(1, costs)?;
            } else {
                t.attach(1, 0, costs)?;
            }
            Ok(Some(t))
        }
        _ if d.get() < 2 => Err(Error::Infeasible(format!("no spanning tree on {n} vertices has hop diameter <= {d}"))),
        _ => Ok(None),
    }
}
