//! Points in the unit square and the power-cost model.
//!
//! The cost of an edge is the Euclidean distance between its endpoints
//! raised to `cost_exponent` (2 unless configured otherwise). Costs are
//! computed on demand from coordinates; [`CostMatrix`] caches the full
//! table for instances up to [`DENSE_LIMIT`] vertices, which is what the
//! solvers use internally.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// Largest instance for which solvers precompute the dense cost table.
pub const DENSE_LIMIT: usize = 2000;

/// Default path-loss exponent: power grows with the squared distance.
pub const DEFAULT_EXPONENT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn in_unit_square(&self) -> bool {
        (0.0..=1.0).contains(&self.x) && (0.0..=1.0).contains(&self.y)
    }

    #[inline]
    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// Anything that can price the edge between two vertices.
pub trait CostFn {
    fn n(&self) -> usize;
    fn cost(&self, i: usize, j: usize) -> f64;
}

/// A point set with its power-cost function. Vertex `i` is `points[i]`;
/// the graph is implicitly complete.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    points: Vec<Point>,
    cost_exponent: f64,
}

impl Instance {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Self::with_exponent(points, DEFAULT_EXPONENT)
    }

    pub fn with_exponent(points: Vec<Point>, cost_exponent: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(usage("an instance needs at least one point"));
        }
        if !(cost_exponent >= 1.0 && cost_exponent.is_finite()) {
            return Err(usage(format!("cost exponent must be finite and >= 1, got {cost_exponent}")));
        }
        if let Some(i) = points.iter().position(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(usage(format!("point {i} has a non-finite coordinate")));
        }
        Ok(Instance { points, cost_exponent })
    }

    /// Convenience constructor from coordinate pairs.
    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    /// `n` points drawn i.i.d. uniformly from `[0,1]²`.
    ///
    /// The generator is ChaCha8 seeded with `seed_from_u64(seed)`, and each
    /// coordinate is one 53-bit uniform draw (x before y), so the same seed
    /// gives bit-identical coordinates on every platform.
    pub fn generate_uniform(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(usage("cannot generate an instance with zero points"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..n)
            .map(|_| {
                let x: f64 = rng.gen();
                let y: f64 = rng.gen();
                Point::new(x, y)
            })
            .collect();
        Ok(Instance { points, cost_exponent: DEFAULT_EXPONENT })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn cost_exponent(&self) -> f64 {
        self.cost_exponent
    }

    /// Indices of points outside the closed unit square.
    pub fn out_of_square(&self) -> Vec<usize> {
        self.points.iter().enumerate().filter(|(_, p)| !p.in_unit_square()).map(|(i, _)| i).collect()
    }

    /// Checked edge cost; `i == j` is allowed and prices to zero.
    pub fn try_cost(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.len();
        if i >= n || j >= n {
            return Err(usage(format!("vertex index out of range: ({i}, {j}) with n = {n}")));
        }
        Ok(self.cost(i, j))
    }

    /// Dense cost table if the instance is small enough, otherwise `None`.
    pub fn dense_costs(&self) -> Option<CostMatrix> {
        (self.len() <= DENSE_LIMIT).then(|| CostMatrix::new(self))
    }

    /// Copy of this instance with every coordinate multiplied by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Instance {
        Instance { points: self.points.iter().map(|p| Point::new(p.x * alpha, p.y * alpha)).collect(), cost_exponent: self.cost_exponent }
    }
}

impl CostFn for Instance {
    fn n(&self) -> usize {
        self.len()
    }

    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        let d2 = self.points[i].dist_sq(&self.points[j]);
        if self.cost_exponent == 2.0 {
            d2
        } else {
            d2.sqrt().powf(self.cost_exponent)
        }
    }
}

/// Row-major `n × n` table of edge costs.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(inst: &Instance) -> Self {
        let n = inst.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = inst.cost(i, j);
                data[i * n + j] = c;
                data[j * n + i] = c;
            }
        }
        CostMatrix { n, data }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

impl CostFn for CostMatrix {
    fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

/// Costs as the solvers see them: a dense table when affordable,
/// on-demand evaluation otherwise.
pub enum Costs<'a> {
    Dense(CostMatrix),
    Lazy(&'a Instance),
}

impl<'a> Costs<'a> {
    pub fn for_instance(inst: &'a Instance) -> Self {
        match inst.dense_costs() {
            Some(m) => Costs::Dense(m),
            None => Costs::Lazy(inst),
        }
    }
}

impl CostFn for Costs<'_> {
    fn n(&self) -> usize {
        match self {
            Costs::Dense(m) => m.n,
            Costs::Lazy(inst) => inst.len(),
        }
    }

    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        match self {
            Costs::Dense(m) => m.cost(i, j),
            Costs::Lazy(inst) => inst.cost(i, j),
        }
    }
}

/// Maximum allowed hop count between any two vertices of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HopBound(u32);

impl HopBound {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(usage("hop bound D must be >= 1"));
        }
        Ok(HopBound(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest depth any vertex may have below the center(s): ⌊D/2⌋.
    pub fn max_depth(self) -> u32 {
        self.0 / 2
    }

    /// Odd bounds use two adjacent centers.
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl std::fmt::Display for HopBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
