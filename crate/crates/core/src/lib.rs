//! Hop-bounded minimum-power spanning trees.
//!
//! Points sit in the unit square and a vertex's transmit power is the cost
//! (squared length by default) of its longest incident tree edge. Given a
//! hop bound `D`, the solvers build spanning trees whose hop diameter is at
//! most `D` while keeping the total power `W(T)` low.
//!
//! | solver | module | idea |
//! |---|---|---|
//! | MPCBTC | [`plh`] | every vertex as center, cheapest attach next |
//! | MPRTC | [`plh`] | random centers, random insertion order |
//! | MPCBLSoC | [`plh`] | star centers drive every choice |
//! | MPCBRC | [`clustering`] | star, then recursive re-clustering of leaves |
//! | MPQCH | [`quadrant`] | quadtree cells, one center per cell |
//! | MPIR | [`refine`] | IPP tree, then cheapest depth-reducing moves |
//!
//! [`oracle`] enumerates every labeled tree for tiny instances, and
//! [`bench`] runs experiment grids. Use [`solve`] to dispatch by name:
//!
//! ```
//! use powertree::{solve, Algorithm, HeuristicConfig, HopBound, Instance};
//!
//! let inst = Instance::generate_uniform(60, 7).unwrap();
//! let cfg = HeuristicConfig::new(Algorithm::Mpqch, HopBound::new(8).unwrap());
//! let res = solve(&inst, &cfg).unwrap();
//! assert!(res.hop_diameter <= 8);
//! ```

pub mod bench;
pub mod clustering;
mod error;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod plh;
pub mod quadrant;
pub mod refine;
mod solve;
pub mod star;
pub mod tree;

pub use error::{Error, Result};
pub use instance::{CostFn, CostMatrix, HopBound, Instance, Point};
pub use solve::{solve, Algorithm, HeuristicConfig, SolveResult};
pub use tree::RootedTree;
