//! Instance files, result files and tree drawings.

mod orlib;
mod render;
mod results;

pub use orlib::{parse_orlib, write_orlib};
pub use render::{class_color, edge_classes, render_tree, RenderFormat, CENTER_EDGE_COLOR, DEPTH_PALETTE};
pub use results::{read_results_csv, read_results_json, write_results_csv, write_results_json, SolveRecord, CSV_HEADER};
