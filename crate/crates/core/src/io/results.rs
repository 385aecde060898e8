//! Per-solve result records as CSV (authoritative) and JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solve::Algorithm;

pub const CSV_HEADER: &str = "algorithm,n,D,instance,seed,W,time_ms,max_depth,hop_diameter";

/// One solve, as persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    #[serde(rename = "D")]
    pub d: u32,
    pub instance: usize,
    pub seed: u64,
    #[serde(rename = "W")]
    pub w: f64,
    pub time_ms: f64,
    pub max_depth: u32,
    pub hop_diameter: usize,
}

/// Formats rows with `W` to 6 decimals and `time_ms` to 3.
pub fn write_results_csv(rows: &[SolveRecord]) -> String {
    let mut s = String::with_capacity(64 * (rows.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{:.6},{:.3},{},{}",
            r.algorithm, r.n, r.d, r.instance, r.seed, r.w, r.time_ms, r.max_depth, r.hop_diameter
        )
        .unwrap();
    }
    s
}

pub fn read_results_csv(text: &str) -> Result<Vec<SolveRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| Error::Parse { token: 0, message: e.to_string() })?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::Parse { token: 0, message: format!("unexpected header, want '{CSV_HEADER}'") });
    }
    rdr.deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::Parse { token: i + 1, message: format!("row {}: {e}", i + 1) }))
        .collect()
}

pub fn write_results_json(rows: &[SolveRecord]) -> String {
    serde_json::to_string_pretty(rows).expect("records serialize")
}

pub fn read_results_json(text: &str) -> Result<Vec<SolveRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse { token: e.column(), message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(w: f64) -> SolveRecord {
        SolveRecord { algorithm: Algorithm::Mpqch, n: 2, d: 3, instance: 0, seed: 7, w, time_ms: 0.0, max_depth: 0, hop_diameter: 1 }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(write_results_csv(&[]), format!("{CSV_HEADER}\n"));
        assert!(read_results_csv(&write_results_csv(&[])).unwrap().is_empty());
    }

    #[test]
    fn single_edge_row() {
        let csv = write_results_csv(&[record(0.5)]);
        assert_eq!(csv.lines().nth(1).unwrap(), "mpqch,2,3,0,7,0.500000,0.000,0,1");
    }

    #[test]
    fn bad_header_rejected() {
        assert!(read_results_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn json_mirrors_csv() {
        let rows = vec![record(1.25), record(0.5)];
        assert_eq!(read_results_json(&write_results_json(&rows)).unwrap(), rows);
        assert!(write_results_json(&rows).contains("\"W\": 1.25"));
    }

    proptest! {
        #[test]
        fn csv_round_trip_at_six_decimals(w in 0.0f64..100.0, t in 0.0f64..1e5, seed in any::<u64>(), algo in 0usize..8) {
            let mut r = record(w);
            r.seed = seed;
            r.time_ms = t;
            r.algorithm = Algorithm::ALL[algo];
            let text = write_results_csv(&[r.clone()]);
            let back = read_results_csv(&text).unwrap();
            prop_assert_eq!(back.len(), 1);
            prop_assert!((back[0].w - w).abs() <= 5e-7);
            prop_assert_eq!(back[0].seed, seed);
            prop_assert_eq!(back[0].algorithm, r.algorithm);
            prop_assert_eq!(write_results_csv(&back), text);
        }
    }
}
