use std::ops::RangeInclusive;

use crate::config::DEFAULT_EPSILON;
use crate::error::{Error, Result};
use crate::tradeoff::{frontier_boundary, tradeoff_frontier};

/// One `(n, k, m, j)` cell of the aggregated depth-breadth table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffRow {
    pub n: u32,
    pub k: u32,
    pub m: u32,
    pub j: u32,
    pub achievable: bool,
    pub s: f64,
    /// Pareto-maximal achievable cell of its `(n, k)` table.
    pub on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffReport {
    pub rows: Vec<TradeoffRow>,
}

const REPORT_ALPHA1: f64 = 1e-8;

/// Tabulates the achievability frontier over ranges of network size and
/// target depth, checking that every boundary cell sits on the line
/// `m + j = n + k - 1`.
pub fn tradeoff_report(
    n_range: RangeInclusive<u32>,
    k_range: RangeInclusive<u32>,
) -> Result<TradeoffReport> {
    if *n_range.start() < 2 || *n_range.end() > 6 {
        return Err(Error::domain("n", *n_range.end() as f64, "2 <= n <= 6"));
    }
    if *k_range.start() < 2 || *k_range.end() > 5 {
        return Err(Error::domain("k", *k_range.end() as f64, "2 <= k <= 5"));
    }
    let mut rows = Vec::new();
    for n in n_range {
        for k in k_range.clone() {
            let cells = tradeoff_frontier(n, k, DEFAULT_EPSILON, REPORT_ALPHA1)?;
            let boundary = frontier_boundary(&cells);
            for (m, j) in &boundary {
                if m + j != n + k - 1 {
                    return Err(Error::Config(format!(
                        "frontier cell (m={m}, j={j}) off the line m+j=n+k-1 at n={n}, k={k}"
                    )));
                }
            }
            rows.extend(cells.iter().map(|c| TradeoffRow {
                n,
                k,
                m: c.m,
                j: c.j,
                achievable: c.achievable,
                s: c.s,
                on_boundary: boundary.contains(&(c.m, c.j)),
            }));
        }
    }
    Ok(TradeoffReport { rows })
}
