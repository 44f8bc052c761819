//! Dimension and degree numerology.
//!
//! A dimension `N >= 3` is written `N = n + r` with
//! `max(1, 2^{n-1} - 2) <= r <= 2^n - 2`; hypersurfaces of degree at least
//! `n + 2` in that dimension are covered. The admissible ranges for
//! consecutive `n` abut, so `n` is unique.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub dim_max: u64,
    pub deg_min: u64,
    pub n: u64,
}

/// Smallest `N` handled with this `n`.
pub fn range_start(n: u64) -> u64 {
    n + 1u64.max((1u64 << (n - 1)).saturating_sub(2))
}

/// Largest `N` handled with this `n`.
pub fn range_end(n: u64) -> u64 {
    n + (1u64 << n) - 2
}

fn require_dim(dim: u64) -> Result<()> {
    if dim < 3 {
        return Err(Error::InvalidDimension(format!(
            "N ≥ 3 required, got {dim}"
        )));
    }
    Ok(())
}

pub fn decompose_dimension(dim: u64) -> Result<(u64, u64)> {
    require_dim(dim)?;
    let mut n = 2;
    while range_end(n) < dim {
        n += 1;
    }
    debug_assert!(range_start(n) <= dim);
    Ok((n, dim - n))
}

pub fn min_degree(dim: u64) -> Result<u64> {
    Ok(decompose_dimension(dim)?.0 + 2)
}

/// One row per `n`, the last one clipped at `max_dim`.
pub fn bounds_table(max_dim: u64) -> Result<Vec<BoundsRow>> {
    require_dim(max_dim)?;
    let mut rows = Vec::new();
    let mut n = 2;
    while range_start(n) <= max_dim {
        rows.push(BoundsRow {
            dim_max: range_end(n).min(max_dim),
            deg_min: n + 2,
            n,
        });
        n += 1;
    }
    Ok(rows)
}

/// Comparison of the minimal degree with `log2(N) + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogBound {
    pub dim: u64,
    pub n: u64,
    pub min_degree: u64,
    /// `ceil(log2 N) + 2`.
    pub bound: u64,
    /// `min_degree <= bound`.
    pub holds: bool,
    /// `min_degree == bound`.
    pub tight: bool,
    /// The uncapped inequality `n <= log2 N`, i.e. `2^n <= N`. It fails for
    /// some small `N` (the first being 3).
    pub exact_log_holds: bool,
}

pub fn ceil_log2(dim: u64) -> u64 {
    64 - (dim - 1).leading_zeros() as u64
}

pub fn log_bound_check(dim: u64) -> Result<LogBound> {
    let (n, _) = decompose_dimension(dim)?;
    let min_degree = n + 2;
    let bound = ceil_log2(dim) + 2;
    Ok(LogBound {
        dim,
        n,
        min_degree,
        bound,
        holds: min_degree <= bound,
        tight: min_degree == bound,
        exact_log_holds: n < 64 && (1u64 << n) <= dim,
    })
}

/// Aligned two-row table, `dim(X) <=` over `deg(X) >=`.
pub fn render_table(rows: &[BoundsRow]) -> String {
    let dims: Vec<String> = rows.iter().map(|r| r.dim_max.to_string()).collect();
    let degs: Vec<String> = rows.iter().map(|r| r.deg_min.to_string()).collect();
    let widths: Vec<usize> = dims
        .iter()
        .zip(&degs)
        .map(|(a, b)| a.len().max(b.len()))
        .collect();
    let mut out = String::new();
    let _ = write!(out, "dim(X) <=");
    for (d, w) in dims.iter().zip(&widths) {
        let _ = write!(out, " {d:>w$}");
    }
    out.push('\n');
    let _ = write!(out, "deg(X) >=");
    for (d, w) in degs.iter().zip(&widths) {
        let _ = write!(out, " {d:>w$}");
    }
    out.push('\n');
    out
}

/// One line per row: `n dim_max deg_min`.
pub fn render_rows(rows: &[BoundsRow]) -> String {
    rows.iter()
        .map(|r| format!("{} {} {}\n", r.n, r.dim_max, r.deg_min))
        .collect()
}
