use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Logarithmic sampling ranges for the dilation function `M_φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexGrid {
    /// Smallest `s` in the supremum defining `M_φ(t)`.
    pub s_min: f64,
    /// Lower index is a supremum over `t ∈ [t_small, 1/2]`.
    pub t_small: f64,
    /// Upper index is an infimum over `t ∈ [2, t_large]`.
    pub t_large: f64,
    pub points_per_decade: usize,
}

impl Default for IndexGrid {
    fn default() -> Self {
        IndexGrid {
            s_min: 1e-200,
            t_small: 1e-30,
            t_large: 1e30,
            points_per_decade: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalIndices {
    pub lower: f64,
    pub upper: f64,
}

fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    let n = (((b - a) * per_decade as f64).ceil() as usize).max(1);
    (0..=n)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / n as f64))
        .collect()
}

/// Grid estimate of the fundamental indices of `phi`.
///
/// `M_φ(t) = sup { φ(st)/φ(s) : s ≤ 1, st ≤ 1 }`; the lower index is
/// `sup_{t<1} log M_φ(t)/log t` and the upper `inf_{t>1} log M_φ(t)/log t`.
/// The result is an estimate, not a certified bound.
pub fn fundamental_indices<F>(phi: F, grid: &IndexGrid) -> Result<FundamentalIndices>
where
    F: Fn(f64) -> f64,
{
    let valid = grid.s_min > 0.0
        && grid.t_small > 0.0
        && grid.t_small < 0.5
        && grid.t_large > 2.0
        && grid.points_per_decade > 0;
    if !valid {
        return Err(Error::Domain(format!("malformed index grid {grid:?}")));
    }
    let s_grid = log_grid(grid.s_min, 1.0, grid.points_per_decade);
    let phi_s: Vec<f64> = s_grid.iter().map(|&s| phi(s)).collect();
    if phi_s.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Domain("phi must be positive and finite".into()));
    }
    if phi_s.windows(2).any(|w| w[1] < w[0] * (1.0 - 1e-12)) {
        return Err(Error::Domain("phi must be nondecreasing".into()));
    }

    let dilation = |t: f64| -> f64 {
        s_grid
            .iter()
            .zip(&phi_s)
            .filter(|(s, _)| *s * t <= 1.0 && *s * t >= 1e-280)
            .map(|(s, ps)| phi(s * t) / ps)
            .fold(0.0, f64::max)
    };

    let lower = log_grid(grid.t_small, 0.5, grid.points_per_decade)
        .into_iter()
        .map(|t| dilation(t).ln() / t.ln())
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = log_grid(2.0, grid.t_large, grid.points_per_decade)
        .into_iter()
        .map(|t| dilation(t).ln() / t.ln())
        .fold(f64::INFINITY, f64::min);
    Ok(FundamentalIndices {
        lower: lower.max(0.0),
        upper: upper.max(0.0),
    })
}
