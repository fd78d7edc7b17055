use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::LorentzR;
use crate::{Error, Result};

/// Samples of a complex function on a strictly increasing grid in (-1, 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Structural(format!(
                "grid has {} points but {} values were given",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 2 {
            return Err(Error::Structural("need at least two samples".into()));
        }
        if grid.iter().any(|x| !(x.is_finite() && x.abs() < 1.0)) {
            return Err(Error::Structural("grid points must lie in (-1, 1)".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Structural("grid must be strictly increasing".into()));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Structural("values must be finite".into()));
        }
        Ok(SampledFunction { grid, values })
    }

    /// Samples `f` at the midpoints of `n` equal cells of (-1, 1).
    pub fn midpoint<F>(f: F, n: usize) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Sync,
    {
        let h = 2.0 / n as f64;
        let grid: Vec<f64> = (0..n).map(|k| -1.0 + (k as f64 + 0.5) * h).collect();
        let values = grid.par_iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Measures of the Voronoi cells of the grid, clipped to (-1, 1).
    pub fn cell_measures(&self) -> Vec<f64> {
        let n = self.grid.len();
        (0..n)
            .map(|k| {
                let left = if k == 0 {
                    -1.0
                } else {
                    0.5 * (self.grid[k - 1] + self.grid[k])
                };
                let right = if k + 1 == n {
                    1.0
                } else {
                    0.5 * (self.grid[k] + self.grid[k + 1])
                };
                right - left
            })
            .collect()
    }

    /// The reflected function `x ↦ f(-x)`.
    pub fn reflected(&self) -> Self {
        SampledFunction {
            grid: self.grid.iter().rev().map(|x| -x).collect(),
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        SampledFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

/// Right-continuous decreasing step function on `[0, breakpoints.last()]`.
///
/// `f*(t) = levels[k]` for `breakpoints[k] ≤ t < breakpoints[k + 1]`, and
/// zero beyond the last breakpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RearrangementStep {
    pub breakpoints: Vec<f64>,
    pub levels: Vec<f64>,
}

impl RearrangementStep {
    pub fn eval(&self, t: f64) -> f64 {
        // first breakpoint strictly greater than t
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        if idx == 0 || idx > self.levels.len() {
            return if idx == 0 { self.levels.first().copied().unwrap_or(0.0) } else { 0.0 };
        }
        self.levels[idx - 1]
    }

    pub fn total_measure(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    /// `(level, measure)` pairs.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.levels
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(&a, w)| (a, w[1] - w[0]))
    }
}

pub fn decreasing_rearrangement(f: &SampledFunction) -> Result<RearrangementStep> {
    let measures = f.cell_measures();
    if measures.iter().any(|&m| m <= 0.0) {
        return Err(Error::Structural("degenerate grid cell".into()));
    }
    let mut pairs: Vec<(f64, f64)> = f
        .values
        .iter()
        .map(|v| v.norm())
        .zip(measures)
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut breakpoints = vec![0.0];
    let mut levels: Vec<f64> = Vec::new();
    let mut t = 0.0;
    for (level, measure) in pairs {
        t += measure;
        if levels.last() == Some(&level) {
            *breakpoints.last_mut().unwrap() = t;
        } else {
            levels.push(level);
            breakpoints.push(t);
        }
    }
    Ok(RearrangementStep { breakpoints, levels })
}

/// `‖f‖_{p,r} = (∫_0^2 (t^{1/p} f*(t))^r dt/t)^{1/r}`, or
/// `sup_t t^{1/p} f*(t)` for `r = ∞`, integrated exactly on the step data.
pub fn lorentz_norm(f: &SampledFunction, p: f64, r: LorentzR) -> Result<f64> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::Domain(format!("p = {p} must lie in (1, ∞)")));
    }
    let step = decreasing_rearrangement(f)?;
    match r {
        LorentzR::Infinite => Ok(step
            .levels
            .iter()
            .zip(&step.breakpoints[1..])
            .map(|(a, t)| a * t.powf(1.0 / p))
            .fold(0.0, f64::max)),
        LorentzR::Finite(r) if r.is_finite() && r >= 1.0 => {
            let e = r / p;
            let sum: f64 = step
                .levels
                .iter()
                .zip(step.breakpoints.windows(2))
                .map(|(a, w)| a.powf(r) * (w[1].powf(e) - w[0].powf(e)))
                .sum();
            Ok((sum * p / r).powf(1.0 / r))
        }
        LorentzR::Finite(r) => Err(Error::Domain(format!("r = {r} must be ≥ 1 or ∞"))),
    }
}

/// Lorentz norms of midpoint samples under successive tenfold refinement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormTrend {
    pub sizes: Vec<usize>,
    pub norms: Vec<f64>,
    /// Set when the increments stop shrinking, read as "not in the space".
    pub diverging: bool,
}

pub fn lorentz_norm_trend<F>(f: F, p: f64, r: LorentzR, base_n: usize) -> Result<NormTrend>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let sizes: Vec<usize> = (0..4).map(|k| base_n * 10usize.pow(k)).collect();
    let norms = sizes
        .iter()
        .map(|&n| lorentz_norm(&SampledFunction::midpoint(&f, n)?, p, r))
        .collect::<Result<Vec<f64>>>()?;
    let steps: Vec<f64> = norms.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let scale = norms[0].abs().max(f64::MIN_POSITIVE);
    let diverging = steps[1] > 1e-9 * scale
        && steps[2] > 1e-9 * scale
        && steps[1] >= 0.9 * steps[0]
        && steps[2] >= 0.9 * steps[1];
    Ok(NormTrend {
        sizes,
        norms,
        diverging,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn inv_w(x: f64) -> Complex64 {
        real(1.0 / (1.0 - x * x).sqrt())
    }

    #[test]
    fn constant_function_has_single_level() {
        let f = SampledFunction::midpoint(|_| real(3.0), 50).unwrap();
        let step = decreasing_rearrangement(&f).unwrap();
        assert_eq!(step.levels, vec![3.0]);
        assert!((step.total_measure() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_gives_identical_rearrangement() {
        let f = SampledFunction::new(
            vec![-0.9, -0.3, 0.1, 0.5, 0.8],
            vec![real(1.0), real(-4.0), real(2.5), Complex64::new(0.0, 3.0), real(0.2)],
        )
        .unwrap();
        let a = decreasing_rearrangement(&f).unwrap();
        let b = decreasing_rearrangement(&f.reflected()).unwrap();
        assert_eq!(a.levels, b.levels);
        for (x, y) in a.breakpoints.iter().zip(&b.breakpoints) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn inverse_weight_matches_exact_rearrangement() {
        // |x| > sqrt(1 - 1/s²) has measure t  ⇒  (1/w)*(t) = 1/sqrt(t(1 - t/4))
        let f = SampledFunction::midpoint(inv_w, 100_000).unwrap();
        let step = decreasing_rearrangement(&f).unwrap();
        for k in 0..=200 {
            let t = 0.01 + (1.9 - 0.01) * k as f64 / 200.0;
            let exact = 1.0 / (t * (1.0 - t / 4.0)).sqrt();
            let rel = (step.eval(t) - exact).abs() / exact;
            assert!(rel < 2e-3, "t = {t}: {rel}");
        }
    }

    #[test]
    fn malformed_samples_rejected() {
        assert!(SampledFunction::new(vec![0.0], vec![real(1.0)]).is_err());
        assert!(SampledFunction::new(vec![0.0, 0.0], vec![real(1.0), real(1.0)]).is_err());
        assert!(SampledFunction::new(vec![-1.0, 0.0], vec![real(1.0), real(1.0)]).is_err());
        assert!(SampledFunction::new(vec![0.0, 0.5], vec![real(1.0), real(f64::NAN)]).is_err());
        assert!(SampledFunction::new(vec![0.0, 0.5], vec![real(1.0)]).is_err());
    }

    #[test]
    fn indicator_norm_is_closed_form() {
        // |f| = 1 on a set of measure 0.5
        let grid: Vec<f64> = (0..8).map(|k| -0.875 + 0.25 * k as f64).collect();
        let values = (0..8).map(|k| real(if k < 2 { 1.0 } else { 0.0 })).collect();
        let f = SampledFunction::new(grid, values).unwrap();
        for (p, r) in [(2.0, 1.0), (3.0, 2.0), (1.5, 4.0)] {
            let got = lorentz_norm(&f, p, LorentzR::Finite(r)).unwrap();
            let want = (p / r).powf(1.0 / r) * 0.5f64.powf(1.0 / p);
            assert!((got - want).abs() < 1e-14 * want, "{p},{r}");
        }
        let weak = lorentz_norm(&f, 2.0, LorentzR::Infinite).unwrap();
        assert!((weak - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn homogeneity() {
        let f = SampledFunction::midpoint(|x| Complex64::new(x.cos(), x * x), 400).unwrap();
        let a = lorentz_norm(&f, 2.5, LorentzR::Finite(1.5)).unwrap();
        let b = lorentz_norm(&f.scaled(real(2.0)), 2.5, LorentzR::Finite(1.5)).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-13 * b);
    }

    #[test]
    fn inverse_weight_diverges_in_l21_but_not_weak_l2() {
        let strong = lorentz_norm_trend(inv_w, 2.0, LorentzR::Finite(1.0), 100).unwrap();
        assert!(strong.diverging, "{strong:?}");
        let weak = lorentz_norm_trend(inv_w, 2.0, LorentzR::Infinite, 100).unwrap();
        assert!(!weak.diverging, "{weak:?}");
        let l15 = lorentz_norm_trend(inv_w, 1.5, LorentzR::Finite(1.5), 100).unwrap();
        assert!(!l15.diverging, "{l15:?}");
    }

    fn arb_sampled() -> impl Strategy<Value = SampledFunction> {
        prop::collection::vec((0.001f64..1.0, -5.0f64..5.0, -5.0f64..5.0), 2..60).prop_map(|cells| {
            let total: f64 = cells.iter().map(|c| c.0).sum();
            let mut x = -1.0;
            let mut grid = Vec::new();
            let mut values = Vec::new();
            for (w, re, im) in cells {
                let width = 2.0 * w / total;
                grid.push(x + 0.5 * width);
                x += width;
                values.push(Complex64::new(re, im));
            }
            SampledFunction::new(grid, values).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rearrangement_preserves_distribution(f in arb_sampled()) {
            let step = decreasing_rearrangement(&f).unwrap();
            prop_assert!(step.levels.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!((step.total_measure() - 2.0).abs() < 1e-12);
            // every level carries exactly the measure of the samples at that modulus
            let measures = f.cell_measures();
            for (level, m) in step.pieces() {
                let expected: f64 = f.values().iter().zip(&measures)
                    .filter(|(v, _)| v.norm() == level)
                    .map(|(_, m)| m)
                    .sum();
                prop_assert!((m - expected).abs() < 1e-12);
            }
        }

        #[test]
        fn diagonal_lorentz_norm_is_lp_norm(f in arb_sampled(), p in 1.01f64..8.0) {
            let lorentz = lorentz_norm(&f, p, LorentzR::Finite(p)).unwrap();
            let plain: f64 = f.values().iter().zip(f.cell_measures())
                .map(|(v, m)| v.norm().powf(p) * m)
                .sum::<f64>()
                .powf(1.0 / p);
            prop_assert!((lorentz - plain).abs() <= 1e-10 * plain.max(1e-300));
        }
    }
}
