//! Principal-value evaluation of `T f(t) = (1/πi) PV ∫_{-1}^{1} f(x)/(x - t) dx`.
//!
//! Two schemes are offered. [`QuadratureMode::SmoothSubtraction`] writes
//! `PV ∫ f(x)/(x-t) = ∫ (f(x) - f(t))/(x-t) dx + f(t) ln((1-t)/(1+t))` and
//! integrates the regular remainder directly. It needs `f` bounded near ±1.
//! [`QuadratureMode::ChebyshevSubstitution`] performs the same subtraction
//! after `x = cos θ`, so that integrands behaving like `1/w` become bounded,
//! and then sends the endpoints to infinity with `θ = 2 atan(e^s)`, i.e.
//! `x = -tanh s`. Functions that know their form `f(-tanh s)·sech s` exactly
//! can say so through [`Integrand::tanh_form`].

mod identities;
mod quadrature;

use std::f64::consts::PI;
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{EigenFunction, WeightW};
use crate::region::ComplexPoint;
use crate::{Error, Result};

pub use identities::{identity_suite, IdentityCheck, IdentityOutcome, KnownFunction};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadratureMode {
    SmoothSubtraction,
    ChebyshevSubstitution,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Target absolute error of `T f(t)`.
    pub tol: f64,
    /// Maximal bisection depth of any quadrature segment.
    pub max_depth: usize,
    /// Evaluation points are restricted to `|t| ≤ 1 - endpoint_margin`.
    pub endpoint_margin: f64,
    pub mode: QuadratureMode,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: 1e-8,
            max_depth: 40,
            endpoint_margin: 0.05,
            mode: QuadratureMode::SmoothSubtraction,
        }
    }
}

impl QuadratureConfig {
    pub fn chebyshev() -> Self {
        QuadratureConfig {
            mode: QuadratureMode::ChebyshevSubstitution,
            ..Self::default()
        }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        QuadratureConfig { tol, ..self }
    }

    pub fn with_mode(self, mode: QuadratureMode) -> Self {
        QuadratureConfig { mode, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol >= 1e-14) {
            return Err(Error::domain(format!("tol = {} must be ≥ 1e-14", self.tol)));
        }
        if self.max_depth == 0 || self.max_depth > 60 {
            return Err(Error::domain(format!(
                "max_depth = {} must lie in 1..=60",
                self.max_depth
            )));
        }
        if !(self.endpoint_margin > 0.0 && self.endpoint_margin < 1.0) {
            return Err(Error::domain(format!(
                "endpoint_margin = {} must lie in (0, 1)",
                self.endpoint_margin
            )));
        }
        Ok(())
    }

    fn check_point(&self, t: f64) -> Result<()> {
        if t.is_finite() && t.abs() <= 1.0 - self.endpoint_margin + 1e-15 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "t = {t} lies outside |t| ≤ {}",
                1.0 - self.endpoint_margin
            )))
        }
    }
}

/// A function on (-1, 1) that can be transformed.
pub trait Integrand: Sync {
    fn eval(&self, x: f64) -> Complex64;

    /// `f(-tanh s)·sech s`, which equals `f(cos θ)·sin θ` at `θ = 2 atan(e^s)`.
    ///
    /// The default evaluates `f` at the rounded point `-tanh s`, which cannot
    /// resolve `1 ∓ x` below machine epsilon; integrands that blow up at ±1
    /// should override it.
    fn tanh_form(&self, s: f64) -> Complex64 {
        let x = (-s.tanh()).clamp(-1.0 + f64::EPSILON, 1.0 - f64::EPSILON);
        self.eval(x) / s.cosh()
    }
}

impl<F: Fn(f64) -> Complex64 + Sync> Integrand for F {
    fn eval(&self, x: f64) -> Complex64 {
        self(x)
    }
}

impl Integrand for EigenFunction {
    fn eval(&self, x: f64) -> Complex64 {
        self.eval_unchecked(x)
    }

    fn tanh_form(&self, s: f64) -> Complex64 {
        (self.z * (2.0 * s)).exp()
    }
}

impl Integrand for WeightW {
    fn eval(&self, x: f64) -> Complex64 {
        Complex64::new(WeightW::eval(*self, x), 0.0)
    }

    fn tanh_form(&self, s: f64) -> Complex64 {
        Complex64::new(s.cosh().powi(-2), 0.0)
    }
}

/// `PV ∫_{-1}^{1} f(x)/(x - t) dx` at `t = -tanh s_t`.
///
/// With `x = cos θ` and `θ = 2 atan(e^s)` the subtracted integrand becomes
/// `cosh s_t · (F(θ) - f(t) sech s) / sinh(s_t - s)` on the whole real line,
/// where `F = f(-tanh s) sech s`. Integrands of `1/w` type then decay
/// exponentially in `s` instead of being singular at ±1.
fn pv_tanh<F: Integrand + ?Sized>(f: &F, s_t: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let cosh_t = s_t.cosh();
    let f_t = f.tanh_form(s_t) * cosh_t;
    let integrand = |s: f64| {
        let denom = (s_t - s).sinh();
        if !denom.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        (f.tanh_form(s) - f_t / s.cosh()) * (cosh_t / denom)
    };
    let tol = 0.5 * PI * cfg.tol;
    let left = quadrature::integrate_to_infinity(&integrand, s_t, -1.0, tol, cfg.max_depth);
    let right = quadrature::integrate_to_infinity(&integrand, s_t, 1.0, tol, cfg.max_depth);
    let pv = left.value + right.value + f_t * (2.0 * s_t);
    finish(pv, left, right)
}

fn pv_smooth<F: Integrand + ?Sized>(f: &F, t: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let f_t = f.eval(t);
    let integrand = |x: f64| (f.eval(x) - f_t) / (x - t);
    let tol = PI * cfg.tol;
    let left = quadrature::integrate(&integrand, -1.0, t, 0.5 * tol, cfg.max_depth);
    let right = quadrature::integrate(&integrand, t, 1.0, 0.5 * tol, cfg.max_depth);
    let pv = left.value + right.value + f_t * ((1.0 - t) / (1.0 + t)).ln();
    finish(pv, left, right)
}

fn finish(pv: Complex64, left: quadrature::QuadResult, right: quadrature::QuadResult) -> Result<Complex64> {
    let value = pv / (PI * I);
    if left.converged && right.converged && value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Convergence {
            estimate: value,
            error_bound: (left.error + right.error) / PI,
        })
    }
}

/// `T f(t)` to absolute accuracy `cfg.tol`.
pub fn fht<F: Integrand + ?Sized>(f: &F, t: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    cfg.check_point(t)?;
    match cfg.mode {
        QuadratureMode::SmoothSubtraction => pv_smooth(f, t, cfg),
        QuadratureMode::ChebyshevSubstitution => pv_tanh(f, -t.atanh(), cfg),
    }
}

/// `T f` on every grid point, evaluated in parallel; the first failure in
/// grid order is reported.
pub fn fht_grid<F: Integrand + ?Sized>(f: &F, grid: &[f64], cfg: &QuadratureConfig) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    grid.iter().try_for_each(|&t| cfg.check_point(t))?;
    let results: Vec<Result<Complex64>> = grid.par_iter().map(|&t| fht(f, t, cfg)).collect();
    results.into_iter().collect()
}

/// `n` equally spaced points spanning `[-(1 - margin), 1 - margin]`.
pub fn interior_grid(n: usize, margin: f64) -> Vec<f64> {
    let edge = 1.0 - margin;
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n)
            .map(|k| -edge + 2.0 * edge * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub config: QuadratureConfig,
}

impl ResidualReport {
    fn new(grid: Vec<f64>, residuals: Vec<f64>, config: QuadratureConfig) -> Self {
        let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
        ResidualReport {
            grid,
            residuals,
            max_residual,
            config,
        }
    }
}

/// `|T ξ_λ(t) - λ ξ_λ(t)|` over the grid, always in Chebyshev mode.
pub fn eigen_residual(lambda: ComplexPoint, grid: &[f64], cfg: &QuadratureConfig) -> Result<ResidualReport> {
    let eigen = EigenFunction::new(lambda)?;
    let cfg = cfg.with_mode(QuadratureMode::ChebyshevSubstitution);
    let transformed = fht_grid(&eigen, grid, &cfg)?;
    let residuals = grid
        .iter()
        .zip(transformed)
        .map(|(&t, tf)| (tf - lambda * eigen.eval_unchecked(t)).norm())
        .collect();
    Ok(ResidualReport::new(grid.to_vec(), residuals, cfg))
}

/// `f / ξ_λ`, with its tanh form computed without dividing by `sech s`.
struct OverXi<'a, F: ?Sized> {
    f: &'a F,
    eigen: EigenFunction,
}

impl<F: Integrand + ?Sized> Integrand for OverXi<'_, F> {
    fn eval(&self, x: f64) -> Complex64 {
        self.f.eval(x) / self.eigen.eval_unchecked(x)
    }

    fn tanh_form(&self, s: f64) -> Complex64 {
        self.f.tanh_form(s) / (s.cosh() * self.eigen.tanh_form(s))
    }
}

/// The pseudo-inverse `R̂f = (λ f + ξ_λ T(f/ξ_λ)) / (λ² - 1)` as a function
/// that can itself be transformed.
///
/// Inner transforms are taken at arbitrary points of (-1, 1), without the
/// endpoint margin. Inner convergence failures do not abort the evaluation;
/// the first failing bound is recorded, surfaced by
/// [`PseudoInverse::inner_failure`], and later evaluations return NaN.
pub struct PseudoInverse<'a, F: ?Sized> {
    inner: OverXi<'a, F>,
    lambda: ComplexPoint,
    cfg: QuadratureConfig,
    worst_inner: Mutex<Option<f64>>,
}

impl<'a, F: Integrand + ?Sized> PseudoInverse<'a, F> {
    pub fn new(lambda: ComplexPoint, f: &'a F, cfg: &QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        let eigen = EigenFunction::new(lambda)?;
        Ok(PseudoInverse {
            inner: OverXi { f, eigen },
            lambda,
            cfg: *cfg,
            worst_inner: Mutex::new(None),
        })
    }

    /// Error bound of the first inner transform that missed the tolerance.
    pub fn inner_failure(&self) -> Option<f64> {
        *self.worst_inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// `T(f/ξ_λ)` at `x = -tanh s`.
    fn inner_transform(&self, s: f64) -> Complex64 {
        if self.inner_failure().is_some() {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let result = match self.cfg.mode {
            QuadratureMode::ChebyshevSubstitution => pv_tanh(&self.inner, s, &self.cfg),
            QuadratureMode::SmoothSubtraction => pv_smooth(&self.inner, -s.tanh(), &self.cfg),
        };
        match result {
            Ok(v) => v,
            Err(Error::Convergence {
                estimate,
                error_bound,
            }) => {
                let mut worst = self.worst_inner.lock().unwrap_or_else(|e| e.into_inner());
                worst.get_or_insert(error_bound);
                estimate
            }
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    }

    fn scale(&self) -> Complex64 {
        1.0 / (self.lambda * self.lambda - 1.0)
    }
}

impl<F: Integrand + ?Sized> Integrand for PseudoInverse<'_, F> {
    fn eval(&self, x: f64) -> Complex64 {
        let xi = self.inner.eigen.eval_unchecked(x);
        (self.lambda * self.inner.f.eval(x) + xi * self.inner_transform(-x.atanh())) * self.scale()
    }

    fn tanh_form(&self, s: f64) -> Complex64 {
        let xi_sech = self.inner.eigen.tanh_form(s);
        (self.lambda * self.inner.f.tanh_form(s) + xi_sech * self.inner_transform(s)) * self.scale()
    }
}

/// `R̂f(x)` for `|x| ≤ 1 - margin`.
pub fn pseudo_inverse_apply<F: Integrand + ?Sized>(
    lambda: ComplexPoint,
    f: &F,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    cfg.validate()?;
    cfg.check_point(x)?;
    let r = PseudoInverse::new(lambda, f, cfg)?;
    let value = r.eval(x);
    match r.inner_failure() {
        None => Ok(value),
        Some(error_bound) => Err(Error::Convergence {
            estimate: value,
            error_bound,
        }),
    }
}

/// `|(λI - T) R̂f (t) - f(t)|` over the grid.
pub fn pseudo_inverse_residual<F: Integrand + ?Sized>(
    lambda: ComplexPoint,
    f: &F,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<ResidualReport> {
    let r = PseudoInverse::new(lambda, f, cfg)?;
    let transformed = fht_grid(&r, grid, cfg);
    if let Some(error_bound) = r.inner_failure() {
        let estimate = match transformed {
            Ok(values) => values.first().copied().unwrap_or_default(),
            Err(Error::Convergence { estimate, .. }) => estimate,
            Err(e) => return Err(e),
        };
        return Err(Error::Convergence {
            estimate,
            error_bound,
        });
    }
    let transformed = transformed?;
    let residuals = grid
        .iter()
        .zip(transformed)
        .map(|(&t, tr)| (lambda * r.eval(t) - tr - f.eval(t)).norm())
        .collect();
    Ok(ResidualReport::new(grid.to_vec(), residuals, *cfg))
}

/// `(min |Tf + f|, min |Tf - f|)` over the grid. Both stay positive for any
/// `f ≠ 0`, since `±1` are never eigenvalues.
pub fn widom_noninversion_check<F: Integrand + ?Sized>(
    f: &F,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let transformed = fht_grid(f, grid, cfg)?;
    let (plus, minus) = grid.iter().zip(transformed).fold(
        (f64::INFINITY, f64::INFINITY),
        |(plus, minus), (&t, tf)| {
            let v = f.eval(t);
            (plus.min((tf + v).norm()), minus.min((tf - v).norm()))
        },
    );
    Ok((plus, minus))
}
