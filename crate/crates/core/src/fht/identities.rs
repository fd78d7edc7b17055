use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{fht_grid, interior_grid, pseudo_inverse_residual, Integrand, QuadratureConfig, I};
use crate::eigen::{g_lambda, WeightW};
use crate::{Error, Result};

/// Functions with a closed-form transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KnownFunction {
    /// `1/w`, with `T(1/w) = 0`.
    InverseWeight,
    /// `w`, with `T(w)(t) = it`.
    Weight,
    /// `ix/w`, with `T(ix/w) = 1`.
    IxOverWeight,
}

impl KnownFunction {
    pub const ALL: [KnownFunction; 3] = [
        KnownFunction::InverseWeight,
        KnownFunction::Weight,
        KnownFunction::IxOverWeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KnownFunction::InverseWeight => "T(1/w) = 0",
            KnownFunction::Weight => "T(w) = it",
            KnownFunction::IxOverWeight => "T(ix/w) = 1",
        }
    }

    pub fn transform(self, t: f64) -> Complex64 {
        match self {
            KnownFunction::InverseWeight => Complex64::new(0.0, 0.0),
            KnownFunction::Weight => I * t,
            KnownFunction::IxOverWeight => Complex64::new(1.0, 0.0),
        }
    }
}

impl Integrand for KnownFunction {
    fn eval(&self, x: f64) -> Complex64 {
        let w = WeightW.eval(x);
        match self {
            KnownFunction::InverseWeight => Complex64::new(1.0 / w, 0.0),
            KnownFunction::Weight => Complex64::new(w, 0.0),
            KnownFunction::IxOverWeight => I * x / w,
        }
    }

    fn tanh_form(&self, s: f64) -> Complex64 {
        match self {
            KnownFunction::InverseWeight => Complex64::new(1.0, 0.0),
            KnownFunction::Weight => Complex64::new(s.cosh().powi(-2), 0.0),
            KnownFunction::IxOverWeight => -I * s.tanh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdentityOutcome {
    Pass,
    Fail,
    /// Non-finite quadrature output is reported as `None`.
    NotConverged {
        estimate: Option<Complex64>,
        error_bound: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    /// `None` when the quadrature did not converge.
    pub max_residual: Option<f64>,
    pub threshold: f64,
    pub outcome: IdentityOutcome,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.outcome == IdentityOutcome::Pass
    }

    fn from_result(name: &str, grid: Vec<f64>, threshold: f64, residuals: Result<Vec<f64>>) -> Result<Self> {
        match residuals {
            Ok(residuals) => {
                let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
                let outcome = if max_residual <= threshold {
                    IdentityOutcome::Pass
                } else {
                    IdentityOutcome::Fail
                };
                Ok(IdentityCheck {
                    name: name.to_string(),
                    grid,
                    residuals,
                    max_residual: Some(max_residual),
                    threshold,
                    outcome,
                })
            }
            Err(Error::Convergence {
                estimate,
                error_bound,
            }) => Ok(IdentityCheck {
                name: name.to_string(),
                grid,
                residuals: Vec::new(),
                max_residual: None,
                threshold,
                outcome: IdentityOutcome::NotConverged {
                    estimate: (estimate.re.is_finite() && estimate.im.is_finite()).then_some(estimate),
                    error_bound: error_bound.is_finite().then_some(error_bound),
                },
            }),
            Err(e) => Err(e),
        }
    }
}

/// Checks the three closed-form transforms on `n` interior points, plus the
/// right-inverse property `(λI - T) R̂ g_λ = g_λ` at `λ = 1/2` on a coarser
/// grid. A check passes when its largest residual is within `threshold`.
pub fn identity_suite(cfg: &QuadratureConfig, n: usize, threshold: f64) -> Result<Vec<IdentityCheck>> {
    cfg.validate()?;
    let grid = interior_grid(n, cfg.endpoint_margin);
    let mut checks = Vec::new();
    for known in KnownFunction::ALL {
        let residuals = fht_grid(&known, &grid, cfg).map(|values| {
            grid.iter()
                .zip(values)
                .map(|(&t, v)| (v - known.transform(t)).norm())
                .collect()
        });
        checks.push(IdentityCheck::from_result(known.name(), grid.clone(), threshold, residuals)?);
    }

    let coarse = interior_grid(n.min(8), cfg.endpoint_margin);
    let g = |x: f64| g_lambda(0.5, x).unwrap_or_default();
    let residuals = pseudo_inverse_residual(Complex64::new(0.5, 0.0), &g, &coarse, cfg).map(|r| r.residuals);
    checks.push(IdentityCheck::from_result(
        "(λI - T) R̂ g_λ = g_λ, λ = 1/2",
        coarse,
        threshold,
        residuals,
    )?);
    Ok(checks)
}
