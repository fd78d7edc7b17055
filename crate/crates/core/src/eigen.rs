//! Canonical eigenfunctions `ξ_λ(x) = w(x)^{-1} ((1-x)/(1+x))^{z(λ)}` of `T`.
//!
//! `T ξ_λ = λ ξ_λ` for every `λ ∈ A`; whether `ξ_λ` lies in a given
//! r.i. space depends only on `γ_λ` and the index `p_X`.

use serde::{Deserialize, Serialize};

use crate::region::{classify_point, ensure_admissible, gamma_of, z_of, ComplexPoint, RegionClass};
use crate::spaces::{ensure_valid, Attainment, IndexProfile};
use crate::{Error, Result};

/// `w(x) = (1 - x²)^{1/2}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightW;

impl WeightW {
    pub fn eval(self, x: f64) -> f64 {
        ((1.0 - x) * (1.0 + x)).max(0.0).sqrt()
    }
}

fn ensure_open_interval(x: f64) -> Result<()> {
    if x.is_finite() && x.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("x = {x} must lie in (-1, 1)")))
    }
}

/// `ln((1 - x)/(1 + x))`.
fn log_base(x: f64) -> f64 {
    (-x).ln_1p() - x.ln_1p()
}

/// `ξ_λ` with its parameters cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenFunction {
    pub lambda: ComplexPoint,
    pub z: ComplexPoint,
    pub gamma: f64,
}

impl EigenFunction {
    pub fn new(lambda: ComplexPoint) -> Result<Self> {
        ensure_admissible(lambda)?;
        Ok(EigenFunction {
            lambda,
            z: z_of(lambda)?,
            gamma: gamma_of(lambda)?,
        })
    }

    pub fn eval(&self, x: f64) -> Result<ComplexPoint> {
        ensure_open_interval(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub fn modulus(&self, x: f64) -> Result<f64> {
        ensure_open_interval(x)?;
        Ok((self.z.re * log_base(x)).exp() / WeightW.eval(x))
    }

    /// `w·ξ_λ = ((1-x)/(1+x))^z`.
    pub fn weighted(&self, x: f64) -> Result<ComplexPoint> {
        ensure_open_interval(x)?;
        Ok((self.z * log_base(x)).exp())
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> ComplexPoint {
        (self.z * log_base(x)).exp() / WeightW.eval(x)
    }
}

/// `ξ_λ(x)`.
pub fn xi(lambda: ComplexPoint, x: f64) -> Result<ComplexPoint> {
    EigenFunction::new(lambda)?.eval(x)
}

/// `|ξ_λ(x)| = w(x)^{-1} ((1-x)/(1+x))^{Re z(λ)}`.
pub fn xi_modulus(lambda: ComplexPoint, x: f64) -> Result<f64> {
    EigenFunction::new(lambda)?.modulus(x)
}

/// `1/γ_λ`: the decreasing rearrangement of `ξ_λ` is comparable to
/// `t^{-1/γ_λ}` on (0, 2).
pub fn rearrangement_exponent(lambda: ComplexPoint) -> Result<f64> {
    Ok(1.0 / gamma_of(lambda)?)
}

/// Whether `ξ_λ ∈ X`: `p_X ≤ γ_λ` if `p_X` is attained, `p_X < γ_λ` if not.
///
/// The comparison is made in the form `|arg u(λ)|/2π` against
/// `1/p_X - 1/2`, with the same boundary tolerance as the region predicates.
pub fn xi_in_space(lambda: ComplexPoint, profile: &IndexProfile) -> Result<bool> {
    ensure_admissible(lambda)?;
    ensure_valid(profile)?;
    let slack = 1.0 / profile.p_x - 0.5;
    if slack < 0.0 {
        return Ok(false);
    }
    let class = classify_point(lambda, slack);
    match profile.p_attained {
        Attainment::Attained => Ok(class != RegionClass::Exterior),
        Attainment::NotAttained => Ok(class == RegionClass::Interior),
        Attainment::Unknown => Err(Error::Inconclusive(
            "membership of ξ_λ depends on whether p_X is attained".into(),
        )),
    }
}

/// `g_λ = w·ξ_λ` for real `λ ∈ (-1, 1)`; unimodular since `z(λ)` is imaginary.
pub fn g_lambda(lambda: f64, x: f64) -> Result<ComplexPoint> {
    if !(lambda.is_finite() && lambda.abs() < 1.0) {
        return Err(Error::domain(format!("λ = {lambda} must lie in (-1, 1)")));
    }
    EigenFunction::new(ComplexPoint::new(lambda, 0.0))?.weighted(x)
}
