//! Geometry of the regions `R_p` and the parameter maps attached to an
//! eigenvalue candidate `λ`.
//!
//! `R_p` is the closed lens bounded by the two circular arcs with end points
//! ±1 passing through `i·cot(π/p)` and `i·cot(π/p')`. Membership is decided
//! through the normalised argument
//!
//! ```text
//! d(λ) = |arg u(λ)| / 2π,   u(λ) = (1 + λ)/(1 - λ),
//! ```
//!
//! which is compared with the deviation `δ(p) = |1/2 - 1/p|`. `R_2` collapses
//! to the segment [-1, 1]; every point of it is reported as `Boundary`.

mod plot;
mod set;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use plot::{boundary_csv, boundary_svg, BoundaryArc};
pub use set::{probe_points, SpectralSet};

/// A candidate spectral value. Public operations reject non-finite parts.
pub type ComplexPoint = Complex64;

/// Absolute tolerance on the normalised argument `d(λ)` used to decide
/// boundary membership.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionClass {
    Interior,
    Boundary,
    Exterior,
}

pub(crate) fn ensure_finite(lambda: ComplexPoint) -> Result<()> {
    if lambda.re.is_finite() && lambda.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("non-finite point {lambda}")))
    }
}

pub(crate) fn ensure_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("exponent p = {p} must lie in (1, ∞)")))
    }
}

/// Conjugate exponent `p'` with `1/p + 1/p' = 1`.
pub fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

/// `|1/2 - 1/p|`, the half-opening of `R_p` measured in turns.
pub fn deviation(p: f64) -> f64 {
    (0.5 - 1.0 / p).abs()
}

/// True for `λ ∈ A = ℂ ∖ ((-∞,-1] ∪ [1,∞))`, the set of all eigenvalues
/// of `T` over the `L^p` scale.
pub fn is_admissible(lambda: ComplexPoint) -> bool {
    lambda.re.is_finite()
        && lambda.im.is_finite()
        && !(lambda.im == 0.0 && lambda.re.abs() >= 1.0)
}

pub(crate) fn ensure_admissible(lambda: ComplexPoint) -> Result<()> {
    ensure_finite(lambda)?;
    if is_admissible(lambda) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "λ = {lambda} lies on a real ray |λ| ≥ 1"
        )))
    }
}

/// Principal argument of `u(λ)`, evaluated as `arg((1 + λ)(1 - conj λ))`.
///
/// The product form is exactly odd under `λ → -λ` and `λ → conj λ`, so the
/// region predicates inherit the symmetries bit for bit.
pub(crate) fn arg_u(lambda: ComplexPoint) -> f64 {
    let modulus_sq = lambda.norm_sqr();
    (2.0 * lambda.im).atan2(1.0 - modulus_sq)
}

/// `d(λ) = |arg u(λ)| / 2π ∈ [0, 1/2]`.
pub(crate) fn normalised_arg(lambda: ComplexPoint) -> f64 {
    arg_u(lambda).abs() / (2.0 * PI)
}

fn is_endpoint(lambda: ComplexPoint) -> bool {
    lambda.im == 0.0 && lambda.re.abs() == 1.0
}

/// `u(λ) = (1 + λ)/(1 - λ)`.
pub fn mobius_u(lambda: ComplexPoint) -> Result<ComplexPoint> {
    ensure_finite(lambda)?;
    if lambda == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("u(λ) has a pole at λ = 1"));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((one + lambda) / (one - lambda))
}

/// `z(λ) = log(u(λ)) / 2πi` on the principal branch.
///
/// The real part is `arg u(λ)/2π ∈ (-1/2, 1/2)` and the imaginary part is
/// `-ln|u(λ)|/2π`.
pub fn z_of(lambda: ComplexPoint) -> Result<ComplexPoint> {
    ensure_admissible(lambda)?;
    let one = Complex64::new(1.0, 0.0);
    let log_modulus = (one + lambda).norm().ln() - (one - lambda).norm().ln();
    Ok(Complex64::new(
        arg_u(lambda) / (2.0 * PI),
        -log_modulus / (2.0 * PI),
    ))
}

/// `γ_λ` from `1/γ_λ = 1/2 + |arg u(λ)|/2π`; lies in (1, 2].
pub fn gamma_of(lambda: ComplexPoint) -> Result<f64> {
    ensure_admissible(lambda)?;
    Ok(1.0 / (0.5 + normalised_arg(lambda)))
}

/// Classifies `λ` against `R_p`.
pub fn region_membership(lambda: ComplexPoint, p: f64) -> Result<RegionClass> {
    ensure_exponent(p)?;
    ensure_finite(lambda)?;
    Ok(classify_point(lambda, deviation(p)))
}

pub(crate) fn classify_point(lambda: ComplexPoint, delta: f64) -> RegionClass {
    if is_endpoint(lambda) {
        return RegionClass::Boundary;
    }
    let d = normalised_arg(lambda);
    if (d - delta).abs() <= BOUNDARY_TOL {
        RegionClass::Boundary
    } else if d < delta {
        RegionClass::Interior
    } else {
        RegionClass::Exterior
    }
}

/// Samples the two boundary arcs of `R_p`, `n` points per arc, ordered from
/// -1 to 1.
///
/// Arc 0 passes through `i·cot(π/p)`, arc 1 through `i·cot(π/p')`. The apex
/// of each arc is always among the samples when `n ≥ 3`. For `p = 2` both
/// arcs are the segment [-1, 1].
pub fn region_boundary_sample(p: f64, n: usize) -> Result<Vec<BoundaryArc>> {
    ensure_exponent(p)?;
    if n < 2 {
        return Err(Error::domain(format!("need n ≥ 2 points per arc, got {n}")));
    }
    // Points with arg u = θ form the arc through i·tan(θ/2).
    let theta = 2.0 * PI * deviation(p);
    // cot(π/p) is positive for p > 2, so the arc through it has arg u = +θ;
    // for p < 2 it lies below the real axis.
    let first = if p >= 2.0 { theta } else { -theta };
    let arcs = [first, -first]
        .into_iter()
        .enumerate()
        .map(|(id, angle)| BoundaryArc {
            arc_id: id,
            points: sample_arc(angle, n),
        })
        .collect();
    Ok(arcs)
}

/// Parameter values in [0, 1] with 1/2 present whenever `n ≥ 3`.
fn arc_parameters(n: usize) -> Vec<f64> {
    if n == 2 {
        return vec![0.0, 1.0];
    }
    let mid = (n - 1) / 2;
    let upper = n - 1 - mid;
    (0..n)
        .map(|k| {
            if k <= mid {
                0.5 * k as f64 / mid as f64
            } else {
                0.5 + 0.5 * (k - mid) as f64 / upper as f64
            }
        })
        .collect()
}

fn sample_arc(angle: f64, n: usize) -> Vec<ComplexPoint> {
    let rotation = Complex64::from_polar(1.0, angle);
    let one = Complex64::new(1.0, 0.0);
    arc_parameters(n)
        .into_iter()
        .map(|s| {
            if s == 0.0 {
                -one
            } else if s == 1.0 {
                one
            } else {
                // |u| runs over (0, ∞) as s runs over (0, 1); s = 1/2 is |u| = 1.
                let u = rotation * (0.5 * PI * s).tan();
                (u - one) / (u + one)
            }
        })
        .collect()
}
