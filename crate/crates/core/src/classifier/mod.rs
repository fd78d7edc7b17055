//! Spectrum and fine spectra of `T` on a rearrangement-invariant space,
//! decided from the space's [`IndexProfile`].
//!
//! Every answer is either an exact [`SpectralSet`] or a pair of sets known
//! to enclose the true answer. Each rule that contributed to an answer is
//! recorded by a stable identifier from [`rules`].

mod report;

use serde::{Deserialize, Serialize};

use crate::region::{ComplexPoint, SpectralSet};
use crate::spaces::{
    associate_profile, ensure_valid, index_eq, profile_of, IndexProfile, LorentzR, SpaceSpec,
};
use crate::{Error, Result};

pub use report::ClassificationReport;

/// Stable identifiers of the rules the classifier applies.
pub mod rules {
    pub const POINT_EMPTY: &str = "point-empty";
    pub const POINT_REGION_MINUS_ENDPOINTS: &str = "point-region-minus-endpoints";
    pub const POINT_REGION_INTERIOR: &str = "point-region-interior";
    pub const ZERO_IN_POINT: &str = "zero-in-point";
    pub const ZERO_IN_RESIDUAL: &str = "zero-in-residual";
    pub const ZERO_IN_CONTINUOUS: &str = "zero-in-continuous";
    pub const RESIDUAL_EMPTY_POINT_BRANCH: &str = "residual-empty-point-branch";
    pub const RESIDUAL_REGION_INTERIOR: &str = "residual-region-interior";
    pub const RESIDUAL_REGION_MINUS_ENDPOINTS: &str = "residual-region-minus-endpoints";
    pub const RESIDUAL_EMPTY_CONTINUOUS_BRANCH: &str = "residual-empty-continuous-branch";
    pub const SPECTRUM_CONTAINS_UNIT_INTERVAL: &str = "spectrum-contains-unit-interval";
    pub const SPECTRUM_CONTAINS_CLOSURE: &str = "spectrum-contains-closure-of-point-and-residual";
    pub const SPECTRUM_WITHIN_BOYD_REGION: &str = "spectrum-within-boyd-region";
    pub const SPECTRUM_WITHIN_INDEX_REGION: &str = "spectrum-within-index-region-interpolation";
    pub const SPECTRUM_EXACT: &str = "spectrum-exact";
    pub const ENDPOINTS_IN_CONTINUOUS: &str = "endpoints-in-continuous";
    pub const CONTINUOUS_BY_COMPLEMENT: &str = "continuous-by-complement";
    pub const LORENTZ_WEAK_TYPE: &str = "lorentz-weak-type";
    pub const ATTAINMENT_ENUMERATED: &str = "attainment-enumerated";
}

/// A set known exactly, or enclosed as `lower ⊆ answer ⊆ upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumAnswer {
    Exact { set: SpectralSet },
    Bounds { lower: SpectralSet, upper: SpectralSet },
}

impl SpectrumAnswer {
    pub fn exact(set: SpectralSet) -> Self {
        SpectrumAnswer::Exact { set: set.normalized() }
    }

    /// Collapses to `Exact` when the two sides are symbolically equal.
    pub fn bounds(lower: SpectralSet, upper: SpectralSet) -> Self {
        let (lower, upper) = (lower.normalized(), upper.normalized());
        if lower.equivalent(&upper) {
            SpectrumAnswer::Exact { set: upper }
        } else {
            SpectrumAnswer::Bounds { lower, upper }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SpectrumAnswer::Exact { .. })
    }

    pub fn lower(&self) -> &SpectralSet {
        match self {
            SpectrumAnswer::Exact { set } => set,
            SpectrumAnswer::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> &SpectralSet {
        match self {
            SpectrumAnswer::Exact { set } => set,
            SpectrumAnswer::Bounds { upper, .. } => upper,
        }
    }

    /// `Some(true)` inside the lower set, `Some(false)` outside the upper
    /// set, `None` in between.
    pub fn contains(&self, lambda: ComplexPoint) -> Result<Option<bool>> {
        if self.lower().contains(lambda)? {
            Ok(Some(true))
        } else if !self.upper().contains(lambda)? {
            Ok(Some(false))
        } else {
            Ok(None)
        }
    }

    fn equivalent(&self, other: &SpectrumAnswer) -> bool {
        match (self, other) {
            (SpectrumAnswer::Exact { set: a }, SpectrumAnswer::Exact { set: b }) => a.equivalent(b),
            (
                SpectrumAnswer::Bounds { lower: l1, upper: u1 },
                SpectrumAnswer::Bounds { lower: l2, upper: u2 },
            ) => l1.equivalent(l2) && u1.equivalent(u2),
            _ => false,
        }
    }

    /// Tightest enclosure valid for every answer in `answers`.
    fn hull(answers: &[SpectrumAnswer]) -> SpectrumAnswer {
        let first = &answers[0];
        if answers.iter().all(|a| a.equivalent(first)) {
            return first.clone();
        }
        SpectrumAnswer::bounds(
            SpectralSet::intersection(answers.iter().map(|a| a.lower().clone())),
            SpectralSet::union(answers.iter().map(|a| a.upper().clone())),
        )
    }
}

/// Which alternative holds for `λ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroTrichotomy {
    PointBranch,
    ResidualBranch,
    ContinuousBranch,
}

/// The part of the spectrum containing 0, when it is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroLocation {
    Point,
    Residual,
    Continuous,
    Undetermined,
}

impl From<ZeroTrichotomy> for ZeroLocation {
    fn from(branch: ZeroTrichotomy) -> Self {
        match branch {
            ZeroTrichotomy::PointBranch => ZeroLocation::Point,
            ZeroTrichotomy::ResidualBranch => ZeroLocation::Residual,
            ZeroTrichotomy::ContinuousBranch => ZeroLocation::Continuous,
        }
    }
}

/// Where a point lies relative to the fine spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Point,
    Residual,
    Continuous,
    Outside,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FineSpectra {
    pub spectrum: SpectrumAnswer,
    pub point: SpectrumAnswer,
    pub residual: SpectrumAnswer,
    pub continuous: SpectrumAnswer,
    pub zero_location: ZeroLocation,
    pub provenance: Vec<String>,
    /// One entry per attainment combination when the profile leaves
    /// attainment open; empty otherwise.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<FineSpectra>,
}

impl FineSpectra {
    pub fn is_exact(&self) -> bool {
        self.parts().iter().all(|p| p.is_exact()) && self.zero_location != ZeroLocation::Undetermined
    }

    pub fn parts(&self) -> [&SpectrumAnswer; 4] {
        [&self.spectrum, &self.point, &self.residual, &self.continuous]
    }

    pub fn locate(&self, lambda: ComplexPoint) -> Result<Location> {
        let named = [
            (Location::Point, &self.point),
            (Location::Residual, &self.residual),
            (Location::Continuous, &self.continuous),
        ];
        for (loc, part) in named {
            if part.lower().contains(lambda)? {
                return Ok(loc);
            }
        }
        if !self.spectrum.upper().contains(lambda)? {
            return Ok(Location::Outside);
        }
        let mut possible = Vec::new();
        for (loc, part) in named {
            if part.upper().contains(lambda)? {
                possible.push(loc);
            }
        }
        let in_spectrum = self.spectrum.lower().contains(lambda)?;
        Ok(match possible.as_slice() {
            [] => Location::Outside,
            [only] if in_spectrum => *only,
            _ => Location::Undetermined,
        })
    }
}

fn is_two(p: f64) -> bool {
    index_eq(p, 2.0)
}

fn below_two(p: f64) -> bool {
    p < 2.0 && !is_two(p)
}

fn above_two(p: f64) -> bool {
    p > 2.0 && !is_two(p)
}

fn ensure_separable(profile: &IndexProfile) -> Result<()> {
    if profile.separable {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "fine spectra are only decided for separable spaces and the weak-type Lorentz family".into(),
        ))
    }
}

fn branch_known(profile: &IndexProfile) -> ZeroTrichotomy {
    let (p, q) = (profile.p_x, profile.q_x);
    if below_two(p) || (is_two(p) && profile.p_attained.is_attained()) {
        ZeroTrichotomy::PointBranch
    } else if above_two(q) || (is_two(q) && profile.q_attained.is_attained()) {
        ZeroTrichotomy::ResidualBranch
    } else {
        ZeroTrichotomy::ContinuousBranch
    }
}

fn point_known(profile: &IndexProfile) -> (SpectralSet, &'static str) {
    let p = profile.p_x;
    let attained = profile.p_attained.is_attained();
    if above_two(p) || (is_two(p) && !attained) {
        (SpectralSet::Empty, rules::POINT_EMPTY)
    } else if attained {
        (SpectralSet::region_minus_endpoints(p), rules::POINT_REGION_MINUS_ENDPOINTS)
    } else {
        (SpectralSet::region_interior(p), rules::POINT_REGION_INTERIOR)
    }
}

fn residual_known(profile: &IndexProfile) -> (SpectralSet, &'static str) {
    match branch_known(profile) {
        ZeroTrichotomy::PointBranch => (SpectralSet::Empty, rules::RESIDUAL_EMPTY_POINT_BRANCH),
        ZeroTrichotomy::ContinuousBranch => (SpectralSet::Empty, rules::RESIDUAL_EMPTY_CONTINUOUS_BRANCH),
        ZeroTrichotomy::ResidualBranch => {
            let q = profile.q_x;
            if profile.q_attained.is_attained() {
                (SpectralSet::region_minus_endpoints(q), rules::RESIDUAL_REGION_MINUS_ENDPOINTS)
            } else {
                (SpectralSet::region_interior(q), rules::RESIDUAL_REGION_INTERIOR)
            }
        }
    }
}

fn closure(set: &SpectralSet) -> SpectralSet {
    set.closure().unwrap_or_else(|| set.clone())
}

fn lower_known(point: &SpectralSet, residual: &SpectralSet) -> SpectralSet {
    SpectralSet::union([SpectralSet::ClosedUnitInterval, closure(point), closure(residual)])
}

fn upper_known(profile: &IndexProfile) -> (SpectralSet, &'static str) {
    let (p, q) = (profile.p_x, profile.q_x);
    let interpolation = profile.interp_l2
        && index_eq(p, q)
        && ((below_two(p) && profile.q_attained.is_attained())
            || (above_two(p) && profile.p_attained.is_attained()));
    if interpolation {
        return (SpectralSet::region_closed(p), rules::SPECTRUM_WITHIN_INDEX_REGION);
    }
    let from_lower = 1.0 / profile.boyd_lower;
    let from_upper = 1.0 / profile.boyd_upper;
    let dev = |m: f64| (0.5 - 1.0 / m).abs();
    let m = if dev(from_lower) >= dev(from_upper) {
        from_lower
    } else {
        from_upper
    };
    (SpectralSet::region_closed(m), rules::SPECTRUM_WITHIN_BOYD_REGION)
}

fn zero_rule(branch: ZeroTrichotomy) -> &'static str {
    match branch {
        ZeroTrichotomy::PointBranch => rules::ZERO_IN_POINT,
        ZeroTrichotomy::ResidualBranch => rules::ZERO_IN_RESIDUAL,
        ZeroTrichotomy::ContinuousBranch => rules::ZERO_IN_CONTINUOUS,
    }
}

/// Classification of a valid separable profile with known attainment.
fn classify_known(profile: &IndexProfile) -> FineSpectra {
    let branch = branch_known(profile);
    let (point, point_rule) = point_known(profile);
    let (residual, residual_rule) = residual_known(profile);
    let lower = lower_known(&point, &residual);
    let (upper, upper_rule) = upper_known(profile);

    let mut provenance = vec![point_rule, zero_rule(branch), residual_rule, rules::SPECTRUM_CONTAINS_UNIT_INTERVAL];
    if point != SpectralSet::Empty || residual != SpectralSet::Empty {
        provenance.push(rules::SPECTRUM_CONTAINS_CLOSURE);
    }
    provenance.push(upper_rule);

    let taken = SpectralSet::union([point.clone(), residual.clone()]);
    let spectrum = SpectrumAnswer::bounds(lower.clone(), upper.clone());
    let continuous = if spectrum.is_exact() {
        provenance.push(rules::SPECTRUM_EXACT);
        provenance.push(rules::CONTINUOUS_BY_COMPLEMENT);
        SpectrumAnswer::exact(spectrum.upper().difference(&taken))
    } else {
        SpectrumAnswer::bounds(
            SpectralSet::union([SpectralSet::PlusMinusOne, lower.difference(&taken)]),
            upper.difference(&taken),
        )
    };
    provenance.push(rules::ENDPOINTS_IN_CONTINUOUS);

    FineSpectra {
        spectrum,
        point: SpectrumAnswer::exact(point),
        residual: SpectrumAnswer::exact(residual),
        continuous,
        zero_location: branch.into(),
        provenance: provenance.into_iter().map(String::from).collect(),
        cases: Vec::new(),
    }
}

fn combine(cases: Vec<FineSpectra>) -> FineSpectra {
    if cases.len() == 1 {
        let mut cases = cases;
        return cases.remove(0);
    }
    let hull = |pick: fn(&FineSpectra) -> &SpectrumAnswer| {
        let answers: Vec<SpectrumAnswer> = cases.iter().map(|c| pick(c).clone()).collect();
        SpectrumAnswer::hull(&answers)
    };
    let zero = cases[0].zero_location;
    let zero_location = if cases.iter().all(|c| c.zero_location == zero) {
        zero
    } else {
        ZeroLocation::Undetermined
    };
    let mut provenance = vec![rules::ATTAINMENT_ENUMERATED.to_string()];
    for rule in cases.iter().flat_map(|c| c.provenance.iter()) {
        if !provenance.contains(rule) {
            provenance.push(rule.clone());
        }
    }
    FineSpectra {
        spectrum: hull(|c| &c.spectrum),
        point: hull(|c| &c.point),
        residual: hull(|c| &c.residual),
        continuous: hull(|c| &c.continuous),
        zero_location,
        provenance,
        cases,
    }
}

/// The branch of the zero trichotomy; errors as inconclusive when it
/// depends on an unknown attainment flag.
pub fn zero_location(profile: &IndexProfile) -> Result<ZeroTrichotomy> {
    ensure_valid(profile)?;
    ensure_separable(profile)?;
    let branches: Vec<ZeroTrichotomy> = profile.attainment_cases().iter().map(branch_known).collect();
    match branches.split_first() {
        Some((first, rest)) if rest.iter().all(|b| b == first) => Ok(*first),
        _ => Err(Error::Inconclusive(
            "the location of 0 depends on whether p_X or q_X is attained".into(),
        )),
    }
}

/// `σ_pt(T_X)`, determined by `p_X` and its attainment alone.
pub fn point_spectrum(profile: &IndexProfile) -> Result<SpectrumAnswer> {
    ensure_valid(profile)?;
    let answers: Vec<SpectrumAnswer> = profile
        .attainment_cases()
        .iter()
        .map(|c| SpectrumAnswer::exact(point_known(c).0))
        .collect();
    Ok(SpectrumAnswer::hull(&answers))
}

pub fn residual_spectrum(profile: &IndexProfile) -> Result<SpectrumAnswer> {
    ensure_valid(profile)?;
    ensure_separable(profile)?;
    let answers: Vec<SpectrumAnswer> = profile
        .attainment_cases()
        .iter()
        .map(|c| SpectrumAnswer::exact(residual_known(c).0))
        .collect();
    Ok(SpectrumAnswer::hull(&answers))
}

/// `(lower, upper)` with `lower ⊆ σ(T_X) ⊆ upper`.
pub fn spectrum_bounds(profile: &IndexProfile) -> Result<(SpectralSet, SpectralSet)> {
    ensure_valid(profile)?;
    ensure_separable(profile)?;
    let cases = profile.attainment_cases();
    let lower = SpectralSet::intersection(cases.iter().map(|c| {
        lower_known(&point_known(c).0, &residual_known(c).0)
    }));
    let upper = SpectralSet::union(cases.iter().map(|c| upper_known(c).0));
    Ok((lower, upper))
}

/// Full classification of a separable space.
pub fn classify(profile: &IndexProfile) -> Result<FineSpectra> {
    ensure_valid(profile)?;
    ensure_separable(profile)?;
    Ok(combine(profile.attainment_cases().iter().map(classify_known).collect()))
}

/// Classification of `L^{p,r}`, including the non-separable `r = ∞` case.
pub fn classify_lorentz(p: f64, r: LorentzR) -> Result<FineSpectra> {
    let profile = profile_of(&SpaceSpec::Lorentz { p, r })?;
    if !r.is_infinite() {
        return classify(&profile);
    }
    let region = SpectralSet::region_closed(p);
    let (point, point_rule) = point_known(&profile);
    let (residual, continuous, zero_location) = if above_two(p) {
        (
            SpectrumAnswer::bounds(SpectralSet::region_interior(p), region.clone()),
            SpectrumAnswer::bounds(SpectralSet::Empty, SpectralSet::region_boundary(p)),
            ZeroLocation::Residual,
        )
    } else {
        (
            SpectrumAnswer::bounds(SpectralSet::Empty, SpectralSet::PlusMinusOne),
            SpectrumAnswer::bounds(SpectralSet::Empty, SpectralSet::PlusMinusOne),
            ZeroLocation::Point,
        )
    };
    Ok(FineSpectra {
        spectrum: SpectrumAnswer::exact(region),
        point: SpectrumAnswer::exact(point),
        residual,
        continuous,
        zero_location,
        provenance: vec![point_rule.to_string(), rules::LORENTZ_WEAK_TYPE.to_string()],
        cases: Vec::new(),
    })
}

/// Dispatches named spaces, routing `L^{p,∞}` to [`classify_lorentz`].
pub fn classify_space(spec: &SpaceSpec) -> Result<FineSpectra> {
    match *spec {
        SpaceSpec::Lorentz { p, r } => classify_lorentz(p, r),
        _ => classify(&profile_of(spec)?),
    }
}

/// Checks `σ_pt(T_X) = ∅ ⇒ σ_r(T_X) = σ_pt(T_{X'})`.
pub fn duality_check(profile: &IndexProfile) -> Result<bool> {
    ensure_valid(profile)?;
    ensure_separable(profile)?;
    let point = point_spectrum(profile)?;
    let residual = residual_spectrum(profile)?;
    let associate_point = point_spectrum(&associate_profile(profile)?)?;
    let exact = |a: &SpectrumAnswer| match a {
        SpectrumAnswer::Exact { set } => Ok(set.clone()),
        SpectrumAnswer::Bounds { .. } => Err(Error::Inconclusive(
            "duality check needs exact point and residual spectra".into(),
        )),
    };
    let (point, residual, associate_point) = (exact(&point)?, exact(&residual)?, exact(&associate_point)?);
    if !point.equivalent(&SpectralSet::Empty) {
        return Ok(true);
    }
    Ok(residual.equivalent(&associate_point))
}
