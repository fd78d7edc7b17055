//! Rearrangement-invariant spaces on (-1, 1), modelled by their index data.
//!
//! A space enters the classifier only through an [`IndexProfile`]: the
//! indices `p_X`, `q_X` with their attainment, the Boyd indices, and two
//! structural flags. [`SpaceSpec`] names the concrete families for which the
//! profile is known in closed form.

mod fundamental;
mod rearrangement;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::region::conjugate_exponent;
use crate::{Error, Result};

pub use fundamental::{fundamental_indices, FundamentalIndices, IndexGrid};
pub use rearrangement::{
    decreasing_rearrangement, lorentz_norm, lorentz_norm_trend, NormTrend, RearrangementStep,
    SampledFunction,
};

/// Tolerance used when comparing index values for equality.
pub const INDEX_TOL: f64 = 1e-12;

pub(crate) fn index_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= INDEX_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Whether an extremal index is attained by the space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Attainment {
    Attained,
    NotAttained,
    /// The literature pins the index value but not its attainment.
    Unknown,
}

impl Attainment {
    pub fn from_bool(attained: bool) -> Self {
        if attained {
            Attainment::Attained
        } else {
            Attainment::NotAttained
        }
    }

    pub fn is_attained(self) -> bool {
        self == Attainment::Attained
    }
}

/// Index data of an r.i. space `X`.
///
/// `p_x` is the infimum of `p` with `L^{p,∞} ⊆ X`, `q_x` the supremum of `q`
/// with `X ⊆ L^{q,1}`. `interp_l2` asserts that `X` is an interpolation space
/// between `L^2` and `L^{p_x}`; it is taken on trust.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexProfile {
    pub p_x: f64,
    pub p_attained: Attainment,
    pub q_x: f64,
    pub q_attained: Attainment,
    pub boyd_lower: f64,
    pub boyd_upper: f64,
    pub separable: bool,
    pub interp_l2: bool,
}

impl IndexProfile {
    pub fn has_unknown_attainment(&self) -> bool {
        self.p_attained == Attainment::Unknown || self.q_attained == Attainment::Unknown
    }

    /// Every known-attainment profile consistent with `self`.
    pub fn attainment_cases(&self) -> Vec<IndexProfile> {
        let options = |a: Attainment| match a {
            Attainment::Unknown => vec![Attainment::Attained, Attainment::NotAttained],
            known => vec![known],
        };
        let mut cases = Vec::new();
        for pa in options(self.p_attained) {
            for qa in options(self.q_attained) {
                let candidate = IndexProfile {
                    p_attained: pa,
                    q_attained: qa,
                    ..*self
                };
                if validate_profile(&candidate).is_empty() {
                    cases.push(candidate);
                }
            }
        }
        cases
    }
}

/// Lists every violated index relation; empty iff the profile is valid.
pub fn validate_profile(profile: &IndexProfile) -> Vec<String> {
    let IndexProfile {
        p_x,
        q_x,
        boyd_lower,
        boyd_upper,
        ..
    } = *profile;
    let mut violations = Vec::new();
    let finite = [p_x, q_x, boyd_lower, boyd_upper]
        .iter()
        .all(|v| v.is_finite());
    if !finite {
        violations.push("all indices finite".to_string());
        return violations;
    }
    let mut check = |ok: bool, name: &str| {
        if !ok {
            violations.push(name.to_string());
        }
    };
    check(p_x > 1.0, "p_x > 1");
    check(q_x > 1.0, "q_x > 1");
    check(boyd_lower > 0.0, "0 < boyd_lower");
    check(boyd_lower <= boyd_upper, "boyd_lower ≤ boyd_upper");
    check(boyd_upper < 1.0, "boyd_upper < 1");
    check(
        boyd_lower <= 1.0 / p_x + INDEX_TOL,
        "boyd_lower ≤ 1/p_x",
    );
    check(q_x <= p_x * (1.0 + INDEX_TOL), "q_x ≤ p_x");
    check(
        1.0 / q_x <= boyd_upper + INDEX_TOL,
        "1/q_x ≤ boyd_upper",
    );
    check(
        !(index_eq(p_x, q_x)
            && profile.p_attained.is_attained()
            && profile.q_attained.is_attained()),
        "not (p_x = q_x with both attained)",
    );
    violations
}

pub(crate) fn ensure_valid(profile: &IndexProfile) -> Result<()> {
    let violations = validate_profile(profile);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidProfile(violations))
    }
}

/// Index data of the associate space `X'`.
///
/// `p_{X'} = (q_X)'` with the same attainment, `q_{X'} = (p_X)'` likewise,
/// and the Boyd indices reflect through 1/2. Separability of `X'` is not
/// determined by indices; it is set to `q_x` not being attained, which is
/// exact on the Lorentz scale (`(L^{p,1})' = L^{p',∞}`).
pub fn associate_profile(profile: &IndexProfile) -> Result<IndexProfile> {
    ensure_valid(profile)?;
    let associate = IndexProfile {
        p_x: conjugate_exponent(profile.q_x),
        p_attained: profile.q_attained,
        q_x: conjugate_exponent(profile.p_x),
        q_attained: profile.p_attained,
        boyd_lower: 1.0 - profile.boyd_upper,
        boyd_upper: 1.0 - profile.boyd_lower,
        separable: !profile.q_attained.is_attained(),
        interp_l2: profile.interp_l2,
    };
    ensure_valid(&associate)?;
    Ok(associate)
}

/// Lorentz second exponent: finite `r ≥ 1` or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LorentzR {
    Finite(f64),
    Infinite,
}

impl LorentzR {
    pub fn is_infinite(self) -> bool {
        self == LorentzR::Infinite
    }
}

impl fmt::Display for LorentzR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LorentzR::Finite(r) => write!(f, "{r}"),
            LorentzR::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SpaceSpec {
    Lp { p: f64 },
    Lorentz { p: f64, r: LorentzR },
    /// Orlicz space with `Φ(t) = t^p exp(sqrt(1 + s log₊ t))`.
    TalentiOrlicz { p: f64, s: f64 },
    /// Classical Lorentz space `Λ^p(w)` with `w(t) = t^{a-1}` times a slowly
    /// varying factor.
    LambdaW { p: f64, a: f64 },
    /// Associate of the grand Lebesgue space `L^{p)}`.
    SmallLebesgue { p: f64 },
    Abstract(IndexProfile),
}

fn exponent(name: &str, p: f64) -> Result<f64> {
    if p.is_finite() && p > 1.0 {
        Ok(p)
    } else {
        Err(Error::InvalidProfile(vec![format!("{name} = {p} must lie in (1, ∞)")]))
    }
}

/// Index profile of a named space.
pub fn profile_of(spec: &SpaceSpec) -> Result<IndexProfile> {
    use Attainment::*;
    let equal_indices = |p: f64, pa: Attainment, qa: Attainment, separable: bool| IndexProfile {
        p_x: p,
        p_attained: pa,
        q_x: p,
        q_attained: qa,
        boyd_lower: 1.0 / p,
        boyd_upper: 1.0 / p,
        separable,
        interp_l2: false,
    };
    let profile = match *spec {
        SpaceSpec::Lp { p } => IndexProfile {
            interp_l2: true,
            ..equal_indices(exponent("p", p)?, NotAttained, NotAttained, true)
        },
        SpaceSpec::Lorentz { p, r } => {
            let p = exponent("p", p)?;
            match r {
                LorentzR::Infinite => equal_indices(p, Attained, NotAttained, false),
                LorentzR::Finite(r) if r.is_finite() && r >= 1.0 => equal_indices(
                    p,
                    NotAttained,
                    Attainment::from_bool(r == 1.0),
                    true,
                ),
                LorentzR::Finite(r) => {
                    return Err(Error::InvalidProfile(vec![format!(
                        "Lorentz r = {r} must be ≥ 1 or ∞"
                    )]))
                }
            }
        }
        SpaceSpec::TalentiOrlicz { p, s } => {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::InvalidProfile(vec![format!("s = {s} must be > 0")]));
            }
            equal_indices(exponent("p", p)?, Unknown, Unknown, true)
        }
        SpaceSpec::LambdaW { p, a } => {
            if !(p.is_finite() && p >= 1.0) {
                return Err(Error::InvalidProfile(vec![format!("p = {p} must be ≥ 1")]));
            }
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::InvalidProfile(vec![format!(
                    "a = {a} must lie in (0, 1)"
                )]));
            }
            equal_indices(1.0 / a, Unknown, Unknown, true)
        }
        SpaceSpec::SmallLebesgue { p } => {
            equal_indices(exponent("p", p)?, Unknown, Unknown, true)
        }
        SpaceSpec::Abstract(profile) => profile,
    };
    ensure_valid(&profile)?;
    Ok(profile)
}

fn parse_number(field: &str, text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse(format!("{field}: expected a number, got {text:?}")))
}

fn parse_flag(field: &str, text: &str, yes: &str, no: &str) -> Result<bool> {
    match text.trim() {
        t if t == yes => Ok(true),
        t if t == no => Ok(false),
        other => Err(Error::Parse(format!(
            "{field}: expected {yes} or {no}, got {other:?}"
        ))),
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Grammar: `lp:<p>`, `lorentz:<p>,<r|inf>`, `talenti:<p>,<s>`,
    /// `lambdaw:<p>,<a>`, `smalllebesgue:<p>`,
    /// `abstract:<p_x>,<pa|pn>,<q_x>,<qa|qn>,<boyd_lo>,<boyd_hi>,<sep|nonsep>[,interp]`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in space {s:?}")))?;
        let args: Vec<&str> = rest.split(',').map(str::trim).collect();
        let arity = |expected: &[usize]| -> Result<()> {
            if expected.contains(&args.len()) {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{kind}: expected {expected:?} arguments, got {}",
                    args.len()
                )))
            }
        };
        let spec = match kind.trim().to_ascii_lowercase().as_str() {
            "lp" => {
                arity(&[1])?;
                SpaceSpec::Lp {
                    p: parse_number("p", args[0])?,
                }
            }
            "lorentz" => {
                arity(&[2])?;
                let r = match args[1] {
                    "inf" | "∞" | "infinity" => LorentzR::Infinite,
                    other => LorentzR::Finite(parse_number("r", other)?),
                };
                SpaceSpec::Lorentz {
                    p: parse_number("p", args[0])?,
                    r,
                }
            }
            "talenti" => {
                arity(&[2])?;
                SpaceSpec::TalentiOrlicz {
                    p: parse_number("p", args[0])?,
                    s: parse_number("s", args[1])?,
                }
            }
            "lambdaw" => {
                arity(&[2])?;
                SpaceSpec::LambdaW {
                    p: parse_number("p", args[0])?,
                    a: parse_number("a", args[1])?,
                }
            }
            "smalllebesgue" => {
                arity(&[1])?;
                SpaceSpec::SmallLebesgue {
                    p: parse_number("p", args[0])?,
                }
            }
            "abstract" => {
                arity(&[7, 8])?;
                let interp_l2 = match args.get(7) {
                    None => false,
                    Some(&"interp") => true,
                    Some(other) => {
                        return Err(Error::Parse(format!(
                            "abstract: unexpected trailing flag {other:?}"
                        )))
                    }
                };
                SpaceSpec::Abstract(IndexProfile {
                    p_x: parse_number("p_x", args[0])?,
                    p_attained: Attainment::from_bool(parse_flag("p attainment", args[1], "pa", "pn")?),
                    q_x: parse_number("q_x", args[2])?,
                    q_attained: Attainment::from_bool(parse_flag("q attainment", args[3], "qa", "qn")?),
                    boyd_lower: parse_number("boyd_lo", args[4])?,
                    boyd_upper: parse_number("boyd_hi", args[5])?,
                    separable: parse_flag("separability", args[6], "sep", "nonsep")?,
                    interp_l2,
                })
            }
            other => return Err(Error::Parse(format!("unknown space family {other:?}"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Lp { p } => write!(f, "lp:{p}"),
            SpaceSpec::Lorentz { p, r } => write!(f, "lorentz:{p},{r}"),
            SpaceSpec::TalentiOrlicz { p, s } => write!(f, "talenti:{p},{s}"),
            SpaceSpec::LambdaW { p, a } => write!(f, "lambdaw:{p},{a}"),
            SpaceSpec::SmallLebesgue { p } => write!(f, "smalllebesgue:{p}"),
            SpaceSpec::Abstract(pr) => {
                let flag = |a: Attainment, yes: &'static str, no: &'static str| {
                    if a.is_attained() {
                        yes
                    } else {
                        no
                    }
                };
                write!(
                    f,
                    "abstract:{},{},{},{},{},{},{}",
                    pr.p_x,
                    flag(pr.p_attained, "pa", "pn"),
                    pr.q_x,
                    flag(pr.q_attained, "qa", "qn"),
                    pr.boyd_lower,
                    pr.boyd_upper,
                    if pr.separable { "sep" } else { "nonsep" }
                )?;
                if pr.interp_l2 {
                    write!(f, ",interp")?;
                }
                Ok(())
            }
        }
    }
}
