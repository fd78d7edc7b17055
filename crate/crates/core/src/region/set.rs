use std::fmt;

use serde::{Deserialize, Serialize};

use super::{classify_point, deviation, ComplexPoint, RegionClass, BOUNDARY_TOL};
use crate::{Error, Result};

/// Symbolic subsets of the plane built from the regions `R_p`.
///
/// Every variant has a total, deterministic membership predicate. Sets that
/// mention at most one region parameter (up to `R_p = R_{p'}`) reduce to a
/// canonical form under [`SpectralSet::normalized`], which makes symbolic
/// equality decidable for them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SpectralSet {
    Empty,
    PlusMinusOne,
    OpenUnitInterval,
    ClosedUnitInterval,
    RegionInterior(f64),
    RegionBoundary(f64),
    RegionClosed(f64),
    RegionMinusEndpoints(f64),
    Union(Vec<SpectralSet>),
    Intersection(Vec<SpectralSet>),
    Difference(Box<SpectralSet>, Box<SpectralSet>),
}

// Atoms partitioning R_m for a fixed parameter m with δ(m) > 0.
// For δ(m) = 0 only OPEN_SEGMENT and ENDPOINTS are inhabited.
const OPEN_SEGMENT: u8 = 1; // (-1, 1)
const INTERIOR_REST: u8 = 2; // int R_m ∖ (-1, 1)
const ARCS: u8 = 4; // ∂R_m ∖ {±1}
const ENDPOINTS: u8 = 8; // {±1}
const ALL: u8 = OPEN_SEGMENT | INTERIOR_REST | ARCS | ENDPOINTS;

fn is_degenerate(p: f64) -> bool {
    deviation(p) <= BOUNDARY_TOL
}

fn same_region(p: f64, q: f64) -> bool {
    (deviation(p) - deviation(q)).abs() <= BOUNDARY_TOL
}

impl SpectralSet {
    pub fn region_interior(p: f64) -> Self {
        if is_degenerate(p) {
            SpectralSet::Empty
        } else {
            SpectralSet::RegionInterior(p)
        }
    }

    pub fn region_boundary(p: f64) -> Self {
        if is_degenerate(p) {
            SpectralSet::ClosedUnitInterval
        } else {
            SpectralSet::RegionBoundary(p)
        }
    }

    pub fn region_closed(p: f64) -> Self {
        if is_degenerate(p) {
            SpectralSet::ClosedUnitInterval
        } else {
            SpectralSet::RegionClosed(p)
        }
    }

    pub fn region_minus_endpoints(p: f64) -> Self {
        if is_degenerate(p) {
            SpectralSet::OpenUnitInterval
        } else {
            SpectralSet::RegionMinusEndpoints(p)
        }
    }

    pub fn union(parts: impl IntoIterator<Item = SpectralSet>) -> Self {
        SpectralSet::Union(parts.into_iter().collect()).normalized()
    }

    pub fn intersection(parts: impl IntoIterator<Item = SpectralSet>) -> Self {
        SpectralSet::Intersection(parts.into_iter().collect()).normalized()
    }

    pub fn difference(&self, other: &SpectralSet) -> Self {
        SpectralSet::Difference(Box::new(self.clone()), Box::new(other.clone())).normalized()
    }

    fn parameter(&self) -> Option<f64> {
        match *self {
            SpectralSet::RegionInterior(p)
            | SpectralSet::RegionBoundary(p)
            | SpectralSet::RegionClosed(p)
            | SpectralSet::RegionMinusEndpoints(p) => Some(p),
            _ => None,
        }
    }

    fn children(&self) -> Vec<&SpectralSet> {
        match self {
            SpectralSet::Union(parts) | SpectralSet::Intersection(parts) => parts.iter().collect(),
            SpectralSet::Difference(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    /// Checks parameters and composite arity.
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.parameter() {
            if !(p.is_finite() && p > 1.0) {
                return Err(Error::Structural(format!(
                    "region parameter p = {p} must lie in (1, ∞)"
                )));
            }
        }
        match self {
            SpectralSet::Union(parts) | SpectralSet::Intersection(parts) if parts.is_empty() => {
                Err(Error::Structural("composite set with no members".into()))
            }
            _ => self.children().into_iter().try_for_each(SpectralSet::validate),
        }
    }

    /// Membership of `λ`.
    pub fn contains(&self, lambda: ComplexPoint) -> Result<bool> {
        self.validate()?;
        super::ensure_finite(lambda)?;
        Ok(self.contains_unchecked(lambda))
    }

    pub(crate) fn contains_unchecked(&self, lambda: ComplexPoint) -> bool {
        use SpectralSet::*;
        match self {
            Empty => false,
            PlusMinusOne => lambda.im == 0.0 && lambda.re.abs() == 1.0,
            OpenUnitInterval => {
                classify_point(lambda, 0.0) == RegionClass::Boundary
                    && !PlusMinusOne.contains_unchecked(lambda)
            }
            ClosedUnitInterval => classify_point(lambda, 0.0) == RegionClass::Boundary,
            RegionInterior(p) => classify_point(lambda, deviation(*p)) == RegionClass::Interior,
            RegionBoundary(p) => classify_point(lambda, deviation(*p)) == RegionClass::Boundary,
            RegionClosed(p) => classify_point(lambda, deviation(*p)) != RegionClass::Exterior,
            RegionMinusEndpoints(p) => {
                classify_point(lambda, deviation(*p)) != RegionClass::Exterior
                    && !PlusMinusOne.contains_unchecked(lambda)
            }
            Union(parts) => parts.iter().any(|s| s.contains_unchecked(lambda)),
            Intersection(parts) => parts.iter().all(|s| s.contains_unchecked(lambda)),
            Difference(a, b) => a.contains_unchecked(lambda) && !b.contains_unchecked(lambda),
        }
    }

    /// Non-degenerate region parameters mentioned anywhere in the set.
    fn collect_parameters(&self, out: &mut Vec<f64>) {
        if let Some(p) = self.parameter() {
            if !is_degenerate(p) && !out.iter().any(|&q| same_region(p, q)) {
                out.push(p);
            }
        }
        for child in self.children() {
            child.collect_parameters(out);
        }
    }

    /// Atom mask relative to the single parameter `m` (`None`: only the
    /// segment atoms are inhabited).
    fn mask(&self, m: Option<f64>) -> u8 {
        use SpectralSet::*;
        let inhabited = if m.is_some() { ALL } else { OPEN_SEGMENT | ENDPOINTS };
        let raw = match self {
            Empty => 0,
            PlusMinusOne => ENDPOINTS,
            OpenUnitInterval => OPEN_SEGMENT,
            ClosedUnitInterval => OPEN_SEGMENT | ENDPOINTS,
            RegionInterior(p) if is_degenerate(*p) => 0,
            RegionBoundary(p) | RegionClosed(p) if is_degenerate(*p) => OPEN_SEGMENT | ENDPOINTS,
            RegionMinusEndpoints(p) if is_degenerate(*p) => OPEN_SEGMENT,
            RegionInterior(_) => OPEN_SEGMENT | INTERIOR_REST,
            RegionBoundary(_) => ARCS | ENDPOINTS,
            RegionClosed(_) => ALL,
            RegionMinusEndpoints(_) => OPEN_SEGMENT | INTERIOR_REST | ARCS,
            Union(parts) => parts.iter().fold(0, |acc, s| acc | s.mask(m)),
            Intersection(parts) => parts.iter().fold(ALL, |acc, s| acc & s.mask(m)),
            Difference(a, b) => a.mask(m) & !b.mask(m),
        };
        raw & inhabited
    }

    fn from_mask(mask: u8, m: Option<f64>) -> SpectralSet {
        use SpectralSet::*;
        let mut pieces: Vec<(u8, SpectralSet)> = Vec::new();
        if let Some(p) = m {
            pieces.extend([
                (ALL, RegionClosed(p)),
                (OPEN_SEGMENT | INTERIOR_REST | ARCS, RegionMinusEndpoints(p)),
                (OPEN_SEGMENT | INTERIOR_REST, RegionInterior(p)),
                (ARCS | ENDPOINTS, RegionBoundary(p)),
            ]);
        }
        pieces.extend([
            (OPEN_SEGMENT | ENDPOINTS, ClosedUnitInterval),
            (OPEN_SEGMENT, OpenUnitInterval),
            (ENDPOINTS, PlusMinusOne),
        ]);
        if let Some(p) = m {
            pieces.extend([
                (
                    INTERIOR_REST,
                    Difference(Box::new(RegionInterior(p)), Box::new(OpenUnitInterval)),
                ),
                (
                    ARCS,
                    Difference(Box::new(RegionBoundary(p)), Box::new(PlusMinusOne)),
                ),
            ]);
        }
        let mut remaining = mask;
        let mut chosen = Vec::new();
        for (bits, set) in pieces {
            if remaining & bits == bits {
                remaining &= !bits;
                chosen.push(set);
            }
        }
        match chosen.len() {
            0 => Empty,
            1 => chosen.pop().unwrap(),
            _ => Union(chosen),
        }
    }

    /// Canonical form. Sets mentioning at most one region parameter are
    /// rebuilt from their atom decomposition; otherwise composites are
    /// flattened, pruned and ordered.
    pub fn normalized(&self) -> SpectralSet {
        let mut params = Vec::new();
        self.collect_parameters(&mut params);
        if params.len() <= 1 {
            let m = params.first().copied();
            return Self::from_mask(self.mask(m), m);
        }
        self.normalize_structural()
    }

    fn normalize_structural(&self) -> SpectralSet {
        use SpectralSet::*;
        match self {
            Union(parts) => {
                let mut flat: Vec<SpectralSet> = Vec::new();
                for part in parts.iter().map(SpectralSet::normalized) {
                    match part {
                        Empty => {}
                        Union(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                // R_a ∪ R_b is the larger of the two.
                let widest = flat
                    .iter()
                    .filter_map(|s| match s {
                        RegionClosed(p) => Some(*p),
                        _ => None,
                    })
                    .max_by(|a, b| deviation(*a).total_cmp(&deviation(*b)));
                if let Some(w) = widest {
                    flat.retain(|s| !s.is_within_closed_region(w) || *s == RegionClosed(w));
                }
                sort_and_dedup(&mut flat);
                match flat.len() {
                    0 => Empty,
                    1 => flat.pop().unwrap(),
                    _ => Union(flat),
                }
            }
            Intersection(parts) => {
                let mut flat: Vec<SpectralSet> = Vec::new();
                for part in parts.iter().map(SpectralSet::normalized) {
                    match part {
                        Empty => return Empty,
                        Intersection(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                sort_and_dedup(&mut flat);
                match flat.len() {
                    1 => flat.pop().unwrap(),
                    _ => Intersection(flat),
                }
            }
            Difference(a, b) => {
                let a = a.normalized();
                let b = b.normalized();
                match (&a, &b) {
                    (Empty, _) => Empty,
                    (_, Empty) => a,
                    _ => Difference(Box::new(a), Box::new(b)),
                }
            }
            other => other.clone(),
        }
    }

    /// Conservative syntactic test for `self ⊆ R_w`.
    fn is_within_closed_region(&self, w: f64) -> bool {
        use SpectralSet::*;
        match self {
            Empty | PlusMinusOne | OpenUnitInterval | ClosedUnitInterval => true,
            RegionInterior(p) | RegionBoundary(p) | RegionClosed(p) | RegionMinusEndpoints(p) => {
                deviation(*p) <= deviation(w) + BOUNDARY_TOL
            }
            Union(parts) => parts.iter().all(|s| s.is_within_closed_region(w)),
            Intersection(parts) => parts.iter().any(|s| s.is_within_closed_region(w)),
            Difference(a, _) => a.is_within_closed_region(w),
        }
    }

    /// Symbolic equality after normalisation, comparing region parameters
    /// through `R_p = R_{p'}`.
    pub fn equivalent(&self, other: &SpectralSet) -> bool {
        structurally_equal(&self.normalized(), &other.normalized())
    }

    /// Closure in the plane, for the set shapes the classifier produces.
    pub fn closure(&self) -> Option<SpectralSet> {
        use SpectralSet::*;
        let closed = match self.normalized() {
            Empty => Empty,
            PlusMinusOne => PlusMinusOne,
            OpenUnitInterval | ClosedUnitInterval => ClosedUnitInterval,
            RegionInterior(p) | RegionMinusEndpoints(p) | RegionClosed(p) => {
                SpectralSet::region_closed(p)
            }
            RegionBoundary(p) => SpectralSet::region_boundary(p),
            Union(parts) => {
                let closed: Option<Vec<_>> = parts.iter().map(SpectralSet::closure).collect();
                SpectralSet::union(closed?)
            }
            Intersection(_) | Difference(..) => return None,
        };
        Some(closed)
    }

    /// Membership-sampling test for `self ⊆ other`.
    pub fn sampled_subset_of(&self, other: &SpectralSet, points: &[ComplexPoint]) -> bool {
        points
            .iter()
            .all(|&z| !self.contains_unchecked(z) || other.contains_unchecked(z))
    }

    /// Membership-sampling test for equality of the two predicates.
    pub fn sampled_equal(&self, other: &SpectralSet, points: &[ComplexPoint]) -> bool {
        points
            .iter()
            .all(|&z| self.contains_unchecked(z) == other.contains_unchecked(z))
    }

    fn rank(&self) -> (u8, f64) {
        use SpectralSet::*;
        let tag = match self {
            Empty => 0,
            PlusMinusOne => 1,
            OpenUnitInterval => 2,
            ClosedUnitInterval => 3,
            RegionInterior(_) => 4,
            RegionBoundary(_) => 5,
            RegionClosed(_) => 6,
            RegionMinusEndpoints(_) => 7,
            Union(_) => 8,
            Intersection(_) => 9,
            Difference(..) => 10,
        };
        (tag, self.parameter().map(deviation).unwrap_or(0.0))
    }
}

fn sort_and_dedup(sets: &mut Vec<SpectralSet>) {
    sets.sort_by(|a, b| {
        let (ta, da) = a.rank();
        let (tb, db) = b.rank();
        ta.cmp(&tb).then(da.total_cmp(&db))
    });
    sets.dedup_by(|a, b| structurally_equal(a, b));
}

fn structurally_equal(a: &SpectralSet, b: &SpectralSet) -> bool {
    use SpectralSet::*;
    match (a, b) {
        (RegionInterior(p), RegionInterior(q))
        | (RegionBoundary(p), RegionBoundary(q))
        | (RegionClosed(p), RegionClosed(q))
        | (RegionMinusEndpoints(p), RegionMinusEndpoints(q)) => same_region(*p, *q),
        (Union(xs), Union(ys)) | (Intersection(xs), Intersection(ys)) => {
            xs.len() == ys.len()
                && xs.iter().all(|x| ys.iter().any(|y| structurally_equal(x, y)))
        }
        (Difference(a1, b1), Difference(a2, b2)) => {
            structurally_equal(a1, a2) && structurally_equal(b1, b2)
        }
        _ => std::mem::discriminant(a) == std::mem::discriminant(b) && a.parameter().is_none(),
    }
}

fn fmt_param(p: f64) -> String {
    let rounded = (p * 1e9).round() / 1e9;
    format!("{rounded}")
}

impl fmt::Display for SpectralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpectralSet::*;
        let join = |f: &mut fmt::Formatter<'_>, parts: &[SpectralSet], sep: &str| {
            for (k, part) in parts.iter().enumerate() {
                if k > 0 {
                    write!(f, " {sep} ")?;
                }
                match part {
                    Union(_) | Intersection(_) | Difference(..) => write!(f, "({part})")?,
                    _ => write!(f, "{part}")?,
                }
            }
            Ok(())
        };
        match self {
            Empty => write!(f, "∅"),
            PlusMinusOne => write!(f, "{{±1}}"),
            OpenUnitInterval => write!(f, "(-1,1)"),
            ClosedUnitInterval => write!(f, "[-1,1]"),
            RegionInterior(p) => write!(f, "int R_{}", fmt_param(*p)),
            RegionBoundary(p) => write!(f, "∂R_{}", fmt_param(*p)),
            RegionClosed(p) => write!(f, "R_{}", fmt_param(*p)),
            RegionMinusEndpoints(p) => write!(f, "R_{}∖{{±1}}", fmt_param(*p)),
            Union(parts) => join(f, parts, "∪"),
            Intersection(parts) => join(f, parts, "∩"),
            Difference(a, b) => join(f, &[(**a).clone(), (**b).clone()], "∖"),
        }
    }
}

/// Deterministic test points: a Halton cloud over [-3,3]², points on the
/// real axis, near-axis points and the endpoints ±1.
pub fn probe_points(n: usize) -> Vec<ComplexPoint> {
    fn halton(mut index: usize, base: usize) -> f64 {
        let mut f = 1.0;
        let mut r = 0.0;
        while index > 0 {
            f /= base as f64;
            r += f * (index % base) as f64;
            index /= base;
        }
        r
    }
    let mut pts = Vec::with_capacity(n + 4);
    pts.push(ComplexPoint::new(1.0, 0.0));
    pts.push(ComplexPoint::new(-1.0, 0.0));
    pts.push(ComplexPoint::new(0.0, 0.0));
    for k in 1..=n {
        let x = 6.0 * halton(k, 2) - 3.0;
        let y = 6.0 * halton(k, 3) - 3.0;
        match k % 5 {
            0 => pts.push(ComplexPoint::new(x, 0.0)),
            1 => pts.push(ComplexPoint::new(x / 3.0, y / 30.0)),
            _ => pts.push(ComplexPoint::new(x, y)),
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use SpectralSet::*;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn membership_examples() {
        assert!(OpenUnitInterval.contains(c(0.0, 0.0)).unwrap());
        assert!(!RegionMinusEndpoints(3.0).contains(c(1.0, 0.0)).unwrap());
        assert!(RegionBoundary(4.0).contains(c(0.0, 1.0)).unwrap());
        assert!(RegionClosed(4.0).contains(c(0.0, 1.0)).unwrap());
        assert!(!RegionInterior(4.0).contains(c(0.0, 1.0)).unwrap());
        assert!(Union(vec![PlusMinusOne, RegionInterior(3.0)])
            .contains(c(-1.0, 0.0))
            .unwrap());
    }

    #[test]
    fn malformed_sets_are_rejected() {
        assert!(matches!(
            RegionClosed(1.0).contains(c(0.0, 0.0)),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            Union(vec![]).contains(c(0.0, 0.0)),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            Difference(Box::new(Empty), Box::new(RegionBoundary(f64::NAN)))
                .contains(c(0.0, 0.0)),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn region_two_matches_unit_interval() {
        let pts = probe_points(4000);
        assert!(RegionClosed(2.0).sampled_equal(&ClosedUnitInterval, &pts));
        assert!(RegionMinusEndpoints(2.0).sampled_equal(&OpenUnitInterval, &pts));
        assert!(RegionInterior(2.0).sampled_equal(&Empty, &pts));
        assert!(RegionClosed(2.0).equivalent(&ClosedUnitInterval));
        assert!(RegionMinusEndpoints(2.0).equivalent(&OpenUnitInterval));
        assert_eq!(SpectralSet::region_closed(2.0), ClosedUnitInterval);
        assert_eq!(SpectralSet::region_minus_endpoints(2.0), OpenUnitInterval);
    }

    #[test]
    fn conjugate_parameters_are_equivalent() {
        assert!(RegionInterior(1.5).equivalent(&RegionInterior(3.0)));
        assert!(RegionClosed(1.25).equivalent(&RegionClosed(5.0)));
        assert!(!RegionClosed(1.5).equivalent(&RegionClosed(2.5)));
        assert!(!RegionInterior(3.0).equivalent(&RegionClosed(3.0)));
    }

    #[test]
    fn single_parameter_algebra() {
        let p = 3.0;
        assert!(RegionClosed(p)
            .difference(&RegionInterior(p))
            .equivalent(&RegionBoundary(p)));
        assert!(RegionClosed(p)
            .difference(&RegionMinusEndpoints(p))
            .equivalent(&PlusMinusOne));
        assert!(SpectralSet::union([ClosedUnitInterval, RegionInterior(p)])
            .equivalent(&Union(vec![RegionInterior(p), PlusMinusOne])));
        assert!(SpectralSet::union([RegionBoundary(p), RegionInterior(p)])
            .equivalent(&RegionClosed(p)));
        assert!(ClosedUnitInterval
            .difference(&OpenUnitInterval)
            .equivalent(&PlusMinusOne));
        assert!(SpectralSet::intersection([RegionMinusEndpoints(p), RegionBoundary(p)])
            .equivalent(&Difference(
                Box::new(RegionBoundary(p)),
                Box::new(PlusMinusOne)
            )));
    }

    #[test]
    fn normalisation_preserves_membership() {
        let pts = probe_points(3000);
        let sets = [
            Union(vec![RegionInterior(3.0), RegionBoundary(1.5)]),
            Difference(Box::new(RegionClosed(4.0)), Box::new(OpenUnitInterval)),
            Intersection(vec![RegionMinusEndpoints(2.5), ClosedUnitInterval]),
            Union(vec![RegionClosed(3.0), RegionClosed(5.0), PlusMinusOne]),
            Difference(Box::new(RegionClosed(10.0 / 3.0)), Box::new(RegionInterior(2.5))),
            Union(vec![Empty, RegionClosed(2.0)]),
        ];
        for s in sets {
            assert!(s.sampled_equal(&s.normalized(), &pts), "{s}");
        }
    }

    #[test]
    fn nested_closed_regions_collapse_to_largest() {
        let u = SpectralSet::union([RegionClosed(2.5), RegionClosed(10.0 / 3.0), ClosedUnitInterval]);
        assert!(u.equivalent(&RegionClosed(10.0 / 3.0)));
    }

    #[test]
    fn closures() {
        assert_eq!(RegionInterior(3.0).closure(), Some(RegionClosed(3.0)));
        assert_eq!(OpenUnitInterval.closure(), Some(ClosedUnitInterval));
        assert_eq!(RegionMinusEndpoints(2.0).closure(), Some(ClosedUnitInterval));
        assert_eq!(Empty.closure(), Some(Empty));
    }

    #[test]
    fn display_forms() {
        assert_eq!(RegionMinusEndpoints(3.0).to_string(), "R_3∖{±1}");
        assert_eq!(
            Difference(Box::new(RegionClosed(10.0 / 3.0)), Box::new(RegionInterior(2.5)))
                .to_string(),
            "R_3.333333333 ∖ int R_2.5"
        );
    }

    #[test]
    fn serde_round_trip() {
        let s = Union(vec![
            RegionInterior(3.0),
            Difference(Box::new(RegionClosed(4.0)), Box::new(PlusMinusOne)),
        ]);
        let json = serde_json::to_string(&s).unwrap();
        let back: SpectralSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
