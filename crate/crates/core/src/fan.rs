//! Rational cones in N_R, the fan of G-graph cones, and fan-level checks.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::ggraph::{enumerate_ggraphs, wt_gamma, GGraph, GGraphError};
use crate::group::GroupData;
use crate::linalg::{
    coordinate_sum, cross_section_volume, dd_rays, dot_int_rat, int_det, is_nonnegative,
    saturated_rows, to_rational_vec, Halfspace, IntMatrix, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("fans have different supports (cross-section volumes {0} and {1})")]
    SupportMismatch(String, String),
    #[error("fans live in different ambient dimensions")]
    DimensionMismatch,
    #[error(transparent)]
    Enumeration(#[from] GGraphError),
}

/// A primitive lattice point of N spanning an extreme ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    /// The point in R^n.
    pub point: Vec<Rational>,
    /// Coordinates in the lattice basis of N; coprime integers.
    pub lattice: Vec<BigInt>,
}

impl Ray {
    fn new(gd: &GroupData, direction: &[BigInt]) -> Self {
        let point = gd.primitive_point(&to_rational_vec(direction));
        let lattice = gd
            .lattice_coords(&point)
            .expect("primitive point lies in N");
        debug_assert!(lattice.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one());
        Self { point, lattice }
    }

    pub fn age(&self) -> Rational {
        coordinate_sum(&self.point)
    }

    /// Sum of coordinates equals 1: a junior point or a unit vector.
    pub fn is_junior(&self) -> bool {
        self.age().is_one()
    }

    /// The point scaled onto the hyperplane where coordinates sum to 1.
    pub fn on_cross_section(&self) -> Vec<Rational> {
        let s = self.age();
        self.point.iter().map(|x| x / &s).collect()
    }
}

impl PartialOrd for Ray {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ray {
    fn cmp(&self, other: &Self) -> Ordering {
        self.point.cmp(&other.point)
    }
}

/// A closed polyhedral cone with both representations.
#[derive(Debug, Clone)]
pub struct Cone {
    halfspaces: Vec<Halfspace>,
    rays: Vec<Ray>,
    lineality: Vec<Vec<BigInt>>,
    dim: usize,
    ambient: usize,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim == other.dim
            && self.rays == other.rays
            && self.lineality.len() == other.lineality.len()
    }
}

impl Eq for Cone {}

impl Cone {
    /// `{w : h(w) >= 0 for every h}`.
    pub fn from_halfspaces(gd: &GroupData, halfspaces: Vec<Halfspace>) -> Self {
        let n = gd.n();
        let mut normals: Vec<Vec<BigInt>> = halfspaces.iter().map(Halfspace::integer_normal).collect();
        normals.sort();
        normals.dedup();
        let halfspaces: Vec<Halfspace> = normals
            .iter()
            .map(|v| Halfspace::from_integers(v).expect("nonzero normal"))
            .collect();
        let dd = dd_rays(&halfspaces, n).expect("dimensions agree");
        let mut rays: Vec<Ray> = dd.rays.iter().map(|r| Ray::new(gd, r)).collect();
        rays.sort();
        Self {
            halfspaces,
            rays,
            lineality: dd.lineality,
            dim: dd.dim,
            ambient: n,
        }
    }

    /// The cone generated by the given directions.
    pub fn from_generators(gd: &GroupData, generators: &[Vec<Rational>]) -> Self {
        let n = gd.n();
        let as_normals: Vec<Halfspace> = generators
            .iter()
            .map(|g| Halfspace::new(g.clone()).expect("generators are nonzero"))
            .collect();
        let dual = dd_rays(&as_normals, n).expect("dimensions agree");
        let mut facets: Vec<Halfspace> = dual
            .rays
            .iter()
            .map(|y| Halfspace::from_integers(y).expect("nonzero"))
            .collect();
        for l in &dual.lineality {
            let neg: Vec<BigInt> = l.iter().map(|x| -x).collect();
            facets.push(Halfspace::from_integers(l).expect("nonzero"));
            facets.push(Halfspace::from_integers(&neg).expect("nonzero"));
        }
        Self::from_halfspaces(gd, facets)
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient && self.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.lineality.is_empty() && self.rays.len() == self.dim
    }

    pub fn contains(&self, w: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(w))
    }

    /// Every ray of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(&r.point))
            && self
                .lineality
                .iter()
                .all(|l| other.halfspaces.iter().all(|h| dot_int_rat(l, h.normal()).is_zero()))
    }

    /// Vertices of the cross-section with the hyperplane of coordinate sum 1.
    pub fn cross_section(&self) -> Vec<Vec<Rational>> {
        let mut v: Vec<Vec<Rational>> = self.rays.iter().map(Ray::on_cross_section).collect();
        v.sort();
        v
    }

    /// Halfspaces of `self` vanishing on every ray of `rays`.
    fn tight_on(&self, rays: &[Ray]) -> Vec<&Halfspace> {
        self.halfspaces
            .iter()
            .filter(|h| rays.iter().all(|r| h.is_tight(&r.point)))
            .collect()
    }

    /// Whether `self ∩ other` is a face of `self`: every ray of the smallest
    /// face of `self` containing the intersection must lie in `other`.
    fn meets_in_face(&self, gd: &GroupData, other: &Cone) -> bool {
        let mut hs = self.halfspaces.clone();
        hs.extend(other.halfspaces.iter().cloned());
        let meet = Cone::from_halfspaces(gd, hs);
        let tight = self.tight_on(&meet.rays);
        self.rays
            .iter()
            .filter(|r| tight.iter().all(|h| h.is_tight(&r.point)))
            .all(|r| other.contains(&r.point))
    }

    fn key(&self) -> Vec<&Vec<Rational>> {
        self.rays.iter().map(|r| &r.point).collect()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|r| {
                let c: Vec<String> = r.point.iter().map(ToString::to_string).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "cone[{}]", rays.join(" "))
    }
}

/// `sigma(Gamma)`, closed: `w . u >= w . wt_Gamma(u)` for every minimal
/// generator `u` of the ideal.
pub fn cone_of(gd: &GroupData, g: &GGraph) -> Cone {
    let halfspaces = g
        .a_gamma
        .iter()
        .map(|u| {
            let v: Vec<BigInt> = u
                .difference(&wt_gamma(gd, g, u))
                .into_iter()
                .map(BigInt::from)
                .collect();
            Halfspace::from_integers(&v).expect("u is not in Gamma, so u != wt_Gamma(u)")
        })
        .collect();
    Cone::from_halfspaces(gd, halfspaces)
}

/// Primitive lattice determinant test: the rays' N-coordinates extend to a
/// basis of N.
pub fn is_smooth(gd: &GroupData, c: &Cone) -> bool {
    if !c.is_simplicial() {
        return false;
    }
    if c.rays.is_empty() {
        return true;
    }
    let rows: Vec<Vec<BigInt>> = c.rays.iter().map(|r| r.lattice.clone()).collect();
    let m = IntMatrix::from_rows(&rows).expect("rays share a dimension");
    if c.rays.len() == gd.n() {
        int_det(&m).expect("square").abs().is_one()
    } else {
        saturated_rows(&m)
    }
}

/// Where a maximal cone came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// A G-graph, recorded by its ideal `(u1, u2, ...)`.
    GGraph(String),
    Construction(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::GGraph(s) => write!(f, "ggraph {s}"),
            Provenance::Construction(s) => write!(f, "{s}"),
        }
    }
}

impl Provenance {
    pub fn parse(s: &str) -> Self {
        match s.strip_prefix("ggraph ") {
            Some(rest) => Provenance::GGraph(rest.to_string()),
            None => Provenance::Construction(s.to_string()),
        }
    }
}

/// A collection of full-dimensional cones in N_R.
#[derive(Debug, Clone)]
pub struct Fan {
    pub group: GroupData,
    pub cones: Vec<Cone>,
    pub provenance: Vec<Provenance>,
    /// Cones that were not full-dimensional and so are not maximal cones.
    pub lower_dimensional: Vec<(Provenance, Cone)>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec == other.group.spec && self.cones == other.cones
    }
}

impl Fan {
    /// Sorts cones canonically; full-dimensional duplicates are merged.
    pub fn new(group: GroupData, cones: Vec<(Cone, Provenance)>) -> Self {
        let mut full = Vec::new();
        let mut lower = Vec::new();
        for (c, p) in cones {
            if c.is_full_dimensional() {
                full.push((c, p));
            } else {
                lower.push((p, c));
            }
        }
        full.sort_by(|a, b| a.0.key().cmp(&b.0.key()).then_with(|| a.1.to_string().cmp(&b.1.to_string())));
        full.dedup_by(|a, b| a.0 == b.0);
        let (cones, provenance) = full.into_iter().unzip();
        Self {
            group,
            cones,
            provenance,
            lower_dimensional: lower,
        }
    }

    /// Builds a fan from cones given by generating points in R^n.
    pub fn from_generators(group: GroupData, cones: Vec<(Vec<Vec<Rational>>, Provenance)>) -> Self {
        let built = cones
            .into_iter()
            .map(|(g, p)| (Cone::from_generators(&group, &g), p))
            .collect();
        Self::new(group, built)
    }

    /// The single cone sigma = nonnegative orthant.
    pub fn orthant(group: GroupData) -> Self {
        let n = group.n();
        let gens = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::from_generators(group, vec![(gens, Provenance::Construction("orthant".into()))])
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Distinct rays of all maximal cones, sorted.
    pub fn rays(&self) -> Vec<Ray> {
        let mut r: Vec<Ray> = self.cones.iter().flat_map(|c| c.rays.iter().cloned()).collect();
        r.sort();
        r.dedup();
        r
    }

    /// Sum of cross-section volumes of all maximal cones, or `None` when some
    /// cone leaves the orthant.
    pub fn support_volume(&self) -> Option<Rational> {
        let mut total = Rational::zero();
        for c in &self.cones {
            if !c.rays.iter().all(|r| is_nonnegative(&r.point)) {
                return None;
            }
            total += cross_section_volume(&c.cross_section()).expect("points on the hyperplane");
        }
        Some(total)
    }
}

/// Volume of the standard simplex in the chart forgetting the first
/// coordinate: `1/(n-1)!`.
pub fn standard_simplex_volume(n: usize) -> Rational {
    let f = (1..n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    Rational::new(BigInt::one(), f)
}

/// The fan of all closed cones `sigma(Gamma)`.
pub fn build_fan_g(gd: &GroupData) -> Result<Fan, FanError> {
    let graphs = enumerate_ggraphs(gd)?;
    let cones: Vec<(Cone, Provenance)> = graphs
        .par_iter()
        .map(|g| (cone_of(gd, g), Provenance::GGraph(g.ideal_string())))
        .collect();
    Ok(Fan::new(gd.clone(), cones))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanFailure {
    NotFullDimensional(usize),
    RayOutsideOrthant(usize),
    BadIntersection(usize, usize),
    VolumeMismatch { found: Rational, expected: Rational },
}

impl fmt::Display for FanFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanFailure::NotFullDimensional(i) => write!(f, "cone {i} is not full-dimensional"),
            FanFailure::RayOutsideOrthant(i) => write!(f, "cone {i} leaves the orthant"),
            FanFailure::BadIntersection(i, j) => {
                write!(f, "cones {i} and {j} do not meet in a common face")
            }
            FanFailure::VolumeMismatch { found, expected } => write!(
                f,
                "cross-section volume {found} differs from the simplex volume {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanValidation {
    pub failure: Option<FanFailure>,
    pub support_volume: Option<Rational>,
    pub expected_volume: Rational,
}

impl FanValidation {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that the maximal cones form a fan whose support is the orthant:
/// pairwise intersections are common faces and the cross-section volumes
/// add up to the volume of the standard simplex.
pub fn validate_fan(gd: &GroupData, f: &Fan) -> FanValidation {
    let expected_volume = standard_simplex_volume(gd.n());
    let fail = |failure, support_volume| FanValidation {
        failure: Some(failure),
        support_volume,
        expected_volume: expected_volume.clone(),
    };
    if let Some(i) = f.cones.iter().position(|c| !c.is_full_dimensional()) {
        return fail(FanFailure::NotFullDimensional(i), None);
    }
    if let Some(i) = f
        .cones
        .iter()
        .position(|c| !c.rays.iter().all(|r| is_nonnegative(&r.point)))
    {
        return fail(FanFailure::RayOutsideOrthant(i), None);
    }
    let support_volume = f.support_volume();

    let k = f.cones.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let bad = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let (a, b) = (&f.cones[i], &f.cones[j]);
            !(a.meets_in_face(gd, b) && b.meets_in_face(gd, a))
        })
        .min();
    if let Some(&(i, j)) = bad {
        return fail(FanFailure::BadIntersection(i, j), support_volume);
    }
    let found = support_volume.clone().expect("rays are nonnegative");
    if found != expected_volume {
        return fail(
            FanFailure::VolumeMismatch {
                found,
                expected: expected_volume.clone(),
            },
            support_volume,
        );
    }
    FanValidation {
        failure: None,
        support_volume,
        expected_volume,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanReport {
    pub valid: bool,
    pub smooth: bool,
    pub crepant: bool,
    /// Indices of maximal cones that are not smooth.
    pub non_smooth_cones: Vec<usize>,
    /// Rays whose coordinate sum is not 1.
    pub non_junior_rays: Vec<Ray>,
    pub max_cone_count: usize,
    pub validation: FanValidation,
}

/// Smoothness and crepancy verdicts; crepant means every maximal cone is
/// smooth and every ray is a junior point or a unit vector.
pub fn is_crepant(gd: &GroupData, f: &Fan) -> FanReport {
    let validation = validate_fan(gd, f);
    let non_smooth_cones: Vec<usize> = f
        .cones
        .iter()
        .enumerate()
        .filter(|(_, c)| !is_smooth(gd, c))
        .map(|(i, _)| i)
        .collect();
    let non_junior_rays: Vec<Ray> = f.rays().into_iter().filter(|r| !r.is_junior()).collect();
    let smooth = non_smooth_cones.is_empty();
    FanReport {
        valid: validation.is_valid(),
        smooth,
        crepant: smooth && non_junior_rays.is_empty(),
        non_smooth_cones,
        non_junior_rays,
        max_cone_count: f.cones.len(),
        validation,
    }
}

/// Every maximal cone of `f1` lies in some maximal cone of `f2`.
pub fn refines(f1: &Fan, f2: &Fan) -> Result<bool, FanError> {
    if f1.n() != f2.n() {
        return Err(FanError::DimensionMismatch);
    }
    let show = |v: Option<Rational>| v.map_or_else(|| "outside the orthant".to_string(), |q| q.to_string());
    let (s1, s2) = (f1.support_volume(), f2.support_volume());
    if s1.is_none() || s1 != s2 {
        return Err(FanError::SupportMismatch(show(s1), show(s2)));
    }
    Ok(f1
        .cones
        .iter()
        .all(|c| f2.cones.iter().any(|d| c.is_contained_in(d))))
}

/// `v` lies in the dual cone and in the dual lattice M.
pub fn dual_contains(gd: &GroupData, c: &Cone, v: &[BigInt]) -> bool {
    let in_m = gd
        .lattice_basis
        .iter()
        .all(|b| dot_int_rat(v, b).is_integer());
    in_m && c.rays.iter().all(|r| !dot_int_rat(v, &r.point).is_negative())
        && c.lineality.iter().all(|l| crate::linalg::dot_int(v, l).is_zero())
}

/// Cross-section polytope of every maximal cone.
pub fn cross_section(f: &Fan) -> Vec<Vec<Vec<Rational>>> {
    f.cones.iter().map(Cone::cross_section).collect()
}
