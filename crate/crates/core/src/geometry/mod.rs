//! The four elementary tropicalizations in R^3.
//!
//! Every geometry is a finite list of constraints `p_c >= max_f f(p)` where
//! `c` is a coordinate index and the `f` are integer linear functionals not
//! involving `p_c`.

mod serde_impl;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::lattice::{integer_kernel, rank, IntegerMatrix, LatticeVector, RationalPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("point {0} lies outside the geometry")]
    OutsidePoint(String),
    #[error("invalid geometry: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeometryKind {
    FullBoundary,
    OneNonBoundary,
    TwoNonBoundary,
    ThreeNonBoundary,
}

impl GeometryKind {
    pub fn name(self) -> &'static str {
        match self {
            GeometryKind::FullBoundary => "FullBoundary",
            GeometryKind::OneNonBoundary => "OneNonBoundary",
            GeometryKind::TwoNonBoundary => "TwoNonBoundary",
            GeometryKind::ThreeNonBoundary => "ThreeNonBoundary",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::FullBoundary, Self::OneNonBoundary, Self::TwoNonBoundary, Self::ThreeNonBoundary]
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subkind {
    Straight,
    Ruled,
    General,
}

impl Subkind {
    pub fn name(self) -> &'static str {
        match self {
            Subkind::Straight => "straight",
            Subkind::Ruled => "ruled",
            Subkind::General => "general",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::Straight, Self::Ruled, Self::General].into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

/// `p[coord] >= max(f . p for f in functionals)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Constraint {
    coord: usize,
    functionals: Vec<LatticeVector>,
}

impl Constraint {
    fn value(&self, p: &RationalPoint) -> Rational {
        self.functionals.iter().map(|f| dot_rational(f, p)).max().expect("nonempty functional list")
    }

    fn active(&self, p: &RationalPoint) -> Option<Vec<&LatticeVector>> {
        let v = self.value(p);
        if p.coord(self.coord) != &v {
            return None;
        }
        Some(self.functionals.iter().filter(|f| dot_rational(f, p) == v).collect())
    }
}

fn dot_rational(f: &LatticeVector, p: &RationalPoint) -> Rational {
    (0..3).map(|i| Rational::from_integer(f[i].clone()) * p.coord(i)).sum()
}

fn row_minus_basis(f: &LatticeVector, c: usize) -> Vec<BigInt> {
    (0..3).map(|i| if i == c { BigInt::from(1) - &f[i] } else { -f[i].clone() }).collect()
}

/// Vertices of the convex hull of planar integer points, i.e. the functionals
/// that actually attain the maximum somewhere.
fn hull_vertices(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: [i64; 2], a: [i64; 2], b: [i64; 2]| {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    let mut hull: Vec<[i64; 2]> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[i64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull.sort();
    hull.dedup();
    hull
}

fn slope_extremes(slopes: &[i64]) -> Vec<i64> {
    let lo = *slopes.iter().min().unwrap();
    let hi = *slopes.iter().max().unwrap();
    if lo == hi { vec![lo] } else { vec![lo, hi] }
}

/// One of the four elementary geometries together with its collapsed rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryGeometry {
    kind: GeometryKind,
    subkind: Option<Subkind>,
    psi: Vec<[i64; 2]>,
    psi1: Vec<i64>,
    psi2: Vec<i64>,
    collapsed_rays: Vec<LatticeVector>,
    constraints: Vec<Constraint>,
}

impl Default for ElementaryGeometry {
    fn default() -> Self {
        Self::full_boundary()
    }
}

impl ElementaryGeometry {
    pub fn full_boundary() -> Self {
        Self::build(GeometryKind::FullBoundary, None, vec![], vec![], vec![], None).unwrap()
    }

    pub fn three_non_boundary() -> Self {
        Self::build(GeometryKind::ThreeNonBoundary, None, vec![], vec![], vec![], None).unwrap()
    }

    /// `z >= max(a x + b y)` over the given `(a, b)`.
    pub fn one_non_boundary(psi: Vec<[i64; 2]>) -> Result<Self, GeometryError> {
        Self::build(GeometryKind::OneNonBoundary, None, psi, vec![], vec![], None)
    }

    /// `y >= max(s x)`, `z >= max(t x)`.
    pub fn two_non_boundary(psi1: Vec<i64>, psi2: Vec<i64>) -> Result<Self, GeometryError> {
        Self::build(GeometryKind::TwoNonBoundary, None, vec![], psi1, psi2, None)
    }

    pub fn with_collapsed_rays(self, rays: Vec<LatticeVector>) -> Result<Self, GeometryError> {
        Self::build(self.kind, self.subkind, self.psi, self.psi1, self.psi2, Some(rays))
    }

    /// Validates the data and infers or checks the subkind.
    pub fn build(
        kind: GeometryKind,
        subkind: Option<Subkind>,
        psi: Vec<[i64; 2]>,
        psi1: Vec<i64>,
        psi2: Vec<i64>,
        collapsed_rays: Option<Vec<LatticeVector>>,
    ) -> Result<Self, GeometryError> {
        let invalid = |m: &str| Err(GeometryError::Invalid(m.to_string()));
        let (constraints, inferred) = match kind {
            GeometryKind::FullBoundary | GeometryKind::ThreeNonBoundary => {
                if !psi.is_empty() || !psi1.is_empty() || !psi2.is_empty() {
                    return invalid("this geometry carries no functional data");
                }
                if subkind.is_some() {
                    return invalid("subkind only applies to the 1- and 2-non-boundary geometries");
                }
                let cs = if kind == GeometryKind::FullBoundary {
                    vec![]
                } else {
                    (0..3).map(|c| Constraint { coord: c, functionals: vec![LatticeVector::zero()] }).collect()
                };
                (cs, None)
            }
            GeometryKind::OneNonBoundary => {
                if !psi1.is_empty() || !psi2.is_empty() {
                    return invalid("psi1/psi2 belong to the 2-non-boundary geometry");
                }
                let src = if psi.is_empty() { vec![[0, 0]] } else { psi.clone() };
                let hull = hull_vertices(&src);
                let inferred = if src.iter().all(|f| *f == [0, 0]) {
                    Subkind::Straight
                } else {
                    let diffs: Vec<Vec<i64>> =
                        hull.iter().map(|f| vec![f[0] - hull[0][0], f[1] - hull[0][1]]).collect();
                    match rank(&IntegerMatrix::from_rows(&diffs).unwrap()) {
                        0 => return invalid("a nonzero linear psi is a change of coordinates; use psi = 0"),
                        1 => Subkind::Ruled,
                        _ => Subkind::General,
                    }
                };
                let fs = hull.iter().map(|f| LatticeVector::from_i64([f[0], f[1], 0])).collect();
                (vec![Constraint { coord: 2, functionals: fs }], Some(inferred))
            }
            GeometryKind::TwoNonBoundary => {
                if !psi.is_empty() {
                    return invalid("psi belongs to the 1-non-boundary geometry");
                }
                let e1 = slope_extremes(if psi1.is_empty() { &[0] } else { &psi1 });
                let e2 = slope_extremes(if psi2.is_empty() { &[0] } else { &psi2 });
                let straight = psi1.iter().chain(&psi2).all(|s| *s == 0);
                if !straight && e1.len() == 1 && e2.len() == 1 {
                    return invalid("linear psi1/psi2 are a change of coordinates; use zero");
                }
                let inferred = if straight { Subkind::Straight } else { Subkind::General };
                let cs = vec![
                    Constraint { coord: 1, functionals: e1.iter().map(|s| LatticeVector::from_i64([*s, 0, 0])).collect() },
                    Constraint { coord: 2, functionals: e2.iter().map(|s| LatticeVector::from_i64([*s, 0, 0])).collect() },
                ];
                (cs, Some(inferred))
            }
        };
        if let (Some(given), Some(found)) = (subkind, inferred) {
            if given != found {
                return Err(GeometryError::Invalid(format!(
                    "subkind {} does not match the functional data ({})",
                    given.name(),
                    found.name()
                )));
            }
        }
        let collapsed_rays = match collapsed_rays {
            Some(rays) => {
                for r in &rays {
                    if !r.is_primitive() {
                        return Err(GeometryError::Invalid(format!("collapsed ray {r} is not primitive")));
                    }
                }
                rays
            }
            None => constraints.iter().map(|c| -&LatticeVector::basis(c.coord)).collect(),
        };
        Ok(Self { kind, subkind: inferred, psi, psi1, psi2, collapsed_rays, constraints })
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn subkind(&self) -> Option<Subkind> {
        self.subkind
    }

    pub fn psi(&self) -> &[[i64; 2]] {
        &self.psi
    }

    pub fn psi1(&self) -> &[i64] {
        &self.psi1
    }

    pub fn psi2(&self) -> &[i64] {
        &self.psi2
    }

    pub fn collapsed_rays(&self) -> &[LatticeVector] {
        &self.collapsed_rays
    }

    pub fn contains_point(&self, p: &RationalPoint) -> bool {
        self.constraints.iter().all(|c| p.coord(c.coord) >= &c.value(p))
    }

    fn require(&self, p: &RationalPoint) -> Result<(), GeometryError> {
        if self.contains_point(p) {
            Ok(())
        } else {
            Err(GeometryError::OutsidePoint(p.to_string()))
        }
    }

    /// Whether `p + eps v` stays in the geometry for all small `eps > 0`.
    pub fn admits_direction(&self, p: &RationalPoint, v: &LatticeVector) -> Result<bool, GeometryError> {
        self.require(p)?;
        Ok(self.constraints.iter().all(|c| match c.active(p) {
            None => true,
            Some(active) => active.iter().all(|f| v[c.coord] >= f.dot(v)),
        }))
    }

    /// Rows `e_c - f` cutting out the face through `p`.
    fn face_equations(&self, p: &RationalPoint, along: Option<&LatticeVector>) -> Vec<Vec<BigInt>> {
        let mut rows = Vec::new();
        for c in &self.constraints {
            let Some(active) = c.active(p) else { continue };
            let active: Vec<&LatticeVector> = match along {
                None => active,
                Some(v) => {
                    let top = active.iter().map(|f| f.dot(v)).max().unwrap();
                    if v[c.coord] != top {
                        continue;
                    }
                    active.into_iter().filter(|f| f.dot(v) == top).collect()
                }
            };
            rows.extend(active.iter().map(|f| row_minus_basis(f, c.coord)));
        }
        rows
    }

    fn lattice_of(rows: Vec<Vec<BigInt>>) -> Vec<LatticeVector> {
        if rows.is_empty() {
            return (0..3).map(LatticeVector::basis).collect();
        }
        let k = integer_kernel(&IntegerMatrix::from_rows(&rows).unwrap());
        (0..k.rows()).map(|i| { let r = k.row(i); LatticeVector([r[0].clone(), r[1].clone(), r[2].clone()]) }).collect()
    }

    /// Basis of the integral tangent vectors along the face whose relative
    /// interior contains `p`.
    pub fn cone_lattice(&self, p: &RationalPoint) -> Result<Vec<LatticeVector>, GeometryError> {
        self.require(p)?;
        Ok(Self::lattice_of(self.face_equations(p, None)))
    }

    /// The cone lattice at `p + eps v` for small `eps > 0`.
    pub fn cone_lattice_along(&self, p: &RationalPoint, v: &LatticeVector) -> Result<Vec<LatticeVector>, GeometryError> {
        if !self.admits_direction(p, v)? {
            return Err(GeometryError::OutsidePoint(format!("{p} + eps {v}")));
        }
        Ok(Self::lattice_of(self.face_equations(p, Some(v))))
    }

    /// Collapsed rays pointing out of the geometry at `p`. Balancing at `p` is
    /// taken modulo their span.
    pub fn collapsed_directions(&self, p: &RationalPoint) -> Result<Vec<LatticeVector>, GeometryError> {
        self.require(p)?;
        Ok(self
            .collapsed_rays
            .iter()
            .filter(|r| {
                self.constraints.iter().any(|c| match c.active(p) {
                    None => false,
                    Some(active) => active.iter().any(|f| r[c.coord] < f.dot(r)),
                })
            })
            .cloned()
            .collect())
    }

    /// Integer functionals vanishing on the collapsed directions at `p`; these
    /// are the projections that factor through the collapse.
    pub fn factoring_functionals(&self, p: &RationalPoint) -> Result<Vec<LatticeVector>, GeometryError> {
        let c = self.collapsed_directions(p)?;
        if c.is_empty() {
            return Ok((0..3).map(LatticeVector::basis).collect());
        }
        Ok(Self::lattice_of(IntegerMatrix::from_vectors_as_rows(&c).row_vectors()))
    }

    /// Whether `v` lies in the rational span of the collapsed directions at `p`.
    pub fn in_collapsed_span(&self, p: &RationalPoint, v: &LatticeVector) -> Result<bool, GeometryError> {
        Ok(self.factoring_functionals(p)?.iter().all(|f| f.dot(v).is_zero()))
    }

    /// Translations preserving the geometry.
    pub fn translation_group(&self) -> TranslationGroup {
        let rows: Vec<Vec<BigInt>> = self
            .constraints
            .iter()
            .flat_map(|c| c.functionals.iter().map(move |f| row_minus_basis(f, c.coord)))
            .collect();
        let generators = Self::lattice_of(rows);
        TranslationGroup { rank: generators.len(), generators }
    }

    /// Canonical representative of `p` modulo the translation group.
    pub fn reduce_point(&self, p: &RationalPoint) -> RationalPoint {
        self.translation_group().reduce(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TranslationGroup {
    pub rank: usize,
    pub generators: Vec<LatticeVector>,
}

impl TranslationGroup {
    /// Uses the echelon shape of the generators: at each pivot the coordinate
    /// is brought into `[0, pivot)`.
    pub fn reduce(&self, p: &RationalPoint) -> RationalPoint {
        let mut out = p.clone();
        for g in &self.generators {
            let Some(j) = (0..3).find(|&j| !g[j].is_zero()) else { continue };
            let pivot = Rational::from_integer(g[j].clone());
            let t = (out.coord(j) / &pivot).floor();
            out = out.add_scaled(g, &-t);
        }
        out
    }

    /// The group is saturated, so rational membership is enough.
    pub fn contains(&self, v: &LatticeVector) -> bool {
        let mut rows: Vec<LatticeVector> = self.generators.clone();
        rows.push(v.clone());
        rank(&IntegerMatrix::from_vectors_as_rows(&rows)) == self.rank
    }
}

impl fmt::Display for ElementaryGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if let Some(s) = self.subkind {
            write!(f, "({})", s.name())?;
        }
        Ok(())
    }
}
