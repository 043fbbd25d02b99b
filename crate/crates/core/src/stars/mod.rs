//! Stars and Chow 1-complexes in an elementary geometry.

mod complex;
mod normalize;
mod serde_impl;

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::geometry::{ElementaryGeometry, GeometryError, GeometryKind};
use crate::lattice::{hermite_normal_form, integer_kernel, IntegerMatrix, LatticeVector, RationalPoint};

pub use complex::{ChowOneComplex, ComplexEdge, ComplexRay, Vertex};
pub use normalize::{multiplicity_and_normalize, Multiplicity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StarError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarRay {
    pub dir: LatticeVector,
    pub weight: u64,
}

impl StarRay {
    pub fn new(dir: LatticeVector, weight: u64) -> Self {
        Self { dir, weight }
    }

    pub fn weighted(&self) -> LatticeVector {
        self.dir.scale(&BigInt::from(self.weight))
    }
}

/// How stars are identified when deduplicating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StarEquivalence {
    /// Translations in the geometry's translation group.
    #[default]
    Translation,
    /// Additionally integral linear changes of coordinates (full boundary only).
    Linear,
}

/// A base point with weighted primitive rays and a count of internal markings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Star {
    geometry: ElementaryGeometry,
    base: RationalPoint,
    rays: Vec<StarRay>,
    k: u32,
}

impl Star {
    pub fn new(geometry: ElementaryGeometry, base: RationalPoint, rays: Vec<StarRay>, k: u32) -> Result<Self, StarError> {
        if !geometry.contains_point(&base) {
            return Err(GeometryError::OutsidePoint(base.to_string()).into());
        }
        for r in &rays {
            if r.weight == 0 {
                return Err(StarError::Invalid(format!("ray {} has weight 0", r.dir)));
            }
            if !r.dir.is_primitive() {
                return Err(StarError::Invalid(format!("ray direction {} is not primitive", r.dir)));
            }
            if !geometry.admits_direction(&base, &r.dir)? {
                return Err(StarError::Invalid(format!("ray {} leaves the geometry at {base}", r.dir)));
            }
        }
        Ok(Self { geometry, base, rays, k })
    }

    /// Full-boundary star at the origin from `(direction, weight)` pairs.
    pub fn full_boundary(rays: &[([i64; 3], u64)]) -> Result<Self, StarError> {
        let rays = rays.iter().map(|(v, w)| StarRay::new(LatticeVector::from_i64(*v), *w)).collect();
        Self::new(ElementaryGeometry::full_boundary(), RationalPoint::origin(), rays, 0)
    }

    pub fn geometry(&self) -> &ElementaryGeometry {
        &self.geometry
    }

    pub fn base(&self) -> &RationalPoint {
        &self.base
    }

    pub fn rays(&self) -> &[StarRay] {
        &self.rays
    }

    pub fn internal_markings(&self) -> u32 {
        self.k
    }

    pub fn valence(&self) -> usize {
        self.rays.len()
    }

    pub fn degree(&self) -> u64 {
        self.rays.iter().map(|r| r.weight).sum()
    }

    pub fn weighted_sum(&self) -> LatticeVector {
        self.rays.iter().fold(LatticeVector::zero(), |acc, r| &acc + &r.weighted())
    }

    /// Rays with equal directions merged, sorted.
    pub fn merged(&self) -> Self {
        let mut acc: BTreeMap<LatticeVector, u64> = BTreeMap::new();
        for r in &self.rays {
            *acc.entry(r.dir.clone()).or_default() += r.weight;
        }
        let rays = acc.into_iter().map(|(dir, weight)| StarRay { dir, weight }).collect();
        Self { rays, ..self.clone() }
    }

    pub fn translated_to(&self, base: RationalPoint) -> Result<Self, StarError> {
        Self::new(self.geometry.clone(), base, self.rays.clone(), self.k)
    }

    /// Balanced iff the weighted ray sum lies in the span of the directions
    /// collapsed at the base.
    pub fn is_balanced(&self) -> bool {
        self.geometry.in_collapsed_span(&self.base, &self.weighted_sum()).expect("base lies in the geometry")
    }

    /// Injectivity of `L_p -> prod L_q / Z v_i`. An element of `L_p` dies in
    /// `L_q / Z v` exactly when it is parallel to `v`.
    pub fn is_visible(&self) -> bool {
        let lp = self.geometry.cone_lattice(&self.base).expect("base lies in the geometry");
        if lp.is_empty() {
            return true;
        }
        for r in &self.rays {
            let lq = self.geometry.cone_lattice_along(&self.base, &r.dir).expect("admissible ray");
            debug_assert!(lq.len() >= lp.len());
        }
        let dirs: Vec<LatticeVector> = self.rays.iter().map(|r| r.dir.clone()).collect();
        parallel_kernel_is_trivial(&lp, &dirs)
    }

    /// Integral linear change of coordinates, full boundary only.
    pub fn transform(&self, a: &IntegerMatrix) -> Result<Self, StarError> {
        if self.geometry.kind() != GeometryKind::FullBoundary {
            return Err(StarError::Precondition("linear transforms apply to full-boundary stars only".into()));
        }
        if !a.is_unimodular() || a.rows() != 3 {
            return Err(StarError::Precondition("transform must be a unimodular 3x3 matrix".into()));
        }
        let base = RationalPoint([0, 1, 2].map(|i| {
            (0..3).map(|j| Rational::from_integer(a.get(i, j).clone()) * self.base.coord(j)).sum()
        }));
        let rays = self.rays.iter().map(|r| StarRay { dir: a.apply(&r.dir), weight: r.weight }).collect();
        Self::new(self.geometry.clone(), base, rays, self.k)
    }

    /// A key equal for equivalent stars.
    pub fn canonical_key(&self, eq: StarEquivalence) -> String {
        let m = self.merged();
        match eq {
            StarEquivalence::Linear if self.geometry.kind() == GeometryKind::FullBoundary => {
                let weighted: Vec<LatticeVector> = m.rays.iter().map(StarRay::weighted).collect();
                let best = (0..weighted.len())
                    .permutations(weighted.len())
                    .map(|perm| {
                        let cols: Vec<LatticeVector> = perm.iter().map(|&i| weighted[i].clone()).collect();
                        hermite_normal_form(&IntegerMatrix::from_vectors_as_cols(&cols)).to_string()
                    })
                    .min()
                    .unwrap_or_default();
                format!("linear|{}|k={}|{best}", self.geometry, self.k)
            }
            _ => {
                let base = self.geometry.reduce_point(&m.base);
                let rays: Vec<String> = m.rays.iter().map(|r| format!("{}x{}", r.dir, r.weight)).collect();
                format!("{}|{}|k={}|{}", self.geometry, base, self.k, rays.join(";"))
            }
        }
    }
}

/// Whether no nonzero element of the lattice spanned by `basis` is parallel to
/// every vector in `dirs` at once.
pub(crate) fn parallel_kernel_is_trivial(basis: &[LatticeVector], dirs: &[LatticeVector]) -> bool {
    if basis.is_empty() {
        return true;
    }
    let b = IntegerMatrix::from_vectors_as_cols(basis);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for d in dirs {
        // x -> (B x) cross d
        let cross = cross_matrix(d);
        let m = cross.mul(&b).unwrap();
        rows.extend(m.row_vectors());
    }
    if rows.is_empty() {
        return false;
    }
    integer_kernel(&IntegerMatrix::from_rows(&rows).unwrap()).rows() == 0
}

/// Matrix of `x -> x cross d`.
pub(crate) fn cross_matrix(d: &LatticeVector) -> IntegerMatrix {
    let z = BigInt::zero();
    let [a, b, c] = d.0.clone();
    IntegerMatrix::new(3, 3, vec![
        z.clone(), c.clone(), -b.clone(),
        -c, z.clone(), a.clone(),
        b, -a, z,
    ])
    .unwrap()
}

impl fmt::Display for Star {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| format!("{}x{}", r.dir, r.weight)).collect();
        write!(f, "star[{} at {}: {}", self.geometry, self.base, rays.join(", "))?;
        if self.k > 0 {
            write!(f, "; k={}", self.k)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balancing() {
        assert!(Star::full_boundary(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([-1, -1, 0], 1)]).unwrap().is_balanced());
        assert!(!Star::full_boundary(&[([1, 0, 0], 1)]).unwrap().is_balanced());
        let three = ElementaryGeometry::three_non_boundary();
        let s = Star::new(three, RationalPoint::origin(), vec![StarRay::new(LatticeVector::from_i64([1, 2, 0]), 3)], 0).unwrap();
        assert!(s.is_balanced());
    }

    #[test]
    fn admissibility_is_enforced() {
        let three = ElementaryGeometry::three_non_boundary();
        let bad = Star::new(three, RationalPoint::origin(), vec![StarRay::new(LatticeVector::from_i64([-1, 0, 0]), 1)], 0);
        assert!(bad.is_err());
        assert!(Star::full_boundary(&[([2, 0, 0], 1)]).is_err());
    }

    #[test]
    fn visibility() {
        assert!(Star::full_boundary(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([-1, -1, 0], 1)]).unwrap().is_visible());
        assert!(!Star::full_boundary(&[([1, 0, 0], 1), ([-1, 0, 0], 1)]).unwrap().is_visible());
        let three = ElementaryGeometry::three_non_boundary();
        let s = Star::new(three, RationalPoint::origin(), vec![StarRay::new(LatticeVector::from_i64([1, 1, 1]), 1)], 0).unwrap();
        assert!(s.is_visible());
    }

    #[test]
    fn canonical_keys() {
        let a = Star::full_boundary(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([-1, -1, 0], 1)]).unwrap();
        let b = Star::full_boundary(&[([0, 1, 0], 1), ([-1, -1, 0], 1), ([1, 0, 0], 1)]).unwrap();
        assert_eq!(a.canonical_key(StarEquivalence::Translation), b.canonical_key(StarEquivalence::Translation));
        let moved = a.translated_to(RationalPoint::from_i64([4, -1, 2])).unwrap();
        assert_eq!(a.canonical_key(StarEquivalence::Translation), moved.canonical_key(StarEquivalence::Translation));
        let c = Star::full_boundary(&[([1, 0, 0], 1), ([0, 0, 1], 1), ([-1, 0, -1], 1)]).unwrap();
        assert_ne!(a.canonical_key(StarEquivalence::Translation), c.canonical_key(StarEquivalence::Translation));
        assert_eq!(a.canonical_key(StarEquivalence::Linear), c.canonical_key(StarEquivalence::Linear));
    }
}
