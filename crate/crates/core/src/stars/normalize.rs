use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{Star, StarError};
use crate::geometry::GeometryKind;
use crate::lattice::{smith_normal_form, IntegerMatrix, LatticeVector};

/// Smith data of a trivalent star: the weighted rays span a lattice equivalent
/// to `<(n,0,0), (0,mn,0)>`, and the multiplicity is `N = m n^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub n: u64,
    pub m: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    /// Unimodular matrix acting on column vectors.
    pub transform: IntegerMatrix,
    /// When true, `transform` sends the weighted rays listed in `ray_order`
    /// to `(n,0,0)`, `(0,mn,0)`, `(-n,-mn,0)` exactly. Otherwise it only
    /// carries their span onto `<(n,0,0), (0,mn,0)>`; this happens when the
    /// weights are not `{n, mn, n}`.
    pub rows_exact: bool,
    pub ray_order: [usize; 3],
}

fn small(b: &BigInt, what: &str) -> Result<u64, StarError> {
    b.to_u64().ok_or_else(|| StarError::Invalid(format!("{what} {b} does not fit in 64 bits")))
}

/// Columns `u1, u2, b3` forming a basis of Z^3, if `u1, u2` span a saturated
/// rank-2 lattice.
fn complete_basis(u1: &LatticeVector, u2: &LatticeVector) -> Option<IntegerMatrix> {
    let m = IntegerMatrix::from_vectors_as_rows(&[u1.clone(), u2.clone()]);
    let s = smith_normal_form(&m);
    if s.diagonal() != vec![BigInt::one(), BigInt::one()] {
        return None;
    }
    let r = s.v.inverse_unimodular()?;
    let b3 = LatticeVector([r.get(2, 0).clone(), r.get(2, 1).clone(), r.get(2, 2).clone()]);
    Some(IntegerMatrix::from_vectors_as_cols(&[u1.clone(), u2.clone(), b3]))
}

pub fn multiplicity_and_normalize(s: &Star) -> Result<Multiplicity, StarError> {
    if s.geometry().kind() != GeometryKind::FullBoundary {
        return Err(StarError::Precondition("multiplicity needs a full-boundary star".into()));
    }
    if s.valence() != 3 {
        return Err(StarError::Precondition(format!("multiplicity needs a trivalent star, got {} rays", s.valence())));
    }
    if !s.is_balanced() {
        return Err(StarError::Precondition("star is not balanced".into()));
    }
    let w: Vec<LatticeVector> = s.rays().iter().map(|r| r.weighted()).collect();
    let m = IntegerMatrix::from_vectors_as_rows(&w[..2]);
    let snf = smith_normal_form(&m);
    let diag = snf.diagonal();
    if diag.iter().any(Zero::is_zero) {
        return Err(StarError::Precondition("weighted rays span a lattice of rank < 2".into()));
    }
    let (d1, d2) = (diag[0].clone(), diag[1].clone());
    let n = small(&d1, "n")?;
    let mm = small(&(&d2 / &d1), "m")?;
    let big_n = small(&(&d1 * &d2), "N")?;

    for (i, j) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
        let (ri, rj) = (&s.rays()[i], &s.rays()[j]);
        if BigInt::from(ri.weight) != d1 || BigInt::from(rj.weight) != d2 {
            continue;
        }
        if let Some(b) = complete_basis(&ri.dir, &rj.dir) {
            let a = b.inverse_unimodular().expect("basis matrix is unimodular");
            return Ok(Multiplicity { n, m: mm, big_n, transform: a, rows_exact: true, ray_order: [i, j, 3 - i - j] });
        }
    }
    // row vectors w satisfy M V = U^{-1} D, so V^T acts on columns
    Ok(Multiplicity { n, m: mm, big_n, transform: snf.v.transpose(), rows_exact: false, ray_order: [0, 1, 2] })
}
