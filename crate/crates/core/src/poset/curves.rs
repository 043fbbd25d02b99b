use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geometry::ElementaryGeometry;
use crate::lattice::{LatticeVector, RationalPoint};
use crate::stars::{ChowOneComplex, ComplexEdge, ComplexRay, Star, StarError, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstraintCase {
    I,
    II,
}

impl FromStr for ConstraintCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "I" | "i" | "1" => Ok(Self::I),
            "II" | "ii" | "2" => Ok(Self::II),
            other => Err(format!("unknown case {other:?}; expected I or II")),
        }
    }
}

impl fmt::Display for ConstraintCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::I => "I",
            Self::II => "II",
        })
    }
}

/// The 4-valent star with rays `(1,0,0), (0,1,0), (1,0,n), (-2,-1,-n)`.
pub fn four_valent_star(n: i64) -> Result<Star, StarError> {
    Star::full_boundary(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([1, 0, n], 1), ([-2, -1, -n], 1)])
}

fn pt(v: [i64; 3]) -> RationalPoint {
    RationalPoint::from_i64(v)
}

fn ray(vertex: usize, d: [i64; 3]) -> ComplexRay {
    ComplexRay { vertex, dir: LatticeVector::from_i64(d), weight: 1 }
}

fn build(positions: &[[i64; 3]], edges: &[(usize, usize, u64)], rays: Vec<ComplexRay>) -> Result<ChowOneComplex, StarError> {
    let vertices = positions.iter().map(|p| Vertex::at(pt(*p))).collect();
    let edges = edges.iter().map(|(a, b, w)| ComplexEdge { endpoints: [*a, *b], weight: *w }).collect();
    ChowOneComplex::connected(ElementaryGeometry::full_boundary(), vertices, edges, rays)
}

/// Rigid curves with asymptotic star `four_valent_star(n)` under the two
/// point-constraint cases of the trivalent recursion.
///
/// Case I has one curve: the rays `(1,0,0), (-2,-1,-n)` meet at the origin
/// and are joined by an edge `(1,1,n)` to the other two.
///
/// Case II has the curve whose bounded edge is `(2,0,n)`, and for each
/// `n1 > n2 > 0` with `n1 + n2 = n` a triangle: the origin carries
/// `(0,1,0), (-2,-1,-n)` and edges to `(1,0,n2)` and `(1,0,n1)`, which carry
/// `(1,0,0)` and `(1,0,n)` and are joined by a vertical edge of weight `n2`.
pub fn enumerate_4valent_curves(n: i64, case: ConstraintCase) -> Result<Vec<ChowOneComplex>, StarError> {
    if n < 1 {
        return Err(StarError::Precondition(format!("n must be positive, got {n}")));
    }
    let mut out = Vec::new();
    match case {
        ConstraintCase::I => {
            out.push(build(
                &[[0, 0, 0], [1, 1, n]],
                &[(0, 1, 1)],
                vec![ray(0, [1, 0, 0]), ray(0, [-2, -1, -n]), ray(1, [0, 1, 0]), ray(1, [1, 0, n])],
            )?);
        }
        ConstraintCase::II => {
            let weight = if n % 2 == 0 { 2 } else { 1 };
            out.push(build(
                &[[0, 0, 0], [2, 0, n]],
                &[(0, 1, weight)],
                vec![ray(0, [0, 1, 0]), ray(0, [-2, -1, -n]), ray(1, [1, 0, 0]), ray(1, [1, 0, n])],
            )?);
            for n2 in 1..n {
                let n1 = n - n2;
                if n1 <= n2 {
                    break;
                }
                out.push(build(
                    &[[0, 0, 0], [1, 0, n2], [1, 0, n1]],
                    &[(0, 1, 1), (0, 2, 1), (1, 2, n2 as u64)],
                    vec![ray(0, [0, 1, 0]), ray(0, [-2, -1, -n]), ray(1, [1, 0, 0]), ray(2, [1, 0, n])],
                )?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for n in 1..=8 {
            assert_eq!(enumerate_4valent_curves(n, ConstraintCase::I).unwrap().len(), 1);
            assert_eq!(enumerate_4valent_curves(n, ConstraintCase::II).unwrap().len() as i64, 1 + (n - 1) / 2);
        }
        assert_eq!(enumerate_4valent_curves(5, ConstraintCase::II).unwrap().len(), 3);
        assert_eq!(enumerate_4valent_curves(2, ConstraintCase::II).unwrap().len(), 1);
    }

    #[test]
    fn curves_are_balanced_stable_visible() {
        for n in 1..=8 {
            let star = four_valent_star(n).unwrap().merged();
            for case in [ConstraintCase::I, ConstraintCase::II] {
                for c in enumerate_4valent_curves(n, case).unwrap() {
                    assert!(c.is_balanced(), "n={n} {case}: {c}");
                    assert!(c.is_stable() && c.is_visible());
                    assert_eq!(c.asymptotic_star().unwrap(), star);
                }
            }
        }
    }
}
