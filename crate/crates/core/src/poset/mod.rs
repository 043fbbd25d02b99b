//! Degenerations of stars, the order they induce, and the rigid curves used
//! in the trivalent recursion.

mod curves;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::geometry::GeometryKind;
use crate::lattice::{LatticeVector, RationalPoint};
use crate::stars::{ChowOneComplex, ComplexEdge, ComplexRay, Star, StarEquivalence, StarError, Vertex};

pub use curves::{enumerate_4valent_curves, four_valent_star, ConstraintCase};

type V3 = [i64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: V3, k: i64) -> V3 {
    a.map(|x| x * k)
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: V3, b: V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

fn content(a: V3) -> i64 {
    gcd(gcd(a[0], a[1]), a[2])
}

fn to_v3(v: &LatticeVector) -> Result<V3, StarError> {
    let conv = |b: &BigInt| b.to_i64().filter(|x| x.abs() < 1 << 20);
    match (conv(&v[0]), conv(&v[1]), conv(&v[2])) {
        (Some(a), Some(b), Some(c)) => Ok([a, b, c]),
        _ => Err(StarError::Invalid(format!("ray {v} is too large to enumerate"))),
    }
}

fn point(v: V3) -> RationalPoint {
    RationalPoint::from_i64(v)
}

/// All stable complexes with a few vertices whose asymptotic star is the
/// source star.
#[derive(Clone, Debug, Serialize)]
pub struct DegenerationCatalog {
    pub source: Star,
    pub vertex_bound: usize,
    pub complexes: Vec<ChowOneComplex>,
}

/// Ways to write `n` as an ordered sum of `parts` nonnegative integers.
fn compositions(n: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `split[i][j]`: weight of ray `i` placed at vertex `j`.
fn weight_splits(weights: &[u64], parts: usize) -> Vec<Vec<Vec<u64>>> {
    weights.iter().map(|w| compositions(*w, parts)).multi_cartesian_product().collect()
}

struct Draft {
    positions: Vec<V3>,
    edges: Vec<(usize, usize, V3)>,
}

struct Enumerator<'a> {
    source: &'a Star,
    dirs: Vec<V3>,
    weights: Vec<u64>,
    target: (Vec<(LatticeVector, u64)>, u32),
    seen: BTreeSet<String>,
    out: Vec<ChowOneComplex>,
}

impl<'a> Enumerator<'a> {
    fn new(source: &'a Star) -> Result<Self, StarError> {
        let merged = source.merged();
        let dirs = merged.rays().iter().map(|r| to_v3(&r.dir)).collect::<Result<Vec<_>, _>>()?;
        let weights = merged.rays().iter().map(|r| r.weight).collect();
        let target = (merged.rays().iter().map(|r| (r.dir.clone(), r.weight)).collect(), merged.internal_markings());
        Ok(Self { source, dirs, weights, target, seen: BTreeSet::new(), out: Vec::new() })
    }

    fn vertex_sum(&self, split: &[Vec<u64>], j: usize) -> V3 {
        self.dirs.iter().zip(split).fold([0; 3], |acc, (d, w)| add(acc, scale(*d, w[j] as i64)))
    }

    fn offer(&mut self, draft: Draft, split: &[Vec<u64>]) {
        let nv = draft.positions.len();
        let geometry = self.source.geometry().clone();
        let mut rays = Vec::new();
        for (i, d) in self.dirs.iter().enumerate() {
            for j in 0..nv {
                if split[i][j] > 0 {
                    rays.push(ComplexRay { vertex: j, dir: LatticeVector::from_i64(*d), weight: split[i][j] });
                }
            }
        }
        let edges: Vec<ComplexEdge> = draft
            .edges
            .iter()
            .map(|(a, b, w)| ComplexEdge { endpoints: [*a, *b], weight: content(*w) as u64 })
            .collect();
        let k = self.source.internal_markings();
        for code in 0..(nv as u64).pow(k) {
            let owners: Vec<usize> = (0..k).map(|i| ((code / (nv as u64).pow(i)) % nv as u64) as usize).collect();
            let mut vertices: Vec<Vertex> = draft.positions.iter().map(|p| Vertex::at(point(*p))).collect();
            for (label, owner) in owners.iter().enumerate() {
                vertices[*owner].markings.insert(label as u32);
            }
            let Ok(c) = ChowOneComplex::connected(geometry.clone(), vertices, edges.clone(), rays.clone()) else {
                continue;
            };
            if !self.acceptable(&c) {
                continue;
            }
            let key = translation_free_key(&c);
            if self.seen.insert(key) {
                self.out.push(c);
            }
        }
    }

    fn acceptable(&self, c: &ChowOneComplex) -> bool {
        for v in 0..c.vertices().len() {
            let dirs: Vec<LatticeVector> = c.incidences(v).into_iter().map(|i| i.dir).collect();
            if dirs.iter().duplicates().next().is_some() {
                return false;
            }
        }
        if !c.is_balanced() || !c.is_stable() {
            return false;
        }
        match c.asymptotic_star() {
            Ok(a) => {
                let got: Vec<(LatticeVector, u64)> = a.rays().iter().map(|r| (r.dir.clone(), r.weight)).collect();
                (got, a.internal_markings()) == self.target
            }
            Err(_) => false,
        }
    }

    fn two_vertex_full(&mut self) {
        for split in weight_splits(&self.weights, 2) {
            let s0 = self.vertex_sum(&split, 0);
            let w = scale(s0, -1);
            if w == [0; 3] {
                continue;
            }
            let p1 = w.map(|x| x / content(w));
            self.offer(Draft { positions: vec![[0; 3], p1], edges: vec![(0, 1, w)] }, &split);
        }
    }

    fn three_vertex_full(&mut self) {
        for split in weight_splits(&self.weights, 3) {
            let s: Vec<V3> = (0..3).map(|j| self.vertex_sum(&split, j)).collect();
            // path 0 - 1 - 2
            let w01 = scale(s[0], -1);
            let w12 = s[2];
            if w01 != [0; 3] && w12 != [0; 3] {
                let p1 = w01.map(|x| x / content(w01));
                let p2 = add(p1, w12.map(|x| x / content(w12)));
                if p2 != [0; 3] {
                    self.offer(Draft { positions: vec![[0; 3], p1, p2], edges: vec![(0, 1, w01), (1, 2, w12)] }, &split);
                }
            }
            // triangle: w01 = c, w12 = c - s1, w20 = c + s0 with c strictly inside conv{0, s1, -s0}
            let (s0, s1) = (s[0], s[1]);
            let normal = cross(s1, s0);
            if normal == [0; 3] {
                continue;
            }
            let corners = [[0; 3], s1, scale(s0, -1)];
            let lo: V3 = [0, 1, 2].map(|i| corners.iter().map(|c| c[i]).min().unwrap());
            let hi: V3 = [0, 1, 2].map(|i| corners.iter().map(|c| c[i]).max().unwrap());
            for x in lo[0]..=hi[0] {
                for y in lo[1]..=hi[1] {
                    for z in lo[2]..=hi[2] {
                        let c = [x, y, z];
                        if dot(c, normal) != 0 {
                            continue;
                        }
                        if let Some(draft) = triangle(c, sub(c, s1), add(c, s0)) {
                            self.offer(draft, &split);
                        }
                    }
                }
            }
        }
    }

    fn functionals(&self, p: V3) -> Option<Vec<V3>> {
        let fs = self.source.geometry().factoring_functionals(&point(p)).ok()?;
        fs.iter().map(|f| to_v3(f).ok()).collect()
    }

    /// Non-full geometries: the first vertex stays at the base and the
    /// second sits one primitive step away; balancing is checked modulo the
    /// collapsed directions at each vertex.
    fn two_vertex_general(&mut self, base: V3) {
        let bound: i64 = self.dirs.iter().zip(&self.weights).map(|(d, w)| *w as i64 * d.iter().map(|x| x.abs()).max().unwrap()).sum::<i64>().max(1);
        let splits = weight_splits(&self.weights, 2);
        let sums: Vec<[V3; 2]> = splits.iter().map(|sp| [self.vertex_sum(sp, 0), self.vertex_sum(sp, 1)]).collect();
        let Some(at_base) = self.functionals(base) else { return };
        for x in -bound..=bound {
            for y in -bound..=bound {
                for z in -bound..=bound {
                    let w = [x, y, z];
                    if w == [0; 3] {
                        continue;
                    }
                    let p1 = add(base, w.map(|t| t / content(w)));
                    if !self.source.geometry().contains_point(&point(p1)) {
                        continue;
                    }
                    let Some(at_p1) = self.functionals(p1) else { continue };
                    for (split, [s0, s1]) in splits.iter().zip(&sums) {
                        // balancing at both ends, checked before building anything
                        let (b0, b1) = (add(*s0, w), sub(*s1, w));
                        if at_base.iter().any(|f| dot(*f, b0) != 0) || at_p1.iter().any(|f| dot(*f, b1) != 0) {
                            continue;
                        }
                        self.offer(Draft { positions: vec![base, p1], edges: vec![(0, 1, w)] }, split);
                    }
                }
            }
        }
    }
}

/// Triangle with weighted edge vectors `w1: 0->1`, `w2: 1->2`, `w3: 2->0`.
fn triangle(w1: V3, w2: V3, w3: V3) -> Option<Draft> {
    if [w1, w2, w3].contains(&[0; 3]) {
        return None;
    }
    let n = cross(w1, w2);
    if n == [0; 3] {
        return None;
    }
    let t = [dot(cross(w2, w3), n), dot(cross(w3, w1), n), dot(n, n)];
    if t.iter().any(|x| *x <= 0) {
        return None;
    }
    let g = gcd(gcd(t[0], t[1]), t[2]);
    let t = t.map(|x| x / g);
    let p1 = scale(w1, t[0]);
    let p2 = add(p1, scale(w2, t[1]));
    debug_assert_eq!(add(p2, scale(w3, t[2])), [0; 3]);
    Some(Draft { positions: vec![[0; 3], p1, p2], edges: vec![(0, 1, w1), (1, 2, w2), (2, 0, w3)] })
}

/// Canonical key of a complex up to translation: the smallest key over all
/// choices of the vertex moved to the origin.
fn translation_free_key(c: &ChowOneComplex) -> String {
    (0..c.vertices().len())
        .filter_map(|v| c.centered_at(v).ok())
        .map(|x| x.canonical_key())
        .min()
        .unwrap_or_else(|| c.canonical_key())
}

pub fn one_step_degenerations(s: &Star, vertex_bound: usize) -> Result<DegenerationCatalog, StarError> {
    if !s.is_balanced() {
        return Err(StarError::Precondition("star is not balanced".into()));
    }
    if !(2..=3).contains(&vertex_bound) {
        return Err(StarError::Precondition(format!("vertex bound must be 2 or 3, got {vertex_bound}")));
    }
    let mut e = Enumerator::new(s)?;
    if s.geometry().kind() == GeometryKind::FullBoundary {
        e.two_vertex_full();
        if vertex_bound >= 3 {
            e.three_vertex_full();
        }
    } else {
        let base = s.base();
        if !base.is_integral() {
            return Err(StarError::Precondition("non-full geometries need an integral base point".into()));
        }
        let b = LatticeVector(base.0.clone().map(|r| r.to_integer()));
        e.two_vertex_general(to_v3(&b)?);
    }
    let mut complexes = e.out;
    complexes.sort_by_cached_key(translation_free_key);
    Ok(DegenerationCatalog { source: s.clone(), vertex_bound, complexes })
}

/// Stars reachable from `s` through at most `depth` rounds of degeneration,
/// each a vertex star of a degeneration of an earlier star. Stars are
/// identified up to `equivalence` and based at a canonical point.
pub fn smaller_stars(s: &Star, depth: usize, vertex_bound: usize, equivalence: StarEquivalence) -> Result<Vec<Star>, StarError> {
    let source_key = s.canonical_key(equivalence);
    let mut found: BTreeMap<String, Star> = BTreeMap::new();
    let mut frontier = vec![s.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            let catalog = one_step_degenerations(t, vertex_bound)?;
            for c in &catalog.complexes {
                for v in 0..c.vertices().len() {
                    let star = c.star_at_vertex(v)?;
                    let star = star.translated_to(star.geometry().reduce_point(star.base()))?;
                    let key = star.canonical_key(equivalence);
                    if key == source_key || found.contains_key(&key) {
                        continue;
                    }
                    found.insert(key, star.clone());
                    next.push(star);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(weight_splits(&[1, 2], 2).len(), 6);
    }

    #[test]
    fn trivalent_multiplicity_one_is_minimal() {
        let s = Star::full_boundary(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([-1, -1, 0], 1)]).unwrap();
        assert!(one_step_degenerations(&s, 2).unwrap().complexes.is_empty());
        assert!(one_step_degenerations(&s, 3).unwrap().complexes.is_empty());
        assert!(smaller_stars(&s, 1, 2, StarEquivalence::Translation).unwrap().is_empty());
    }

    #[test]
    fn four_valent_splits() {
        let n = 2;
        let s = four_valent_star(n).unwrap();
        let cat = one_step_degenerations(&s, 2).unwrap();
        let edge_dirs: BTreeSet<LatticeVector> = cat
            .complexes
            .iter()
            .map(|c| {
                let (dir, _) = c.vertices()[1].position.direction_from(&c.vertices()[0].position).unwrap();
                if dir.0.iter().find(|x| **x != BigInt::from(0)).unwrap() < &BigInt::from(0) { -&dir } else { dir }
            })
            .collect();
        assert!(edge_dirs.contains(&LatticeVector::from_i64([1, 1, n])));
        assert!(edge_dirs.contains(&LatticeVector::from_i64([1, 0, 1])));
    }

    #[test]
    fn triangle_found_in_three_vertex_search() {
        let s = four_valent_star(5).unwrap();
        let cat = one_step_degenerations(&s, 3).unwrap();
        let triangles = cat.complexes.iter().filter(|c| c.edges().len() == 3).count();
        assert!(triangles >= 2);
    }
}
