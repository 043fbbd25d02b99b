use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{cross_matrix, Star, StarError, StarRay};
use crate::geometry::{ElementaryGeometry, GeometryKind};
use crate::lattice::{integer_kernel, IntegerMatrix, LatticeVector, RationalPoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub position: RationalPoint,
    #[serde(default)]
    pub carries_class: bool,
    #[serde(default)]
    pub markings: BTreeSet<u32>,
}

impl Vertex {
    pub fn at(position: RationalPoint) -> Self {
        Self { position, carries_class: false, markings: BTreeSet::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexEdge {
    pub endpoints: [usize; 2],
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexRay {
    pub vertex: usize,
    pub dir: LatticeVector,
    pub weight: u64,
}

/// A weighted 1-complex in the geometry: vertices, bounded edges and
/// unbounded rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawComplex")]
pub struct ChowOneComplex {
    #[serde(default)]
    geometry: ElementaryGeometry,
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<ComplexEdge>,
    #[serde(default)]
    rays: Vec<ComplexRay>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    disjoint_union: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    #[serde(default)]
    geometry: ElementaryGeometry,
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<ComplexEdge>,
    #[serde(default)]
    rays: Vec<ComplexRay>,
    #[serde(default)]
    disjoint_union: bool,
}

impl TryFrom<RawComplex> for ChowOneComplex {
    type Error = StarError;
    fn try_from(r: RawComplex) -> Result<Self, StarError> {
        let mut c = ChowOneComplex::new(r.geometry, r.vertices, r.edges, r.rays)?;
        if r.disjoint_union {
            c.disjoint_union = true;
        } else {
            c.check_connected()?;
        }
        Ok(c)
    }
}

/// A half-edge leaving a vertex: its primitive direction and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub dir: LatticeVector,
    pub weight: u64,
    /// The edge index, or `None` for an unbounded ray.
    pub edge: Option<usize>,
}

impl ChowOneComplex {
    /// Validates everything except connectivity.
    fn new(geometry: ElementaryGeometry, vertices: Vec<Vertex>, edges: Vec<ComplexEdge>, rays: Vec<ComplexRay>) -> Result<Self, StarError> {
        if vertices.is_empty() {
            return Err(StarError::Invalid("complex has no vertices".into()));
        }
        for v in &vertices {
            if !geometry.contains_point(&v.position) {
                return Err(StarError::Invalid(format!("vertex {} lies outside the geometry", v.position)));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            let [a, b] = e.endpoints;
            if a >= vertices.len() || b >= vertices.len() {
                return Err(StarError::Invalid(format!("edge {i} references a missing vertex")));
            }
            if a == b || vertices[a].position == vertices[b].position {
                return Err(StarError::Invalid(format!("edge {i} has coincident endpoints")));
            }
            if e.weight == 0 {
                return Err(StarError::Invalid(format!("edge {i} has weight 0")));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            if r.vertex >= vertices.len() {
                return Err(StarError::Invalid(format!("ray {i} references a missing vertex")));
            }
            if r.weight == 0 || !r.dir.is_primitive() {
                return Err(StarError::Invalid(format!("ray {i} needs a primitive direction and positive weight")));
            }
            // the geometries are convex cones up to translation, so rays must lie in the recession cone
            if !geometry.contains_point(&r.dir.to_rational()) {
                return Err(StarError::Invalid(format!("ray {i} with direction {} leaves the geometry", r.dir)));
            }
        }
        Ok(Self { geometry, vertices, edges, rays, disjoint_union: false })
    }

    pub fn connected(geometry: ElementaryGeometry, vertices: Vec<Vertex>, edges: Vec<ComplexEdge>, rays: Vec<ComplexRay>) -> Result<Self, StarError> {
        let c = Self::new(geometry, vertices, edges, rays)?;
        c.check_connected()?;
        Ok(c)
    }

    /// A star viewed as a one-vertex complex.
    pub fn from_star(s: &Star) -> Self {
        let mut v = Vertex::at(s.base().clone());
        v.markings = (0..s.internal_markings()).collect();
        let rays = s.rays().iter().map(|r| ComplexRay { vertex: 0, dir: r.dir.clone(), weight: r.weight }).collect();
        Self { geometry: s.geometry().clone(), vertices: vec![v], edges: vec![], rays, disjoint_union: false }
    }

    fn check_connected(&self) -> Result<(), StarError> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                let [a, b] = e.endpoints;
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        if seen.iter().all(|s| *s) {
            Ok(())
        } else {
            Err(StarError::Invalid("complex is disconnected; set disjoint_union to allow this".into()))
        }
    }

    pub fn geometry(&self) -> &ElementaryGeometry {
        &self.geometry
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[ComplexEdge] {
        &self.edges
    }

    pub fn rays(&self) -> &[ComplexRay] {
        &self.rays
    }

    /// Primitive direction from endpoint `from` along edge `e`.
    pub fn edge_direction(&self, e: usize, from: usize) -> LatticeVector {
        let [a, b] = self.edges[e].endpoints;
        let to = if from == a { b } else { a };
        self.vertices[to].position.direction_from(&self.vertices[from].position).expect("distinct endpoints").0
    }

    pub fn incidences(&self, v: usize) -> Vec<Incidence> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.endpoints.contains(&v) {
                out.push(Incidence { dir: self.edge_direction(i, v), weight: e.weight, edge: Some(i) });
            }
        }
        for r in self.rays.iter().filter(|r| r.vertex == v) {
            out.push(Incidence { dir: r.dir.clone(), weight: r.weight, edge: None });
        }
        out
    }

    pub fn star_at_vertex(&self, v: usize) -> Result<Star, StarError> {
        if v >= self.vertices.len() {
            return Err(StarError::Invalid(format!("no vertex {v}")));
        }
        let rays = self.incidences(v).into_iter().map(|i| StarRay::new(i.dir, i.weight)).collect();
        let vert = &self.vertices[v];
        Ok(Star::new(self.geometry.clone(), vert.position.clone(), rays, vert.markings.len() as u32)?.merged())
    }

    pub fn asymptotic_star(&self) -> Result<Star, StarError> {
        let rays = self.rays.iter().map(|r| StarRay::new(r.dir.clone(), r.weight)).collect();
        let markings: BTreeSet<u32> = self.vertices.iter().flat_map(|v| v.markings.iter().copied()).collect();
        Ok(Star::new(self.geometry.clone(), RationalPoint::origin(), rays, markings.len() as u32)?.merged())
    }

    pub fn is_balanced(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.star_at_vertex(v).map(|s| s.is_balanced()).unwrap_or(false))
    }

    /// Injectivity of `L_Gamma -> prod L_E x prod L_H`, where `L_Gamma` is the
    /// set of vertex tangent vectors agreeing modulo every edge direction.
    pub fn is_visible(&self) -> bool {
        let bases: Vec<Vec<LatticeVector>> = self
            .vertices
            .iter()
            .map(|v| self.geometry.cone_lattice(&v.position).expect("vertex lies in the geometry"))
            .collect();
        let offsets: Vec<usize> = bases.iter().scan(0, |acc, b| { let o = *acc; *acc += b.len(); Some(o) }).collect();
        let width: usize = bases.iter().map(Vec::len).sum();
        if width == 0 {
            return true;
        }
        let block = |v: usize, dir: &LatticeVector, sign: i64, row: &mut Vec<Vec<BigInt>>| {
            if bases[v].is_empty() {
                return;
            }
            let m = cross_matrix(dir).mul(&IntegerMatrix::from_vectors_as_cols(&bases[v])).unwrap();
            for (r, out) in row.iter_mut().enumerate() {
                for j in 0..bases[v].len() {
                    out[offsets[v] + j] += m.get(r, j) * sign;
                }
            }
        };
        let zero_rows = || vec![vec![BigInt::from(0); width]; 3];

        let mut compat: Vec<Vec<BigInt>> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let [a, b] = e.endpoints;
            let dir = self.edge_direction(i, a);
            let mut rows = zero_rows();
            block(a, &dir, 1, &mut rows);
            block(b, &dir, -1, &mut rows);
            compat.extend(rows);
        }
        let l_gamma = if compat.is_empty() {
            IntegerMatrix::identity(width)
        } else {
            integer_kernel(&IntegerMatrix::from_rows(&compat).unwrap())
        };
        if l_gamma.rows() == 0 {
            return true;
        }

        let mut g: Vec<Vec<BigInt>> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let a = e.endpoints[0];
            let mut rows = zero_rows();
            block(a, &self.edge_direction(i, a), 1, &mut rows);
            g.extend(rows);
        }
        for r in &self.rays {
            let mut rows = zero_rows();
            block(r.vertex, &r.dir, 1, &mut rows);
            g.extend(rows);
        }
        if g.is_empty() {
            return false;
        }
        let composed = IntegerMatrix::from_rows(&g).unwrap().mul(&l_gamma.transpose()).unwrap();
        integer_kernel(&composed).rows() == 0
    }

    fn unstable_pair(&self, v: usize) -> Option<(Incidence, Incidence)> {
        let vert = &self.vertices[v];
        if vert.carries_class || !vert.markings.is_empty() {
            return None;
        }
        let inc = self.incidences(v);
        let [a, b] = <[Incidence; 2]>::try_from(inc).ok()?;
        if a.dir != -&b.dir {
            return None;
        }
        let p = &vert.position;
        let here = self.geometry.cone_lattice(p).ok()?;
        let fwd = self.geometry.cone_lattice_along(p, &a.dir).ok()?;
        let back = self.geometry.cone_lattice_along(p, &b.dir).ok()?;
        (here == fwd && here == back).then_some((a, b))
    }

    pub fn is_vertex_unstable(&self, v: usize) -> bool {
        self.unstable_pair(v).is_some()
    }

    pub fn is_stable(&self) -> bool {
        (0..self.vertices.len()).all(|v| !self.is_vertex_unstable(v))
    }

    /// Erases unstable vertices until none can be erased. A vertex whose two
    /// half-edges are both unbounded rays is kept, since erasing it would
    /// leave no vertex on that line.
    pub fn stabilize(&self) -> Result<Self, StarError> {
        let mut cur = self.clone();
        'outer: loop {
            for v in 0..cur.vertices.len() {
                let Some((a, b)) = cur.unstable_pair(v) else { continue };
                if a.edge.is_none() && b.edge.is_none() {
                    continue;
                }
                if a.weight != b.weight {
                    return Err(StarError::Invalid(format!(
                        "vertex {v} is erasable but its weights {} and {} differ",
                        a.weight, b.weight
                    )));
                }
                cur = cur.erase(v, &a, &b);
                continue 'outer;
            }
            return Ok(cur);
        }
    }

    fn erase(&self, v: usize, a: &Incidence, b: &Incidence) -> Self {
        let other = |e: usize| {
            let [x, y] = self.edges[e].endpoints;
            if x == v { y } else { x }
        };
        let mut edges: Vec<ComplexEdge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != a.edge && Some(*i) != b.edge)
            .map(|(_, e)| e.clone())
            .collect();
        let mut rays: Vec<ComplexRay> = self.rays.iter().filter(|r| r.vertex != v).cloned().collect();
        match (a.edge, b.edge) {
            (Some(ea), Some(eb)) => edges.push(ComplexEdge { endpoints: [other(ea), other(eb)], weight: a.weight }),
            (Some(e), None) => rays.push(ComplexRay { vertex: other(e), dir: b.dir.clone(), weight: a.weight }),
            (None, Some(e)) => rays.push(ComplexRay { vertex: other(e), dir: a.dir.clone(), weight: a.weight }),
            (None, None) => unreachable!("two-ray vertices are kept"),
        }
        let shift = |i: usize| if i > v { i - 1 } else { i };
        for e in &mut edges {
            e.endpoints = e.endpoints.map(shift);
        }
        for r in &mut rays {
            r.vertex = shift(r.vertex);
        }
        let mut vertices = self.vertices.clone();
        vertices.remove(v);
        Self { geometry: self.geometry.clone(), vertices, edges, rays, disjoint_union: self.disjoint_union }
    }

    /// Translates every vertex by `-position(v)` so that vertex `v` sits at 0.
    /// Only valid when that translation preserves the geometry.
    pub fn centered_at(&self, v: usize) -> Result<Self, StarError> {
        let shift = self.vertices[v].position.clone();
        if self.geometry.kind() != GeometryKind::FullBoundary {
            let ok = shift.is_integral()
                && self.geometry.translation_group().contains(&LatticeVector(shift.0.clone().map(|r| r.to_integer())));
            if !ok {
                return Err(StarError::Precondition("centering would leave the geometry".into()));
            }
        }
        let mut out = self.clone();
        for vert in &mut out.vertices {
            vert.position = RationalPoint([0, 1, 2].map(|i| vert.position.coord(i) - shift.coord(i)));
        }
        Ok(out)
    }

    /// A key equal for complexes that differ only by vertex, edge and ray order.
    pub fn canonical_key(&self) -> String {
        let mut verts: Vec<String> = (0..self.vertices.len())
            .map(|v| {
                let vert = &self.vertices[v];
                let mut inc: Vec<String> = self.incidences(v).iter().map(|i| format!("{}x{}{}", i.dir, i.weight, if i.edge.is_some() { "e" } else { "r" })).collect();
                inc.sort();
                format!("{}{}{:?}[{}]", vert.position, if vert.carries_class { "*" } else { "" }, vert.markings, inc.join(","))
            })
            .collect();
        verts.sort();
        verts.join("|")
    }
}

impl fmt::Display for ChowOneComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: [i64; 3]) -> RationalPoint {
        RationalPoint::from_i64(v)
    }

    fn ray(vertex: usize, d: [i64; 3], weight: u64) -> ComplexRay {
        ComplexRay { vertex, dir: LatticeVector::from_i64(d), weight }
    }

    fn line_with_middle_vertex() -> ChowOneComplex {
        ChowOneComplex::connected(
            ElementaryGeometry::full_boundary(),
            vec![Vertex::at(pt([0, 0, 0])), Vertex::at(pt([1, 0, 0]))],
            vec![ComplexEdge { endpoints: [0, 1], weight: 1 }],
            vec![ray(0, [-1, 0, 0], 1), ray(1, [1, 0, 0], 1)],
        )
        .unwrap()
    }

    #[test]
    fn straight_line_is_unstable_and_invisible() {
        let c = line_with_middle_vertex();
        assert!(!c.is_stable());
        assert!(!c.is_visible());
        let s = c.stabilize().unwrap();
        assert_eq!(s.vertices().len(), 1);
        assert_eq!(s.stabilize().unwrap(), s);
        assert_eq!(s.asymptotic_star().unwrap(), c.asymptotic_star().unwrap());
    }

    #[test]
    fn marked_vertex_is_kept() {
        let mut c = line_with_middle_vertex();
        c.vertices[1].markings.insert(1);
        let s = c.stabilize().unwrap();
        assert_eq!(s.vertices().len(), 1);
        assert!(s.vertices()[0].markings.contains(&1));
        c.vertices[0].markings.insert(2);
        assert_eq!(c.stabilize().unwrap(), c);
    }

    #[test]
    fn weight_mismatch_rejected() {
        let c = ChowOneComplex::connected(
            ElementaryGeometry::full_boundary(),
            vec![Vertex::at(pt([0, 0, 0])), Vertex::at(pt([1, 0, 0]))],
            vec![ComplexEdge { endpoints: [0, 1], weight: 2 }],
            vec![ray(0, [-1, 0, 0], 1), ray(1, [1, 0, 0], 2)],
        )
        .unwrap();
        assert!(c.stabilize().is_err());
    }

    #[test]
    fn case_one_complex() {
        let n = 3;
        let c = ChowOneComplex::connected(
            ElementaryGeometry::full_boundary(),
            vec![Vertex::at(pt([0, 0, 0])), Vertex::at(pt([1, 1, n]))],
            vec![ComplexEdge { endpoints: [0, 1], weight: 1 }],
            vec![ray(0, [1, 0, 0], 1), ray(0, [-2, -1, -n], 1), ray(1, [0, 1, 0], 1), ray(1, [1, 0, n], 1)],
        )
        .unwrap();
        assert!(c.is_stable() && c.is_visible() && c.is_balanced());
        let asym = c.asymptotic_star().unwrap();
        assert_eq!(asym.valence(), 4);
        let v1 = c.star_at_vertex(1).unwrap();
        let dirs: BTreeSet<LatticeVector> = v1.rays().iter().map(|r| r.dir.clone()).collect();
        assert!(dirs.contains(&LatticeVector::from_i64([-1, -1, -n])));
    }

    #[test]
    fn single_vertex_matches_star() {
        let s = Star::full_boundary(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([-1, -1, 0], 1)]).unwrap();
        let c = ChowOneComplex::from_star(&s);
        assert_eq!(c.is_visible(), s.is_visible());
        assert_eq!(c.star_at_vertex(0).unwrap(), s.merged());
        let lin = Star::full_boundary(&[([1, 0, 0], 1), ([-1, 0, 0], 1)]).unwrap();
        assert_eq!(ChowOneComplex::from_star(&lin).is_visible(), lin.is_visible());
    }

    #[test]
    fn merged_asymptotic_rays() {
        let c = ChowOneComplex::connected(
            ElementaryGeometry::full_boundary(),
            vec![Vertex::at(pt([0, 0, 0])), Vertex::at(pt([0, 1, 0]))],
            vec![ComplexEdge { endpoints: [0, 1], weight: 1 }],
            vec![ray(0, [1, 0, 0], 1), ray(1, [1, 0, 0], 2)],
        )
        .unwrap();
        let s = c.asymptotic_star().unwrap();
        assert_eq!(s.rays(), &[StarRay::new(LatticeVector::from_i64([1, 0, 0]), 3)]);
    }

    #[test]
    fn json_roundtrip() {
        let c = line_with_middle_vertex();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ChowOneComplex>(&text).unwrap(), c);
        let disconnected = r#"{"vertices":[{"position":[0,0,0]},{"position":[1,0,0]}]}"#;
        assert!(serde_json::from_str::<ChowOneComplex>(disconnected).is_err());
    }
}
