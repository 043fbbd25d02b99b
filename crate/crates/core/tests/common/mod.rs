#![allow(dead_code)]

use gwpt::lattice::{IntegerMatrix, RationalPoint};
use gwpt::stars::{ChowOneComplex, ComplexEdge, Star, Vertex};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_unimodular(rng: &mut ChaCha8Rng) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(3);
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i == j {
            continue;
        }
        let k = rng.gen_range(-2..=2);
        let mut e = IntegerMatrix::identity(3);
        e.set(i, j, BigInt::from(k));
        m = e.mul(&m).unwrap();
    }
    if rng.gen_bool(0.5) {
        let mut flip = IntegerMatrix::identity(3);
        flip.set(2, 2, BigInt::from(-1));
        m = flip.mul(&m).unwrap();
    }
    m
}

/// Rays `(1,0,0)` weight `n`, `(0,1,0)` weight `mn`, `(-1,-m,0)` weight `n`.
pub fn normalized_star(n: u64, m: u64) -> Star {
    Star::full_boundary(&[([1, 0, 0], n), ([0, 1, 0], m * n), ([-1, -(m as i64), 0], n)]).unwrap()
}

/// Splits edge `e` at its midpoint with a bare two-valent vertex.
pub fn subdivide(c: &ChowOneComplex, e: usize) -> ChowOneComplex {
    let edge = &c.edges()[e];
    let [a, b] = edge.endpoints;
    let (pa, pb) = (&c.vertices()[a].position, &c.vertices()[b].position);
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let mid = RationalPoint([0, 1, 2].map(|i| (pa.coord(i) + pb.coord(i)) * &half));
    let mut vertices = c.vertices().to_vec();
    vertices.push(Vertex::at(mid));
    let m = vertices.len() - 1;
    let mut edges = c.edges().to_vec();
    edges[e] = ComplexEdge { endpoints: [a, m], weight: edge.weight };
    edges.push(ComplexEdge { endpoints: [m, b], weight: edge.weight });
    ChowOneComplex::connected(c.geometry().clone(), vertices, edges, c.rays().to_vec()).unwrap()
}
