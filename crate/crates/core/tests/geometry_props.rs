use gwpt::arith::Rational;
use gwpt::geometry::ElementaryGeometry;
use gwpt::lattice::{rank, smith_normal_form, IntegerMatrix, LatticeVector, RationalPoint};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_geometry(rng: &mut ChaCha8Rng) -> ElementaryGeometry {
    loop {
        let g = match rng.gen_range(0..4) {
            0 => Ok(ElementaryGeometry::full_boundary()),
            1 => {
                let mut psi = vec![[0, 0]];
                for _ in 0..rng.gen_range(0..3) {
                    psi.push([rng.gen_range(-2..3), rng.gen_range(-2..3)]);
                }
                ElementaryGeometry::one_non_boundary(psi)
            }
            2 => {
                let mut a = vec![0];
                let mut b = vec![0];
                for _ in 0..rng.gen_range(0..2) {
                    a.push(rng.gen_range(-2..3));
                }
                for _ in 0..rng.gen_range(0..2) {
                    b.push(rng.gen_range(-2..3));
                }
                ElementaryGeometry::two_non_boundary(a, b)
            }
            _ => Ok(ElementaryGeometry::three_non_boundary()),
        };
        if let Ok(g) = g {
            return g;
        }
    }
}

/// Points on faces of every dimension: random points projected up onto the
/// boundary half of the time.
fn random_point(rng: &mut ChaCha8Rng, g: &ElementaryGeometry) -> RationalPoint {
    loop {
        let mut c = [0i64; 3].map(|_| rng.gen_range(-3..4));
        if rng.gen_bool(0.5) {
            c = c.map(|x| if rng.gen_bool(0.4) { 0 } else { x });
        }
        let p = RationalPoint::from_i64(c);
        if g.contains_point(&p) {
            return p;
        }
        let mut lifted = p.clone();
        for _ in 0..3 {
            for i in 0..3 {
                if !g.contains_point(&lifted) {
                    let mut q = lifted.clone();
                    q.0[i] = q.0[i].clone() + Rational::from_integer(1.into());
                    lifted = q;
                }
            }
        }
        if g.contains_point(&lifted) {
            return lifted;
        }
    }
}

#[test]
fn translations_preserve_the_geometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let g = random_geometry(&mut rng);
        let p = random_point(&mut rng, &g);
        for w in &g.translation_group().generators {
            assert!(g.contains_point(&p.add_vector(w)), "{g}: {p} + {w}");
            assert!(g.contains_point(&p.add_vector(&-w)), "{g}: {p} - {w}");
        }
        let origin = RationalPoint::origin();
        if g.contains_point(&origin) {
            for w in &g.translation_group().generators {
                assert!(g.contains_point(&w.to_rational()) && g.contains_point(&(-w).to_rational()));
            }
        }
    }
}

#[test]
fn collapsed_span_and_factoring_functionals_are_complementary() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let g = random_geometry(&mut rng);
        let p = random_point(&mut rng, &g);
        let c = g.collapsed_directions(&p).unwrap();
        let rc = if c.is_empty() { 0 } else { rank(&IntegerMatrix::from_vectors_as_rows(&c)) };
        let f = g.factoring_functionals(&p).unwrap();
        let rf = if f.is_empty() { 0 } else { rank(&IntegerMatrix::from_vectors_as_rows(&f)) };
        assert_eq!(rc + rf, 3, "{g} at {p}");
        if matches!(g.kind(), gwpt::geometry::GeometryKind::FullBoundary) {
            assert!(c.is_empty());
        }
    }
}

#[test]
fn cone_lattices_are_saturated_and_tangent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let g = random_geometry(&mut rng);
        let p = random_point(&mut rng, &g);
        let basis = g.cone_lattice(&p).unwrap();
        if basis.is_empty() {
            continue;
        }
        let m = IntegerMatrix::from_vectors_as_rows(&basis);
        assert!(smith_normal_form(&m).diagonal().iter().all(|d| *d == BigInt::from(1)));
        for _ in 0..5 {
            let w = basis.iter().fold(LatticeVector::zero(), |acc, b| &acc + &b.scale(&BigInt::from(rng.gen_range(-3..4))));
            if w.is_zero() {
                continue;
            }
            let (w0, _) = w.primitive_part().unwrap();
            let mut rows = basis.clone();
            rows.push(w0.clone());
            assert_eq!(rank(&IntegerMatrix::from_vectors_as_rows(&rows)), basis.len());
            // a tangent direction along the face moves both ways inside the geometry
            assert!(g.admits_direction(&p, &w0).unwrap() && g.admits_direction(&p, &-&w0).unwrap());
        }
    }
}
