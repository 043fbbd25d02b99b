use std::time::Instant;

use gwpt::geometry::ElementaryGeometry;
use gwpt::lattice::{LatticeVector, RationalPoint};
use gwpt::poset::{four_valent_star, one_step_degenerations, smaller_stars};
use gwpt::stars::{Star, StarEquivalence, StarRay};

mod common;
use common::normalized_star;

fn star_in(g: ElementaryGeometry, base: [i64; 3], rays: &[([i64; 3], u64)]) -> Star {
    let rays = rays.iter().map(|(d, w)| StarRay::new(LatticeVector::from_i64(*d), *w)).collect();
    Star::new(g, RationalPoint::from_i64(base), rays, 0).unwrap()
}

fn battery() -> Vec<Star> {
    let mut out: Vec<Star> = (1..=6).map(|n| four_valent_star(n).unwrap()).collect();
    for (n, m) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
        out.push(normalized_star(n, m));
    }
    out.push(Star::full_boundary(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1), ([-1, -1, 0], 1), ([0, 0, -1], 1)]).unwrap());
    out.push(Star::full_boundary(&[([1, 0, 0], 2), ([-1, 0, 0], 1), ([-1, 1, 0], 1), ([0, -1, 0], 1)]).unwrap());
    let three = ElementaryGeometry::three_non_boundary();
    out.push(star_in(three.clone(), [0, 0, 0], &[([1, 1, 1], 1), ([1, 2, 0], 1)]));
    out.push(star_in(three, [0, 0, 0], &[([1, 0, 0], 2), ([0, 1, 1], 1)]));
    let one = ElementaryGeometry::one_non_boundary(vec![[0, 0]]).unwrap();
    out.push(star_in(one, [0, 0, 0], &[([1, 0, 1], 1), ([-1, 0, 0], 1), ([0, 1, 0], 1), ([0, -1, 0], 1)]));
    out
}

#[test]
fn catalog_complexes_are_stable_balanced_and_visible() {
    let start = Instant::now();
    let mut total = 0;
    for s in battery() {
        for bound in [2, 3] {
            let cat = one_step_degenerations(&s, bound).unwrap();
            for c in &cat.complexes {
                assert!(c.is_stable() && c.is_balanced(), "{c}");
                assert!(c.is_visible(), "{c}");
                assert_eq!(c.asymptotic_star().unwrap(), s.merged());
                assert!(c.vertices().len() <= bound);
            }
            total += cat.complexes.len();
        }
    }
    assert!(total > 0);
    eprintln!("{total} complexes in {:?}", start.elapsed());
}

#[test]
fn degeneration_order_is_antisymmetric() {
    for n in 1..=4 {
        let v = four_valent_star(n).unwrap();
        let key = v.canonical_key(StarEquivalence::Translation);
        for w in smaller_stars(&v, 1, 3, StarEquivalence::Translation).unwrap() {
            let below = smaller_stars(&w, 1, 3, StarEquivalence::Translation).unwrap();
            assert!(below.iter().all(|x| x.canonical_key(StarEquivalence::Translation) != key), "{w}");
        }
    }
}

#[test]
fn smaller_stars_stabilize_in_depth() {
    for n in 1..=6 {
        let v = four_valent_star(n).unwrap();
        let sizes: Vec<usize> = (1..=4).map(|d| smaller_stars(&v, d, 3, StarEquivalence::Translation).unwrap().len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "n={n}: {sizes:?}");
        assert_eq!(sizes[2], sizes[3], "n={n}: {sizes:?}");
        let linear = smaller_stars(&v, 4, 3, StarEquivalence::Linear).unwrap().len();
        assert!(linear <= sizes[3]);
    }
}
