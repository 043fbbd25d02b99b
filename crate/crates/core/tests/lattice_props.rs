use gwpt::lattice::{
    hermite_normal_form, integer_kernel, rank, smith_normal_form, IntegerMatrix, LatticeVector,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::random_unimodular;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntegerMatrix {
    let entries = (0..rows * cols)
        .map(|_| if rng.gen_bool(0.2) { BigInt::zero() } else { BigInt::from(rng.gen_range(-50..=50)) })
        .collect();
    IntegerMatrix::new(rows, cols, entries).unwrap()
}

#[test]
fn smith_form_invariants_on_seeded_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m = random_matrix(&mut rng, r, c);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            assert!(if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        }
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        assert_eq!(s.rank(), rank(&m));
    }
}

#[test]
fn kernel_is_saturated_and_annihilated() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
        let m = random_matrix(&mut rng, r, c);
        let k = integer_kernel(&m);
        assert_eq!(k.rows(), c - rank(&m));
        if k.rows() == 0 {
            continue;
        }
        assert!(m.mul(&k.transpose()).unwrap().is_zero());
        // a saturated sublattice has all elementary divisors equal to one
        assert!(smith_normal_form(&k).diagonal().iter().all(|d| *d == BigInt::from(1)));
        assert_eq!(hermite_normal_form(&k), k);
    }
}

#[test]
fn unimodular_inverse_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let g = random_unimodular(&mut rng);
        let inv = g.inverse_unimodular().unwrap();
        assert_eq!(g.mul(&inv).unwrap(), IntegerMatrix::identity(3));
        let v = LatticeVector::from_i64([rng.gen_range(-9..10), rng.gen_range(-9..10), rng.gen_range(-9..10)]);
        assert_eq!(inv.apply(&g.apply(&v)), v);
    }
}
