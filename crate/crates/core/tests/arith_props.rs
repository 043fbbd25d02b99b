use gwpt::arith::{rat, rat_int, GaussianRational, LaurentPoly, QForm, TruncatedULaurent};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_qform(rng: &mut ChaCha8Rng) -> QForm {
    let terms: Vec<(i64, _)> =
        (0..rng.gen_range(1..4)).map(|_| (rng.gen_range(-2..4), rat(rng.gen_range(-5..6), rng.gen_range(1..4)))).collect();
    let mut num = LaurentPoly::from_terms(terms);
    if num.is_zero() {
        num = LaurentPoly::one();
    }
    let factors: Vec<(u32, u32)> =
        (0..rng.gen_range(0..3)).map(|_| (rng.gen_range(1..4), rng.gen_range(1..3))).collect();
    QForm::with_denominator(num, &factors).unwrap()
}

#[test]
fn substitution_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let a = random_qform(&mut rng);
        let b = random_qform(&mut rng);
        let sa = a.substitute_q_to_u(6).unwrap();
        let sb = b.substitute_q_to_u(6).unwrap();
        let prod = a.mul(&b).substitute_q_to_u(6).unwrap();
        assert_eq!(prod.first_mismatch(&sa.product(&sb)), None, "product of {a} and {b}");
        let sum = a.add(&b).unwrap().substitute_q_to_u(6).unwrap();
        assert_eq!(sum.first_mismatch(&sa.add(&sb)), None, "sum of {a} and {b}");
    }
}

#[test]
fn denominator_factor_has_simple_zero() {
    for a in 1..8u32 {
        let f = QForm::from_poly(LaurentPoly::one_minus_neg_q_pow(a)).substitute_q_to_u(5).unwrap();
        assert_eq!(f.valuation(), Some(1));
        assert_eq!(f.coeff(1).unwrap(), GaussianRational::imag(rat_int(-(a as i64))));
    }
}

#[test]
fn inverse_of_one_minus_exp() {
    let one_minus = QForm::from_poly(LaurentPoly::one_minus_neg_q_pow(1)).substitute_q_to_u(8).unwrap();
    let inv = one_minus.inverse().unwrap();
    assert_eq!(inv.valuation(), Some(-1));
    assert_eq!(inv.coeff(-1).unwrap(), GaussianRational::i());
    let back = inv.product(&one_minus);
    assert_eq!(back.first_mismatch(&TruncatedULaurent::one(back.truncation_order())), None);
}

#[test]
fn squared_sine_over_cube() {
    let half_i = GaussianRational::imag(rat(1, 2));
    let e_plus = TruncatedULaurent::exp_series(&half_i, 10).unwrap();
    let e_minus = TruncatedULaurent::exp_series(&-half_i, 10).unwrap();
    // 2 sin(u/2) = -i (e^{iu/2} - e^{-iu/2})
    let two_sin = e_plus.sub(&e_minus).scale(&-GaussianRational::i());
    let f = two_sin.shift(-3);
    let sq = f.product(&f);
    assert_eq!(sq.valuation(), Some(-4));
    assert_eq!(sq.coeff(-4).unwrap(), GaussianRational::one());
    assert_eq!(sq.coeff(-3).unwrap(), GaussianRational::zero());
    assert_eq!(sq.coeff(-2).unwrap(), GaussianRational::real(rat(-1, 12)));
}

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (-6i64..7, 1i64..4, -6i64..7, 1i64..4).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

fn series() -> impl Strategy<Value = TruncatedULaurent> {
    (-3i64..3, prop::collection::vec(gauss(), 1..6), 0i64..4).prop_map(|(min, cs, extra)| {
        let order = min + cs.len() as i64 - 1 + extra;
        let terms: Vec<(i64, GaussianRational)> =
            cs.into_iter().enumerate().map(|(k, c)| (min + k as i64, c)).collect();
        TruncatedULaurent::from_terms(&terms, order)
    })
}

proptest! {
    #[test]
    fn product_commutes(a in series(), b in series()) {
        prop_assert_eq!(a.product(&b), b.product(&a));
    }

    #[test]
    fn product_associates(a in series(), b in series(), c in series()) {
        let l = a.product(&b).product(&c);
        let r = a.product(&b.product(&c));
        prop_assert_eq!(l.first_mismatch(&r), None);
    }

    #[test]
    fn exp_is_a_group_law(c1 in gauss(), c2 in gauss()) {
        let l = TruncatedULaurent::exp_series(&c1, 6).unwrap().product(&TruncatedULaurent::exp_series(&c2, 6).unwrap());
        let r = TruncatedULaurent::exp_series(&(&c1 + &c2), 6).unwrap();
        prop_assert_eq!(l.first_mismatch(&r), None);
    }

    #[test]
    fn inverse_is_two_sided(a in series()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        let p = a.product(&inv);
        prop_assert_eq!(p.first_mismatch(&TruncatedULaurent::one(p.truncation_order())), None);
    }

    #[test]
    fn text_roundtrip(a in series()) {
        let parsed: TruncatedULaurent = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }
}
