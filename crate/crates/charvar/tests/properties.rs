use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use charvar::alexander::jacobian_abelianized;
use charvar::census::canonical_rotation;
use charvar::free_group::FreeWord;
use charvar::ideal_engine::{groebner, MonomialOrder};
use charvar::monodromy::{parse_word, word_matrix, Twist, TwistWord};
use charvar::poly::Poly;
use charvar::trace_poly::{induced_automorphism, trace_polynomial};
use charvar::upoly::UPoly;

fn twist_word() -> impl Strategy<Value = TwistWord> {
    prop::collection::vec((prop::bool::ANY, -3i64..=3), 1..5).prop_map(|syl| {
        let letters = syl
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(is_a, e)| (if is_a { Twist::A } else { Twist::B }, e))
            .collect();
        TwistWord::new(false, letters)
    })
}

fn free_word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 0..9).prop_map(|l| FreeWord::from_letters(&l))
}

type MatZ = [[BigInt; 2]; 2];

fn mul_int(m: &MatZ, n: &MatZ) -> MatZ {
    let e = |i: usize, j: usize| &m[i][0] * &n[0][j] + &m[i][1] * &n[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn trace_int(m: &MatZ) -> BigInt {
    &m[0][0] + &m[1][1]
}

fn inverse_int(m: &MatZ) -> MatZ {
    [[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]]
}

/// Products `E(k₁) F(k₂) E(k₃)` of elementary unimodular matrices.
fn sl2_int() -> impl Strategy<Value = MatZ> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(k1, k2, k3)| {
        let z = |n: i64| BigInt::from(n);
        let e = |k: i64| [[z(1), z(k)], [z(0), z(1)]];
        let f = |k: i64| [[z(1), z(0)], [z(k), z(1)]];
        mul_int(&mul_int(&e(k1), &f(k2)), &e(k3))
    })
}

fn eval_word_int(w: &FreeWord, a: &MatZ, b: &MatZ) -> MatZ {
    let z = |n: i64| BigInt::from(n);
    let mut m = [[z(1), z(0)], [z(0), z(1)]];
    for &l in w.letters() {
        let g = match l {
            1 => a.clone(),
            -1 => inverse_int(a),
            2 => b.clone(),
            _ => inverse_int(b),
        };
        m = mul_int(&m, &g);
    }
    m
}

proptest! {
    #[test]
    fn word_display_round_trips(w in twist_word()) {
        let text = w.to_string();
        if !w.is_identity() {
            prop_assert_eq!(parse_word(&text).unwrap(), w);
        }
    }

    #[test]
    fn word_matrix_is_multiplicative(u in twist_word(), v in twist_word()) {
        prop_assert_eq!(word_matrix(&u.concat(&v)), word_matrix(&u).mul(&word_matrix(&v)));
        prop_assert_eq!(word_matrix(&u).det(), 1.into());
    }

    #[test]
    fn trace_polynomial_evaluates_to_trace(w in free_word(), a in sl2_int(), b in sl2_int()) {
        let q = |n: &BigInt| BigRational::from_integer(n.clone());
        let pt = [q(&trace_int(&a)), q(&trace_int(&b)), q(&trace_int(&mul_int(&a, &b))), q(&BigInt::from(0))];
        prop_assert_eq!(trace_polynomial(&w).eval_rational(&pt), q(&trace_int(&eval_word_int(&w, &a, &b))), "{}", w);
    }

    #[test]
    fn induced_map_is_precomposition(w in twist_word(), a in sl2_int(), b in sl2_int()) {
        let (ia, ib) = w.free_images();
        let pa = eval_word_int(&ia, &a, &b);
        let pb = eval_word_int(&ib, &a, &b);
        let expected = [trace_int(&pa), trace_int(&pb), trace_int(&mul_int(&pa, &pb))];
        let q = |n: &BigInt| BigRational::from_integer(n.clone());
        let pt = [q(&trace_int(&a)), q(&trace_int(&b)), q(&trace_int(&mul_int(&a, &b))), q(&BigInt::from(0))];
        let phi = induced_automorphism(&w);
        for i in 0..3 {
            prop_assert_eq!(phi.images[i].eval_rational(&pt), q(&expected[i]), "coordinate {} of {}", i, w);
        }
    }


    #[test]
    fn abelianized_jacobian_is_unimodular(w in twist_word()) {
        let d = jacobian_abelianized(&w).det();
        prop_assert_eq!(d.to_string(), "1");
    }

    #[test]
    fn canonical_rotation_is_idempotent(pairs in prop::collection::vec(1u64..4, 1..4)) {
        let exps: Vec<u64> = pairs.iter().flat_map(|&e| [e, e + 1]).collect();
        let once = canonical_rotation(&exps);
        prop_assert_eq!(canonical_rotation(&once), once.clone());
        let mut sorted_in = exps.clone();
        sorted_in.sort();
        let mut sorted_out = once;
        sorted_out.sort();
        prop_assert_eq!(sorted_in, sorted_out);
    }

    #[test]
    fn groebner_basis_contains_generators(
        c1 in prop::collection::vec(-3i64..=3, 4),
        c2 in prop::collection::vec(-3i64..=3, 4),
    ) {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let z = Poly::var(2);
        let k = |p: &Poly, n: i64| p * &Poly::int(n);
        let f = &(&k(&(&x * &y), c1[0]) + &k(&z.pow(2), c1[1])) + &(&k(&x, c1[2]) + &Poly::int(c1[3]));
        let g = &(&k(&(&y * &z), c2[0]) + &k(&x.pow(2), c2[1])) + &(&k(&y, c2[2]) + &Poly::int(c2[3]));
        let gb = groebner(&[f.clone(), g.clone()], MonomialOrder::GrevLex).unwrap();
        prop_assert!(gb.contains(&f));
        prop_assert!(gb.contains(&g));
        prop_assert!(gb.verify());
    }

    #[test]
    fn univariate_factorization_expands(roots in prop::collection::vec(-4i64..=4, 1..5), lead in 1i64..4) {
        let mut p = UPoly::from_ints(&[lead]);
        for r in &roots {
            p = &p * &UPoly::from_ints(&[-r, 1]);
        }
        let (content, factors) = p.factor();
        let mut back = UPoly::constant(content);
        for (f, m) in &factors {
            back = &back * &f.pow(*m);
        }
        prop_assert_eq!(back, p);
    }
}
