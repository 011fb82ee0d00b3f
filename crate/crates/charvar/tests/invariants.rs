use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use charvar::alexander::{fox_derivative, jacobian_abelianized, GroupRingElement};
use charvar::free_group::{FreeWord, GEN_A, GEN_B};
use charvar::families::{fibonacci, fibonacci_lemma, p_closed_form, p_sequence};
use charvar::ideal_engine::{decompose, factor_bivariate};
use charvar::monodromy::{
    axis_action, invariants, mod2_order, parse_word, standard_positive_form, word_from_positive_form, word_matrix,
    IntMatrix2, Twist, TwistWord,
};
use charvar::newton_genus::{boundary_vectors, convex_hull, genus_report, interior_lattice_count, NewtonPolygon};
use charvar::numeric_verify::{check_fiber, sample_fixed_points, sample_variety, SampleOptions};
use charvar::poly::Poly;
use charvar::trace_poly::{fixed_ideal, induced_automorphism, reducibility_polynomial, trace_polynomial, SignClass};

fn random_twist_word(rng: &mut ChaCha8Rng, max_len: i64) -> TwistWord {
    let mut letters = Vec::new();
    let mut len = 0;
    let mut g = if rng.gen_bool(0.5) { Twist::A } else { Twist::B };
    while len < max_len {
        let e: i64 = rng.gen_range(1..=3.min(max_len - len)) * if rng.gen_bool(0.5) { 1 } else { -1 };
        len += e.abs();
        letters.push((g, e));
        g = if g == Twist::A { Twist::B } else { Twist::A };
        if rng.gen_bool(0.25) {
            break;
        }
    }
    TwistWord::new(false, letters)
}

fn random_hyperbolic(rng: &mut ChaCha8Rng, max_len: i64) -> TwistWord {
    loop {
        let w = random_twist_word(rng, max_len);
        if invariants(&w).hyperbolic {
            return w;
        }
    }
}

fn random_free_word(rng: &mut ChaCha8Rng, max_len: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_len);
    let letters: Vec<i8> = (0..n).map(|_| [GEN_A, -GEN_A, GEN_B, -GEN_B][rng.gen_range(0..4)]).collect();
    FreeWord::from_letters(&letters)
}

fn w(s: &str) -> TwistWord {
    parse_word(s).unwrap()
}

// ------------------------------------------------------------ monodromy

#[test]
fn braid_relations_hold() {
    let m = |s: &str| word_matrix(&w(s));
    assert_eq!(m("A*B*A"), m("B*A*B"));
    assert_eq!(word_matrix(&w("A*B*A").power(4)), IntMatrix2::identity());
    assert_eq!(m("B^-1"), m("A^2*B*A^2*B*A^2*B*A^2"));
}

#[test]
fn b1_matches_mod2_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let word = random_twist_word(&mut rng, 12);
        let inv = invariants(&word);
        assert!((1..=3).contains(&inv.b1));
        assert_eq!(inv.b1, 4 - inv.mod2_order, "{word}");
    }
}

#[test]
fn sixth_power_can_negate_two_axes() {
    let word = w("A^-3*B*A^-1");
    assert!(invariants(&word).hyperbolic);
    let sixth = axis_action(&word.power(6));
    assert_eq!(sixth.permutation, [0, 1, 2]);
    assert_eq!(sixth.sign_parities, [1, 1, 0]);
    let f = induced_automorphism(&word);
    let mut p = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    for _ in 0..6 {
        p = f.eval_complex(&p);
    }
    assert!((p[0] + 2.0).norm() < 1e-9 && p[1].norm() < 1e-9 && p[2].norm() < 1e-9);
}

#[test]
fn axis_action_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let word = random_hyperbolic(&mut rng, 10);
        let act = axis_action(&word);
        for k in 1..=12 {
            assert_eq!(act.power(k), axis_action(&word.power(k)), "{word} power {k}");
        }
        let sixth = axis_action(&word.power(6));
        assert_eq!(sixth.permutation, [0, 1, 2], "{word}");
        assert_eq!(sixth.sign_parities.iter().sum::<u8>() % 2, 0, "{word}");
        assert!(axis_action(&word.power(12)).is_trivial(), "{word}");
    }
}

#[test]
fn positive_form_preserves_trace_and_mod2_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let word = random_hyperbolic(&mut rng, 10);
        let m = word_matrix(&word);
        let (sign, exps) = standard_positive_form(&m).unwrap();
        let back = word_matrix(&word_from_positive_form(sign, &exps));
        assert_eq!(back.trace(), m.trace(), "{word}");
        assert_eq!(mod2_order(&back), mod2_order(&m), "{word}");
    }
}

// ------------------------------------------------------------ trace polynomials

#[test]
fn trace_polynomial_is_conjugation_and_inversion_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let u = random_free_word(&mut rng, 8);
        let g = random_free_word(&mut rng, 4);
        let t = trace_polynomial(&u);
        assert_eq!(trace_polynomial(&u.inverse()), t, "{u}");
        assert_eq!(trace_polynomial(&g.mul(&u).mul(&g.inverse())), t, "{u} by {g}");
    }
}

#[test]
fn induced_automorphisms_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let w1 = random_twist_word(&mut rng, 4);
        let w2 = random_twist_word(&mut rng, 4);
        let composed = induced_automorphism(&w1.concat(&w2));
        assert_eq!(composed, induced_automorphism(&w1).then(&induced_automorphism(&w2)), "{w1} then {w2}");
        let round_trip = induced_automorphism(&w1).then(&induced_automorphism(&w1.inverse()));
        assert_eq!(round_trip.images, [Poly::var(0), Poly::var(1), Poly::var(2)], "{w1}");
    }
}

#[test]
fn fixed_ideals_contain_origin_and_match_axes() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let zero = Poly::zero();
    for _ in 0..100 {
        let word = random_hyperbolic(&mut rng, 8);
        let ci = fixed_ideal(&word, SignClass::Id).unwrap();
        let origin = [Complex64::new(0.0, 0.0); 4];
        assert!(ci.generators.iter().all(|g| g.eval_complex(&origin).norm() == 0.0), "{word}");
        let act = axis_action(&word);
        for i in 0..3 {
            let mut subs = [zero.clone(), zero.clone(), zero.clone(), Poly::var(3)];
            subs[i] = Poly::var(3);
            let on_axis = ci.generators.iter().all(|g| g.compose(&subs).is_zero());
            assert_eq!(on_axis, act.fixes_axis(i), "{word} axis {i}");
        }
    }
}

#[test]
fn reducible_quadric_is_invariant() {
    let q = reducibility_polynomial();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let word = random_twist_word(&mut rng, 8);
        assert_eq!(induced_automorphism(&word).apply(&q), q, "{word}");
    }
}

// ------------------------------------------------------------ ideal engine

fn random_bivariate(rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(2..=4) {
        let (i, j) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let c: i64 = rng.gen_range(-3..=3);
        p = &p + &(&(&Poly::var(0).pow(i) * &Poly::var(1).pow(j)) * &Poly::int(c));
    }
    p
}

#[test]
fn bivariate_factorization_reconstructs_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 80 {
        let f = random_bivariate(&mut rng);
        let g = random_bivariate(&mut rng);
        let h = random_bivariate(&mut rng);
        let p = &(&f * &g) * &h;
        if p.is_zero() {
            continue;
        }
        let fac = factor_bivariate(&p).unwrap();
        assert_eq!(fac.expand(), p, "{f} * {g} * {h}");
        checked += 1;
    }
}

#[test]
fn decomposition_is_sound_numerically() {
    let opts = SampleOptions { seed: 9, ..SampleOptions::default() };
    for word in ["A^2*B^-2", "A*B^-1*A*B^-1", "A^2*B^-4", "A*B^-2*A*B^-2"] {
        let word = w(word);
        let ci = fixed_ideal(&word, SignClass::Id).unwrap();
        let d = decompose(&ci, &word).unwrap();
        let residual = |gens: &[Poly], p: &[Complex64; 3]| {
            let pt = [p[0], p[1], p[2], Complex64::new(0.0, 0.0)];
            gens.iter().map(|g| g.eval_complex(&pt).norm()).fold(0.0, f64::max)
        };
        for c in d.components.iter().filter(|c| c.is_curve()) {
            for p in sample_variety(&c.ideal, 30, &opts) {
                assert!(residual(&ci.generators, &p) < 1e-8, "{word}: component point off the curve");
            }
        }
        for p in sample_variety(&ci.generators, 60, &opts) {
            let nearest = d.components.iter().map(|c| residual(&c.ideal, &p)).fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-6, "{word}: zero not on any component ({nearest:.2e})");
        }
    }
}

// ------------------------------------------------------------ Newton polygons

#[test]
fn pick_theorem_and_boundary_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    while checked < 200 {
        let pts: Vec<(i64, i64)> = (0..rng.gen_range(3..8)).map(|_| (rng.gen_range(0..7), rng.gen_range(0..7))).collect();
        if convex_hull(&pts).len() < 3 {
            continue;
        }
        let poly = NewtonPolygon::from_points(&pts, ["u", "w"]);
        let vectors = boundary_vectors(&poly);
        let sum = vectors.iter().fold((0, 0), |acc, ((dx, dy), m)| (acc.0 + dx * *m as i64, acc.1 + dy * *m as i64));
        assert_eq!(sum, (0, 0));
        let i = interior_lattice_count(&poly) as i64;
        let b = poly.boundary_lattice_count() as i64;
        assert_eq!(poly.double_area(), 2 * i + b - 2, "{pts:?}");
        checked += 1;
    }
}

#[test]
fn genus_is_bounded_by_interior_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let f = random_bivariate(&mut rng);
        let f = &f + &Poly::var(0).pow(3);
        let Ok(sqf) = charvar::newton_genus::is_squarefree(&f) else { continue };
        if !sqf || f.variables().len() < 2 {
            continue;
        }
        let verdict = charvar::ideal_engine::absolutely_irreducible(&f);
        let r = genus_report(&f, 0, 1, verdict).unwrap();
        if let Some(g) = r.genus {
            assert!(g <= r.baker_bound, "{f}");
        }
    }
}

// ------------------------------------------------------------ families

#[test]
fn fibonacci_lemma_holds() {
    for n in -12..=12 {
        assert!(fibonacci_lemma(n).holds(), "n = {n}");
        assert_eq!(fibonacci(-n).coefficients, -&fibonacci(n).coefficients, "n = {n}");
    }
}

#[test]
fn p_recursion_matches_closed_form() {
    for n in -12..=12 {
        assert_eq!(p_sequence(n), p_closed_form(n), "n = {n}");
    }
}

// ------------------------------------------------------------ Fox calculus

fn group_ring_of(u: &FreeWord) -> GroupRingElement {
    GroupRingElement::word(u.clone())
}

#[test]
fn fox_fundamental_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let one = GroupRingElement::one();
    let a_minus_1 = &group_ring_of(&FreeWord::a()) - &one;
    let b_minus_1 = &group_ring_of(&FreeWord::b()) - &one;
    for _ in 0..50 {
        let u = random_free_word(&mut rng, 10);
        let lhs = &group_ring_of(&u) - &one;
        let rhs = &(&fox_derivative(&u, GEN_A) * &a_minus_1) + &(&fox_derivative(&u, GEN_B) * &b_minus_1);
        assert_eq!(lhs, rhs, "{u}");
    }
}

#[test]
fn jacobian_chain_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let w1 = random_twist_word(&mut rng, 5);
        let w2 = random_twist_word(&mut rng, 5);
        let lhs = jacobian_abelianized(&w1.concat(&w2));
        let rhs = jacobian_abelianized(&w2).apply(&w1).mul(&jacobian_abelianized(&w1));
        assert_eq!(lhs, rhs, "{w1} then {w2}");
        assert_eq!(lhs.det().to_string(), "1");
    }
}

// ------------------------------------------------------------ numeric checks

#[test]
fn squared_quadruples_agree_across_the_pair() {
    for word in ["A^2*B^-3", "A*B^-1*A*B^-1", "A^3*B^3"] {
        let word = w(word);
        for p in sample_fixed_points(&word, 10, &SampleOptions::default()).unwrap() {
            let f = check_fiber(&word, p).unwrap();
            assert_eq!(f.quadruples.len(), 2);
            for (u, v) in f.quadruples[0].iter().zip(&f.quadruples[1]) {
                assert!((u * u - v * v).norm() < 1e-8 * (1.0 + (u * u).norm()));
            }
        }
    }
}
