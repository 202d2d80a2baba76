use proptest::prelude::*;
use twobridge::freegroup::{
    build_presentation, check_fundamental_formula, check_lemma_2_1, check_lemma_2_2, commutator,
    fox_derivative, reduce, Gen, GroupRingElement, Word,
};
use twobridge::make_params;

fn gen_strategy() -> impl Strategy<Value = Gen> {
    prop_oneof![Just(Gen::U), Just(Gen::V)]
}

fn raw_word() -> impl Strategy<Value = Vec<(Gen, i64)>> {
    prop::collection::vec((gen_strategy(), -3i64..=3), 0..24)
}

fn word() -> impl Strategy<Value = Word> {
    raw_word().prop_map(|raw| reduce(&raw))
}

fn valid_pairs(pmax: i64) -> impl Iterator<Item = (i64, i64)> {
    (3..=pmax)
        .step_by(2)
        .flat_map(|p| (1..p).step_by(2).map(move |q| (p, q)))
        .filter(|&(p, q)| make_params(p, q).is_ok())
}

proptest! {
    #[test]
    fn reduction_is_confluent(a in raw_word(), b in raw_word()) {
        // reducing in stages or all at once gives the same word
        let joined: Vec<_> = a.iter().chain(b.iter()).copied().collect();
        let staged = &reduce(&a) * &reduce(&b);
        prop_assert_eq!(reduce(&joined), staged);
    }

    #[test]
    fn reduced_words_have_no_cancellation(w in word()) {
        let s = w.syllables();
        prop_assert!(s.iter().all(|&(_, e)| e != 0));
        prop_assert!(s.windows(2).all(|p| p[0].0 != p[1].0));
    }

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!((&w * &w.inverse()).is_identity());
        prop_assert!((&w.inverse() * &w).is_identity());
    }

    #[test]
    fn star_is_an_anti_involution(a in word(), b in word()) {
        prop_assert_eq!(a.reverse_star().reverse_star(), a.clone());
        prop_assert_eq!((&a * &b).reverse_star(), &b.reverse_star() * &a.reverse_star());
    }

    #[test]
    fn fox_product_rule(a in word(), b in word()) {
        for g in [Gen::U, Gen::V] {
            let lhs = fox_derivative(&(&a * &b), g);
            let rhs = &fox_derivative(&a, g) + &fox_derivative(&b, g).left_mul_word(&a);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fox_derivative_augments_to_exponent_sum(w in word()) {
        for g in [Gen::U, Gen::V] {
            prop_assert_eq!(fox_derivative(&w, g).augmentation(), w.exponent_sum(g));
        }
    }

    #[test]
    fn fundamental_formula_on_random_words(w in word()) {
        prop_assert!(check_fundamental_formula(&w));
    }

    #[test]
    fn group_ring_multiplication_is_associative(a in word(), b in word(), c in word()) {
        let x = &GroupRingElement::from_word(a) - &GroupRingElement::one();
        let y = &GroupRingElement::from_word(b) + &GroupRingElement::from_word(c.clone());
        let z = &GroupRingElement::from_word(c) - &GroupRingElement::from_word(Word::gen(Gen::V));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }
}

#[test]
fn commutator_of_powers_of_one_generator_is_trivial() {
    let a = Word::power(Gen::U, 3);
    let b = Word::power(Gen::U, -2);
    assert!(commutator(&a, &b).is_identity());
}

#[test]
fn word_identities_hold_for_every_pair_below_one_hundred() {
    let mut count = 0;
    for (p, q) in valid_pairs(99) {
        let words = build_presentation(&make_params(p, q).unwrap());
        assert!(
            check_lemma_2_1(&words),
            "shift identity fails for ({p},{q})"
        );
        assert!(
            check_lemma_2_2(&words),
            "longitude identity fails for ({p},{q})"
        );
        count += 1;
    }
    assert!(count > 1000);
}

#[test]
fn fundamental_formula_on_presentation_words() {
    for (p, q) in valid_pairs(49) {
        let words = build_presentation(&make_params(p, q).unwrap());
        for f in [&words.w, &words.g, &words.r, &words.l] {
            assert!(check_fundamental_formula(f), "({p},{q}): {f}");
        }
    }
}

#[test]
fn relator_abelianizes_to_u_minus_v() {
    for (p, q) in valid_pairs(49) {
        let words = build_presentation(&make_params(p, q).unwrap());
        assert_eq!(words.r.exponent_sum(Gen::U), 1);
        assert_eq!(words.r.exponent_sum(Gen::V), -1);
    }
}
