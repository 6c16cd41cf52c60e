//! Randomized invariants. Each entry of [`ALL`] panics on a counterexample.

use foxcover::covers::{
    cover_homology, enumerate_index2_reps, perm_matrix, reidemeister_schreier, subgroup_h1_fox, theta_eval,
    validate_rep, PermRep, Permutation,
};
use foxcover::foxcalc::{fox_derivative, GroupRingElement};
use foxcover::intlinalg::{
    abelian_group_from_presentation_matrix, determinant, invariant_factors_via_minors, smith_normal_form,
    AbelianGroup, IntMatrix,
};
use foxcover::presentation::{free_reduce, Presentation, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn raw_word(generators: usize, max_syllables: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..generators, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_syllables)
}

fn word(generators: usize, max_syllables: usize) -> impl Strategy<Value = Word> {
    raw_word(generators, max_syllables).prop_map(|raw| free_reduce(raw).unwrap())
}

fn ring_element(generators: usize) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((word(generators, 4), -3i64..=3), 0..=4).prop_map(|terms| {
        let mut x = GroupRingElement::zero();
        for (w, c) in terms {
            x.add_term(w, BigInt::from(c));
        }
        x
    })
}

fn permutation(q: usize) -> impl Strategy<Value = Permutation> {
    Just((0..q).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(-10i64..=10, r * c).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(c).collect();
            IntMatrix::from_i64_rows(&rows)
        })
    })
}

fn names(n: usize) -> Vec<String> {
    ["a", "b", "c", "d"][..n].iter().map(|s| s.to_string()).collect()
}

fn one_relator(max_generators: usize, max_syllables: usize) -> impl Strategy<Value = Presentation> {
    (1..=max_generators).prop_flat_map(move |n| {
        word(n, max_syllables).prop_map(move |r| Presentation::new(names(n), vec![r]).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(1000) })]

    fn fox_fundamental_identity(w in word(3, 8)) {
        let mut lhs = GroupRingElement::zero();
        for i in 0..3 {
            let s_minus_one = &GroupRingElement::from_word(Word::generator(i)) - &GroupRingElement::one();
            lhs = &lhs + &(&fox_derivative(&w, i) * &s_minus_one);
        }
        let rhs = &GroupRingElement::from_word(w.clone()) - &GroupRingElement::one();
        prop_assert_eq!(lhs, rhs);
    }

    fn fox_product_rule(u in word(3, 6), v in word(3, 6), i in 0usize..3) {
        let uv = &u * &v;
        let expected = &fox_derivative(&u, i) + &fox_derivative(&v, i).left_mul_word(&u);
        prop_assert_eq!(fox_derivative(&uv, i), expected);
    }

    fn fox_inverse_rule(w in word(3, 6), i in 0usize..3) {
        let inv = w.inverse();
        let expected = -&fox_derivative(&w, i).left_mul_word(&inv);
        prop_assert_eq!(fox_derivative(&inv, i), expected);
    }

    fn augmentation_is_exponent_sum(w in word(3, 8), i in 0usize..3) {
        prop_assert_eq!(fox_derivative(&w, i).augmentation(), BigInt::from(w.exponent_sum(i)));
    }

    fn free_reduce_idempotent(raw in raw_word(3, 10)) {
        let w = free_reduce(raw).unwrap();
        let again = free_reduce(w.syllables().iter().map(|s| (s.generator, s.exponent))).unwrap();
        prop_assert_eq!(again, w);
    }

    fn cancelling_pair_insertion(raw in raw_word(3, 8), at in 0usize..=8, g in 0usize..3, e in 1i64..=4) {
        let at = at.min(raw.len());
        let mut padded = raw.clone();
        padded.splice(at..at, [(g, e), (g, -e)]);
        prop_assert_eq!(free_reduce(padded).unwrap(), free_reduce(raw).unwrap());
    }

    fn word_product_associative(u in word(3, 5), v in word(3, 5), w in word(3, 5)) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert!((&u * &u.inverse()).is_identity());
    }

    fn proper_power_of_powers(w in word(3, 5), k in 2i64..=5) {
        let (core, _) = w.cyclically_reduce();
        prop_assume!(!core.is_identity());
        let wk = core.checked_pow(k).unwrap();
        let (root, e) = wk.proper_power().unwrap().expect("w^k is a proper power");
        prop_assert_eq!(e % k as u64, 0);
        prop_assert_eq!(root.checked_pow(e as i64).unwrap(), wk);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(500) })]

    fn snf_matches_minors_oracle(a in matrix(6)) {
        let snf = smith_normal_form(&a);
        prop_assert!(snf.verify(&a));
        prop_assert_eq!(&(snf.p() * &a) * snf.q(), snf.normal_form());

        let d = snf.diagonal();
        prop_assert!(d.iter().all(|x| x.is_positive()));
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }

        let (r, c) = (a.rows(), a.cols());
        prop_assert_eq!(snf.p() * snf.p_inverse(), IntMatrix::identity(r));
        prop_assert_eq!(snf.q() * snf.q_inverse(), IntMatrix::identity(c));
        prop_assert_eq!(determinant(snf.p()).abs(), BigInt::one());
        prop_assert_eq!(determinant(snf.q()).abs(), BigInt::one());

        let oracle = invariant_factors_via_minors(&a).unwrap();
        prop_assert_eq!(oracle.as_slice(), d);
    }

    fn abelian_group_invariant_under_signed_permutations(
        a in matrix(5),
        row_seed in any::<u64>(),
        col_seed in any::<u64>(),
        flips in any::<u16>(),
    ) {
        let g = abelian_group_from_presentation_matrix(&a);
        let mut rows: Vec<usize> = (0..a.rows()).collect();
        let mut cols: Vec<usize> = (0..a.cols()).collect();
        rows.rotate_left(row_seed as usize % a.rows());
        cols.reverse();
        cols.rotate_left(col_seed as usize % a.cols());
        let mut b = a.select(&rows, &cols);
        for i in 0..b.rows() {
            if flips >> (i % 16) & 1 == 1 {
                for j in 0..b.cols() {
                    b[(i, j)] = -b[(i, j)].clone();
                }
            }
        }
        prop_assert_eq!(abelian_group_from_presentation_matrix(&b), g);
    }
}

fn free_rep(q: usize, generators: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(permutation(q), generators)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(300) })]

    fn perm_matrix_homomorphism((s, t) in (1usize..=6).prop_flat_map(|q| (permutation(q), permutation(q)))) {
        prop_assert_eq!(perm_matrix(&s.then(&t)), &perm_matrix(&s) * &perm_matrix(&t));
        prop_assert_eq!(perm_matrix(&s.inverse()), perm_matrix(&s).transpose());
    }

    fn theta_is_ring_homomorphism(
        perms in (1usize..=4).prop_flat_map(|q| free_rep(q, 2)),
        x in ring_element(2),
        y in ring_element(2),
    ) {
        let p = Presentation::new(names(2), vec![]).unwrap();
        let rep = validate_rep(&p, perms);
        prop_assume!(rep.is_ok());
        let rep = rep.unwrap();
        prop_assert_eq!(theta_eval(&(&x * &y), &rep), &theta_eval(&x, &rep) * &theta_eval(&y, &rep));
        let mut sum = theta_eval(&x, &rep);
        sum.add_assign_scaled(&theta_eval(&y, &rep), &BigInt::one());
        prop_assert_eq!(theta_eval(&(&x + &y), &rep), sum);
    }

    fn trivial_cover_is_abelianization(p in one_relator(3, 8)) {
        let expected = abelian_group_from_presentation_matrix(&p.abelianized_relator_matrix());
        let h = cover_homology(&p, &PermRep::trivial(&p)).unwrap();
        prop_assert!(h.agree());
        prop_assert_eq!(h.fox, expected);
    }

    fn nielsen_schreier_rank(
        (n, perms) in (1usize..=3).prop_flat_map(|n| (Just(n), (1usize..=5).prop_flat_map(move |q| free_rep(q, n)))),
    ) {
        let p = Presentation::new(names(n), vec![]).unwrap();
        let rep = validate_rep(&p, perms);
        prop_assume!(rep.is_ok());
        let rep = rep.unwrap();
        let q = rep.degree();
        let h = cover_homology(&p, &rep).unwrap();
        prop_assert!(h.agree());
        prop_assert_eq!(h.fox, AbelianGroup::free(1 + q * (n - 1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(256) })]

    fn three_methods_agree_on_index_two_covers(p in one_relator(3, 10)) {
        for rep in enumerate_index2_reps(&p).unwrap() {
            let h = cover_homology(&p, &rep).unwrap();
            prop_assert!(h.agree(), "{} with {}: {:?}", p, rep.display(p.generator_names()), h);

            let rs = reidemeister_schreier(&p, &rep);
            prop_assert_eq!(rs.generator_count(), 2 * p.generator_count() - 1);
            prop_assert_eq!(rs.relator_count(), 2 * p.relator_count());
            prop_assert_eq!(subgroup_h1_fox(&p, &rep).unwrap(), h.rs);
        }
    }

    fn one_relator_h1_matches_generic_path(p in one_relator(3, 10)) {
        let generic = abelian_group_from_presentation_matrix(&p.abelianized_relator_matrix());
        prop_assert_eq!(foxcover::families::one_relator_h1(&p).unwrap(), generic);
    }

    fn three_methods_agree_on_higher_degree_covers(
        perms in (3usize..=4).prop_flat_map(|q| free_rep(q, 2)),
        w1 in word(2, 4),
        w2 in word(2, 4),
    ) {
        // a relator killed by construction: w1^o1 w2^o2 with o_i the order of theta(w_i)
        let free = Presentation::new(names(2), vec![]).unwrap();
        let rep = validate_rep(&free, perms.clone());
        prop_assume!(rep.is_ok());
        let rep = rep.unwrap();
        let order = |w: &Word| (1i64..).find(|&k| rep.eval(w).pow(k).is_identity()).unwrap();
        let r = &w1.checked_pow(order(&w1)).unwrap() * &w2.checked_pow(order(&w2)).unwrap();
        let p = Presentation::new(names(2), vec![r]).unwrap();
        let rep = validate_rep(&p, perms).unwrap();
        let h = cover_homology(&p, &rep).unwrap();
        prop_assert!(h.agree(), "{}: {:?}", p, h);
    }
}

/// Every property, by name.
pub const ALL: &[(&str, fn())] = &[
    ("fox_fundamental_identity", fox_fundamental_identity),
    ("fox_product_rule", fox_product_rule),
    ("fox_inverse_rule", fox_inverse_rule),
    ("augmentation_is_exponent_sum", augmentation_is_exponent_sum),
    ("free_reduce_idempotent", free_reduce_idempotent),
    ("cancelling_pair_insertion", cancelling_pair_insertion),
    ("word_product_associative", word_product_associative),
    ("proper_power_of_powers", proper_power_of_powers),
    ("snf_matches_minors_oracle", snf_matches_minors_oracle),
    ("abelian_group_invariant_under_signed_permutations", abelian_group_invariant_under_signed_permutations),
    ("perm_matrix_homomorphism", perm_matrix_homomorphism),
    ("theta_is_ring_homomorphism", theta_is_ring_homomorphism),
    ("trivial_cover_is_abelianization", trivial_cover_is_abelianization),
    ("nielsen_schreier_rank", nielsen_schreier_rank),
    ("three_methods_agree_on_index_two_covers", three_methods_agree_on_index_two_covers),
    ("one_relator_h1_matches_generic_path", one_relator_h1_matches_generic_path),
    ("three_methods_agree_on_higher_degree_covers", three_methods_agree_on_higher_degree_covers),
];
