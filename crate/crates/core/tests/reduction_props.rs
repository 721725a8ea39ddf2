mod common;

use common::{permutations, theta_kn_product, word_of};
use proptest::prelude::*;
use sfdc_core::linking::tau_sigma;
use sfdc_core::{enumerate_words, leading_part, reduce, DiagramPoly, ReduceOptions, Reducer, Schedule, Word};

fn all_words(max_k: usize) -> Vec<Word> {
    (0..=max_k).flat_map(|k| enumerate_words(k).unwrap()).collect()
}

fn word_strategy(max_k: usize) -> impl Strategy<Value = Word> {
    (0..=max_k).prop_flat_map(|k| {
        let ids: Vec<u16> = (0..k as u16).flat_map(|l| [l, l]).collect();
        Just(ids).prop_shuffle().prop_map(|ids| Word::from_ids(&ids).unwrap())
    })
}

fn check_shape(w: &Word) {
    let p = reduce(w);
    let k = w.half_len() as u32;
    assert_eq!(p.homogeneous_degree(), Some(k), "{w}");
    assert!(p.coeff(k, 0).is_one(), "{w}");
    assert_eq!(p.without_k(), DiagramPoly::theta_pow(k), "{w}");
}

#[test]
fn word_counts_through_k4() {
    let counts: Vec<usize> = (0..=4).map(|k| enumerate_words(k).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 3, 15, 105]);
}

#[test]
fn reversal_invariance_exhaustive() {
    for w in all_words(4) {
        assert_eq!(reduce(&w.reverse()), reduce(&w), "{w}");
    }
}

#[test]
fn multiplicativity_exhaustive() {
    let small = all_words(2);
    for u in &small {
        for v in &small {
            assert_eq!(reduce(&u.concat(v)), &reduce(u) * &reduce(v), "{u} {v}");
        }
    }
}

#[test]
fn homogeneity_and_k_zero_exhaustive() {
    for w in all_words(4) {
        check_shape(&w);
    }
}

#[test]
fn schedules_and_skip_agree_exhaustive() {
    let variants = [
        ReduceOptions { skip_paired_tail: false, schedule: Schedule::LeftmostDefect },
        ReduceOptions { skip_paired_tail: false, schedule: Schedule::RightmostDefect },
        ReduceOptions { skip_paired_tail: true, schedule: Schedule::RightmostDefect },
    ];
    let reducers: Vec<Reducer> = variants.into_iter().map(Reducer::new).collect();
    for w in all_words(4) {
        let p = reduce(&w);
        for r in &reducers {
            assert_eq!(r.reduce(&w), p, "{w} {:?}", r.options());
        }
    }
}

#[test]
fn dominant_component_all_permutations() {
    for k in 1..=4 {
        let expected = theta_kn_product(&(0..k as i64).collect::<Vec<_>>());
        for sigma in permutations(k) {
            let w = tau_sigma(&sigma).unwrap();
            assert_eq!(leading_part(&reduce(&w), k).unwrap(), expected, "{w}");
        }
    }
}

#[test]
fn nested_with_inner_pair_degree_component() {
    for k in 1..=5 {
        for i in 0..k {
            // a₁…a_i a_{i+1}…a_{k−1} a_{k−1}…a_{i+1} a_k a_k a_i…a₁
            let mut letters: Vec<usize> = (1..k).collect();
            letters.extend((i + 1..k).rev());
            letters.extend([k, k]);
            letters.extend((1..=i).rev());
            let w = word_of(&letters);
            let mut multiples: Vec<i64> = (0..k as i64 - 1).collect();
            multiples.push(i as i64);
            assert_eq!(leading_part(&reduce(&w), k).unwrap(), theta_kn_product(&multiples), "{w} i={i}");
        }
    }
}

#[test]
fn concurrent_reduction_is_deterministic() {
    let words = enumerate_words(4).unwrap();
    let expected: Vec<DiagramPoly> = words.iter().map(|w| Reducer::default().reduce(w)).collect();
    let shared = Reducer::default();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let (shared, words) = (&shared, &words);
                s.spawn(move || {
                    words.iter().skip(t).step_by(2).map(|w| (w.clone(), shared.reduce(w))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (w, p) in h.join().unwrap() {
                let idx = words.iter().position(|x| *x == w).unwrap();
                assert_eq!(p, expected[idx], "{w}");
            }
        }
    });
}

#[test]
fn evaluation_at_the_sphere_eigenvalue_is_integral() {
    for w in all_words(3) {
        for (n, p) in [(2i64, 1i64), (3, 2)] {
            let v =
                reduce(&w).substitute(&sfdc_core::algebra::q(-p * (p + n - 1)), &sfdc_core::algebra::q(1), n).unwrap();
            assert!(v.is_integer(), "{w}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reversal_invariance_sampled(w in word_strategy(5)) {
        prop_assert_eq!(reduce(&w.reverse()), reduce(&w));
    }

    #[test]
    fn multiplicativity_sampled(u in word_strategy(3), v in word_strategy(3)) {
        prop_assert_eq!(reduce(&u.concat(&v)), &reduce(&u) * &reduce(&v));
    }

    #[test]
    fn shape_sampled(w in word_strategy(5)) {
        check_shape(&w);
    }

    #[test]
    fn relabelling_invariance(w in word_strategy(4), shift in 1u16..20) {
        let ids: Vec<u16> = w.ids().iter().map(|&l| l * 3 + shift).collect();
        let relabelled = Word::from_ids(&ids).unwrap();
        prop_assert_eq!(reduce(&relabelled), reduce(&w));
    }

    #[test]
    fn transposition_matches_commutator(w in word_strategy(4), pos in 0usize..7) {
        prop_assume!(w.len() >= 2);
        let i = pos % (w.len() - 1) + 1;
        let mut ids = w.ids();
        ids.swap(i - 1, i);
        let swapped = Word::from_ids(&ids).unwrap();
        let step = sfdc_core::transpose_step(&w, i).unwrap();
        prop_assert_eq!(&reduce(&w) - &reduce(&swapped), step.evaluate(sfdc_core::reduction::global_reducer()));
    }
}
