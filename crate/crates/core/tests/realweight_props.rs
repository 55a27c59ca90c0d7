// SPDX-License-Identifier: Apache-2.0

use amtree::bench::generate;
use amtree::minimax::tree_cost_real;
use amtree::realweight::{alpha_real_new_with, choose_strategy_for, Algorithm};
use amtree::{alpha_real, alpha_real_new, alpha_real_oracle, alpha_real_sorted, AlgoChoice, SelectStrategy, WeightSeq};
use proptest::prelude::*;

fn real_weights(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    let w = prop_oneof![
        4 => -5.0f64..5.0,
        1 => (-5i64..5).prop_map(|c| c as f64),
        1 => (-5i64..5, 1u32..4).prop_map(|(c, k)| c as f64 + k as f64 / 4.0),
    ];
    prop::collection::vec(w, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn new_matches_sorted_and_oracle(w in real_weights(10)) {
        let seq = WeightSeq::new(w.clone()).unwrap();
        let a = alpha_real_new(&seq).unwrap();
        let b = alpha_real_sorted(&seq).unwrap();
        let o = alpha_real_oracle(&w).unwrap();
        prop_assert_eq!(a.offset, b.offset);
        prop_assert!((a.alpha - b.alpha).abs() <= 1e-9);
        prop_assert!((a.alpha - o).abs() <= 1e-9, "new {} oracle {}", a.alpha, o);
        prop_assert!((tree_cost_real(a.depths.as_slice(), &w).unwrap() - a.alpha).abs() <= 1e-9);
        prop_assert!((tree_cost_real(b.depths.as_slice(), &w).unwrap() - b.alpha).abs() <= 1e-9);
    }

    #[test]
    fn larger_instances_agree(w in real_weights(300), seed in any::<u64>()) {
        let seq = WeightSeq::new(w.clone()).unwrap();
        let a = alpha_real_new(&seq).unwrap();
        let b = alpha_real_sorted(&seq).unwrap();
        let c = alpha_real_new_with(&seq, SelectStrategy::Randomized { seed }).unwrap();
        prop_assert_eq!(a.offset, b.offset);
        prop_assert_eq!(a.offset, c.offset);
        prop_assert!((a.alpha - b.alpha).abs() <= 1e-9);
        prop_assert!((tree_cost_real(a.depths.as_slice(), &w).unwrap() - a.alpha).abs() <= 1e-9);
    }

    #[test]
    fn shifting_by_an_integer_shifts_alpha(w in real_weights(40), c in -10i64..10) {
        let shifted: Vec<f64> = w.iter().map(|x| x + c as f64).collect();
        let a = alpha_real_new(&WeightSeq::new(w).unwrap()).unwrap();
        let b = alpha_real_new(&WeightSeq::new(shifted).unwrap()).unwrap();
        prop_assert!((b.alpha - a.alpha - c as f64).abs() <= 1e-9);
    }
}

#[test]
fn small_examples() {
    let r = alpha_real_new(&WeightSeq::new(vec![1.2, 0.3]).unwrap()).unwrap();
    assert!((r.alpha - 2.2).abs() < 1e-12);
    assert_eq!(r.depths.as_slice(), &[1, 1]);

    let r = alpha_real_new(&WeightSeq::new(vec![0.5]).unwrap()).unwrap();
    assert_eq!((r.alpha, r.offset), (0.5, 0.5));

    let ints = WeightSeq::from_ints(&[4, 5, 2, 2, 2, 1, 2, 3, 6, 4]).unwrap();
    assert_eq!(alpha_real_new(&ints).unwrap().alpha, 8.0);
    assert_eq!(alpha_real_sorted(&ints).unwrap().alpha, 8.0);
}

#[test]
fn generated_instances_agree_across_d() {
    for d in [1, 2, 4, 16, 500] {
        for trial in 0..4 {
            let w = generate(500, d, 77, trial).unwrap();
            let a = alpha_real_new(&w).unwrap();
            let b = alpha_real_sorted(&w).unwrap();
            assert_eq!(a.offset, b.offset, "d = {d}, trial {trial}");
            assert!((a.alpha - b.alpha).abs() <= 1e-9);
            assert!(a.stats.sets <= 4 * 500);
        }
    }
}

#[test]
fn auto_uses_the_chosen_algorithm() {
    let w = generate(1 << 12, 1, 3, 0).unwrap();
    assert_eq!(choose_strategy_for(1 << 12, 1), Algorithm::New);
    assert_eq!(alpha_real(&w, AlgoChoice::Auto).unwrap().algorithm, Algorithm::New);
    let w = generate(64, 64, 3, 0).unwrap();
    assert_eq!(alpha_real(&w, AlgoChoice::Auto).unwrap().algorithm, Algorithm::Sorted);
}
