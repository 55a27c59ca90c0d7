// SPDX-License-Identifier: Apache-2.0

use amtree::coder::{
    build_code_with_bound, decode, encode, entropy, evaluate, kraft_sum_is_one, relative_entropy, worst_case_excess,
    CodeBook, Distribution,
};
use amtree::realweight::WeightSeq;
use proptest::prelude::*;

fn distribution(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    distribution_in(1, max_len)
}

fn distribution_in(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1u32..1000, min_len..=max_len).prop_map(|c| {
        let total: u32 = c.iter().sum();
        c.iter().map(|&x| x as f64 / total as f64).collect()
    })
}

fn dist(p: Vec<f64>) -> Distribution {
    Distribution::from_probs(p).unwrap()
}

fn check_book(book: &CodeBook) {
    let c = book.codewords();
    assert!(c.windows(2).all(|w| w[0] < w[1]));
    for i in 0..c.len() {
        for j in 0..c.len() {
            assert!(i == j || !c[j].starts_with(c[i].as_str()));
        }
    }
    assert!(kraft_sum_is_one(&book.lengths()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn built_code_attains_bound(q in distribution(64)) {
        let q = dist(q);
        let (book, bound) = build_code_with_bound(&q).unwrap();
        check_book(&book);
        prop_assert!((worst_case_excess(&q, &book).unwrap() - bound).abs() <= 1e-9);
    }

    #[test]
    fn excess_never_exceeds_bound(q in distribution(24), p in distribution(24)) {
        let n = q.len().min(p.len());
        let renorm = |v: &[f64]| { let s: f64 = v[..n].iter().sum(); v[..n].iter().map(|x| x / s).collect::<Vec<_>>() };
        let (q, p) = (dist(renorm(&q)), dist(renorm(&p)));
        let (book, bound) = build_code_with_bound(&q).unwrap();
        let r = evaluate(&p, &book, &q).unwrap();
        prop_assert!(r.excess <= bound + 1e-9);
        prop_assert!((r.excess - (r.avg_len - r.entropy - r.relative_entropy)).abs() < 1e-12);
        prop_assert!((r.bound - bound).abs() < 1e-12);
    }

    /// One symbol means the empty codeword, which carries no count.
    #[test]
    fn encode_decode_round_trip(q in distribution_in(2, 40), msg in prop::collection::vec(any::<prop::sample::Index>(), 0..200)) {
        let q = dist(q);
        let (book, _) = build_code_with_bound(&q).unwrap();
        let symbols: Vec<usize> = msg.iter().map(|i| i.index(book.len())).collect();
        let bits = encode(&symbols, &book).unwrap();
        prop_assert_eq!(decode(&bits, &book).unwrap(), symbols);
    }

    #[test]
    fn gibbs_inequality(p in distribution(16)) {
        let q = vec![1.0 / p.len() as f64; p.len()];
        prop_assert!(relative_entropy(&p, &q).unwrap() >= -1e-12);
        prop_assert!(entropy(&p) <= (p.len() as f64).log2() + 1e-12);
    }

    /// With `max q / min q <= c`, the ceilings of `log2 q_i` take at most
    /// `ceil(log2 c) + 2` values.
    #[test]
    fn bounded_ratio_bounds_d(n in 2usize..200, c in 1.0f64..64.0, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..=c)).collect();
        let total: f64 = raw.iter().sum();
        let logs: Vec<f64> = raw.iter().map(|x| (x / total).log2()).collect();
        let d = WeightSeq::new(logs).unwrap().d();
        prop_assert!(d as f64 <= c.log2().ceil() + 2.0);
    }
}

#[test]
fn dyadic_samples_have_zero_bound() {
    for q in [vec![0.5, 0.25, 0.25], vec![0.25, 0.25, 0.5], vec![0.125, 0.125, 0.25, 0.5]] {
        let (_, bound) = build_code_with_bound(&dist(q)).unwrap();
        assert_eq!(bound, 0.0);
    }
    for k in 0..=6 {
        let n = 1usize << k;
        let (book, bound) = build_code_with_bound(&dist(vec![1.0 / n as f64; n])).unwrap();
        assert_eq!(bound, 0.0);
        assert!(book.lengths().iter().all(|&l| l == k));
    }
}

#[test]
fn point_mass_on_worst_symbol_attains_bound() {
    let q = dist(vec![0.3, 0.1, 0.2, 0.4]);
    let (book, bound) = build_code_with_bound(&q).unwrap();
    let worst = (0..4)
        .max_by(|&a, &b| {
            let f = |i: usize| q.probs()[i].log2() + book.lengths()[i] as f64;
            f(a).total_cmp(&f(b))
        })
        .unwrap();
    let mut p = vec![0.0; 4];
    p[worst] = 1.0;
    let r = evaluate(&dist(p), &book, &q).unwrap();
    assert!((r.excess - bound).abs() < 1e-9);
}
