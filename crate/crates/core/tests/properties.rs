use minimax_prefix::bounds::simple_chain;
use minimax_prefix::oracle::brute_force_optima;
use minimax_prefix::verify::{check_minimax_trace, CheckLog};
use minimax_prefix::{
    canonical_assign, dth_exp_code, huffman_average, minimax_huffman, Distribution, Distribution64,
    LengthVector, Objective,
};
use proptest::prelude::*;

fn raw_probs(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..1.0, 1..=max_n).prop_map(|v| {
        let total: f64 = v.iter().sum();
        v.into_iter().map(|x| x / total).collect()
    })
}

fn dist(max_n: usize) -> impl Strategy<Value = Distribution64> {
    raw_probs(max_n).prop_map(|v| Distribution::new(&v).unwrap())
}

/// Kraft-feasible length vectors in arbitrary order.
fn feasible_lengths(max_n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..12, 1..=max_n).prop_filter("Kraft", |l| {
        LengthVector::new(l.clone()).is_kraft_feasible()
    })
}

/// A distribution and a shuffled feasible length vector of the same size.
fn paired(max_n: usize) -> impl Strategy<Value = (Distribution64, Vec<u32>)> {
    (2..=max_n).prop_flat_map(|n| {
        let p = prop::collection::vec(0.001f64..1.0, n).prop_map(|v| {
            let total: f64 = v.iter().sum();
            Distribution::new(&v.into_iter().map(|x| x / total).collect::<Vec<_>>()).unwrap()
        });
        let l = prop::collection::vec(1u32..8, n)
            .prop_filter("Kraft", |l| LengthVector::new(l.clone()).is_kraft_feasible());
        (p, l)
    })
}

const OBJECTIVES: [Objective<f64>; 6] = [
    Objective::Average,
    Objective::Minimax,
    Objective::ExpAverage(0.5),
    Objective::ExpAverage(2.0),
    Objective::DthExp(1.0),
    Objective::DthExp(4.0),
];

proptest! {
    #[test]
    fn chain_is_ordered_for_optimal_codes(p in dist(30)) {
        for l in [huffman_average(&p).lengths, minimax_huffman(&p).lengths, dth_exp_code(&p, 1.0).unwrap().lengths] {
            let chain = simple_chain(&p, &l, &[0.25, 0.5, 1.0, 2.0, 8.0]).unwrap();
            prop_assert!(chain.is_ordered(1e-9), "{:?}", chain);
        }
        prop_assert!(minimax_huffman(&p).objective_value < 1.0);
    }

    #[test]
    fn objectives_are_monotone_in_each_length(p in dist(12), seed in 0usize..1000) {
        let l = huffman_average(&p).lengths;
        let i = seed % p.len();
        let mut longer = l.as_slice().to_vec();
        longer[i] += 1;
        let longer = LengthVector::new(longer);
        for objective in OBJECTIVES {
            let before = objective.evaluate(&p, &l).unwrap();
            let after = objective.evaluate(&p, &longer).unwrap();
            prop_assert!(after >= before - 1e-12, "{} {} -> {}", objective.name(), before, after);
        }
    }

    #[test]
    fn canonical_codes_are_prefix_free(l in feasible_lengths(40)) {
        let book = canonical_assign(&LengthVector::new(l.clone())).unwrap();
        prop_assert_eq!(book.lengths().as_slice(), &l[..]);
        let words = book.codewords();
        for (i, a) in words.iter().enumerate() {
            prop_assert_eq!(a.len() as u32, l[i]);
            for (j, b) in words.iter().enumerate() {
                prop_assert!(i == j || !b.starts_with(a.as_str()), "{} prefixes {}", a, b);
            }
        }
    }

    #[test]
    fn permutation_roundtrip(v in raw_probs(20)) {
        let p = Distribution::new(&v).unwrap();
        prop_assert!(p.probs().windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(p.caller_probs(), v.clone());
        let mut seen = p.perm().to_vec();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..v.len()).collect::<Vec<_>>());
    }

    #[test]
    fn merge_trace_properties(p in dist(40)) {
        let mut log = CheckLog::default();
        check_minimax_trace(&mut log, &p, &minimax_huffman(&p));
        prop_assert!(log.failures().is_empty(), "{:?}", log.failures());
    }

    #[test]
    fn complete_tree_when_masses_are_close(n in 2usize..64, spread in 0.0f64..1.0) {
        // masses in [1, 2]: p(1) <= 2 p(n-1) holds for every such vector
        let v: Vec<f64> = (0..n).map(|i| 1.0 + spread * i as f64 / n as f64).collect();
        let total: f64 = v.iter().sum();
        let p = Distribution::new(&v.iter().map(|x| x / total).collect::<Vec<_>>()).unwrap();
        let l = minimax_huffman(&p).lengths;
        let lo = (n as f64).log2().floor() as u32;
        prop_assert!(l.is_kraft_complete());
        prop_assert!(l.as_slice().iter().all(|&x| x == lo || x == lo + 1));
    }

    #[test]
    fn unsorted_vectors_never_beat_the_oracle((p, l) in paired(6)) {
        let optima = brute_force_optima(&p, &OBJECTIVES).unwrap();
        let l = LengthVector::new(l);
        for (objective, best) in OBJECTIVES.iter().zip(&optima) {
            let value = objective.evaluate(&p, &l).unwrap();
            prop_assert!(value >= best.value - 1e-9, "{} {:?}: {} < {}", objective.name(), l, value, best.value);
        }
    }

    #[test]
    fn single_precision_agrees(v in raw_probs(10)) {
        let p64 = Distribution::new(&v).unwrap();
        let p32 = Distribution::<f32>::new(&v.iter().map(|&x| x as f32).collect::<Vec<_>>()).unwrap();
        let r32 = minimax_huffman(&p32).objective_value as f64;
        let r64 = minimax_huffman(&p64).objective_value;
        prop_assert!((r32 - r64).abs() < 1e-4);
    }
}
