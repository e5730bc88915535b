use minimax_prefix::extremal::{
    gen_l1_family, gen_lower_family, gen_upper_family, upper_epsilon_range, Expectation,
    ExtremalFamily, L1Side, Target,
};
use minimax_prefix::oracle::{all_optima, brute_force_optimum};
use minimax_prefix::{l1_bounds, minimax_bounds, minimax_huffman, Objective};

fn redundancy(t: Target<f64>) -> f64 {
    match t {
        Target::Redundancy(r) => r,
        Target::FirstLength(_) => panic!("expected a redundancy target"),
    }
}

fn grid() -> impl Iterator<Item = f64> {
    (1..=99).map(|k| k as f64 / 100.0)
}

#[test]
fn approaching_families_are_monotone_in_epsilon() {
    for p1 in grid() {
        let (_, spec) = gen_upper_family(p1, None).unwrap();
        if spec.expectation != Expectation::Approaches {
            continue;
        }
        let (max, _) = upper_epsilon_range(p1).unwrap();
        // shrinking ε moves R*_opt up towards the open bound
        let mut previous = f64::NEG_INFINITY;
        for k in 1..=8 {
            let eps = max * 10f64.powi(-k) * 0.9;
            let (p, _) = gen_upper_family(p1, Some(eps)).unwrap();
            let r = minimax_huffman(&p).objective_value;
            assert!(r >= previous - 1e-12, "p1 {p1} eps {eps}: {r} < {previous}");
            previous = r;
        }
        assert!(previous < redundancy(spec.target));
    }
}

#[test]
fn generated_distributions_validate_and_match_oracle() {
    for p1 in grid() {
        for (p, spec) in [gen_lower_family(p1).unwrap(), gen_upper_family(p1, None).unwrap()] {
            assert_eq!(p.p1(), p1);
            let sum: f64 = p.probs().iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
            if p.len() <= 10 {
                let best = brute_force_optimum(&p, Objective::Minimax).unwrap().value;
                assert!((best - minimax_huffman(&p).objective_value).abs() < 1e-9);
                if spec.expectation == Expectation::Achieves {
                    assert!((best - redundancy(spec.target)).abs() < 1e-9, "{spec:?}");
                }
            }
        }
    }
}

#[test]
fn complete_tree_families_satisfy_the_mass_predicate() {
    for p1 in grid() {
        for (p, spec) in [gen_lower_family(p1).unwrap(), gen_upper_family(p1, Some(1e-7)).unwrap()] {
            let complete = matches!(
                spec.family,
                ExtremalFamily::LowerComplete | ExtremalFamily::UpperRow3 | ExtremalFamily::UpperRow12
            );
            if complete && p.len() >= 2 {
                let n = p.len();
                assert!(p.p1() <= 2.0 * p.probs()[n - 2], "{spec:?}");
            }
        }
    }
}

#[test]
fn lower_fixed_family_is_the_corrected_one() {
    for lambda in 1..=4 {
        let p1 = 1.0 / f64::powi(2.0, lambda) + 1e-3;
        let (p, spec) = gen_lower_family(p1).unwrap();
        if spec.family != ExtremalFamily::LowerFixed {
            continue;
        }
        assert!(spec.corrected);
        let r = minimax_huffman(&p);
        assert!(r.lengths.as_slice().iter().all(|&l| l == lambda as u32));
        assert!((r.objective_value - (lambda as f64 + p1.log2())).abs() < 1e-12);
    }
}

#[test]
fn example_families() {
    let (p, spec) = gen_lower_family(0.4f64).unwrap();
    assert_eq!(p.probs().len(), 3);
    assert!((p.probs()[1] - 0.3).abs() < 1e-15 && (p.probs()[2] - 0.3).abs() < 1e-15);
    assert!((redundancy(spec.target) - 1.2f64.log2()).abs() < 1e-12);
    assert!((redundancy(spec.target) - minimax_bounds(0.4).unwrap().lower).abs() < 1e-12);
}

#[test]
fn first_length_families() {
    for p1 in grid() {
        let b = l1_bounds(p1).unwrap();
        for side in [L1Side::Upper, L1Side::Lower] {
            let Ok((p, spec)) = gen_l1_family(p1, side) else { continue };
            let Target::FirstLength(l1) = spec.target else { panic!("first-length target") };
            match side {
                L1Side::Upper => assert_eq!(l1, b.max_over_all_optima),
                L1Side::Lower => assert_eq!(l1, b.min_over_some_optimum),
            }
            if p.len() <= 9 {
                let set = all_optima(&p, Objective::Minimax).unwrap();
                assert!(set.vectors.iter().all(|l| l[0] == l1), "p1 {p1} {side:?}: {:?}", set.vectors);
            }
        }
    }
}
