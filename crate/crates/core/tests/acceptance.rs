//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use minimax_prefix::bounds::{minimax_bounds, SWEEP_HEADER};
use minimax_prefix::codec::{decode, encode};
use minimax_prefix::extremal::{gen_lower_family, gen_upper_family, Expectation, Target};
use minimax_prefix::oracle::brute_force_optimum;
use minimax_prefix::verify::{random_distribution, random_with_p1, run_trials, sweep_bounds, TrialReport};
use minimax_prefix::{
    bounds, canonical_assign, huffman_average, minimax_huffman, Distribution64, Objective,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn failures_in(report: &TrialReport, checks: &[&str]) -> (usize, u64) {
    let failed = report
        .failures
        .iter()
        .filter(|f| checks.contains(&f.check.as_str()))
        .count();
    let evaluated = checks
        .iter()
        .map(|c| report.checks.get(*c).copied().unwrap_or(0))
        .sum();
    (failed, evaluated)
}

fn from_report(report: &TrialReport, checks: &[&str]) -> Outcome {
    let (failed, evaluated) = failures_in(report, checks);
    if let Some(f) = report.failures.iter().find(|f| checks.contains(&f.check.as_str())) {
        eprintln!("  first failure: {f:?}");
    }
    outcome(
        failed == 0 && evaluated > 0,
        format!("{evaluated} checks, {failed} violations"),
    )
}

fn worked_example() -> Outcome {
    let p = Distribution64::new(&[0.5, 0.3, 0.2]).unwrap();
    let r = minimax_huffman(&p);
    let w_root = r.trace.as_ref().unwrap().root_weight();
    let ok = r.lengths.as_slice() == [1, 2, 2]
        && (w_root - 1.2).abs() <= 1e-12
        && (r.objective_value - 1.2f64.log2()).abs() <= 1e-12;
    outcome(ok, format!("lengths {:?}, w_root {w_root}, R* {}", r.lengths.as_slice(), r.objective_value))
}

fn determination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut violations = 0;
    for _ in 0..1000 {
        let p1 = rng.random_range(2.0 / 3.0..1.0);
        let p = random_with_p1(&mut rng, p1);
        let opt = brute_force_optimum(&p, Objective::Minimax).unwrap().value;
        let gap = (opt - (1.0 + p.p1().log2())).abs();
        worst = worst.max(gap);
        if gap > 1e-9 || !minimax_bounds(p.p1()).unwrap().determined {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("1000 distributions, worst gap {worst:.2e}, {violations} violations"))
}

fn witnesses() -> Outcome {
    let mut worst_lower = 0.0f64;
    let mut worst_achieved = 0.0f64;
    let mut worst_approach = 0.0f64;
    let mut bad = Vec::new();
    for k in 1..=99 {
        let p1 = k as f64 / 100.0;
        let b = minimax_bounds(p1).unwrap();

        let (p, _) = gen_lower_family(p1).unwrap();
        let gap = (minimax_huffman(&p).objective_value - b.lower).abs();
        worst_lower = worst_lower.max(gap);
        if gap > 1e-9 {
            bad.push(format!("lower@{p1}"));
        }

        let (p, spec) = gen_upper_family(p1, Some(1e-7)).unwrap();
        let got = minimax_huffman(&p).objective_value;
        let Target::Redundancy(target) = spec.target else { unreachable!() };
        let gap = b.upper - got;
        let ok = (target - b.upper).abs() <= 1e-9
            && match spec.expectation {
                Expectation::Achieves => {
                    worst_achieved = worst_achieved.max(gap.abs());
                    b.upper_achievable && gap.abs() <= 1e-9
                }
                Expectation::Approaches => {
                    worst_approach = worst_approach.max(gap);
                    !b.upper_achievable && gap > 0.0 && gap < 1e-5
                }
            };
        if !ok {
            bad.push(format!("upper@{p1}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "99 grid points; worst gaps lower {worst_lower:.1e}, achieved {worst_achieved:.1e}, approached {worst_approach:.1e}; failing {bad:?}"
        ),
    )
}

fn parse_row(line: &str) -> Vec<f64> {
    line.split(',').map(|x| x.parse::<f64>().unwrap()).collect()
}

fn figure_sweep() -> Outcome {
    let rows = sweep_bounds(0.001, 0.999, 0.001).unwrap();
    let csv = bounds::sweep_csv(&rows);
    let mut lines = csv.lines();
    let mut problems = Vec::new();
    if lines.next() != Some(SWEEP_HEADER) {
        problems.push("header".to_string());
    }
    let parsed: Vec<Vec<f64>> = lines.map(parse_row).collect();
    if parsed.len() != 999 {
        problems.push(format!("{} rows", parsed.len()));
    }
    for r in &parsed {
        let (p1, lower, upper, determined) = (r[0], r[2], r[4], r[6]);
        if r.iter().any(|x| x.is_nan()) || lower > upper {
            problems.push(format!("row {p1}"));
        }
        let collapsed = determined == 1.0 && lower == upper && (lower - (1.0 + p1.log2())).abs() <= 5e-7;
        if p1 >= 2.0 / 3.0 && !collapsed {
            problems.push(format!("collapse {p1}"));
        }
    }
    for k in 1..=9 {
        let p1 = 2f64.powi(-k);
        let b = minimax_bounds(p1).unwrap();
        if !(b.lower == 0.0 && b.lower_achievable && (b.upper - 1.0).abs() < 1e-12 && !b.upper_achievable) {
            problems.push(format!("2^-{k}: {b:?}"));
        }
    }
    let spots = [
        (0.4, (1.2f64).log2(), 2.0 + 0.4f64.log2()),
        (0.5, 0.0, 1.0),
        (0.75, 1.0 + 0.75f64.log2(), 1.0 + 0.75f64.log2()),
    ];
    for (p1, lower, upper) in spots {
        let row = parse_row(&sweep_bounds(p1, p1, 0.001).unwrap()[0].to_csv());
        if format!("{:.6}", row[2]) != format!("{lower:.6}") || format!("{:.6}", row[4]) != format!("{upper:.6}") {
            problems.push(format!("spot {p1}: {row:?}"));
        }
    }
    outcome(problems.is_empty(), format!("{} rows; problems {problems:?}", parsed.len()))
}

fn codec_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut failures = 0;
    let mut singles = 0;
    for trial in 0..100 {
        let n = if trial % 10 == 0 { 1 } else { rng.random_range(2..=40) };
        let p = random_distribution(&mut rng, n);
        let lengths = if trial % 2 == 0 {
            minimax_huffman(&p).lengths
        } else {
            huffman_average(&p).lengths
        };
        let book = canonical_assign(&lengths).unwrap();
        let len = rng.random_range(0..2000);
        let message: Vec<usize> = (0..len).map(|_| rng.random_range(0..n)).collect();
        let payload = encode(&book, &message).unwrap();
        if decode(&book, &payload).ok().as_deref() != Some(&message[..]) {
            failures += 1;
        }
        singles += usize::from(n == 1);
    }
    outcome(failures == 0 && singles > 0, format!("100 pairs ({singles} single-symbol), {failures} mismatches"))
}

fn main() {
    let report = run_trials(2, 10, 10_000, SEED, &[1.0, 2.0]).expect("valid parameters");
    let criteria: Vec<Criterion> = vec![
        ("worked example (0.5,0.3,0.2)", Box::new(worked_example)),
        ("coders match the oracle on 10000 distributions", Box::new(|| {
            from_report(&report, &["coder-vs-oracle"])
        })),
        ("R*_opt lies in the p(1) interval", Box::new(|| {
            from_report(&report, &["theorem1-containment", "theorem1-stress"])
        })),
        ("R*_opt = 1 + lg p(1) when p(1) >= 2/3", Box::new(determination)),
        ("extremal families attain or approach the bounds", Box::new(witnesses)),
        ("first codeword length bounds", Box::new(|| {
            from_report(&report, &["theorem2-upper", "theorem2-exists"])
        })),
        ("merge-trace properties 1-4", Box::new(|| {
            from_report(&report, &["lemma1-prop1", "lemma1-prop2", "lemma1-prop3", "lemma1-prop4"])
        })),
        ("redundancy chain", Box::new(|| from_report(&report, &["lyapunov-chain"]))),
        ("bound sweep at step 0.001", Box::new(figure_sweep)),
        ("codec roundtrip", Box::new(codec_roundtrip)),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.ok;
        println!("criterion {:>2} {}: {name} ({})", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("oracle sample took {} ms", report.elapsed_ms);
    if !all {
        std::process::exit(1);
    }
}
