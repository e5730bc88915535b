//! Randomized property harness.
//!
//! [`run_trials`] draws seeded random distributions and runs every named check
//! against the coders, the bounds, the extremal generators and the exhaustive
//! oracle, collecting failures with enough data to reproduce them.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, BoundInterval, SweepRow};
use crate::coders::{
    dth_exp_code, exp_huffman, huffman_average, minimax_huffman, shannon_code, CoderResult,
};
use crate::error::{Error, Result};
use crate::extremal::{gen_lower_family, gen_upper_family, Expectation, Target};
use crate::model::{Distribution, LengthVector, WeightVector};
use crate::objectives::{max_redundancy, Objective};
use crate::oracle::{all_optima, brute_force_optima, MAX_ALL_OPTIMA};

/// Slack for bit-valued comparisons.
pub const TOL: f64 = 1e-9;
/// Largest alphabet the harness will brute-force.
pub const MAX_TRIAL_N: usize = 10;
/// `ε` used when probing approachable upper bounds.
pub const WITNESS_EPSILON: f64 = 1e-7;
/// Allowed gap between an approaching witness and its bound.
pub const APPROACH_GAP: f64 = 1e-5;
/// Redundancy-chain exponents always checked, on top of the caller's `d` list.
pub const CHAIN_DS: [f64; 3] = [0.5, 1.0, 2.0];
/// Random distributions drawn per point of the `p(1)` stress grid.
pub const STRESS_SAMPLES: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: String,
    /// Trial index, or `None` for grid-based checks.
    pub trial: Option<usize>,
    /// Sorted probabilities, at full precision.
    pub distribution: Vec<f64>,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub trial_count: usize,
    pub n_range: (usize, usize),
    pub d_list: Vec<f64>,
    /// How many times each named check was evaluated.
    pub checks: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// JSON without the timing field; identical across reruns with the same seed.
    pub fn body_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates check counts and failures for one unit of work.
#[derive(Debug, Default)]
pub struct CheckLog {
    counts: BTreeMap<String, u64>,
    failures: Vec<Failure>,
    trial: Option<usize>,
}

impl CheckLog {
    fn scoped(trial: Option<usize>) -> Self {
        Self {
            trial,
            ..Self::default()
        }
    }

    /// Records one evaluation of `check`; `expected`/`got` are only rendered on failure.
    pub fn check(
        &mut self,
        check: &str,
        ok: bool,
        p: &Distribution<f64>,
        expected: impl FnOnce() -> String,
        got: impl FnOnce() -> String,
    ) {
        *self.counts.entry(check.to_string()).or_default() += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                trial: self.trial,
                distribution: p.probs().to_vec(),
                expected: expected(),
                got: got(),
            });
        }
    }

    fn merge(&mut self, other: CheckLog) {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }
}

type BoundsFn = fn(f64) -> Result<BoundInterval<f64>>;

/// The harness, parameterized by the bound function under test so that a
/// deliberately corrupted bound can be shown to fail.
#[derive(Debug, Clone, Copy)]
pub struct Harness {
    pub minimax_bounds: BoundsFn,
    /// Also run the `p(1)` stress grid and the extremal-witness grid.
    pub grids: bool,
}

impl Default for Harness {
    fn default() -> Self {
        Self {
            minimax_bounds: bounds::minimax_bounds::<f64>,
            grids: true,
        }
    }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Sorted random distribution on `n` symbols.
///
/// Mostly uniform on the simplex; one draw in ten is near-degenerate (a
/// dominant symbol or a geometric tail) to reach the large-`p(1)` rows.
pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> Distribution<f64> {
    let shape: f64 = rng.random();
    let mut v: Vec<f64> = if n >= 2 && shape < 0.05 {
        let p1 = rng.random_range(0.5..0.999);
        let tail: Vec<f64> = (1..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = tail.iter().sum();
        std::iter::once(p1)
            .chain(tail.into_iter().map(|x| (1.0 - p1) * x / total))
            .collect()
    } else if shape < 0.10 {
        let r = rng.random_range(0.1..0.9);
        (0..n).map(|i| f64::powi(r, i as i32)).collect()
    } else {
        (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect()
    };
    let total: f64 = v.iter().sum();
    for x in &mut v {
        *x /= total;
    }
    Distribution::new(&v).expect("normalized positive values")
}

/// Random distribution whose largest mass is exactly `p1`.
pub fn random_with_p1<R: Rng>(rng: &mut R, p1: f64) -> Distribution<f64> {
    let min_rest = ((1.0 - p1) / p1).ceil().max(1.0) as usize;
    let mut m = min_rest + rng.random_range(0..4);
    loop {
        for _ in 0..64 {
            let tail: Vec<f64> = (0..m).map(|_| rng.sample::<f64, _>(Exp1)).collect();
            let total: f64 = tail.iter().sum();
            let tail: Vec<f64> = tail.into_iter().map(|x| (1.0 - p1) * x / total).collect();
            if tail.iter().all(|&x| x <= p1) {
                let mut v = vec![p1];
                v.extend(tail);
                return Distribution::new(&v).expect("valid by construction");
            }
        }
        m += 1;
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.17e}")
}

fn chain_ds(d_list: &[f64]) -> Vec<f64> {
    let mut ds: Vec<f64> = CHAIN_DS.iter().chain(d_list).copied().collect();
    ds.sort_by(|a, b| a.total_cmp(b));
    ds.dedup();
    ds
}

/// Structural checks on a minimax merge trace, recorded as `lemma1-prop1..4`.
pub fn check_minimax_trace(log: &mut CheckLog, p: &Distribution<f64>, r: &CoderResult<f64>) {
    let trace = r.trace.as_ref().expect("minimax coder returns a trace");
    let merges = trace.merges();
    let nondecreasing = merges
        .windows(2)
        .all(|w| w[0].log2_weight <= w[1].log2_weight + 1e-12);
    log.check("lemma1-prop1", nondecreasing, p, || "nondecreasing merge weights".into(), || {
        format!("{:?}", merges.iter().map(|m| m.weight()).collect::<Vec<_>>())
    });

    let rstar = max_redundancy(p, &r.lengths).expect("sizes match");
    let root = trace.root_log2_weight();
    log.check("lemma1-prop2", (root - rstar).abs() <= TOL, p, || fmt(rstar), || fmt(root));

    let structural = trace.leaf_count() == p.len()
        && trace.nodes().len() == 2 * p.len() - 1
        && merges.iter().all(|m| m.children.is_some());
    let dominated = trace
        .nodes()
        .iter()
        .all(|node| node.prob_mass <= node.weight() + TOL);
    log.check("lemma1-prop3", structural && dominated, p, || "prob_mass <= weight".into(), || {
        let worst = trace
            .nodes()
            .iter()
            .map(|node| node.prob_mass - node.weight())
            .fold(f64::NEG_INFINITY, f64::max);
        format!("structural={structural}, worst excess {worst:e}")
    });

    let n = p.len();
    if n >= 2 && p.p1() <= 2.0 * p.probs()[n - 2] {
        let lo = (n as f64).log2().floor() as u32;
        let hi = (n as f64).log2().ceil() as u32;
        let ok = r.lengths.is_kraft_complete()
            && r.lengths.as_slice().iter().all(|&l| l == lo || l == hi);
        log.check("lemma1-prop4", ok, p, || format!("lengths in {{{lo},{hi}}}"), || {
            format!("{:?}", r.lengths.as_slice())
        });
    }
}

impl Harness {
    fn run_one(&self, p: &Distribution<f64>, d_list: &[f64], log: &mut CheckLog) -> Result<()> {
        let n = p.len();
        let p1 = p.p1();
        let ds = chain_ds(d_list);

        // oracle optima: avg, minimax, L_0.5, L_2, then R^d for each chain d
        let mut objectives = vec![
            Objective::Average,
            Objective::Minimax,
            Objective::ExpAverage(0.5),
            Objective::ExpAverage(2.0),
        ];
        objectives.extend(ds.iter().map(|&d| Objective::DthExp(d)));
        let optima = brute_force_optima(p, &objectives)?;
        let opt = |i: usize| optima[i].value;

        let weights = WeightVector::from_distribution(p);
        let average = huffman_average(p);
        let minimax = minimax_huffman(p);
        let exp_half = exp_huffman(&weights, 0.5)?;
        let exp_two = exp_huffman(&weights, 2.0)?;
        let mut coded: Vec<(Objective<f64>, f64, &LengthVector)> = vec![
            (Objective::Average, opt(0), &average.lengths),
            (Objective::Minimax, opt(1), &minimax.lengths),
            (Objective::ExpAverage(0.5), opt(2), &exp_half.lengths),
            (Objective::ExpAverage(2.0), opt(3), &exp_two.lengths),
        ];
        let dth: Vec<(f64, CoderResult<f64>)> = d_list
            .iter()
            .map(|&d| Ok((d, dth_exp_code(p, d)?)))
            .collect::<Result<_>>()?;
        for (d, r) in &dth {
            let idx = 4 + ds.iter().position(|x| x == d).expect("d_list is part of ds");
            coded.push((Objective::DthExp(*d), opt(idx), &r.lengths));
        }
        for (objective, best, lengths) in coded {
            let got = objective.evaluate(p, lengths)?;
            log.check(
                "coder-vs-oracle",
                (got - best).abs() <= TOL,
                p,
                || format!("{} = {}", objective.name(), fmt(best)),
                || fmt(got),
            );
        }

        // bounds on the optimum
        let rstar_opt = opt(1);
        let interval = (self.minimax_bounds)(p1)?;
        log.check(
            "theorem1-containment",
            interval.contains(rstar_opt, TOL),
            p,
            || format!("{interval:?}"),
            || fmt(rstar_opt),
        );
        if p1 >= 2.0 / 3.0 {
            let want = 1.0 + p1.log2();
            log.check(
                "theorem1-determined",
                (rstar_opt - want).abs() <= TOL && interval.determined,
                p,
                || fmt(want),
                || fmt(rstar_opt),
            );
        }
        if n >= 2 {
            let l1 = bounds::l1_bounds(p1)?;
            log.check(
                "theorem2-upper",
                minimax.lengths[0] <= l1.max_over_all_optima,
                p,
                || format!("l(1) <= {}", l1.max_over_all_optima),
                || format!("minimax_huffman l(1) = {}", minimax.lengths[0]),
            );
            if n <= MAX_ALL_OPTIMA {
                let set = all_optima(p, Objective::Minimax)?;
                let firsts: Vec<u32> = set.vectors.iter().map(|l| l[0]).collect();
                log.check(
                    "theorem2-upper",
                    firsts.iter().all(|&l| l <= l1.max_over_all_optima),
                    p,
                    || format!("every l(1) <= {}", l1.max_over_all_optima),
                    || format!("{firsts:?}"),
                );
                log.check(
                    "theorem2-exists",
                    firsts.iter().any(|&l| l >= l1.min_over_some_optimum),
                    p,
                    || format!("some l(1) >= {}", l1.min_over_some_optimum),
                    || format!("{firsts:?}"),
                );
            }
            let moab = bounds::avg_lower_moab(p1)?;
            let gallager = bounds::gallager_upper_avg(p1)?;
            log.check(
                "avg-bounds",
                moab <= opt(0) + TOL && opt(0) <= gallager + TOL,
                p,
                || format!("[{}, {}]", fmt(moab), fmt(gallager)),
                || fmt(opt(0)),
            );
            for (k, &d) in ds.iter().enumerate() {
                let b = bounds::dexp_bounds(p1, d)?;
                let v = opt(4 + k);
                log.check("dexp-bounds", b.contains(v, TOL), p, || format!("{b:?}"), || fmt(v));
            }
        }

        check_minimax_trace(log, p, &minimax);

        // R̄ ≤ R^d ≤ R* for every optimal code, and the same for the optimal values
        let mut optimal_codes: Vec<&LengthVector> = vec![&average.lengths, &minimax.lengths];
        optimal_codes.extend(dth.iter().map(|(_, r)| &r.lengths));
        for l in optimal_codes {
            let chain = bounds::simple_chain(p, l, &ds)?;
            log.check("lyapunov-chain", chain.is_ordered(TOL), p, || "ordered chain".into(), || {
                format!("{chain:?} for {:?}", l.as_slice())
            });
        }
        let rstar_code = max_redundancy(p, &minimax.lengths)?;
        let mut values = vec![opt(0)];
        values.extend((0..ds.len()).map(|k| opt(4 + k)));
        values.push(rstar_opt);
        let ordered = values[0] >= -TOL
            && values.windows(2).all(|w| w[0] <= w[1] + TOL)
            && rstar_opt < 1.0
            && rstar_code < 1.0;
        log.check("lyapunov-chain", ordered, p, || "0 <= avg <= R^d... <= R* < 1".into(), || {
            format!("{values:?}")
        });

        let shannon = shannon_code(p);
        log.check(
            "shannon-dominance",
            minimax.lengths.max_len() <= shannon.lengths.max_len(),
            p,
            || format!("max length <= {}", shannon.lengths.max_len()),
            || format!("{}", minimax.lengths.max_len()),
        );

        let mut complete = vec![&average.lengths, &minimax.lengths, &exp_half.lengths, &exp_two.lengths];
        complete.extend(dth.iter().map(|(_, r)| &r.lengths));
        let kraft_ok = complete.iter().all(|l| l.is_kraft_complete())
            && shannon.lengths.is_kraft_feasible()
            && (n < 2 || crate::coders::first_order_shannon(p)?.lengths.is_kraft_feasible());
        log.check("kraft-exact", kraft_ok, p, || "Kraft sums exact".into(), || "violation".into());
        Ok(())
    }

    /// Containment on random distributions with a prescribed `p(1)`, using the
    /// (oracle-verified) minimax coder for alphabets too large to enumerate.
    fn stress_grid(&self, seed: u64, stream_base: u64, log: &mut CheckLog) -> Result<()> {
        for k in 1..=99u64 {
            let p1 = k as f64 / 100.0;
            let mut rng = trial_rng(seed, stream_base + k);
            let interval = (self.minimax_bounds)(p1)?;
            for _ in 0..STRESS_SAMPLES {
                let p = random_with_p1(&mut rng, p1);
                let value = minimax_huffman(&p).objective_value;
                log.check(
                    "theorem1-stress",
                    interval.contains(value, TOL),
                    &p,
                    || format!("{interval:?}"),
                    || fmt(value),
                );
            }
        }
        Ok(())
    }

    fn witness_grid(&self, log: &mut CheckLog) -> Result<()> {
        for k in 1..=99u32 {
            let p1 = k as f64 / 100.0;
            let interval = (self.minimax_bounds)(p1)?;

            let (p, spec) = gen_lower_family(p1)?;
            let value = minimax_huffman(&p).objective_value;
            let Target::Redundancy(target) = spec.target else {
                unreachable!("lower family targets a redundancy")
            };
            let ok = (value - target).abs() <= TOL && (interval.lower - target).abs() <= TOL;
            log.check("extremal-witness", ok, &p, || {
                format!("lower {} (bound {})", fmt(target), fmt(interval.lower))
            }, || fmt(value));

            let epsilon = Some(WITNESS_EPSILON);
            let (p, spec) = gen_upper_family(p1, epsilon)?;
            let value = minimax_huffman(&p).objective_value;
            let Target::Redundancy(target) = spec.target else {
                unreachable!("upper family targets a redundancy")
            };
            let ok = match spec.expectation {
                Expectation::Achieves => {
                    interval.upper_achievable && (value - target).abs() <= TOL
                }
                Expectation::Approaches => {
                    !interval.upper_achievable && value < target && target - value < APPROACH_GAP
                }
            } && (interval.upper - target).abs() <= TOL;
            log.check("extremal-witness", ok, &p, || {
                format!("upper {} {:?} (bound {})", fmt(target), spec.expectation, fmt(interval.upper))
            }, || fmt(value));
        }
        Ok(())
    }

    pub fn run(
        &self,
        n_min: usize,
        n_max: usize,
        trials: usize,
        seed: u64,
        d_list: &[f64],
    ) -> Result<TrialReport> {
        if !(2 <= n_min && n_min <= n_max && n_max <= MAX_TRIAL_N) {
            return Err(Error::InvalidParameter(format!(
                "need 2 <= nmin <= nmax <= {MAX_TRIAL_N}, got {n_min}..{n_max}"
            )));
        }
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if let Some(d) = d_list.iter().find(|d| !(**d > 0.0) || !d.is_finite()) {
            return Err(Error::InvalidParameter(format!("d must be positive, got {d}")));
        }
        let start = Instant::now();
        let logs: Vec<CheckLog> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, t as u64);
                let n = rng.random_range(n_min..=n_max);
                let p = random_distribution(&mut rng, n);
                let mut log = CheckLog::scoped(Some(t));
                self.run_one(&p, d_list, &mut log).map(|_| log)
            })
            .collect::<Result<_>>()?;
        let mut total = CheckLog::default();
        for log in logs {
            total.merge(log);
        }
        if self.grids {
            let mut grid = CheckLog::scoped(None);
            self.stress_grid(seed, trials as u64, &mut grid)?;
            self.witness_grid(&mut grid)?;
            total.merge(grid);
        }
        Ok(TrialReport {
            seed,
            trial_count: trials,
            n_range: (n_min, n_max),
            d_list: d_list.to_vec(),
            checks: total.counts,
            failures: total.failures,
            elapsed_ms: start.elapsed().as_millis() as u64,
        })
    }
}

/// Runs every check with the reference bounds.
pub fn run_trials(
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u64,
    d_list: &[f64],
) -> Result<TrialReport> {
    Harness::default().run(n_min, n_max, trials, seed, d_list)
}

/// Evaluates [`bounds::minimax_bounds`] on the grid `start, start + step, ..., stop`.
///
/// Grid points are rounded to 12 decimals so that decimal grids hit values such
/// as `0.25` exactly.
pub fn sweep_bounds(start: f64, stop: f64, step: f64) -> Result<Vec<SweepRow>> {
    if !(start > 0.0 && start <= stop && stop <= 1.0 && step > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sweep needs 0 < start <= stop <= 1 and step > 0, got {start}:{stop}:{step}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|k| {
            let p1 = ((start + k as f64 * step) * 1e12).round() / 1e12;
            Ok(SweepRow {
                p1,
                bounds: bounds::minimax_bounds(p1)?,
            })
        })
        .collect()
}
