//! Monte Carlo execution of a transmission plan over freshly drawn channels.
//!
//! Each trial draws a channel realization and ground-truth symbols from a
//! deterministic per-trial seed stream, runs the plan, decodes at both
//! receivers, and verifies the recovered symbols. Rank failures — a
//! measure-zero event under the generic channel distributions — are
//! resampled up to a small cap; a decode that *solves* but disagrees with
//! the ground truth is a genuine defect and fails the trial immediately.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point;
use crate::linalg::Scalar;
use crate::schemes::SchemePlan;
use crate::sim::channel::{
    sample_channel_exact, sample_channel_float, sample_truth_exact, sample_truth_float,
    ChannelDraw, DistError, DistributionSpec, LinkDist, Mode,
};
use crate::sim::decode::decode;
use crate::sim::transcript::{run_scheme, GroundTruth, SimError};

/// Maximum redraws per trial after a rank failure.
pub const RESAMPLE_CAP: usize = 5;
/// Default coefficient bound for exact-mode channel entries.
pub const EXACT_DEFAULT_BOUND: u32 = 1000;
/// Rank tolerance for float-mode elimination.
pub const FLOAT_RANK_TOL: f64 = 1e-9;
/// Symbol comparison tolerance for float-mode verification.
pub const FLOAT_MATCH_TOL: f64 = 1e-6;

/// Aggregate outcome of a Monte Carlo run.
#[derive(Clone, Debug)]
pub struct MonteCarloSummary {
    /// Trials requested (and executed).
    pub trials: usize,
    /// Trials whose decode succeeded and matched the ground truth.
    pub successes: usize,
    /// Trials that failed even after resampling.
    pub failures: usize,
    /// Total channel redraws taken across all trials.
    pub resamples: usize,
    /// Whether receiver 1 recovered both users' symbols in every successful
    /// trial.
    pub stronger_rx_both_all: bool,
    /// Causality violations observed across all access logs (must be 0).
    pub hermeticity_violations: usize,
    /// Total channel/feedback accesses recorded across all runs.
    pub access_records: usize,
    /// Dimensions of receiver 1's full linear system.
    pub rx1_system: (usize, usize),
    /// Dimensions of receiver 1's reduced system, for staged decoders.
    pub rx1_reduced: Option<(usize, usize)>,
    /// Dimensions of receiver 2's linear system.
    pub rx2_system: (usize, usize),
    /// The degrees-of-freedom pair the plan claims.
    pub claimed_dof: Point,
    /// `Some(claimed_dof)` when every trial succeeded, `None` otherwise.
    pub delivered_dof: Option<Point>,
    /// Description of the first hard failure, if any.
    pub first_failure: Option<String>,
}

enum Attempt {
    Success {
        stronger_both: bool,
        reduced: Option<(usize, usize)>,
        violations: usize,
        records: usize,
    },
    RankFailure {
        detail: String,
        violations: usize,
        records: usize,
    },
    HardFailure {
        detail: String,
        violations: usize,
        records: usize,
    },
}

fn attempt<T: Scalar>(
    plan: &SchemePlan,
    draw: &ChannelDraw<T>,
    truth: &GroundTruth<T>,
    tol: f64,
    match_tol: f64,
) -> Attempt {
    let tr = match run_scheme(plan, draw, truth, tol) {
        Ok(tr) => tr,
        Err(SimError::ReconstructionRankFailure { slot }) => {
            return Attempt::RankFailure {
                detail: format!("transmitter-2 reconstruction rank failure in slot {slot}"),
                violations: 0,
                records: 0,
            }
        }
        Err(e) => {
            return Attempt::HardFailure {
                detail: e.to_string(),
                violations: 0,
                records: 0,
            }
        }
    };
    let violations = tr.access_log.violations();
    let records = tr.access_log.records().len();
    let rep = decode(plan, draw, &tr, truth, tol, match_tol);
    if !rep.rx1.solved || !rep.rx2.solved {
        let detail = rep
            .rx1
            .failure
            .or(rep.rx2.failure)
            .unwrap_or_else(|| "rank failure".into());
        return Attempt::RankFailure {
            detail,
            violations,
            records,
        };
    }
    if !rep.rx1.symbols_correct || !rep.rx2.symbols_correct {
        return Attempt::HardFailure {
            detail: "decode solved but recovered symbols differ from the ground truth".into(),
            violations,
            records,
        };
    }
    if rep.oracle_consistent == Some(false) {
        return Attempt::HardFailure {
            detail: "staged and joint receiver-1 decodes disagree".into(),
            violations,
            records,
        };
    }
    Attempt::Success {
        stronger_both: rep.stronger_rx_both,
        reduced: rep.rx1.reduced_system,
        violations,
        records,
    }
}

fn run_trials<T: Scalar>(
    plan: &SchemePlan,
    trials: usize,
    seed: u64,
    tol: f64,
    match_tol: f64,
    mut draw_fn: impl FnMut(u64) -> Result<ChannelDraw<T>, DistError>,
    mut truth_fn: impl FnMut(u64) -> GroundTruth<T>,
) -> Result<MonteCarloSummary, DistError> {
    let n1 = plan.config.n1 as usize;
    let n2 = plan.config.n2 as usize;
    let u_count = plan.ledger.u_count;
    let v_count = plan.ledger.v_count;
    let mut summary = MonteCarloSummary {
        trials,
        successes: 0,
        failures: 0,
        resamples: 0,
        stronger_rx_both_all: true,
        hermeticity_violations: 0,
        access_records: 0,
        rx1_system: (plan.total_slots * n1, u_count + v_count),
        rx1_reduced: None,
        rx2_system: (plan.total_slots * n2, v_count + plan.phase1_slots * n2),
        claimed_dof: plan.claimed_dof.clone(),
        delivered_dof: None,
        first_failure: None,
    };
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut outcome: Option<(bool, Option<String>)> = None;
        for round in 0..=RESAMPLE_CAP {
            let chan_seed = master.next_u64();
            let truth_seed = master.next_u64();
            let draw = draw_fn(chan_seed)?;
            let truth = truth_fn(truth_seed);
            match attempt(plan, &draw, &truth, tol, match_tol) {
                Attempt::Success {
                    stronger_both,
                    reduced,
                    violations,
                    records,
                } => {
                    summary.hermeticity_violations += violations;
                    summary.access_records += records;
                    summary.stronger_rx_both_all &= stronger_both;
                    if summary.rx1_reduced.is_none() {
                        summary.rx1_reduced = reduced;
                    }
                    outcome = Some((true, None));
                    break;
                }
                Attempt::RankFailure {
                    detail,
                    violations,
                    records,
                } => {
                    summary.hermeticity_violations += violations;
                    summary.access_records += records;
                    if round == RESAMPLE_CAP {
                        outcome = Some((
                            false,
                            Some(format!("{detail} (after {RESAMPLE_CAP} resamples)")),
                        ));
                    } else {
                        summary.resamples += 1;
                    }
                }
                Attempt::HardFailure {
                    detail,
                    violations,
                    records,
                } => {
                    summary.hermeticity_violations += violations;
                    summary.access_records += records;
                    outcome = Some((false, Some(detail)));
                    break;
                }
            }
        }
        match outcome.expect("every trial resolves within the resample loop") {
            (true, _) => summary.successes += 1,
            (false, detail) => {
                summary.failures += 1;
                if summary.first_failure.is_none() {
                    summary.first_failure = detail;
                }
            }
        }
    }
    if summary.failures == 0 && summary.successes == trials {
        summary.delivered_dof = Some(summary.claimed_dof.clone());
    }
    Ok(summary)
}

/// Runs `trials` independent executions of `plan` over channels drawn from
/// `dist`, decoding and verifying each one.
pub fn monte_carlo(
    plan: &SchemePlan,
    dist: &DistributionSpec,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloSummary, DistError> {
    let slots = plan.total_slots;
    let u_count = plan.ledger.u_count;
    let v_count = plan.ledger.v_count;
    match dist.mode()? {
        Mode::Exact => {
            let truth_bound = match dist.h11 {
                LinkDist::UniformInt { bound } => bound,
                LinkDist::ComplexGaussian => EXACT_DEFAULT_BOUND,
            };
            run_trials(
                plan,
                trials,
                seed,
                0.0,
                0.0,
                |s| sample_channel_exact(&plan.config, slots, dist, s),
                |s| sample_truth_exact(u_count, v_count, truth_bound, s),
            )
        }
        Mode::Float => run_trials(
            plan,
            trials,
            seed,
            FLOAT_RANK_TOL,
            FLOAT_MATCH_TOL,
            |s| sample_channel_float(&plan.config, slots, dist, s),
            |s| sample_truth_float(u_count, v_count, s),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AntennaConfig;
    use crate::rational::rat;
    use crate::schemes::{plan_p0_p1, plan_p2};

    #[test]
    fn exact_run_succeeds_and_reports_dimensions() {
        let cfg = AntennaConfig::new(6, 2, 4, 3).unwrap();
        let plan = plan_p0_p1(&cfg).unwrap();
        let dist = DistributionSpec::exact_uniform(1000).unwrap();
        let summary = monte_carlo(&plan, &dist, 20, 7).unwrap();
        assert_eq!(summary.trials, 20);
        assert_eq!(summary.successes, 20);
        assert_eq!(summary.failures, 0);
        assert_eq!(summary.rx1_system, (12, 12));
        assert_eq!(summary.rx1_reduced, Some((6, 6)));
        assert_eq!(summary.rx2_system, (9, 9));
        assert!(summary.stronger_rx_both_all);
        assert_eq!(summary.hermeticity_violations, 0);
        assert!(summary.access_records > 0);
        assert_eq!(summary.delivered_dof, Some(summary.claimed_dof.clone()));
        assert_eq!(summary.claimed_dof, (rat(2, 1), rat(2, 1)));
    }

    #[test]
    fn runs_are_deterministic_in_the_seed() {
        let cfg = AntennaConfig::new(8, 4, 6, 5).unwrap();
        let plan = plan_p2(&cfg).unwrap();
        let dist = DistributionSpec::exact_uniform(50).unwrap();
        let a = monte_carlo(&plan, &dist, 5, 42).unwrap();
        let b = monte_carlo(&plan, &dist, 5, 42).unwrap();
        assert_eq!(a.successes, b.successes);
        assert_eq!(a.resamples, b.resamples);
        assert_eq!(a.access_records, b.access_records);
        let c = monte_carlo(&plan, &dist, 5, 43).unwrap();
        assert_eq!(c.successes, 5);
    }

    #[test]
    fn float_mode_succeeds_with_tolerances() {
        let cfg = AntennaConfig::new(6, 2, 4, 3).unwrap();
        let plan = plan_p0_p1(&cfg).unwrap();
        let dist = DistributionSpec::gaussian();
        let summary = monte_carlo(&plan, &dist, 10, 11).unwrap();
        assert_eq!(summary.successes, 10);
        assert_eq!(summary.failures, 0);
        assert!(summary.stronger_rx_both_all);
        assert_eq!(summary.hermeticity_violations, 0);
    }

    #[test]
    fn tiny_bound_may_resample_but_stays_deterministic() {
        // A bound of 2 gives singular draws a real chance, exercising the
        // resample path; the run must remain reproducible.
        let plan = plan_p2(&AntennaConfig::new(8, 4, 6, 5).unwrap()).unwrap();
        let dist = DistributionSpec::exact_uniform(2).unwrap();
        let a = monte_carlo(&plan, &dist, 30, 3).unwrap();
        let b = monte_carlo(&plan, &dist, 30, 3).unwrap();
        assert_eq!(a.resamples, b.resamples);
        assert_eq!(a.successes, b.successes);
        assert_eq!(a.failures, b.failures);
    }
}
