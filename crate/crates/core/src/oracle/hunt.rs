use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::generate::{gen_point_pair, gen_point_pair_perturbed, gen_polygon_pair, gen_polygon_pair_perturbed};
use super::{oracle_joint_exists, polygon_oracle_exists, MAX_ORACLE_POLYGON};
use crate::conditions::{check_condition1, check_condition2, legal_set, Condition1, PointSetPair};
use crate::empty::{paired_empty, IndexTriangle};
use crate::greedy::{greedy_construct, Policy};
use crate::io::{write_points, write_polygon};
use crate::polygon::{dp_joint_polygon, fill_dp, PolygonPair, SplitRule};

/// Largest point-set size the hunt cross-checks against the oracle.
pub const HUNT_ORACLE_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuntMode {
    Points,
    Polygons,
}

#[derive(Debug, Clone)]
pub struct HuntConfig {
    pub mode: HuntMode,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub coord_range: i64,
    pub cross_check: bool,
}

impl HuntConfig {
    pub fn new(mode: HuntMode, n_min: usize, n_max: usize, trials: usize, seed: u64) -> Self {
        HuntConfig { mode, n_min, n_max, trials, seed, coord_range: 100, cross_check: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterexampleKind {
    /// Both conditions hold but the greedy result failed verification.
    GreedyFailed,
    /// The oracle found a joint triangulation although a condition failed.
    NecessityViolated,
    /// The polygon DP and the exhaustive search disagree on existence.
    DpOracleMismatch,
    /// The polygon DP produced a triangle set that failed verification.
    DpUnverified,
}

impl CounterexampleKind {
    pub fn name(self) -> &'static str {
        match self {
            CounterexampleKind::GreedyFailed => "greedy-failed",
            CounterexampleKind::NecessityViolated => "necessity-violated",
            CounterexampleKind::DpOracleMismatch => "dp-oracle-mismatch",
            CounterexampleKind::DpUnverified => "dp-unverified",
        }
    }
}

/// The instance plus what happened on it, ready to be written as a file.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub kind: CounterexampleKind,
    pub trial: usize,
    /// `Some(true)` when the oracle found a joint triangulation.
    pub oracle: Option<bool>,
    pub detail: String,
    pub instance: String,
    pub trace: Vec<IndexTriangle>,
}

impl Counterexample {
    /// Instance file with a commented header and trace, so the bundle loads
    /// back as an ordinary instance.
    pub fn bundle(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# counterexample {}", self.kind.name());
        let _ = writeln!(s, "# trial {}", self.trial);
        let oracle = match self.oracle {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unchecked",
        };
        let _ = writeln!(s, "# oracle {oracle}");
        if !self.detail.is_empty() {
            let _ = writeln!(s, "# detail {}", self.detail);
        }
        s.push_str(&self.instance);
        let _ = writeln!(s, "# trace");
        for t in &self.trace {
            let _ = writeln!(s, "# pick {t}");
        }
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct TrialOutcome {
    nc1_pass: bool,
    nc_pass: bool,
    success: bool,
    oracle: Option<bool>,
    agrees: bool,
    rule_disagreement: bool,
    counterexample: Option<CounterexampleKindTrial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct CounterexampleKindTrial {
    kind: CounterexampleKind,
    detail: String,
    instance: String,
    trace: Vec<IndexTriangle>,
}

#[derive(Debug, Clone, Default)]
pub struct HuntReport {
    pub instances_tried: usize,
    pub generation_failures: usize,
    pub nc1_pass_count: usize,
    /// Points: both conditions hold. Polygons: the DP reports a solution.
    pub nc_pass_count: usize,
    /// Verified greedy (points) or DP (polygons) results.
    pub greedy_success: usize,
    pub oracle_checked: usize,
    pub oracle_yes: usize,
    pub oracle_agreements: usize,
    /// Polygons: instances where the unguarded split rule reached a
    /// different verdict from the guarded one.
    pub rule_disagreements: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl HuntReport {
    pub fn summary(&self, config: &HuntConfig) -> String {
        let mut s = String::new();
        let mode = match config.mode {
            HuntMode::Points => "points",
            HuntMode::Polygons => "polygons",
        };
        let _ = writeln!(s, "mode {mode}");
        let _ = writeln!(s, "n_range {} {}", config.n_min, config.n_max);
        let _ = writeln!(s, "trials {}", config.trials);
        let _ = writeln!(s, "seed {}", config.seed);
        let _ = writeln!(s, "coord_range {}", config.coord_range);
        let _ = writeln!(s, "instances_tried {}", self.instances_tried);
        let _ = writeln!(s, "generation_failures {}", self.generation_failures);
        if config.mode == HuntMode::Points {
            let _ = writeln!(s, "nc1_pass {}", self.nc1_pass_count);
        }
        let _ = writeln!(s, "nc_pass {}", self.nc_pass_count);
        let _ = writeln!(s, "constructed_verified {}", self.greedy_success);
        let _ = writeln!(s, "oracle_checked {}", self.oracle_checked);
        let _ = writeln!(s, "oracle_yes {}", self.oracle_yes);
        let _ = writeln!(s, "oracle_agreements {}", self.oracle_agreements);
        if config.mode == HuntMode::Polygons {
            let _ = writeln!(s, "rule_disagreements {}", self.rule_disagreements);
        }
        let _ = writeln!(s, "counterexamples {}", self.counterexamples.len());
        for c in &self.counterexamples {
            let _ = writeln!(s, "counterexample trial {} {}", c.trial, c.kind.name());
        }
        s
    }
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    // splitmix64 step so neighboring trials get unrelated streams
    let mut z = seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Jitter for the perturbed share of trials; zero means "independent".
fn pick_jitter(rng: &mut ChaCha8Rng, range: i64) -> i64 {
    const STEPS: [i64; 8] = [0, 1, 2, 4, 8, 16, 32, 64];
    let j = STEPS[rng.gen_range(0..STEPS.len())];
    j.min(range)
}

fn point_trial(config: &HuntConfig, trial: usize) -> Option<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, trial));
    let n = rng.gen_range(config.n_min..=config.n_max);
    let jitter = pick_jitter(&mut rng, config.coord_range);
    let sub = rng.gen::<u64>();
    let pair = if jitter == 0 {
        gen_point_pair(n, config.coord_range, sub)
    } else {
        gen_point_pair_perturbed(n, config.coord_range, jitter, sub)
    }
    .ok()?;
    Some(evaluate_points(&pair, config.cross_check && n <= HUNT_ORACLE_POINTS))
}

fn evaluate_points(pair: &PointSetPair, cross_check: bool) -> TrialOutcome {
    let mut out = TrialOutcome::default();
    let mut trace = Vec::new();
    let mut detail = String::new();
    if let Ok(Condition1::Pass { hull_edges }) = check_condition1(pair) {
        out.nc1_pass = true;
        let res = legal_set(pair, &paired_empty(pair), &hull_edges);
        if check_condition2(&res) {
            out.nc_pass = true;
            let jt = greedy_construct(pair, &res.legal, Policy::Lex);
            out.success = jt.verified;
            trace = jt.trace;
            detail = jt.violation.map(|v| v.to_string()).unwrap_or_default();
        }
    }
    if cross_check {
        let yes = matches!(oracle_joint_exists(pair), Ok(Some(_)));
        out.oracle = Some(yes);
        out.agrees = yes == (out.nc_pass && out.success);
        if yes && !out.nc_pass {
            out.counterexample = Some(CounterexampleKindTrial {
                kind: CounterexampleKind::NecessityViolated,
                detail: "oracle found a joint triangulation".into(),
                instance: write_points(pair),
                trace: Vec::new(),
            });
            return out;
        }
    }
    if out.nc_pass && !out.success {
        out.counterexample = Some(CounterexampleKindTrial {
            kind: CounterexampleKind::GreedyFailed,
            detail,
            instance: write_points(pair),
            trace,
        });
    }
    out
}

fn polygon_trial(config: &HuntConfig, trial: usize) -> Option<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, trial));
    let n = rng.gen_range(config.n_min..=config.n_max);
    let jitter = pick_jitter(&mut rng, config.coord_range);
    let sub = rng.gen::<u64>();
    let pair = if jitter == 0 {
        gen_polygon_pair(n, config.coord_range, sub)
    } else {
        gen_polygon_pair_perturbed(n, config.coord_range, jitter, sub)
    }
    .ok()?;
    Some(evaluate_polygons(&pair, config.cross_check && n <= MAX_ORACLE_POLYGON))
}

fn evaluate_polygons(pair: &PolygonPair, cross_check: bool) -> TrialOutcome {
    let mut out = TrialOutcome { nc1_pass: true, ..Default::default() };
    let verbatim = fill_dp(pair, pair.ivg(), SplitRule::Verbatim).whole();
    let result = dp_joint_polygon(pair);
    out.rule_disagreement = verbatim != result.is_some();
    if let Some(jt) = &result {
        out.nc_pass = true;
        out.success = jt.verified;
        if !jt.verified {
            out.counterexample = Some(CounterexampleKindTrial {
                kind: CounterexampleKind::DpUnverified,
                detail: jt.violation.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                instance: write_polygon(pair),
                trace: jt.trace.clone(),
            });
        }
    }
    if cross_check {
        let yes = matches!(polygon_oracle_exists(pair), Ok(Some(_)));
        out.oracle = Some(yes);
        out.agrees = yes == result.is_some();
        if !out.agrees && out.counterexample.is_none() {
            out.counterexample = Some(CounterexampleKindTrial {
                kind: CounterexampleKind::DpOracleMismatch,
                detail: format!("oracle {} dp {}", yes, result.is_some()),
                instance: write_polygon(pair),
                trace: Vec::new(),
            });
        }
    }
    out
}

/// Runs the campaign. Trials are independent and evaluated in parallel;
/// the report is assembled in trial order, so it depends only on `config`.
pub fn hunt(config: &HuntConfig) -> HuntReport {
    let (lo, hi) = (config.n_min.max(3), config.n_max.max(config.n_min.max(3)));
    let cfg = HuntConfig { n_min: lo, n_max: hi, ..config.clone() };
    let outcomes: Vec<Option<TrialOutcome>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| match cfg.mode {
            HuntMode::Points => point_trial(&cfg, t),
            HuntMode::Polygons => polygon_trial(&cfg, t),
        })
        .collect();

    let mut report = HuntReport::default();
    for (trial, o) in outcomes.into_iter().enumerate() {
        report.instances_tried += 1;
        let Some(o) = o else {
            report.generation_failures += 1;
            continue;
        };
        report.nc1_pass_count += o.nc1_pass as usize;
        report.nc_pass_count += o.nc_pass as usize;
        report.greedy_success += o.success as usize;
        report.rule_disagreements += o.rule_disagreement as usize;
        if let Some(yes) = o.oracle {
            report.oracle_checked += 1;
            report.oracle_yes += yes as usize;
            report.oracle_agreements += o.agrees as usize;
        }
        if let Some(c) = o.counterexample {
            report.counterexamples.push(Counterexample {
                kind: c.kind,
                trial,
                oracle: o.oracle,
                detail: c.detail,
                instance: c.instance,
                trace: c.trace,
            });
        }
    }
    report
}
