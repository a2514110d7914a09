//! Seeded verification suites, counterexample hunts and their reports.
//!
//! Every trial draws its inputs from its own stream (`seed ^ trial`),
//! serializes them, and then checks the serialized form, so a failure record
//! can always be replayed with [`suites::replay`] or [`hunt::replay`].

pub mod certify;
pub mod gen;
pub mod hunt;
pub mod suites;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Mode;

/// Run parameters; a config file uses the same field names as the CLI flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: String,
    pub trials: usize,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub seed: u64,
    pub mode: Mode,
    /// Relative comparison tolerance; each suite scales it by the size of
    /// the roots involved.
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    /// Operator family for hunts.
    pub family: Option<String>,
    /// `(m, p)` for the Laguerre family of the multiplier-sequence hunt.
    pub laguerre: Option<[usize; 2]>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            suite: String::new(),
            trials: 100,
            min_degree: None,
            max_degree: None,
            seed: 0,
            mode: Mode::Rational,
            tol: None,
            out: None,
            family: None,
            laguerre: None,
        }
    }
}

impl ExperimentConfig {
    pub fn new(suite: &str) -> Self {
        ExperimentConfig {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_degrees(mut self, min: usize, max: usize) -> Self {
        self.min_degree = Some(min);
        self.max_degree = Some(max);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_family(mut self, family: &str) -> Self {
        self.family = Some(family.into());
        self
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Degree range, falling back to the suite's own default.
    pub fn degrees(&self, default: (usize, usize)) -> Result<(usize, usize)> {
        let lo = self.min_degree.unwrap_or(default.0);
        let hi = self.max_degree.unwrap_or(default.1.max(lo));
        if lo == 0 || lo > hi {
            return Err(Error::Config(format!("bad degree range {lo}..={hi}")));
        }
        Ok((lo, hi))
    }

    pub fn rel_tol(&self) -> f64 {
        self.tol.unwrap_or(1e-7)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailureRecord {
    /// Offset from the run seed: the trial index.
    pub trial: u64,
    pub inputs: Value,
    pub certificate: Value,
}

/// Non-failing finding worth reporting (operators outside a conjectured
/// class, violations the exact check could not confirm).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Observation {
    pub trial: u64,
    pub kind: String,
    pub inputs: Value,
    pub detail: Value,
}

/// Observations kept in full; the rest are only counted.
pub const OBSERVATION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub failures: Vec<FailureRecord>,
    /// Smallest margin seen by a passing check, in that check's units.
    pub worst_slack: Option<f64>,
    /// Trials whose inputs fell outside the check's hypotheses.
    pub skipped: usize,
    pub observation_count: usize,
    pub observations: Vec<Observation>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn empty(suite: &str, mode: Mode, seed: u64) -> Self {
        SuiteReport {
            suite: suite.into(),
            mode,
            seed,
            trials: 0,
            passed: true,
            failures: Vec::new(),
            worst_slack: None,
            skipped: 0,
            observation_count: 0,
            observations: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn summary(&self) -> Value {
        json!({
            "type": "summary",
            "suite": self.suite,
            "mode": self.mode,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures.len(),
            "worst_slack": self.worst_slack,
            "skipped": self.skipped,
            "observations": self.observation_count,
        })
    }

    /// One line per failure, one per kept observation, then the summary.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            let mut v = serde_json::to_value(f).expect("serializable");
            v["type"] = json!("failure");
            v["suite"] = json!(self.suite);
            out.push_str(&v.to_string());
            out.push('\n');
        }
        for o in &self.observations {
            let mut v = serde_json::to_value(o).expect("serializable");
            v["type"] = json!("observation");
            v["suite"] = json!(self.suite);
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary().to_string());
        out.push('\n');
        out
    }
}

/// Result of checking one trial's serialized inputs.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass {
        slack: f64,
    },
    Fail {
        certificate: Value,
    },
    Skip(String),
    Observe {
        kind: String,
        detail: Value,
        slack: Option<f64>,
    },
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    /// Combines sub-checks of one trial: the first failure wins, otherwise
    /// the smallest slack.
    pub fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (f @ Outcome::Fail { .. }, _) | (_, f @ Outcome::Fail { .. }) => f,
            (o @ Outcome::Observe { .. }, _) | (_, o @ Outcome::Observe { .. }) => o,
            (s @ Outcome::Skip(_), _) | (_, s @ Outcome::Skip(_)) => s,
            (Outcome::Pass { slack: a }, Outcome::Pass { slack: b }) => Outcome::Pass { slack: a.min(b) },
        }
    }
}

/// Errors that stop the run instead of being recorded against a trial.
fn is_fatal(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_) | Error::UnknownSuite(_) | Error::GeneratorExhausted(_) | Error::FloatModeUnsupported
    )
}

/// Runs `trials` independent trials and folds them into a report. Each
/// trial returns its serialized inputs and the outcome of checking them.
pub(crate) fn run_trials<F>(suite: &str, config: &ExperimentConfig, trial: F) -> Result<SuiteReport>
where
    F: Fn(u64) -> Result<(Value, Result<Outcome>)> + Sync,
{
    let start = Instant::now();
    let results: Vec<Result<(Value, Result<Outcome>)>> =
        (0..config.trials as u64).into_par_iter().map(&trial).collect();
    let mut report = SuiteReport::empty(suite, config.mode, config.seed);
    report.trials = config.trials;
    for (i, r) in results.into_iter().enumerate() {
        let (inputs, outcome) = r?;
        let outcome = match outcome {
            Ok(o) => o,
            Err(e) if is_fatal(&e) => return Err(e),
            Err(e) => Outcome::Fail {
                certificate: json!({"error": e.to_string()}),
            },
        };
        record(&mut report, i as u64, inputs, outcome);
    }
    report.passed = report.failures.is_empty();
    report.wall_time = start.elapsed();
    Ok(report)
}

fn record(report: &mut SuiteReport, trial: u64, inputs: Value, outcome: Outcome) {
    let mut note_slack = |s: f64| {
        if s.is_finite() {
            report.worst_slack = Some(report.worst_slack.map_or(s, |w| w.min(s)));
        }
    };
    match outcome {
        Outcome::Pass { slack } => note_slack(slack),
        Outcome::Skip(_) => report.skipped += 1,
        Outcome::Fail { certificate } => report.failures.push(FailureRecord {
            trial,
            inputs,
            certificate,
        }),
        Outcome::Observe { kind, detail, slack } => {
            if let Some(s) = slack {
                note_slack(s);
            }
            report.observation_count += 1;
            if report.observations.len() < OBSERVATION_CAP {
                report.observations.push(Observation {
                    trial,
                    kind,
                    inputs,
                    detail,
                });
            }
        }
    }
}

/// Dispatches to a verification suite by name.
pub fn run_suite(config: &ExperimentConfig) -> Result<SuiteReport> {
    suites::run(config)
}

/// Dispatches to a counterexample hunt (`pb1`, `pb2` or `pb3`).
pub fn hunt_counterexamples(problem: &str, config: &ExperimentConfig) -> Result<SuiteReport> {
    hunt::run(problem.parse()?, config)
}
