//! Acceptance criteria, one PASS/FAIL line each; exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lporder::harness::{self, ExperimentConfig, SuiteReport};
use lporder::roots::real_roots_exact;
use lporder::{
    appell, build_witness, decompose_majorization, gaussian_op, HyperbolicPoly, LPFunction, Poly, Rational, RootTuple,
    DEFAULT_STEP_CAP,
};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x, 1)).collect()
}

fn hyp(v: &[i64]) -> HyperbolicPoly<Rational> {
    HyperbolicPoly::from_roots(qs(v)).unwrap()
}

type Criterion = (&'static str, fn() -> Line);

struct Line {
    ok: bool,
    text: String,
}

fn suite(name: &str, trials: usize) -> SuiteReport {
    harness::run_suite(&ExperimentConfig::new(name).with_trials(trials)).unwrap()
}

fn hunt(problem: &str, config: ExperimentConfig) -> SuiteReport {
    harness::hunt_counterexamples(problem, &config).unwrap()
}

fn describe(r: &SuiteReport) -> String {
    format!(
        "{} x{}: {} failures, {} skipped, {:.2?}",
        r.suite,
        r.trials,
        r.failures.len(),
        r.skipped,
        r.wall_time
    )
}

fn reports(reports: &[SuiteReport], limit: Option<Duration>) -> Line {
    let ok = reports.iter().all(|r| r.passed) && limit.is_none_or(|l| reports.iter().all(|r| r.wall_time < l));
    let mut text = reports.iter().map(describe).collect::<Vec<_>>().join("; ");
    if let Some(l) = limit {
        text.push_str(&format!(" (limit {l:?})"));
    }
    Line { ok, text }
}

fn oracle_equivalence() -> Line {
    reports(&[suite("oracle", 10_000)], Some(Duration::from_secs(5)))
}

fn contraction_replay() -> Line {
    let mut line = reports(&[suite("chain", 1000)], Some(Duration::from_secs(60)));
    let dec = decompose_majorization(&hyp(&[0, 2, 4]), &hyp(&[1, 2, 3]), DEFAULT_STEP_CAP).unwrap();
    let steps = dec.chain.len();
    line.ok &= steps == 8 && dec.chain.replay().unwrap() == hyp(&[1, 2, 3]);
    line.text.push_str(&format!("; (0,2,4) -> (1,2,3) in {steps} steps"));
    line
}

fn pencil_order() -> Line {
    reports(&[suite("main1", 1000)], Some(Duration::from_secs(120)))
}

fn shift_pencil_order() -> Line {
    reports(&[suite("main2", 1000)], None)
}

fn isotonicity() -> Line {
    reports(&[suite("iso", 1000), suite("deriv", 1000)], None)
}

fn appell_minimum() -> Line {
    let r = harness::run_suite(&ExperimentConfig::new("appell-min").with_trials(500).with_degrees(1, 8)).unwrap();
    reports(&[r], None)
}

fn monotonicity() -> Line {
    reports(
        &[suite("scaled", 500), suite("extensive", 500), suite("deform", 500)],
        None,
    )
}

fn partial_sum_monotonicity() -> Line {
    reports(&[suite("allincr", 500)], None)
}

fn laguerre_closed_form() -> Line {
    reports(&[suite("lag-ms", 1000)], None)
}

fn fixtures() -> Line {
    let mut notes = Vec::new();
    let mut check = |name: &str, ok: bool| {
        notes.push(format!("{name} {}", if ok { "ok" } else { "WRONG" }));
        ok
    };
    let roots = real_roots_exact(&qs(&[-6, 11, -6, 1]), Some(0.0)).unwrap();
    let a = check(
        "roots",
        roots
            .as_slice()
            .iter()
            .zip([1.0, 2.0, 3.0])
            .all(|(x, y)| (x - y).abs() <= 1e-10),
    );
    let b = check(
        "gaussian",
        gaussian_op(&Poly::monomial(3), &q(1, 2)) == Poly::new(qs(&[0, -3, 0, 1])),
    );
    let shift = LPFunction::new(q(1, 1), 0, q(0, 1), q(0, 1), vec![q(1, 1)]).unwrap();
    let c = check(
        "(1-D)e^D",
        shift.to_operator(2).unwrap().apply(&Poly::monomial(2)).unwrap() == Poly::new(qs(&[-1, 0, 1])),
    );
    let d = check(
        "appell",
        appell(&LPFunction::gaussian(q(1, 1)), 2, true).unwrap() == Poly::new(qs(&[-2, 0, 1])),
    );
    let w = build_witness(&RootTuple::new(qs(&[1, 3])), &RootTuple::new(qs(&[0, 4]))).unwrap();
    let e = check(
        "witness",
        w.matrix == [vec![q(3, 4), q(1, 4)], vec![q(1, 4), q(3, 4)]] && w.apply(&qs(&[0, 4])) == qs(&[1, 3]),
    );
    Line {
        ok: a && b && c && d && e,
        text: notes.join(", "),
    }
}

fn anchor_hunts() -> Line {
    let pb2 = hunt(
        "pb2",
        ExperimentConfig::new("pb2")
            .with_trials(10_000)
            .with_degrees(2, 2)
            .with_family("jensen"),
    );
    let xdx = hunt("pb1", ExperimentConfig::new("pb1").with_trials(1000).with_family("xdx"));
    let lag = hunt(
        "pb1",
        ExperimentConfig::new("pb1").with_trials(1000).with_family("laguerre"),
    );
    let mut line = reports(&[pb2.clone(), xdx.clone(), lag.clone()], None);
    let observed: usize = [&pb2, &xdx, &lag].iter().map(|r| r.observation_count).sum();
    line.ok &= observed == 0;
    line.text.push_str(&format!("; {observed} observations"));
    line
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("partial sums agree with the hinge oracle", oracle_equivalence),
        ("contraction chains replay exactly", contraction_replay),
        ("pencils preserve the order", pencil_order),
        ("shift pencils preserve the order", shift_pencil_order),
        ("LP operators and derivatives preserve the order", isotonicity),
        ("Appell polynomial is the minimum", appell_minimum),
        ("scaling, extensivity and deformation", monotonicity),
        ("pencil partial sums are monotone", partial_sum_monotonicity),
        ("Laguerre multiplier closed form", laguerre_closed_form),
        ("hand-derived fixtures", fixtures),
        ("anchor hunts find nothing", anchor_hunts),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let line = run();
        println!(
            "[{}] {:>2}. {name}: {} [{:.1?}]",
            if line.ok { "PASS" } else { "FAIL" },
            i + 1,
            line.text,
            start.elapsed()
        );
        if !line.ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
