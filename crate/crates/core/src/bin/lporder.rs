use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use lporder::api::{self, Multiplier};
use lporder::harness::{self, suites, ExperimentConfig, SuiteReport};
use lporder::io::read_json;
use lporder::{Error, Mode, Result};

#[derive(Parser)]
#[command(name = "lporder", version, about = "Spectral order of hyperbolic polynomials")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Base seed; trial i uses seed ^ i
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// rational | float
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// Relative comparison tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with the same fields as the flags; flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    min_degree: Option<usize>,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite
    Verify { suite: String },
    /// Search for counterexamples to an open problem (pb1, pb2, pb3)
    Hunt {
        problem: String,
        /// Operator family; see the README for each problem's families
        #[arg(long)]
        family: Option<String>,
        /// Fix (m, p) for the Laguerre family
        #[arg(long, num_args = 2, value_names = ["M", "P"])]
        laguerre: Option<Vec<usize>>,
    },
    /// Majorization of root tuples
    #[command(subcommand)]
    Majorize(MajorizeCmd),
    /// Contraction chains
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Differential and diagonal operators
    #[command(subcommand)]
    Op(OpCmd),
    /// Pencil P - λP'
    #[command(subcommand)]
    Pencil(PencilCmd),
    /// List the verification suites
    Suites,
}

#[derive(Args)]
struct PairArgs {
    /// Polynomial tested as the smaller one
    #[arg(long)]
    q: PathBuf,
    /// Polynomial tested as the larger one
    #[arg(long)]
    p: PathBuf,
}

#[derive(Subcommand)]
enum MajorizeCmd {
    /// Certificate for Z(Q) ≺ Z(P); exit 1 when it fails
    Check(PairArgs),
    /// Doubly stochastic A with A·Z(P) = Z(Q)
    Witness(PairArgs),
    /// At most n - 1 contractions from P to Q, repeated roots allowed
    Chain(PairArgs),
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Simple nondegenerate contractions from P to Q
    Decompose {
        #[command(flatten)]
        pair: PairArgs,
        /// Perturb both to strict polynomials first
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Replay a chain and check every step
    Verify {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Strict P and Q ⪯ P after random contractions
    RandomPair {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 6)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    /// φ(D)[P]
    Apply {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        normalized: bool,
    },
    /// φ(D)[x^n]
    Appell {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        normalized: bool,
    },
    /// (1 - λD) e^{λD} P
    ShiftPencil {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// e^{-aD²} P
    Gaussian {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// D(φ^s, n)[P]
    Deform {
        #[arg(long)]
        phi: PathBuf,
        /// JSON array of scaling factors
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        normalized: bool,
    },
    /// Σ γ_k a_k x^k
    Multiplier {
        #[arg(long)]
        poly: PathBuf,
        /// JSON array γ_0, γ_1, …
        #[arg(long, conflicts_with = "laguerre", required_unless_present = "laguerre")]
        gamma: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["M", "P"])]
        laguerre: Option<Vec<usize>>,
        #[arg(long)]
        normalized: bool,
    },
}

#[derive(Subcommand)]
enum PencilCmd {
    /// CSV of roots and partial sums over λ in [-L, L]
    Scan {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, num_args = 2, value_names = ["L", "N"])]
        grid: Option<Vec<String>>,
    },
}

/// What a command produced and whether it counts as a violation.
struct Output {
    text: String,
    violation: bool,
}

impl Output {
    fn json(v: &Value) -> Self {
        Output {
            text: format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
            violation: false,
        }
    }
}

fn load(path: &Path) -> Result<Value> {
    read_json(path)
}

fn string_value(s: &str) -> Value {
    Value::String(s.into())
}

fn experiment(g: &Global, suite: &str) -> Result<ExperimentConfig> {
    let mut c = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_json_str(&text)?
        }
        None => ExperimentConfig::default(),
    };
    c.suite = suite.into();
    if let Some(s) = g.seed {
        c.seed = s;
    }
    if let Some(t) = g.trials {
        c.trials = t;
    }
    if let Some(m) = g.mode {
        c.mode = m;
    }
    if g.tol.is_some() {
        c.tol = g.tol;
    }
    if g.out.is_some() {
        c.out = g.out.clone();
    }
    if g.min_degree.is_some() {
        c.min_degree = g.min_degree;
    }
    if g.max_degree.is_some() {
        c.max_degree = g.max_degree;
    }
    Ok(c)
}

fn report_output(r: &SuiteReport) -> Output {
    Output {
        text: r.to_json_lines(),
        violation: !r.passed,
    }
}

fn pair_of(p: &PairArgs) -> Result<(Value, Value)> {
    Ok((load(&p.q)?, load(&p.p)?))
}

fn laguerre_pair(v: &[usize]) -> [usize; 2] {
    [v[0], v[1]]
}

fn run(cli: &Cli) -> Result<(Output, Option<PathBuf>)> {
    let g = &cli.global;
    let mode = g.mode.unwrap_or(Mode::Rational);
    let out = match &cli.command {
        Command::Verify { suite } => {
            let c = experiment(g, suite)?;
            let r = harness::run_suite(&c)?;
            return Ok((report_output(&r), c.out));
        }
        Command::Hunt {
            problem,
            family,
            laguerre,
        } => {
            let mut c = experiment(g, problem)?;
            if family.is_some() {
                c.family = family.clone();
            }
            if let Some(l) = laguerre {
                c.laguerre = Some(laguerre_pair(l));
            }
            let r = harness::hunt_counterexamples(problem, &c)?;
            return Ok((report_output(&r), c.out));
        }
        Command::Suites => Output {
            text: suites::suite_names().join("\n") + "\n",
            violation: false,
        },
        Command::Majorize(cmd) => match cmd {
            MajorizeCmd::Check(p) => {
                let (q, p) = pair_of(p)?;
                let cert = api::majorize_check(&q, &p, g.tol)?;
                let mut o = Output::json(&cert);
                o.violation = !api::certificate_holds(&cert);
                o
            }
            MajorizeCmd::Witness(p) => {
                let (q, p) = pair_of(p)?;
                Output::json(&api::majorize_witness(&q, &p)?)
            }
            MajorizeCmd::Chain(p) => {
                let (q, p) = pair_of(p)?;
                Output::json(&api::majorize_chain(&q, &p)?)
            }
        },
        Command::Chain(cmd) => match cmd {
            ChainCmd::Decompose { pair, eps, cap } => {
                let (q, p) = pair_of(pair)?;
                let eps = eps.as_deref().map(string_value);
                Output::json(&api::chain_decompose(&p, &q, eps.as_ref(), *cap)?)
            }
            ChainCmd::Verify { chain } => {
                let r = api::chain_verify(&load(chain)?)?;
                let mut o = Output::json(&r);
                o.violation = r["clean"] != true;
                o
            }
            ChainCmd::RandomPair { degree, budget } => {
                Output::json(&api::chain_random_pair(g.seed.unwrap_or(0), *degree, *budget, mode)?)
            }
        },
        Command::Op(cmd) => Output::json(&match cmd {
            OpCmd::Apply {
                phi,
                poly,
                degree,
                normalized,
            } => api::op_apply(&load(phi)?, &load(poly)?, *degree, *normalized)?,
            OpCmd::Appell {
                phi,
                degree,
                normalized,
            } => api::op_appell(&load(phi)?, *degree, *normalized, mode)?,
            OpCmd::ShiftPencil { poly, lambda } => api::op_shift_pencil(&load(poly)?, &string_value(lambda))?,
            OpCmd::Gaussian { poly, a } => api::op_gaussian(&load(poly)?, &string_value(a))?,
            OpCmd::Deform {
                phi,
                s,
                poly,
                normalized,
            } => api::op_deform(&load(phi)?, &load(s)?, &load(poly)?, *normalized)?,
            OpCmd::Multiplier {
                poly,
                gamma,
                laguerre,
                normalized,
            } => {
                let seq = match (gamma, laguerre) {
                    (Some(g), _) => Multiplier::Gammas(load(g)?),
                    (None, Some(l)) => {
                        let [m, p] = laguerre_pair(l);
                        Multiplier::Laguerre { m, p }
                    }
                    (None, None) => return Err(Error::Config("give --gamma or --laguerre".into())),
                };
                api::op_multiplier(&load(poly)?, &seq, *normalized)?
            }
        }),
        Command::Pencil(PencilCmd::Scan { poly, grid }) => {
            let poly = load(poly)?;
            let (half, points) = match grid {
                Some(v) => (
                    v[0].parse::<f64>().map_err(|e| Error::Config(format!("grid L: {e}")))?,
                    v[1].parse::<usize>()
                        .map_err(|e| Error::Config(format!("grid N: {e}")))?,
                ),
                None => {
                    let p = lporder::io::poly_from_json(&poly)?.to_f64();
                    (1.0 + 2.0 * p.roots().max_abs(), 201)
                }
            };
            Output {
                text: api::pencil_scan_csv(&poly, half, points)?,
                violation: false,
            }
        }
    };
    Ok((out, g.out.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, path)) => {
            if let Some(path) = path {
                if let Err(e) = std::fs::write(&path, &out.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(u8::from(out.violation))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
