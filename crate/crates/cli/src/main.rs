//! Command line surface for circular approval societies.
//!
//! Exit codes: 0 success, 2 malformed input or flags, 3 infeasible
//! parameters. Structured results go to stdout as JSON (CSV for `counting`
//! and `sweep`) unless --out names a file.

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use circ_pierce::coord::{Coord, SpectrumCoord};
use circ_pierce::error::Error;
use circ_pierce::io::{
    format_float, format_rational, parse_society, society_to_json, step_function_csv,
};
use circ_pierce::piercing::{
    circular_pierce_alg2, exact_pierce, extract_disjoint_family, greedy_linear_pierce,
    verify_bounds, LinearSociety, PiercingResult,
};
use circ_pierce::randomsim::{
    applicability, disjoint_probability_check, formula_tau1_n3, formula_tau_k, simulate, sweep,
    Applicability, SimParams,
};
use circ_pierce::society::{AnySociety, Society};
use circ_pierce::{agreement_number, counting_function, euler_integral, is_km_agreeable};

#[derive(Parser)]
#[command(name = "circ-pierce", version, about = "Piercing and agreement analysis of circular approval societies")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct InputArgs {
    /// Society JSON file; "-" or omitted reads stdin
    #[arg(long, default_value = "-")]
    input: String,
}

#[derive(Args)]
struct OutArgs {
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodFlag {
    Greedy,
    Alg2,
    Exact,
}

#[derive(Subcommand)]
enum Verb {
    /// Compute a piercing set
    Pierce {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = MethodFlag::Exact)]
        method: MethodFlag,
        /// greedy: cut point (must be uncovered); alg2: first piercing point
        #[arg(long)]
        cut_point: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Agreement number: the maximum of the counting function
    Agreement {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Test (k, m)-agreeability by subset enumeration
    Agreeable {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        /// Allow enumerations beyond the built-in subset guard
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dump the counting function as CSV, one maximal piece per row
    Counting {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Riemann and Euler integrals of the counting function
    Integrals {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit a named society as JSON
    Construct {
        #[command(subcommand)]
        what: ConstructVerb,
    },
    /// Monte Carlo piercing-number distribution for random arcs
    Simulate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; 0 uses all cores
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Simulate across a range of arc lengths; CSV, one row per (p, k)
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long)]
        p_max: f64,
        #[arg(long)]
        p_step: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact piercing number plus every applicable bound
    VerifyBounds {
        #[command(flatten)]
        input: InputArgs,
        /// (k, m) pairs to test for agreeability, as k,m
        #[arg(long = "km", value_parser = parse_km)]
        km: Vec<(u32, u32)>,
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form probabilities for random fixed-length societies
    Probability {
        /// Voters, for P(tau = k); omit with --disjoint
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        k: u32,
        /// Check the pairwise-disjointness probability (1-kp)^(k-1) by
        /// Monte Carlo instead
        #[arg(long)]
        disjoint: bool,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum ConstructVerb {
    /// U(n, h): n half-open arcs of length h/n starting at i/n
    Uniform {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u32,
        /// Produce the closed variant with arcs [i/n, i/n + h/n - eps]
        #[arg(long)]
        closed_epsilon: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// 2q-1 arcs of length 1/q with piercing number q
    Sharp {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// A documented example society by id
    Figure {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn parse_km(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected k,m but got {s:?}"))?;
    Ok((
        a.trim().parse().map_err(|e| format!("bad k: {e}"))?,
        b.trim().parse().map_err(|e| format!("bad m: {e}"))?,
    ))
}

/// --seed flag, else CIRC_PIERCE_SEED, else 0.
fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("CIRC_PIERCE_SEED") {
        Ok(v) => v.parse().map_err(|_| {
            CliError::Malformed(format!("CIRC_PIERCE_SEED is not an integer: {v:?}"))
        }),
        Err(_) => Ok(0),
    }
}

enum CliError {
    Malformed(String),
    Infeasible(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NonFinite(_)
            | Error::BadArcLength(_)
            | Error::KindMismatch
            | Error::EmptySociety
            | Error::BadCoordinate(_)
            | Error::MixedKinds
            | Error::UnknownFigure(_)
            | Error::MalformedFile(_) => CliError::Malformed(msg),
            Error::ParameterRange(_)
            | Error::HalfOpenArcs
            | Error::ConstantCountingFunction
            | Error::EnumerationTooLarge(_)
            | Error::CutPointCovered
            | Error::NotLinearEquivalent => CliError::Infeasible(msg),
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("cannot read {path}: {e}")))
    }
}

fn write_output(out: &OutArgs, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {path}: {e}"))),
        None => {
            use std::io::Write as _;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Ok(()) => Ok(()),
                // downstream closed the pipe; nothing left to do
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError::Io(format!("cannot write stdout: {e}"))),
            }
        }
    }
}

fn load_society(input: &InputArgs) -> Result<AnySociety, CliError> {
    Ok(parse_society(&read_input(&input.input)?)?.society)
}

fn parse_cut(s: &str) -> Result<SpectrumCoord, CliError> {
    Ok(SpectrumCoord::parse(s)?.normalized())
}

fn pierce_result_json<T: Coord>(
    r: &PiercingResult<T>,
    s: &Society<T>,
    fmt: impl Fn(&T) -> String,
) -> serde_json::Value {
    debug_assert!(r.verify_against(s));
    let witness: serde_json::Map<String, serde_json::Value> = r
        .witness
        .iter()
        .enumerate()
        .map(|(v, &w)| (v.to_string(), json!(w)))
        .collect();
    json!({
        "tau": if r.optimal { json!(r.size()) } else { json!(null) },
        "size": r.size(),
        "points": r.points.iter().map(&fmt).collect::<Vec<_>>(),
        "witness": witness,
        "method": match r.method {
            circ_pierce::piercing::Method::GreedyLinear => "greedy_linear",
            circ_pierce::piercing::Method::CircularAlg2 => "circular_alg2",
            circ_pierce::piercing::Method::Exact => "exact",
        },
        "optimal": r.optimal,
    })
}

fn run_pierce<T: Coord>(
    s: &Society<T>,
    method: MethodFlag,
    cut: Option<T>,
    fmt: impl Fn(&T) -> String,
) -> Result<serde_json::Value, CliError> {
    let r = match method {
        MethodFlag::Exact => exact_pierce(s),
        MethodFlag::Greedy => {
            let lin = match cut {
                Some(x) => LinearSociety::cut_and_unroll(s, &x)?,
                None => LinearSociety::at_largest_gap(s)?,
            };
            greedy_linear_pierce(&lin)?
        }
        MethodFlag::Alg2 => {
            let x = cut.unwrap_or_else(T::zero);
            circular_pierce_alg2(s, &x)
        }
    };
    let mut v = pierce_result_json(&r, s, fmt);
    let fam = extract_disjoint_family(s);
    v["disjoint_family"] = json!({
        "arc_indices": fam.arc_indices,
        "certified_unique": fam.certified_unique,
    });
    Ok(v)
}

fn dispatch(verb: Verb) -> Result<(), CliError> {
    match verb {
        Verb::Pierce {
            input,
            method,
            cut_point,
            out,
        } => {
            let society = load_society(&input)?;
            let cut = cut_point.as_deref().map(parse_cut).transpose()?;
            let v = match (&society, cut) {
                (AnySociety::Rational(s), cut) => {
                    let cut = match cut {
                        None => None,
                        Some(SpectrumCoord::Rational(r)) => Some(r),
                        Some(SpectrumCoord::Float(_)) => {
                            return Err(CliError::Malformed(
                                "cut point kind does not match the society (expected a rational like 1/4)".into(),
                            ))
                        }
                    };
                    run_pierce(s, method, cut, format_rational)?
                }
                (AnySociety::Float(s), cut) => {
                    let cut = cut.map(|c| c.to_f64());
                    run_pierce(s, method, cut, |x| format_float(*x))?
                }
            };
            write_output(&out, &serde_json::to_string_pretty(&v).unwrap())
        }
        Verb::Agreement { input, out } => {
            let society = load_society(&input)?;
            let a = match &society {
                AnySociety::Rational(s) => agreement_number(s),
                AnySociety::Float(s) => agreement_number(s),
            };
            write_output(&out, &json!({ "agreement": a }).to_string())
        }
        Verb::Agreeable {
            input,
            k,
            m,
            force,
            out,
        } => {
            let society = load_society(&input)?;
            let ok = match &society {
                AnySociety::Rational(s) => is_km_agreeable(s, k, m, force)?,
                AnySociety::Float(s) => is_km_agreeable(s, k, m, force)?,
            };
            write_output(&out, &json!({ "agreeable": ok, "k": k, "m": m }).to_string())
        }
        Verb::Counting { input, out } => {
            let society = load_society(&input)?;
            let csv = match &society {
                AnySociety::Rational(s) => {
                    step_function_csv(&counting_function(s), format_rational)
                }
                AnySociety::Float(s) => {
                    step_function_csv(&counting_function(s), |x| format_float(*x))
                }
            };
            write_output(&out, &csv)
        }
        Verb::Integrals { input, out } => {
            let society = load_society(&input)?;
            let v = match &society {
                AnySociety::Rational(s) => {
                    let c = counting_function(s);
                    json!({
                        "riemann": format_rational(&c.riemann_integral()),
                        "euler": euler_integral(s).ok(),
                    })
                }
                AnySociety::Float(s) => {
                    let c = counting_function(s);
                    json!({
                        "riemann": c.riemann_integral(),
                        "euler": euler_integral(s).ok(),
                    })
                }
            };
            write_output(&out, &v.to_string())
        }
        Verb::Construct { what } => {
            let (society, out) = match what {
                ConstructVerb::Uniform {
                    n,
                    h,
                    closed_epsilon,
                    out,
                } => {
                    let s = match closed_epsilon {
                        None => circ_pierce::constructions::uniform_society(n, h)?,
                        Some(eps) => {
                            let eps = match SpectrumCoord::parse(&eps)? {
                                SpectrumCoord::Rational(r) => r,
                                SpectrumCoord::Float(_) => {
                                    return Err(CliError::Malformed(
                                        "closed-epsilon must be rational, like 1/100".into(),
                                    ))
                                }
                            };
                            circ_pierce::constructions::uniform_society_closed(n, h, eps)?
                        }
                    };
                    (s, out)
                }
                ConstructVerb::Sharp { q, out } => {
                    (circ_pierce::constructions::sharp_society(q)?, out)
                }
                ConstructVerb::Figure { id, out } => {
                    (circ_pierce::constructions::figure_society(&id)?, out)
                }
            };
            write_output(&out, &society_to_json(&AnySociety::Rational(society), None))
        }
        Verb::Simulate {
            n,
            p,
            trials,
            seed,
            jobs,
            out,
        } => {
            let seed = resolve_seed(seed)?;
            let report = simulate(SimParams { n, p, trials, seed }, jobs)?;
            write_output(&out, &serde_json::to_string_pretty(&report).unwrap())
        }
        Verb::Sweep {
            n,
            p_min,
            p_max,
            p_step,
            trials,
            seed,
            jobs,
            out,
        } => {
            if !(p_step > 0.0) || !(p_max > p_min) {
                return Err(CliError::Infeasible(
                    "need p-step > 0 and p-max > p-min".into(),
                ));
            }
            let seed = resolve_seed(seed)?;
            let mut ps = Vec::new();
            // exclude endpoints outside (0, 1): p = 0 and p >= 1 are not
            // valid arc lengths
            let mut i = 0u64;
            loop {
                let p = p_min + p_step * i as f64;
                if p > p_max + 1e-12 {
                    break;
                }
                if p > 0.0 && p < 1.0 {
                    ps.push(p);
                }
                i += 1;
            }
            if ps.is_empty() {
                return Err(CliError::Infeasible(
                    "sweep range contains no valid arc length in (0, 1)".into(),
                ));
            }
            let rows = sweep(n, &ps, trials, seed, jobs)?;
            let mut csv =
                String::from("n,p,k,prob_sim,se,prob_formula,formula_applicable,trials,seed\n");
            for r in rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.n,
                    r.p,
                    r.k,
                    r.prob_sim,
                    r.se,
                    r.prob_formula.map(|v| v.to_string()).unwrap_or_default(),
                    match r.formula_applicable {
                        Applicability::Proven => "proven",
                        Applicability::Conjectured => "conjectured",
                        Applicability::Outside => "outside",
                    },
                    r.trials,
                    r.seed
                ));
            }
            write_output(&out, &csv)
        }
        Verb::VerifyBounds {
            input,
            km,
            force,
            out,
        } => {
            let society = load_society(&input)?;
            let report = match &society {
                AnySociety::Rational(s) => verify_bounds(s, &km, force)?,
                AnySociety::Float(s) => verify_bounds(s, &km, force)?,
            };
            write_output(&out, &serde_json::to_string_pretty(&report).unwrap())
        }
        Verb::Probability {
            n,
            p,
            k,
            disjoint,
            trials,
            seed,
            out,
        } => {
            if disjoint {
                let seed = resolve_seed(seed)?;
                let check = disjoint_probability_check(k, p, trials, seed)?;
                return write_output(&out, &serde_json::to_string_pretty(&check).unwrap());
            }
            let n = n.ok_or_else(|| {
                CliError::Malformed("--n is required unless --disjoint is set".into())
            })?;
            let app = applicability(p, k);
            let value = if n == 3 && k == 1 {
                formula_tau1_n3(p)
            } else {
                formula_tau_k(n, k, p)?
            };
            let v = json!({
                "value": value,
                "applicable": app != Applicability::Outside || (n == 3 && k == 1),
                "applicability": match app {
                    Applicability::Proven => "proven",
                    Applicability::Conjectured => "conjectured",
                    Applicability::Outside => "outside",
                },
            });
            write_output(&out, &v.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
