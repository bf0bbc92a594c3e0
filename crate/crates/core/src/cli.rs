//! Command-line front end. [`run`] is pure apart from reading input files and
//! `THETA_THREADS`, so tests drive it directly.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions;
use crate::error::Error;
use crate::harmonic::SymMatrix;
use crate::invariants::{self, Route};
use crate::lattice::{self, GramMatrix};
use crate::rank2;
use crate::rational::{self, Rational};

const DEFAULT_BOUND: i64 = 10;

/// Everything one invocation produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    /// 0 success, 1 input error, 2 internal error.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "thetamap", version, about = "Exact theta-series invariants of quadratic forms")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Direct,
    Harmonic,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Theta series Θ_A up to q^X.
    Theta {
        /// Gram JSON file or lattice name (A1^2, A2, E8, A<n>, D<n>, Lp<p>, <name>^<k>).
        gram: String,
        #[arg(long)]
        bound: Option<String>,
    },
    /// The harmonic invariant Θ₁,₁ up to q^X.
    Theta11 {
        gram: String,
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, value_enum, default_value = "direct")]
        route: RouteArg,
    },
    /// Directional derivative ∂_BΘ_A for a symmetric direction B.
    Dtheta {
        gram: String,
        /// JSON file holding B in the Gram format.
        #[arg(long)]
        direction: String,
        #[arg(long)]
        bound: Option<String>,
    },
    /// Basis-independent Wronskian square det²DΘ up to q^X.
    Wronskian {
        gram: String,
        #[arg(long)]
        bound: Option<String>,
        /// Print the Wronskian in the rational tangent basis instead.
        #[arg(long)]
        raw: bool,
    },
    /// Rank-2 verdict: vanishing, degenerate case, or nondegenerate.
    Classify2 { gram: String },
    /// Print the Gram JSON of a named lattice.
    Construct { name: String },
    /// Compare Θ and Θ₁,₁ of two forms up to q^X.
    Compare {
        gram1: String,
        gram2: String,
        #[arg(long)]
        bound: Option<String>,
    },
    /// Nonzero norms with multiplicities up to X.
    Spectrum {
        gram: String,
        #[arg(long)]
        bound: Option<String>,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load_gram(source: &str) -> Result<GramMatrix, Failure> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{source}: {e}")))?;
        return GramMatrix::from_json(&text).map_err(|e| Failure::Input(format!("{source}: {e}")));
    }
    match constructions::construct(source) {
        Ok(l) => Ok(l.gram),
        Err(_) => Err(Failure::Input(format!(
            "{source:?} is neither a readable file nor a known lattice name"
        ))),
    }
}

fn load_direction(source: &str) -> Result<SymMatrix, Failure> {
    let text = std::fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
    SymMatrix::from_json(&text).map_err(|e| Failure::Input(format!("{source}: {e}")))
}

fn bound(arg: &Option<String>, stderr: &mut String) -> Result<Rational, Failure> {
    let x = match arg {
        Some(s) => rational::parse(s)?,
        None => {
            stderr.push_str(&format!(
                "warning: no --bound given, using {DEFAULT_BOUND}; zero results are claims up to q^{DEFAULT_BOUND} only\n"
            ));
            rational::int(DEFAULT_BOUND)
        }
    };
    if x <= rational::int(0) {
        return Err(Failure::Input(format!("bound must be positive, got {}", rational::render(&x))));
    }
    Ok(x)
}

fn execute(command: Command, stderr: &mut String) -> Result<String, Failure> {
    match command {
        Command::Theta { gram, bound: b } => {
            let a = load_gram(&gram)?;
            let x = bound(&b, stderr)?;
            Ok(invariants::theta_series(&a, &x).render())
        }
        Command::Theta11 { gram, bound: b, route } => {
            let a = load_gram(&gram)?;
            let x = bound(&b, stderr)?;
            match route {
                RouteArg::Direct => Ok(invariants::theta11_direct(&a, &x).series.render()),
                RouteArg::Harmonic => Ok(invariants::theta11_harmonic(&a, &x).series.render()),
                RouteArg::Both => {
                    let d = invariants::theta11_direct(&a, &x);
                    let h = invariants::theta11_harmonic(&a, &x);
                    let scaled = h.series.scale(&rational::int(invariants::HARMONIC_TO_DIRECT));
                    debug_assert_eq!(h.route, Route::Harmonic);
                    if let Some(e) = d.series.first_difference(&scaled) {
                        return Err(Failure::Internal(format!(
                            "routes disagree at exponent {}",
                            rational::render(&e)
                        )));
                    }
                    Ok(format!("{}{}AGREE\n", d.series.render(), h.series.render()))
                }
            }
        }
        Command::Dtheta { gram, direction, bound: b } => {
            let a = load_gram(&gram)?;
            let dir = load_direction(&direction)?;
            let x = bound(&b, stderr)?;
            Ok(invariants::dtheta(&a, &dir, &x)?.render())
        }
        Command::Wronskian { gram, bound: b, raw } => {
            let a = load_gram(&gram)?;
            let x = bound(&b, stderr)?;
            let w = invariants::wronskian(&a, &x);
            Ok(if raw { w.raw_det.render() } else { w.normalized_square.render() })
        }
        Command::Classify2 { gram } => {
            let a = load_gram(&gram)?;
            Ok(rank2::classify(&a)?.render() + "\n")
        }
        Command::Construct { name } => {
            let l = constructions::construct(&name)?;
            Ok(l.gram.to_json() + "\n")
        }
        Command::Compare { gram1, gram2, bound: b } => {
            let a1 = load_gram(&gram1)?;
            let a2 = load_gram(&gram2)?;
            let x = bound(&b, stderr)?;
            Ok(invariants::compare_invariants(&a1, &a2, &x)?.render())
        }
        Command::Spectrum { gram, bound: b } => {
            let a = load_gram(&gram)?;
            let x = bound(&b, stderr)?;
            Ok(lattice::spectrum(&a, &x)
                .into_iter()
                .map(|(n, m)| format!("{}:{m}\n", rational::render(&n)))
                .collect())
        }
    }
}

fn thread_pool(stderr: &mut String) -> Option<rayon::ThreadPool> {
    let raw = std::env::var("THETA_THREADS").ok()?;
    let n = match raw.trim().parse::<usize>() {
        Ok(n) => n,
        Err(_) => {
            stderr.push_str(&format!("warning: ignoring THETA_THREADS={raw:?}\n"));
            return None;
        }
    };
    rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 1, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut stderr = String::new();
    let pool = thread_pool(&mut stderr);
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        let mut err = String::new();
        let r = match &pool {
            Some(p) => p.install(|| execute(args.command, &mut err)),
            None => execute(args.command, &mut err),
        };
        (r, err)
    }));
    match result {
        Ok((Ok(stdout), err)) => {
            stderr.push_str(&err);
            Output { code: 0, stdout, stderr }
        }
        Ok((Err(Failure::Input(msg)), err)) => {
            stderr.push_str(&err);
            stderr.push_str(&format!("error: {msg}\n"));
            Output { code: 1, stdout: String::new(), stderr }
        }
        Ok((Err(Failure::Internal(msg)), err)) => {
            stderr.push_str(&err);
            stderr.push_str(&format!("internal error: {msg}\n"));
            Output { code: 2, stdout: String::new(), stderr }
        }
        Err(_) => {
            stderr.push_str("internal error: computation panicked\n");
            Output { code: 2, stdout: String::new(), stderr }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construct_a2() {
        let o = run(["thetamap", "construct", "A2"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "{\"n\":2,\"gram\":[[\"1\",\"1/2\"],[\"1/2\",\"1\"]]}\n");
    }

    #[test]
    fn both_routes_agree_on_gaussian() {
        let o = run(["thetamap", "theta11", "--route", "both", "A1^2", "--bound", "10"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "# bound=10\n# bound=10\nAGREE\n");
        assert!(o.stderr.is_empty());
    }

    #[test]
    fn default_bound_warns() {
        let o = run(["thetamap", "theta", "A1^2"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("# bound=10\n0\t1\n1\t4\n"));
        assert!(o.stderr.contains("warning"));
    }

    #[test]
    fn input_errors_exit_one() {
        assert_eq!(run(["thetamap", "frobnicate"]).code, 1);
        assert_eq!(run(["thetamap", "theta", "nope"]).code, 1);
        assert_eq!(run(["thetamap", "theta", "A2", "--bound", "0"]).code, 1);
        assert_eq!(run(["thetamap", "theta", "A2", "--bound", "1.5"]).code, 1);
        assert_eq!(run(["thetamap", "classify2", "E8"]).code, 1);
    }

    #[test]
    fn help_exits_zero() {
        let o = run(["thetamap", "--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("classify2"));
    }

    #[test]
    fn spectrum_lines() {
        let o = run(["thetamap", "spectrum", "A1^2", "--bound", "2"]);
        assert_eq!(o.stdout, "1:4\n2:4\n");
    }
}
