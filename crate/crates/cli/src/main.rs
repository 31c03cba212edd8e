//! `mindec`: exact decompositions of rational matrices from the command line.
//!
//! Commands read a matrix document from `--input` or standard input and
//! write JSON to standard output. Exit codes: 0 success, 2 parse error,
//! 3 precondition violation, 4 failed verification.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mindec::covariant::{covariants_of, materialize_projectors, verify_covariants};
use mindec::decompose::{
    fine_decompose, multiplicative_jc, sn_decompose, unbreakable_components, verify_fine,
    verify_mjc, verify_sn, verify_unbreakable, FineDecomposition,
};
use mindec::generate::generate_document;
use mindec::io::{
    multiquad_matrix_to_json, multiquad_to_json, poly_summary, rational_matrix_to_json,
    rational_to_json, MatrixDocument,
};
use mindec::matfun::{schwerdtfeger_eval, verify_apply};
use mindec::poly::set_default_degree_cap;
use mindec::realclosed::{
    complete_mjc, svd, symmetric_spectral_check, verify_dsu, verify_svd_uniqueness, PartKind,
};
use mindec::report::Report;
use mindec::selftest::{self, Scale};
use mindec::{parse_poly, Error, Matrix, Rational};

const DEGREE_CAP_VAR: &str = "MINDEC_DEGREE_CAP";

#[derive(Parser)]
#[command(
    name = "mindec",
    version,
    about = "Exact Jordan–Chevalley decompositions of rational matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Matrix document to read; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Verify the result and append the report.
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Additive decomposition M = S + N.
    Sn(Input),
    /// Per-factor semisimple and nilpotent components.
    Fine(Input),
    /// Covariant polynomials and projectors, one per irreducible factor.
    Covariants(Input),
    /// Unbreakable summands of a semisimple matrix.
    Unbreakable(Input),
    /// Multiplicative decomposition M = S U.
    Mjc(Input),
    /// Complete multiplicative decomposition M = Δ Σ U.
    Cmjc(Input),
    /// Singular value decomposition with rational squared singular values.
    Svd(Input),
    /// Evaluate a polynomial at the matrix through its covariants.
    Apply {
        #[command(flatten)]
        input: Input,
        /// Polynomial as an expression such as "X^3-2X+1" or a JSON
        /// coefficient array, constant term first.
        #[arg(long)]
        poly: String,
    },
    /// Generate a matrix with a known minimal polynomial.
    Gen {
        #[arg(long)]
        seed: u64,
        /// Target minimal polynomial, e.g. "(X^2-2)(X-1)^2".
        #[arg(long, conflicts_with = "blocks")]
        minpoly: Option<String>,
        /// Companion blocks as semicolon-separated polynomials.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Reduced case counts.
        #[arg(long)]
        quick: bool,
    },
}

enum Failure {
    Error(Error),
    Io(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn read_matrix(input: &Input) -> Result<Matrix<Rational>, Failure> {
    let text = match &input.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(e.to_string()))?;
            s
        }
    };
    Ok(MatrixDocument::parse(&text)?.rational_matrix()?)
}

/// Appends the report under `--check`; a failing report becomes an exit 4.
fn finish(mut out: Value, check: bool, report: impl FnOnce() -> Report) -> Result<Value, Failure> {
    if !check {
        return Ok(out);
    }
    let report = report();
    let pass = report.pass();
    out["report"] = report.to_json();
    if pass {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn fine_json(fd: &FineDecomposition) -> Value {
    let components: Vec<Value> = fd
        .components
        .iter()
        .map(|c| {
            json!({
                "factor": poly_summary(&c.factor),
                "multiplicity": c.multiplicity,
                "S": rational_matrix_to_json(&c.s),
                "N": rational_matrix_to_json(&c.n),
                "S_poly": poly_summary(&c.s_poly),
                "N_poly": poly_summary(&c.n_poly),
            })
        })
        .collect();
    json!({ "components": components, "zero_factor_index": fd.zero_factor_index })
}

fn part_kind_json(kind: &PartKind) -> Value {
    match kind {
        PartKind::Rational { gamma } => {
            json!({ "type": "rational", "gamma": rational_to_json(gamma) })
        }
        PartKind::ComplexPair { p, sqrt_q } => {
            json!({ "type": "complex-pair", "p": rational_to_json(p), "modulus": multiquad_to_json(sqrt_q) })
        }
        PartKind::RealPair { roots, d } => json!({
            "type": "real-pair",
            "roots": [multiquad_to_json(&roots[0]), multiquad_to_json(&roots[1])],
            "radicand": d,
        }),
    }
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Sn(input) => {
            let m = read_matrix(&input)?;
            let sn = sn_decompose(&m)?;
            let out = json!({
                "command": "sn",
                "S": rational_matrix_to_json(&sn.s),
                "N": rational_matrix_to_json(&sn.n),
                "S_poly": poly_summary(&sn.s_poly),
                "N_poly": poly_summary(&sn.n_poly),
                "minpoly": poly_summary(&sn.system.minpoly),
            });
            finish(out, input.check, || verify_sn(&m, &sn))
        }
        Command::Fine(input) => {
            let m = read_matrix(&input)?;
            let fd = fine_decompose(&m)?;
            let mut out = fine_json(&fd);
            out["command"] = json!("fine");
            finish(out, input.check, || verify_fine(&m, &fd))
        }
        Command::Covariants(input) => {
            let m = read_matrix(&input)?;
            let sys = covariants_of(&m)?;
            let projectors = materialize_projectors(&sys, &m)?;
            let factors: Vec<Value> = sys
                .factored
                .factors
                .iter()
                .enumerate()
                .map(|(i, (f, mu))| {
                    json!({
                        "factor": poly_summary(f),
                        "multiplicity": mu,
                        "E": poly_summary(&sys.e_polys[i]),
                        "S": poly_summary(&sys.s_polys[i]),
                        "N": poly_summary(&sys.n_polys[i]),
                        "projector": rational_matrix_to_json(&projectors[i]),
                    })
                })
                .collect();
            let out = json!({ "command": "covariants", "minpoly": poly_summary(&sys.minpoly), "factors": factors });
            finish(out, input.check, || verify_covariants(&sys, &m))
        }
        Command::Unbreakable(input) => {
            let s = read_matrix(&input)?;
            let comps = unbreakable_components(&s)?;
            let out = json!({
                "command": "unbreakable",
                "components": comps.iter().map(rational_matrix_to_json).collect::<Vec<_>>(),
            });
            finish(out, input.check, || verify_unbreakable(&s, &comps))
        }
        Command::Mjc(input) => {
            let m = read_matrix(&input)?;
            let d = multiplicative_jc(&m)?;
            let out = json!({ "command": "mjc", "S": rational_matrix_to_json(&d.s), "U": rational_matrix_to_json(&d.u) });
            finish(out, input.check, || verify_mjc(&m, &d))
        }
        Command::Cmjc(input) => {
            let m = read_matrix(&input)?;
            let d = complete_mjc(&m)?;
            let parts: Vec<Value> = d
                .parts
                .iter()
                .map(|p| {
                    json!({
                        "factor": poly_summary(&p.factor),
                        "kind": part_kind_json(&p.kind),
                        "projector": rational_matrix_to_json(&p.projector),
                        "delta_eigenvalues": p.delta_eigenvalues.iter().map(multiquad_to_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let out = json!({
                "command": "cmjc",
                "Delta": multiquad_matrix_to_json(&d.delta),
                "Sigma": multiquad_matrix_to_json(&d.sigma),
                "U": multiquad_matrix_to_json(&d.u),
                "radicands": d.radicands_used,
                "parts": parts,
            });
            finish(out, input.check, || verify_dsu(&m, &d))
        }
        Command::Svd(input) => {
            let a = read_matrix(&input)?;
            let s = svd(&a)?;
            let terms: Vec<Value> = s
                .terms
                .iter()
                .map(|t| json!({ "sigma": multiquad_to_json(&t.sigma), "A": multiquad_matrix_to_json(&t.a) }))
                .collect();
            let out = json!({ "command": "svd", "terms": terms });
            finish(out, input.check, || {
                let mut r = verify_svd_uniqueness(&a, &s);
                r.absorb("spectral", symmetric_spectral_check(&a));
                r
            })
        }
        Command::Apply { input, poly } => {
            let f = parse_poly(&poly)?;
            let m = read_matrix(&input)?;
            let r = schwerdtfeger_eval(&f, &m)?;
            let factors = covariants_of(&m)?.factored.factors;
            let classes: Vec<Value> = r
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "image_minpoly": poly_summary(&c.image_minpoly),
                        "factors": c.factors.iter().map(|&i| poly_summary(&factors[i].0)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let out = json!({
                "command": "apply",
                "poly": poly_summary(&f),
                "value": rational_matrix_to_json(&r.value),
                "semisimple_part": rational_matrix_to_json(&r.semisimple_part),
                "nilpotent_part": rational_matrix_to_json(&r.nilpotent_part),
                "S_poly": poly_summary(&r.s_poly),
                "N_poly": poly_summary(&r.n_poly),
                "classes": classes,
            });
            finish(out, input.check, || verify_apply(&f, &m, &r))
        }
        Command::Gen {
            seed,
            minpoly,
            blocks,
        } => Ok(generate_document(seed, minpoly.as_deref(), blocks.as_deref())?.to_json()),
        Command::Selftest { quick } => {
            let scale = if quick { Scale::quick() } else { Scale::full() };
            let start = Instant::now();
            let results = selftest::run(&scale);
            for r in &results {
                eprintln!("{}", r.line());
            }
            let report = selftest::to_report(&results);
            let pass = report.pass();
            let mut out =
                json!({ "command": "selftest", "quick": quick, "report": report.to_json() });
            out["elapsed_seconds"] = json!(start.elapsed().as_secs_f64());
            if pass {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn print(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn error_exit(kind: &str, message: String, code: u8) -> ExitCode {
    eprintln!(
        "{}",
        json!({ "error": { "kind": kind, "message": message } })
    );
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(raw) = std::env::var(DEGREE_CAP_VAR) {
        match raw.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => set_default_degree_cap(cap),
            _ => {
                return error_exit(
                    "Parse",
                    format!("{DEGREE_CAP_VAR} must be a positive integer, got {raw:?}"),
                    2,
                )
            }
        }
    }
    match run(cli.command) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            print(&v);
            error_exit("VerificationFailed", "one or more checks failed".into(), 4)
        }
        Err(Failure::Io(message)) => error_exit("Io", message, 2),
        Err(Failure::Error(e)) => {
            let code = match &e {
                Error::Parse(_) => 2,
                e if e.is_precondition() => 3,
                _ => 4,
            };
            error_exit(e.kind(), e.to_string(), code)
        }
    }
}
