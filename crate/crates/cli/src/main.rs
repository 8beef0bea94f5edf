//! `qcap`: Schur Q-functions, Capelli eigenvalues for `q(n)`, and the
//! verification suite.
//!
//! Exit codes: 0 on success, 1 when a verification check fails (or a
//! computation breaks down), 2 on invalid input.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcap_core::capelli::{capelli_eigenvalue, eigenvalue_poly};
use qcap_core::partitions::{count_shifted_tableaux, n_lambda};
use qcap_core::qfunctions::{expand_in_basis, factorial_schur_q, schur_q, Basis};
use qcap_core::repsim::basis::SIZE_GUARD_ENV;
use qcap_core::scalar::format;
use qcap_core::verify::{self, VerifyConfig, DEFAULT_SEED};
use qcap_core::{Error, MultiPoly, StrictPartition};

#[derive(Parser, Debug)]
#[command(name = "qcap", version, about = "Schur Q-functions and Capelli eigenvalues for q(n)")]
struct Cli {
    /// Overrides the dimension guard for the brute-force model
    /// (same as setting QCAP_SIZE_GUARD).
    #[arg(long, global = true)]
    size_guard: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Q_λ, or the factorial Q*_λ with --factorial.
    Qfun(QfunArgs),
    /// Print the Capelli eigenvalue c_λ(μ) = Q*_λ(μ)/Q*_λ(λ).
    Eig(EigArgs),
    /// Print n_λ from its product formula.
    Nlambda(PartitionArg),
    /// Count shifted standard tableaux of shape λ.
    Tableaux(PartitionArg),
    /// Expand a polynomial (polynomial JSON) in the Q or Q* basis.
    Expand(ExpandArgs),
    /// Run the verification suite and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Q,
    Qstar,
}

#[derive(Args, Debug)]
struct QfunArgs {
    /// Strict partition, e.g. `3,1`; empty for ∅.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long)]
    n: usize,
    /// Factorial Q-function Q*_λ instead of Q_λ.
    #[arg(long)]
    factorial: bool,
    /// Divide Q*_λ by Q*_λ(λ) (implies --factorial).
    #[arg(long)]
    normalized: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct EigArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct PartitionArg {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Polynomial JSON, or `-` to read it from stdin.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, value_enum, default_value_t = BasisArg::Q)]
    basis: BasisArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_degree: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

/// How a command failed.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPartition(_)
            | Error::TooLong { .. }
            | Error::ZeroVariables
            | Error::LengthMismatch { .. }
            | Error::VariableMismatch(..)
            | Error::InvalidScalar(_)
            | Error::Json(_)
            | Error::SizeGuard { .. }
            | Error::NotQSymmetric
            | Error::NotInSpan(_)
            | Error::Inhomogeneous(_) => Failure::Invalid(e.to_string()),
            Error::DivisionByZero
            | Error::NotDivisible
            | Error::Singular(_)
            | Error::Decomposition(_)
            | Error::NonScalar(_)
            | Error::Interpolation(_) => Failure::Failed(e.to_string()),
        }
    }
}

fn partition(s: &str) -> Result<StrictPartition, Failure> {
    Ok(s.parse()?)
}

fn cmd_qfun(a: &QfunArgs) -> Result<String, Failure> {
    let lambda = partition(&a.lambda)?;
    if a.normalized {
        let record = eigenvalue_poly(&lambda, a.n)?;
        return Ok(match a.format {
            OutputFormat::Text => record.q_star.to_string(),
            OutputFormat::Json => record.to_json_string(),
        });
    }
    let p = if a.factorial { factorial_schur_q(&lambda, a.n)? } else { schur_q(&lambda, a.n)? };
    Ok(match a.format {
        OutputFormat::Text => p.to_string(),
        OutputFormat::Json => p.to_json_string(),
    })
}

fn cmd_eig(a: &EigArgs) -> Result<String, Failure> {
    let (lambda, mu) = (partition(&a.lambda)?, partition(&a.mu)?);
    Ok(format(&capelli_eigenvalue(&lambda, &mu, a.n)?))
}

fn cmd_expand(a: &ExpandArgs) -> Result<String, Failure> {
    let text = if a.poly == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Invalid(e.to_string()))?;
        s
    } else {
        a.poly.clone()
    };
    let p = MultiPoly::from_json_str(&text)?;
    let basis = match a.basis {
        BasisArg::Q => Basis::Q,
        BasisArg::Qstar => Basis::QStar,
    };
    let coeffs = expand_in_basis(&p, basis, p.nvars())?;
    Ok(match a.format {
        OutputFormat::Text => {
            let name = match basis {
                Basis::Q => "Q",
                Basis::QStar => "Q*",
            };
            let lines: Vec<String> = coeffs.iter().map(|(nu, c)| format!("{}\t{name}[{nu}]", format(c))).collect();
            lines.join("\n")
        }
        OutputFormat::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                coeffs.iter().map(|(nu, c)| (nu.to_string(), format(c).into())).collect();
            serde_json::Value::Object(map).to_string()
        }
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, bool), Failure> {
    let report = verify::run(&VerifyConfig { n: a.n, max_degree: a.max_degree, seed: a.seed })?;
    let pass = report.all_pass();
    let out = match a.format {
        OutputFormat::Json => report.to_json_string(),
        OutputFormat::Text => {
            let mut lines: Vec<String> = report
                .failures()
                .map(|c| {
                    let show = |p: &Option<StrictPartition>| p.as_ref().map_or("-".to_string(), |p| format!("({p})"));
                    format!("FAIL {} λ={} μ={}: expected {}, measured {}", c.name, show(&c.lambda), show(&c.mu), c.expected, c.measured)
                })
                .collect();
            let passed = report.checks.len() - lines.len();
            lines.push(format!("{passed}/{} checks passed", report.checks.len()));
            lines.push(format!(
                "conventions: spherical_scalar={}, hstar_variant={}",
                report.conventions.spherical_scalar, report.conventions.hstar_variant
            ));
            lines.join("\n")
        }
    };
    Ok((out, pass))
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Qfun(a) => cmd_qfun(a).map(|s| (s, true)),
        Command::Eig(a) => cmd_eig(a).map(|s| (s, true)),
        Command::Nlambda(a) => Ok((format(&n_lambda(&partition(&a.lambda)?)), true)),
        Command::Tableaux(a) => Ok((count_shifted_tableaux(&partition(&a.lambda)?).to_string(), true)),
        Command::Expand(a) => cmd_expand(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(guard) = cli.size_guard {
        std::env::set_var(SIZE_GUARD_ENV, guard.to_string());
    }
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok((out, pass))) => {
            // A closed pipe (e.g. `| head`) is not an error of the command.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Ok(Err(Failure::Invalid(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Failed(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(1),
    }
}
