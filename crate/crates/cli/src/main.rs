//! `gitnef`: exact intersection numbers, GIT 0-cells, cone decompositions
//! and capture certificates from the command line.

mod commands;
mod report;
mod reproduce;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gitnef_core::{Error, Execution};

use report::{Format, Mismatch, RunReport, Status, Table};

#[derive(Parser, Debug)]
#[command(
    name = "gitnef",
    version,
    about = "Exact computations with nef divisors on M_{0,n}"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for every randomized sampler.
    #[arg(long, global = true, default_value_t = 2026)]
    seed: u64,
    /// Run on one thread even when the parallel feature is built in.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// L_x . C for a weight vector and a vital curve.
    Intersect {
        /// Comma-separated weights, e.g. 1/2,1/2,1/4,1/4,1/4,1/4.
        #[arg(long)]
        x: String,
        /// Curve as 1-based blocks, e.g. "1 2 | 3 4 | 5 | 6".
        #[arg(long, conflicts_with = "shape")]
        curve: Option<String>,
        /// Curve shape, e.g. 2,2,1,1 (consecutive blocks).
        #[arg(long)]
        shape: Option<String>,
    },
    /// V(a, n) . C, on one curve or on every shape.
    IntersectV {
        #[arg(long)]
        a: String,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "shape")]
        curve: Option<String>,
        #[arg(long)]
        shape: Option<String>,
    },
    /// Coefficients of A_alpha and its values on every shape.
    AAlpha {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
    },
    /// Values of a symmetric divisor on every shape and its negative entries.
    CheckFnef {
        #[arg(long)]
        n: usize,
        /// e.g. r2=1,r3=1
        #[arg(long)]
        divisor: String,
    },
    /// 0-cells of the GIT complex.
    ZeroCells {
        #[arg(long)]
        n: usize,
        /// Group into S_n-orbits.
        #[arg(long)]
        orbits: bool,
        /// Allow n beyond the default bound.
        #[arg(long)]
        expensive: bool,
    },
    /// Decompose A_alpha (or any symmetric divisor) over the V(1/t, n) basis.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "divisor")]
        alpha: Option<String>,
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Membership in the symmetrized GIT cone for n = 6.
    SgcCheck {
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Decompose this divisor instead of scanning all 0-cells.
        #[arg(long)]
        divisor: Option<String>,
    },
    /// The telescoping rational identity, on one point or on random samples.
    VerifyIdentity {
        #[arg(long, default_value_t = 20)]
        max_m: u32,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Check a single y (requires --m).
        #[arg(long, requires = "m")]
        y: Option<String>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Exact cone membership with a certificate.
    ConeMember {
        #[arg(long)]
        n: usize,
        /// A class: r2=..,r3=.. | V(a) | A(alpha) | S(x1,..,xn).
        #[arg(long)]
        target: String,
        /// Classes separated by ';', or `git` for the symmetrized 0-cell generators.
        #[arg(long)]
        generators: String,
    },
    /// Capture certificates for every candidate width-3 partition.
    Capture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Include per-shape witnesses.
        #[arg(long)]
        shapes: bool,
    },
    /// Recompute a published table and diff it against the shipped values.
    Reproduce {
        #[arg(value_name = "TABLE", required_unless_present = "table")]
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        table: Option<String>,
    },
}

pub struct Context {
    pub seed: u64,
    pub exec: Execution,
}

fn error_report(command: &str, err: &Error) -> Option<RunReport> {
    let mismatch = match err {
        Error::ClosedFormMismatch {
            context,
            expected,
            computed,
        } => Mismatch {
            item: context.clone(),
            expected: expected.clone(),
            computed: computed.clone(),
        },
        Error::Certificate(msg) => Mismatch {
            item: "certificate".into(),
            expected: "a verified certificate".into(),
            computed: msg.clone(),
        },
        _ => return None,
    };
    let mut table = Table::new(&["item", "expected", "computed"]);
    table.push(vec![
        mismatch.item.clone(),
        mismatch.expected.clone(),
        mismatch.computed.clone(),
    ]);
    let mut r = RunReport::new(command, serde_json::json!({}), serde_json::Value::Null, table);
    r.status = Status::Mismatch(vec![mismatch]);
    Some(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context {
        seed: cli.seed,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let name = commands::name(&cli.command);
    let report = match commands::run(&cli.command, &ctx) {
        Ok(r) => r,
        Err(err) => match error_report(name, &err) {
            Some(r) => r,
            None => {
                eprintln!("error: {err}");
                eprintln!("run `gitnef {name} --help` for usage");
                return ExitCode::from(2);
            }
        },
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = report.write(cli.format, &mut stdout) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return ExitCode::from(report.exit_code());
        }
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code())
}
