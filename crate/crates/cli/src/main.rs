//! `yamabe` — tables, estimations, and verification suites for conformal
//! Yamabe constants of product manifolds.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 violated product assumption, 4 non-convergence under --strict.

mod commands;
mod descriptor;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use output::Format;
use std::path::PathBuf;
use yamabe_core::minimize::MinimizeConfig;

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }
    pub fn verification(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 1 }
    }
    pub fn assumption(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 3 }
    }
    pub fn strict_nonconvergence(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 4 }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Holder,
    Gradient,
    Young,
    Assumption,
    All,
}

impl From<SuiteArg> for commands::Suite {
    fn from(s: SuiteArg) -> commands::Suite {
        match s {
            SuiteArg::Holder => commands::Suite::Holder,
            SuiteArg::Gradient => commands::Suite::Gradient,
            SuiteArg::Young => commands::Suite::Young,
            SuiteArg::Assumption => commands::Suite::Assumption,
            SuiteArg::All => commands::Suite::All,
        }
    }
}

/// Conformal Yamabe constants of products: closed-form tables and
/// discrete variational estimates.
#[derive(Parser, Debug)]
#[command(name = "yamabe", version, about)]
struct Cli {
    /// Output format (CSV table or one JSON document)
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: FormatArg,

    /// Write the document to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form constants a_m, p_m, ω_m, μ(S^m), Σ(S^m) per dimension
    Constants {
        /// Dimensions m >= 3
        m: Vec<u32>,
    },

    /// Grid of the product-bound defect factor ε_{v,w}
    EpsilonTable {
        #[arg(long, default_value_t = 7)]
        v_max: u32,
        #[arg(long, default_value_t = 7)]
        w_max: u32,
    },

    /// Surgery constants Λ_{m,k} and their minimum per dimension
    LambdaTable {
        /// Dimensions m >= 6 (default: 6 7 8 9)
        m: Vec<u32>,
    },

    /// Estimate the Yamabe constant of a geometry descriptor:
    /// `sphere M N [SCALE]`, `torus M N`, `product (D) (D)`, `file PATH`
    Estimate {
        /// RNG seed for the random restarts
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        max_iters: u32,
        /// Relative stagnation tolerance of the descent
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Starts: the constant field plus restarts-1 random fields
        #[arg(long, default_value_t = 4)]
        restarts: u32,
        /// Exit 4 when the descent does not converge
        #[arg(long)]
        strict: bool,
        /// Emit the per-step value history
        #[arg(long)]
        history: bool,
        /// Geometry descriptor tokens
        #[arg(required = true, num_args = 1.., trailing_var_arg = true)]
        descriptor: Vec<String>,
    },

    /// Run seeded random verification suites of the product-bound
    /// inequalities; exit 1 on any violation
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1000)]
        cases: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Convergence table of Σ(S^{v+bi})/Σ(S^{bi}) toward (πe/2)^v
    StableLimit {
        #[arg(long)]
        v: u32,
        /// Dimension of the Ricci-flat factor
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long)]
        i_max: u32,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format: Format = cli.format.into();
    let out = cli.out.as_deref();
    match cli.command {
        Command::Constants { m } => commands::constants(&m, format, out),
        Command::EpsilonTable { v_max, w_max } => {
            commands::epsilon_table(v_max, w_max, format, out)
        }
        Command::LambdaTable { m } => {
            let list = if m.is_empty() { vec![6, 7, 8, 9] } else { m };
            commands::lambda_table(&list, format, out)
        }
        Command::Estimate { seed, max_iters, tol, restarts, strict, history, descriptor } => {
            let flags = commands::EstimateFlags {
                cfg: MinimizeConfig {
                    max_iters,
                    rel_tol: tol,
                    restarts,
                    rng_seed: seed,
                    ..MinimizeConfig::default()
                },
                strict,
                history,
            };
            commands::estimate(&descriptor.join(" "), &flags, format, out)
        }
        Command::Verify { suite, cases, seed } => {
            commands::verify(suite.into(), cases, seed, format, out)
        }
        Command::StableLimit { v, b, i_max } => {
            commands::stable_limit(v, b, i_max, format, out)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
