//! `stubborn`: command-line front end for the stubborn-core library.
//!
//! Every subcommand prints one JSON run report on stdout. Exit codes: 0 on
//! success, 2 when the method does not apply to the input (a report is still
//! printed), 1 on input errors.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use stubborn_core::sos::SdpTolerances;

use commands::DeltaVariant;
use report::{envelope, Failure, Outcome, Status};

#[derive(Parser)]
#[command(name = "stubborn", version, about = "Stubbornness certificates for nonnegative forms")]
struct Cli {
    /// Worker threads for per-zero computations (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Print compact JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, homogeneity, Newton polytope, half support and parity classes.
    Info {
        /// A .poly file or an inline expression.
        poly: String,
    },
    /// Local invariants δ, δ^ℝ, δ^sos at a zero of a ternary form.
    Delta {
        poly: String,
        /// Projective point such as [0:0:1] or [1:sqrt(2):1].
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value_t = DeltaVariant::All)]
        variant: DeltaVariant,
    },
    /// Certify stubbornness by comparing Σ δ^sos with d²/4.
    Stubborn {
        poly: String,
        /// `auto` or a file with one projective point per line.
        #[arg(long, default_value = "auto")]
        zeros: String,
        /// Leave resolution trees out of the report.
        #[arg(long)]
        no_trees: bool,
    },
    /// Decide whether P^k is a sum of squares.
    Sos {
        poly: String,
        /// Odd power k.
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Run the exact parity-class test before the SDP.
        #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = clap::ArgAction::Set)]
        exact_first: bool,
        /// Solve one Gram matrix instead of parity blocks.
        #[arg(long)]
        no_parity_blocks: bool,
        #[arg(long, default_value_t = 1e-7)]
        eig_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        res_tol: f64,
    },
    /// Bisect for the boundary of a one-parameter family.
    Threshold {
        /// motzkin-a (M_a^k a sum of squares) or stengle-c (T_c nonnegative).
        family: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Feasible and infeasible ends.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        bracket: Option<Vec<String>>,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long, default_value_t = 1e-7)]
        eig_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        res_tol: f64,
    },
    /// Verify P∘σ = base exactly and transfer the base's certificate.
    Restrict {
        poly: String,
        /// Substitution VAR=EXPR; repeat for several variables.
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        /// The expected image, as a file or expression.
        #[arg(long)]
        base: String,
        /// Also certify the base (homogenized if needed).
        #[arg(long)]
        certify_base: bool,
    },
    /// X1^{2m}·P with the transferred verdict.
    Lift {
        poly: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        certify_base: bool,
    },
}

fn run(cli: &Cli) -> (&'static str, Result<Outcome, Failure>) {
    match &cli.command {
        Command::Info { poly } => ("info", commands::info(poly)),
        Command::Delta { poly, at, variant } => ("delta", commands::delta(poly, at, *variant)),
        Command::Stubborn { poly, zeros, no_trees } => ("stubborn", commands::stubborn(poly, zeros, cli.jobs, !no_trees)),
        Command::Sos { poly, power, exact_first, no_parity_blocks, eig_tol, res_tol } => (
            "sos",
            commands::sos(poly, *power, *exact_first, !no_parity_blocks, SdpTolerances { eig_tol: *eig_tol, res_tol: *res_tol }),
        ),
        Command::Threshold { family, power, bracket, tol, eig_tol, res_tol } => (
            "threshold",
            commands::threshold(
                family,
                *power,
                bracket.as_deref(),
                *tol,
                SdpTolerances { eig_tol: *eig_tol, res_tol: *res_tol },
            ),
        ),
        Command::Restrict { poly, sets, base, certify_base } => {
            ("restrict", commands::restrict(poly, sets, base, *certify_base, cli.jobs))
        }
        Command::Lift { poly, m, certify_base } => ("lift", commands::lift(poly, *m, *certify_base, cli.jobs)),
    }
}

fn print(report: &report::RunReport, compact: bool) {
    let s = if compact { serde_json::to_string(report) } else { serde_json::to_string_pretty(report) };
    println!("{}", s.expect("report serializes"));
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("STUBBORN_LOG")).init();
    let cli = Cli::parse();
    let (name, result) = run(&cli);
    match result {
        Ok(out) => {
            print(&envelope(name, Status::Ok, out, cli.timings), cli.compact);
            ExitCode::SUCCESS
        }
        Err(Failure::Inapplicable { inputs, reason, hint }) => {
            let out = Outcome { inputs, results: json!({ "reason": reason, "hint": hint }), ..Default::default() };
            print(&envelope(name, Status::Inapplicable, out, cli.timings), cli.compact);
            eprintln!("stubborn {name}: not applicable: {reason}");
            ExitCode::from(2)
        }
        Err(Failure::Input(e)) => {
            eprintln!("stubborn {name}: error: {e:#}");
            ExitCode::from(1)
        }
    }
}
