//! Command-line front end for the verification suite.
//!
//! Calculators (`m-number`, `bracket`) print a single value.  Check
//! runners (`tables`, `lemma`, `fomega`, `verify`, `sweep`) print one
//! line per check plus a counts line, optionally write the JSON and
//! Markdown reports, and exit 0 when everything is certified, 2 when a
//! check fails (or mismatches under `--strict-paper`), 1 on bad usage.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use invofix_core::binomial::stong_pergher;
use invofix_core::charclass::{bracket_f4, FnSide};
use invofix_core::emit;
use invofix_core::report::{CheckStatus, SuiteReport};
use invofix_core::rings::RpMuPresentation;
use invofix_core::suite::{self, SuiteConfig};
use invofix_core::Error;

#[derive(Parser)]
#[command(
    name = "invofix",
    version,
    about = "Replays and adjudicates the characteristic-class computations \
             behind a fixed-point codimension bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Exit nonzero on mismatches with the stated displays too.
    #[arg(long = "strict-paper", global = true)]
    strict_paper: bool,
    /// Write the canonical JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the Markdown report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    markdown: Option<PathBuf>,
    /// Worker threads for check batches; 0 picks the machine default.
    #[arg(long, global = true, default_value_t = 0, value_name = "K")]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimal-codimension number M(n).
    MNumber {
        n: u64,
    },
    /// Print one bracket class component.
    Bracket {
        #[command(subcommand)]
        side: BracketSide,
    },
    /// Check the binomial parity tables for every splitting in range.
    Tables {
        #[arg(long, default_value_t = 12)]
        p_max: u32,
        #[arg(long, default_value_t = 15)]
        q_max: u64,
    },
    /// Check the degree-4 relation lemma and the squaring steps behind it.
    Lemma,
    /// Check the f_omega classes on both sides.
    Fomega,
    /// Run every check tied to one fixed-point dimension.
    Verify {
        #[arg(long)]
        n: u32,
        /// Ambient codimension; defaults to three admissible values.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Run the full suite over a dimension range.
    Sweep {
        #[arg(long, default_value_t = 5)]
        n_min: u32,
        #[arg(long, default_value_t = 24)]
        n_max: u32,
        #[arg(long, default_value_t = 12)]
        p_max: u32,
        #[arg(long, default_value_t = 15)]
        q_max: u64,
        /// Ambient codimension; defaults to three admissible values per n.
        #[arg(long)]
        m: Option<u32>,
    },
}

#[derive(Subcommand)]
enum BracketSide {
    /// W[r] in degree j on the symbolic side with base dimension n.
    Fn {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        n: u32,
    },
    /// W[l] in degree t, reduced in the quotient ring with codimension m.
    F4 {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        m: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let out = cli.output;
    match cli.command {
        Command::MNumber { n } => {
            if n == 0 {
                return Err(Error::BadParameters("n must be positive".into()));
            }
            println!("{}", stong_pergher(n));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket { side } => {
            match side {
                BracketSide::Fn { r, j, n } => {
                    if n == 0 {
                        return Err(Error::BadParameters("n must be positive".into()));
                    }
                    let side = FnSide::new(n, j.max(1));
                    println!("{}", side.bracket(r, j));
                }
                BracketSide::F4 { l, t, m } => {
                    if t > 120 {
                        return Err(Error::BadParameters(format!(
                            "the series route holds components in 128-bit words, \
                             which caps t at 120; got {t}"
                        )));
                    }
                    let pres = RpMuPresentation::new(m)?;
                    println!("{}", bracket_f4(l, t, &pres)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { p_max, q_max } => {
            if p_max < 1 || q_max < 1 {
                return Err(Error::BadParameters(
                    "p_max and q_max must be at least 1".into(),
                ));
            }
            finish(
                suite::run_checks(suite::table_checks(p_max, q_max), out.jobs),
                &out,
            )
        }
        Command::Lemma => finish(suite::run_checks(suite::lemma_checks(), out.jobs), &out),
        Command::Fomega => finish(suite::run_checks(suite::fomega_checks(), out.jobs), &out),
        Command::Verify { n, m } => {
            let checks = suite::verify_n_checks(n, m)?;
            finish(suite::run_checks(checks, out.jobs), &out)
        }
        Command::Sweep {
            n_min,
            n_max,
            p_max,
            q_max,
            m,
        } => {
            let config = SuiteConfig {
                n_min,
                n_max,
                m_override: m,
                p_max,
                q_max,
                jobs: out.jobs,
            };
            finish(suite::run_suite(&config)?, &out)
        }
    }
}

fn finish(report: SuiteReport, out: &OutputArgs) -> Result<ExitCode, Error> {
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "pass          ",
            CheckStatus::Fail => "FAIL          ",
            CheckStatus::PaperMismatch => "paper_mismatch",
        };
        let params = check
            .params
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" ");
        match &check.witness {
            Some(witness) => println!("{status} {} [{params}]: {witness}", check.id),
            None => println!("{status} {} [{params}]", check.id),
        }
    }
    let (pass, fail, mismatch) = report.counts();
    println!(
        "{} checks: {pass} pass, {fail} fail, {mismatch} paper_mismatch",
        report.checks.len()
    );
    if let Some(path) = &out.json {
        fs::write(path, emit::to_json(&report))?;
    }
    if let Some(path) = &out.markdown {
        fs::write(path, emit::to_markdown(&report))?;
    }
    Ok(ExitCode::from(report.exit_code(out.strict_paper) as u8))
}
