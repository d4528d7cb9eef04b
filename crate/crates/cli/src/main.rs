use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wsmod_core::family::{crosscheck_generic, family_dims, family_semigroup};
use wsmod_core::krull::Certification;
use wsmod_core::pipeline::{
    analyze, parse_batch, parse_generators, render_json, render_table, run_batch, table1, with_jobs, AnalyzeOptions,
    Mode, PipelineError,
};

/// Dimension bounds for moduli of pointed Gorenstein curves with a symmetric
/// Weierstrass semigroup.
#[derive(Parser)]
#[command(name = "wsmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Quadratic,
    /// Also computes the dimension of the moduli variety (slow).
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    /// Rationals, certified by a second variable order.
    Q,
    /// Two primes near 2^31.
    Fp,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "quadratic")]
    mode: ModeArg,
    /// Field for the dimension computations; by default rationals up to 20
    /// variables and primes above.
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

impl RunArgs {
    fn options(&self) -> AnalyzeOptions {
        let mode = match self.mode {
            ModeArg::Quadratic => Mode::Quadratic,
            ModeArg::Full => Mode::Full,
        };
        let certification = match self.field {
            None => Certification::Auto,
            Some(FieldArg::Q) => Certification::Rational,
            Some(FieldArg::Fp) => Certification::TwoPrimes,
        };
        AnalyzeOptions { mode, certification, ..Default::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bounds for one semigroup.
    Analyze {
        /// Comma-separated generators, e.g. 6,8,9,10,11.
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        json: bool,
    },
    /// The six reference semigroups.
    Table1 {
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Closed forms for <6, 6t+2, 6t+3, 6t+4, 6t+5>.
    Family {
        #[arg(long)]
        tau: u32,
        /// Compare with the generic pipeline (T1 for every tau, the
        /// quadratic cone for tau <= 2).
        #[arg(long)]
        crosscheck: bool,
    },
    /// One report per input line, written as a JSON array.
    Batch {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Drop entries that violate the hypotheses instead of failing.
        #[arg(long)]
        skip_invalid: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<(), PipelineError> {
    match cmd {
        Command::Analyze { gens, run, json } => {
            let gens = parse_generators(&gens).map_err(PipelineError::InvalidArgument)?;
            let report = with_jobs(run.jobs, || analyze(&gens, run.options()))?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", render_table(std::slice::from_ref(&report)));
            }
        }
        Command::Table1 { jobs, json } => {
            let reports = with_jobs(jobs, || table1(AnalyzeOptions::default()))?;
            if json {
                println!("{}", render_json(&reports));
            } else {
                print!("{}", render_table(&reports));
            }
        }
        Command::Family { tau, crosscheck } => {
            if tau == 0 {
                return Err(PipelineError::InvalidArgument("tau must be positive".into()));
            }
            let sg = family_semigroup(tau);
            println!("N = {sg}, g = {}", sg.genus());
            println!("{}", family_dims(tau));
            if crosscheck {
                let r = crosscheck_generic(tau, tau <= 2)?;
                print!("generic pipeline agrees: dim T1- = {}", r.dim_t1);
                if let Some(q) = r.dim_q {
                    print!(", dim Q = {q}");
                }
                println!();
            }
        }
        Command::Batch { input, output, run, skip_invalid } => {
            let text = fs::read_to_string(&input)?;
            let entries = parse_batch(&text)?;
            let outcome = run_batch(&entries, run.options(), run.jobs.unwrap_or(1), skip_invalid)?;
            for (line, msg) in &outcome.skipped {
                eprintln!("skipped line {line}: {msg}");
            }
            fs::write(&output, render_json(&outcome.reports) + "\n")?;
        }
    }
    Ok(())
}
