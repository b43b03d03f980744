//! `essnorm`: torsional rigidity, essential-norm lower bounds and self-checks
//! from the command line. Reports are canonical JSON on standard output (or
//! the `--out` file); diagnostics go to standard error.

mod commands;
mod error;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::AlphaArgs;
use error::CliError;
use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "essnorm", version, about = "Essential-norm lower bounds and torsional rigidity")]
struct Cli {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in `timing_ms` (otherwise 0, keeping reports reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerical alpha (square root of torsional rigidity) of a planar domain.
    Alpha {
        /// Domain JSON, e.g. {"type":"disc","radius":1.0}.
        domain_file: PathBuf,
        /// Grid spacing.
        #[arg(long, default_value_t = 1.0 / 64.0)]
        h: f64,
        /// Also solve at h/2 and Richardson-extrapolate.
        #[arg(long)]
        refine: bool,
        /// Write the finest torsion field as CSV (x,y,u).
        #[arg(long)]
        field_out: Option<PathBuf>,
    },
    /// Lower bound for the essential norm of N_q on a convex domain.
    Bound {
        /// Convex domain spec JSON.
        spec_file: PathBuf,
        #[arg(long)]
        q: u32,
        /// Radius of an affine disc in the boundary (n = 2, smooth); adds the disc certificate.
        #[arg(long)]
        disc_radius: Option<f64>,
    },
    /// Lower bound for the essential norm of N_1 on the worm domain.
    Worm {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        r: f64,
    },
    /// Hankel operator eigenvalues on the disc and the bidisc comparison.
    Hankel {
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        /// Number of bidisc eigenvalue copies to confirm.
        #[arg(long, default_value_t = 5)]
        multiplicity: usize,
    },
    /// Run the self-check battery; exits 1 if any check fails.
    Verify {
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Alpha at h, h/2, h/4 and the empirical convergence order.
    Convergence {
        domain_file: PathBuf,
        #[arg(long, default_value_t = 1.0 / 32.0)]
        h: f64,
        /// Print a plain-text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let mut verification_failure = None;
    let mut table = None;
    let mut report: RunReport = match &cli.command {
        Command::Alpha { domain_file, h, refine, field_out } => commands::alpha(AlphaArgs {
            domain_file,
            h: *h,
            refine: *refine,
            field_out: field_out.as_deref(),
        })?,
        Command::Bound { spec_file, q, disc_radius } => commands::bound(spec_file, *q, *disc_radius)?,
        Command::Worm { beta, r } => commands::worm(*beta, *r)?,
        Command::Hankel { max_degree, multiplicity } => commands::hankel(*max_degree, *multiplicity)?,
        Command::Verify { inject_fault } => {
            let (report, all_pass) = verify::verify(inject_fault.as_deref())?;
            if !all_pass {
                let names = verify::failed_names(&report);
                verification_failure = Some(CliError::VerificationFailed { failed: names.split(", ").count(), names });
            }
            report
        }
        Command::Convergence { domain_file, h, table: as_table } => {
            let report = commands::convergence(domain_file, *h)?;
            if *as_table {
                table = Some(commands::convergence_table(&report));
            }
            report
        }
    };
    if cli.timing {
        report.timing_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    }
    let text = table.unwrap_or_else(|| report.render());
    match &cli.out {
        Some(path) => commands::write_file(path, &text)?,
        None => print!("{text}"),
    }
    verification_failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
