use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use twobridge::dilog::DilogConfig;
use twobridge::make_params;
use twobridge::volume::{volume_with, VolumeConfig};
use twobridge_cli::report::{info_text, volume_json, volume_text};
use twobridge_cli::scan::{render, scan, Format};
use twobridge_cli::selfcheck::{table, CheckConfig, Suite};
use twobridge_cli::{figure, write_output, CliError};

/// Hyperbolic volumes of two-bridge knots K(p,q).
#[derive(Debug, Parser)]
#[command(name = "twobridge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Volume of K(p,q), the maximum over the Riley roots.
    Vol {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        /// Also list the volume at every root.
        #[arg(long)]
        all_roots: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sign sequence, continued fraction, presentation words and Riley polynomial.
    Info {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        /// Append the roots of the Riley polynomial with their residuals.
        #[arg(long)]
        roots: bool,
    },
    /// Volumes of all K(p,q) with p <= pmax.
    Scan {
        #[arg(long)]
        pmax: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scatter plot of (q/p, volume) as SVG.
    Figure {
        #[arg(long)]
        pmax: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run every acceptance criterion and print a pass/fail table.
    Selftest {
        /// Series truncation tolerance for the dilogarithm (default 1e-15).
        #[arg(long)]
        dilog_tol: Option<f64>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Vol {
            p,
            q,
            all_roots,
            json,
        } => {
            let params = make_params(p, q)?;
            let result = volume_with(&params, &VolumeConfig::default())?;
            if json {
                print!("{}", volume_json(&result));
            } else {
                print!("{}", volume_text(&result, all_roots));
            }
        }
        Command::Info { p, q, roots } => {
            let params = make_params(p, q)?;
            print!("{}", info_text(&params, roots)?);
        }
        Command::Scan {
            pmax,
            format,
            output,
        } => {
            let text = render(&scan(pmax)?, format);
            match output {
                Some(path) => write_output(&path, text.as_bytes())?,
                None => print!("{text}"),
            }
        }
        Command::Figure { pmax, output } => {
            let svg = figure::render_svg(&scan(pmax)?, pmax);
            write_output(&output, svg.as_bytes())?;
        }
        Command::Selftest { dilog_tol } => {
            let mut cfg = CheckConfig::default();
            if let Some(tol) = dilog_tol {
                if !(tol > 0.0 && tol < 1.0) {
                    return Err(CliError::Invalid(format!(
                        "dilog tolerance must lie in (0, 1), got {tol}"
                    )));
                }
                cfg.volume.dilog = DilogConfig {
                    series_tol: tol,
                    ..DilogConfig::default()
                };
            }
            let outcomes = Suite::new(cfg).run_all();
            print!("{}", table(&outcomes));
            if !outcomes.iter().all(|o| o.passed) {
                return Err(CliError::SelfTestFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
