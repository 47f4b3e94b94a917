use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use phasewall_cli::check::{run_check, SuiteSel};
use phasewall_cli::config::{Command, Format, GridOverrides, Overrides, RunConfig};
use phasewall_cli::derive::run_derive;
use phasewall_cli::free::{free_report, parse_state};
use phasewall_cli::report::run_report;
use phasewall_cli::sample::{entry, write_csv};
use phasewall_cli::{to_json, with_output};

#[derive(Parser)]
#[command(name = "phasewall", version, about = "Wigner functions of walls and wells: derivations and residual checks")]
struct Cli {
    /// JSON config file; command-line flags take precedence over it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eliminate shifted unknowns and take the wall limit for a preset potential
    Derive {
        /// liouville, sinh-gordon, exp-delta, exp-delta-left or free
        #[arg(long)]
        system: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run residual and property suites; exit 1 if any case fails
    Check {
        #[arg(value_enum)]
        suite: Option<SuiteSel>,
        /// Override every normalized-residual tolerance
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a catalog Wigner function on a grid as x,p,value CSV
    Sample {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        energy: Option<f64>,
        /// Quantum number for the square well
        #[arg(long)]
        n: Option<u32>,
        /// x range as lo,hi
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        x_range: Option<[f64; 2]>,
        /// p range as lo,hi
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        p_range: Option<[f64; 2]>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        np: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Star-square, purity and stargenvalue residuals of a free-particle state
    FreeParticle {
        /// a+ a- Re(b) Im(b) E, or alpha+ alpha- E (exact decimals or fractions;
        /// put negative fractions after `--`)
        #[arg(num_args = 1.., allow_negative_numbers = true)]
        values: Vec<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run everything and write a single JSON summary
    Report {
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t}: {e}"));
    Ok([num(a)?, num(b)?])
}

/// Command-line values as the highest-precedence overrides.
fn flags(cmd: &Cmd) -> (Command, Overrides) {
    let mut o = Overrides::default();
    let command = match cmd {
        Cmd::Derive { system, format, out } => {
            (o.system, o.format, o.out) = (system.clone(), *format, out.clone());
            Command::Derive
        }
        Cmd::Check {
            suite,
            tolerance,
            format,
            out,
        } => {
            o.suite = suite.map(|s| s.to_string());
            (o.tolerance, o.format, o.out) = (*tolerance, *format, out.clone());
            Command::Check
        }
        Cmd::Sample {
            case,
            energy,
            n,
            x_range,
            p_range,
            nx,
            np,
            format,
            out,
        } => {
            (o.case, o.energy, o.n) = (case.clone(), *energy, *n);
            o.grid = GridOverrides {
                x: *x_range,
                p: *p_range,
                nx: *nx,
                np: *np,
            };
            (o.format, o.out) = (*format, out.clone());
            Command::Sample
        }
        Cmd::FreeParticle { format, out, .. } => {
            (o.format, o.out) = (*format, out.clone());
            Command::FreeParticle
        }
        Cmd::Report { tolerance, out } => {
            (o.tolerance, o.out) = (*tolerance, out.clone());
            Command::Report
        }
    };
    (command, o)
}

enum Outcome {
    Ok,
    Failed,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let file = cli.config.as_deref().map(Overrides::from_file).transpose()?;
    let (command, o) = flags(&cli.command);
    let cfg = RunConfig::resolve(command, o, file)?;
    let out = cfg.out.as_deref();
    match &cli.command {
        Cmd::Derive { .. } => {
            let d = run_derive(cfg.system.as_deref())?;
            let body = match cfg.format {
                Format::Json => to_json(&d),
                _ => d.text(),
            };
            with_output(out, |w| Ok(w.write_all(body.as_bytes())?))?;
            Ok(Outcome::Ok)
        }
        Cmd::Check { .. } => {
            let sel: SuiteSel = cfg.suite.as_deref().unwrap_or("all").parse().map_err(anyhow::Error::msg)?;
            let c = run_check(sel, cfg.tolerance)?;
            let body = match cfg.format {
                Format::Json => to_json(&c),
                _ => c.text(),
            };
            with_output(out, |w| Ok(w.write_all(body.as_bytes())?))?;
            for line in c.failure_lines() {
                eprintln!("{line}");
            }
            Ok(if c.pass { Outcome::Ok } else { Outcome::Failed })
        }
        Cmd::Sample { .. } => {
            let e = entry(cfg.case.as_deref(), cfg.energy, cfg.n)?;
            with_output(out, |w| Ok(write_csv(&e, &cfg.grid, w)?))?;
            Ok(Outcome::Ok)
        }
        Cmd::FreeParticle { values, .. } => {
            let r = free_report(&parse_state(values)?)?;
            let body = match cfg.format {
                Format::Json => to_json(&r),
                _ => r.text(),
            };
            with_output(out, |w| Ok(w.write_all(body.as_bytes())?))?;
            Ok(Outcome::Ok)
        }
        Cmd::Report { .. } => {
            let r = run_report(cfg.tolerance)?;
            with_output(out, |w| Ok(w.write_all(to_json(&r).as_bytes())?))?;
            Ok(if r.summary.pass { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
