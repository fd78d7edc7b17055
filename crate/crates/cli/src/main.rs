mod args;
mod commands;
mod config;
mod failure;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use fht_core::fht::QuadratureConfig;

use args::{Cli, Command, QuadArgs};
use commands::Output;
use failure::{Failure, EXIT_USAGE};

fn quad_config(cli: &Cli, flags: &QuadArgs) -> Result<QuadratureConfig, Failure> {
    config::resolve(
        QuadratureConfig::chebyshev(),
        cli.config.as_deref(),
        std::env::var(config::TOL_ENV).ok(),
        flags,
    )
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Classify { space, format } => commands::classify(space, *format),
        Command::Member {
            lambda,
            p,
            space,
            format,
        } => commands::member(lambda, *p, space.as_deref(), *format),
        Command::Eigencheck {
            lambda,
            n,
            quad,
            format,
        } => commands::eigencheck(lambda, *n, quad_config(cli, quad)?, *format),
        Command::Transform {
            function,
            t,
            n,
            quad,
            format,
        } => commands::transform(function, t, *n, quad_config(cli, quad)?, *format),
        Command::Region { p, n, svg, csv } => commands::region(*p, *n, svg.as_deref(), csv.as_deref()),
        Command::Identities { n, quad, format } => {
            commands::identities(*n, quad_config(cli, quad)?, *format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let (stdout, code) = match run(&cli) {
        Ok(Output { stdout, code }) => (stdout, code),
        Err(failure) => {
            eprintln!("fht: {}", failure.message);
            (failure.report.map(|r| r + "\n").unwrap_or_default(), failure.code)
        }
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(stdout.as_bytes());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
