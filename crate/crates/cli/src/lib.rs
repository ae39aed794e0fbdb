//! The `brauer` command line: argument parsing, dispatch and rendering.

pub mod args;
pub mod commands;
pub mod render;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

use brauer_core::enumeration::ClassFilter;

pub use args::Format;
pub use commands::{EXIT_INVALID, EXIT_MISMATCH};
pub use render::{Report, SCHEMA_VERSION};

use args::{Cli, Command};

/// A rendered document for stdout plus diagnostics for stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputDocument {
    pub format: Format,
    pub body: String,
    pub diagnostics: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> (i32, OutputDocument)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            let (code, body, diagnostics) = if shown { (0, text, String::new()) } else { (EXIT_INVALID, String::new(), text) };
            return (code, OutputDocument { format: Format::Text, body, diagnostics });
        }
    };
    let (name, outcome) = dispatch(&cli);
    match outcome {
        Ok((report, code)) => {
            let diagnostics = if code == EXIT_MISMATCH { format!("{name}: verification mismatch\n") } else { String::new() };
            (code, OutputDocument { format: cli.format, body: report.render(name, cli.format), diagnostics })
        }
        Err(e) => (e.code, OutputDocument { format: cli.format, body: String::new(), diagnostics: format!("{name}: {}\n", e.message) }),
    }
}

fn dispatch(cli: &Cli) -> (&'static str, commands::Outcome) {
    match &cli.command {
        Command::CheckWeil { poly, weight } => ("check-weil", commands::check_weil(poly, *weight)),
        Command::Invariants { poly, verify } => ("invariants", commands::invariants(poly, verify.as_deref())),
        Command::Enumerate { q, supersingular, p_rank, rho_bar, sample } => {
            let filter = match (supersingular, p_rank, rho_bar) {
                (true, _, _) => ClassFilter::Supersingular,
                (_, Some(r), _) => ClassFilter::PRank(*r),
                (_, _, Some(r)) => ClassFilter::RhoBar(*r),
                _ => ClassFilter::All,
            };
            ("enumerate", commands::enumerate(*q, filter, *sample, cli.seed))
        }
        Command::OmegaCatalog { tau } => ("omega-catalog", commands::omega_catalog(*tau)),
        Command::Table { id } => ("table", commands::table(id)),
        Command::BoundScan { q } => ("bound-scan", commands::bound_scan_cmd(q)),
        Command::LmfdbVerify { q, p_rank, offline, cache, fixtures, base_url } => (
            "lmfdb-verify",
            commands::lmfdb_verify(commands::LmfdbArgs {
                q: *q,
                p_rank: *p_rank,
                offline: *offline,
                cache: cache.as_deref(),
                fixtures: fixtures.as_deref(),
                base_url: base_url.as_deref(),
            }),
        ),
    }
}
