mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit statuses besides 0.
pub const EXIT_ASSERTION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MALFORMED: u8 = 3;
/// `compare`: every target pair is realized, plus extra pairs.
pub const EXIT_INCLUSION: u8 = 4;

#[derive(Debug)]
pub enum Failure {
    Assertion(String),
    Usage(String),
    Malformed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Assertion(_) => EXIT_ASSERTION,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Malformed(_) => EXIT_MALFORMED,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Assertion(m) | Failure::Usage(m) | Failure::Malformed(m) => m,
        }
    }
}

impl From<edgedepth::Error> for Failure {
    fn from(e: edgedepth::Error) -> Self {
        use edgedepth::Error as E;
        let msg = e.to_string();
        match e {
            E::Graph6(_) | E::Json(_) | E::Io(_) | E::CheckpointCorrupt { .. } | E::NotInClass { .. } => {
                Failure::Malformed(msg)
            }
            E::OracleDisagreement { .. } => Failure::Assertion(msg),
            _ => Failure::Usage(msg),
        }
    }
}

/// Text to print and the exit status to return with it.
pub struct Report {
    pub text: String,
    pub code: u8,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::Context::new(&cli.global).and_then(|ctx| {
        let report = ctx.run(&cli.command)?;
        ctx.emit(&report.text)?;
        Ok(report.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = writeln!(std::io::stderr(), "error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
