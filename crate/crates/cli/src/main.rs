//! gwops: certify finite groups with operations, crossed modules, internal
//! groupoids and cat¹-groups given as structure files.
//!
//! Exit codes: 0 valid, 1 mathematically invalid (with witness), 2 malformed
//! input or usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Report, Verdict};

#[derive(Parser)]
#[command(
    name = "gwops",
    version,
    about = "Certifier for groups with operations, crossed modules, internal groupoids and cat1-groups",
    after_help = "EXIT CODES:\n  0  valid / property holds\n  1  invalid, with a witness in the report\n  2  malformed input or usage error\n\n\
                  EXAMPLES:\n  gwops validate z4.json\n  gwops quotient z4.json two.json --output z2.json\n  \
                  gwops to-gpd incl.json --report cert.json\n  gwops corpus-verify small-rings"
)]
struct Cli {
    /// Element-count ceiling for constructed and enumerated structures
    #[arg(long, global = true, default_value_t = 16)]
    bound: usize,
    /// Write a machine-readable JSON report to this path
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of the structure in a file
    Validate { file: PathBuf },
    /// Quotient a structure by a normal subobject file
    Quotient {
        file: PathBuf,
        ideal: PathBuf,
        /// Where to write the quotient structure file
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Semidirect product of A and B under an action file
    Semidirect {
        a: PathBuf,
        b: PathBuf,
        action: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Internal groupoid of a crossed module or cat1-group
    ToGpd {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cat1-group of a crossed module or internal groupoid
    ToCat1 {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Crossed module of an internal groupoid or cat1-group
    ToXmod {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a subobject file is normal in a structure
    CheckNormal { file: PathBuf, sub: PathBuf },
    /// Decide whether a morphism file is a covering
    CheckCovering { morphism: PathBuf },
    /// Verify the round-trip isomorphisms through the other two categories
    Roundtrip { file: PathBuf },
    /// Generate a corpus and check every theorem-level property on it
    CorpusVerify {
        /// One of: small-rings, groups, products, full, empty
        profile: Option<String>,
        #[arg(long = "profile", conflicts_with = "profile")]
        profile_flag: Option<String>,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let bound = cli.bound;
    match &cli.command {
        Command::Validate { file } => commands::validate(file),
        Command::Quotient { file, ideal, output } => commands::quotient(file, ideal, output.as_deref()),
        Command::Semidirect { a, b, action, output } => commands::semidirect(a, b, action, bound, output.as_deref()),
        Command::ToGpd { file, output } => commands::convert(file, commands::Target::Gpd, bound, output.as_deref()),
        Command::ToCat1 { file, output } => commands::convert(file, commands::Target::Cat1, bound, output.as_deref()),
        Command::ToXmod { file, output } => commands::convert(file, commands::Target::XMod, bound, output.as_deref()),
        Command::CheckNormal { file, sub } => commands::check_normal(file, sub),
        Command::CheckCovering { morphism } => commands::check_covering(morphism),
        Command::Roundtrip { file } => commands::roundtrip(file),
        Command::CorpusVerify { profile, profile_flag } => {
            let name = profile.as_deref().or(profile_flag.as_deref()).unwrap_or("small-rings");
            commands::corpus_verify(name, bound)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Quotient { .. } => "quotient",
        Command::Semidirect { .. } => "semidirect",
        Command::ToGpd { .. } => "to-gpd",
        Command::ToCat1 { .. } => "to-cat1",
        Command::ToXmod { .. } => "to-xmod",
        Command::CheckNormal { .. } => "check-normal",
        Command::CheckCovering { .. } => "check-covering",
        Command::Roundtrip { .. } => "roundtrip",
        Command::CorpusVerify { .. } => "corpus-verify",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = run(&cli).unwrap_or_else(|e| Report::error(format!("{e:#}")));
    let report = report.with_command(command_name(&cli.command));
    for line in &report.summary {
        println!("{line}");
    }
    if report.verdict == Verdict::Error {
        eprintln!("error: {}", report.summary.last().map(String::as_str).unwrap_or("unknown"));
    }
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.verdict.exit_code())
}
