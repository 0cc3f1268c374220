//! `realclass`: count, enumerate and verify real classes of finite linear groups.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use realclass::counting::{CountKind, Family};

#[derive(Parser, Debug)]
#[command(name = "realclass", version, about = "Real, strongly real and zeta-real classes of GL, SL, PGL, PSL and SL/Y")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count classes of one kind in one group.
    Count {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_parser = parse_kind)]
        kind: CountKind,
        /// Labels walked per type when cross-checking the closed forms.
        #[arg(long, default_value_t = realclass::counting::DEFAULT_CROSS_CHECK_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare brute-force class enumeration with the counting engine.
    Verify {
        #[command(flatten)]
        group: OptGroupArgs,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<CountKind>,
        /// Run every group and kind of the desk-scale matrix.
        #[arg(long)]
        all_desk: bool,
        /// Largest group order enumerated.
        #[arg(long, env = "REALCLASS_CAP")]
        cap: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Published small-rank polynomials at q beside the engine's counts.
    Table13 {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Coefficients of the generating function for real classes of GL_n(q).
    Genfun {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 8)]
        terms: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// List class labels of GL_n(q) with their reality flags.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Largest number of labels produced.
        #[arg(long, default_value_t = realclass::labels::DEFAULT_LABEL_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
    /// Order of the central subgroup Y for SLQ.
    #[arg(long)]
    y: Option<u64>,
}

#[derive(Args, Debug)]
struct OptGroupArgs {
    #[arg(long, value_parser = parse_family, required_unless_present = "all_desk")]
    family: Option<Family>,
    #[arg(long, required_unless_present = "all_desk")]
    n: Option<u32>,
    #[arg(long, required_unless_present = "all_desk")]
    q: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    All,
    Real,
    #[value(name = "zeta_real")]
    ZetaReal,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<CountKind, String> {
    s.parse()
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    Budget = 3,
}

/// A failed command: its exit status and message.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Count { group, kind, budget, out } => {
            commands::count(group.family, group.n, group.q, group.y, kind, budget, out.format, &mut stdout)
        }
        Command::Verify { group, kind, all_desk, cap, out } => {
            let cap = cap.unwrap_or(realclass::oracle::DEFAULT_CAP);
            if all_desk {
                commands::verify_desk(cap, out.format, &mut stdout)
            } else {
                commands::verify(
                    group.family.unwrap(),
                    group.n.unwrap(),
                    group.q.unwrap(),
                    group.y,
                    kind,
                    cap,
                    out.format,
                    &mut stdout,
                )
            }
        }
        Command::Table13 { q, out } => commands::table13(q, out.format, &mut stdout),
        Command::Genfun { q, terms, out } => commands::genfun(q, terms, out.format, &mut stdout),
        Command::Enumerate { n, q, filter, budget, out } => {
            commands::enumerate(n, q, filter, budget, out.format, &mut stdout)
        }
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(f) => {
            eprintln!("realclass: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}
