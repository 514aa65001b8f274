use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use froblab::{execute, to_json, to_text, Command, Options};

#[derive(Parser)]
#[command(
    name = "froblab",
    version,
    about = "Frobenius and F-singularity computations over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis of the relations
    Gb(Common),
    /// Krull dimension of the quotient
    Dim(Common),
    /// Ideal membership of --poly in the relations or in --ideal
    Membership(Common),
    /// 2x2 minors of the matrix
    Minors(Common),
    /// Fedder's F-purity test for R and, if a canonical ideal is given, R/I
    Fpure(Common),
    /// Frobenius-closure test of the ideal generated by the sop
    Fclosure(Common),
    /// Injectivity criterion for the pseudocanonical cover
    CoverCheck(Common),
    /// Full hypothesis check and chained verdicts for FH-finiteness
    Pipeline(Common),
    /// Seeded search for a system of parameters
    FindSop(Common),
}

#[derive(Args)]
struct Common {
    /// Ring description file
    file: String,
    /// Largest Frobenius exponent searched
    #[arg(long = "emax")]
    e_max: Option<u32>,
    /// Twist polynomial f of the cover (default 1)
    #[arg(long)]
    f: Option<String>,
    /// Comma-separated system of parameters
    #[arg(long)]
    sop: Option<String>,
    /// Polynomial for `membership`
    #[arg(long)]
    poly: Option<String>,
    /// Comma-separated ideal for `membership` (default: the relations)
    #[arg(long)]
    ideal: Option<String>,
    /// Use lex order in `gb`
    #[arg(long)]
    lex: bool,
    /// Seed for `find-sop`
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidates tried by `find-sop`
    #[arg(long, default_value_t = froblab::search::DEFAULT_ATTEMPTS)]
    attempts: usize,
    /// Emit JSON (default)
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit indented text instead of JSON
    #[arg(long)]
    text: bool,
    /// Include wall-clock time in the report (breaks byte-stability)
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Gb(a) => (Command::Gb, a),
        Cmd::Dim(a) => (Command::Dim, a),
        Cmd::Membership(a) => (Command::Membership, a),
        Cmd::Minors(a) => (Command::Minors, a),
        Cmd::Fpure(a) => (Command::Fpure, a),
        Cmd::Fclosure(a) => (Command::Fclosure, a),
        Cmd::CoverCheck(a) => (Command::CoverCheck, a),
        Cmd::Pipeline(a) => (Command::Pipeline, a),
        Cmd::FindSop(a) => (Command::FindSop, a),
    };
    let opts = Options {
        e_max: args.e_max,
        f: args.f,
        sop: args.sop,
        poly: args.poly,
        ideal: args.ideal,
        lex: args.lex,
        seed: args.seed,
        attempts: args.attempts,
        timing: args.timing,
    };
    let report = execute(command, &args.file, &opts);
    if let Some(err) = &report.error {
        eprintln!("froblab: {}: {}", err.code, err.message);
    }
    let out = if args.text {
        to_text(&report)
    } else {
        to_json(&report)
    };
    print!("{out}");
    ExitCode::from(report.exit_code as u8)
}
