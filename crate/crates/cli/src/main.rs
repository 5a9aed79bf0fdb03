use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use okutsu::io::{run_json, Command, Request, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Factors and refines every factor to the requested precision.
    Factor,
    /// Okutsu invariants and precision certificates of every factor.
    Invariants,
    /// Okutsu frames of every factor.
    Frame,
    /// Newton polygons of a given order.
    Polygon,
}

/// Factorization of monic separable polynomials over the p-adic integers.
///
/// Writes one JSON document to standard output. Exits with 0 on success,
/// 2 when the input is rejected and 1 when an internal check fails.
#[derive(Debug, Parser)]
#[command(name = "okutsu", version)]
struct Cli {
    command: Cmd,
    /// The prime p.
    #[arg(long = "prime", short = 'p')]
    prime: String,
    /// Target precision N (factor only).
    #[arg(long = "precision", short = 'N')]
    precision: Option<u32>,
    /// Polygon order (polygon only).
    #[arg(long = "order")]
    order: Option<usize>,
    /// Attach a verification report.
    #[arg(long = "verify")]
    verify: bool,
    /// Seed for representative lifts and residual factorization.
    #[arg(long = "seed", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// The polynomial, e.g. "x^4 + 12x^2 + 27".
    poly: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Factor => Command::Factor,
        Cmd::Invariants => Command::Invariants,
        Cmd::Frame => Command::Frame,
        Cmd::Polygon => Command::Polygon,
    };
    let req = Request {
        command,
        poly: cli.poly,
        prime: cli.prime,
        precision: cli.precision,
        order: cli.order,
        verify: cli.verify,
        seed: cli.seed,
    };
    let (json, code) = run_json(&req);
    println!("{json}");
    if code != 0 {
        eprintln!("okutsu: request failed with status {code}");
    }
    ExitCode::from(code as u8)
}
