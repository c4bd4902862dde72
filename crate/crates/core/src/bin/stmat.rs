use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use stmat::report::{render_text, run, Command, Options};
use stmat::{Error, Matrix};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Analyze,
    Power,
    Charpoly,
    Eigen,
    Jordan,
    Stability,
    Ghost,
    Cores,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Analyze => Command::Analyze,
            Cmd::Power => Command::Power,
            Cmd::Charpoly => Command::Charpoly,
            Cmd::Eigen => Command::Eigen,
            Cmd::Jordan => Command::Jordan,
            Cmd::Stability => Command::Stability,
            Cmd::Ghost => Command::Ghost,
            Cmd::Cores => Command::Cores,
        }
    }
}

/// Supertropical matrix analyzer.
#[derive(Debug, Parser)]
#[command(name = "stmat", version)]
struct Cli {
    command: Cmd,
    /// JSON file `{"n": N, "entries": [[...]]}`.
    file: PathBuf,
    /// Exponent for `power`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: Option<u64>,
    /// Bound for power searches (stability, ghost index, semisimplicity).
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    m_max: u64,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: u64,
    /// Size cap for enumeration (also `STMAT_MAX_N`).
    #[arg(long, env = "STMAT_MAX_N", default_value_t = stmat::matrix::DEFAULT_MAX_N as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,
    #[arg(long)]
    json: bool,
}

fn load(path: &PathBuf) -> Result<Matrix, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Matrix::from_json(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { m: cli.m.map(|m| m as usize), m_max: cli.m_max as usize, k_max: cli.k_max as usize, max_n: cli.max_n as usize };
    let out = load(&cli.file).and_then(|a| run(cli.command.into(), &a, &opts));
    match out {
        Ok(v) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                print!("{}", render_text(&v));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
