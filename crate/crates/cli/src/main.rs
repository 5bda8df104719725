use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use heiscurve::braid::burau_report;
use heiscurve::characters::character_table;
use heiscurve::report::{report, verify, Caps, Suite};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "heiscurve", version, about = "Exact computations for the Heisenberg curve")]
struct Cli {
    /// Largest n for Schreier systems and integral Smith forms.
    #[arg(long, global = true, env = "HEISCURVE_MAX_SNF_N", default_value_t = 5)]
    max_snf_n: u32,
    /// Largest n for character tables and block ranks.
    #[arg(long, global = true, env = "HEISCURVE_MAX_BLOCK_N", default_value_t = 8)]
    max_block_n: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, ranks and the multiplicity table for one n.
    Report {
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        parallel: bool,
    },
    /// Run verification suites; exit 1 if any check fails.
    Verify {
        n: u32,
        /// all, words, schreier, characters, alexander, braid or geometry.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Character table of H_n.
    Chartable {
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Burau matrices and the braid-relation verdicts, as JSON.
    Burau,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn failure(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn check_n(n: u32, max: u32) -> Result<(), String> {
    if n < 2 || n > max {
        Err(format!("n = {n} is outside the supported range 2..={max}"))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps {
        max_snf_n: cli.max_snf_n,
        max_block_n: cli.max_block_n,
    };
    match cli.command {
        Command::Report { n, format, parallel } => {
            if let Err(e) = check_n(n, caps.max_block_n) {
                return usage(e);
            }
            let r = match report(n, &caps, parallel) {
                Ok(r) => r,
                Err(e) => return failure(e),
            };
            match format {
                Format::Json => println!("{}", json(&r)),
                Format::Text => print!("{r}"),
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                failure("some report checks failed")
            }
        }
        Command::Verify { n, suite, parallel, format } => {
            if let Err(e) = check_n(n, caps.max_block_n) {
                return usage(e);
            }
            let suites = match Suite::parse_list(&suite) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let r = match verify(n, &suites, &caps, parallel) {
                Ok(r) => r,
                Err(e) => return failure(e),
            };
            match format {
                Format::Json => println!("{}", json(&r)),
                Format::Text => println!("{r}"),
            }
            if r.passed() {
                return ExitCode::SUCCESS;
            }
            for c in r.failures() {
                eprintln!("failed: {} / {}: {}", c.suite, c.name, c.detail);
            }
            ExitCode::from(1)
        }
        Command::Chartable { n, format } => {
            if let Err(e) = check_n(n, caps.max_block_n) {
                return usage(e);
            }
            let t = character_table(n);
            match format {
                Format::Json => println!("{}", json(&t)),
                Format::Text => print!("{t}"),
            }
            ExitCode::SUCCESS
        }
        Command::Burau => match burau_report() {
            Ok(r) => {
                println!("{}", json(&r));
                ExitCode::SUCCESS
            }
            Err(e) => failure(e),
        },
    }
}
