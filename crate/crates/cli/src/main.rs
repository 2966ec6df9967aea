//! `upnum`: build, check and inspect digit automata for sets of numbers.
//!
//! Exit status: 0 on success or an ultimately periodic verdict, 1 on a
//! negative verdict or a failed fuzz run, 2 on usage, input or I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use upnum_core::builders::{build_threshold, divisor_tree};
use upnum_core::fuzz::run_fuzz;
use upnum_core::{
    accepted_bitmap, build_pascal, build_up_automaton, is_up, is_up_minimal, minimize, parse_dfa,
    to_dot, write_dfa, Dfa, PascalParams, UpSet,
};

#[derive(Parser)]
#[command(name = "upnum", version, about = "Digit automata for ultimately periodic sets of numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an automaton and write it in the v1 text format.
    Build(BuildArgs),
    /// Decide whether an automaton accepts an ultimately periodic set.
    Check {
        input: PathBuf,
        /// Skip minimization and trust that the input is minimal.
        #[arg(long)]
        assume_minimal: bool,
        /// Print a readable report with timings instead of the line format.
        #[arg(long)]
        human: bool,
    },
    /// Minimize and renumber canonically.
    Minimize {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List the accepted numbers below a limit.
    Enumerate {
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        limit: u64,
        /// Print the run-length bitmap instead of the numbers.
        #[arg(long)]
        bitmap: bool,
    },
    /// Export to Graphviz DOT.
    Dot {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Seeded random round-trip and mutation testing.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Directory receiving one file per counterexample.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Pascal automaton for `n mod p ∈ R` (p coprime with the base).
    Pascal,
    /// `{n ≥ m : n mod p ∈ R}`, plus optional finite members below m.
    Upset,
    /// `{n ≥ m}`.
    Threshold,
    /// Tree deciding `n mod d ∈ R` for d dividing a power of the base.
    Divisor,
}

#[derive(Args)]
struct BuildArgs {
    kind: Kind,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=36))]
    base: u32,
    #[arg(long)]
    period: Option<u64>,
    /// Comma-separated residues.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    residues: Vec<u64>,
    #[arg(long, alias = "min")]
    threshold: Option<u64>,
    /// Comma-separated members below the threshold (upset only).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    finite: Vec<u64>,
    /// Modulus of a divisor tree.
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long)]
    minimize: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

type CliResult<T> = Result<T, String>;

fn required(value: Option<u64>, flag: &str, kind: &str) -> CliResult<u64> {
    value.ok_or_else(|| format!("`build {kind}` needs --{flag}"))
}

fn build(args: &BuildArgs) -> CliResult<Dfa> {
    let base = args.base;
    let dfa = match args.kind {
        Kind::Pascal => {
            let p = required(args.period, "period", "pascal")?;
            PascalParams::new(p, &args.residues, base)
                .and_then(|params| build_pascal(&params, base))
        }
        Kind::Upset => {
            let p = required(args.period, "period", "upset")?;
            UpSet::new(p, &args.residues, args.threshold.unwrap_or(0))
                .and_then(|s| s.with_finite(&args.finite))
                .and_then(|s| build_up_automaton(&s, base))
        }
        Kind::Threshold => build_threshold(required(args.threshold, "threshold", "threshold")?, base),
        Kind::Divisor => {
            let d = required(args.modulus, "modulus", "divisor")?;
            divisor_tree(d, base, &args.residues)
        }
    }
    .map_err(|e| e.to_string())?;
    Ok(if args.minimize { minimize(&dfa) } else { dfa })
}

fn read_dfa(path: &Path) -> CliResult<Dfa> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_dfa(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Build(args) => {
            let dfa = build(&args)?;
            emit(&write_dfa(&dfa), args.out.as_deref())?;
        }
        Command::Check {
            input,
            assume_minimal,
            human,
        } => {
            let dfa = read_dfa(&input)?;
            let report = if assume_minimal {
                is_up_minimal(&dfa)
            } else {
                is_up(&dfa)
            };
            let text = if human { report.human() } else { report.machine() };
            emit(&text, None)?;
            if !report.verdict {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Minimize { input, out } => {
            let dfa = read_dfa(&input)?;
            emit(&write_dfa(&minimize(&dfa)), out.as_deref())?;
        }
        Command::Enumerate {
            input,
            limit,
            bitmap,
        } => {
            let dfa = read_dfa(&input)?;
            let len = usize::try_from(limit).map_err(|_| "limit too large".to_string())?;
            let bits = accepted_bitmap(&dfa, len);
            let line = if bitmap {
                bits.to_string()
            } else {
                let ones: Vec<String> = bits.ones().iter().map(u64::to_string).collect();
                ones.join(" ")
            };
            emit(&format!("{line}\n"), None)?;
        }
        Command::Dot { input, out } => {
            let dfa = read_dfa(&input)?;
            emit(&to_dot(&dfa), out.as_deref())?;
        }
        Command::Fuzz {
            seed,
            count,
            out_dir,
        } => {
            let summary = run_fuzz(seed, count);
            if let Some(dir) = &out_dir {
                if !summary.ok() {
                    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
                }
                for c in &summary.counterexamples {
                    let path = dir.join(format!("case{}-{}.dfa", c.case, c.property.name()));
                    let text = format!("# {}\n{}", c.detail, write_dfa(&c.dfa));
                    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                }
            }
            for c in &summary.counterexamples {
                eprintln!("case {} ({}): {}", c.case, c.property.name(), c.detail);
            }
            if summary.ok() {
                println!("{} ok", summary.passed);
            } else {
                println!(
                    "{} ok, {} failed",
                    summary.passed,
                    summary.cases - summary.passed
                );
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("upnum: {message}");
            ExitCode::from(2)
        }
    }
}
