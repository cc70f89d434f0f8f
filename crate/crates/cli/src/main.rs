//! `bifix`: command-line front end for the finite bifix-decoding toolkit.
//!
//! Every subcommand prints a plain-text report on stdout and, with
//! `--json <path>`, writes the same report as JSON. Exit codes: 0 on
//! success, 2 on invalid input, 3 when a resource limit is hit.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use bifix::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "bifix", version, about = "Substitution subshifts, bifix codes and charged decodings")]
struct Cli {
    #[command(flatten)]
    bounds: Bounds,
    #[command(subcommand)]
    command: Command,
}

/// Bounds and flags shared by every subcommand; all are echoed in reports.
#[derive(Args, Debug, Clone)]
pub struct Bounds {
    /// Write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Length bound of the language window.
    #[arg(long = "L", global = true, value_name = "N", default_value_t = 40)]
    pub l: usize,
    /// Length bound of decoded windows.
    #[arg(long = "Lx", global = true, value_name = "N", default_value_t = 10)]
    pub lx: usize,
    /// Largest order for recurrence and extension-graph checks.
    #[arg(long = "k-max", global = true, value_name = "K", default_value_t = 8)]
    pub k_max: usize,
    /// Largest modulus for procyclic fingerprints and power codes.
    #[arg(long = "n-max", global = true, value_name = "N", default_value_t = 8)]
    pub n_max: usize,
    /// Treat the language as aperiodic without looking for a plateau.
    #[arg(long, global = true)]
    pub assert_aperiodic: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    /// Substitution rules, e.g. "a->ab;b->a".
    #[arg(long, value_name = "RULES")]
    pub rules: Option<String>,
    /// Substitution given as a JSON file.
    #[arg(long = "rules-json", value_name = "PATH")]
    pub rules_json: Option<PathBuf>,
    /// Factors of the periodic word ...uuu..., given u.
    #[arg(long, value_name = "WORD")]
    pub periodic: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SecondSourceArgs {
    /// Rules of the second substitution.
    #[arg(long, value_name = "RULES")]
    pub rules2: Option<String>,
    /// Second substitution given as a JSON file.
    #[arg(long = "rules-json2", value_name = "PATH")]
    pub rules_json2: Option<PathBuf>,
    /// Period word of the second language.
    #[arg(long, value_name = "WORD")]
    pub periodic2: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CodeArgs {
    /// A code: "A^n" or a comma-separated word list such as "aa,ab,ba".
    #[arg(long, value_name = "CODE")]
    pub code: Option<String>,
    /// Automaton of Z* as a JSON file.
    #[arg(long, value_name = "PATH")]
    pub dfa: Option<PathBuf>,
    /// Alphabet when no language is given, e.g. "ab".
    #[arg(long, value_name = "LETTERS")]
    pub alphabet: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural tests of a substitution and its language window.
    AnalyzeSubstitution {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// The factors of a language up to length L.
    Factors {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Code, prefix and suffix tests; completeness when a language is given.
    CheckCode {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        code: CodeArgs,
        /// Sample this many prefix codes inside the language (with --seed)
        /// and compare F-maximality with right F-completeness.
        #[arg(long, value_name = "COUNT", default_value_t = 0)]
        sample: usize,
    },
    /// Minimal automaton of X*, its transition monoid and Green's relations.
    Monoid {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Whether a group code is charged by the language.
    Charge {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Procyclic fingerprint d(n) for n up to n-max.
    Fingerprint {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Compare the fingerprints of two languages.
    Compare {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        second: SecondSourceArgs,
    },
    /// Decode the language by a finite code.
    Decode {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// The n-th higher power of the language.
    HigherPower {
        #[command(flatten)]
        source: SourceArgs,
        /// Block length.
        #[arg(long, value_name = "N")]
        n: usize,
    },
    /// Check charged decodings for recurrence on finite windows.
    VerifyTheorems {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        code: CodeArgs,
        /// Uniform-recurrence failures count only when Lx ≥ order + slack.
        #[arg(long, value_name = "N", default_value_t = 256)]
        slack: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, &cli.bounds) {
        Ok(report) => {
            print!("{}", report.text);
            if let Some(path) = &cli.bounds.json {
                let mut body = serde_json::to_string_pretty(&report.json).expect("serializable");
                body.push('\n');
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
