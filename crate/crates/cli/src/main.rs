use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use infsg::checks::{CheckOptions, Suite};
use infsg::commands::{cmd_check, cmd_eval, cmd_word, WordCommand};
use infsg::config::Config;
use infsg::report::Report;
use infsg::transfinite::HarnessConfig;
use infsg::Error;

/// Largest term depth the axiom harness accepts.
const MAX_DEPTH: usize = 8;

#[derive(Parser)]
#[command(
    name = "infsg",
    version,
    about = "Bicyclic monoid with transfinite products: evaluator and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a product expression such as "b^2 a * w(b*a)".
    Eval {
        expr: String,
        /// Show the value of every subterm.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Inspect a finite word over {a, b}.
    Word {
        #[arg(value_enum)]
        sub: WordSub,
        word: String,
        /// Show the deleted blocks as index intervals.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a check suite; exits 0 only when nothing fails.
    Check {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Master seed of the axiom harness.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random terms the axiom harness generates.
        #[arg(long)]
        cases: Option<usize>,
        /// Largest term depth, at most 8.
        #[arg(long)]
        depth: Option<usize>,
        /// Longest word the lemma and appendix suites enumerate.
        #[arg(long)]
        max_len: Option<usize>,
        /// Run one item of the lemma or appendix suite.
        #[arg(long)]
        item: Option<String>,
        /// Largest exponent in the blocks of the oracle suite.
        #[arg(long)]
        max_block: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WordSub {
    Reduce,
    Pseudonull,
    Degree,
    Families,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Axioms,
    Lemma,
    Appendix,
    Oracle,
}

fn run(cli: Cli) -> Result<(Report, bool), Error> {
    let config = Config::from_env()?;
    match cli.command {
        Command::Eval { expr, trace, json } => Ok((cmd_eval(&expr, trace)?, json)),
        Command::Word {
            sub,
            word,
            trace,
            json,
        } => {
            let sub = match sub {
                WordSub::Reduce => WordCommand::Reduce,
                WordSub::Pseudonull => WordCommand::Pseudonull,
                WordSub::Degree => WordCommand::Degree,
                WordSub::Families => WordCommand::Families,
            };
            Ok((cmd_word(sub, &word, trace, &config.limits())?, json))
        }
        Command::Check {
            suite,
            seed,
            cases,
            depth,
            max_len,
            item,
            max_block,
            json,
        } => {
            let suite = match suite {
                SuiteArg::Axioms => Suite::Axioms,
                SuiteArg::Lemma => Suite::Lemma,
                SuiteArg::Appendix => Suite::Appendix,
                SuiteArg::Oracle => Suite::Oracle,
            };
            let d = CheckOptions::default();
            let h = HarnessConfig::default();
            let opts = CheckOptions {
                max_len: max_len.or(config.max_len).unwrap_or(d.max_len),
                item,
                max_block: max_block.or(config.max_block).unwrap_or(d.max_block),
                max_affix: d.max_affix,
                harness: HarnessConfig {
                    seed: seed.or(config.seed).unwrap_or(h.seed),
                    cases: cases.or(config.cases).unwrap_or(h.cases),
                    depth: depth.or(config.depth).unwrap_or(h.depth),
                    max_arity: config.max_arity.unwrap_or(h.max_arity),
                },
            };
            if opts.harness.cases == 0 {
                return Err(Error::Config("--cases must be at least 1".into()));
            }
            if !(1..=MAX_DEPTH).contains(&opts.harness.depth) {
                return Err(Error::Config(format!(
                    "--depth must be between 1 and {MAX_DEPTH}"
                )));
            }
            Ok((cmd_check(suite, &opts)?, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, json)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
