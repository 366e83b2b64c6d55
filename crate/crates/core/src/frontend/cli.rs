use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::algebra::Field;
use crate::embedding::shortest_witness;
use crate::error::{Error, Result};
use crate::frontend::{equivalence, load_automaton, zero_test, BaseSet, Engine, EngineConfig};

/// Zero and equivalence tests for weighted automata over partially
/// commutative monoids.
#[derive(Parser, Debug)]
#[command(name = "pcwa", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Engine::Rand)]
    engine: Engine,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 20)]
    reps: usize,
    /// `rat` or `fp:P`; defaults to fp:2305843009213693951 for rand, rat otherwise.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Enumeration budget (oracle, witness) or hitting-set points (det).
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Base hitting set for the det engine.
    #[arg(long, global = true, value_enum, default_value_t = BaseSet::Power)]
    base: BaseSet,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the automaton's series is zero.
    Zero { file: PathBuf },
    /// Decide whether two automata over the same monoid are equivalent.
    Equiv { file_a: PathBuf, file_b: PathBuf },
    /// Print a shortest trace with nonzero coefficient.
    Witness { file: PathBuf },
    /// Print the normal form of a word over the file's monoid.
    NormalForm { file: PathBuf, word: String },
    /// Check the file, its cover and, if declared, determinism.
    Validate { file: PathBuf },
}

pub const EXIT_ZERO: i32 = 0;
pub const EXIT_NONZERO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::EngineCoverIncompatible(_) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_ZERO };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let field = cli.field.unwrap_or(match cli.engine {
        Engine::Rand => Field::default_prime(),
        Engine::Det | Engine::Oracle => Field::Rational,
    });
    let cfg =
        EngineConfig { engine: cli.engine, seed: cli.seed, repetitions: cli.reps, budget: cli.budget, base: cli.base };
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    match &cli.command {
        Command::Zero { file } => {
            let l = load_automaton(file, field)?;
            let zero = zero_test(&l.automaton, &l.cover, &cfg)?;
            let verdict = if zero { "zero" } else { "nonzero" };
            writeln!(out, "RESULT {verdict} engine={} seed={}", cli.engine, cli.seed).map_err(io)?;
            Ok(if zero { EXIT_ZERO } else { EXIT_NONZERO })
        }
        Command::Equiv { file_a, file_b } => {
            let a = load_automaton(file_a, field)?;
            let b = load_automaton(file_b, field)?;
            if a.automaton.monoid() != b.automaton.monoid() {
                return Err(Error::MonoidMismatch);
            }
            let eq = equivalence(&a.automaton, &b.automaton, &a.cover, &cfg)?;
            let verdict = if eq { "equivalent" } else { "inequivalent" };
            writeln!(out, "RESULT {verdict} engine={} seed={}", cli.engine, cli.seed).map_err(io)?;
            Ok(if eq { EXIT_ZERO } else { EXIT_NONZERO })
        }
        Command::Witness { file } => {
            let field = cli.field.unwrap_or(Field::Rational);
            let l = load_automaton(file, field)?;
            let budget = cli.budget.unwrap_or(crate::automaton::DEFAULT_WORD_BUDGET);
            match shortest_witness(&l.automaton, &l.cover, budget)? {
                Some(w) => {
                    writeln!(out, "{}", l.automaton.monoid().render_word(&w)).map_err(io)?;
                    writeln!(out, "RESULT nonzero engine=oracle seed={}", cli.seed).map_err(io)?;
                    Ok(EXIT_NONZERO)
                }
                None => {
                    writeln!(out, "RESULT zero engine=oracle seed={}", cli.seed).map_err(io)?;
                    Ok(EXIT_ZERO)
                }
            }
        }
        Command::NormalForm { file, word } => {
            let l = load_automaton(file, field)?;
            let m = l.automaton.monoid();
            let nf = m.normal_form(&m.parse_word(word)?)?;
            writeln!(out, "{}", m.render_word(&nf)).map_err(io)?;
            Ok(EXIT_ZERO)
        }
        Command::Validate { file } => {
            let l = load_automaton(file, field)?;
            l.cover.ensure_valid(l.automaton.monoid())?;
            let deterministic = l.multitape.as_ref().map(|m| m.check_determinism());
            let mut line = format!(
                "VALID states={} letters={} cliques={} stars={}",
                l.automaton.states(),
                l.automaton.monoid().len(),
                l.cover.cliques.len(),
                l.cover.stars.len()
            );
            if let Some(d) = deterministic {
                line.push_str(&format!(" deterministic={d}"));
            }
            writeln!(out, "{line}").map_err(io)?;
            Ok(EXIT_ZERO)
        }
    }
}
