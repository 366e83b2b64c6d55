//! Multi-tape automata, the automaton file format, engine dispatch and the
//! command line.

mod cli;
mod engine;
mod format;
mod multitape;

pub use cli::{run, EXIT_BUDGET, EXIT_NONZERO, EXIT_USAGE, EXIT_ZERO};
pub use engine::{equivalence, zero_test, BaseSet, Engine, EngineConfig};
pub use format::{load_automaton, parse_automaton, LoadedAutomaton};
pub use multitape::MultiTapeAutomaton;
