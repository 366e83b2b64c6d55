//! Loads an automaton file and runs all three engines on it.
//!
//! `cargo run --example zero_test_engines -- fixtures/star_example.json`

use std::path::PathBuf;

use pcwa::algebra::Field;
use pcwa::frontend::{load_automaton, zero_test, Engine, EngineConfig};

fn main() -> pcwa::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/star_example.json"));
    let loaded = load_automaton(&path, Field::Rational)?;
    if let Some(d) = &loaded.description {
        println!("{d}");
    }
    for engine in [Engine::Rand, Engine::Oracle, Engine::Det] {
        let cfg = EngineConfig { seed: 1, ..EngineConfig::with_engine(engine) };
        match zero_test(&loaded.automaton, &loaded.cover, &cfg) {
            Ok(z) => println!("{engine:>6}: {}", if z { "zero" } else { "nonzero" }),
            Err(e) => println!("{engine:>6}: {e}"),
        }
    }
    Ok(())
}
