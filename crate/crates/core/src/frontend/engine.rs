use std::fmt;

use crate::automaton::{WeightedAutomaton, DEFAULT_WORD_BUDGET};
use crate::embedding::{witness_length_bound, zero_test_reduction};
use crate::error::{Error, Result};
use crate::pit::{
    deterministic_zero_test, randomized_zero_test, BaseHittingSetGenerator, BruteForceGrid, PowerGrid,
    DEFAULT_POINT_BUDGET,
};
use crate::trace::Cover;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Engine {
    /// Random matrix substitutions, one-sided error.
    Rand,
    /// Product hitting set; clique covers only.
    Det,
    /// Brute-force coefficient enumeration up to the witness bound.
    Oracle,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Rand => "rand",
            Engine::Det => "det",
            Engine::Oracle => "oracle",
        })
    }
}

/// Base hitting set used by the deterministic engine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum BaseSet {
    /// Superdiagonal power substitutions, `n^d` points.
    #[default]
    Power,
    /// All matrices over `{0..d}`, `(d+1)^((d+1)^2 n)` points.
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub engine: Engine,
    pub seed: u64,
    pub repetitions: usize,
    /// Words for the oracle, hitting-set points for the deterministic
    /// engine; `None` picks the default for the engine.
    pub budget: Option<u128>,
    pub base: BaseSet,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { engine: Engine::Rand, seed: 0, repetitions: 20, budget: None, base: BaseSet::Power }
    }
}

impl EngineConfig {
    pub fn with_engine(engine: Engine) -> Self {
        EngineConfig { engine, ..Default::default() }
    }
}

fn base_generator(cfg: &EngineConfig, budget: u128) -> Box<dyn BaseHittingSetGenerator> {
    match cfg.base {
        BaseSet::Power => Box::new(PowerGrid { budget }),
        BaseSet::Brute => Box::new(BruteForceGrid { budget }),
    }
}

/// Whether the series of `a` is zero, decided by the configured engine.
pub fn zero_test(a: &WeightedAutomaton, cover: &Cover, cfg: &EngineConfig) -> Result<bool> {
    cover.ensure_valid(a.monoid())?;
    match cfg.engine {
        Engine::Rand => {
            let r = zero_test_reduction(a, cover)?;
            randomized_zero_test(&r.abps, cover, cfg.seed, cfg.repetitions)
        }
        Engine::Det => {
            if !cover.all_cliques() {
                return Err(Error::EngineCoverIncompatible(format!(
                    "the deterministic engine needs a clique cover, this one has {} star(s)",
                    cover.stars.len()
                )));
            }
            let budget = cfg.budget.unwrap_or(DEFAULT_POINT_BUDGET);
            let r = zero_test_reduction(a, cover)?;
            deterministic_zero_test(&r.abps, base_generator(cfg, budget).as_ref(), budget)
        }
        Engine::Oracle => {
            let bound = witness_length_bound(a, cover)?;
            a.truncated_zero_oracle(bound, cfg.budget.unwrap_or(DEFAULT_WORD_BUDGET))
        }
    }
}

/// Whether `a` and `b` define the same series, by a zero test on `a - b`.
pub fn equivalence(a: &WeightedAutomaton, b: &WeightedAutomaton, cover: &Cover, cfg: &EngineConfig) -> Result<bool> {
    zero_test(&a.difference(b)?, cover, cfg)
}
