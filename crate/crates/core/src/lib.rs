//! Zero and equivalence testing for weighted automata over partially
//! commutative monoids.
//!
//! An automaton over a pc monoid is embedded into a partitioned monoid using
//! a cover of its non-commutation graph by cliques and stars, then reduced to
//! a family of algebraic branching programs over a tensor product of free
//! algebras. Those are tested either by random matrix substitutions or by a
//! deterministic product hitting set. Brute-force oracles are included for
//! small instances.
//!
//! ```
//! use std::sync::Arc;
//! use pcwa::{algebra::Field, automaton::WeightedAutomaton, trace::{Cover, PcMonoid}};
//!
//! let m = Arc::new(PcMonoid::new(&["x", "y"], &[("x", "y")]).unwrap());
//! let f = Field::Rational;
//! let (x, y) = (m.letter("x").unwrap(), m.letter("y").unwrap());
//! // x·y - y·x vanishes once x and y commute
//! let mut a = WeightedAutomaton::new(m.clone(), f, 4);
//! a.set_initial(0, f.one()).unwrap();
//! a.set_transition(0, x, 1, f.one()).unwrap();
//! a.set_transition(1, y, 3, f.one()).unwrap();
//! a.set_transition(0, y, 2, f.from_i64(-1)).unwrap();
//! a.set_transition(2, x, 3, f.one()).unwrap();
//! a.set_final(3, f.one()).unwrap();
//!
//! let cover = Cover::trivial(&m);
//! let reduction = pcwa::embedding::zero_test_reduction(&a, &cover).unwrap();
//! assert!(pcwa::pit::randomized_zero_test(&reduction.abps, &cover, 7, 10).unwrap());
//! ```

pub mod abp;
pub mod algebra;
pub mod automaton;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod frontend;
pub mod pit;
pub mod trace;

pub use error::{Error, Result};
