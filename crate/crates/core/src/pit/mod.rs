//! Identity tests for ABPs: random matrix evaluations for clique and star
//! components, and the deterministic product hitting set.

mod hitting;
mod randomized;

pub use crate::abp::{ComponentEvaluation, Evaluation};
pub use hitting::{
    bootstrap_for_letters, bootstrap_hitting_set, bootstrap_point_count, bootstrap_size_parameter,
    deterministic_zero_test, vanishes_on, BaseHittingSetGenerator, BruteForceGrid, HittingSet, PowerGrid,
    DEFAULT_POINT_BUDGET,
};
pub use randomized::{
    clique_dimension, clique_evaluation, random_evaluation, randomized_zero_test, sample_set_size, star_evaluation,
    tensor_combine,
};
