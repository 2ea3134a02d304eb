//! Parameter regimes, attractor measure and dimension, and finite grid
//! subgames solved by backward induction.

mod classify;
mod measure;
mod minimax;

pub use classify::{classify_parameters, Clause, Label, RegimeLabel};
pub use measure::{
    attractor_samples, box_counting_estimate, dimension_exact, dimension_formula, measure_upper_bound, MeasureBound,
    MAX_COVER_DEPTH,
};
pub use minimax::{
    evaluate_fixed_alice, truncated_minimax, truncated_minimax_with_budget, DiscreteGameSpec, MinimaxValue, Verdict,
    NODE_BUDGET,
};

use crate::game::VariantError;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error("search tree exceeds the budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Variant(#[from] VariantError),
}
