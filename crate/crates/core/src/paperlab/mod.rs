//! Scenario runner reproducing the worked examples, plus an independent
//! matrix model of `SL₃ ⋊ ⟨σ⟩` for cross-checking A₂ identities.

pub mod field;
pub mod matrix;
mod properties;
mod scenario;

pub use properties::{
    a2_oracle_suite, action_law_suite, ad_homomorphism_suite, confluence_suite, run_properties,
    PropertyReport,
};

pub use scenario::{
    cycle_notation, oracle_agrees, random_a2_word, run_all, run_scenario, Report, RunConfig,
    ScenarioError, Status, Step, DEFAULT_SEED, SCENARIOS,
};
