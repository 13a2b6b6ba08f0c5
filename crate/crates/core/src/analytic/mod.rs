//! Closed-form laws and exact oracles.

mod laws;
mod mixture;
mod oracle;

pub use laws::{
    envelope_threshold, exp_law, gp_envelope, kac_expectation, lemma0_bound, lemma0_sharp_bound,
};
pub use mixture::{lemma0_mixture, lemma0_mixture_on_grid, MIXTURE_TRUNCATION};
pub use oracle::{
    markov_return_law, markov_return_oracle, MarkovOracleSpec, ReturnLaw, ORACLE_TAIL_LIMIT,
};
