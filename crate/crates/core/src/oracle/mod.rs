//! Independent checks for certificates.
//!
//! The verifier recomputes every measure and level set from the raw inputs
//! and reads nothing from a certificate except its fields. Sampled checks
//! evaluate functions pointwise on a grid, without going through level sets.

mod brute;
mod grid;
mod mutation;
mod report;
mod verify;

pub use brute::brute_force_min_index;
pub use grid::Grid;
pub use mutation::{mutate, mutation_catalogue, mutation_suite, Mutation, MutationOutcome, MutationResult};
pub use report::{Check, Verdict, VerificationReport};
pub use verify::{verify, Inputs, VerifyOptions, DEFAULT_DEPTH};
