//! Grover search with collective phase flips in the oracle queries.
//!
//! The register dynamics stays inside the two-dimensional span of the
//! normalized unmarked and marked superpositions, so each noisy Grover
//! iteration acts on an effective two-component Bloch vector. This crate
//! provides three independent ways of computing that dynamics:
//!
//! * [`channels`]: the step-by-step recursion `r(t+1) = M r(t)`,
//! * [`closed_form`]: the diagonalized solution `M^t = X D^t X^-1`,
//! * [`fullstate`]: a brute-force N×N density-matrix simulation,
//!
//! together with the problem parameters ([`model`]) and the coherence and
//! entropy layer ([`coherence`]).

pub mod channels;
pub mod closed_form;
pub mod coherence;
mod error;
pub mod fullstate;
pub mod model;

pub use channels::{
    diffusion_map, iteration_matrix, oracle_map, phase_damping_map, singular_values, step,
    trajectory, BlochVec2, IterationMatrix, TrajectoryRecord,
};
pub use closed_form::ClosedFormSolution;
pub use coherence::{
    asymptotic_coherence, coherence_full, coherence_rel_entropy, relative_entropy, state_spectrum,
    tradeoff_bounds, von_neumann_entropy, CoherenceRecord, CoherenceValues,
};
pub use error::{Error, Result};
pub use fullstate::{DensityMatrix, MarkedSet};
pub use model::{
    convert_noise, derive_search_space, eta_min, spectral_data, NoiseConversion, NoiseLevel,
    SearchSpace, SpectralCase, SpectralData, DEGENERATE_TOL,
};
