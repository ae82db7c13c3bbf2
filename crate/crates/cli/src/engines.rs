//! The three interchangeable ways of producing a trajectory.

use noisy_grover::closed_form::ClosedFormSolution;
use noisy_grover::coherence::{coherence_full, coherence_rel_entropy, CoherenceValues};
use noisy_grover::fullstate::{
    effective_bloch, init_uniform, noisy_grover_step, success_probability_full, MarkedSet,
};
use noisy_grover::{trajectory, BlochVec2, NoiseLevel, SearchSpace, DEGENERATE_TOL};

/// State of one engine at step `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: u32,
    pub bloch: BlochVec2,
    pub p_suc: f64,
    pub coherence: CoherenceValues,
}

impl Sample {
    fn from_bloch(t: u32, bloch: BlochVec2, space: &SearchSpace) -> Self {
        Self {
            t,
            bloch,
            p_suc: bloch.success_probability(),
            coherence: coherence_rel_entropy(bloch, space),
        }
    }
}

pub trait Engine {
    fn name(&self) -> &str;

    /// Samples for `t = 0..=steps`.
    fn run(
        &self,
        space: &SearchSpace,
        noise: &NoiseLevel,
        steps: u32,
    ) -> noisy_grover::Result<Vec<Sample>>;
}

#[derive(Debug, Clone, Copy)]
pub struct ClosedFormEngine {
    pub degenerate_tol: f64,
}

impl Default for ClosedFormEngine {
    fn default() -> Self {
        Self {
            degenerate_tol: DEGENERATE_TOL,
        }
    }
}

impl Engine for ClosedFormEngine {
    fn name(&self) -> &str {
        "closed"
    }

    fn run(
        &self,
        space: &SearchSpace,
        noise: &NoiseLevel,
        steps: u32,
    ) -> noisy_grover::Result<Vec<Sample>> {
        let sol = ClosedFormSolution::with_tolerance(space, noise, self.degenerate_tol)?;
        Ok((0..=steps)
            .map(|t| Sample::from_bloch(t, sol.bloch(t), space))
            .collect())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RecursionEngine;

impl Engine for RecursionEngine {
    fn name(&self) -> &str {
        "recursion"
    }

    fn run(
        &self,
        space: &SearchSpace,
        noise: &NoiseLevel,
        steps: u32,
    ) -> noisy_grover::Result<Vec<Sample>> {
        Ok(trajectory(space, noise, steps)
            .into_iter()
            .map(|rec| Sample::from_bloch(rec.step, rec.bloch, space))
            .collect())
    }
}

/// Dense density-matrix simulation with the first `M` indices marked.
///
/// With `exact_entropy` the entropies come from an eigendecomposition of the
/// full matrix; otherwise from its effective Bloch vector.
#[derive(Debug, Clone, Copy)]
pub struct FullStateEngine {
    pub exact_entropy: bool,
}

impl Default for FullStateEngine {
    fn default() -> Self {
        Self {
            exact_entropy: true,
        }
    }
}

impl Engine for FullStateEngine {
    fn name(&self) -> &str {
        "fullstate"
    }

    fn run(
        &self,
        space: &SearchSpace,
        noise: &NoiseLevel,
        steps: u32,
    ) -> noisy_grover::Result<Vec<Sample>> {
        let marked = MarkedSet::leading(space);
        let mut rho = init_uniform(space);
        let mut out = Vec::with_capacity(steps as usize + 1);
        for t in 0..=steps {
            if t > 0 {
                rho = noisy_grover_step(&rho, space, &marked, noise);
            }
            let bloch = effective_bloch(&rho, space, &marked)?.bloch;
            let coherence = if self.exact_entropy {
                coherence_full(&rho)?
            } else {
                coherence_rel_entropy(bloch, space)
            };
            out.push(Sample {
                t,
                bloch,
                p_suc: success_probability_full(&rho, &marked),
                coherence,
            });
        }
        Ok(out)
    }
}
