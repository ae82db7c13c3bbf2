//! Diagonalized solution of the Bloch-plane recursion.
//!
//! For distinct eigenvalues `M = X D X^-1` and `M^t = X D^t X^-1`, which in
//! the oscillatory regime reads
//!
//! ```text
//! M^t = eta^{t/2} / B * [[B cos(φt) - A- sin(φt),      sin(φt) sin2θ        ],
//!                        [-eta sin(φt) sin2θ,          B cos(φt) + A- sin(φt)]]
//! ```
//!
//! and in the overdamped regime the same with `cosh`/`sinh` of the rapidity.
//! When `cos 2θ < 0` the overdamped eigenvalues are both negative and the
//! matrix picks up the sign `s = sign(A+)`: the diagonal `B cosh` terms become
//! `s B cosh` and the whole matrix is multiplied by `s^(t-1)`.

use crate::channels::{BlochVec2, IterationMatrix};
use crate::model::{spectral_data_with_tol, NoiseLevel, SearchSpace, SpectralCase, SpectralData};
use crate::{Error, Result, DEGENERATE_TOL};

/// Closed-form solution for a non-degenerate `(space, noise)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormSolution {
    spectral: SpectralData,
    space: SearchSpace,
    noise: NoiseLevel,
}

impl ClosedFormSolution {
    /// Fails with [`Error::Degenerate`] when `eta = A+^2` within [`DEGENERATE_TOL`];
    /// callers fall back to the recursion engine there.
    pub fn new(space: &SearchSpace, noise: &NoiseLevel) -> Result<Self> {
        Self::with_tolerance(space, noise, DEGENERATE_TOL)
    }

    pub fn with_tolerance(space: &SearchSpace, noise: &NoiseLevel, tol: f64) -> Result<Self> {
        let spectral = spectral_data_with_tol(space, noise, tol);
        if spectral.is_degenerate() {
            return Err(Error::Degenerate { tol });
        }
        Ok(Self {
            spectral,
            space: *space,
            noise: *noise,
        })
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn noise(&self) -> &NoiseLevel {
        &self.noise
    }

    /// `M^t` without repeated multiplication.
    pub fn matrix_power(&self, t: u32) -> IterationMatrix {
        if t == 0 {
            return IterationMatrix::IDENTITY;
        }
        let eta = self.noise.eta();
        let s2 = self.space.sin_2theta();
        let SpectralData { a_minus, b, .. } = self.spectral;
        let tf = t as f64;
        let half_log_eta = 0.5 * eta.ln();

        // (even, odd) carry eta^{t/2} times (cos, sin) or (cosh, sinh) of the
        // accumulated phase; `sign` is s^(t-1) and `diag_scale` is s.
        let (even, odd, diag_scale, sign) = match self.spectral.case {
            SpectralCase::Oscillatory { angle } => {
                let envelope = (tf * half_log_eta).exp();
                let phase = angle * tf;
                (envelope * phase.cos(), envelope * phase.sin(), 1.0, 1.0)
            }
            SpectralCase::Overdamped { rapidity } => {
                // |lambda|^t computed in log space so that cosh/sinh never overflow
                let grow = (tf * (half_log_eta + rapidity)).exp();
                let shrink = (tf * (half_log_eta - rapidity)).exp();
                let s = self.spectral.a_plus.signum();
                let sign = if s < 0.0 && t.is_multiple_of(2) {
                    -1.0
                } else {
                    1.0
                };
                (0.5 * (grow + shrink), 0.5 * (grow - shrink), s, sign)
            }
            SpectralCase::Degenerate => unreachable!("rejected at construction"),
        };

        let k = sign / b;
        IterationMatrix::new([
            [k * (diag_scale * b * even - a_minus * odd), k * odd * s2],
            [
                -k * eta * odd * s2,
                k * (diag_scale * b * even + a_minus * odd),
            ],
        ])
    }

    /// `r(t) = M^t (sin θ, cos θ)`.
    pub fn bloch(&self, t: u32) -> BlochVec2 {
        self.matrix_power(t).apply(BlochVec2::initial(&self.space))
    }

    /// `P_suc(t) = (1 - r_z(t)) / 2`.
    pub fn success_probability(&self, t: u32) -> f64 {
        self.bloch(t).success_probability()
    }
}
