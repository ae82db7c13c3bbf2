//! Effective two-dimensional channel maps on the `(r_x, r_z)` Bloch plane
//! spanned by `|w>` (unmarked superposition) and `|m>` (marked superposition).
//!
//! `r_y` starts at zero and every map below sends it to a multiple of itself,
//! so it is not stored.

use crate::model::{NoiseLevel, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVec2 {
    pub r_x: f64,
    pub r_z: f64,
}

impl BlochVec2 {
    pub const ORIGIN: BlochVec2 = BlochVec2 { r_x: 0.0, r_z: 0.0 };

    pub fn new(r_x: f64, r_z: f64) -> Self {
        Self { r_x, r_z }
    }

    /// Uniform superposition: `(sin theta, cos theta)`.
    pub fn initial(space: &SearchSpace) -> Self {
        Self::new(space.sin_theta(), space.cos_theta())
    }

    pub fn norm(&self) -> f64 {
        self.r_x.hypot(self.r_z)
    }

    /// `P_suc = <m|rho|m> = (1 - r_z) / 2`, clamped to `[0, 1]`.
    pub fn success_probability(&self) -> f64 {
        (0.5 * (1.0 - self.r_z)).clamp(0.0, 1.0)
    }

    pub fn is_physical(&self) -> bool {
        self.r_x * self.r_x + self.r_z * self.r_z <= 1.0 + 1e-12
    }
}

/// Phase damping across the marked/unmarked split: `r_x` shrinks by `sqrt(eta)`.
pub fn phase_damping_map(v: BlochVec2, noise: &NoiseLevel) -> BlochVec2 {
    BlochVec2::new(noise.coherence_factor() * v.r_x, v.r_z)
}

/// Conjugation by the oracle, `diag(-1, +1)` on the Bloch plane.
pub fn oracle_map(v: BlochVec2) -> BlochVec2 {
    BlochVec2::new(-v.r_x, v.r_z)
}

/// Conjugation by the inversion about the mean; an orthogonal reflection.
pub fn diffusion_map(v: BlochVec2, space: &SearchSpace) -> BlochVec2 {
    reflect(v, space.cos_2theta(), space.sin_2theta())
}

fn reflect(v: BlochVec2, c2: f64, s2: f64) -> BlochVec2 {
    BlochVec2::new(-c2 * v.r_x + s2 * v.r_z, s2 * v.r_x + c2 * v.r_z)
}

/// Real 2×2 matrix acting on `(r_x, r_z)` columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationMatrix {
    pub entries: [[f64; 2]; 2],
}

impl IterationMatrix {
    pub const IDENTITY: IterationMatrix = IterationMatrix {
        entries: [[1.0, 0.0], [0.0, 1.0]],
    };

    pub fn new(entries: [[f64; 2]; 2]) -> Self {
        Self { entries }
    }

    fn diag(x: f64, z: f64) -> Self {
        Self::new([[x, 0.0], [0.0, z]])
    }

    pub fn apply(&self, v: BlochVec2) -> BlochVec2 {
        let [[a, b], [c, d]] = self.entries;
        BlochVec2::new(a * v.r_x + b * v.r_z, c * v.r_x + d * v.r_z)
    }

    pub fn mul(&self, rhs: &IterationMatrix) -> IterationMatrix {
        let l = &self.entries;
        let r = &rhs.entries;
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = l[i][0] * r[0][j] + l[i][1] * r[1][j];
            }
        }
        IterationMatrix::new(out)
    }

    pub fn determinant(&self) -> f64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &IterationMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// One noisy Grover iteration on the Bloch plane:
/// diffusion ∘ damping ∘ oracle ∘ damping, composed as matrices.
///
/// Equals `[[eta cos2θ, sin2θ], [-eta sin2θ, cos2θ]]`.
pub fn iteration_matrix(space: &SearchSpace, noise: &NoiseLevel) -> IterationMatrix {
    let (c2, s2) = (space.cos_2theta(), space.sin_2theta());
    let damping = IterationMatrix::diag(noise.coherence_factor(), 1.0);
    let oracle = IterationMatrix::diag(-1.0, 1.0);
    let diffusion = IterationMatrix::new([[-c2, s2], [s2, c2]]);
    diffusion.mul(&damping).mul(&oracle).mul(&damping)
}

pub fn step(v: BlochVec2, m: &IterationMatrix) -> BlochVec2 {
    m.apply(v)
}

/// Singular values `(s_max, s_min)` from the eigenvalues of `MᵀM`.
pub fn singular_values(m: &IterationMatrix) -> (f64, f64) {
    let frob2: f64 = m.entries.iter().flatten().map(|x| x * x).sum();
    let det = m.determinant().abs();
    let disc = (frob2 * frob2 - 4.0 * det * det).max(0.0).sqrt();
    let s_max = (0.5 * (frob2 + disc)).sqrt();
    let s_min = if s_max > 0.0 { det / s_max } else { 0.0 };
    (s_max, s_min)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub step: u32,
    pub bloch: BlochVec2,
    pub p_suc: f64,
    pub bloch_norm: f64,
}

impl TrajectoryRecord {
    pub fn new(step: u32, bloch: BlochVec2) -> Self {
        Self {
            step,
            bloch,
            p_suc: bloch.success_probability(),
            bloch_norm: bloch.norm(),
        }
    }
}

/// Records for `t = 0..=steps`, starting from the uniform superposition.
pub fn trajectory(space: &SearchSpace, noise: &NoiseLevel, steps: u32) -> Vec<TrajectoryRecord> {
    let m = iteration_matrix(space, noise);
    let mut v = BlochVec2::initial(space);
    let mut out = Vec::with_capacity(steps as usize + 1);
    out.push(TrajectoryRecord::new(0, v));
    for t in 1..=steps {
        v = step(v, &m);
        out.push(TrajectoryRecord::new(t, v));
    }
    out
}
