//! Brute-force simulation of the noisy Grover iteration on the full
//! `N × N` density matrix.
//!
//! Nothing here knows about the Bloch-plane reduction except
//! [`effective_bloch`], which extracts the `(r_x, r_z)` coordinates for
//! comparison against the two-dimensional engines.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::channels::BlochVec2;
use crate::model::{NoiseLevel, SearchSpace};
use crate::{Error, Result};

/// Residual weight outside `span{|w>, |m>}` above which extraction fails.
pub const LEAKAGE_TOL: f64 = 1e-10;

/// The `M` indices on which the oracle evaluates to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSet {
    n_items: usize,
    indices: Vec<usize>,
    mask: Vec<bool>,
}

impl MarkedSet {
    pub fn new(n_items: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; n_items];
        for x in indices {
            if x >= n_items {
                return Err(Error::InvalidMarkedSet(format!(
                    "index {x} out of range for N = {n_items}"
                )));
            }
            if std::mem::replace(&mut mask[x], true) {
                return Err(Error::InvalidMarkedSet(format!("duplicate index {x}")));
            }
        }
        let indices: Vec<usize> = (0..n_items).filter(|&x| mask[x]).collect();
        if indices.is_empty() {
            return Err(Error::InvalidMarkedSet("empty".into()));
        }
        if indices.len() > n_items / 2 {
            return Err(Error::InvalidMarkedSet(format!(
                "{} marked items exceed N/2 = {}",
                indices.len(),
                n_items / 2
            )));
        }
        Ok(Self {
            n_items,
            indices,
            mask,
        })
    }

    /// Marks the first `M` indices of the space.
    pub fn leading(space: &SearchSpace) -> Self {
        Self::new(space.n_items() as usize, 0..space.marked_count() as usize)
            .expect("search space already validated")
    }

    pub fn n_items(&self) -> usize {
        self.n_items
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The Boolean function `F(x)`.
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }
}

/// Hermitian, unit-trace, positive-semidefinite `N × N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(DMatrix<Complex64>);

impl DensityMatrix {
    /// Wraps a matrix after checking Hermiticity and unit trace to `tol`.
    pub fn from_matrix(m: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
        }
        let rho = DensityMatrix(m);
        let herm = rho.hermiticity_defect();
        if herm > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        Ok(rho)
    }

    /// `|psi><psi|` for a (not necessarily normalized) amplitude vector.
    pub fn pure(amplitudes: &[Complex64]) -> Self {
        let v = DVector::from_column_slice(amplitudes);
        let norm2 = v.norm_squared();
        DensityMatrix(&v * v.adjoint() / Complex64::from(norm2))
    }

    /// `I / N`.
    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix(DMatrix::identity(n, n) / Complex64::from(n as f64))
    }

    /// Keeps only the diagonal in the computational basis.
    pub fn diagonal_part(&self) -> Self {
        DensityMatrix(DMatrix::from_diagonal(&self.0.diagonal()))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn get(&self, x: usize, y: usize) -> Complex64 {
        self.0[(x, y)]
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }

    /// Computational-basis probabilities `p(x) = rho_xx`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.0.diagonal().iter().map(|z| z.re).collect()
    }

    /// `tr(rho^2)`, i.e. the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.0.norm_squared()
    }

    /// `max |rho - rho†|` entry-wise.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for x in 0..n {
            for y in x..n {
                worst = worst.max((self.0[(x, y)] - self.0[(y, x)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order (O(N³)).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.0.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub(crate) fn eigen(&self) -> SymmetricEigen<Complex64, nalgebra::Dyn> {
        SymmetricEigen::new(self.0.clone())
    }

    /// Full validation including positivity; meant for tests and debug runs.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let herm = self.hermiticity_defect();
        if herm > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        if (self.trace() - 1.0).abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {}",
                self.trace()
            )));
        }
        let min = self.eigenvalues()[0];
        if min < -1e-10 {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }
}

/// `rho(0) = H|0><0|H`: every entry equals `1/N`.
pub fn init_uniform(space: &SearchSpace) -> DensityMatrix {
    let n = space.n_items() as usize;
    DensityMatrix(DMatrix::from_element(n, n, Complex64::from(1.0 / n as f64)))
}

/// The oracle `J = sum_x (-1)^F(x) |x><x|`, stored as its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOperator {
    signs: Vec<f64>,
}

impl OracleOperator {
    pub fn signs(&self) -> &[f64] {
        &self.signs
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&DVector::from_iterator(
            self.signs.len(),
            self.signs.iter().map(|&s| Complex64::from(s)),
        ))
    }

    /// `J rho J†`: entry `(x, y)` picks up `F(x) F(y)`.
    pub fn conjugate(&self, rho: &DensityMatrix) -> DensityMatrix {
        let n = self.signs.len();
        DensityMatrix(DMatrix::from_fn(n, n, |x, y| {
            rho.0[(x, y)] * (self.signs[x] * self.signs[y])
        }))
    }
}

pub fn build_oracle_operator(space: &SearchSpace, marked: &MarkedSet) -> OracleOperator {
    debug_assert_eq!(space.n_items() as usize, marked.n_items());
    OracleOperator {
        signs: (0..marked.n_items())
            .map(|x| if marked.contains(x) { -1.0 } else { 1.0 })
            .collect(),
    }
}

/// Inversion about the mean, `K = 2|psi><psi| - I` with `|psi>` uniform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffusionOperator {
    n_items: usize,
}

impl DiffusionOperator {
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let n = self.n_items;
        let off = 2.0 / n as f64;
        DMatrix::from_fn(n, n, |x, y| {
            Complex64::from(if x == y { off - 1.0 } else { off })
        })
    }

    /// `K rho K` as a rank-one update:
    /// `rho - 2 psi u† - 2 u psi† + 4 s psi psi†` with `u = rho psi`, `s = psi† rho psi`.
    pub fn conjugate(&self, rho: &DensityMatrix) -> DensityMatrix {
        let n = self.n_items;
        let amp = 1.0 / (n as f64).sqrt();
        // u = rho psi: row sums scaled by the uniform amplitude
        let u: Vec<Complex64> = (0..n)
            .map(|x| rho.0.row(x).iter().sum::<Complex64>() * amp)
            .collect();
        let s: Complex64 = u.iter().sum::<Complex64>() * amp;
        let corner = 4.0 * s * amp * amp;
        DensityMatrix(DMatrix::from_fn(n, n, |x, y| {
            rho.0[(x, y)] - 2.0 * amp * u[y].conj() - 2.0 * u[x] * amp + corner
        }))
    }
}

pub fn build_diffusion_operator(space: &SearchSpace) -> DiffusionOperator {
    DiffusionOperator {
        n_items: space.n_items() as usize,
    }
}

/// Kraus pair of the collective dephasing channel:
/// `E0 = P_unmarked + sqrt(eta) P_marked`, `E1 = sqrt(1 - eta) P_marked`.
pub fn collective_dephasing_kraus(
    marked: &MarkedSet,
    noise: &NoiseLevel,
) -> [DMatrix<Complex64>; 2] {
    let n = marked.n_items();
    let root = noise.coherence_factor();
    let rest = (1.0 - noise.eta()).sqrt();
    let e0 = DVector::from_fn(n, |x, _| {
        Complex64::from(if marked.contains(x) { root } else { 1.0 })
    });
    let e1 = DVector::from_fn(n, |x, _| {
        Complex64::from(if marked.contains(x) { rest } else { 0.0 })
    });
    [DMatrix::from_diagonal(&e0), DMatrix::from_diagonal(&e1)]
}

/// `E0 rho E0† + E1 rho E1†`, evaluated entry-wise: coherences between the
/// marked and unmarked blocks shrink by `sqrt(eta)`, everything else stays.
pub fn apply_collective_dephasing(
    rho: &DensityMatrix,
    marked: &MarkedSet,
    noise: &NoiseLevel,
) -> DensityMatrix {
    let n = rho.dim();
    let root = noise.coherence_factor();
    DensityMatrix(DMatrix::from_fn(n, n, |x, y| {
        if marked.contains(x) != marked.contains(y) {
            rho.0[(x, y)] * root
        } else {
            rho.0[(x, y)]
        }
    }))
}

/// One iteration: dephase, oracle, dephase, diffusion.
pub fn noisy_grover_step(
    rho: &DensityMatrix,
    space: &SearchSpace,
    marked: &MarkedSet,
    noise: &NoiseLevel,
) -> DensityMatrix {
    let oracle = build_oracle_operator(space, marked);
    let diffusion = build_diffusion_operator(space);
    let rho = apply_collective_dephasing(rho, marked, noise);
    let rho = oracle.conjugate(&rho);
    let rho = apply_collective_dephasing(&rho, marked, noise);
    diffusion.conjugate(&rho)
}

/// Probability that a computational-basis measurement returns a marked item.
pub fn success_probability_full(rho: &DensityMatrix, marked: &MarkedSet) -> f64 {
    marked
        .indices()
        .iter()
        .map(|&x| rho.0[(x, x)].re)
        .sum::<f64>()
        .clamp(0.0, 1.0)
}

/// Effective Bloch vector together with the weight left outside the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveBloch {
    pub bloch: BlochVec2,
    pub leakage: f64,
}

/// Block sums of `rho` over (unmarked, marked) index pairs.
fn block_sums(rho: &DensityMatrix, marked: &MarkedSet) -> (Complex64, Complex64, Complex64) {
    let n = rho.dim();
    let (mut ww, mut wm, mut mm) = (
        Complex64::default(),
        Complex64::default(),
        Complex64::default(),
    );
    for x in 0..n {
        for y in 0..n {
            let v = rho.0[(x, y)];
            match (marked.contains(x), marked.contains(y)) {
                (false, false) => ww += v,
                (false, true) => wm += v,
                (true, true) => mm += v,
                (true, false) => {}
            }
        }
    }
    (ww, wm, mm)
}

/// Coordinates of `rho` in the `{|w>, |m>}` basis:
/// `r_x = 2 Re<w|rho|m>`, `r_z = <w|rho|w> - <m|rho|m>`.
pub fn effective_bloch(
    rho: &DensityMatrix,
    space: &SearchSpace,
    marked: &MarkedSet,
) -> Result<EffectiveBloch> {
    let n = space.n_items() as f64;
    let m = marked.len() as f64;
    let (ww, wm, mm) = block_sums(rho, marked);
    let w_w = ww.re / (n - m);
    let m_m = mm.re / m;
    let w_m = wm / ((n - m) * m).sqrt();
    let leakage = rho.trace() - w_w - m_m;
    if leakage.abs() > LEAKAGE_TOL {
        return Err(Error::SubspaceLeakage(leakage));
    }
    Ok(EffectiveBloch {
        bloch: BlochVec2::new(2.0 * w_m.re, w_w - m_m),
        leakage,
    })
}
