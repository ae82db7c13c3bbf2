//! Entropies and the relative entropy of coherence, in nats.

use crate::channels::BlochVec2;
use crate::fullstate::DensityMatrix;
use crate::model::SearchSpace;
use crate::{Error, Result};

/// Eigenvalues at or below this are treated as zero in [`relative_entropy`].
pub const RANK_TOL: f64 = 1e-10;

/// `x ln x` with the `0 ln 0 = 0` limit.
fn xlnx(x: f64) -> f64 {
    if x <= 1e-300 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Shannon entropy `-sum p ln p` of an eigenvalue spectrum.
pub fn von_neumann_entropy(spectrum: &[f64]) -> Result<f64> {
    if let Some(p) = spectrum.iter().find(|p| p.is_nan() || **p < 0.0) {
        return Err(Error::InvalidDistribution(format!("entry {p}")));
    }
    let total: f64 = spectrum.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidDistribution(format!("sums to {total}")));
    }
    Ok(-spectrum.iter().map(|&p| xlnx(p)).sum::<f64>())
}

/// Non-zero eigenvalues `((1 + |r|)/2, (1 - |r|)/2)` of the effective state.
pub fn state_spectrum(v: BlochVec2) -> (f64, f64) {
    let r = v.norm().min(1.0);
    (0.5 * (1.0 + r), 0.5 * (1.0 - r))
}

/// Quantum relative entropy `D(rho || sigma) = tr(rho ln rho - rho ln sigma)`.
///
/// Returns `f64::INFINITY` when the support of `rho` is not contained in the
/// support of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let er = rho.eigen();
    let es = sigma.eigen();
    let n = rho.dim();

    let support: Vec<usize> = (0..n).filter(|&j| es.eigenvalues[j] > RANK_TOL).collect();
    for i in 0..n {
        if er.eigenvalues[i] <= RANK_TOL {
            continue;
        }
        let a = er.eigenvectors.column(i);
        let inside: f64 = support
            .iter()
            .map(|&j| es.eigenvectors.column(j).dotc(&a).norm_sqr())
            .sum();
        if inside < 1.0 - RANK_TOL {
            return Ok(f64::INFINITY);
        }
    }

    let neg_entropy: f64 = er.eigenvalues.iter().map(|&p| xlnx(p)).sum();
    // tr(rho ln sigma) = sum_j ln q_j <b_j|rho|b_j>
    let cross: f64 = support
        .iter()
        .map(|&j| {
            let b = es.eigenvectors.column(j);
            let weight = b.dotc(&(rho.matrix() * b)).re;
            weight * es.eigenvalues[j].ln()
        })
        .sum();
    Ok((neg_entropy - cross).max(0.0))
}

/// `S(rho)`, `S(rho_diag)` and `C1 = S(rho_diag) - S(rho)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceValues {
    pub s1: f64,
    pub s1_diag: f64,
    pub c1: f64,
}

/// Coherence of the effective state, using that the computational-basis
/// diagonal holds `P/M` (multiplicity `M`) and `(1-P)/(N-M)` (multiplicity `N-M`).
pub fn coherence_rel_entropy(v: BlochVec2, space: &SearchSpace) -> CoherenceValues {
    let (hi, lo) = state_spectrum(v);
    let s1 = -(xlnx(hi) + xlnx(lo));
    let p = v.success_probability();
    let m = space.marked_count() as f64;
    let rest = (space.n_items() - space.marked_count()) as f64;
    // -P ln(P/M) - (1-P) ln((1-P)/(N-M))
    let s1_diag = -xlnx(p) + p * m.ln() - xlnx(1.0 - p) + (1.0 - p) * rest.ln();
    CoherenceValues {
        s1,
        s1_diag,
        c1: (s1_diag - s1).max(0.0),
    }
}

/// Same quantities from the full density matrix (O(N³)).
pub fn coherence_full(rho: &DensityMatrix) -> Result<CoherenceValues> {
    let spectrum: Vec<f64> = rho
        .eigenvalues()
        .into_iter()
        .map(|p| if p < 0.0 && p > -1e-10 { 0.0 } else { p })
        .collect();
    let s1 = von_neumann_entropy(&spectrum)?;
    let diag: Vec<f64> = rho
        .probabilities()
        .into_iter()
        .map(|p| p.max(0.0))
        .collect();
    let s1_diag = von_neumann_entropy(&diag)?;
    Ok(CoherenceValues {
        s1,
        s1_diag,
        c1: (s1_diag - s1).max(0.0),
    })
}

/// Binary entropy `h(P)` and the upper bound
/// `P ln(M/P) + (1-P) ln((N-M)/(1-P))` on `C1 + S1`.
pub fn tradeoff_bounds(p_suc: f64, space: &SearchSpace) -> (f64, f64) {
    let p = p_suc.clamp(0.0, 1.0);
    let q = 1.0 - p;
    let lower = -(xlnx(p) + xlnx(q));
    let m = space.marked_count() as f64;
    let rest = (space.n_items() - space.marked_count()) as f64;
    let upper = p * m.ln() - xlnx(p) + q * rest.ln() - xlnx(q);
    (lower, upper)
}

/// One point of the coherence/success-probability trade-off along a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceRecord {
    pub step: u32,
    pub p_suc: f64,
    pub s1: f64,
    pub s1_diag: f64,
    pub c1: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

impl CoherenceRecord {
    pub fn from_values(
        step: u32,
        p_suc: f64,
        values: CoherenceValues,
        space: &SearchSpace,
    ) -> Self {
        let (lower_bound, upper_bound) = tradeoff_bounds(p_suc, space);
        Self {
            step,
            p_suc,
            s1: values.s1,
            s1_diag: values.s1_diag,
            c1: values.c1,
            lower_bound,
            upper_bound,
        }
    }

    pub fn from_bloch(step: u32, v: BlochVec2, space: &SearchSpace) -> Self {
        Self::from_values(
            step,
            v.success_probability(),
            coherence_rel_entropy(v, space),
            space,
        )
    }

    /// `lower <= C1 + S1 <= upper` up to `tol`.
    pub fn within_bounds(&self, tol: f64) -> bool {
        let total = self.c1 + self.s1;
        self.lower_bound <= total + tol && total <= self.upper_bound + tol
    }

    /// Distance of `C1 + S1` from the upper bound.
    pub fn saturation_gap(&self) -> f64 {
        (self.c1 + self.s1 - self.upper_bound).abs()
    }
}

/// Value approached by `C1(t)` for `eta < 1`: `ln(MN - M^2) / 2`.
pub fn asymptotic_coherence(space: &SearchSpace) -> f64 {
    let m = space.marked_count() as f64;
    let n = space.n_items() as f64;
    0.5 * (m * n - m * m).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::trajectory;
    use crate::fullstate::{effective_bloch, init_uniform, noisy_grover_step, MarkedSet};
    use crate::model::NoiseLevel;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::LN_2;

    #[test]
    fn entropy_examples() {
        assert_eq!(von_neumann_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(
            von_neumann_entropy(&[0.5, 0.5]).unwrap(),
            LN_2,
            epsilon = 1e-15
        );
        let (hi, lo) = state_spectrum(BlochVec2::new(0.6, 0.0));
        assert_abs_diff_eq!(
            von_neumann_entropy(&[hi, lo]).unwrap(),
            0.500_402_423_538_187_9,
            epsilon = 1e-15
        );
        assert!(von_neumann_entropy(&[0.5, 0.6]).is_err());
        assert!(von_neumann_entropy(&[1.5, -0.5]).is_err());
        assert!(von_neumann_entropy(&[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(state_spectrum(BlochVec2::ORIGIN), (0.5, 0.5));
        let s = SearchSpace::new(64, 1).unwrap();
        let (hi, lo) = state_spectrum(BlochVec2::initial(&s));
        assert_abs_diff_eq!(hi, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lo, 0.0, epsilon = 1e-15);
        let (hi, lo) = state_spectrum(BlochVec2::new(0.3, 0.4));
        assert_abs_diff_eq!(hi, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(lo, 0.25, epsilon = 1e-15);
        assert_eq!(state_spectrum(BlochVec2::new(1.0, 1e-7)), (1.0, 0.0));
    }

    #[test]
    fn relative_entropy_examples() {
        let s = SearchSpace::new(16, 1).unwrap();
        let rho = init_uniform(&s);
        assert_abs_diff_eq!(relative_entropy(&rho, &rho).unwrap(), 0.0, epsilon = 1e-12);
        let mixed = DensityMatrix::maximally_mixed(16);
        assert_abs_diff_eq!(
            relative_entropy(&rho, &mixed).unwrap(),
            16f64.ln(),
            epsilon = 1e-12
        );
        let a = DensityMatrix::pure(&[Complex64::from(1.0), Complex64::from(0.0)]);
        let b = DensityMatrix::pure(&[Complex64::from(0.0), Complex64::from(1.0)]);
        assert_eq!(relative_entropy(&a, &b).unwrap(), f64::INFINITY);
        assert!(matches!(
            relative_entropy(&a, &mixed),
            Err(Error::DimensionMismatch(2, 16))
        ));
    }

    #[test]
    fn coherence_of_uniform_state() {
        let s = SearchSpace::new(64, 1).unwrap();
        let c = coherence_rel_entropy(BlochVec2::initial(&s), &s);
        assert_abs_diff_eq!(c.s1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.c1, 64f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(c.c1, 4.158_883_083_359_672, epsilon = 1e-14);
    }

    #[test]
    fn coherence_asymptote() {
        let s = SearchSpace::new(64, 1).unwrap();
        let c = coherence_rel_entropy(BlochVec2::ORIGIN, &s);
        assert_abs_diff_eq!(c.c1, 0.5 * 63f64.ln(), epsilon = 1e-14);
        assert!((c.c1 - 2.072).abs() < 5e-4);
        assert_abs_diff_eq!(asymptotic_coherence(&s), c.c1, epsilon = 1e-14);
    }

    #[test]
    fn coherence_matches_full_state_values() {
        // 64x64 density-matrix reference: S(rho_diag) - S(rho)
        let s = SearchSpace::new(64, 1).unwrap();
        let traj = trajectory(&s, &NoiseLevel::from_eta(0.9).unwrap(), 50);
        for (t, expected) in [
            (1, 3.973_428_328_991_769),
            (3, 2.399_262_627_001_289),
            (5, 0.764_983_424_736_507_5),
            (10, 2.712_768_817_610_622),
            (50, 2.217_034_735_094_286),
        ] {
            let c = coherence_rel_entropy(traj[t].bloch, &s);
            assert_abs_diff_eq!(c.c1, expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn bounds_examples() {
        let s = SearchSpace::new(64, 1).unwrap();
        let (lo, hi) = tradeoff_bounds(1.0, &s);
        assert_eq!((lo, hi), (0.0, 0.0));
        let (_, hi) = tradeoff_bounds(0.5, &s);
        assert_abs_diff_eq!(hi, 0.5 * 252f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 0.5 * 63f64.ln() + LN_2, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 2.764_714_543_755_711_7, epsilon = 1e-14);
        let (lo, hi) = tradeoff_bounds(1.0 / 64.0, &s);
        assert_abs_diff_eq!(lo, 0.080_484_837_068_006_87, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 64f64.ln(), epsilon = 1e-14);
        for k in 0..=100 {
            let (lo, hi) = tradeoff_bounds(k as f64 / 100.0, &s);
            assert!(lo <= hi + 1e-15);
        }
    }

    #[test]
    fn record_saturates_upper_bound() {
        let s = SearchSpace::new(16, 3).unwrap();
        for rec in trajectory(&s, &NoiseLevel::from_eta(0.7).unwrap(), 60) {
            let c = CoherenceRecord::from_bloch(rec.step, rec.bloch, &s);
            assert!(c.within_bounds(1e-12));
            assert!(c.saturation_gap() <= 1e-10);
        }
    }

    #[test]
    fn diagonal_state_minimizes_relative_entropy() {
        let s = SearchSpace::new(8, 1).unwrap();
        let marked = MarkedSet::leading(&s);
        let noise = NoiseLevel::from_eta(0.8).unwrap();
        let mut rho = init_uniform(&s);
        for t in 0..12 {
            let diag = rho.diagonal_part();
            let d = relative_entropy(&rho, &diag).unwrap();
            let v = effective_bloch(&rho, &s, &marked).unwrap().bloch;
            assert_abs_diff_eq!(d, coherence_rel_entropy(v, &s).c1, epsilon = 1e-9);
            assert_abs_diff_eq!(d, coherence_full(&rho).unwrap().c1, epsilon = 1e-9);
            // any other incoherent state is further away
            let other = DensityMatrix::maximally_mixed(8);
            assert!(
                relative_entropy(&rho, &other).unwrap() >= d - 1e-12,
                "t={t}"
            );
            rho = noisy_grover_step(&rho, &s, &marked, &noise);
        }
    }
}
