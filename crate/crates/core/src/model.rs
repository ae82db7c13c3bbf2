//! Problem parameters: the search space, the noise strength and the spectral
//! data of the noisy iteration matrix.

use num_complex::Complex64;

use crate::{Error, Result};

/// Width of the band `|eta - A+^2| <= tol` classified as degenerate.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Database of `N = 2^n` items with `M` marked ones.
///
/// The Grover angle satisfies `cos(theta) = 1 - 2M/N`, i.e.
/// `sin^2(theta/2) = M/N`. All trigonometric values are derived once here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSpace {
    n_items: u64,
    marked_count: u64,
    theta: f64,
    cos_theta: f64,
    sin_theta: f64,
    cos_2theta: f64,
    sin_2theta: f64,
}

impl SearchSpace {
    pub fn new(n_items: u64, marked_count: u64) -> Result<Self> {
        if n_items < 2 || !n_items.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n_items));
        }
        if marked_count == 0 {
            return Err(Error::NoMarkedItems);
        }
        if marked_count > n_items / 2 {
            return Err(Error::TooManyMarked {
                n_items,
                marked: marked_count,
            });
        }
        // M/N is a dyadic rational, so cos(theta) and cos(2 theta) are exact
        // for any database that fits in the mantissa.
        let n = n_items as f64;
        let m = marked_count as f64;
        let ratio = m / n;
        let cos_theta = 1.0 - 2.0 * ratio;
        let cos_2theta = 1.0 - 8.0 * ratio + 8.0 * ratio * ratio;
        let sin_theta = 2.0 * (m * (n - m)).sqrt() / n;
        let sin_2theta = 2.0 * sin_theta * cos_theta;
        let theta = 2.0 * ratio.sqrt().asin();
        Ok(Self {
            n_items,
            marked_count,
            theta,
            cos_theta,
            sin_theta,
            cos_2theta,
            sin_2theta,
        })
    }

    pub fn n_items(&self) -> u64 {
        self.n_items
    }

    pub fn marked_count(&self) -> u64 {
        self.marked_count
    }

    /// Grover angle in radians, in `(0, pi/2]`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }

    pub fn sin_theta(&self) -> f64 {
        self.sin_theta
    }

    pub fn cos_2theta(&self) -> f64 {
        self.cos_2theta
    }

    /// Always non-negative since `theta <= pi/2`.
    pub fn sin_2theta(&self) -> f64 {
        self.sin_2theta
    }

    /// Fraction `M/N` of marked items, the success probability of a uniform guess.
    pub fn marked_fraction(&self) -> f64 {
        self.marked_count as f64 / self.n_items as f64
    }
}

/// Same as [`SearchSpace::new`].
pub fn derive_search_space(n_items: u64, marked_count: u64) -> Result<SearchSpace> {
    SearchSpace::new(n_items, marked_count)
}

/// Phase damping strength `eta` together with the equivalent phase flip
/// probability `alpha`, related by `2 alpha = 1 + sqrt(eta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseLevel {
    eta: f64,
    alpha: f64,
}

impl NoiseLevel {
    pub fn from_eta(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::EtaOutOfRange(eta));
        }
        Ok(Self {
            eta,
            alpha: 0.5 * (1.0 + eta.sqrt()),
        })
    }

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.5 && alpha <= 1.0) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        let root = 2.0 * alpha - 1.0;
        Ok(Self {
            eta: root * root,
            alpha,
        })
    }

    /// The noiseless channel, `eta = 1`.
    pub fn noiseless() -> Self {
        Self {
            eta: 1.0,
            alpha: 1.0,
        }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Damping factor `sqrt(eta)` applied to coherences across the marked split.
    pub fn coherence_factor(&self) -> f64 {
        self.eta.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseConversion {
    AlphaToEta,
    EtaToAlpha,
}

pub fn convert_noise(value: f64, direction: NoiseConversion) -> Result<NoiseLevel> {
    match direction {
        NoiseConversion::AlphaToEta => NoiseLevel::from_alpha(value),
        NoiseConversion::EtaToAlpha => NoiseLevel::from_eta(value),
    }
}

/// Lower end of the oscillatory range: for `eta_min < eta <= 1` the
/// eigenvalues of the iteration matrix are complex.
///
/// Only defined for `cos(2 theta) > 0`, i.e. `M < N/4`-ish databases where
/// `sqrt(eta_min) = (1 - sin 2theta) / cos 2theta`.
pub fn eta_min(space: &SearchSpace) -> Result<f64> {
    eta_min_from_trig(space.cos_2theta(), space.sin_2theta())
}

pub(crate) fn eta_min_from_trig(cos_2theta: f64, sin_2theta: f64) -> Result<f64> {
    if cos_2theta <= 0.0 {
        return Err(Error::UnsupportedRegime { cos_2theta });
    }
    let root = (1.0 - sin_2theta) / cos_2theta;
    Ok(root * root)
}

/// Spectral regime of the iteration matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralCase {
    /// `eta > A+^2`: complex pair `sqrt(eta) e^{±i angle}`, `angle` in `(0, pi)`.
    Oscillatory { angle: f64 },
    /// `eta < A+^2`: real pair `sign(A+) sqrt(eta) e^{±rapidity}`.
    Overdamped { rapidity: f64 },
    /// `eta = A+^2` within the tolerance band; repeated eigenvalue.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub a_plus: f64,
    pub a_minus: f64,
    pub b: f64,
    pub case: SpectralCase,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

impl SpectralData {
    pub fn is_degenerate(&self) -> bool {
        matches!(self.case, SpectralCase::Degenerate)
    }

    /// Largest eigenvalue modulus; the asymptotic contraction rate per step.
    pub fn spectral_radius(&self) -> f64 {
        self.lambda_plus.norm().max(self.lambda_minus.norm())
    }
}

pub fn spectral_data(space: &SearchSpace, noise: &NoiseLevel) -> SpectralData {
    spectral_data_with_tol(space, noise, DEGENERATE_TOL)
}

pub fn spectral_data_with_tol(space: &SearchSpace, noise: &NoiseLevel, tol: f64) -> SpectralData {
    let eta = noise.eta();
    let c2 = space.cos_2theta();
    let a_plus = 0.5 * (1.0 + eta) * c2;
    let a_minus = 0.5 * (1.0 - eta) * c2;
    let gap = eta - a_plus * a_plus;
    let b = gap.abs().sqrt();

    if gap.abs() <= tol {
        let lambda = Complex64::new(a_plus, 0.0);
        return SpectralData {
            a_plus,
            a_minus,
            b,
            case: SpectralCase::Degenerate,
            lambda_plus: lambda,
            lambda_minus: lambda,
        };
    }

    if gap > 0.0 {
        SpectralData {
            a_plus,
            a_minus,
            b,
            case: SpectralCase::Oscillatory {
                angle: b.atan2(a_plus),
            },
            lambda_plus: Complex64::new(a_plus, b),
            lambda_minus: Complex64::new(a_plus, -b),
        }
    } else {
        let big = a_plus.abs() + b;
        // (|A+| + B)(|A+| - B) = eta; avoids cancellation in the small root.
        let small = eta / big;
        let sign = a_plus.signum();
        SpectralData {
            a_plus,
            a_minus,
            b,
            case: SpectralCase::Overdamped {
                rapidity: (big / eta.sqrt()).ln(),
            },
            lambda_plus: Complex64::new(sign * if sign > 0.0 { big } else { small }, 0.0),
            lambda_minus: Complex64::new(sign * if sign > 0.0 { small } else { big }, 0.0),
        }
    }
}
