//! Homodyne statistics of the measured arm and the phase-sensitivity figures
//! derived from them.
//!
//! Derivatives with respect to `theta` are taken numerically on the full
//! Gaussian pipeline (see [`crate::numeric::central_derivative`]) so the
//! results stay independent of the closed forms in [`crate::analytic`].

use core::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{invalid, Error, Result};
use crate::gaussian::{build_interferometer, GaussianState};
use crate::numeric::central_derivative;

/// Number of phase samples used to locate the fringe extrema.
pub const VISIBILITY_GRID: usize = 721;

/// `|∂⟨X⟩/∂θ|` below this fraction of `|⟨X⟩| + ΔX` counts as a stationary
/// point of the fringe; the sensitivity is then reported as `+∞`.
pub const STATIONARY_REL: f64 = 1e-9;

/// Physical parameters of the interferometer.
///
/// Both inputs have magnitude `alpha_mag`; `phi` and `delta` are their
/// phases. `loss_a`/`loss_b` are the path losses `L₁`/`L₂` and `n_th` the
/// thermal occupation of the loss environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig {
    pub alpha_mag: f64,
    pub phi: f64,
    pub delta: f64,
    pub g: f64,
    pub eta: f64,
    pub theta: f64,
    pub loss_a: f64,
    pub loss_b: f64,
    pub n_th: f64,
}

impl Default for InterferometerConfig {
    fn default() -> Self {
        Self::new(1.0, 0.0, 0.5, FRAC_PI_2)
    }
}

impl InterferometerConfig {
    /// Lossless configuration with real, equal inputs.
    pub fn new(alpha_mag: f64, g: f64, eta: f64, theta: f64) -> Self {
        Self {
            alpha_mag,
            phi: 0.0,
            delta: 0.0,
            g,
            eta,
            theta,
            loss_a: 0.0,
            loss_b: 0.0,
            n_th: 0.0,
        }
    }

    pub fn with_loss(self, loss_a: f64, loss_b: f64, n_th: f64) -> Self {
        Self {
            loss_a,
            loss_b,
            n_th,
            ..self
        }
    }

    pub fn with_phases(self, phi: f64, delta: f64) -> Self {
        Self { phi, delta, ..self }
    }

    pub fn with_theta(self, theta: f64) -> Self {
        Self { theta, ..self }
    }

    pub fn is_lossless(&self) -> bool {
        self.loss_a == 0.0 && self.loss_b == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.alpha_mag,
            self.phi,
            self.delta,
            self.g,
            self.eta,
            self.theta,
            self.loss_a,
            self.loss_b,
            self.n_th,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(invalid("configuration fields must be finite"));
        }
        if self.alpha_mag < 0.0 {
            return Err(invalid("input amplitude must be non-negative"));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(invalid("transmittance must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.loss_a) || !(0.0..=1.0).contains(&self.loss_b) {
            return Err(invalid("loss rates must lie in [0, 1]"));
        }
        if self.n_th < 0.0 {
            return Err(invalid("thermal photon number must be non-negative"));
        }
        Ok(())
    }
}

/// Homodyne figures of merit at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityReport {
    pub x_mean: f64,
    pub x_var: f64,
    /// Error-propagation sensitivity; `+∞` at stationary points.
    pub delta_theta: f64,
    /// Classical Fisher information of the Gaussian homodyne record.
    pub cfi: f64,
    /// Fringe visibility; `None` when there is no fringe at all.
    pub visibility: Option<f64>,
}

/// Mean and variance of `X` on `mode`.
pub fn homodyne_x(state: &GaussianState, mode: usize) -> Result<(f64, f64)> {
    if mode >= state.modes() {
        return Err(invalid("mode index out of range"));
    }
    Ok((state.means()[2 * mode], state.covariance()[(2 * mode, 2 * mode)]))
}

/// Mean and variance of `X` on the measured arm.
pub fn x_statistics(config: &InterferometerConfig) -> Result<(f64, f64)> {
    homodyne_x(&build_interferometer(config)?, 0)
}

/// Homodyne mean and variance together with their phase derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalSlope {
    pub mean: f64,
    pub var: f64,
    pub d_mean: f64,
    /// Derivative of the standard deviation `ΔX`.
    pub d_std: f64,
}

impl SignalSlope {
    /// Evaluates `signal` (phase → mean, variance) and its slope at `theta`.
    pub fn measure<F>(theta: f64, signal: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<(f64, f64)>,
    {
        let (mean, var) = signal(theta)?;
        if !(var > 0.0) {
            return Err(Error::Undefined("homodyne variance is not positive"));
        }
        let [d_mean, d_std] = central_derivative(
            |t| signal(t).map(|(m, v)| [m, libm::sqrt(v)]),
            theta,
        )?;
        Ok(Self {
            mean,
            var,
            d_mean,
            d_std,
        })
    }

    pub fn is_stationary(&self) -> bool {
        let scale = libm::fabs(self.mean) + libm::sqrt(self.var);
        libm::fabs(self.d_mean) <= STATIONARY_REL * scale
    }

    /// `ΔX / |∂⟨X⟩/∂θ|`, or `+∞` at a stationary point.
    pub fn error_propagation(&self) -> f64 {
        if self.is_stationary() {
            f64::INFINITY
        } else {
            libm::sqrt(self.var) / libm::fabs(self.d_mean)
        }
    }

    /// `(∂⟨X⟩)² / Var + 2 (∂ΔX)² / Var`.
    pub fn fisher(&self) -> f64 {
        (self.d_mean * self.d_mean + 2.0 * self.d_std * self.d_std) / self.var
    }
}

fn pipeline_signal(config: &InterferometerConfig) -> impl Fn(f64) -> Result<(f64, f64)> + '_ {
    move |theta| x_statistics(&config.with_theta(theta))
}

/// Error-propagation phase sensitivity on the numeric pipeline.
pub fn sensitivity_error_propagation(config: &InterferometerConfig) -> Result<f64> {
    config.validate()?;
    Ok(SignalSlope::measure(config.theta, pipeline_signal(config))?.error_propagation())
}

/// Classical Fisher information of the homodyne outcome.
pub fn classical_fisher(config: &InterferometerConfig) -> Result<f64> {
    config.validate()?;
    Ok(SignalSlope::measure(config.theta, pipeline_signal(config))?.fisher())
}

/// Fringe contrast `(max − min) / (|max| + |min|)` of a phase-dependent mean.
pub fn fringe_visibility<F>(mean_at: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for k in 0..VISIBILITY_GRID {
        let m = mean_at(TAU * k as f64 / VISIBILITY_GRID as f64)?;
        max = libm::fmax(max, m);
        min = libm::fmin(min, m);
    }
    let span = max - min;
    let size = libm::fabs(max) + libm::fabs(min);
    if !(size > 0.0) || span <= 1e-12 * size {
        return Err(Error::Undefined("the homodyne mean shows no fringe"));
    }
    Ok(span / size)
}

/// Visibility of `⟨X⟩` as `theta` sweeps a full period.
pub fn visibility(config: &InterferometerConfig) -> Result<f64> {
    config.validate()?;
    fringe_visibility(|theta| x_statistics(&config.with_theta(theta)).map(|(m, _)| m))
}

/// All homodyne figures of merit at `config.theta`.
pub fn analyze(config: &InterferometerConfig) -> Result<SensitivityReport> {
    config.validate()?;
    let slope = SignalSlope::measure(config.theta, pipeline_signal(config))?;
    let visibility = match visibility(config) {
        Ok(v) => Some(v),
        Err(Error::Undefined(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SensitivityReport {
        x_mean: slope.mean,
        x_var: slope.var,
        delta_theta: slope.error_propagation(),
        cfi: slope.fisher(),
        visibility,
    })
}
