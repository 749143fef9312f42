//! Closed-form expressions for the modified SU(1,1) interferometer.
//!
//! Unless a signature says otherwise, inputs are equal coherent states with
//! magnitude `alpha_mag` and `φ + δ = 0`. The lossy expressions assume a
//! balanced beam splitter (`η = 1/2`). These functions share no code with
//! the phase-space pipeline in [`crate::gaussian`], so the two can be
//! compared point by point.

use core::f64::consts::SQRT_2;

use libm::{cos, cosh, exp, fabs, sin, sinh, sqrt};

use crate::error::{invalid, Error, Result};
use crate::numeric::bisect;

/// Largest gain accepted by the fallible closed forms.
pub const MAX_GAIN: f64 = 20.0;

fn check_gain(g: f64) -> Result<()> {
    if !g.is_finite() || fabs(g) > MAX_GAIN {
        return Err(invalid("gain must be finite with |g| <= 20"));
    }
    Ok(())
}

fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidArgument(alloc::format!("{name} must lie in [0, 1]")));
    }
    Ok(())
}

fn check_nonneg(name: &'static str, v: f64) -> Result<()> {
    if !(v >= 0.0 && v.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!("{name} must be finite and non-negative")));
    }
    Ok(())
}

/// Inputs shared by the closed forms, with the equal-loss convention
/// `L₁ = L₂ = loss`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormInputs {
    pub alpha_mag: f64,
    pub g: f64,
    pub eta: f64,
    pub theta: f64,
    pub loss: f64,
    pub n_th: f64,
}

impl ClosedFormInputs {
    pub fn new(alpha_mag: f64, g: f64, eta: f64, theta: f64, loss: f64, n_th: f64) -> Result<Self> {
        check_nonneg("alpha_mag", alpha_mag)?;
        check_gain(g)?;
        check_unit("eta", eta)?;
        if !theta.is_finite() {
            return Err(invalid("theta must be finite"));
        }
        check_unit("loss", loss)?;
        if loss >= 1.0 {
            return Err(invalid("closed forms need loss < 1"));
        }
        check_nonneg("n_th", n_th)?;
        Ok(Self {
            alpha_mag,
            g,
            eta,
            theta,
            loss,
            n_th,
        })
    }

    /// `γ` for these inputs.
    pub fn gamma(&self) -> Result<f64> {
        gamma(self.loss, self.g, self.n_th)
    }

    /// Error-propagation sensitivity: the ideal form for `loss = 0`, the
    /// balanced lossy form otherwise.
    pub fn sensitivity(&self) -> Result<f64> {
        if self.loss == 0.0 {
            Ok(sensitivity_ideal(self.alpha_mag, self.g, self.eta, self.theta))
        } else if self.eta == 0.5 {
            sensitivity_lossy(self.alpha_mag, self.g, self.loss, self.n_th, self.theta)
        } else {
            Err(invalid("lossy closed forms assume eta = 1/2"))
        }
    }
}

/// Mean photon number inside the interferometer for arbitrary coherent
/// inputs `|α| e^{iφ}`, `|β| e^{iδ}`.
pub fn mean_photon_total_general(alpha_mag: f64, beta_mag: f64, phi: f64, delta: f64, g: f64) -> f64 {
    (alpha_mag * alpha_mag + beta_mag * beta_mag) * cosh(2.0 * g)
        + 2.0 * sinh(g) * sinh(g)
        + 2.0 * alpha_mag * beta_mag * sinh(2.0 * g) * cos(phi + delta)
}

/// Mean photon number for equal, phase-matched inputs:
/// `2|α|² e^{2g} + 2 sinh² g`.
pub fn mean_photon_total(alpha_mag: f64, g: f64) -> f64 {
    2.0 * alpha_mag * alpha_mag * exp(2.0 * g) + 2.0 * sinh(g) * sinh(g)
}

/// `⟨X⟩ = 2 e^g √η |α| cos θ`.
pub fn x_mean_ideal(alpha_mag: f64, g: f64, eta: f64, theta: f64) -> f64 {
    2.0 * exp(g) * sqrt(eta) * alpha_mag * cos(theta)
}

/// `⟨X²⟩` of the lossless interferometer.
pub fn x2_ideal(alpha_mag: f64, g: f64, eta: f64, theta: f64) -> f64 {
    2.0 * eta * alpha_mag * alpha_mag * exp(2.0 * g) * (cos(2.0 * theta) + 1.0) + cosh(2.0 * g)
        - 2.0 * sinh(2.0 * g) * sqrt(eta * (1.0 - eta)) * sin(theta)
}

/// `Var X = cosh 2g − 2√(η(1−η)) sinh 2g sin θ`, the simplified difference
/// of [`x2_ideal`] and the squared mean.
pub fn x_var_ideal(g: f64, eta: f64, theta: f64) -> f64 {
    cosh(2.0 * g) - 2.0 * sqrt(eta * (1.0 - eta)) * sinh(2.0 * g) * sin(theta)
}

/// Error-propagation sensitivity of the lossless interferometer;
/// `+∞` when `sin θ`, `η` or `|α|` vanish.
pub fn sensitivity_ideal(alpha_mag: f64, g: f64, eta: f64, theta: f64) -> f64 {
    let slope = 2.0 * sqrt(eta) * exp(g) * fabs(alpha_mag * sin(theta));
    if slope == 0.0 {
        return f64::INFINITY;
    }
    sqrt(x_var_ideal(g, eta, theta)) / slope
}

/// Optimum of [`sensitivity_ideal`] at `η = 1/2`, `θ = π/2`:
/// `1 / (√2 e^{2g} |α|)`.
pub fn sensitivity_ideal_min(alpha_mag: f64, g: f64) -> f64 {
    1.0 / (SQRT_2 * exp(2.0 * g) * alpha_mag)
}

/// Transmittance minimising the sensitivity at fixed gain:
/// `(1 + sech 4g) / 2`.
pub fn eta_opt(g: f64) -> f64 {
    0.5 * (1.0 + 1.0 / cosh(4.0 * g))
}

/// Shot-noise limit `1/√N` for the photon number of [`mean_photon_total`].
pub fn snl(alpha_mag: f64, g: f64) -> Result<f64> {
    check_gain(g)?;
    let n = mean_photon_total(alpha_mag, g);
    if !(n > 0.0) {
        return Err(Error::Undefined("no photons inside the interferometer"));
    }
    Ok(1.0 / sqrt(n))
}

/// Bright-input approximation of the shot-noise limit: `1 / (√2 e^g |α|)`.
pub fn snl_approx(alpha_mag: f64, g: f64) -> Result<f64> {
    check_gain(g)?;
    if alpha_mag == 0.0 {
        return Err(Error::Undefined("approximate shot-noise limit needs |alpha| > 0"));
    }
    Ok(1.0 / (SQRT_2 * exp(g) * alpha_mag))
}

/// Homodyne sensitivity of the conventional SU(1,1) interferometer with two
/// equal coherent inputs: `1 / (2 e^g |α| sinh g)`; `+∞` at `g = 0`.
pub fn su11_sensitivity(alpha_mag: f64, g: f64) -> f64 {
    let d = 2.0 * exp(g) * alpha_mag * sinh(g);
    if d == 0.0 {
        f64::INFINITY
    } else {
        1.0 / d
    }
}

/// Ratio of the conventional SU(1,1) sensitivity to [`sensitivity_ideal_min`]:
/// `𝒦 = √2 e^g / (e^g − e^{−g})`.
pub fn improvement_factor(g: f64) -> f64 {
    let d = exp(g) - exp(-g);
    if d == 0.0 {
        f64::INFINITY
    } else {
        SQRT_2 * exp(g) / d
    }
}

/// Quantum Fisher information for equal inputs:
/// `2|α|²(e^{4g} + 1) + sinh² 2g`.
pub fn qfi(alpha_mag: f64, g: f64) -> f64 {
    let s = sinh(2.0 * g);
    2.0 * alpha_mag * alpha_mag * (exp(4.0 * g) + 1.0) + s * s
}

/// Quantum Cramér-Rao bound `1/√ℱ`.
pub fn qcrb(alpha_mag: f64, g: f64) -> Result<f64> {
    check_gain(g)?;
    let f = qfi(alpha_mag, g);
    if !(f > 0.0) {
        return Err(Error::Undefined("quantum Fisher information vanishes"));
    }
    Ok(1.0 / sqrt(f))
}

/// Bright, high-gain approximation of the bound: `1 / (√2 e^{2g} |α|)`.
pub fn qcrb_approx(alpha_mag: f64, g: f64) -> f64 {
    sensitivity_ideal_min(alpha_mag, g)
}

/// `⟨X_L⟩` at `η = 1/2`; only the loss `L₁` on the phase-carrying arm
/// enters the mean.
pub fn x_mean_lossy(alpha_mag: f64, g: f64, loss_a: f64, theta: f64) -> f64 {
    sqrt(2.0 * (1.0 - loss_a)) * exp(g) * alpha_mag * cos(theta)
}

/// `⟨X_L²⟩` with path losses `L₁`, `L₂` and thermal environment `n_th`.
pub fn x2_lossy(alpha_mag: f64, g: f64, loss_a: f64, loss_b: f64, n_th: f64, theta: f64) -> f64 {
    let c = cos(theta);
    let sh = sinh(g);
    2.0 * alpha_mag * alpha_mag * exp(2.0 * g) * (1.0 - loss_a) * c * c + (loss_a + loss_b) * n_th + 1.0
        - sqrt((1.0 - loss_a) * (1.0 - loss_b)) * sinh(2.0 * g) * sin(theta)
        + (2.0 - loss_a - loss_b) * sh * sh
}

/// Sensitivity with equal path loss `L` and thermal environment `n_th`;
/// `+∞` when `sin θ` or `|α|` vanish.
pub fn sensitivity_lossy(alpha_mag: f64, g: f64, loss: f64, n_th: f64, theta: f64) -> Result<f64> {
    check_gain(g)?;
    check_unit("loss", loss)?;
    check_nonneg("n_th", n_th)?;
    if loss == 1.0 {
        return Err(Error::Undefined("complete loss leaves no phase signal"));
    }
    let slope = sqrt(2.0 * (1.0 - loss)) * exp(g) * fabs(alpha_mag * sin(theta));
    if slope == 0.0 {
        return Ok(f64::INFINITY);
    }
    let sh = sinh(g);
    let var = (1.0 - loss) * (2.0 * sh * sh - sinh(2.0 * g) * sin(theta)) + 2.0 * loss * n_th + 1.0;
    Ok(sqrt(var) / slope)
}

/// Variance increment from loss and background noise:
/// `γ = L (2 n_th + 1) e^{2g} / (1 − L)`.
pub fn gamma(loss: f64, g: f64, n_th: f64) -> Result<f64> {
    check_gain(g)?;
    check_unit("loss", loss)?;
    check_nonneg("n_th", n_th)?;
    if loss == 1.0 {
        return Err(Error::Undefined("complete loss leaves no phase signal"));
    }
    Ok(loss / (1.0 - loss) * (2.0 * n_th + 1.0) * exp(2.0 * g))
}

/// Lossy optimum at `θ = π/2`: `√(1 + γ) / (√2 e^{2g} |α|)`.
pub fn sensitivity_lossy_min(alpha_mag: f64, g: f64, loss: f64, n_th: f64) -> Result<f64> {
    let gamma = gamma(loss, g, n_th)?;
    if alpha_mag == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(sqrt(1.0 + gamma) / (SQRT_2 * exp(2.0 * g) * alpha_mag))
}

/// Maximal tolerable loss: the `L` at which [`sensitivity_lossy_min`] rises
/// to the shot-noise limit [`snl`].
///
/// The balance condition is linear in `L`; with `K = 2|α|² e^{4g}` and
/// `R = 2|α|² e^{2g} + 2 sinh² g` the root is
/// `(K − R) / (K + R((2n_th + 1) e^{2g} − 1))`. When `K ≤ R` the protocol
/// never beats the shot-noise limit and `0` is returned.
pub fn lmax_solve(alpha_mag: f64, g: f64, n_th: f64) -> Result<f64> {
    check_gain(g)?;
    check_nonneg("alpha_mag", alpha_mag)?;
    check_nonneg("n_th", n_th)?;
    let k = 2.0 * alpha_mag * alpha_mag * exp(4.0 * g);
    let r = mean_photon_total(alpha_mag, g);
    if k <= r {
        return Ok(0.0);
    }
    Ok((k - r) / (k + r * ((2.0 * n_th + 1.0) * exp(2.0 * g) - 1.0)))
}

/// [`lmax_solve`] recomputed by bisecting `Δθ_L,min(L)² − Δθ_SNL²` on
/// `[0, 1)` down to a bracket of `1e-15`.
pub fn lmax_bisect(alpha_mag: f64, g: f64, n_th: f64) -> Result<f64> {
    let shot = snl(alpha_mag, g)?;
    let gap = |l: f64| match sensitivity_lossy_min(alpha_mag, g, l, n_th) {
        Ok(d) => d * d - shot * shot,
        Err(_) => f64::INFINITY,
    };
    if gap(0.0) >= 0.0 {
        return Ok(0.0);
    }
    // the gap diverges as L → 1, so a point just below 1 closes the bracket
    let mut hi = 0.5;
    while gap(hi) < 0.0 {
        hi = 0.5 * (1.0 + hi);
        if hi >= 1.0 {
            return Ok(1.0);
        }
    }
    bisect(gap, 0.0, hi, 1e-15)
}

/// Large-gain, bright-input limit of [`lmax_solve`]: `1 / (2(n_th + 1))`.
pub fn lmax_limit(n_th: f64) -> f64 {
    1.0 / (2.0 * (n_th + 1.0))
}

/// `⟨a†a† + aa⟩` and `⟨a†a⟩` of the measured output mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderMoments {
    pub anomalous: f64,
    pub number: f64,
}

impl LadderMoments {
    /// `⟨X²⟩ = ⟨a†a† + aa⟩ + 2⟨a†a⟩ + 1`.
    pub fn x2(&self) -> f64 {
        self.anomalous + 2.0 * self.number + 1.0
    }
}

/// Output-mode ladder moments of the lossless interferometer.
pub fn appendix_moments_ideal(alpha_mag: f64, g: f64, eta: f64, theta: f64) -> LadderMoments {
    let bright = alpha_mag * alpha_mag * exp(2.0 * g);
    let mix = sqrt(eta * (1.0 - eta));
    let sh = sinh(g);
    LadderMoments {
        anomalous: 2.0 * bright * (eta * cos(2.0 * theta) - 2.0 * mix * sin(theta) - (1.0 - eta))
            - 2.0 * sinh(2.0 * g) * mix * sin(theta),
        number: bright * (1.0 + 2.0 * mix * sin(theta)) + sh * sh,
    }
}

/// Output-mode ladder moments with path losses at `η = 1/2`.
pub fn appendix_moments_lossy(
    alpha_mag: f64,
    g: f64,
    loss_a: f64,
    loss_b: f64,
    n_th: f64,
    theta: f64,
) -> LadderMoments {
    let bright = alpha_mag * alpha_mag * exp(2.0 * g);
    let keep = sqrt((1.0 - loss_a) * (1.0 - loss_b));
    let sh = sinh(g);
    let lost = 0.5 * (loss_a + loss_b);
    LadderMoments {
        anomalous: bright * ((1.0 - loss_a) * cos(2.0 * theta) - 2.0 * keep * sin(theta) - (1.0 - loss_b))
            - keep * sinh(2.0 * g) * sin(theta),
        number: (1.0 - lost) * (bright + sh * sh) + bright * keep * sin(theta) + lost * n_th,
    }
}
