//! Gaussian states and the optical elements of the interferometer as exact
//! phase-space maps.
//!
//! Lossless elements are [`SymplecticOp`]s acting as `d → S d`,
//! `V → S V Sᵀ`; lossy elements are [`GaussianChannel`]s acting as
//! `d → T d`, `V → T V Tᵀ + N`. Both are stored locally on the modes they
//! touch and embedded into the full phase space when applied.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};
use crate::measurement::InterferometerConfig;
use crate::Complex64;

/// Tolerance on `S Ω Sᵀ = Ω`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Tolerance on the uncertainty relation and complete positivity.
pub const UNCERTAINTY_TOL: f64 = 1e-9;
/// Absolute tolerance on covariance-matrix symmetry.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Symplectic form for `modes` modes: block diagonal with `[[0, 1], [-1, 0]]`.
pub fn omega(modes: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

/// An M-mode Gaussian state: quadrature means `d` and symmetrised
/// covariance matrix `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    means: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Vacuum on `modes` modes.
    pub fn vacuum(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(invalid("a Gaussian state needs at least one mode"));
        }
        Ok(Self {
            means: DVector::zeros(2 * modes),
            cov: DMatrix::identity(2 * modes, 2 * modes),
        })
    }

    /// Builds a state from raw moments, checking symmetry and the
    /// uncertainty relation.
    pub fn new(means: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let n = means.len();
        if n == 0 || n % 2 != 0 {
            return Err(invalid("mean vector length must be a positive even number"));
        }
        if cov.nrows() != n || cov.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: cov.nrows(),
            });
        }
        if means.iter().chain(cov.iter()).any(|v| !v.is_finite()) {
            return Err(invalid("state moments must be finite"));
        }
        if (&cov - cov.transpose()).amax() > SYMMETRY_TOL {
            return Err(invalid("covariance matrix is not symmetric"));
        }
        let state = Self { means, cov };
        let nu = state.symplectic_eigenvalues()?;
        if nu.iter().any(|&v| v < 1.0 - UNCERTAINTY_TOL) {
            return Err(invalid("covariance matrix violates the uncertainty relation"));
        }
        Ok(state)
    }

    pub fn modes(&self) -> usize {
        self.means.len() / 2
    }

    pub fn means(&self) -> &DVector<f64> {
        &self.means
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.cov
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes() {
            return Err(invalid("mode index out of range"));
        }
        Ok(())
    }

    /// Coherent displacement of one mode by `amplitude`.
    pub fn displace(&self, mode: usize, amplitude: Complex64) -> Result<Self> {
        self.check_mode(mode)?;
        if !(amplitude.re.is_finite() && amplitude.im.is_finite()) {
            return Err(invalid("displacement amplitude must be finite"));
        }
        let mut out = self.clone();
        out.means[2 * mode] += 2.0 * amplitude.re;
        out.means[2 * mode + 1] += 2.0 * amplitude.im;
        Ok(out)
    }

    /// Mean photon number `⟨a†a⟩` of one mode.
    pub fn mean_photon(&self, mode: usize) -> Result<f64> {
        self.check_mode(mode)?;
        let (x, p) = (2 * mode, 2 * mode + 1);
        let second = self.cov[(x, x)]
            + self.cov[(p, p)]
            + self.means[x] * self.means[x]
            + self.means[p] * self.means[p];
        Ok(second / 4.0 - 0.5)
    }

    pub fn total_mean_photon(&self) -> f64 {
        (0..self.modes())
            .map(|m| self.mean_photon(m).unwrap_or(0.0))
            .sum()
    }

    /// Symplectic eigenvalues in ascending order, one per mode.
    ///
    /// Computed as the square roots of the eigenvalues of `AᵀA` with
    /// `A = V^{1/2} Ω V^{1/2}`, each of which appears twice.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let modes = self.modes();
        let eig = SymmetricEigen::new(self.cov.clone());
        if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
            return Err(invalid("covariance matrix is not positive definite"));
        }
        let sqrt_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(libm::sqrt));
        let root = &eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
        let a = &root * omega(modes) * &root;
        let ata = a.transpose() * &a;
        let ata = (&ata + ata.transpose()) * 0.5;
        let mut squares: Vec<f64> = SymmetricEigen::new(ata).eigenvalues.iter().copied().collect();
        squares.sort_by(f64::total_cmp);
        Ok(squares
            .chunks(2)
            .map(|pair| libm::sqrt(libm::fmax(0.5 * (pair[0] + pair[1]), 0.0)))
            .collect())
    }

    /// True when every symplectic eigenvalue equals one within `tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        self.symplectic_eigenvalues()
            .map(|nu| nu.iter().all(|v| libm::fabs(v - 1.0) <= tol))
            .unwrap_or(false)
    }

    /// Applies a symplectic operation or a channel.
    pub fn apply<M: GaussianMap + ?Sized>(&self, map: &M) -> Result<Self> {
        let modes = self.modes();
        for &t in map.targets() {
            if t >= modes {
                return Err(Error::DimensionMismatch {
                    expected: modes,
                    found: t + 1,
                });
            }
        }
        let (scale, shift, noise) = embed(map, modes);
        let means = &scale * &self.means + shift;
        let cov = &scale * &self.cov * scale.transpose() + noise;
        let cov = (&cov + cov.transpose()) * 0.5;
        Ok(Self { means, cov })
    }
}

/// Free-function form of [`GaussianState::vacuum`].
pub fn vacuum(modes: usize) -> Result<GaussianState> {
    GaussianState::vacuum(modes)
}

/// Free-function form of [`GaussianState::displace`].
pub fn displace(state: &GaussianState, mode: usize, amplitude: Complex64) -> Result<GaussianState> {
    state.displace(mode, amplitude)
}

/// Free-function form of [`GaussianState::apply`].
pub fn apply<M: GaussianMap + ?Sized>(state: &GaussianState, map: &M) -> Result<GaussianState> {
    state.apply(map)
}

/// Free-function form of [`GaussianState::mean_photon`].
pub fn mean_photon(state: &GaussianState, mode: usize) -> Result<f64> {
    state.mean_photon(mode)
}

/// A map on phase space described locally on a set of target modes.
pub trait GaussianMap {
    /// Modes the local matrices act on, in local order.
    fn targets(&self) -> &[usize];
    /// Local `2k × 2k` scale matrix (`S` or `T`).
    fn scale(&self) -> &DMatrix<f64>;
    /// Local displacement added after scaling.
    fn shift(&self) -> Option<&DVector<f64>> {
        None
    }
    /// Local additive noise; zero for symplectic maps.
    fn noise(&self) -> Option<&DMatrix<f64>> {
        None
    }
}

fn embed<M: GaussianMap + ?Sized>(
    map: &M,
    modes: usize,
) -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
    let n = 2 * modes;
    let mut scale = DMatrix::identity(n, n);
    let mut shift = DVector::zeros(n);
    let mut noise = DMatrix::zeros(n, n);
    let targets = map.targets();
    let index = |local: usize| 2 * targets[local / 2] + local % 2;
    let local = 2 * targets.len();
    for i in 0..local {
        for j in 0..local {
            scale[(index(i), index(j))] = map.scale()[(i, j)];
            if let Some(nm) = map.noise() {
                noise[(index(i), index(j))] = nm[(i, j)];
            }
        }
        if let Some(s) = map.shift() {
            shift[index(i)] = s[i];
        }
    }
    (scale, shift, noise)
}

fn check_targets(targets: &[usize], local: usize) -> Result<()> {
    if targets.is_empty() {
        return Err(invalid("a map must act on at least one mode"));
    }
    if local != 2 * targets.len() {
        return Err(Error::DimensionMismatch {
            expected: 2 * targets.len(),
            found: local,
        });
    }
    for (i, a) in targets.iter().enumerate() {
        if targets[i + 1..].contains(a) {
            return Err(invalid("target modes must be distinct"));
        }
    }
    Ok(())
}

/// Union of two target lists, preserving first-seen order.
fn merged_targets(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.to_vec();
    for t in b {
        if !out.contains(t) {
            out.push(*t);
        }
    }
    out
}

/// Re-expresses `map` on the local space of `targets` (a superset of its own).
fn relocate<M: GaussianMap + ?Sized>(
    map: &M,
    targets: &[usize],
) -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
    let n = 2 * targets.len();
    let mut scale = DMatrix::identity(n, n);
    let mut shift = DVector::zeros(n);
    let mut noise = DMatrix::zeros(n, n);
    let own = map.targets();
    let pos = |local: usize| {
        let mode = own[local / 2];
        let slot = targets.iter().position(|&t| t == mode).unwrap_or(0);
        2 * slot + local % 2
    };
    for i in 0..2 * own.len() {
        for j in 0..2 * own.len() {
            scale[(pos(i), pos(j))] = map.scale()[(i, j)];
            if let Some(nm) = map.noise() {
                noise[(pos(i), pos(j))] = nm[(i, j)];
            }
        }
        if let Some(s) = map.shift() {
            shift[pos(i)] = s[i];
        }
    }
    (scale, shift, noise)
}

/// Linear phase-space map of a lossless element.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticOp {
    targets: Vec<usize>,
    matrix: DMatrix<f64>,
    shift: DVector<f64>,
}

impl SymplecticOp {
    /// Wraps a local matrix, rejecting it unless `S Ω Sᵀ = Ω`.
    pub fn new(targets: Vec<usize>, matrix: DMatrix<f64>) -> Result<Self> {
        check_targets(&targets, matrix.nrows())?;
        if matrix.ncols() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let op = Self {
            shift: DVector::zeros(matrix.nrows()),
            targets,
            matrix,
        };
        if op.symplectic_defect() > SYMPLECTIC_TOL {
            return Err(invalid("matrix is not symplectic"));
        }
        Ok(op)
    }

    /// Identity on the given modes.
    pub fn identity(targets: Vec<usize>) -> Result<Self> {
        let n = 2 * targets.len();
        Self::new(targets, DMatrix::identity(n, n))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Largest entry of `S Ω Sᵀ − Ω`.
    pub fn symplectic_defect(&self) -> f64 {
        let w = omega(self.targets.len());
        (&self.matrix * &w * self.matrix.transpose() - w).amax()
    }

    /// `next ∘ self`: apply `self` first, then `next`.
    pub fn then(&self, next: &SymplecticOp) -> SymplecticOp {
        let targets = merged_targets(&self.targets, &next.targets);
        let (first, first_shift, _) = relocate(self, &targets);
        let (second, second_shift, _) = relocate(next, &targets);
        SymplecticOp {
            matrix: &second * first,
            shift: &second * first_shift + second_shift,
            targets,
        }
    }
}

impl GaussianMap for SymplecticOp {
    fn targets(&self) -> &[usize] {
        &self.targets
    }
    fn scale(&self) -> &DMatrix<f64> {
        &self.matrix
    }
    fn shift(&self) -> Option<&DVector<f64>> {
        Some(&self.shift)
    }
}

/// Completely positive Gaussian channel `V → T V Tᵀ + N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    targets: Vec<usize>,
    scale: DMatrix<f64>,
    noise: DMatrix<f64>,
}

impl GaussianChannel {
    /// Wraps local scale and noise matrices, rejecting non-CP pairs.
    pub fn new(targets: Vec<usize>, scale: DMatrix<f64>, noise: DMatrix<f64>) -> Result<Self> {
        check_targets(&targets, scale.nrows())?;
        let n = scale.nrows();
        if scale.ncols() != n || noise.nrows() != n || noise.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: noise.nrows(),
            });
        }
        if (&noise - noise.transpose()).amax() > SYMMETRY_TOL {
            return Err(invalid("channel noise matrix is not symmetric"));
        }
        let ch = Self {
            targets,
            scale,
            noise,
        };
        if ch.positivity_margin() < -UNCERTAINTY_TOL {
            return Err(invalid("channel is not completely positive"));
        }
        Ok(ch)
    }

    pub fn scale_matrix(&self) -> &DMatrix<f64> {
        &self.scale
    }

    pub fn noise_matrix(&self) -> &DMatrix<f64> {
        &self.noise
    }

    /// Smallest eigenvalue of the Hermitian matrix `N + iΩ − iTΩTᵀ`;
    /// non-negative exactly when the channel is completely positive.
    pub fn positivity_margin(&self) -> f64 {
        let n = self.scale.nrows();
        let w = omega(self.targets.len());
        let re = (&self.noise + self.noise.transpose()) * 0.5;
        let im = &w - &self.scale * &w * self.scale.transpose();
        // real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix
        let mut real = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                real[(i, j)] = re[(i, j)];
                real[(n + i, n + j)] = re[(i, j)];
                real[(i, n + j)] = -im[(i, j)];
                real[(n + i, j)] = im[(i, j)];
            }
        }
        SymmetricEigen::new(real).eigenvalues.min()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GaussianChannel) -> GaussianChannel {
        let targets = merged_targets(&self.targets, &next.targets);
        let (t1, _, n1) = relocate(self, &targets);
        let (t2, _, n2) = relocate(next, &targets);
        GaussianChannel {
            noise: &t2 * n1 * t2.transpose() + n2,
            scale: t2 * t1,
            targets,
        }
    }
}

impl From<SymplecticOp> for GaussianChannel {
    fn from(op: SymplecticOp) -> Self {
        let n = op.matrix.nrows();
        GaussianChannel {
            targets: op.targets,
            scale: op.matrix,
            noise: DMatrix::zeros(n, n),
        }
    }
}

impl GaussianMap for GaussianChannel {
    fn targets(&self) -> &[usize] {
        &self.targets
    }
    fn scale(&self) -> &DMatrix<f64> {
        &self.scale
    }
    fn noise(&self) -> Option<&DMatrix<f64>> {
        Some(&self.noise)
    }
}

fn distinct_pair(modes: (usize, usize)) -> Result<Vec<usize>> {
    if modes.0 == modes.1 {
        return Err(invalid("two-mode elements need distinct modes"));
    }
    Ok(alloc::vec![modes.0, modes.1])
}

/// Two-mode squeezer with zero pump phase:
/// `a → a cosh g + b† sinh g`, `b → b cosh g + a† sinh g`.
pub fn opa(g: f64, modes: (usize, usize)) -> Result<SymplecticOp> {
    if !g.is_finite() {
        return Err(invalid("OPA gain must be finite"));
    }
    let targets = distinct_pair(modes)?;
    let (c, s) = (libm::cosh(g), libm::sinh(g));
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        c,  0.0, s,   0.0,
        0.0, c,  0.0, -s,
        s,  0.0, c,   0.0,
        0.0, -s, 0.0, c,
    ]);
    SymplecticOp::new(targets, m)
}

/// Phase shift `a → e^{iθ} a` on one mode.
pub fn phase_shifter(theta: f64, mode: usize) -> SymplecticOp {
    let (c, s) = (libm::cos(theta), libm::sin(theta));
    SymplecticOp {
        targets: alloc::vec![mode],
        matrix: DMatrix::from_row_slice(2, 2, &[c, -s, s, c]),
        shift: DVector::zeros(2),
    }
}

/// Beam splitter `a → √η a + i√(1−η) b`, `b → i√(1−η) a + √η b`.
pub fn beam_splitter(eta: f64, modes: (usize, usize)) -> Result<SymplecticOp> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(invalid("beam-splitter transmittance must lie in [0, 1]"));
    }
    let targets = distinct_pair(modes)?;
    let (t, r) = (libm::sqrt(eta), libm::sqrt(1.0 - eta));
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        t,   0.0, 0.0, -r,
        0.0, t,   r,   0.0,
        0.0, -r,  t,   0.0,
        r,   0.0, 0.0, t,
    ]);
    SymplecticOp::new(targets, m)
}

/// Loss `loss` on one mode, mixing in a thermal environment with
/// `n_th` mean photons.
pub fn loss_channel(loss: f64, n_th: f64, mode: usize) -> Result<GaussianChannel> {
    if !(0.0..=1.0).contains(&loss) {
        return Err(invalid("loss rate must lie in [0, 1]"));
    }
    if !(n_th >= 0.0 && n_th.is_finite()) {
        return Err(invalid("thermal photon number must be finite and non-negative"));
    }
    let keep = libm::sqrt(1.0 - loss);
    let added = loss * (2.0 * n_th + 1.0);
    GaussianChannel::new(
        alloc::vec![mode],
        DMatrix::identity(2, 2) * keep,
        DMatrix::identity(2, 2) * added,
    )
}

/// Output state of the full interferometer (mode 0 is the measured arm `a`).
///
/// Chain: coherent inputs `|α⟩ ⊗ |β⟩` → OPA(g) → loss `L₁` on `a`, `L₂` on
/// `b` → phase `θ` on `a` → beam splitter `η`. Loss is phase-insensitive, so
/// its position relative to the phase shifter does not matter.
pub fn build_interferometer(config: &InterferometerConfig) -> Result<GaussianState> {
    config.validate()?;
    let alpha = crate::polar(config.alpha_mag, config.phi);
    let beta = crate::polar(config.alpha_mag, config.delta);
    let state = GaussianState::vacuum(2)?
        .displace(0, alpha)?
        .displace(1, beta)?
        .apply(&opa(config.g, (0, 1))?)?;
    let state = if config.loss_a > 0.0 || config.loss_b > 0.0 {
        state
            .apply(&loss_channel(config.loss_a, config.n_th, 0)?)?
            .apply(&loss_channel(config.loss_b, config.n_th, 1)?)?
    } else {
        state
    };
    state
        .apply(&phase_shifter(config.theta, 0))?
        .apply(&beam_splitter(config.eta, (0, 1))?)
}
