//! Truncated Fock-space simulation of the lossless interferometer.
//!
//! States are explicit two-mode amplitude tables `c[n_a][n_b]` with
//! `D` levels per mode. The OPA and the beam splitter are applied as matrix
//! exponentials of their generators built from truncated ladder matrices.
//! Both generators conserve a photon-number combination (`n_a − n_b` for the
//! OPA, `n_a + n_b` for the beam splitter), so the exponential is taken one
//! invariant block at a time, which is exactly the exponential of the full
//! truncated generator. Each block is exponentiated through the
//! eigendecomposition of its Hermitian generator.
//!
//! Loss is not simulated here; lossy results are checked against the
//! closed forms instead.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};
use crate::measurement::InterferometerConfig;
use crate::Complex64;

/// Largest accepted population in the top two levels of either mode.
pub const TAIL_TOL: f64 = 1e-8;
/// Largest truncation dimension per mode.
pub const MAX_DIM: usize = 64;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Starting dimension of the truncation policy:
/// `ceil(4(|α|² e^{2g} + sinh² g)) + 10`, capped at [`MAX_DIM`].
pub fn initial_dim(alpha_mag: f64, g: f64) -> usize {
    let sh = libm::sinh(g);
    let mean = alpha_mag * alpha_mag * libm::exp(2.0 * g) + sh * sh;
    let d = libm::ceil(4.0 * mean) as usize + 10;
    d.min(MAX_DIM)
}

fn next_dim(dim: usize) -> usize {
    (2 * dim).min(MAX_DIM)
}

/// Which ladder matrix a [`ModeOperator`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Annihilation,
    Creation,
    Number,
}

/// Single-mode ladder or number operator truncated to `D` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    pub kind: OperatorKind,
    pub matrix: DMatrix<Complex64>,
}

impl ModeOperator {
    pub fn annihilation(dim: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        for n in 1..dim {
            m[(n - 1, n)] = c64(libm::sqrt(n as f64));
        }
        Self {
            kind: OperatorKind::Annihilation,
            matrix: m,
        }
    }

    pub fn creation(dim: usize) -> Self {
        Self {
            kind: OperatorKind::Creation,
            matrix: Self::annihilation(dim).matrix.adjoint(),
        }
    }

    pub fn number(dim: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            m[(n, n)] = c64(n as f64);
        }
        Self {
            kind: OperatorKind::Number,
            matrix: m,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Largest deviation of `[a, a†]` from the identity on levels `0..D−1`
    /// (the top level is where truncation breaks the commutator).
    pub fn commutator_defect(dim: usize) -> f64 {
        let a = Self::annihilation(dim).matrix;
        let ad = Self::creation(dim).matrix;
        let comm = &a * &ad - &ad * &a;
        let mut worst: f64 = 0.0;
        for i in 0..dim.saturating_sub(1) {
            for j in 0..dim.saturating_sub(1) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(crate::cabs(comm[(i, j)] - c64(target)));
            }
        }
        worst
    }
}

/// Single-mode amplitudes `c[n]`, `n < D`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplitudes {
    amps: Vec<Complex64>,
}

impl ModeAmplitudes {
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn mean_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    pub fn number_variance(&self) -> f64 {
        let n1 = self.mean_number();
        let n2: f64 = self
            .amps
            .iter()
            .enumerate()
            .map(|(n, c)| (n * n) as f64 * c.norm_sqr())
            .sum();
        n2 - n1 * n1
    }
}

/// Coherent state `e^{−|α|²/2} Σ αⁿ/√n! |n⟩` truncated to `dim` levels.
///
/// Fails when the population beyond the cut plus that of the top two
/// retained levels reaches [`TAIL_TOL`].
pub fn prepare_coherent(alpha: Complex64, dim: usize) -> Result<ModeAmplitudes> {
    if dim < 2 {
        return Err(invalid("Fock truncation needs at least two levels"));
    }
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(invalid("coherent amplitude must be finite"));
    }
    let amps = coherent_raw(alpha, dim);
    let kept: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
    let tail = libm::fmax(1.0 - kept, 0.0) + amps[dim - 2].norm_sqr() + amps[dim - 1].norm_sqr();
    if tail >= TAIL_TOL {
        return Err(Error::TruncationInsufficient {
            dim,
            tail,
            suggested: 2 * dim,
        });
    }
    Ok(ModeAmplitudes { amps })
}

fn coherent_raw(alpha: Complex64, dim: usize) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(dim);
    let mut c = c64(libm::exp(-0.5 * alpha.norm_sqr()));
    amps.push(c);
    for n in 1..dim {
        c = c * alpha / libm::sqrt(n as f64);
        amps.push(c);
    }
    amps
}

/// Two-mode pure state with amplitudes `c[n_a * D + n_b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    dim: usize,
    amps: Vec<Complex64>,
}

impl FockVector {
    /// Product state `|ψ_a⟩ ⊗ |ψ_b⟩`.
    pub fn product(a: &ModeAmplitudes, b: &ModeAmplitudes) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        let dim = a.dim();
        let mut amps = vec![c64(0.0); dim * dim];
        for (i, ca) in a.amps.iter().enumerate() {
            for (j, cb) in b.amps.iter().enumerate() {
                amps[i * dim + j] = ca * cb;
            }
        }
        Ok(Self { dim, amps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitude(&self, n_a: usize, n_b: usize) -> Complex64 {
        self.amps[n_a * self.dim + n_b]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Population in the top two levels of `mode` (0 = a, 1 = b).
    pub fn tail_population(&self, mode: usize) -> f64 {
        let d = self.dim;
        let mut sum = 0.0;
        for i in 0..d {
            for j in 0..d {
                let level = if mode == 0 { i } else { j };
                if level + 2 >= d {
                    sum += self.amps[i * d + j].norm_sqr();
                }
            }
        }
        sum
    }

    /// Errors when either mode leaks more than [`TAIL_TOL`] into its top
    /// two levels.
    pub fn check_truncation(&self) -> Result<()> {
        let tail = libm::fmax(self.tail_population(0), self.tail_population(1));
        if tail >= TAIL_TOL {
            return Err(Error::TruncationInsufficient {
                dim: self.dim,
                tail,
                suggested: next_dim(self.dim).max(self.dim + 1),
            });
        }
        Ok(())
    }

    /// Applies the block-diagonal unitary whose blocks are listed as index
    /// sets with their generators.
    fn evolve_blocks(&mut self, blocks: Vec<(Vec<usize>, DMatrix<Complex64>)>) {
        for (indices, generator) in blocks {
            let eig = SymmetricEigen::new(generator * Complex64::new(0.0, -1.0));
            let v = DVector::from_iterator(indices.len(), indices.iter().map(|&k| self.amps[k]));
            let mut w = eig.eigenvectors.adjoint() * v;
            for (c, &l) in w.iter_mut().zip(eig.eigenvalues.iter()) {
                *c *= crate::polar(1.0, l);
            }
            let out = &eig.eigenvectors * w;
            for (slot, &k) in indices.iter().enumerate() {
                self.amps[k] = out[slot];
            }
        }
    }
}

/// `exp(M)` for anti-Hermitian `M`, from the eigendecomposition of the
/// Hermitian matrix `−iM`.
pub fn expm_anti_hermitian(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(m * Complex64::new(0.0, -1.0));
    let phases = eig.eigenvalues.map(|l| crate::polar(1.0, l));
    &eig.eigenvectors * DMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// Largest entry of `U†U − 1`.
pub fn unitary_defect(u: &DMatrix<Complex64>) -> f64 {
    let n = u.nrows();
    (u.adjoint() * u - DMatrix::<Complex64>::identity(n, n))
        .iter()
        .map(|c| crate::cabs(*c))
        .fold(0.0, f64::max)
}

/// Two-mode squeezing `exp(g(a†b† − ab))`.
pub fn apply_opa(state: &FockVector, g: f64) -> Result<FockVector> {
    if !g.is_finite() {
        return Err(invalid("OPA gain must be finite"));
    }
    let out = opa_raw(state, g);
    out.check_truncation()?;
    Ok(out)
}

fn opa_raw(state: &FockVector, g: f64) -> FockVector {
    let d = state.dim;
    let ad = ModeOperator::creation(d).matrix;
    let mut blocks = Vec::new();
    // block k = n_a − n_b ∈ (−D, D)
    for k in -(d as isize - 1)..=(d as isize - 1) {
        let start = if k >= 0 { (k as usize, 0) } else { (0, (-k) as usize) };
        let len = d - start.0.max(start.1);
        let indices: Vec<usize> = (0..len).map(|m| (start.0 + m) * d + start.1 + m).collect();
        let mut gen = DMatrix::zeros(len, len);
        for m in 0..len.saturating_sub(1) {
            let (na, nb) = (start.0 + m, start.1 + m);
            // ⟨na+1, nb+1| a†b† |na, nb⟩
            let up = ad[(na + 1, na)] * ad[(nb + 1, nb)] * g;
            gen[(m + 1, m)] = up;
            gen[(m, m + 1)] = -up.conj();
        }
        blocks.push((indices, gen));
    }
    let mut out = state.clone();
    out.evolve_blocks(blocks);
    out
}

/// Phase `a → e^{iθ} a` followed by the beam splitter
/// `a → √η a + i√(1−η) b`, realised as `exp(iξ(a†b + ab†))` with
/// `cos ξ = √η`.
pub fn apply_bs_phase(state: &FockVector, eta: f64, theta: f64) -> Result<FockVector> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(invalid("beam-splitter transmittance must lie in [0, 1]"));
    }
    if !theta.is_finite() {
        return Err(invalid("phase must be finite"));
    }
    let out = bs_phase_raw(state, eta, theta);
    out.check_truncation()?;
    Ok(out)
}

fn bs_phase_raw(state: &FockVector, eta: f64, theta: f64) -> FockVector {
    let d = state.dim;
    let mut out = state.clone();
    for na in 0..d {
        let phase = crate::polar(1.0, theta * na as f64);
        for nb in 0..d {
            out.amps[na * d + nb] *= phase;
        }
    }
    let xi = libm::acos(libm::sqrt(eta));
    let ad = ModeOperator::creation(d).matrix;
    let a = ModeOperator::annihilation(d).matrix;
    let mut blocks = Vec::new();
    // block N = n_a + n_b, states (na, N − na) inside the box
    for total in 0..=(2 * (d - 1)) {
        let lo = total.saturating_sub(d - 1);
        let hi = total.min(d - 1);
        let indices: Vec<usize> = (lo..=hi).map(|na| na * d + (total - na)).collect();
        let len = indices.len();
        let mut gen = DMatrix::zeros(len, len);
        for s in 0..len.saturating_sub(1) {
            let na = lo + s;
            let nb = total - na;
            // ⟨na+1, nb−1| a†b |na, nb⟩
            let hop = ad[(na + 1, na)] * a[(nb - 1, nb)];
            let h = Complex64::new(0.0, xi) * hop;
            gen[(s + 1, s)] = h;
            gen[(s, s + 1)] = h;
        }
        blocks.push((indices, gen));
    }
    out.evolve_blocks(blocks);
    out
}

/// Quadrature and number moments of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockMoments {
    pub x_mean: f64,
    pub x2_mean: f64,
    pub n_mean: f64,
    pub n2_mean: f64,
}

/// Moments of `mode` (0 = a, 1 = b), normalised by the state norm.
///
/// `⟨X²⟩` is evaluated as `2 Re⟨a²⟩ + 2⟨n⟩ + 1`, which involves only
/// lowering operators and so carries no truncation artefact.
pub fn mode_moments(state: &FockVector, mode: usize) -> Result<FockMoments> {
    if mode > 1 {
        return Err(invalid("Fock states have two modes"));
    }
    let d = state.dim;
    let norm = state.norm_sqr();
    if !(norm > 0.0) {
        return Err(Error::Undefined("zero state vector"));
    }
    let at = |na: usize, nb: usize| state.amps[na * d + nb];
    let mut a1 = c64(0.0);
    let mut a2 = c64(0.0);
    let mut n1 = 0.0;
    let mut n2 = 0.0;
    for na in 0..d {
        for nb in 0..d {
            let c = at(na, nb);
            let n = if mode == 0 { na } else { nb } as f64;
            n1 += n * c.norm_sqr();
            n2 += n * n * c.norm_sqr();
            let lower = |k: usize| -> Option<Complex64> {
                if mode == 0 {
                    na.checked_sub(k).map(|m| at(m, nb))
                } else {
                    nb.checked_sub(k).map(|m| at(na, m))
                }
            };
            if let Some(c1) = lower(1) {
                a1 += c1.conj() * c * libm::sqrt(n);
            }
            if let Some(c2) = lower(2) {
                a2 += c2.conj() * c * libm::sqrt(n * (n - 1.0));
            }
        }
    }
    let (a1, a2, n1, n2) = (a1 / norm, a2 / norm, n1 / norm, n2 / norm);
    Ok(FockMoments {
        x_mean: 2.0 * a1.re,
        x2_mean: 2.0 * a2.re + 2.0 * n1 + 1.0,
        n_mean: n1,
        n2_mean: n2,
    })
}

/// Moments of the measured mode `a`.
pub fn moments(state: &FockVector) -> FockMoments {
    // mode 0 always exists and the norm is positive for prepared states
    mode_moments(state, 0).unwrap_or(FockMoments {
        x_mean: f64::NAN,
        x2_mean: f64::NAN,
        n_mean: f64::NAN,
        n2_mean: f64::NAN,
    })
}

/// Pure-state quantum Fisher information for a phase on `mode`:
/// `4 Var(n̂)`.
pub fn qfi_pure(state: &FockVector, mode: usize) -> Result<f64> {
    state.check_truncation()?;
    let m = mode_moments(state, mode)?;
    Ok(4.0 * (m.n2_mean - m.n_mean * m.n_mean))
}

/// States of one oracle run of the lossless interferometer.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub dim: usize,
    pub after_opa: FockVector,
    pub output: FockVector,
}

/// Runs the lossless chain at a fixed truncation `dim`.
pub fn run_lossless_at(config: &InterferometerConfig, dim: usize) -> Result<OracleRun> {
    config.validate()?;
    if !config.is_lossless() {
        return Err(invalid("the Fock oracle only simulates lossless configurations"));
    }
    if dim > MAX_DIM {
        return Err(invalid("truncation dimension exceeds the oracle cap"));
    }
    let alpha = crate::polar(config.alpha_mag, config.phi);
    let beta = crate::polar(config.alpha_mag, config.delta);
    let input = FockVector::product(&prepare_coherent(alpha, dim)?, &prepare_coherent(beta, dim)?)?;
    let after_opa = apply_opa(&input, config.g)?;
    let output = apply_bs_phase(&after_opa, config.eta, config.theta)?;
    Ok(OracleRun {
        dim,
        after_opa,
        output,
    })
}

/// Runs the lossless chain, starting from [`initial_dim`] and doubling the
/// truncation (up to [`MAX_DIM`]) until the tail check passes.
pub fn run_lossless(config: &InterferometerConfig) -> Result<OracleRun> {
    let mut dim = initial_dim(config.alpha_mag, config.g);
    loop {
        match run_lossless_at(config, dim) {
            Err(Error::TruncationInsufficient { .. }) if dim < MAX_DIM => dim = next_dim(dim),
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn coherent_preparation() {
        let v = prepare_coherent(c64(0.0), 6).unwrap();
        assert_eq!(v.amplitudes()[0], c64(1.0));
        assert!(v.amplitudes()[1..].iter().all(|c| crate::cabs(*c) == 0.0));
        let v = prepare_coherent(c64(1.0), 20).unwrap();
        assert!((v.mean_number() - 1.0).abs() < 1e-10);
        assert!((v.number_variance() - 1.0).abs() < 1e-10);
        match prepare_coherent(c64(1.0), 4) {
            Err(Error::TruncationInsufficient { dim, tail, suggested }) => {
                assert_eq!(dim, 4);
                assert!(tail > 0.01);
                assert!(suggested > 4);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
        assert!(prepare_coherent(c64(1.0), 1).is_err());
    }

    #[test]
    fn ladder_commutator() {
        for d in [2, 5, 24, 48] {
            assert!(ModeOperator::commutator_defect(d) < 1e-12);
        }
        assert_eq!(ModeOperator::number(4).kind, OperatorKind::Number);
        let a = ModeOperator::annihilation(5);
        let n = ModeOperator::creation(5).matrix * &a.matrix;
        assert!((n - ModeOperator::number(5).matrix).iter().all(|c| crate::cabs(*c) < 1e-14));
    }

    #[test]
    fn expm_is_unitary_for_anti_hermitian() {
        let mut h = DMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                h[(i, j)] = Complex64::new((i + 2 * j) as f64 * 0.3, (i as f64 - j as f64) * 0.7);
            }
        }
        let herm = (&h + h.adjoint()) * c64(0.5);
        let u = expm_anti_hermitian(&(herm * Complex64::new(0.0, 1.0)));
        assert!(unitary_defect(&u) < 1e-10);
        let rot = DMatrix::from_row_slice(2, 2, &[c64(0.0), c64(-1.0), c64(1.0), c64(0.0)]) * c64(0.4);
        let e = expm_anti_hermitian(&rot);
        assert!((e[(0, 0)].re - 0.4f64.cos()).abs() < 1e-14);
        assert!((e[(1, 0)].re - 0.4f64.sin()).abs() < 1e-14);
    }

    fn vacuum_pair(dim: usize) -> FockVector {
        let v = prepare_coherent(c64(0.0), dim).unwrap();
        FockVector::product(&v, &v).unwrap()
    }

    #[test]
    fn opa_identity_and_vacuum_squeezing() {
        let s = vacuum_pair(12);
        assert_eq!(apply_opa(&s, 0.0).unwrap(), s);
        let out = apply_opa(&vacuum_pair(24), 0.3).unwrap();
        let n = mode_moments(&out, 0).unwrap().n_mean + mode_moments(&out, 1).unwrap().n_mean;
        assert!(rel(n, 0.185_465_218_242_267_67) < 1e-6);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn opa_on_coherent_inputs() {
        let cfg = InterferometerConfig::new(0.5, 0.3, 1.0, 0.0);
        let run = run_lossless(&cfg).unwrap();
        let n = mode_moments(&run.after_opa, 0).unwrap().n_mean + mode_moments(&run.after_opa, 1).unwrap().n_mean;
        assert!(rel(n, 1.096_524_618_437_522_1) < 1e-6);
    }

    #[test]
    fn beam_splitter_cases() {
        let a = prepare_coherent(c64(0.5), 16).unwrap();
        let s = FockVector::product(&a, &a).unwrap();
        let id = apply_bs_phase(&s, 1.0, 0.0).unwrap();
        assert!(id.amps.iter().zip(&s.amps).all(|(x, y)| crate::cabs(x - y) < 1e-14));
        let out = apply_bs_phase(&s, 0.5, 0.0).unwrap();
        assert!(rel(moments(&out).x_mean, 0.707_106_781_186_547_6) < 1e-10);
        let before = moments(&s).n_mean + mode_moments(&s, 1).unwrap().n_mean;
        let after = moments(&out).n_mean + mode_moments(&out, 1).unwrap().n_mean;
        assert!((before - after).abs() < 1e-10);
        assert!((out.norm_sqr() - s.norm_sqr()).abs() < 1e-10);
        assert!(apply_bs_phase(&s, 1.5, 0.0).is_err());
    }

    #[test]
    fn vacuum_and_coherent_moments() {
        let m = moments(&vacuum_pair(8));
        assert_eq!((m.x_mean, m.x2_mean, m.n_mean, m.n2_mean), (0.0, 1.0, 0.0, 0.0));
        let a = prepare_coherent(c64(1.0), 24).unwrap();
        let s = FockVector::product(&a, &prepare_coherent(c64(0.0), 24).unwrap()).unwrap();
        let m = moments(&s);
        assert!((m.n2_mean - m.n_mean * m.n_mean - 1.0).abs() < 1e-10);
        assert!((m.x_mean - 2.0).abs() < 1e-10);
        assert!((m.x2_mean - 5.0).abs() < 1e-10);
    }

    #[test]
    fn qfi_cases() {
        let a = prepare_coherent(Complex64::new(0.6, 0.8), 30).unwrap();
        let s = FockVector::product(&a, &a).unwrap();
        assert!(rel(qfi_pure(&s, 0).unwrap(), 4.0) < 1e-9);
        let out = apply_opa(&vacuum_pair(24), 0.3).unwrap();
        assert!(rel(qfi_pure(&out, 0).unwrap(), 0.405_327_783_662_187_3) < 1e-6);
        let run = run_lossless(&InterferometerConfig::new(0.5, 0.3, 0.5, FRAC_PI_2)).unwrap();
        assert!(rel(qfi_pure(&run.after_opa, 0).unwrap(), 2.565_386_245_030_461) < 1e-6);
    }

    #[test]
    fn truncation_failures_are_reported() {
        let a = prepare_coherent(c64(1.0), 16).unwrap();
        let s = FockVector::product(&a, &a).unwrap();
        assert!(matches!(apply_opa(&s, 1.0), Err(Error::TruncationInsufficient { .. })));
        let lossy = InterferometerConfig::new(0.5, 0.3, 0.5, 1.0).with_loss(0.1, 0.1, 0.0);
        assert!(run_lossless(&lossy).is_err());
    }

    #[test]
    fn policy_start_dimension() {
        assert_eq!(initial_dim(0.0, 0.0), 10);
        assert_eq!(initial_dim(1.0, 0.5), 22);
        assert_eq!(initial_dim(5.0, 2.0), MAX_DIM);
    }

    #[test]
    fn moments_converge_geometrically_in_dim() {
        let (alpha, g, eta, theta) = (0.6, 0.4, 0.5, 1.0);
        let exact = crate::analytic::x2_ideal(alpha, g, eta, theta);
        let err = |d: usize| {
            let c = ModeAmplitudes {
                amps: coherent_raw(c64(alpha), d),
            };
            let s = FockVector::product(&c, &c).unwrap();
            let out = bs_phase_raw(&opa_raw(&s, g), eta, theta);
            (moments(&out).x2_mean - exact).abs()
        };
        let (e8, e16) = (err(8), err(16));
        assert!(e8 > 10.0 * e16, "{e8} vs {e16}");
    }
}
