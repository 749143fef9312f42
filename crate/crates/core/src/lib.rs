//! Phase estimation with a modified SU(1,1) interferometer.
//!
//! Two equal coherent states are amplified by an optical parametric amplifier
//! (OPA), one arm picks up the phase `theta`, and a beam splitter of
//! transmittance `eta` recombines the arms before balanced homodyne detection
//! of the amplitude quadrature `X = a† + a`. Path loss with a thermal
//! environment is modelled as a Gaussian channel on each arm.
//!
//! The crate provides two independent routes to every observable:
//!
//! * [`gaussian`] propagates displacement vectors and covariance matrices
//!   through exact phase-space maps, and [`measurement`] turns the output
//!   state into homodyne statistics, error-propagation sensitivity, classical
//!   Fisher information and fringe visibility.
//! * [`analytic`] holds the closed-form expressions for the same quantities,
//!   together with the shot-noise limit, the quantum Cramér-Rao bound and the
//!   maximal tolerable loss.
//!
//! [`fock`] is a brute-force truncated Fock-space simulator of the lossless
//! interferometer used to certify both routes at small photon numbers.
//!
//! Quadrature convention: `X = a† + a`, `P = i(a† − a)`, so the vacuum
//! covariance matrix is the identity and a coherent state `|α⟩` has means
//! `(2 Re α, 2 Im α)`. Phase-space vectors are interleaved as
//! `X₁, P₁, X₂, P₂, …`.
#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod analytic;
mod error;
pub mod fock;
pub mod gaussian;
pub mod measurement;
pub mod numeric;

pub use error::{Error, Result};
pub use gaussian::{GaussianChannel, GaussianState, SymplecticOp};
pub use measurement::{InterferometerConfig, SensitivityReport};
pub use nalgebra::{DMatrix, DVector};

/// Complex amplitude type used for displacements and Fock amplitudes.
pub type Complex64 = nalgebra::Complex<f64>;

pub(crate) fn polar(r: f64, theta: f64) -> Complex64 {
    Complex64::new(r * libm::cos(theta), r * libm::sin(theta))
}

pub(crate) fn cabs(c: Complex64) -> f64 {
    libm::hypot(c.re, c.im)
}
