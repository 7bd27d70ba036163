//! Spectral analysis of the Swanson oscillator
//! `H = w(a†a + ½) + α a² + β (a†)²`.
//!
//! * [`quad_ops`]: exact algebra of quadratic bosonic operators and the two
//!   similarity generators.
//! * [`model`]: Swanson parameters, closed-form spectra, reality classifier.
//! * [`fock_matrix`]: truncated number-basis matrices and dense eigenvalues.
//! * [`perturbation`]: Rayleigh–Schrödinger series to arbitrary order.
//! * [`transforms`]: hermitizing similarity chains and isospectrality checks.
//!
//! Convention: ħ = 1, `a = (x + i p)/√2`, `[x, p] = i`.

pub mod error;
pub mod fock_matrix;
pub mod model;
pub mod perturbation;
pub mod quad_ops;
pub mod transforms;

pub use error::{Error, Result};
pub use fock_matrix::{convergence_study, FockMatrix, SpectrumResult, TruncationReport};
pub use model::{SpectrumClass, SwansonParams, DEFAULT_CLASSIFY_TOL};
pub use num_complex::Complex64;
pub use perturbation::{
    closed_form_order2, closed_form_order4, convergence_diagnostic, matrix_element, rs_corrections,
    ConvergenceDiagnostic, PerturbSeries,
};
pub use quad_ops::{PhaseQuadratic, QuadraticOperator, CONVENTION, HERMITIAN_TOL};
pub use transforms::{
    case1_hermitize, case2_chain, verify_isospectral, Generator, IsospectralReport, TransformChain,
    TransformStep,
};
