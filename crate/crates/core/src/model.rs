//! The Swanson oscillator `H = w(a†a + ½) + α a² + β (a†)²`: constructors,
//! closed-form spectra and the reality classifier over `(w, α, β)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad_ops::{PhaseQuadratic, QuadraticOperator};

/// Default absolute tolerance for the classifier's boundary bands.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwansonParams {
    pub w: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Spectral regime of a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectrumClass {
    /// `Ω² > 0`, `w > α + β`.
    RealCaseI,
    /// `Ω² > 0`, `w = α + β`.
    RealCaseII,
    /// `α = β` with `Ω² > 0`: the operator is Hermitian.
    HermitianLimit,
    /// `Ω² < 0`.
    ComplexPair,
    /// `Ω² = 0`.
    DegenerateBoundary,
    /// `Ω² > 0` but `w < α + β`; the kinetic coefficient of the Hermitian
    /// equivalent is negative. Recorded, no spectrum asserted.
    RealOmegaNegativeMass,
}

impl SpectrumClass {
    pub const ALL: [SpectrumClass; 6] = [
        SpectrumClass::RealCaseI,
        SpectrumClass::RealCaseII,
        SpectrumClass::HermitianLimit,
        SpectrumClass::ComplexPair,
        SpectrumClass::DegenerateBoundary,
        SpectrumClass::RealOmegaNegativeMass,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumClass::RealCaseI => "RealCaseI",
            SpectrumClass::RealCaseII => "RealCaseII",
            SpectrumClass::HermitianLimit => "HermitianLimit",
            SpectrumClass::ComplexPair => "ComplexPair",
            SpectrumClass::DegenerateBoundary => "DegenerateBoundary",
            SpectrumClass::RealOmegaNegativeMass => "RealOmegaNegativeMass",
        }
    }

    /// Classes for which the closed-form spectrum is asserted.
    pub fn has_real_spectrum(&self) -> bool {
        matches!(
            self,
            SpectrumClass::RealCaseI | SpectrumClass::RealCaseII | SpectrumClass::HermitianLimit
        )
    }
}

impl fmt::Display for SpectrumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl SwansonParams {
    pub fn new(w: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(w.is_finite() && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "parameters must be finite, got w={w}, alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self { w, alpha, beta })
    }

    /// `Ω² = w² − 4αβ`.
    pub fn omega_squared(&self) -> f64 {
        self.w * self.w - 4.0 * self.alpha * self.beta
    }

    /// `w − α − β`, twice the kinetic coefficient of the raw operator.
    pub fn mass_term(&self) -> f64 {
        self.w - self.alpha - self.beta
    }

    pub fn swapped(&self) -> Self {
        Self {
            w: self.w,
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub fn build(&self) -> QuadraticOperator {
        QuadraticOperator::real(self.w, self.alpha, self.beta, 0.0)
    }

    pub fn classify(&self, tol: f64) -> SpectrumClass {
        let omega_sq = self.omega_squared();
        let mass = self.mass_term();
        if omega_sq.abs() <= tol {
            SpectrumClass::DegenerateBoundary
        } else if omega_sq < 0.0 {
            SpectrumClass::ComplexPair
        } else if (self.alpha - self.beta).abs() <= tol {
            SpectrumClass::HermitianLimit
        } else if mass.abs() <= tol {
            SpectrumClass::RealCaseII
        } else if mass > 0.0 {
            SpectrumClass::RealCaseI
        } else {
            SpectrumClass::RealOmegaNegativeMass
        }
    }

    /// `E_n = (n + ½)Ω` for the real-spectrum classes.
    ///
    /// In the Hermitian limit with `w < α + β` the operator is negative definite
    /// and the levels are `−(n + ½)Ω`.
    pub fn exact_energy(&self, n: usize) -> Result<f64> {
        let class = self.classify(DEFAULT_CLASSIFY_TOL);
        if !class.has_real_spectrum() {
            return Err(Error::NotRealSpectrum {
                class: class.to_string(),
            });
        }
        let level = (n as f64 + 0.5) * self.omega_squared().sqrt();
        if class == SpectrumClass::HermitianLimit && self.mass_term() < 0.0 {
            Ok(-level)
        } else {
            Ok(level)
        }
    }

    /// `½(w−α−β) p² + ½(w²−4αβ)/(w−α−β) x²`.
    pub fn hermitian_equivalent_case1(&self) -> Result<PhaseQuadratic> {
        let mass = self.mass_term();
        let omega_sq = self.omega_squared();
        if !(mass > 0.0 && omega_sq > 0.0) {
            return Err(Error::InvalidRegion(format!(
                "Hermitian equivalent needs w-alpha-beta > 0 and omega^2 > 0 (got {mass}, {omega_sq})"
            )));
        }
        Ok(PhaseQuadratic::real(
            0.5 * mass,
            0.5 * omega_sq / mass,
            0.0,
            0.0,
        ))
    }

    /// `½(β−2α) p² + ½(β−α)²/(β−2α) x²`, valid on `w = α + β`, `β > 2α`.
    pub fn case2_hermitian(&self) -> Result<PhaseQuadratic> {
        let tol = DEFAULT_CLASSIFY_TOL;
        if self.mass_term().abs() > tol {
            return Err(Error::InvalidRegion(format!(
                "case II requires w = alpha + beta, got w-alpha-beta = {}",
                self.mass_term()
            )));
        }
        let kinetic = self.beta - 2.0 * self.alpha;
        let gap = self.beta - self.alpha;
        if kinetic.abs() <= tol {
            return Err(Error::InvalidRegion(
                "beta = 2 alpha makes the x^2 coefficient singular".into(),
            ));
        }
        if kinetic < 0.0 || gap <= 0.0 {
            return Err(Error::InvalidRegion(format!(
                "case II Hermitian form needs beta > 2 alpha and beta > alpha (got beta-2alpha = {kinetic})"
            )));
        }
        Ok(PhaseQuadratic::real(
            0.5 * kinetic,
            0.5 * gap * gap / kinetic,
            0.0,
            0.0,
        ))
    }
}
