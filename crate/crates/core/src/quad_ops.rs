//! Exact algebra of quadratic bosonic operators.
//!
//! Convention throughout the crate: ħ = 1, `a = (x + i p)/√2`, `[x, p] = i`,
//! `[a, a†] = 1`. The sign of every Gaussian similarity parameter depends on
//! this choice.
//!
//! Both similarity generators used here are quadratic, so their adjoint action
//! on `(a, a†)` or `(x, p)` is linear and the conjugated operator is obtained
//! exactly by substitution; no commutator series is truncated.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for hermiticity predicates.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Human-readable statement of the ladder/phase-space convention.
pub const CONVENTION: &str = "hbar = 1, a = (x + i p)/sqrt(2), [x, p] = i, [a, a^dag] = 1";

/// `c_num (a†a + ½) + c_low a² + c_raise (a†)² + c_const`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticOperator {
    pub c_num: Complex64,
    pub c_low: Complex64,
    pub c_raise: Complex64,
    pub c_const: Complex64,
}

/// `g_pp p² + g_xx x² + g_cross (xp + px) + g_const`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseQuadratic {
    pub g_pp: Complex64,
    pub g_xx: Complex64,
    pub g_cross: Complex64,
    pub g_const: Complex64,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

impl QuadraticOperator {
    pub fn new(c_num: Complex64, c_low: Complex64, c_raise: Complex64, c_const: Complex64) -> Self {
        Self {
            c_num,
            c_low,
            c_raise,
            c_const,
        }
    }

    /// Operator with real coefficients.
    pub fn real(c_num: f64, c_low: f64, c_raise: f64, c_const: f64) -> Self {
        Self::new(c_num.into(), c_low.into(), c_raise.into(), c_const.into())
    }

    pub fn to_phase_basis(&self) -> PhaseQuadratic {
        PhaseQuadratic {
            g_pp: (self.c_num - self.c_low - self.c_raise) * 0.5,
            g_xx: (self.c_num + self.c_low + self.c_raise) * 0.5,
            g_cross: I * (self.c_low - self.c_raise) * 0.5,
            g_const: self.c_const,
        }
    }

    /// `e^{μ(a†)²} H e^{−μ(a†)²}`.
    ///
    /// Under this conjugation `a → a − 2μ a†` and `a†` is fixed; re-normal-ordering
    /// the result gives the coefficient map below.
    pub fn conjugate_by_ladder_squeeze(&self, mu: Complex64) -> Self {
        Self {
            c_num: self.c_num - 4.0 * mu * self.c_low,
            c_low: self.c_low,
            c_raise: self.c_raise - 2.0 * mu * self.c_num + 4.0 * mu * mu * self.c_low,
            c_const: self.c_const,
        }
    }

    /// `c_num² − 4 c_low c_raise`, the squared formal frequency.
    pub fn formal_omega_squared(&self) -> Complex64 {
        self.c_num * self.c_num - 4.0 * self.c_low * self.c_raise
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.c_num.im.abs() <= tol
            && self.c_const.im.abs() <= tol
            && (self.c_raise - self.c_low.conj()).norm() <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.c_num - other.c_num,
            self.c_low - other.c_low,
            self.c_raise - other.c_raise,
            self.c_const - other.c_const,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }
}

impl PhaseQuadratic {
    pub fn new(g_pp: Complex64, g_xx: Complex64, g_cross: Complex64, g_const: Complex64) -> Self {
        Self {
            g_pp,
            g_xx,
            g_cross,
            g_const,
        }
    }

    pub fn real(g_pp: f64, g_xx: f64, g_cross: f64, g_const: f64) -> Self {
        Self::new(g_pp.into(), g_xx.into(), g_cross.into(), g_const.into())
    }

    pub fn to_ladder_basis(&self) -> QuadraticOperator {
        let half_diff = (self.g_xx - self.g_pp) * 0.5;
        QuadraticOperator {
            c_num: self.g_pp + self.g_xx,
            c_low: half_diff - I * self.g_cross,
            c_raise: half_diff + I * self.g_cross,
            c_const: self.g_const,
        }
    }

    /// `e^{λx²} H e^{−λx²}`, using `p → p + 2iλx`.
    pub fn conjugate_by_gaussian(&self, lambda: Complex64) -> Self {
        Self {
            g_pp: self.g_pp,
            g_xx: self.g_xx - 4.0 * lambda * lambda * self.g_pp + 4.0 * I * lambda * self.g_cross,
            g_cross: self.g_cross + 2.0 * I * lambda * self.g_pp,
            g_const: self.g_const,
        }
    }

    /// `g_pp g_xx − g_cross²`; a quarter of the formal squared frequency.
    pub fn discriminant(&self) -> Complex64 {
        self.g_pp * self.g_xx - self.g_cross * self.g_cross
    }

    pub fn formal_omega_squared(&self) -> Complex64 {
        4.0 * self.discriminant()
    }

    /// The unique Gaussian parameter that removes the cross term, i.e. the root
    /// of `g_cross + 2iλ g_pp = 0`. `None` when `g_pp` vanishes.
    pub fn hermitizing_lambda(&self) -> Option<Complex64> {
        if self.g_pp == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(I * self.g_cross / (2.0 * self.g_pp))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        [self.g_pp, self.g_xx, self.g_cross, self.g_const]
            .iter()
            .all(|g| g.im.abs() <= tol)
    }

    /// Levels `E_n = 2√(g_pp g_xx − g_cross²)(n + ½) + g_const` for `n = 0..=n_max`.
    ///
    /// Only defined for Hermitian operators that are bounded below.
    pub fn exact_spectrum(&self, n_max: usize) -> Result<Vec<f64>> {
        let scale = [self.g_pp, self.g_xx, self.g_cross, self.g_const]
            .iter()
            .map(|g| g.norm())
            .fold(1.0, f64::max);
        let tol = HERMITIAN_TOL * scale;
        if !self.is_hermitian(tol) {
            return Err(Error::NotHermitian { tol });
        }
        let g_pp = self.g_pp.re;
        let disc = self.discriminant().re;
        if g_pp <= 0.0 || disc <= 0.0 {
            return Err(Error::UnboundedBelow {
                g_pp,
                discriminant: disc,
            });
        }
        let omega = 2.0 * disc.sqrt();
        Ok((0..=n_max)
            .map(|n| omega * (n as f64 + 0.5) + self.g_const.re)
            .collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.g_pp - other.g_pp,
            self.g_xx - other.g_xx,
            self.g_cross - other.g_cross,
            self.g_const - other.g_const,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }
}

impl From<QuadraticOperator> for PhaseQuadratic {
    fn from(op: QuadraticOperator) -> Self {
        op.to_phase_basis()
    }
}

impl From<PhaseQuadratic> for QuadraticOperator {
    fn from(op: PhaseQuadratic) -> Self {
        op.to_ladder_basis()
    }
}
