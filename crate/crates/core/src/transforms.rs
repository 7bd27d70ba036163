//! Similarity-transformation pipelines `H → S H S⁻¹` and numerical
//! isospectrality checks.
//!
//! Two generators are available: the ladder squeeze `S = e^{μ(a†)²}` and the
//! Gaussian `S = e^{λx²}`. Gaussian parameters that hermitize an operator are
//! always derived from the requirement that the `(xp + px)` term vanish.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock_matrix::convergence_study;
use crate::model::{SpectrumClass, SwansonParams, DEFAULT_CLASSIFY_TOL};
use crate::quad_ops::{PhaseQuadratic, QuadraticOperator};

/// Tolerance used to decide whether a chain's output is Hermitian.
pub const CHAIN_HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    /// `e^{μ(a†)²}`.
    LadderSqueeze,
    /// `e^{λx²}`.
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformStep {
    pub generator: Generator,
    pub parameter: Complex64,
}

impl TransformStep {
    pub fn ladder_squeeze(mu: Complex64) -> Self {
        Self {
            generator: Generator::LadderSqueeze,
            parameter: mu,
        }
    }

    pub fn gaussian(lambda: Complex64) -> Self {
        Self {
            generator: Generator::Gaussian,
            parameter: lambda,
        }
    }

    pub fn apply(&self, op: &QuadraticOperator) -> QuadraticOperator {
        match self.generator {
            Generator::LadderSqueeze => op.conjugate_by_ladder_squeeze(self.parameter),
            Generator::Gaussian => op
                .to_phase_basis()
                .conjugate_by_gaussian(self.parameter)
                .to_ladder_basis(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformChain {
    pub steps: Vec<TransformStep>,
    pub input: QuadraticOperator,
    /// Operator after each step; the last entry equals `output`.
    pub stages: Vec<QuadraticOperator>,
    pub output: QuadraticOperator,
    pub hermitized: bool,
}

impl TransformChain {
    pub fn new(input: QuadraticOperator, steps: Vec<TransformStep>) -> Self {
        let mut current = input;
        let mut stages = Vec::with_capacity(steps.len());
        for step in &steps {
            current = step.apply(&current);
            stages.push(current);
        }
        Self {
            hermitized: current.is_hermitian(CHAIN_HERMITIAN_TOL),
            steps,
            input,
            stages,
            output: current,
        }
    }

    pub fn output_phase(&self) -> PhaseQuadratic {
        self.output.to_phase_basis()
    }

    /// Relative change of the formal discriminant between input and output.
    pub fn omega_squared_drift(&self) -> f64 {
        let a = self.input.formal_omega_squared();
        let b = self.output.formal_omega_squared();
        (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
    }
}

/// `S₁ = e^{(a†)²/2}` followed by the hermitizing Gaussian, on `w = α + β`.
pub fn case2_chain(params: &SwansonParams) -> Result<TransformChain> {
    let class = params.classify(DEFAULT_CLASSIFY_TOL);
    if class != SpectrumClass::RealCaseII {
        return Err(Error::InvalidRegion(format!(
            "case II chain needs class RealCaseII, got {class}"
        )));
    }
    let kinetic = params.beta - 2.0 * params.alpha;
    if kinetic.abs() <= DEFAULT_CLASSIFY_TOL {
        return Err(Error::SingularDenominator(
            "beta = 2 alpha: the reduced operator has no kinetic term".into(),
        ));
    }
    if kinetic < 0.0 || params.beta <= params.alpha {
        return Err(Error::InvalidRegion(format!(
            "case II chain needs beta > 2 alpha and beta > alpha (got alpha={}, beta={})",
            params.alpha, params.beta
        )));
    }

    let input = params.build();
    let squeeze = TransformStep::ladder_squeeze(Complex64::new(0.5, 0.0));
    let reduced = squeeze.apply(&input);
    let lambda = reduced
        .to_phase_basis()
        .hermitizing_lambda()
        .ok_or_else(|| Error::SingularDenominator("reduced operator has g_pp = 0".into()))?;
    Ok(TransformChain::new(
        input,
        vec![squeeze, TransformStep::gaussian(lambda)],
    ))
}

/// Single Gaussian step `λ = (β − α)/(2(w − α − β))` for case I and the
/// Hermitian limit.
pub fn case1_hermitize(params: &SwansonParams) -> Result<TransformChain> {
    let class = params.classify(DEFAULT_CLASSIFY_TOL);
    if !matches!(
        class,
        SpectrumClass::RealCaseI | SpectrumClass::HermitianLimit
    ) {
        return Err(Error::InvalidRegion(format!(
            "case I hermitization needs RealCaseI or HermitianLimit, got {class}"
        )));
    }
    let input = params.build();
    let lambda = input
        .to_phase_basis()
        .hermitizing_lambda()
        .ok_or_else(|| Error::InvalidRegion("w - alpha - beta = 0".into()))?;
    Ok(TransformChain::new(
        input,
        vec![TransformStep::gaussian(lambda)],
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralReport {
    pub agree: bool,
    pub truncation_dim: usize,
    /// `|E_n(a) − E_n(b)|` for levels converged under both truncations.
    pub deltas: Vec<Option<f64>>,
    pub levels_a: Vec<Complex64>,
    pub levels_b: Vec<Complex64>,
    pub compared: usize,
}

/// Compares the `k` lowest truncated levels of two operators at dimension `n`,
/// using only levels that are stable between `n/2` and `n` for both.
pub fn verify_isospectral(
    a: &QuadraticOperator,
    b: &QuadraticOperator,
    n: usize,
    k: usize,
    tol: f64,
) -> Result<IsospectralReport> {
    if k == 0 || n < 4 * k {
        return Err(Error::InvalidArgument(format!(
            "isospectrality check needs N >= 4k with k > 0 (got N={n}, k={k})"
        )));
    }
    let dims = [n / 2, n];
    let (ra, rb) = rayon::join(
        || convergence_study(a, &dims, k, tol),
        || convergence_study(b, &dims, k, tol),
    );
    let (ra, rb) = (ra?, rb?);

    let deltas: Vec<Option<f64>> = (0..k)
        .map(|i| (ra.stable[i] && rb.stable[i]).then(|| (ra.levels[i] - rb.levels[i]).norm()))
        .collect();
    let compared = deltas.iter().flatten().count();
    if compared == 0 {
        return Err(Error::NoConvergedLevels);
    }
    let agree = deltas.iter().flatten().all(|&d| d <= tol);
    Ok(IsospectralReport {
        agree,
        truncation_dim: n,
        deltas,
        levels_a: ra.levels,
        levels_b: rb.levels,
        compared,
    })
}
