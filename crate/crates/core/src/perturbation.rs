//! Rayleigh–Schrödinger series for `H = H_D + H_N` with
//! `H_D = w(a†a + ½)` and `H_N = α a² + β (a†)²`.
//!
//! The recursion is the general one with intermediate normalisation
//! (`⟨n|ψ⟩ = 1`), so the fourth and higher orders carry their renormalisation
//! terms. Bras are plain number states; no conjugate symmetrisation is applied
//! to the non-Hermitian perturbation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SwansonParams;

/// Largest order accepted by [`rs_corrections`].
pub const MAX_ORDER: usize = 40;

/// Orders needed before the ratio diagnostic is meaningful.
pub const MIN_DIAGNOSTIC_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbSeries {
    pub level: usize,
    /// `E^(0) ..= E^(K)`.
    pub orders: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub converged: bool,
}

impl PerturbSeries {
    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn sum(&self) -> f64 {
        *self.partial_sums.last().expect("series has order 0")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceDiagnostic {
    /// Extrapolated ratio of successive nonzero terms is below one.
    pub ratio_flag: bool,
    /// `4|αβ| < w²`: inside the branch point of `√(w² − 4αβ)`.
    pub exact_radius_ok: bool,
    /// `|α/w| < 1` and `|β/w| < 1`.
    pub coupling_bound_ok: bool,
}

/// `⟨m|H_N|n⟩`.
pub fn matrix_element(params: &SwansonParams, m: usize, n: usize) -> f64 {
    let nf = n as f64;
    if m + 2 == n {
        params.alpha * (nf * (nf - 1.0)).sqrt()
    } else if m == n + 2 {
        params.beta * ((nf + 1.0) * (nf + 2.0)).sqrt()
    } else {
        0.0
    }
}

/// Energy corrections `E^(0) ..= E^(K)` for level `n`.
pub fn rs_corrections(params: &SwansonParams, n: usize, max_order: usize) -> Result<PerturbSeries> {
    if max_order > MAX_ORDER {
        return Err(Error::InvalidOrder {
            order: max_order,
            max: MAX_ORDER,
        });
    }
    let w = params.w;
    if w == 0.0 {
        return Err(Error::ZeroUnperturbedFrequency);
    }

    // States reachable from n in at most K steps of ±2.
    let lo = n - 2 * (n / 2).min(max_order);
    let width = (n - lo) / 2 + max_order + 1;
    let state = |i: usize| lo + 2 * i;
    let home = (n - lo) / 2;

    let mut coeffs: Vec<Vec<f64>> = Vec::with_capacity(max_order + 1);
    let mut unperturbed = vec![0.0; width];
    unperturbed[home] = 1.0;
    coeffs.push(unperturbed);

    let mut energies = vec![w * (n as f64 + 0.5)];
    let apply_v = |c: &[f64], i: usize| -> f64 {
        let m = state(i);
        let mut acc = 0.0;
        if i > 0 {
            acc += matrix_element(params, m, state(i - 1)) * c[i - 1];
        }
        if i + 1 < width {
            acc += matrix_element(params, m, state(i + 1)) * c[i + 1];
        }
        acc
    };

    for j in 1..=max_order {
        let prev = &coeffs[j - 1];
        energies.push(apply_v(prev, home));
        let mut next = vec![0.0; width];
        for (i, slot) in next.iter_mut().enumerate() {
            if i == home {
                continue;
            }
            let mut rhs = apply_v(prev, i);
            for l in 1..j {
                rhs -= energies[l] * coeffs[j - l][i];
            }
            *slot = rhs / (w * (n as f64 - state(i) as f64));
        }
        coeffs.push(next);
    }

    let partial_sums: Vec<f64> = energies
        .iter()
        .scan(0.0, |acc, &e| {
            *acc += e;
            Some(*acc)
        })
        .collect();
    let converged = if energies[1..].iter().all(|&e| e == 0.0) {
        true
    } else {
        ratio_test(&energies).unwrap_or(false)
    };

    Ok(PerturbSeries {
        level: n,
        orders: energies,
        partial_sums,
        converged,
    })
}

/// `−(2n+1)αβ/w`.
pub fn closed_form_order2(params: &SwansonParams, n: usize) -> Result<f64> {
    if params.w == 0.0 {
        return Err(Error::ZeroUnperturbedFrequency);
    }
    Ok(-(2.0 * n as f64 + 1.0) * params.alpha * params.beta / params.w)
}

/// `−(2n+1)(αβ)²/w³`.
pub fn closed_form_order4(params: &SwansonParams, n: usize) -> Result<f64> {
    if params.w == 0.0 {
        return Err(Error::ZeroUnperturbedFrequency);
    }
    let ab = params.alpha * params.beta;
    Ok(-(2.0 * n as f64 + 1.0) * ab * ab / params.w.powi(3))
}

pub fn exact_radius_ok(params: &SwansonParams) -> bool {
    4.0 * (params.alpha * params.beta).abs() < params.w * params.w
}

pub fn coupling_bound_ok(params: &SwansonParams) -> bool {
    (params.alpha / params.w).abs() < 1.0 && (params.beta / params.w).abs() < 1.0
}

/// Domb–Sykes style test on the nonzero (even-order) corrections.
///
/// Successive ratios `r_k = |t_{k+1}/t_k|` are extrapolated linearly in
/// `1/(k+1)` from the last two ratios; the series is judged convergent when the
/// limit is below one. Returns `None` with fewer than three nonzero terms.
fn ratio_test(orders: &[f64]) -> Option<bool> {
    let terms: Vec<f64> = orders.iter().skip(2).step_by(2).copied().collect();
    if terms.len() < 3 {
        return None;
    }
    if terms.iter().all(|&t| t == 0.0) {
        return Some(true);
    }
    let k = terms.len() - 2;
    let ratio = |i: usize| (terms[i + 1] / terms[i]).abs();
    let (r_a, r_b) = (ratio(k - 1), ratio(k));
    if !(r_a.is_finite() && r_b.is_finite()) {
        return Some(false);
    }
    // ratio index i compares terms i and i+1, i.e. powers i+1 -> i+2
    let (u_a, u_b) = (1.0 / (k as f64 + 1.0), 1.0 / (k as f64 + 2.0));
    let limit = (r_b * u_a - r_a * u_b) / (u_a - u_b);
    Some(limit < 1.0)
}

pub fn convergence_diagnostic(
    series: &PerturbSeries,
    params: &SwansonParams,
) -> Result<ConvergenceDiagnostic> {
    if series.max_order() < MIN_DIAGNOSTIC_ORDER {
        return Err(Error::InsufficientOrders {
            have: series.max_order(),
            need: MIN_DIAGNOSTIC_ORDER,
        });
    }
    let terminated = series.orders[1..].iter().all(|&e| e == 0.0);
    Ok(ConvergenceDiagnostic {
        ratio_flag: terminated || ratio_test(&series.orders).unwrap_or(false),
        exact_radius_ok: exact_radius_ok(params),
        coupling_bound_ok: coupling_bound_ok(params),
    })
}
