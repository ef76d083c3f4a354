//! Roundoff bounds for the difference quotients and the assembly of the
//! final error estimate.
//!
//! All bounds are first order in `eps`. The two sensitivity terms model the
//! change of the integral when τ is perturbed by its own rounding error,
//! τ(1 + α) with |α| ≤ eps; the factor `eps` is applied explicitly.

use serde::{Deserialize, Serialize};

use crate::CpvError;

/// Unit roundoff of `f64` (2⁻⁵³ ≈ 1.11e-16).
pub const EPS: f64 = f64::EPSILON / 2.0;

/// Multiplier of the curvature-sensitivity term.
pub const DEFAULT_CURVATURE_CONSTANT: f64 = 8.0;

/// Coefficient replacing 32·D₁·log(1/x₀₀) in the open-rule roundoff term.
pub const ROUNDOFF_COEFFICIENT: f64 = 8.0;

/// Components of the reported error estimate. Every field is nonnegative and
/// [`ErrorBudget::total`] is their sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub quad_left: f64,
    pub quad_right: f64,
    pub quad_h: f64,
    pub roundoff: f64,
    pub log_sensitivity: f64,
    pub curvature_sensitivity: f64,
    pub cutoff: f64,
}

impl ErrorBudget {
    pub fn total(&self) -> f64 {
        self.quad_left
            + self.quad_right
            + self.quad_h
            + self.roundoff
            + self.log_sensitivity
            + self.curvature_sensitivity
            + self.cutoff
    }

    pub fn quadrature(&self) -> f64 {
        self.quad_left + self.quad_right + self.quad_h
    }
}

/// Divided-difference estimates of f′(τ) and f″(τ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimates {
    pub f1: f64,
    pub f2: f64,
    pub step: f64,
}

/// Adaptive estimates of the three quadrature pieces.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PieceEstimates {
    pub left: f64,
    pub right: f64,
    pub h: f64,
}

/// How the integral of h near 0 was treated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HTreatment {
    /// Open rule on (0, δ].
    Open,
    /// Integral over [μ, δ]; the dropped part is budgeted.
    Cutoff { mu: f64 },
}

/// Bound on |h_ε(x) − h(x)| for 0 < x ≤ δ.
pub fn lemma1_bound(x: f64, d1: f64, eps: f64) -> f64 {
    debug_assert!(x > 0.0 && d1 >= 0.0 && eps > 0.0);
    4.0 * eps * d1 / x + 4.0 * eps * d1
}

/// Bound on |g_ε(x) − g(x)| at distance `dx` = |x − τ| from the singularity.
///
/// Derived for dx ≤ 8ε but applied at every positive distance.
pub fn lemma2_bound(dx: f64, d1: f64, eps: f64) -> f64 {
    debug_assert!(dx > 0.0 && d1 >= 0.0 && eps > 0.0);
    8.0 * eps * d1 / dx
}

/// Roundoff plus truncation cost of integrating h over [μ, δ] instead of (0, δ].
pub fn cutoff_budget(mu: f64, d1: f64, eps: f64) -> f64 {
    debug_assert!(mu > 0.0 && mu <= 1.0 && d1 >= 0.0);
    16.0 * eps * d1 * (1.0 / mu).ln() + 2.0 * mu * d1
}

/// Step for the central differences around τ.
///
/// max(δ·10⁻⁴, ε^{1/3}), but never more than δ/2 so both stencil points stay
/// inside (−1, 1).
pub fn difference_step(delta: f64) -> f64 {
    (delta * 1e-4).max(EPS.cbrt()).min(0.5 * delta)
}

/// Central-difference f′(τ) and f″(τ). `f_tau` must be f(τ).
pub fn derivative_estimates<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    tau: f64,
    f_tau: f64,
    delta: f64,
) -> Result<DerivativeEstimates, CpvError> {
    if !(delta > 0.0) {
        return Err(CpvError::invalid(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let step = difference_step(delta);
    let plus = crate::quad::eval_checked(f, tau + step)?;
    let minus = crate::quad::eval_checked(f, tau - step)?;
    let f1 = (plus - minus) / (2.0 * step);
    let f2 = (plus - 2.0 * f_tau + minus) / (step * step);
    if !(f1.is_finite() && f2.is_finite()) {
        return Err(CpvError::NonFiniteIntegrand {
            x: tau,
            value: if f1.is_finite() { f2 } else { f1 },
        });
    }
    Ok(DerivativeEstimates { f1, f2, step })
}

/// ε·|τ·f(τ)| / min(1 + τ, 1 − τ): the change of the log term when τ is rounded.
pub fn sensitivity_log(f_tau: f64, tau: f64, eps: f64) -> f64 {
    debug_assert!(tau > -1.0 && tau < 1.0);
    eps * (tau * f_tau).abs() / (1.0 + tau).min(1.0 - tau)
}

/// c·ε·|τ|·√|f″(τ)|: the empirical effect of rounding τ where f′ varies fast.
pub fn sensitivity_curvature(tau: f64, f2: f64, eps: f64, c: f64) -> f64 {
    debug_assert!(f2 >= 0.0);
    c * eps * tau.abs() * f2.sqrt()
}

/// Assembles the reported error estimate.
///
/// Quadrature estimates, plus 8ε|f′(τ)| for roundoff in g and h, plus both
/// sensitivity terms, plus [`cutoff_budget`] (with D₁ ≈ |f′(τ)|) when h was
/// cut off at μ.
pub fn total_error_estimate(
    pieces: PieceEstimates,
    deriv: &DerivativeEstimates,
    f_tau: f64,
    tau: f64,
    eps: f64,
    curvature_constant: f64,
    treatment: HTreatment,
) -> ErrorBudget {
    let d1 = deriv.f1.abs();
    ErrorBudget {
        quad_left: pieces.left,
        quad_right: pieces.right,
        quad_h: pieces.h,
        roundoff: ROUNDOFF_COEFFICIENT * eps * d1,
        log_sensitivity: sensitivity_log(f_tau, tau, eps),
        curvature_sensitivity: sensitivity_curvature(tau, deriv.f2.abs(), eps, curvature_constant),
        cutoff: match treatment {
            HTreatment::Open => 0.0,
            HTreatment::Cutoff { mu } => cutoff_budget(mu, d1, eps),
        },
    }
}
