//! Quadrature rules and the adaptive integrator.

mod adaptive;
mod gauss;
mod kronrod;

pub use adaptive::{
    adaptive_integrate, AdaptiveResult, Limits, Subinterval, DEFAULT_MAX_INTERVALS,
};
pub use gauss::{gauss_legendre_rule, QuadratureRule, MAX_GAUSS_POINTS};
pub use kronrod::{kronrod_pair_g7k15, EmbeddedRulePair, PairEstimate};

/// Exact ∫_{-1}^{1} x^k dx.
pub fn monomial_integral(k: u32) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        2.0 / (k as f64 + 1.0)
    }
}

/// Checks that `nodes`/`weights` integrate x^0..=x^degree over [-1, 1]
/// within `tol` (relative for even powers, absolute for odd ones).
pub(crate) fn check_monomial_exactness(
    nodes: &[f64],
    weights: &[f64],
    degree: u32,
    tol: f64,
) -> Result<(), String> {
    for k in 0..=degree {
        let approx: f64 = nodes
            .iter()
            .zip(weights)
            .map(|(&x, &w)| w * x.powi(k as i32))
            .sum();
        let exact = monomial_integral(k);
        let err = if exact == 0.0 {
            approx.abs()
        } else {
            ((approx - exact) / exact).abs()
        };
        if err > tol {
            return Err(format!(
                "x^{k}: rule gives {approx:e}, exact {exact:e} (error {err:e})"
            ));
        }
    }
    Ok(())
}

/// Maps a node on [-1, 1] into [a, b].
#[inline]
pub(crate) fn map_node(center: f64, half: f64, node: f64) -> f64 {
    center + half * node
}

pub(crate) fn eval_checked<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    x: f64,
) -> Result<f64, crate::CpvError> {
    let value = f(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(crate::CpvError::NonFiniteIntegrand { x, value })
    }
}
