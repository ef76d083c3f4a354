//! Principal value integrals on [-1, 1] and their affine reduction.
//!
//! The production route writes
//!
//! ```text
//!   PV ∫_{-1}^{1} f(x)/(x−τ) dx = f(τ)·log((1−τ)/(1+τ))
//!                               + ∫_{|x−τ|≥δ} g(x) dx + ∫_0^δ h(x) dx
//!
//!   g(x) = (f(x) − f(τ)) / (x − τ),   h(x) = (f(τ+x) − f(τ−x)) / x,
//!   δ = min(1+τ, 1−τ)
//! ```
//!
//! where the g-integral runs over whichever of [-1, τ−δ] and [τ+δ, 1] is
//! nonempty. No quadrature node ever comes closer than δ to τ.

pub mod strategy;

use serde::Serialize;

use crate::error_model::{
    derivative_estimates, total_error_estimate, ErrorBudget, HTreatment, PieceEstimates,
    DEFAULT_CURVATURE_CONSTANT, EPS,
};
use crate::quad::{adaptive_integrate, eval_checked, AdaptiveResult, Limits};
use crate::{CpvError, Integrand};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_METHOD: &str = "open";

/// A principal value integral PV ∫_a^b f(x)/(x−τ) dx with its solver settings.
#[derive(Debug, Clone)]
pub struct CpvProblem {
    pub f: Integrand,
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    /// Absolute tolerance shared by the quadrature pieces.
    pub tol: f64,
    /// Registered strategy name.
    pub method: String,
    /// Lower limit of the h-integral for the `cutoff` method, in [-1, 1]
    /// coordinates.
    pub mu: f64,
    pub curvature_constant: f64,
    pub limits: Limits,
}

impl CpvProblem {
    /// Problem on [-1, 1] with default settings.
    pub fn new(f: Integrand, tau: f64) -> Self {
        CpvProblem {
            f,
            tau,
            a: -1.0,
            b: 1.0,
            tol: DEFAULT_TOLERANCE,
            method: DEFAULT_METHOD.to_string(),
            mu: EPS,
            curvature_constant: DEFAULT_CURVATURE_CONSTANT,
            limits: Limits::default(),
        }
    }

    pub fn on_interval(mut self, a: f64, b: f64) -> Self {
        self.a = a;
        self.b = b;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_method(mut self, method: impl Into<String>) -> Self {
        self.method = method.into();
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_curvature_constant(mut self, c: f64) -> Self {
        self.curvature_constant = c;
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn solve(&self) -> Result<CpvResult, CpvError> {
        cpv_general(self)
    }

    fn validate(&self) -> Result<(), CpvError> {
        if !(self.a.is_finite() && self.b.is_finite() && self.tau.is_finite()) {
            return Err(CpvError::invalid("a, b and tau must be finite"));
        }
        if !(self.a < self.tau && self.tau < self.b) {
            return Err(CpvError::invalid(format!(
                "tau = {} must lie strictly inside ({}, {})",
                self.tau, self.a, self.b
            )));
        }
        if !(self.tol > 0.0) {
            return Err(CpvError::invalid(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if !(self.curvature_constant >= 0.0) {
            return Err(CpvError::invalid("curvature constant must be nonnegative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpvResult {
    pub value: f64,
    /// Equal to `budget.total()`.
    pub error_estimate: f64,
    pub budget: ErrorBudget,
    /// Integrand evaluations spent by the quadrature pieces.
    pub evaluations: usize,
    /// False if any quadrature piece stopped short of its tolerance.
    pub converged: bool,
    pub method: String,
}

impl CpvResult {
    pub(crate) fn assemble(
        value: f64,
        budget: ErrorBudget,
        pieces: [&AdaptiveResult; 3],
        method: &str,
    ) -> Self {
        CpvResult {
            value,
            error_estimate: budget.total(),
            budget,
            evaluations: pieces.iter().map(|p| p.evaluations).sum(),
            converged: pieces.iter().all(|p| p.converged),
            method: method.to_string(),
        }
    }
}

/// min(1 + τ, 1 − τ).
pub fn delta(tau: f64) -> Result<f64, CpvError> {
    if !(tau > -1.0 && tau < 1.0) {
        return Err(CpvError::invalid(format!(
            "tau must lie in (-1, 1), got {tau}"
        )));
    }
    Ok((1.0 + tau).min(1.0 - tau))
}

/// A closed interval (lo, hi).
pub type Span = (f64, f64);

/// The one-sided intervals left over once [τ−δ, τ+δ] is removed from
/// [-1, 1]. At most one is nonempty; both are empty at τ = 0.
pub fn side_intervals(tau: f64, delta: f64) -> (Option<Span>, Option<Span>) {
    // δ = 1+τ empties the left side, δ = 1−τ the right one.
    let left_empty = 1.0 + tau <= 1.0 - tau;
    let right_empty = 1.0 - tau <= 1.0 + tau;
    (
        (!left_empty).then_some((-1.0, tau - delta)),
        (!right_empty).then_some((tau + delta, 1.0)),
    )
}

/// g(x) = (f(x) − f(τ)) / (x − τ), evaluated literally. Undefined at x = τ.
pub fn make_g(f: &Integrand, tau: f64) -> Integrand {
    let f_tau = f.eval(tau);
    let inner = f.clone();
    Integrand::new(format!("g[{}]", f.name()), move |x| {
        (inner.eval(x) - f_tau) / (x - tau)
    })
}

/// h(x) = (f(τ+x) − f(τ−x)) / x, evaluated literally. Undefined at x = 0.
pub fn make_h(f: &Integrand, tau: f64) -> Integrand {
    let inner = f.clone();
    Integrand::new(format!("h[{}]", f.name()), move |x| {
        (inner.eval(tau + x) - inner.eval(tau - x)) / x
    })
}

/// f(τ)·log((1−τ)/(1+τ)).
pub fn log_term(f: &Integrand, tau: f64) -> Result<f64, CpvError> {
    delta(tau)?;
    Ok(log_term_from_value(f.eval(tau), tau))
}

pub(crate) fn log_term_from_value(f_tau: f64, tau: f64) -> f64 {
    f_tau * ((1.0 - tau) / (1.0 + tau)).ln()
}

fn integrate_span<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    span: Option<(f64, f64)>,
    tol: f64,
    limits: Limits,
) -> Result<AdaptiveResult, CpvError> {
    match span {
        None => Ok(AdaptiveResult::empty()),
        Some((lo, hi)) => adaptive_integrate(f, lo, hi, tol, limits),
    }
}

/// The combined formula: log term, g on the side interval, h on (L, δ].
pub(crate) fn combined_formula(
    problem: &CpvProblem,
    treatment: HTreatment,
    method: &str,
) -> Result<CpvResult, CpvError> {
    let f = &problem.f;
    let tau = problem.tau;
    let d = delta(tau)?;
    let f_tau = eval_checked(&|x| f.eval(x), tau)?;

    let h_lower = match treatment {
        HTreatment::Open => 0.0,
        HTreatment::Cutoff { mu } => {
            if !(mu > 0.0 && mu <= d) {
                return Err(CpvError::invalid(format!(
                    "mu must lie in (0, delta = {d:e}], got {mu:e}"
                )));
            }
            mu
        }
    };

    let g = |x: f64| (f.eval(x) - f_tau) / (x - tau);
    let h = |x: f64| (f.eval(tau + x) - f.eval(tau - x)) / x;
    let piece_tol = problem.tol / 3.0;
    let (left_span, right_span) = side_intervals(tau, d);

    let left = integrate_span(&g, left_span, piece_tol, problem.limits)?;
    let right = integrate_span(&g, right_span, piece_tol, problem.limits)?;
    let hres = integrate_span(
        &h,
        (h_lower < d).then_some((h_lower, d)),
        piece_tol,
        problem.limits,
    )?;

    let deriv = derivative_estimates(&|x| f.eval(x), tau, f_tau, d)?;
    let budget = total_error_estimate(
        PieceEstimates {
            left: left.error_estimate,
            right: right.error_estimate,
            h: hres.error_estimate,
        },
        &deriv,
        f_tau,
        tau,
        EPS,
        problem.curvature_constant,
        treatment,
    );

    let value = log_term_from_value(f_tau, tau) + left.value + right.value + hres.value;
    Ok(CpvResult::assemble(
        value,
        budget,
        [&left, &right, &hres],
        method,
    ))
}

/// One-sided integral of f(x)/(x−τ) plus ∫_0^δ h, without subtracting f(τ).
///
/// The one-sided piece becomes nearly singular as |τ| → 1.
pub(crate) fn longman_formula(problem: &CpvProblem, method: &str) -> Result<CpvResult, CpvError> {
    let f = &problem.f;
    let tau = problem.tau;
    let d = delta(tau)?;
    let kernel = |x: f64| f.eval(x) / (x - tau);
    let h = |x: f64| (f.eval(tau + x) - f.eval(tau - x)) / x;
    let piece_tol = problem.tol / 2.0;
    let (left_span, right_span) = side_intervals(tau, d);

    let left = integrate_span(&kernel, left_span, piece_tol, problem.limits)?;
    let right = integrate_span(&kernel, right_span, piece_tol, problem.limits)?;
    let hres = adaptive_integrate(&h, 0.0, d, piece_tol, problem.limits)?;

    let budget = ErrorBudget {
        quad_left: left.error_estimate,
        quad_right: right.error_estimate,
        quad_h: hres.error_estimate,
        ..ErrorBudget::default()
    };
    Ok(CpvResult::assemble(
        left.value + right.value + hres.value,
        budget,
        [&left, &right, &hres],
        method,
    ))
}

/// f(τ)·log((1−τ)/(1+τ)) + ∫_{-1}^{1} g over the whole interval.
///
/// Quadrature nodes may fall arbitrarily close to τ, where g loses digits to
/// cancellation; a node landing exactly on τ yields a nonfinite-integrand
/// error.
pub(crate) fn subtraction_formula(
    problem: &CpvProblem,
    method: &str,
) -> Result<CpvResult, CpvError> {
    let f = &problem.f;
    let tau = problem.tau;
    delta(tau)?;
    let f_tau = eval_checked(&|x| f.eval(x), tau)?;
    let g = |x: f64| (f.eval(x) - f_tau) / (x - tau);
    let whole = adaptive_integrate(&g, -1.0, 1.0, problem.tol, problem.limits)?;
    let budget = ErrorBudget {
        quad_left: whole.error_estimate,
        ..ErrorBudget::default()
    };
    let empty = AdaptiveResult::empty();
    Ok(CpvResult::assemble(
        log_term_from_value(f_tau, tau) + whole.value,
        budget,
        [&whole, &empty, &empty],
        method,
    ))
}

/// Solves a problem posed on [-1, 1] with the strategy named in `problem.method`.
pub fn cpv_standard(problem: &CpvProblem) -> Result<CpvResult, CpvError> {
    if problem.a != -1.0 || problem.b != 1.0 {
        return Err(CpvError::invalid(format!(
            "cpv_standard needs [a, b] = [-1, 1], got [{}, {}]",
            problem.a, problem.b
        )));
    }
    problem.validate()?;
    strategy::builtin_registry()
        .resolve(&problem.method)?
        .evaluate(problem)
}

/// Solves a problem on any finite [a, b].
///
/// x = ((b−a)t + a + b)/2 maps [-1, 1] onto [a, b]; the Cauchy kernel is
/// invariant under it, so the answer is the [-1, 1] integral of f∘map at
/// τ′ = (2τ − a − b)/(b − a).
pub fn cpv_general(problem: &CpvProblem) -> Result<CpvResult, CpvError> {
    problem.validate()?;
    if problem.a == -1.0 && problem.b == 1.0 {
        return cpv_standard(problem);
    }
    let (a, b) = (problem.a, problem.b);
    let mut reduced = problem.clone();
    reduced.f = problem.f.affine(0.5 * (b - a), 0.5 * (a + b));
    reduced.tau = (2.0 * problem.tau - a - b) / (b - a);
    reduced.a = -1.0;
    reduced.b = 1.0;
    cpv_standard(&reduced)
}

/// The one-sided plus symmetric-difference route, kept as a cross-check.
pub fn longman_split(f: &Integrand, tau: f64, tol: f64) -> Result<CpvResult, CpvError> {
    cpv_standard(
        &CpvProblem::new(f.clone(), tau)
            .with_tol(tol)
            .with_method("longman"),
    )
}

/// Plain singularity subtraction over the whole interval, kept to exhibit
/// its cancellation near τ.
pub fn subtract_singularity(f: &Integrand, tau: f64, tol: f64) -> Result<CpvResult, CpvError> {
    cpv_standard(
        &CpvProblem::new(f.clone(), tau)
            .with_tol(tol)
            .with_method("subtract"),
    )
}
