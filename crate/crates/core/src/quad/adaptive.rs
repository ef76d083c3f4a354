use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::kronrod::kronrod_pair_g7k15;
use crate::CpvError;

pub const DEFAULT_MAX_INTERVALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_intervals: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_intervals: DEFAULT_MAX_INTERVALS,
        }
    }
}

/// One cell of the final partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Subinterval {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveResult {
    pub value: f64,
    /// Σ of the per-interval |K15 − G7| estimates.
    pub error_estimate: f64,
    pub evaluations: usize,
    /// Final partition, ascending and tiling [a, b].
    pub intervals: Vec<Subinterval>,
    /// False when the interval cap (or the floating-point resolution of the
    /// abscissae) stopped refinement with the estimate still above `tol`.
    pub converged: bool,
}

impl AdaptiveResult {
    /// The result for a degenerate interval.
    pub fn empty() -> Self {
        AdaptiveResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            intervals: Vec::new(),
            converged: true,
        }
    }
}

struct Pending(Subinterval);

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    // Largest error first; ties go to the leftmost interval.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

/// Whether every mapped Kronrod node lands strictly inside [lo, hi].
fn nodes_interior(lo: f64, hi: f64) -> bool {
    let outer = kronrod_pair_g7k15().kronrod().nodes()[14];
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    c - h * outer > lo && c + h * outer < hi
}

fn can_bisect(a: f64, b: f64) -> bool {
    let mid = 0.5 * (a + b);
    a < mid && mid < b && nodes_interior(a, mid) && nodes_interior(mid, b)
}

/// Globally adaptive G7/K15 integration of `f` over [a, b].
///
/// The interval with the largest |K15 − G7| is bisected until the summed
/// estimate is at most `tol` or `limits.max_intervals` is reached. Hitting
/// the cap is not an error: the result comes back with `converged == false`.
pub fn adaptive_integrate<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    limits: Limits,
) -> Result<AdaptiveResult, CpvError> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(CpvError::invalid(format!(
            "need finite a <= b, got [{a}, {b}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(CpvError::invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if limits.max_intervals == 0 {
        return Err(CpvError::invalid("max_intervals must be at least 1"));
    }
    if a == b {
        return Ok(AdaptiveResult::empty());
    }
    if !nodes_interior(a, b) {
        return Err(CpvError::invalid(format!(
            "interval [{a:e}, {b:e}] is too narrow to place interior nodes"
        )));
    }

    let pair = kronrod_pair_g7k15();
    let apply = |lo: f64, hi: f64| -> Result<Subinterval, CpvError> {
        let est = pair.apply(f, lo, hi)?;
        Ok(Subinterval {
            a: lo,
            b: hi,
            value: est.value,
            error: est.error,
        })
    };

    let first = apply(a, b)?;
    let mut evaluations = 15;
    let mut running = first.error;
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Subinterval> = Vec::new();
    heap.push(Pending(first));

    while heap.len() + frozen.len() < limits.max_intervals {
        if running <= tol {
            // Re-sum exactly; the running total can drift by a few ulps.
            running = heap
                .iter()
                .map(|p| p.0.error)
                .chain(frozen.iter().map(|s| s.error))
                .sum();
            if running <= tol {
                break;
            }
        }
        let Some(Pending(worst)) = heap.pop() else {
            break;
        };
        if !can_bisect(worst.a, worst.b) {
            running -= worst.error;
            frozen.push(worst);
            // Its error stays in the final sum.
            running += worst.error;
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = apply(worst.a, mid)?;
        let right = apply(mid, worst.b)?;
        evaluations += 30;
        running += left.error + right.error - worst.error;
        heap.push(Pending(left));
        heap.push(Pending(right));
    }

    let mut intervals: Vec<Subinterval> = heap.into_iter().map(|p| p.0).chain(frozen).collect();
    intervals.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = intervals.iter().map(|s| s.value).sum();
    let error_estimate: f64 = intervals.iter().map(|s| s.error).sum();
    Ok(AdaptiveResult {
        value,
        error_estimate,
        evaluations,
        intervals,
        converged: error_estimate <= tol,
    })
}
