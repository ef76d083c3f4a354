use std::f64::consts::PI;

use super::{eval_checked, map_node};
use crate::CpvError;

pub const MAX_GAUSS_POINTS: usize = 100;

/// An open interpolatory rule on [-1, 1]: nodes ascending, all strictly
/// interior, symmetric about 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub(crate) fn from_parts(nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        debug_assert_eq!(nodes.len(), weights.len());
        debug_assert!(nodes.iter().all(|x| x.abs() < 1.0));
        QuadratureRule { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of points.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Σ w_j · f(c + h·x_j) · h over [a, b], summed in ascending node order.
    pub fn apply<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        a: f64,
        b: f64,
    ) -> Result<f64, CpvError> {
        if !(a < b) {
            return Err(CpvError::invalid(format!("need a < b, got [{a}, {b}]")));
        }
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut sum = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            sum += w * eval_checked(f, map_node(center, half, x))?;
        }
        Ok(sum * half)
    }
}

/// The m-point Gauss–Legendre rule on [-1, 1].
///
/// Roots of P_m are found by Newton iteration on the three-term recurrence,
/// started from the Chebyshev-angle approximation cos(π(i − 1/4)/(m + 1/2)).
/// Only the positive half is iterated; the negative half is its mirror image,
/// so symmetry holds bit for bit.
pub fn gauss_legendre_rule(m: usize) -> Result<QuadratureRule, CpvError> {
    if m == 0 || m > MAX_GAUSS_POINTS {
        return Err(CpvError::invalid(format!(
            "Gauss-Legendre point count must be in 1..={MAX_GAUSS_POINTS}, got {m}"
        )));
    }
    let half_count = m / 2;
    let mut positive = Vec::with_capacity(half_count);
    for i in 0..half_count {
        let mut z = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(m, z);
            let step = p / dp;
            z -= step;
            if step.abs() <= 2.0 * f64::EPSILON {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(m, z);
        positive.push((z, 2.0 / ((1.0 - z * z) * dp * dp)));
    }

    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for &(z, w) in &positive {
        nodes.push(-z);
        weights.push(w);
    }
    if m % 2 == 1 {
        let (_, dp) = legendre_with_derivative(m, 0.0);
        nodes.push(0.0);
        weights.push(2.0 / (dp * dp));
    }
    for &(z, w) in positive.iter().rev() {
        nodes.push(z);
        weights.push(w);
    }
    Ok(QuadratureRule::from_parts(nodes, weights))
}

/// (P_m(z), P_m'(z)) by the Bonnet recurrence.
fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = z;
    for k in 2..=m {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * z * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    let dp = m as f64 * (z * p - p_prev) / (z * z - 1.0);
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::check_monomial_exactness;

    #[test]
    fn one_point_is_midpoint() {
        let rule = gauss_legendre_rule(1).unwrap();
        assert_eq!(rule.nodes(), &[0.0]);
        assert!((rule.weights()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_closed_form() {
        let rule = gauss_legendre_rule(2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((rule.nodes()[0] + r).abs() < 1e-15);
        assert!((rule.nodes()[1] - r).abs() < 1e-15);
        for w in rule.weights() {
            assert!((w - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn twenty_points_integrate_degree_39() {
        let rule = gauss_legendre_rule(20).unwrap();
        check_monomial_exactness(rule.nodes(), rule.weights(), 39, 1e-13).unwrap();
    }

    #[test]
    fn out_of_range_counts_rejected() {
        assert!(matches!(
            gauss_legendre_rule(0),
            Err(CpvError::InvalidArgument(_))
        ));
        assert!(matches!(
            gauss_legendre_rule(101),
            Err(CpvError::InvalidArgument(_))
        ));
    }

    #[test]
    fn structural_invariants_up_to_100() {
        for m in 1..=MAX_GAUSS_POINTS {
            let rule = gauss_legendre_rule(m).unwrap();
            assert_eq!(rule.order(), m);
            let nodes = rule.nodes();
            assert!(nodes.windows(2).all(|w| w[0] < w[1]), "m={m} not ascending");
            assert!(nodes.iter().all(|x| x.abs() < 1.0));
            for j in 0..m {
                assert_eq!(nodes[j], -nodes[m - 1 - j]);
                assert_eq!(rule.weights()[j], rule.weights()[m - 1 - j]);
            }
            assert!(rule.weights().iter().all(|&w| w > 0.0));
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-14, "m={m}: Σw = {total}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            gauss_legendre_rule(37).unwrap(),
            gauss_legendre_rule(37).unwrap()
        );
    }

    #[test]
    fn affine_mapping_keeps_exactness() {
        // single 7-point application to x^13 on [2, 5]
        let rule = gauss_legendre_rule(7).unwrap();
        let got = rule.apply(&|x: f64| x.powi(13), 2.0, 5.0).unwrap();
        let exact = (5f64.powi(14) - 2f64.powi(14)) / 14.0;
        assert!(((got - exact) / exact).abs() < 1e-12);
    }
}
