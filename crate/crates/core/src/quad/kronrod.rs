use std::sync::OnceLock;

use super::{check_monomial_exactness, eval_checked, map_node, QuadratureRule};
use crate::CpvError;

// Positive half of the 15-point Kronrod abscissae, descending; the odd
// indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// A 15-point Kronrod rule together with its embedded 7-point Gauss rule.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedRulePair {
    kronrod: QuadratureRule,
    /// Indices into the Kronrod nodes of the shared Gauss nodes.
    gauss_index: Vec<usize>,
    gauss_weights: Vec<f64>,
}

/// Result of one application of an embedded pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEstimate {
    /// Kronrod value.
    pub value: f64,
    /// |K15 − G7|, scaled to the interval.
    pub error: f64,
}

impl EmbeddedRulePair {
    fn build() -> Self {
        let mut nodes = Vec::with_capacity(15);
        let mut weights = Vec::with_capacity(15);
        for j in 0..7 {
            nodes.push(-XGK[j]);
            weights.push(WGK[j]);
        }
        nodes.push(0.0);
        weights.push(WGK[7]);
        for j in (0..7).rev() {
            nodes.push(XGK[j]);
            weights.push(WGK[j]);
        }

        // Ascending Kronrod positions of the Gauss nodes: 1, 3, 5, 7, 9, 11, 13.
        let gauss_index: Vec<usize> = (0..7).map(|i| 2 * i + 1).collect();
        let gauss_weights = vec![WG[0], WG[1], WG[2], WG[3], WG[2], WG[1], WG[0]];

        EmbeddedRulePair {
            kronrod: QuadratureRule::from_parts(nodes, weights),
            gauss_index,
            gauss_weights,
        }
    }

    pub fn kronrod(&self) -> &QuadratureRule {
        &self.kronrod
    }

    pub fn gauss_weights(&self) -> &[f64] {
        &self.gauss_weights
    }

    pub fn gauss_nodes(&self) -> Vec<f64> {
        self.gauss_index
            .iter()
            .map(|&i| self.kronrod.nodes()[i])
            .collect()
    }

    /// The embedded Gauss rule as a standalone rule.
    pub fn gauss(&self) -> QuadratureRule {
        QuadratureRule::from_parts(self.gauss_nodes(), self.gauss_weights.clone())
    }

    /// K15 exact to degree 22, G7 exact to degree 13, weights summing to 2.
    pub fn check_exactness(&self) -> Result<(), String> {
        check_monomial_exactness(self.kronrod.nodes(), self.kronrod.weights(), 22, 1e-13)
            .map_err(|e| format!("K15: {e}"))?;
        check_monomial_exactness(&self.gauss_nodes(), &self.gauss_weights, 13, 1e-13)
            .map_err(|e| format!("G7: {e}"))?;
        Ok(())
    }

    /// Applies both rules on [a, b] with one set of 15 evaluations.
    pub fn apply<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        a: f64,
        b: f64,
    ) -> Result<PairEstimate, CpvError> {
        if !(a < b) {
            return Err(CpvError::invalid(format!("need a < b, got [{a}, {b}]")));
        }
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut values = [0.0; 15];
        for (slot, &x) in values.iter_mut().zip(self.kronrod.nodes()) {
            let at = map_node(center, half, x);
            debug_assert!(at > a && at < b, "node {at} not interior to [{a}, {b}]");
            *slot = eval_checked(f, at)?;
        }
        let kronrod: f64 = values
            .iter()
            .zip(self.kronrod.weights())
            .map(|(v, w)| w * v)
            .sum();
        let gauss: f64 = self
            .gauss_index
            .iter()
            .zip(&self.gauss_weights)
            .map(|(&i, w)| w * values[i])
            .sum();
        Ok(PairEstimate {
            value: kronrod * half,
            error: ((kronrod - gauss) * half).abs(),
        })
    }
}

/// The shared G7/K15 pair. The transcribed constants are checked against
/// their exactness degrees on first use.
pub fn kronrod_pair_g7k15() -> &'static EmbeddedRulePair {
    static PAIR: OnceLock<EmbeddedRulePair> = OnceLock::new();
    PAIR.get_or_init(|| {
        let pair = EmbeddedRulePair::build();
        if let Err(e) = pair.check_exactness() {
            panic!("G7/K15 table failed its exactness check: {e}");
        }
        pair
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_nodes_are_kronrod_subset() {
        let pair = kronrod_pair_g7k15();
        let kn = pair.kronrod().nodes();
        for g in pair.gauss_nodes() {
            assert!(kn.contains(&g));
        }
        let g7 = crate::quad::gauss_legendre_rule(7).unwrap();
        for (a, b) in pair.gauss_nodes().iter().zip(g7.nodes()) {
            assert!((a - b).abs() < 1e-15);
        }
        for (a, b) in pair.gauss_weights().iter().zip(g7.weights()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn exactness_degrees() {
        kronrod_pair_g7k15().check_exactness().unwrap();
    }

    #[test]
    fn k15_on_squares() {
        let k = kronrod_pair_g7k15().kronrod();
        let got = k.apply(&|x: f64| x * x, -1.0, 1.0).unwrap();
        assert!((got - 2.0 / 3.0).abs() < 1e-15);
        let got = k.apply(&|x: f64| x.powi(22), -1.0, 1.0).unwrap();
        assert!((got - 2.0 / 23.0).abs() < 1e-13);
    }

    #[test]
    fn odd_symmetry() {
        let k = kronrod_pair_g7k15().kronrod();
        assert!(k.apply(&|x: f64| x, -1.0, 1.0).unwrap().abs() < 1e-16);
    }

    #[test]
    fn g7_weight_sum_times_halfwidth() {
        let g = kronrod_pair_g7k15().gauss();
        let got = g.apply(&|_| 1.0, 0.0, 3.0).unwrap();
        assert!((got - 3.0).abs() < 1e-14);
    }

    #[test]
    fn embedded_error_on_exp() {
        let est = kronrod_pair_g7k15().apply(&f64::exp, -1.0, 1.0).unwrap();
        assert!((est.value - (1f64.exp() - (-1f64).exp())).abs() < 1e-15);
        assert!(est.error <= 1e-12);
    }

    #[test]
    fn reciprocal_on_half_to_one() {
        // K15 is converged; the embedded estimate equals the G7 error,
        // which a separate 50-point Gauss rule measures independently.
        let est = kronrod_pair_g7k15()
            .apply(&|x: f64| 1.0 / x, 0.5, 1.0)
            .unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!((est.value - ln2).abs() < 1e-14);
        let g7 = crate::quad::gauss_legendre_rule(7).unwrap();
        let g7_err = (g7.apply(&|x: f64| 1.0 / x, 0.5, 1.0).unwrap() - ln2).abs();
        assert!((g7_err - 1.993e-11).abs() < 1e-13, "g7 error {g7_err:e}");
        assert!((est.error - g7_err).abs() < 0.01 * g7_err);
    }

    #[test]
    fn nonfinite_reports_abscissa() {
        let err =
            kronrod_pair_g7k15().apply(&|x: f64| if x > 0.9 { f64::NAN } else { x }, 0.0, 1.0);
        match err {
            Err(CpvError::NonFiniteIntegrand { x, value }) => {
                assert!(x > 0.9 && x < 1.0);
                assert!(value.is_nan());
            }
            other => panic!("expected nonfinite error, got {other:?}"),
        }
    }
}
