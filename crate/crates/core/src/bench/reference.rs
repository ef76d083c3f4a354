//! Frozen reference values for the benchmark battery.
//!
//! Produced by `scripts/reference_values.py`: 40-digit mpmath evaluation by
//! two independent decompositions, with τ taken as the exact decimal literal
//! (which matters for τ = 0.9999999; see the case-7 notes in the README).
//! The two paths agree to better than 1e-20 relative.

pub const EXP_T05: f64 = 0.913_786_431_723_662_428_316_752_2;
pub const SIN550_T08: f64 = 3.102_365_350_750_204_185_982_605;
pub const SQRT_2_COS200_T07: f64 = -3.553_471_281_544_340_463_523_708;
pub const LOG2_NEAR_ENDPOINT_T099: f64 = -3.247_192_925_004_724_613_711_43;
pub const ABS_COS44_POW_TM06: f64 = 1.801_414_105_854_791_037_311_556;
pub const SQRT_1MX2_COS100_T05: f64 = 0.712_213_598_205_206_236_997_977_1;
pub const SQRT_1MX2_COS100_T09: f64 = -1.235_757_612_783_772_880_910_264;
pub const EXP_T09999999: f64 = -42.111_561_793_322_381_721_385_75;
pub const GAUSS_SIN_EXP_TM041: f64 = 2.476_078_001_084_881_349_004_714;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_1;

/// Principal-value exponential integral Ei(x) for 0 < |x| ≤ 4, by the
/// convergent series γ + ln|x| + Σ xᵏ/(k·k!).
pub fn ei(x: f64) -> f64 {
    assert!(
        x != 0.0 && x.abs() <= 4.0,
        "ei series used outside its range: {x}"
    );
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= x / kf;
        let add = term / kf;
        sum += add;
        if add.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    EULER_GAMMA + x.abs().ln() + sum
}

/// PV ∫_{-1}^{1} eˣ/(x − τ) dx = e^τ (Ei(1 − τ) − Ei(−(1 + τ))).
///
/// The caller passes 1 − τ and 1 + τ directly so that decimal τ near ±1
/// loses nothing to cancellation.
pub fn exp_closed_form(tau: f64, one_minus_tau: f64, one_plus_tau: f64) -> f64 {
    tau.exp() * (ei(one_minus_tau) - ei(-one_plus_tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ei_known_values() {
        // Ei(1) = 1.8951178163559367555, Ei(-1) = -E1(1) = -0.21938393439552027368
        assert!((ei(1.0) - 1.895_117_816_355_936_8).abs() < 1e-15);
        assert!((ei(-1.0) + 0.219_383_934_395_520_27).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_frozen_values() {
        let c1 = exp_closed_form(0.5, 0.5, 1.5);
        assert!((c1 - EXP_T05).abs() <= 1e-14 * EXP_T05.abs(), "{c1}");
        let c7 = exp_closed_form(0.9999999, 1e-7, 1.9999999);
        assert!(
            (c7 - EXP_T09999999).abs() <= 1e-13 * EXP_T09999999.abs(),
            "{c7}"
        );
    }
}
