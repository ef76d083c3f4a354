//! Empirical check of the logarithmic bound on composite Gauss quadrature of
//! 1/x over [0, 1].
//!
//! For a partition 0 = s₀ < s₁ < … < s_n = 1 and a Gauss rule applied on each
//! cell, the composite sum A(1/x) is finite because no node sits at 0. The
//! harness measures
//!
//! ```text
//!   ratio = A(1/x, 0, 1) / log(1/x₀₀)
//! ```
//!
//! where x₀₀ is the smallest node in the first cell, over many random
//! partitions, and records the worst case per (m, n) cell.
//!
//! Rule size comes in two indexings: `Points` (m points) and `UpperIndex`
//! (m is the upper index of Σ_{j=0}^{m}, i.e. m + 1 points).

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::quad::{gauss_legendre_rule, QuadratureRule, MAX_GAUSS_POINTS};
use crate::CpvError;

pub const MAX_SWEEP_N: usize = 200;
pub const MAX_SWEEP_TRIALS: usize = 1000;

/// Breakpoints 0 = s₀ < s₁ < … < s_n = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition(Vec<f64>);

impl Partition {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self, CpvError> {
        if breakpoints.len() < 2 {
            return Err(CpvError::invalid(
                "a partition needs at least two breakpoints",
            ));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(CpvError::invalid(
                "a partition must start at 0 and end at 1",
            ));
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(CpvError::invalid("breakpoints must be strictly increasing"));
        }
        Ok(Partition(breakpoints))
    }

    /// The single cell [0, 1].
    pub fn trivial() -> Self {
        Partition(vec![0.0, 1.0])
    }

    /// s_k = ratio^{k−n} for k = 1..n.
    pub fn geometric(n: usize, ratio: f64) -> Result<Self, CpvError> {
        if n == 0 || !(ratio > 1.0) {
            return Err(CpvError::invalid(
                "geometric partition needs n >= 1 and ratio > 1",
            ));
        }
        let mut s = vec![0.0];
        s.extend((1..n).map(|k| ratio.powi(k as i32 - n as i32)));
        s.push(1.0);
        Partition::new(s)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.0
    }

    /// Number of cells.
    pub fn cells(&self) -> usize {
        self.0.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionScheme {
    Uniform,
    Geometric,
    Mixed,
}

impl PartitionScheme {
    /// The scheme a sweep trial with this seed uses.
    pub fn for_seed(seed: u64) -> Self {
        match seed % 3 {
            0 => PartitionScheme::Uniform,
            1 => PartitionScheme::Geometric,
            _ => PartitionScheme::Mixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleIndexing {
    /// m is the number of points.
    Points,
    /// m is the upper summation index; the rule has m + 1 points.
    UpperIndex,
}

impl RuleIndexing {
    pub fn points(self, m: usize) -> usize {
        match self {
            RuleIndexing::Points => m,
            RuleIndexing::UpperIndex => m + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationSample {
    /// Points in the rule.
    pub m: usize,
    pub n: usize,
    pub a_value: f64,
    pub x00: f64,
    pub ratio: f64,
}

/// Composite Gauss quadrature of 1/x on `partition` with the given rule.
pub fn composite_with_rule(partition: &Partition, rule: &QuadratureRule) -> ObservationSample {
    let s = partition.breakpoints();
    let mut a_value = 0.0;
    for w in s.windows(2) {
        let center = 0.5 * (w[0] + w[1]);
        let half = 0.5 * (w[1] - w[0]);
        let cell: f64 = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&t, &wt)| wt / (center + half * t))
            .sum();
        a_value += cell * half;
    }
    // Nodes ascend, so the first one in the first cell is the smallest.
    let x00 = 0.5 * s[1] + 0.5 * s[1] * rule.nodes()[0];
    ObservationSample {
        m: rule.order(),
        n: partition.cells(),
        a_value,
        x00,
        ratio: a_value / (1.0 / x00).ln(),
    }
}

/// Composite m-point Gauss quadrature of 1/x on `partition`.
pub fn composite_value(partition: &Partition, m: usize) -> Result<ObservationSample, CpvError> {
    Ok(composite_with_rule(partition, &gauss_legendre_rule(m)?))
}

fn distinct_sorted_uniform(rng: &mut ChaCha8Rng, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = Vec::with_capacity(count);
    while pts.len() < count {
        let x = rng.gen_range(lo..hi);
        if x > lo && !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts
}

/// A random partition with `n` cells, fully determined by `(n, seed, scheme)`.
///
/// * `Uniform`: n − 1 sorted uniform breakpoints.
/// * `Geometric`: s_k = r^{k−n} with r drawn from [1.1, 10].
/// * `Mixed`: geometric breakpoints below a random cut c ∈ [0.05, 0.5], c
///   itself, and uniform breakpoints above it.
pub fn random_partition(
    n: usize,
    seed: u64,
    scheme: PartitionScheme,
) -> Result<Partition, CpvError> {
    if n == 0 {
        return Err(CpvError::invalid("a partition needs at least one cell"));
    }
    if n == 1 {
        return Ok(Partition::trivial());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let interior = n - 1;
    match scheme {
        PartitionScheme::Uniform => {
            let mut s = vec![0.0];
            s.extend(distinct_sorted_uniform(&mut rng, interior, 0.0, 1.0));
            s.push(1.0);
            Partition::new(s)
        }
        PartitionScheme::Geometric => {
            let ratio = rng.gen_range(1.1..=10.0);
            Partition::geometric(n, ratio)
        }
        PartitionScheme::Mixed => {
            let ratio: f64 = rng.gen_range(1.1..=10.0);
            let cut: f64 = rng.gen_range(0.05..=0.5);
            let geometric = interior / 2;
            let uniform = interior - geometric - 1;
            let mut s = vec![0.0];
            s.extend((1..=geometric).rev().map(|j| cut * ratio.powi(-(j as i32))));
            s.push(cut);
            s.extend(distinct_sorted_uniform(&mut rng, uniform, cut, 1.0));
            s.push(1.0);
            Partition::new(s)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub m_min: usize,
    pub m_max: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub indexing: RuleIndexing,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            m_min: 2,
            m_max: 30,
            n_min: 1,
            n_max: 50,
            trials: 200,
            seed: 2024,
            indexing: RuleIndexing::UpperIndex,
        }
    }
}

/// Worst ratio found in one (m, n) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellReport {
    pub m: usize,
    pub points: usize,
    pub n: usize,
    pub trials: usize,
    pub max_ratio: f64,
    /// Replays the worst partition via [`random_partition`] with
    /// [`PartitionScheme::for_seed`].
    pub witness_seed: u64,
}

impl CellReport {
    pub fn witness(&self) -> Result<Partition, CpvError> {
        random_partition(
            self.n,
            self.witness_seed,
            PartitionScheme::for_seed(self.witness_seed),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub indexing: RuleIndexing,
    /// Ordered by (m, n).
    pub cells: Vec<CellReport>,
}

impl SweepReport {
    /// The worst cell among those accepted by `keep`.
    pub fn max_ratio_where(&self, keep: impl Fn(&CellReport) -> bool) -> Option<&CellReport> {
        self.cells
            .iter()
            .filter(|c| keep(c))
            .max_by(|a, b| a.max_ratio.total_cmp(&b.max_ratio))
    }

    /// CSV with columns m,n,trials,max_ratio,witness_seed.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["m", "n", "trials", "max_ratio", "witness_seed"])?;
        for c in &self.cells {
            w.write_record([
                c.m.to_string(),
                c.n.to_string(),
                c.trials.to_string(),
                format!("{:?}", c.max_ratio),
                c.witness_seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one sweep trial; the trial's scheme follows from it.
pub fn trial_seed(seed: u64, m: usize, n: usize, trial: usize) -> u64 {
    let mut s = splitmix64(seed);
    s = splitmix64(s ^ m as u64);
    s = splitmix64(s ^ n as u64);
    splitmix64(s ^ trial as u64)
}

/// Runs `trials` random partitions for every (m, n) in the configured ranges.
/// Cells are evaluated in parallel; the result does not depend on scheduling.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport, CpvError> {
    let SweepConfig {
        m_min,
        m_max,
        n_min,
        n_max,
        trials,
        seed,
        indexing,
    } = *config;
    if m_min < 1 || m_min > m_max || indexing.points(m_max) > MAX_GAUSS_POINTS {
        return Err(CpvError::invalid(format!(
            "m range {m_min}..={m_max} must map into 1..={MAX_GAUSS_POINTS} points"
        )));
    }
    if n_min < 1 || n_min > n_max || n_max > MAX_SWEEP_N {
        return Err(CpvError::invalid(format!(
            "n range must lie within 1..={MAX_SWEEP_N}"
        )));
    }
    if trials == 0 || trials > MAX_SWEEP_TRIALS {
        return Err(CpvError::invalid(format!(
            "trials must lie within 1..={MAX_SWEEP_TRIALS}"
        )));
    }

    let rules = (m_min..=m_max)
        .map(|m| gauss_legendre_rule(indexing.points(m)))
        .collect::<Result<Vec<_>, _>>()?;
    let grid: Vec<(usize, usize)> = (m_min..=m_max)
        .flat_map(|m| (n_min..=n_max).map(move |n| (m, n)))
        .collect();

    let cells = grid
        .par_iter()
        .map(|&(m, n)| -> Result<CellReport, CpvError> {
            let rule = &rules[m - m_min];
            let mut best = CellReport {
                m,
                points: rule.order(),
                n,
                trials,
                max_ratio: f64::NEG_INFINITY,
                witness_seed: 0,
            };
            for trial in 0..trials {
                let s = trial_seed(seed, m, n, trial);
                let partition = random_partition(n, s, PartitionScheme::for_seed(s))?;
                let sample = composite_with_rule(&partition, rule);
                if sample.ratio > best.max_ratio {
                    best.max_ratio = sample.ratio;
                    best.witness_seed = s;
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(SweepReport { indexing, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_on_unit_interval() {
        let s = composite_value(&Partition::trivial(), 1).unwrap();
        assert_eq!(s.a_value, 2.0);
        assert_eq!(s.x00, 0.5);
        assert!((s.ratio - 2.0 / std::f64::consts::LN_2).abs() < 1e-14);
        assert!(s.ratio > 2.0);
    }

    #[test]
    fn two_point_closed_form() {
        let r = 1.0 / (2.0 * 3f64.sqrt());
        let (lo, hi) = (0.5 - r, 0.5 + r);
        let a = 0.5 * (1.0 / lo + 1.0 / hi);
        let s = composite_value(&Partition::trivial(), 2).unwrap();
        assert!((s.a_value - a).abs() < 1e-14);
        assert!((s.x00 - lo).abs() < 1e-15);
        assert!((s.ratio - a / (1.0 / lo).ln()).abs() < 1e-14);
        assert!(s.ratio < 2.0);
    }

    #[test]
    fn dyadic_geometric_seven_points() {
        let mut s = vec![0.0];
        s.extend((1..=20).map(|k| 2f64.powi(k - 20)));
        let p = Partition::new(s).unwrap();
        assert_eq!(p.cells(), 20);
        let sample = composite_value(&p, 7).unwrap();
        assert!(sample.ratio < 2.0);
        assert!(sample.a_value > 0.0 && sample.a_value.is_finite());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![0.0]).is_err());
        assert!(Partition::new(vec![0.1, 1.0]).is_err());
        assert!(Partition::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(Partition::new(vec![0.0, 0.9]).is_err());
    }

    #[test]
    fn random_partitions() {
        for scheme in [
            PartitionScheme::Uniform,
            PartitionScheme::Geometric,
            PartitionScheme::Mixed,
        ] {
            assert_eq!(
                random_partition(1, 99, scheme).unwrap(),
                Partition::trivial()
            );
            for n in [2, 3, 10, 50, 200] {
                let p = random_partition(n, 7, scheme).unwrap();
                assert_eq!(p.cells(), n);
                assert_eq!(p, random_partition(n, 7, scheme).unwrap());
            }
        }
        let a = random_partition(3, 42, PartitionScheme::Uniform).unwrap();
        assert_eq!(
            a,
            random_partition(3, 42, PartitionScheme::Uniform).unwrap()
        );
        assert_ne!(
            a,
            random_partition(3, 43, PartitionScheme::Uniform).unwrap()
        );
        let g = random_partition(10, 7, PartitionScheme::Geometric).unwrap();
        assert!(g.breakpoints()[1] < 0.5);
        assert!(random_partition(0, 1, PartitionScheme::Uniform).is_err());
    }

    #[test]
    fn ratio_shrinks_along_geometric_refinement() {
        for points in [2, 7, 15, 30] {
            let rule = gauss_legendre_rule(points).unwrap();
            for ratio in [2.0, 5.0] {
                let mut prev = f64::INFINITY;
                for n in 1..=40 {
                    let r =
                        composite_with_rule(&Partition::geometric(n, ratio).unwrap(), &rule).ratio;
                    assert!(
                        r <= prev * (1.0 + 1e-12),
                        "points={points} n={n}: {r} > {prev}"
                    );
                    prev = r;
                }
            }
        }
    }

    #[test]
    fn small_sweep_replays_witness() {
        let cfg = SweepConfig {
            m_min: 3,
            m_max: 5,
            n_min: 1,
            n_max: 6,
            trials: 30,
            seed: 11,
            indexing: RuleIndexing::Points,
        };
        let report = sweep(&cfg).unwrap();
        assert_eq!(report.cells.len(), 3 * 6);
        assert_eq!(report, sweep(&cfg).unwrap());
        for cell in &report.cells {
            let replay = composite_value(&cell.witness().unwrap(), cell.points).unwrap();
            assert_eq!(replay.ratio, cell.max_ratio);
        }
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("m,n,trials,max_ratio,witness_seed\n"));
        assert_eq!(text.lines().count(), 1 + 18);
    }

    #[test]
    fn sweep_rejects_out_of_range() {
        let base = SweepConfig::default();
        assert!(sweep(&SweepConfig { m_max: 100, ..base }).is_err());
        assert!(sweep(&SweepConfig { n_max: 201, ..base }).is_err());
        assert!(sweep(&SweepConfig {
            trials: 1001,
            ..base
        })
        .is_err());
        assert!(sweep(&SweepConfig { m_min: 0, ..base }).is_err());
    }

    #[test]
    fn indexing_offsets() {
        assert_eq!(RuleIndexing::Points.points(14), 14);
        assert_eq!(RuleIndexing::UpperIndex.points(14), 15);
    }
}
