//! Named principal-value strategies.
//!
//! Every strategy takes a problem already posed on [-1, 1] and returns a
//! [`CpvResult`]. The built-in registry holds:
//!
//! | name       | route                                                       |
//! |------------|-------------------------------------------------------------|
//! | `open`     | log term + g on the side interval + h on (0, δ] (open rule) |
//! | `cutoff`   | same, with h integrated over [μ, δ] and the rest budgeted   |
//! | `longman`  | one-sided f/(x−τ) + h; cross-check only                     |
//! | `subtract` | log term + g over all of [-1, 1]; cross-check only          |

use std::sync::OnceLock;

use super::{combined_formula, longman_formula, subtraction_formula, CpvProblem, CpvResult};
use crate::error_model::HTreatment;
use crate::CpvError;

pub trait CpvStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// One-line description for listings.
    fn summary(&self) -> &'static str;

    /// Whether the result carries the full roundoff and sensitivity budget.
    fn full_error_model(&self) -> bool {
        true
    }

    fn evaluate(&self, problem: &CpvProblem) -> Result<CpvResult, CpvError>;
}

pub struct OpenRule;

impl CpvStrategy for OpenRule {
    fn name(&self) -> &'static str {
        "open"
    }

    fn summary(&self) -> &'static str {
        "log term plus g and h integrals; h on (0, delta] by an open rule"
    }

    fn evaluate(&self, problem: &CpvProblem) -> Result<CpvResult, CpvError> {
        combined_formula(problem, HTreatment::Open, self.name())
    }
}

pub struct Cutoff;

impl CpvStrategy for Cutoff {
    fn name(&self) -> &'static str {
        "cutoff"
    }

    fn summary(&self) -> &'static str {
        "log term plus g and h integrals; h on [mu, delta], truncation budgeted"
    }

    fn evaluate(&self, problem: &CpvProblem) -> Result<CpvResult, CpvError> {
        combined_formula(problem, HTreatment::Cutoff { mu: problem.mu }, self.name())
    }
}

pub struct LongmanSplit;

impl CpvStrategy for LongmanSplit {
    fn name(&self) -> &'static str {
        "longman"
    }

    fn summary(&self) -> &'static str {
        "one-sided f/(x-tau) integral plus h; quadrature estimate only"
    }

    fn full_error_model(&self) -> bool {
        false
    }

    fn evaluate(&self, problem: &CpvProblem) -> Result<CpvResult, CpvError> {
        longman_formula(problem, self.name())
    }
}

pub struct SubtractSingularity;

impl CpvStrategy for SubtractSingularity {
    fn name(&self) -> &'static str {
        "subtract"
    }

    fn summary(&self) -> &'static str {
        "log term plus g over the whole interval; quadrature estimate only"
    }

    fn full_error_model(&self) -> bool {
        false
    }

    fn evaluate(&self, problem: &CpvProblem) -> Result<CpvResult, CpvError> {
        subtraction_formula(problem, self.name())
    }
}

#[derive(Default)]
pub struct StrategyRegistry {
    entries: Vec<Box<dyn CpvStrategy>>,
}

impl StrategyRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut registry = Self::new();
        for s in [
            Box::new(OpenRule) as Box<dyn CpvStrategy>,
            Box::new(Cutoff),
            Box::new(LongmanSplit),
            Box::new(SubtractSingularity),
        ] {
            registry.register(s).expect("builtin names are distinct");
        }
        registry
    }

    pub fn register(&mut self, strategy: Box<dyn CpvStrategy>) -> Result<(), CpvError> {
        if self.get(strategy.name()).is_some() {
            return Err(CpvError::DuplicateMethod(strategy.name().to_string()));
        }
        self.entries.push(strategy);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn CpvStrategy> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    /// Like [`get`](Self::get), with an error listing the known names.
    pub fn resolve(&self, name: &str) -> Result<&dyn CpvStrategy, CpvError> {
        self.get(name).ok_or_else(|| CpvError::UnknownMethod {
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    /// Names in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CpvStrategy> {
        self.entries.iter().map(|s| s.as_ref())
    }
}

pub fn builtin_registry() -> &'static StrategyRegistry {
    static REGISTRY: OnceLock<StrategyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(StrategyRegistry::with_builtins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Integrand;

    struct Halved;

    impl CpvStrategy for Halved {
        fn name(&self) -> &'static str {
            "halved"
        }
        fn summary(&self) -> &'static str {
            "open rule at half tolerance"
        }
        fn evaluate(&self, problem: &CpvProblem) -> Result<CpvResult, CpvError> {
            let mut p = problem.clone();
            p.tol *= 0.5;
            OpenRule.evaluate(&p)
        }
    }

    #[test]
    fn builtin_names() {
        assert_eq!(
            builtin_registry().names(),
            vec!["open", "cutoff", "longman", "subtract"]
        );
        assert!(builtin_registry().get("open").unwrap().full_error_model());
        assert!(!builtin_registry()
            .get("longman")
            .unwrap()
            .full_error_model());
    }

    #[test]
    fn duplicate_rejected() {
        let mut r = StrategyRegistry::with_builtins();
        assert!(matches!(
            r.register(Box::new(OpenRule)),
            Err(CpvError::DuplicateMethod(_))
        ));
    }

    #[test]
    fn custom_strategy_runs() {
        let mut r = StrategyRegistry::new();
        r.register(Box::new(Halved)).unwrap();
        let p = CpvProblem::new(Integrand::new("exp", f64::exp), 0.25);
        let got = r.resolve("halved").unwrap().evaluate(&p).unwrap();
        let reference = OpenRule.evaluate(&p).unwrap();
        assert!((got.value - reference.value).abs() < 1e-13);
        assert!(r.resolve("open").is_err());
    }
}
