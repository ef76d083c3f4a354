use std::fmt;
use std::sync::Arc;

/// A named real function of one real variable.
///
/// Cloning is cheap; the function itself is shared.
#[derive(Clone)]
pub struct Integrand {
    name: String,
    func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Integrand {
    pub fn new(name: impl Into<String>, func: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Integrand {
            name: name.into(),
            func: Arc::new(func),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.func)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `t ↦ f(scale·t + shift)`.
    pub fn affine(&self, scale: f64, shift: f64) -> Integrand {
        let inner = self.clone();
        Integrand::new(format!("{}∘affine", self.name), move |t| {
            inner.eval(scale * t + shift)
        })
    }
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand")
            .field("name", &self.name)
            .finish()
    }
}
