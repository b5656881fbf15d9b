//! Numerical tolerances used across the crate.

use crate::scalar::Scalar;

/// One knob for every comparison that needs slack.
///
/// `abs` is used for constraint slacks, fit margins and inequality checks;
/// `rel` scales with the magnitude of the data (collinearity tests,
/// perimeter additivity). Defaults are `1e-9` and `1e-12`, widened to a small
/// multiple of machine epsilon for lower precision scalars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub abs: T,
    pub rel: T,
}

impl<T: Scalar> Tolerances<T> {
    pub const DEFAULT_ABS: f64 = 1e-9;
    pub const DEFAULT_REL: f64 = 1e-12;

    pub fn new(abs: T, rel: T) -> Self {
        Self { abs, rel }
    }

    /// Relative slack for a quantity of the given magnitude.
    pub fn scaled(&self, magnitude: T) -> T {
        self.rel * magnitude.abs().max(T::one())
    }
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            abs: T::lit(Self::DEFAULT_ABS).max(eps * T::lit(256.0)),
            rel: T::lit(Self::DEFAULT_REL).max(eps * T::lit(8.0)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let t = Tolerances::<f64>::default();
        assert_eq!(t.abs, 1e-9);
        assert_eq!(t.rel, 1e-12);
        let t32 = Tolerances::<f32>::default();
        assert!(t32.abs > f32::EPSILON);
        assert!(t32.rel >= f32::EPSILON);
    }
}
