use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::vector::{dot, is_finite, norm};

/// Euclidean ball in any dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball<T> {
    pub center: Vec<T>,
    pub radius: T,
}

impl<T: Scalar> Ball<T> {
    pub fn new(center: Vec<T>, radius: T) -> Result<Self> {
        if center.is_empty() {
            return Err(GeomError::InvalidShape("ball with empty center".into()));
        }
        if !is_finite(&center) || !radius.is_finite() || radius < T::zero() {
            return Err(GeomError::InvalidShape(format!("invalid ball radius {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `<c, u> + r |u|`.
    pub fn support(&self, u: &[T]) -> Result<T> {
        let n = norm(u);
        if n == T::zero() {
            return Err(GeomError::InvalidDirection);
        }
        Ok(dot(&self.center, u) + self.radius * n)
    }

    /// Area (d = 2) or volume (d = 3).
    pub fn volume(&self) -> Result<T> {
        let r = self.radius;
        match self.dim() {
            2 => Ok(T::PI() * r * r),
            3 => Ok(T::lit(4.0) / T::lit(3.0) * T::PI() * r * r * r),
            d => Err(GeomError::InvalidParameter(format!("ball volume in dimension {d}"))),
        }
    }

    /// Perimeter (d = 2) or surface area (d = 3).
    pub fn boundary_measure(&self) -> Result<T> {
        let r = self.radius;
        match self.dim() {
            2 => Ok(T::TAU() * r),
            3 => Ok(T::lit(4.0) * T::PI() * r * r),
            d => Err(GeomError::InvalidParameter(format!("ball surface in dimension {d}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_of_ball() {
        let b = Ball::new(vec![0.5, 0.5], 0.5).unwrap();
        assert_eq!(b.support(&[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(b.support(&[0.0, 0.0]), Err(GeomError::InvalidDirection));
    }

    #[test]
    fn negative_radius_rejected() {
        assert!(Ball::new(vec![0.0, 0.0], -1.0).is_err());
    }
}
