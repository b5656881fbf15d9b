//! Rotations: a planar angle or a unit quaternion.

use rand::Rng;

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::vector::{Vec2, Vec3};

/// Unit quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion<T> {
    w: T,
    x: T,
    y: T,
    z: T,
}

impl<T: Scalar> UnitQuaternion<T> {
    /// Normalizes the components; fails on a zero or non-finite quaternion.
    pub fn new(w: T, x: T, y: T, z: T) -> Result<Self> {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if !(n.is_finite() && n > T::zero()) {
            return Err(GeomError::InvalidParameter("quaternion must be nonzero and finite".into()));
        }
        Ok(Self { w: w / n, x: x / n, y: y / n, z: z / n })
    }

    pub fn identity() -> Self {
        Self { w: T::one(), x: T::zero(), y: T::zero(), z: T::zero() }
    }

    /// Rotation by `angle` about the (not necessarily unit) `axis`.
    pub fn from_axis_angle(axis: Vec3<T>, angle: T) -> Result<Self> {
        let a = axis.normalized().ok_or(GeomError::InvalidDirection)?;
        let (s, c) = (angle / T::lit(2.0)).sin_cos();
        Self::new(c, a.x * s, a.y * s, a.z * s)
    }

    /// Uniformly distributed rotation (Shoemake's subgroup algorithm).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let u3: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let a = (1.0 - u1).sqrt();
        let b = u1.sqrt();
        let q = [a * u2.sin(), a * u2.cos(), b * u3.sin(), b * u3.cos()];
        Self::new(T::lit(q[3]), T::lit(q[0]), T::lit(q[1]), T::lit(q[2]))
            .expect("Shoemake output is a unit quaternion")
    }

    pub fn components(&self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn norm(&self) -> T {
        self.components().iter().map(|c| *c * *c).sum::<T>().sqrt()
    }

    pub fn apply(&self, v: Vec3<T>) -> Vec3<T> {
        let q = Vec3::new(self.x, self.y, self.z);
        let two = T::lit(2.0);
        let t = q.cross(v).scale(two);
        v + t.scale(self.w) + q.cross(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rotation<T> {
    /// Counter-clockwise angle in radians.
    Planar(T),
    Spatial(UnitQuaternion<T>),
}

impl<T: Scalar> Rotation<T> {
    pub fn identity(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(Self::Planar(T::zero())),
            3 => Ok(Self::Spatial(UnitQuaternion::identity())),
            d => Err(GeomError::InvalidParameter(format!("rotations in dimension {d}"))),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Planar(_) => 2,
            Self::Spatial(_) => 3,
        }
    }

    pub fn apply2(&self, v: Vec2<T>) -> Result<Vec2<T>> {
        match self {
            Self::Planar(a) => Ok(v.rotated(*a)),
            Self::Spatial(_) => Err(GeomError::DimensionMismatch { expected: 3, got: 2 }),
        }
    }

    pub fn apply3(&self, v: Vec3<T>) -> Result<Vec3<T>> {
        match self {
            Self::Spatial(q) => Ok(q.apply(v)),
            Self::Planar(_) => Err(GeomError::DimensionMismatch { expected: 2, got: 3 }),
        }
    }

    /// Rotates a coordinate slice of matching dimension.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        match (self, v) {
            (Self::Planar(a), [x, y]) => Ok(Vec2::new(*x, *y).rotated(*a).to_vec()),
            (Self::Spatial(q), [x, y, z]) => Ok(q.apply(Vec3::new(*x, *y, *z)).to_vec()),
            _ => Err(GeomError::DimensionMismatch { expected: self.dim(), got: v.len() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn quaternion_quarter_turn_about_z() {
        let q = UnitQuaternion::from_axis_angle(Vec3::new(0.0, 0.0, 1.0), std::f64::consts::FRAC_PI_2)
            .unwrap();
        let r = q.apply(Vec3::new(1.0, 0.0, 0.0));
        assert!((r - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn random_quaternions_are_unit_and_isotropic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6B61_6B65);
        let mut mean = Vec3::<f64>::zero();
        let n = 20_000;
        for _ in 0..n {
            let q = UnitQuaternion::<f64>::random(&mut rng);
            assert!((q.norm() - 1.0).abs() < 1e-12);
            mean += q.apply(Vec3::new(0.0, 0.0, 1.0));
        }
        // Images of a fixed axis are uniform on the sphere: mean near zero.
        assert!(mean.scale(1.0 / n as f64).norm() < 0.03);
    }

    #[test]
    fn dimension_checks() {
        let r = Rotation::<f64>::Planar(0.3);
        assert!(r.apply(&[1.0, 2.0, 3.0]).is_err());
        assert!(Rotation::<f64>::identity(4).is_err());
    }
}
