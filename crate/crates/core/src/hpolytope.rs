//! Polytopes given as an intersection of halfspaces `{x : <a_i, x> <= b_i}`.

use crate::error::{GeomError, Result};
use crate::lp::{solve_lp, LpProblem, LpStatus};
use crate::polygon::ConvexPolygon;
use crate::rotation::Rotation;
use crate::scalar::Scalar;
use crate::vector::{dot, is_finite, norm, Vec2};

#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope<T> {
    normals: Vec<Vec<T>>,
    offsets: Vec<T>,
}

impl<T: Scalar> HPolytope<T> {
    /// Validates the data and checks boundedness with an LP along each
    /// signed coordinate axis. An empty intersection counts as bounded.
    pub fn new(normals: Vec<Vec<T>>, offsets: Vec<T>) -> Result<Self> {
        let p = Self::from_parts(normals, offsets)?;
        let d = p.dim();
        if p.normals.len() < d + 1 {
            return Err(GeomError::Unbounded);
        }
        for j in 0..d {
            for s in [T::one(), -T::one()] {
                let mut c = vec![T::zero(); d];
                c[j] = s;
                match solve_lp(&LpProblem::new(c, p.normals.clone(), p.offsets.clone())?)?.status {
                    LpStatus::Unbounded => return Err(GeomError::Unbounded),
                    LpStatus::Infeasible => return Ok(p),
                    LpStatus::Optimal => {}
                }
            }
        }
        Ok(p)
    }

    /// Shape checks only; callers guarantee boundedness.
    pub(crate) fn from_parts(normals: Vec<Vec<T>>, offsets: Vec<T>) -> Result<Self> {
        if normals.len() != offsets.len() {
            return Err(GeomError::InvalidShape(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        let d = normals.first().map(Vec::len).unwrap_or(0);
        if d < 1 {
            return Err(GeomError::InvalidShape("halfspace polytope without constraints".into()));
        }
        for a in &normals {
            if a.len() != d {
                return Err(GeomError::DimensionMismatch { expected: d, got: a.len() });
            }
            if !is_finite(a) || norm(a) == T::zero() {
                return Err(GeomError::InvalidShape("zero or non-finite constraint normal".into()));
            }
        }
        if !is_finite(&offsets) {
            return Err(GeomError::InvalidShape("non-finite offset".into()));
        }
        Ok(Self { normals, offsets })
    }

    pub fn from_polygon(p: &ConvexPolygon<T>) -> Self {
        let (normals, offsets) = p.halfplanes().into_iter().map(|(n, b)| (n.to_vec(), b)).unzip();
        Self { normals, offsets }
    }

    pub fn dim(&self) -> usize {
        self.normals[0].len()
    }

    pub fn normals(&self) -> &[Vec<T>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[T] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty_set(&self) -> Result<bool> {
        let c = vec![T::zero(); self.dim()];
        let sol = solve_lp(&LpProblem::new(c, self.normals.clone(), self.offsets.clone())?)?;
        Ok(sol.status == LpStatus::Infeasible)
    }

    /// `max <x, u>`; `-inf` for an empty polytope.
    pub fn support(&self, u: &[T]) -> Result<T> {
        if u.len() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), got: u.len() });
        }
        if norm(u) == T::zero() {
            return Err(GeomError::InvalidDirection);
        }
        let sol = solve_lp(&LpProblem::new(u.to_vec(), self.normals.clone(), self.offsets.clone())?)?;
        match sol.status {
            LpStatus::Optimal => Ok(sol.value),
            LpStatus::Infeasible => Ok(T::neg_infinity()),
            LpStatus::Unbounded => Err(GeomError::Unbounded),
        }
    }

    /// Minimum normalized slack `(b_i - <a_i, x>) / |a_i|`; negative outside.
    pub fn point_margin(&self, x: &[T]) -> T {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(a, &b)| (b - dot(a, x)) / norm(a))
            .fold(T::infinity(), T::min)
    }

    pub fn rotate(&self, rot: &Rotation<T>) -> Result<Self> {
        let normals = self.normals.iter().map(|a| rot.apply(a)).collect::<Result<Vec<_>>>()?;
        Ok(Self { normals, offsets: self.offsets.clone() })
    }

    pub fn translate(&self, t: &[T]) -> Result<Self> {
        if t.len() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), got: t.len() });
        }
        let offsets = self.normals.iter().zip(&self.offsets).map(|(a, &b)| b + dot(a, t)).collect();
        Ok(Self { normals: self.normals.clone(), offsets })
    }

    /// Homothety about the origin, `alpha > 0`.
    pub fn scale(&self, alpha: T) -> Self {
        assert!(alpha > T::zero(), "scale must be positive");
        Self { normals: self.normals.clone(), offsets: self.offsets.iter().map(|&b| b * alpha).collect() }
    }

    pub(crate) fn with_offsets(&self, offsets: Vec<T>) -> Self {
        Self { normals: self.normals.clone(), offsets }
    }

    /// Vertex polygon of a planar polytope (pairwise line intersections that
    /// satisfy every constraint). Empty polytopes give `None`.
    pub fn to_polygon(&self) -> Result<Option<ConvexPolygon<T>>> {
        if self.dim() != 2 {
            return Err(GeomError::DimensionMismatch { expected: 2, got: self.dim() });
        }
        let lines: Vec<(Vec2<T>, T)> = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(a, &b)| {
                let n = norm(a);
                (Vec2::new(a[0] / n, a[1] / n), b / n)
            })
            .collect();
        let scale = self.offsets.iter().fold(T::one(), |m, b| m.max(b.abs()));
        let tol = T::lit(1e-9) * scale;
        let mut pts = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (n1, b1) = lines[i];
                let (n2, b2) = lines[j];
                let det = n1.cross(n2);
                if det.abs() <= T::lit(1e-12) {
                    continue;
                }
                let p = Vec2::new((b1 * n2.y - b2 * n1.y) / det, (n1.x * b2 - n2.x * b1) / det);
                if lines.iter().all(|(n, b)| n.dot(p) <= *b + tol) {
                    pts.push(p);
                }
            }
        }
        if pts.is_empty() {
            return Ok(None);
        }
        Ok(Some(ConvexPolygon::from_points(&pts)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_is_bounded() {
        let q = HPolytope::from_polygon(&ConvexPolygon::<f64>::unit_square());
        let q2 = HPolytope::new(q.normals().to_vec(), q.offsets().to_vec()).unwrap();
        assert_eq!(q2.len(), 4);
        assert_eq!(q2.support(&[1.0, 1.0]).unwrap(), 2.0);
    }

    #[test]
    fn strip_is_unbounded() {
        let err = HPolytope::new(
            vec![vec![0.0, 1.0], vec![0.0, -1.0], vec![0.0, 1.0]],
            vec![1.0, 1.0, 2.0],
        )
        .unwrap_err();
        assert_eq!(err, GeomError::Unbounded);
    }

    #[test]
    fn back_to_polygon() {
        let q = HPolytope::from_polygon(&ConvexPolygon::<f64>::equilateral_triangle(1.0));
        let p = q.to_polygon().unwrap().unwrap();
        assert_eq!(p.len(), 3);
        assert!((p.area().unwrap() - 3f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn empty_set() {
        let q = HPolytope::new(vec![vec![1.0], vec![-1.0]], vec![1.0, -2.0]).unwrap();
        assert!(q.is_empty_set().unwrap());
        assert_eq!(q.support(&[1.0]).unwrap(), f64::NEG_INFINITY);
    }
}
