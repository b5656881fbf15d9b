//! Minkowski sums, Minkowski interpolation and Steiner coefficients.

use crate::ball::Ball;
use crate::error::{GeomError, Result};
use crate::polygon::{lowest_index, ConvexPolygon};
use crate::polytope3::{hull3, VPolytope3};
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::vector::{Vec2, Vec3};

/// Edge angles closer than this are treated as parallel and merged.
const PARALLEL_RAD: f64 = 1e-12;

/// Sum of two convex polygons by merging their edge sequences in normal order.
///
/// Runs in `O(n + m)`; the result has at most `n + m` vertices. Points and
/// segments are handled through the pairwise-sum hull.
pub fn minkowski_sum2<T: Scalar>(p: &ConvexPolygon<T>, r: &ConvexPolygon<T>) -> ConvexPolygon<T> {
    if p.is_degenerate() || r.is_degenerate() {
        return pairwise_hull2(p, r);
    }
    let pv = p.vertices();
    let rv = r.vertices();
    let (n, m) = (pv.len(), rv.len());
    let (ps, rs) = (lowest_index(pv), lowest_index(rv));
    let angles = |v: &[Vec2<T>], start: usize| -> Vec<T> {
        let k = v.len();
        (0..k)
            .map(|i| {
                let e = v[(start + i + 1) % k] - v[(start + i) % k];
                let a = e.angle();
                if a < T::zero() { a + T::TAU() } else { a }
            })
            .collect()
    };
    let pa = angles(pv, ps);
    let ra = angles(rv, rs);
    let tie = T::lit(PARALLEL_RAD);

    let mut out = Vec::with_capacity(n + m);
    let (mut i, mut j) = (0, 0);
    while i < n || j < m {
        out.push(pv[(ps + i) % n] + rv[(rs + j) % m]);
        if i == n {
            j += 1;
        } else if j == m {
            i += 1;
        } else if (pa[i] - ra[j]).abs() < tie {
            i += 1;
            j += 1;
        } else if pa[i] < ra[j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    ConvexPolygon::new(out).unwrap_or_else(|_| pairwise_hull2(p, r))
}

/// Hull of all pairwise vertex sums; `O(nm log nm)` reference construction.
pub fn pairwise_hull2<T: Scalar>(p: &ConvexPolygon<T>, r: &ConvexPolygon<T>) -> ConvexPolygon<T> {
    let pts: Vec<Vec2<T>> = p
        .vertices()
        .iter()
        .flat_map(|&a| r.vertices().iter().map(move |&b| a + b))
        .collect();
    ConvexPolygon::from_points(&pts)
}

/// Sum of two 3D polytopes as the hull of all pairwise vertex sums.
pub fn minkowski_sum3<T: Scalar>(p: &VPolytope3<T>, r: &VPolytope3<T>) -> Result<VPolytope3<T>> {
    minkowski_sum3_points(p.vertices(), r.vertices())
}

/// Hull of `{a + b}` over two point sets; either may be a single point.
pub fn minkowski_sum3_points<T: Scalar>(a: &[Vec3<T>], b: &[Vec3<T>]) -> Result<VPolytope3<T>> {
    let pts: Vec<Vec3<T>> = a.iter().flat_map(|&x| b.iter().map(move |&y| x + y)).collect();
    hull3(&pts)
}

/// Minkowski interpolation `(1 - λ) P0 + λ P1`.
///
/// The endpoints return clones of the inputs, so `λ = 0` gives `P0` exactly.
pub fn interpolate<T: Scalar>(p0: &Shape<T>, p1: &Shape<T>, lambda: T) -> Result<Shape<T>> {
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(GeomError::InvalidParameter(format!("interpolation weight {lambda} outside [0, 1]")));
    }
    if p0.dim() != p1.dim() {
        return Err(GeomError::DimensionMismatch { expected: p0.dim(), got: p1.dim() });
    }
    if lambda == T::zero() {
        return Ok(p0.clone());
    }
    if lambda == T::one() {
        return Ok(p1.clone());
    }
    let mu = T::one() - lambda;
    match (p0, p1) {
        (Shape::Polygon(a), Shape::Polygon(b)) => {
            Ok(Shape::Polygon(minkowski_sum2(&a.scale(mu), &b.scale(lambda))))
        }
        (Shape::Polytope3(a), Shape::Polytope3(b)) => {
            Ok(Shape::Polytope3(minkowski_sum3(&a.scale(mu), &b.scale(lambda))?))
        }
        (Shape::Ball(a), Shape::Ball(b)) => Ok(Shape::Ball(Ball::new(
            a.center.iter().zip(&b.center).map(|(&x, &y)| mu * x + lambda * y).collect(),
            mu * a.radius + lambda * b.radius,
        )?)),
        _ => Err(GeomError::InvalidParameter(format!(
            "interpolation between a {} and a {}",
            p0.kind(),
            p1.kind()
        ))),
    }
}

/// Coefficients of `vol(K + rB) = v + s r + m r^2 + b r^3` for a 3D polytope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteinerCoeffs3<T> {
    pub v: T,
    pub s: T,
    pub m: T,
    pub b: T,
}

impl<T: Scalar> SteinerCoeffs3<T> {
    /// Volume of the parallel body at distance `r >= 0`.
    pub fn parallel_volume(&self, r: T) -> T {
        self.v + r * (self.s + r * (self.m + r * self.b))
    }
}

/// Steiner coefficients: volume, surface area, half the edge-length-weighted
/// sum of exterior dihedral angles, and the unit-ball volume.
pub fn steiner_coeffs3<T: Scalar>(k: &VPolytope3<T>) -> Result<SteinerCoeffs3<T>> {
    let v = k.volume();
    if v <= T::zero() {
        return Err(GeomError::DegenerateShape("zero-volume polytope".into()));
    }
    let m = k.edges().iter().map(|e| e.length * e.exterior_angle).sum::<T>() / T::lit(2.0);
    Ok(SteinerCoeffs3 { v, s: k.surface_area(), m, b: T::lit(4.0) / T::lit(3.0) * T::PI() })
}

/// Quermassintegral `W_m`, for `d ∈ {2, 3}` and `0 <= m <= d`.
pub fn quermass<T: Scalar>(k: &Shape<T>, m: usize) -> Result<T> {
    let d = k.dim();
    if !(d == 2 || d == 3) || m > d {
        return Err(GeomError::InvalidParameter(format!("quermassintegral W_{m} in dimension {d}")));
    }
    let three = T::lit(3.0);
    match (k, d, m) {
        (_, 2, 0) => k.volume(),
        (_, 2, 1) => Ok(k.boundary_measure()? / T::lit(2.0)),
        (_, 2, _) => Ok(T::PI()),
        (_, 3, 3) => Ok(T::lit(4.0) / three * T::PI()),
        (Shape::Polytope3(p), 3, _) => {
            let c = steiner_coeffs3(p)?;
            Ok([c.v, c.s / three, c.m / three][m])
        }
        (Shape::Ball(b), 3, _) => {
            let r = b.radius;
            Ok(T::lit(4.0) / three * T::PI() * r.powi(3 - m as i32))
        }
        _ => Err(GeomError::InvalidParameter(format!("quermassintegral of a {}", k.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn v(x: f64, y: f64) -> Vec2<f64> {
        Vec2::new(x, y)
    }

    #[test]
    fn square_plus_square() {
        let s = ConvexPolygon::<f64>::unit_square();
        let sum = minkowski_sum2(&s, &s);
        assert_eq!(sum.len(), 4);
        assert_eq!(sum.perimeter().unwrap(), 8.0);
    }

    #[test]
    fn square_plus_diamond_is_octagon() {
        let s = ConvexPolygon::<f64>::unit_square();
        let d = ConvexPolygon::from_points(&[v(0.5, 0.0), v(0.0, 0.5), v(-0.5, 0.0), v(0.0, -0.5)]);
        let sum = minkowski_sum2(&s, &d);
        assert_eq!(sum.len(), 8);
        assert_relative_eq!(sum.perimeter().unwrap(), 4.0 + 2.0 * 2f64.sqrt(), max_relative = 1e-14);
        assert_eq!(sum.canonical(), pairwise_hull2(&s, &d).canonical());
    }

    #[test]
    fn plus_point_translates() {
        let s = ConvexPolygon::<f64>::regular(5, 1.0, 0.2);
        let t = ConvexPolygon::point(v(2.0, -1.0));
        let sum = minkowski_sum2(&s, &t);
        assert_eq!(sum.canonical(), s.translate(v(2.0, -1.0)).canonical());
    }

    #[test]
    fn interpolation_endpoints_and_homothets() {
        let a: Shape<f64> = ConvexPolygon::unit_square().into();
        let b: Shape<f64> = ConvexPolygon::rectangle(0.0, 0.0, 3.0, 3.0).into();
        assert_eq!(interpolate(&a, &b, 0.0).unwrap(), a);
        assert_eq!(interpolate(&a, &b, 1.0).unwrap(), b);
        let mid = interpolate(&a, &b, 0.5).unwrap();
        assert_relative_eq!(mid.volume().unwrap(), 4.0, max_relative = 1e-14);
        assert!(matches!(interpolate(&a, &b, 1.5), Err(GeomError::InvalidParameter(_))));
    }

    #[test]
    fn rotated_square_midpoint_gains_area() {
        let a = ConvexPolygon::<f64>::unit_square().translate(v(-0.5, -0.5));
        let b = a.rotate(PI / 4.0);
        let mid = interpolate(&Shape::Polygon(a), &Shape::Polygon(b), 0.5).unwrap();
        assert_eq!(mid.as_polygon().unwrap().len(), 8);
        assert!(mid.volume().unwrap() > 1.0 + 1e-3);
    }

    #[test]
    fn cube_sums() {
        let c = VPolytope3::<f64>::cube(1.0);
        let s = minkowski_sum3(&c, &c).unwrap();
        assert_relative_eq!(s.volume(), 8.0, max_relative = 1e-14);
        let t = minkowski_sum3_points(c.vertices(), &[Vec3::new(1.0, 2.0, 3.0)]).unwrap();
        assert_relative_eq!(t.volume(), 1.0, max_relative = 1e-14);
        assert!(t.vertices().iter().any(|p| (*p - Vec3::new(1.0, 2.0, 3.0)).norm() < 1e-15));
    }

    #[test]
    fn cube_steiner() {
        let c = steiner_coeffs3(&VPolytope3::<f64>::cube(1.0)).unwrap();
        assert_relative_eq!(c.v, 1.0, max_relative = 1e-12);
        assert_relative_eq!(c.s, 6.0, max_relative = 1e-12);
        assert_relative_eq!(c.m, 3.0 * PI, max_relative = 1e-9);
        assert_relative_eq!(c.b, 4.0 * PI / 3.0, max_relative = 1e-15);
        let c2 = steiner_coeffs3(&VPolytope3::<f64>::cube(2.0)).unwrap();
        assert_relative_eq!(c2.v, 8.0, max_relative = 1e-12);
        assert_relative_eq!(c2.s, 24.0, max_relative = 1e-12);
        assert_relative_eq!(c2.m, 6.0 * PI, max_relative = 1e-9);
    }

    #[test]
    fn tetrahedron_steiner() {
        let t = steiner_coeffs3(&VPolytope3::<f64>::regular_tetrahedron(1.0)).unwrap();
        assert_relative_eq!(t.v, 1.0 / (6.0 * 2f64.sqrt()), max_relative = 1e-12);
        assert!((t.v - 0.117851).abs() < 1e-6);
        assert_relative_eq!(t.s, 3f64.sqrt(), max_relative = 1e-12);
        // Six edges, exterior angle pi - arccos(1/3).
        assert_relative_eq!(t.m, 3.0 * (PI - (1.0f64 / 3.0).acos()), max_relative = 1e-12);
    }

    #[test]
    fn quermass_values() {
        let cube: Shape<f64> = VPolytope3::cube(1.0).into();
        assert_relative_eq!(quermass(&cube, 1).unwrap(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(quermass(&cube, 3).unwrap(), 4.0 * PI / 3.0);
        let sq: Shape<f64> = ConvexPolygon::unit_square().into();
        assert_eq!(quermass(&sq, 1).unwrap(), 2.0);
        assert_eq!(quermass(&sq, 2).unwrap(), PI);
        assert!(quermass(&sq, 3).is_err());
    }
}
