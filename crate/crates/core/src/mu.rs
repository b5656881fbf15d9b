//! Edge-length vectors of μ-polygons and μ-averaging.
//!
//! A μ-polygon is a convex polygon whose edge normals all belong to the
//! regular μ-gon `K_μ`. Normal `k` (zero based) points at angle `2πk/μ`, so
//! for `μ = 4` the normals are `+x, +y, -x, -y` in that order. Entry `k` of
//! the vector is the length of the edge with that outward normal, zero when
//! the normal is absent.

use crate::error::{GeomError, Result};
use crate::hpolytope::HPolytope;
use crate::inball::chebyshev_center;
use crate::minkowski::minkowski_sum2;
use crate::polygon::ConvexPolygon;
use crate::scalar::Scalar;
use crate::shape::{contains_with, Shape};
use crate::tol::Tolerances;
use crate::vector::Vec2;

/// Maximum deviation between an edge normal and the nearest `K_μ` normal.
pub const NORMAL_MATCH_RAD: f64 = 1e-9;
/// Closure residual allowed relative to the total edge length.
pub const CLOSURE_REL: f64 = 1e-9;
/// Bisection steps used by [`inner_mu_polygon`].
pub const INNER_SCALE_ITERS: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct MuVector<T> {
    mu: usize,
    lengths: Vec<T>,
}

fn check_mu(mu: usize) -> Result<()> {
    if mu < 4 || mu % 2 != 0 {
        Err(GeomError::InvalidParameter(format!("mu must be even and at least 4, got {mu}")))
    } else {
        Ok(())
    }
}

/// Outward normal angle of `K_μ` edge `k`.
pub fn normal_angle<T: Scalar>(mu: usize, k: usize) -> T {
    T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(mu)
}

/// Counter-clockwise edge direction for normal `k`.
pub fn edge_direction<T: Scalar>(mu: usize, k: usize) -> Vec2<T> {
    Vec2::from_angle(normal_angle::<T>(mu, k)).perp()
}

impl<T: Scalar> MuVector<T> {
    /// Validates evenness, length, nonnegativity and closure.
    pub fn new(mu: usize, lengths: Vec<T>) -> Result<Self> {
        check_mu(mu)?;
        if lengths.len() != mu {
            return Err(GeomError::InvalidParameter(format!("expected {mu} lengths, got {}", lengths.len())));
        }
        if !lengths.iter().all(|a| a.is_finite() && *a >= T::zero()) {
            return Err(GeomError::InvalidParameter("edge lengths must be finite and nonnegative".into()));
        }
        let v = Self { mu, lengths };
        v.check_closure()?;
        Ok(v)
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    /// Sum of the edge lengths, i.e. the perimeter.
    pub fn total(&self) -> T {
        self.lengths.iter().copied().sum()
    }

    /// `|Σ a_k d_k|`.
    pub fn closure_residual(&self) -> T {
        self.lengths
            .iter()
            .enumerate()
            .fold(Vec2::zero(), |acc, (k, &a)| acc + edge_direction::<T>(self.mu, k).scale(a))
            .norm()
    }

    fn check_closure(&self) -> Result<()> {
        let res = self.closure_residual();
        let allowed = T::lit(CLOSURE_REL).max(T::epsilon() * T::lit(64.0)) * self.total();
        if res > allowed {
            Err(GeomError::NotClosed { residual: res.as_f64() })
        } else {
            Ok(())
        }
    }

    /// Entrywise sum; the vector of the Minkowski sum of the two polygons.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.mu != other.mu {
            return Err(GeomError::InvalidParameter(format!("mu {} vs {}", self.mu, other.mu)));
        }
        Ok(Self {
            mu: self.mu,
            lengths: self.lengths.iter().zip(&other.lengths).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn scale(&self, alpha: T) -> Self {
        assert!(alpha >= T::zero());
        Self { mu: self.mu, lengths: self.lengths.iter().map(|&a| a * alpha).collect() }
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.lengths
            .iter()
            .zip(&other.lengths)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }
}

/// Edge-length vector of a μ-polygon.
pub fn phi<T: Scalar>(p: &ConvexPolygon<T>, mu: usize) -> Result<MuVector<T>> {
    check_mu(mu)?;
    let step = T::TAU() / T::from_usize_lossy(mu);
    let mut lengths = vec![T::zero(); mu];
    for e in p.edges() {
        let len = e.norm();
        if len == T::zero() {
            continue;
        }
        let angle = Vec2::new(e.y, -e.x).angle();
        let k = (angle / step).round();
        let dev = (angle - k * step).abs();
        if dev > T::lit(NORMAL_MATCH_RAD) {
            return Err(GeomError::NotAMuPolygon { mu, angle: angle.as_f64() });
        }
        let k = k.to_i64().expect("finite") .rem_euclid(mu as i64) as usize;
        lengths[k] += len;
    }
    Ok(MuVector { mu, lengths })
}

/// Polygon with the given edge vector, walked from the origin.
pub fn polygon_from_phi<T: Scalar>(v: &MuVector<T>) -> Result<ConvexPolygon<T>> {
    v.check_closure()?;
    let mut pts = Vec::with_capacity(v.mu);
    let mut cur = Vec2::zero();
    for (k, &a) in v.lengths.iter().enumerate() {
        if a == T::zero() {
            continue;
        }
        pts.push(cur);
        cur = cur + edge_direction::<T>(v.mu, k).scale(a);
    }
    if pts.is_empty() {
        return Ok(ConvexPolygon::point(Vec2::zero()));
    }
    ConvexPolygon::new(pts)
}

/// Vector of `ρP` for the rotation by `2π/μ`: a cyclic right shift.
pub fn mu_rotate<T: Scalar>(v: &MuVector<T>) -> MuVector<T> {
    let mut lengths = v.lengths.clone();
    lengths.rotate_right(1);
    MuVector { mu: v.mu, lengths }
}

/// Vector of the μ-average: every entry equals the perimeter over μ.
pub fn mu_average_vec<T: Scalar>(v: &MuVector<T>) -> MuVector<T> {
    let r = v.total() / T::from_usize_lossy(v.mu);
    MuVector { mu: v.mu, lengths: vec![r; v.mu] }
}

/// `(1/μ) Σ_k ρ^k P` with `ρ` the rotation by `2π/μ`.
pub fn mu_average_poly<T: Scalar>(p: &ConvexPolygon<T>, mu: usize) -> Result<ConvexPolygon<T>> {
    mu_average_poly_with(p, mu, T::TAU() / T::from_usize_lossy(mu))
}

/// μ-average with an explicit rotation angle.
pub fn mu_average_poly_with<T: Scalar>(p: &ConvexPolygon<T>, mu: usize, angle: T) -> Result<ConvexPolygon<T>> {
    check_mu(mu)?;
    let mut acc = p.clone();
    for k in 1..mu {
        acc = minkowski_sum2(&acc, &p.rotate(angle * T::from_usize_lossy(k)));
    }
    Ok(acc.scale(T::one() / T::from_usize_lossy(mu)))
}

/// μ-polygon circumscribed about `p`: the intersection of the supporting
/// halfplanes with the `K_μ` normals.
pub fn circumscribed_mu_polygon<T: Scalar>(p: &ConvexPolygon<T>, mu: usize) -> Result<ConvexPolygon<T>> {
    check_mu(mu)?;
    if p.is_empty() {
        return Err(GeomError::DegenerateShape("empty polygon".into()));
    }
    let normals: Vec<Vec2<T>> = (0..mu).map(|k| Vec2::from_angle(normal_angle::<T>(mu, k))).collect();
    let h: Vec<T> = normals.iter().map(|&u| p.support_unchecked(u)).collect();
    let pts: Vec<Vec2<T>> = (0..mu)
        .map(|k| {
            let j = (k + 1) % mu;
            let (n1, n2) = (normals[k], normals[j]);
            let det = n1.cross(n2);
            Vec2::new((h[k] * n2.y - h[j] * n1.y) / det, (n1.x * h[j] - n2.x * h[k]) / det)
        })
        .collect();
    Ok(ConvexPolygon::from_points(&pts))
}

/// A μ-polygon inside `p` whose perimeter approaches `p`'s as μ grows.
///
/// Circumscribes with the `K_μ` normals, then bisects the largest factor
/// `t ∈ (0, 1]` such that the copy scaled by `t` about `p`'s inscribed-ball
/// center lies in `p`.
pub fn inner_mu_polygon<T: Scalar>(p: &ConvexPolygon<T>, mu: usize) -> Result<ConvexPolygon<T>> {
    inner_mu_polygon_with(p, mu, &Tolerances::default())
}

pub fn inner_mu_polygon_with<T: Scalar>(
    p: &ConvexPolygon<T>,
    mu: usize,
    tol: &Tolerances<T>,
) -> Result<ConvexPolygon<T>> {
    check_mu(mu)?;
    if p.is_degenerate() {
        return Err(GeomError::DegenerateShape("inner approximation of a degenerate polygon".into()));
    }
    let center = chebyshev_center(&HPolytope::from_polygon(p))?.center;
    let c = Vec2::new(center[0], center[1]);
    let outer = circumscribed_mu_polygon(p, mu)?;
    let container = Shape::Polygon(p.clone());
    let shrink = |t: T| outer.translate(-c).scale(t).translate(c);
    let fits = |t: T| -> Result<bool> {
        Ok(contains_with(&container, &Shape::Polygon(shrink(t)), tol)?.contained)
    };
    if fits(T::one())? {
        return Ok(outer);
    }
    let (mut lo, mut hi) = (T::zero(), T::one());
    for _ in 0..INNER_SCALE_ITERS {
        let mid = (lo + hi) / T::lit(2.0);
        if fits(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == T::zero() {
        return Err(GeomError::DegenerateShape("no positive scale fits".into()));
    }
    Ok(shrink(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn mv(mu: usize, l: &[f64]) -> MuVector<f64> {
        MuVector::new(mu, l.to_vec()).unwrap()
    }

    #[test]
    fn phi_of_square_and_rectangle() {
        let sq = ConvexPolygon::<f64>::unit_square();
        assert_eq!(phi(&sq, 4).unwrap().lengths(), &[1.0, 1.0, 1.0, 1.0]);
        let r = ConvexPolygon::<f64>::rectangle(0.0, 0.0, 2.0, 1.0);
        // Normal +x carries the vertical edge of length 1.
        assert_eq!(phi(&r, 4).unwrap().lengths(), &[1.0, 2.0, 1.0, 2.0]);
        assert_eq!(phi(&sq, 8).unwrap().lengths(), &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn phi_rejects_foreign_normals() {
        let t = ConvexPolygon::<f64>::equilateral_triangle(1.0);
        assert!(matches!(phi(&t, 4), Err(GeomError::NotAMuPolygon { .. })));
        assert!(matches!(phi(&t, 5), Err(GeomError::InvalidParameter(_))));
    }

    #[test]
    fn from_phi_round_trip() {
        let sq = polygon_from_phi(&mv(4, &[1.0, 1.0, 1.0, 1.0])).unwrap();
        assert_eq!(sq.area().unwrap(), 1.0);
        let rect = polygon_from_phi(&mv(4, &[2.0, 1.0, 2.0, 1.0])).unwrap();
        assert_relative_eq!(rect.area().unwrap(), 2.0, max_relative = 1e-15);
        let v = mv(8, &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        let back = phi(&polygon_from_phi(&v).unwrap(), 8).unwrap();
        assert!(back.max_abs_diff(&v) < 1e-15);
        assert_eq!(back.lengths()[1], 0.0);
    }

    #[test]
    fn regular_from_constant_vector() {
        let p = polygon_from_phi(&MuVector::new(64, vec![0.25; 64]).unwrap()).unwrap();
        assert_eq!(p.len(), 64);
        for e in p.edges() {
            assert_relative_eq!(e.norm(), 0.25, max_relative = 1e-12);
        }
    }

    #[test]
    fn closure_enforced() {
        assert!(matches!(MuVector::new(4, vec![1.0, 1.0, 2.0, 1.0]), Err(GeomError::NotClosed { .. })));
        assert!(MuVector::new(4, vec![1.0, -1.0, 1.0, -1.0]).is_err());
    }

    #[test]
    fn rotate_is_cyclic_shift() {
        let v = mv(4, &[2.0, 1.0, 2.0, 1.0]);
        assert_eq!(mu_rotate(&v).lengths(), &[1.0, 2.0, 1.0, 2.0]);
        let mut w = v.clone();
        for _ in 0..4 {
            w = mu_rotate(&w);
        }
        assert_eq!(w, v);
        let r = mv(8, &[0.5; 8]);
        assert_eq!(mu_rotate(&r), r);
        // Geometric rotation matches the shift.
        let p = polygon_from_phi(&v).unwrap();
        let rotated = phi(&p.rotate(PI / 2.0), 4).unwrap();
        assert!(rotated.max_abs_diff(&mu_rotate(&v)) < 1e-15);
    }

    #[test]
    fn averages() {
        assert_eq!(mu_average_vec(&mv(4, &[2.0, 1.0, 2.0, 1.0])).lengths(), &[1.5; 4]);
        assert_eq!(mu_average_vec(&mv(8, &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0])).lengths(), &[0.5; 8]);
        let rect = ConvexPolygon::<f64>::rectangle(0.0, 0.0, 2.0, 1.0);
        let avg = mu_average_poly(&rect, 4).unwrap();
        assert_eq!(avg.len(), 4);
        assert_relative_eq!(avg.perimeter().unwrap(), 6.0, max_relative = 1e-14);
        for e in avg.edges() {
            assert_relative_eq!(e.norm(), 1.5, max_relative = 1e-14);
        }
        let sq = ConvexPolygon::<f64>::unit_square();
        let avg = mu_average_poly(&sq, 4).unwrap();
        assert_relative_eq!(avg.area().unwrap(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn average_of_regular_polygon_is_itself() {
        let p = ConvexPolygon::<f64>::regular(8, 1.0, PI / 8.0);
        let avg = mu_average_poly(&p, 8).unwrap();
        assert_eq!(avg.len(), 8);
        assert_relative_eq!(avg.area().unwrap(), p.area().unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn inner_octagon_of_disk() {
        let disk = ConvexPolygon::<f64>::regular(1024, 1.0, 0.0);
        let r = inner_mu_polygon(&disk, 8).unwrap();
        assert!(phi(&r, 8).is_ok());
        assert!((r.perimeter().unwrap() - 16.0 * (PI / 8.0).sin()).abs() < 1e-4);
        let c = contains_with(&Shape::Polygon(disk), &Shape::Polygon(r), &Tolerances::default()).unwrap();
        assert!(c.contained);
    }

    #[test]
    fn inner_of_mu_polygon_is_itself() {
        let sq = ConvexPolygon::<f64>::unit_square();
        let r = inner_mu_polygon(&sq, 4).unwrap();
        assert_eq!(r.len(), 4);
        for v in sq.vertices() {
            assert!(r.vertices().iter().any(|w| (*w - *v).norm() < 1e-15));
        }
        let oct = ConvexPolygon::<f64>::regular(8, 1.0, PI / 8.0);
        let r = inner_mu_polygon(&oct, 8).unwrap();
        assert_relative_eq!(r.perimeter().unwrap(), oct.perimeter().unwrap(), max_relative = 1e-12);
    }
}
