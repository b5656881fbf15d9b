//! Largest inscribed balls, Minkowski erosion and minimum width.

use crate::ball::Ball;
use crate::error::{GeomError, Result};
use crate::hpolytope::HPolytope;
use crate::lp::{solve_lp, LpProblem, LpStatus};
use crate::polygon::ConvexPolygon;
use crate::polytope3::VPolytope3;
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::vector::{norm, Vec2, Vec3};

/// Solves `max r` subject to `<a_i, c> + r |a_i| <= b_i` with `r` free.
///
/// The optimum is the largest normalized slack any point can achieve; it is
/// negative exactly when the polytope is empty.
pub(crate) fn max_slack_point<T: Scalar>(q: &HPolytope<T>) -> Result<(Vec<T>, T)> {
    let d = q.dim();
    let normals: Vec<Vec<T>> = q
        .normals()
        .iter()
        .map(|a| {
            let mut row = a.clone();
            row.push(norm(a));
            row
        })
        .collect();
    let mut objective = vec![T::zero(); d + 1];
    objective[d] = T::one();
    let sol = solve_lp(&LpProblem::new(objective, normals, q.offsets().to_vec())?)?;
    match sol.status {
        LpStatus::Optimal => {
            let r = sol.point[d];
            let mut c = sol.point;
            c.truncate(d);
            Ok((c, r))
        }
        LpStatus::Unbounded => Err(GeomError::Unbounded),
        LpStatus::Infeasible => Err(GeomError::NumericalFailure(
            "slack maximization is always feasible".into(),
        )),
    }
}

/// Chebyshev center: the largest ball inside `Q`.
///
/// When the center is not unique (a rectangle, say) the simplex returns one
/// of them deterministically; only the radius is canonical.
pub fn chebyshev_center<T: Scalar>(q: &HPolytope<T>) -> Result<Ball<T>> {
    let (c, r) = max_slack_point(q)?;
    let scale = q.offsets().iter().fold(T::one(), |m, b| m.max(b.abs()));
    if r <= T::lit(1e-12).max(T::epsilon() * T::lit(64.0)) * scale {
        return Err(GeomError::DegenerateShape(format!("polytope has no interior (inradius {r})")));
    }
    Ball::new(c, r)
}

/// Inscribed ball of any shape with a halfspace description (a ball is its own).
pub fn inball<T: Scalar>(q: &Shape<T>) -> Result<Ball<T>> {
    match q {
        Shape::Ball(b) => Ok(b.clone()),
        _ => chebyshev_center(&q.halfspaces().expect("non-ball")),
    }
}

/// Set of translations `t` with `P + t ⊆ Q`: Q's normals with offsets
/// `b_i - h_P(a_i)`. May be empty.
pub fn erosion<T: Scalar>(q: &HPolytope<T>, p: &Shape<T>) -> Result<HPolytope<T>> {
    if q.dim() != p.dim() {
        return Err(GeomError::DimensionMismatch { expected: q.dim(), got: p.dim() });
    }
    let offsets = q
        .normals()
        .iter()
        .zip(q.offsets())
        .map(|(a, &b)| Ok(b - p.support(a)?))
        .collect::<Result<Vec<T>>>()?;
    Ok(q.with_offsets(offsets))
}

/// Width `h(u) + h(-u)` for a unit direction `u`.
pub fn width_in<T: Scalar>(q: &Shape<T>, u: &[T]) -> Result<T> {
    let neg: Vec<T> = u.iter().map(|&x| -x).collect();
    let n = norm(u);
    Ok((q.support(u)? + q.support(&neg)?) / n)
}

/// Candidate directions for the minimum width of a 3D polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WidthMethod {
    /// Facet normals plus cross products of all edge pairs; exact for polytopes.
    #[default]
    Exact,
    /// Fibonacci-sphere sample of `n` directions followed by coordinate
    /// refinement. Approximate: an upper bound on the true width.
    Sampled(usize),
}

/// Smallest width and a direction attaining it.
pub fn min_width<T: Scalar>(q: &Shape<T>) -> Result<(T, Vec<T>)> {
    min_width_with(q, WidthMethod::Exact)
}

pub fn min_width_with<T: Scalar>(q: &Shape<T>, method: WidthMethod) -> Result<(T, Vec<T>)> {
    match q {
        Shape::Polygon(p) => min_width_polygon(p).map(|(w, u)| (w, u.to_vec())),
        Shape::Ball(b) => {
            if b.radius <= T::zero() {
                return Err(GeomError::DegenerateShape("zero-radius ball".into()));
            }
            let mut u = vec![T::zero(); b.dim()];
            u[0] = T::one();
            Ok((b.radius * T::lit(2.0), u))
        }
        Shape::Polytope3(p) => match method {
            WidthMethod::Exact => min_width_polytope3(p),
            WidthMethod::Sampled(n) => min_width_sampled3(p, n),
        }
        .map(|(w, u)| (w, u.to_vec())),
        Shape::HPolytope(h) if h.dim() == 2 => {
            let p = h
                .to_polygon()?
                .ok_or_else(|| GeomError::DegenerateShape("empty polytope".into()))?;
            min_width_polygon(&p).map(|(w, u)| (w, u.to_vec()))
        }
        Shape::HPolytope(h) => Err(GeomError::InvalidParameter(format!(
            "minimum width of a {}-dimensional halfspace polytope",
            h.dim()
        ))),
    }
}

/// Rotating calipers: the minimum width is attained at an edge normal.
fn min_width_polygon<T: Scalar>(p: &ConvexPolygon<T>) -> Result<(T, Vec2<T>)> {
    if p.is_degenerate() {
        return Err(GeomError::DegenerateShape("minimum width of a degenerate polygon".into()));
    }
    let v = p.vertices();
    let n = v.len();
    // Antipodal pointer advances monotonically around the cycle.
    let mut j = 1;
    let mut best: Option<(T, Vec2<T>)> = None;
    for i in 0..n {
        let e = v[(i + 1) % n] - v[i];
        let len = e.norm();
        let u = Vec2::new(e.y, -e.x).scale(T::one() / len);
        while (v[(j + 1) % n] - v[i]).dot(-u) > (v[j] - v[i]).dot(-u) {
            j = (j + 1) % n;
        }
        let w = (v[j] - v[i]).dot(-u);
        if best.is_none_or(|(bw, _)| w < bw) {
            best = Some((w, u));
        }
    }
    Ok(best.expect("at least three edges"))
}

fn width3<T: Scalar>(p: &VPolytope3<T>, u: Vec3<T>) -> T {
    p.support_unchecked(u) + p.support_unchecked(-u)
}

fn min_width_polytope3<T: Scalar>(p: &VPolytope3<T>) -> Result<(T, Vec3<T>)> {
    let mut best: Option<(T, Vec3<T>)> = None;
    let mut consider = |u: Vec3<T>| {
        let w = width3(p, u);
        if best.is_none_or(|(bw, _)| w < bw) {
            best = Some((w, u));
        }
    };
    for f in p.facets() {
        consider(f.normal);
    }
    let verts = p.vertices();
    let dirs: Vec<Vec3<T>> = p
        .edges()
        .iter()
        .filter(|e| e.exterior_angle > T::epsilon())
        .map(|e| verts[e.b] - verts[e.a])
        .collect();
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            if let Some(u) = dirs[i].cross(dirs[j]).normalized() {
                consider(u);
            }
        }
    }
    best.ok_or_else(|| GeomError::DegenerateShape("polytope without facets".into()))
}

fn min_width_sampled3<T: Scalar>(p: &VPolytope3<T>, n: usize) -> Result<(T, Vec3<T>)> {
    let n = n.max(16);
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut best: Option<(T, Vec3<T>)> = None;
    // Half-sphere suffices: width is even in u.
    for i in 0..n {
        let z = 1.0 - (i as f64 + 0.5) / n as f64;
        let rho = (1.0 - z * z).sqrt();
        let th = golden * i as f64;
        let u = Vec3::new(T::lit(rho * th.cos()), T::lit(rho * th.sin()), T::lit(z));
        let w = width3(p, u);
        if best.is_none_or(|(bw, _)| w < bw) {
            best = Some((w, u));
        }
    }
    let (mut w, mut u) = best.expect("n > 0");
    let mut step = T::lit(0.5) / T::from_usize_lossy(n).sqrt();
    for _ in 0..1000 {
        if step < T::epsilon().sqrt() {
            break;
        }
        let mut improved = false;
        for axis in 0..3 {
            for s in [T::one(), -T::one()] {
                let mut d = Vec3::zero();
                match axis {
                    0 => d.x = step * s,
                    1 => d.y = step * s,
                    _ => d.z = step * s,
                }
                if let Some(c) = (u + d).normalized() {
                    let wc = width3(p, c);
                    if wc < w {
                        w = wc;
                        u = c;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step = step / T::lit(2.0);
        }
    }
    Ok((w, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn h(p: &ConvexPolygon<f64>) -> HPolytope<f64> {
        HPolytope::from_polygon(p)
    }

    #[test]
    fn unit_square_inball() {
        let b = chebyshev_center(&h(&ConvexPolygon::unit_square())).unwrap();
        assert!((b.radius - 0.5).abs() < 1e-12);
        assert!((b.center[0] - 0.5).abs() < 1e-12 && (b.center[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn right_triangle_incircle() {
        let t = ConvexPolygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)])
            .unwrap();
        let b = chebyshev_center(&h(&t)).unwrap();
        let r = (2.0 - 2f64.sqrt()) / 2.0;
        assert_relative_eq!(b.radius, r, max_relative = 1e-12);
        assert_relative_eq!(b.center[0], r, max_relative = 1e-12);
        assert_relative_eq!(b.center[1], r, max_relative = 1e-12);
    }

    #[test]
    fn equilateral_inball_and_width() {
        let t = ConvexPolygon::<f64>::equilateral_triangle(1.0);
        let b = chebyshev_center(&h(&t)).unwrap();
        assert_relative_eq!(b.radius, 1.0 / (2.0 * 3f64.sqrt()), max_relative = 1e-12);
        let (w, _) = min_width(&Shape::Polygon(t)).unwrap();
        assert_relative_eq!(w, 3f64.sqrt() / 2.0, max_relative = 1e-12);
        assert!(w > 2.0 * b.radius);
    }

    #[test]
    fn rectangle_width_and_inradius() {
        let r = ConvexPolygon::<f64>::rectangle(0.0, 0.0, 2.0, 1.0);
        let (w, u) = min_width(&Shape::Polygon(r.clone())).unwrap();
        assert_eq!(w, 1.0);
        assert!(u[0].abs() < 1e-15 && (u[1].abs() - 1.0).abs() < 1e-15);
        // Centers form a segment; only the radius is pinned.
        assert!((chebyshev_center(&h(&r)).unwrap().radius - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_has_no_inball() {
        let q = HPolytope::from_polygon(&ConvexPolygon::segment(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)));
        assert!(matches!(chebyshev_center(&q), Err(GeomError::DegenerateShape(_))));
    }

    #[test]
    fn erosion_of_square_by_small_square() {
        let q = h(&ConvexPolygon::unit_square());
        let p: Shape<f64> = ConvexPolygon::rectangle(0.0, 0.0, 0.25, 0.25).into();
        let e = erosion(&q, &p).unwrap().to_polygon().unwrap().unwrap();
        let want = ConvexPolygon::rectangle(0.0, 0.0, 0.75, 0.75);
        assert_eq!(e.canonical(), want.canonical());
        let same: Shape<f64> = ConvexPolygon::unit_square().into();
        let e = erosion(&q, &same).unwrap().to_polygon().unwrap().unwrap();
        assert_eq!(e.len(), 1);
        let big: Shape<f64> = ConvexPolygon::rectangle(0.0, 0.0, 1.5, 1.5).into();
        assert!(erosion(&q, &big).unwrap().is_empty_set().unwrap());
    }

    #[test]
    fn cube_width_exact_and_sampled() {
        let c = Shape::Polytope3(VPolytope3::<f64>::cube(1.0));
        assert_relative_eq!(min_width(&c).unwrap().0, 1.0, max_relative = 1e-14);
        let (ws, _) = min_width_with(&c, WidthMethod::Sampled(200)).unwrap();
        assert!(ws >= 1.0 - 1e-12 && ws < 1.0 + 1e-6);
    }

    #[test]
    fn regular_tetrahedron_width_uses_edge_pairs() {
        // Width of a regular tetrahedron (edge 1) is 1/sqrt(2), attained between opposite edges.
        let t = Shape::Polytope3(VPolytope3::<f64>::regular_tetrahedron(1.0));
        assert_relative_eq!(min_width(&t).unwrap().0, 1.0 / 2f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn cube_chebyshev_center() {
        let c = VPolytope3::<f64>::cube(2.0).to_hpolytope();
        let b = chebyshev_center(&c).unwrap();
        assert_relative_eq!(b.radius, 1.0, max_relative = 1e-12);
    }
}
