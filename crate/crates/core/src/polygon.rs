//! Convex polygons stored as counter-clockwise vertex cycles.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::tol::Tolerances;
use crate::vector::Vec2;

/// A convex polygon with vertices in counter-clockwise order.
///
/// Repeated and collinear vertices are removed on construction. One- and
/// two-vertex polygons (points and segments) are allowed; they carry a
/// support function and can be rotated or fitted, but measures that need an
/// interior reject them with [`GeomError::DegenerateShape`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Vec2<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Builds a polygon from a counter-clockwise convex vertex cycle.
    pub fn new(vertices: Vec<Vec2<T>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(GeomError::InvalidShape("polygon without vertices".into()));
        }
        if !vertices.iter().all(|v| v.is_finite()) {
            return Err(GeomError::InvalidShape("non-finite vertex coordinate".into()));
        }
        let cleaned = clean_cycle(&vertices);
        if cleaned.len() >= 3 {
            let n = cleaned.len();
            let mut turning = T::zero();
            for i in 0..n {
                let e0 = cleaned[(i + 1) % n] - cleaned[i];
                let e1 = cleaned[(i + 2) % n] - cleaned[(i + 1) % n];
                let c = e0.cross(e1);
                if c <= T::zero() {
                    return Err(GeomError::InvalidShape(
                        "vertices are not a counter-clockwise convex cycle".into(),
                    ));
                }
                turning += c.atan2(e0.dot(e1));
            }
            if (turning - T::TAU()).abs() > T::lit(1e-6) {
                return Err(GeomError::InvalidShape("vertex cycle winds more than once".into()));
            }
            Ok(Self { vertices: cleaned })
        } else {
            // Collinear input collapses to its extreme points.
            Ok(Self::from_points(&vertices))
        }
    }

    /// Convex hull of an arbitrary point set (Andrew's monotone chain).
    pub fn from_points(points: &[Vec2<T>]) -> Self {
        let mut pts: Vec<Vec2<T>> = points.iter().copied().filter(|p| p.is_finite()).collect();
        pts.sort_by(|a, b| {
            a.x.partial_cmp(&b.x)
                .unwrap_or(Ordering::Equal)
                .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
        });
        pts.dedup();
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let thresh = collinear_threshold(&pts);
        let mut lower: Vec<Vec2<T>> = Vec::with_capacity(pts.len());
        for &p in &pts {
            while lower.len() >= 2 {
                let k = lower.len();
                if (lower[k - 1] - lower[k - 2]).cross(p - lower[k - 2]) <= thresh {
                    lower.pop();
                } else {
                    break;
                }
            }
            lower.push(p);
        }
        let mut upper: Vec<Vec2<T>> = Vec::with_capacity(pts.len());
        for &p in pts.iter().rev() {
            while upper.len() >= 2 {
                let k = upper.len();
                if (upper[k - 1] - upper[k - 2]).cross(p - upper[k - 2]) <= thresh {
                    upper.pop();
                } else {
                    break;
                }
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            // Everything collinear: keep the two extreme points.
            let first = pts[0];
            let last = pts[pts.len() - 1];
            return Self { vertices: if first == last { vec![first] } else { vec![first, last] } };
        }
        Self { vertices: clean_cycle(&lower) }
    }

    pub fn point(p: Vec2<T>) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn segment(a: Vec2<T>, b: Vec2<T>) -> Self {
        Self::from_points(&[a, b])
    }

    /// Axis-aligned rectangle `[x0, x0 + w] x [y0, y0 + h]`.
    pub fn rectangle(x0: T, y0: T, w: T, h: T) -> Self {
        Self::from_points(&[
            Vec2::new(x0, y0),
            Vec2::new(x0 + w, y0),
            Vec2::new(x0 + w, y0 + h),
            Vec2::new(x0, y0 + h),
        ])
    }

    pub fn unit_square() -> Self {
        Self::rectangle(T::zero(), T::zero(), T::one(), T::one())
    }

    /// Regular `n`-gon centered at the origin with a vertex at angle `phase`.
    pub fn regular(n: usize, circumradius: T, phase: T) -> Self {
        assert!(n >= 3, "regular polygon needs at least 3 vertices");
        let step = T::TAU() / T::from_usize_lossy(n);
        let vertices = (0..n)
            .map(|k| Vec2::from_angle(phase + step * T::from_usize_lossy(k)).scale(circumradius))
            .collect();
        Self { vertices }
    }

    /// Equilateral triangle with side `side`, base on the x axis starting at the origin.
    pub fn equilateral_triangle(side: T) -> Self {
        let h = side * T::lit(3.0).sqrt() / T::lit(2.0);
        Self::from_points(&[Vec2::zero(), Vec2::new(side, T::zero()), Vec2::new(side / T::lit(2.0), h)])
    }

    /// Polygonal disk: regular `n`-gon inscribed in the circle.
    pub fn disk(center: Vec2<T>, radius: T, n: usize) -> Self {
        Self::regular(n, radius, T::zero()).translate(center)
    }

    /// Reuleaux triangle of the given width, centered at the origin, each arc
    /// sampled with `points_per_arc` segments.
    pub fn reuleaux(width: T, points_per_arc: usize) -> Self {
        assert!(points_per_arc >= 1);
        let r = width / T::lit(3.0).sqrt();
        let corners: Vec<Vec2<T>> = (0..3)
            .map(|k| {
                Vec2::from_angle(T::FRAC_PI_2() + T::TAU() * T::from_usize_lossy(k) / T::lit(3.0))
                    .scale(r)
            })
            .collect();
        let mut pts = Vec::with_capacity(3 * points_per_arc);
        let sixty = T::PI() / T::lit(3.0);
        for k in 0..3 {
            // Arc centered at corner k joins the two opposite corners.
            let c = corners[k];
            let start = (corners[(k + 1) % 3] - c).angle();
            for j in 0..points_per_arc {
                let a = start + sixty * T::from_usize_lossy(j) / T::from_usize_lossy(points_per_arc);
                pts.push(c + Vec2::from_angle(a).scale(width));
            }
        }
        Self::from_points(&pts)
    }

    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Edge vectors `v[i+1] - v[i]`, cyclically.
    pub fn edges(&self) -> impl Iterator<Item = Vec2<T>> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| self.vertices[(i + 1) % n] - self.vertices[i])
    }

    /// Shoelace area.
    pub fn area(&self) -> Result<T> {
        self.require_interior("area")?;
        let n = self.vertices.len();
        let o = self.vertices[0];
        let mut twice = T::zero();
        for i in 1..n - 1 {
            twice += (self.vertices[i] - o).cross(self.vertices[i + 1] - o);
        }
        Ok(twice / T::lit(2.0))
    }

    pub fn perimeter(&self) -> Result<T> {
        self.require_interior("perimeter")?;
        Ok(self.edges().map(|e| e.norm()).sum())
    }

    fn require_interior(&self, what: &str) -> Result<()> {
        if self.is_degenerate() {
            Err(GeomError::DegenerateShape(format!(
                "{what} of a {}-vertex polygon",
                self.vertices.len()
            )))
        } else {
            Ok(())
        }
    }

    /// `max <p, u>` over the polygon.
    pub fn support(&self, u: Vec2<T>) -> Result<T> {
        if u.x == T::zero() && u.y == T::zero() {
            return Err(GeomError::InvalidDirection);
        }
        Ok(self.support_unchecked(u))
    }

    #[inline]
    pub(crate) fn support_unchecked(&self, u: Vec2<T>) -> T {
        self.vertices.iter().map(|v| v.dot(u)).fold(T::neg_infinity(), T::max)
    }

    /// Rotation about the origin.
    pub fn rotate(&self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y))
                .collect(),
        }
    }

    pub fn translate(&self, t: Vec2<T>) -> Self {
        Self { vertices: self.vertices.iter().map(|&v| v + t).collect() }
    }

    /// Homothety about the origin; `alpha == 0` collapses to the origin.
    pub fn scale(&self, alpha: T) -> Self {
        assert!(alpha >= T::zero(), "negative scale");
        if alpha == T::zero() {
            return Self::point(Vec2::zero());
        }
        Self { vertices: self.vertices.iter().map(|&v| v * alpha).collect() }
    }

    /// Mean of the vertices.
    pub fn vertex_centroid(&self) -> Vec2<T> {
        let n = T::from_usize_lossy(self.vertices.len());
        self.vertices.iter().fold(Vec2::zero(), |acc, &v| acc + v).scale(T::one() / n)
    }

    /// Outward (unnormalized) edge normals with their offsets.
    ///
    /// Degenerate polygons get a four-constraint description of the segment
    /// or point they represent.
    pub fn halfplanes(&self) -> Vec<(Vec2<T>, T)> {
        match self.vertices.len() {
            0 => Vec::new(),
            1 => {
                let p = self.vertices[0];
                vec![
                    (Vec2::new(T::one(), T::zero()), p.x),
                    (Vec2::new(T::zero(), T::one()), p.y),
                    (Vec2::new(-T::one(), T::zero()), -p.x),
                    (Vec2::new(T::zero(), -T::one()), -p.y),
                ]
            }
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let d = b - a;
                let n = Vec2::new(d.y, -d.x);
                vec![(n, n.dot(a)), (-n, -n.dot(a)), (d, d.dot(b)), (-d, -d.dot(a))]
            }
            _ => self
                .vertices
                .iter()
                .zip(self.edges())
                .map(|(&v, e)| {
                    let n = Vec2::new(e.y, -e.x);
                    (n, n.dot(v))
                })
                .collect(),
        }
    }

    /// Minimum over vertices of the signed slack against `(normal, offset)` constraints.
    pub fn point_margin(&self, p: Vec2<T>) -> T {
        self.halfplanes()
            .into_iter()
            .map(|(n, b)| (b - n.dot(p)) / n.norm())
            .fold(T::infinity(), T::min)
    }

    /// Largest distance from `c` to a vertex.
    pub fn radius_about(&self, c: Vec2<T>) -> T {
        self.vertices.iter().map(|&v| (v - c).norm()).fold(T::zero(), T::max)
    }

    pub fn bounding_box(&self) -> (Vec2<T>, Vec2<T>) {
        bbox(&self.vertices)
    }

    /// Rotates the vertex list so that it starts at the lowest-then-leftmost vertex.
    pub fn canonical(&self) -> Self {
        let start = lowest_index(&self.vertices);
        let mut v = self.vertices.clone();
        v.rotate_left(start);
        Self { vertices: v }
    }

    pub fn cast<U: Scalar>(&self) -> ConvexPolygon<U> {
        ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vec2::new(U::lit(v.x.as_f64()), U::lit(v.y.as_f64())))
                .collect(),
        }
    }
}

pub(crate) fn lowest_index<T: Scalar>(v: &[Vec2<T>]) -> usize {
    let mut best = 0;
    for (i, p) in v.iter().enumerate() {
        let b = v[best];
        if p.y < b.y || (p.y == b.y && p.x < b.x) {
            best = i;
        }
    }
    best
}

pub(crate) fn bbox<T: Scalar>(pts: &[Vec2<T>]) -> (Vec2<T>, Vec2<T>) {
    let mut lo = Vec2::new(T::infinity(), T::infinity());
    let mut hi = Vec2::new(T::neg_infinity(), T::neg_infinity());
    for p in pts {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

/// Twice the triangle-area threshold below which a vertex counts as collinear.
fn collinear_threshold<T: Scalar>(pts: &[Vec2<T>]) -> T {
    let (lo, hi) = bbox(pts);
    let area = (hi.x - lo.x) * (hi.y - lo.y);
    let tol = Tolerances::<T>::default();
    // Guards against a zero-area box when every point sits on an axis-parallel line.
    let diag2 = (hi - lo).dot(hi - lo);
    T::lit(2.0) * tol.rel * area.max(diag2 * tol.rel)
}

/// Drops repeated vertices and vertices whose neighbours make a near-zero-area triangle.
fn clean_cycle<T: Scalar>(v: &[Vec2<T>]) -> Vec<Vec2<T>> {
    let mut out: Vec<Vec2<T>> = Vec::with_capacity(v.len());
    for &p in v {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    if out.len() < 3 {
        return out;
    }
    let thresh = collinear_threshold(&out);
    let mut changed = true;
    while changed && out.len() >= 3 {
        changed = false;
        let n = out.len();
        for i in 0..n {
            let a = out[(i + n - 1) % n];
            let b = out[i];
            let c = out[(i + 1) % n];
            if (b - a).cross(c - a).abs() <= thresh {
                out.remove(i);
                changed = true;
                break;
            }
        }
    }
    out
}
