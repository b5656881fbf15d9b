//! A single enum over every supported carrier, plus containment tests.

use crate::ball::Ball;
use crate::error::{GeomError, Result};
use crate::hpolytope::HPolytope;
use crate::polygon::ConvexPolygon;
use crate::polytope3::VPolytope3;
use crate::rotation::Rotation;
use crate::scalar::Scalar;
use crate::tol::Tolerances;
use crate::vector::{norm, vec2_from_slice, vec3_from_slice, Vec2, Vec3};

#[derive(Debug, Clone, PartialEq)]
pub enum Shape<T> {
    Polygon(ConvexPolygon<T>),
    HPolytope(HPolytope<T>),
    Polytope3(VPolytope3<T>),
    Ball(Ball<T>),
}

/// Outcome of a containment test: `margin` is the smallest normalized slack
/// over the outer body's constraints (negative means a violation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Containment<T> {
    pub contained: bool,
    pub margin: T,
}

impl<T: Scalar> From<ConvexPolygon<T>> for Shape<T> {
    fn from(p: ConvexPolygon<T>) -> Self {
        Shape::Polygon(p)
    }
}

impl<T: Scalar> From<HPolytope<T>> for Shape<T> {
    fn from(p: HPolytope<T>) -> Self {
        Shape::HPolytope(p)
    }
}

impl<T: Scalar> From<VPolytope3<T>> for Shape<T> {
    fn from(p: VPolytope3<T>) -> Self {
        Shape::Polytope3(p)
    }
}

impl<T: Scalar> From<Ball<T>> for Shape<T> {
    fn from(b: Ball<T>) -> Self {
        Shape::Ball(b)
    }
}

impl<T: Scalar> Shape<T> {
    pub fn dim(&self) -> usize {
        match self {
            Shape::Polygon(_) => 2,
            Shape::HPolytope(h) => h.dim(),
            Shape::Polytope3(_) => 3,
            Shape::Ball(b) => b.dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Polygon(_) => "polygon",
            Shape::HPolytope(_) => "hpolytope",
            Shape::Polytope3(_) => "vpolytope3",
            Shape::Ball(_) => "ball",
        }
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            Err(GeomError::DimensionMismatch { expected: self.dim(), got })
        } else {
            Ok(())
        }
    }

    /// Support function `h(u) = max <p, u>`.
    pub fn support(&self, u: &[T]) -> Result<T> {
        self.check_dim(u.len())?;
        match self {
            Shape::Polygon(p) => p.support(vec2_from_slice(u).expect("checked dim")),
            Shape::Polytope3(p) => p.support(vec3_from_slice(u).expect("checked dim")),
            Shape::Ball(b) => b.support(u),
            Shape::HPolytope(h) => h.support(u),
        }
    }

    /// Rotation about the origin.
    pub fn rotate(&self, rot: &Rotation<T>) -> Result<Self> {
        self.check_dim(rot.dim())?;
        Ok(match (self, rot) {
            (Shape::Polygon(p), Rotation::Planar(a)) => Shape::Polygon(p.rotate(*a)),
            (Shape::Polytope3(p), Rotation::Spatial(q)) => Shape::Polytope3(p.rotate(q)),
            (Shape::Ball(b), _) => Shape::Ball(Ball { center: rot.apply(&b.center)?, radius: b.radius }),
            (Shape::HPolytope(h), _) => Shape::HPolytope(h.rotate(rot)?),
            _ => unreachable!("dimension checked"),
        })
    }

    pub fn translate(&self, t: &[T]) -> Result<Self> {
        self.check_dim(t.len())?;
        Ok(match self {
            Shape::Polygon(p) => Shape::Polygon(p.translate(vec2_from_slice(t).unwrap())),
            Shape::Polytope3(p) => Shape::Polytope3(p.translate(vec3_from_slice(t).unwrap())),
            Shape::Ball(b) => Shape::Ball(Ball {
                center: b.center.iter().zip(t).map(|(&c, &d)| c + d).collect(),
                radius: b.radius,
            }),
            Shape::HPolytope(h) => Shape::HPolytope(h.translate(t)?),
        })
    }

    /// Homothety about the origin, `alpha > 0`.
    pub fn scale(&self, alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha.is_finite()) {
            return Err(GeomError::InvalidParameter(format!("scale factor {alpha} must be positive")));
        }
        Ok(match self {
            Shape::Polygon(p) => Shape::Polygon(p.scale(alpha)),
            Shape::Polytope3(p) => Shape::Polytope3(p.scale(alpha)),
            Shape::Ball(b) => Shape::Ball(Ball {
                center: b.center.iter().map(|&c| c * alpha).collect(),
                radius: b.radius * alpha,
            }),
            Shape::HPolytope(h) => Shape::HPolytope(h.scale(alpha)),
        })
    }

    /// Halfspace description usable as a container. Balls have none.
    pub fn halfspaces(&self) -> Option<HPolytope<T>> {
        match self {
            Shape::Polygon(p) => Some(HPolytope::from_polygon(p)),
            Shape::Polytope3(p) => Some(p.to_hpolytope()),
            Shape::HPolytope(h) => Some(h.clone()),
            Shape::Ball(_) => None,
        }
    }

    /// Finite point set whose hull is the shape (balls and d > 3 excluded).
    pub fn points(&self) -> Result<Vec<Vec<T>>> {
        match self {
            Shape::Polygon(p) => Ok(p.vertices().iter().map(|v| v.to_vec()).collect()),
            Shape::Polytope3(p) => Ok(p.vertices().iter().map(|v| v.to_vec()).collect()),
            Shape::HPolytope(h) if h.dim() == 2 => Ok(h
                .to_polygon()?
                .map(|p| p.vertices().iter().map(|v| v.to_vec()).collect())
                .unwrap_or_default()),
            _ => Err(GeomError::InvalidParameter(format!("no vertex set for a {}", self.kind()))),
        }
    }

    /// Center used for rotations that should not move the shape: the ball
    /// center, the inscribed-ball center of a full-dimensional polytope, or
    /// the vertex mean of a degenerate polygon.
    pub fn rotation_center(&self) -> Result<Vec<T>> {
        match self {
            Shape::Ball(b) => Ok(b.center.clone()),
            Shape::Polygon(p) if p.is_degenerate() => Ok(p.vertex_centroid().to_vec()),
            _ => {
                let h = self.halfspaces().expect("non-ball");
                Ok(crate::inball::chebyshev_center(&h)?.center)
            }
        }
    }

    /// Largest distance from `c` to a point of the shape.
    pub fn radius_about(&self, c: &[T]) -> Result<T> {
        self.check_dim(c.len())?;
        match self {
            Shape::Ball(b) => {
                let d: Vec<T> = b.center.iter().zip(c).map(|(&x, &y)| x - y).collect();
                Ok(norm(&d) + b.radius)
            }
            Shape::Polygon(p) => Ok(p.radius_about(vec2_from_slice(c).unwrap())),
            Shape::Polytope3(p) => Ok(p.radius_about(vec3_from_slice(c).unwrap())),
            Shape::HPolytope(_) => Ok(self
                .points()?
                .iter()
                .map(|v| norm(&v.iter().zip(c).map(|(&x, &y)| x - y).collect::<Vec<_>>()))
                .fold(T::zero(), T::max)),
        }
    }

    /// Area (d = 2) or volume (d = 3).
    pub fn volume(&self) -> Result<T> {
        match self {
            Shape::Polygon(p) => p.area(),
            Shape::Polytope3(p) => Ok(p.volume()),
            Shape::Ball(b) => b.volume(),
            Shape::HPolytope(h) if h.dim() == 2 => h
                .to_polygon()?
                .ok_or_else(|| GeomError::DegenerateShape("empty polytope".into()))?
                .area(),
            _ => Err(GeomError::InvalidParameter(format!("volume of a {}", self.kind()))),
        }
    }

    /// Perimeter (d = 2) or surface area (d = 3).
    pub fn boundary_measure(&self) -> Result<T> {
        match self {
            Shape::Polygon(p) => p.perimeter(),
            Shape::Polytope3(p) => Ok(p.surface_area()),
            Shape::Ball(b) => b.boundary_measure(),
            Shape::HPolytope(h) if h.dim() == 2 => h
                .to_polygon()?
                .ok_or_else(|| GeomError::DegenerateShape("empty polytope".into()))?
                .perimeter(),
            _ => Err(GeomError::InvalidParameter(format!("surface of a {}", self.kind()))),
        }
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon<T>> {
        match self {
            Shape::Polygon(p) => Some(p),
            _ => None,
        }
    }
}

/// Normalized slack of every constraint of `q` against the inner shape `p`:
/// `min_i (b_i - h_P(a_i)) / |a_i|`.
pub(crate) fn halfspace_margin<T: Scalar>(q: &HPolytope<T>, p: &Shape<T>) -> Result<T> {
    let mut m = T::infinity();
    for (a, &b) in q.normals().iter().zip(q.offsets()) {
        let h = p.support(a)?;
        m = m.min((b - h) / norm(a));
    }
    Ok(m)
}

/// Tests `P ⊆ Q` with the default tolerances.
pub fn contains<T: Scalar>(q: &Shape<T>, p: &Shape<T>) -> Result<Containment<T>> {
    contains_with(q, p, &Tolerances::default())
}

pub fn contains_with<T: Scalar>(q: &Shape<T>, p: &Shape<T>, tol: &Tolerances<T>) -> Result<Containment<T>> {
    if q.dim() != p.dim() {
        return Err(GeomError::DimensionMismatch { expected: q.dim(), got: p.dim() });
    }
    let margin = match q {
        Shape::Ball(outer) => {
            let far = p.radius_about(&outer.center)?;
            outer.radius - far
        }
        _ => halfspace_margin(&q.halfspaces().expect("non-ball"), p)?,
    };
    Ok(Containment { contained: margin >= -tol.abs, margin })
}

/// Signed distance-like slack of a single point inside `q`.
pub fn point_margin<T: Scalar>(q: &Shape<T>, x: &[T]) -> Result<T> {
    q.check_dim(x.len())?;
    Ok(match q {
        Shape::Ball(b) => {
            let d: Vec<T> = b.center.iter().zip(x).map(|(&c, &v)| v - c).collect();
            b.radius - norm(&d)
        }
        Shape::Polygon(p) => p.point_margin(Vec2::new(x[0], x[1])),
        Shape::Polytope3(p) => p.point_margin(Vec3::new(x[0], x[1], x[2])),
        Shape::HPolytope(h) => h.point_margin(x),
    })
}
