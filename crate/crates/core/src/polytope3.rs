//! Three-dimensional convex polytopes from vertex sets, with an incremental hull.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{GeomError, Result};
use crate::hpolytope::HPolytope;
use crate::rotation::UnitQuaternion;
use crate::scalar::Scalar;
use crate::vector::Vec3;

/// Triangular boundary facet with unit outward normal; `offset = <normal, v>` for its vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Facet<T> {
    pub vertices: [usize; 3],
    pub normal: Vec3<T>,
    pub offset: T,
}

/// Undirected hull edge with its exterior dihedral angle (angle between the
/// outward normals of the two incident facets).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub a: usize,
    pub b: usize,
    pub length: T,
    pub exterior_angle: T,
}

/// Full-dimensional convex polytope in R^3: hull vertices plus a triangulated boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope3<T> {
    vertices: Vec<Vec3<T>>,
    facets: Vec<Facet<T>>,
}

/// Convex hull of a point set.
pub fn hull3<T: Scalar>(points: &[Vec3<T>]) -> Result<VPolytope3<T>> {
    VPolytope3::from_points(points)
}

impl<T: Scalar> VPolytope3<T> {
    pub fn from_points(points: &[Vec3<T>]) -> Result<Self> {
        if !points.iter().all(|p| p.is_finite()) {
            return Err(GeomError::InvalidShape("non-finite vertex coordinate".into()));
        }
        let (mut vertices, mut faces) = incremental_hull(points)?;
        // Points inserted early can end up inside an edge or face of the
        // final hull; rebuild from the true corners when that happens.
        let corners = corner_vertices(&vertices, &faces);
        if corners.len() < vertices.len() {
            (vertices, faces) = incremental_hull(&corners)?;
        }
        let mut poly = Self { vertices, facets: Vec::new() };
        poly.facets = faces.iter().map(|f| poly.make_facet(*f)).collect();
        Ok(poly)
    }

    fn make_facet(&self, idx: [usize; 3]) -> Facet<T> {
        let [a, b, c] = idx.map(|i| self.vertices[i]);
        let n = (b - a).cross(c - a).normalized().unwrap_or_else(Vec3::zero);
        Facet { vertices: idx, normal: n, offset: n.dot(a) }
    }

    /// Applies a vertex map that preserves convexity and orientation.
    fn map_vertices(&self, f: impl Fn(Vec3<T>) -> Vec3<T>) -> Self {
        let mut out = Self { vertices: self.vertices.iter().map(|&v| f(v)).collect(), facets: Vec::new() };
        out.facets = self.facets.iter().map(|fc| out.make_facet(fc.vertices)).collect();
        out
    }

    pub fn cube(side: T) -> Self {
        let mut pts = Vec::with_capacity(8);
        for i in 0..8u8 {
            let c = |bit: u8| if i & bit != 0 { side } else { T::zero() };
            pts.push(Vec3::new(c(1), c(2), c(4)));
        }
        Self::from_points(&pts).expect("cube is full-dimensional")
    }

    /// Regular tetrahedron with the given edge length.
    pub fn regular_tetrahedron(edge: T) -> Self {
        let s = edge / (T::lit(2.0) * T::lit(2.0).sqrt());
        let pts = [
            Vec3::new(s, s, s),
            Vec3::new(s, -s, -s),
            Vec3::new(-s, s, -s),
            Vec3::new(-s, -s, s),
        ];
        Self::from_points(&pts).expect("tetrahedron is full-dimensional")
    }

    /// Cross-polytope `conv{±r e_i}`.
    pub fn octahedron(r: T) -> Self {
        let z = T::zero();
        let pts = [
            Vec3::new(r, z, z),
            Vec3::new(-r, z, z),
            Vec3::new(z, r, z),
            Vec3::new(z, -r, z),
            Vec3::new(z, z, r),
            Vec3::new(z, z, -r),
        ];
        Self::from_points(&pts).expect("octahedron is full-dimensional")
    }

    /// Polytope inscribed in the sphere of radius `r`: hull of `n` Fibonacci-lattice points.
    pub fn sphere_approx(radius: T, n: usize) -> Self {
        assert!(n >= 4);
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let pts: Vec<Vec3<T>> = (0..n)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                let rho = (1.0 - z * z).sqrt();
                let th = golden * i as f64;
                Vec3::new(T::lit(rho * th.cos()), T::lit(rho * th.sin()), T::lit(z)).scale(radius)
            })
            .collect();
        Self::from_points(&pts).expect("sphere sample is full-dimensional")
    }

    pub fn vertices(&self) -> &[Vec3<T>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<T>] {
        &self.facets
    }

    fn centroid(&self) -> Vec3<T> {
        let n = T::from_usize_lossy(self.vertices.len());
        self.vertices.iter().fold(Vec3::zero(), |a, &v| a + v).scale(T::one() / n)
    }

    /// Volume via the divergence theorem over the facets.
    pub fn volume(&self) -> T {
        let c = self.centroid();
        let six = T::lit(6.0);
        self.facets
            .iter()
            .map(|f| {
                let [a, b, d] = f.vertices.map(|i| self.vertices[i] - c);
                a.dot(b.cross(d)) / six
            })
            .sum()
    }

    pub fn surface_area(&self) -> T {
        let two = T::lit(2.0);
        self.facets
            .iter()
            .map(|f| {
                let [a, b, c] = f.vertices.map(|i| self.vertices[i]);
                (b - a).cross(c - a).norm() / two
            })
            .sum()
    }

    /// Hull edges; coplanar facet pairs contribute edges with zero exterior angle.
    pub fn edges(&self) -> Vec<Edge<T>> {
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            for k in 0..3 {
                owner.insert((f.vertices[k], f.vertices[(k + 1) % 3]), fi);
            }
        }
        let mut out = Vec::new();
        let mut keys: Vec<_> = owner.keys().copied().filter(|(a, b)| a < b).collect();
        keys.sort_unstable();
        for (a, b) in keys {
            let (Some(&f1), Some(&f2)) = (owner.get(&(a, b)), owner.get(&(b, a))) else {
                continue;
            };
            let n1 = self.facets[f1].normal;
            let n2 = self.facets[f2].normal;
            let angle = n1.cross(n2).norm().atan2(n1.dot(n2));
            out.push(Edge { a, b, length: (self.vertices[b] - self.vertices[a]).norm(), exterior_angle: angle });
        }
        out
    }

    pub fn support(&self, u: Vec3<T>) -> Result<T> {
        if u.norm() == T::zero() {
            return Err(GeomError::InvalidDirection);
        }
        Ok(self.support_unchecked(u))
    }

    pub(crate) fn support_unchecked(&self, u: Vec3<T>) -> T {
        self.vertices.iter().map(|v| v.dot(u)).fold(T::neg_infinity(), T::max)
    }

    pub fn rotate(&self, q: &UnitQuaternion<T>) -> Self {
        self.map_vertices(|v| q.apply(v))
    }

    pub fn translate(&self, t: Vec3<T>) -> Self {
        self.map_vertices(|v| v + t)
    }

    /// Homothety about the origin, `alpha > 0`.
    pub fn scale(&self, alpha: T) -> Self {
        assert!(alpha > T::zero(), "scale must be positive");
        self.map_vertices(|v| v.scale(alpha))
    }

    /// Facet planes with near-duplicate normals merged.
    pub fn to_hpolytope(&self) -> HPolytope<T> {
        let mut normals: Vec<Vec3<T>> = Vec::new();
        let mut offsets: Vec<T> = Vec::new();
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(16.0));
        for f in &self.facets {
            if let Some(k) = normals.iter().position(|n| (*n - f.normal).norm() <= tol) {
                offsets[k] = offsets[k].max(f.offset);
            } else {
                normals.push(f.normal);
                offsets.push(f.offset);
            }
        }
        HPolytope::from_parts(normals.into_iter().map(|n| n.to_vec()).collect(), offsets)
            .expect("facet normals are finite and nonzero")
    }

    /// Minimum normalized slack of a point against the facet planes.
    pub fn point_margin(&self, p: Vec3<T>) -> T {
        self.facets.iter().map(|f| f.offset - f.normal.dot(p)).fold(T::infinity(), T::min)
    }

    pub fn radius_about(&self, c: Vec3<T>) -> T {
        self.vertices.iter().map(|&v| (v - c).norm()).fold(T::zero(), T::max)
    }
}

struct HullFace<T> {
    v: [usize; 3],
    n: Vec3<T>,
    off: T,
    alive: bool,
}

fn face_plane<T: Scalar>(pts: &[Vec3<T>], v: [usize; 3]) -> (Vec3<T>, T) {
    let (a, b, c) = (pts[v[0]], pts[v[1]], pts[v[2]]);
    let n = (b - a).cross(c - a);
    let n = n.normalized().unwrap_or(n);
    (n, n.dot(a))
}

/// Hull vertices whose incident facet normals span R^3.
fn corner_vertices<T: Scalar>(verts: &[Vec3<T>], faces: &[[usize; 3]]) -> Vec<Vec3<T>> {
    let scale = verts.iter().map(|v| v.norm()).fold(T::zero(), T::max).max(T::one());
    let eps = scale * (T::epsilon() * T::lit(1e4));
    let planes: Vec<(Vec3<T>, T)> = faces
        .iter()
        .filter_map(|&f| {
            let (n, off) = face_plane(verts, f);
            n.normalized().map(|n| (n, off))
        })
        .collect();
    let flat = T::epsilon().sqrt();
    verts
        .iter()
        .copied()
        .filter(|&v| {
            let on: Vec<Vec3<T>> = planes.iter().filter(|(n, off)| (n.dot(v) - *off).abs() <= eps).map(|p| p.0).collect();
            (0..on.len()).any(|i| {
                (i + 1..on.len()).any(|j| {
                    let c = on[i].cross(on[j]);
                    c.norm() > flat && on.iter().any(|k| c.dot(*k).abs() > flat)
                })
            })
        })
        .collect()
}

/// Returns compacted hull vertices and CCW-outward triangles indexing them.
fn incremental_hull<T: Scalar>(input: &[Vec3<T>]) -> Result<(Vec<Vec3<T>>, Vec<[usize; 3]>)> {
    let degenerate = || GeomError::DegenerateShape("point set is not full-dimensional".into());
    if input.len() < 4 {
        return Err(degenerate());
    }
    let pts = input;
    let mut lo = pts[0];
    let mut hi = pts[0];
    for p in pts {
        lo = Vec3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Vec3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    let scale = (hi - lo).norm();
    if scale == T::zero() {
        return Err(degenerate());
    }
    let eps = scale * (T::epsilon() * T::lit(1e4));

    // Initial simplex from extreme points.
    let i0 = (0..pts.len())
        .min_by(|&a, &b| pts[a].x.partial_cmp(&pts[b].x).unwrap())
        .unwrap();
    let far = |f: &dyn Fn(Vec3<T>) -> T| {
        (0..pts.len())
            .max_by(|&a, &b| f(pts[a]).partial_cmp(&f(pts[b])).unwrap())
            .unwrap()
    };
    let i1 = far(&|p| (p - pts[i0]).norm());
    let dir = pts[i1] - pts[i0];
    if dir.norm() <= eps {
        return Err(degenerate());
    }
    let i2 = far(&|p| dir.cross(p - pts[i0]).norm());
    let nrm = dir.cross(pts[i2] - pts[i0]);
    if nrm.norm() <= eps * dir.norm() {
        return Err(degenerate());
    }
    let nrm = nrm.normalized().unwrap();
    let i3 = far(&|p| nrm.dot(p - pts[i0]).abs());
    if nrm.dot(pts[i3] - pts[i0]).abs() <= eps {
        return Err(degenerate());
    }

    let mut faces: Vec<HullFace<T>> = Vec::new();
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    let add_face = |faces: &mut Vec<HullFace<T>>, owner: &mut HashMap<(usize, usize), usize>, v: [usize; 3]| {
        let (n, off) = face_plane(pts, v);
        let id = faces.len();
        faces.push(HullFace { v, n, off, alive: true });
        for k in 0..3 {
            owner.insert((v[k], v[(k + 1) % 3]), id);
        }
    };
    let simplex = [i0, i1, i2, i3];
    for skip in 0..4 {
        let mut v = [0usize; 3];
        let mut k = 0;
        for (j, &s) in simplex.iter().enumerate() {
            if j != skip {
                v[k] = s;
                k += 1;
            }
        }
        let (n, off) = face_plane(pts, v);
        if n.dot(pts[simplex[skip]]) > off {
            v.swap(1, 2);
        }
        add_face(&mut faces, &mut edge_owner, v);
    }

    let in_simplex: HashSet<usize> = simplex.iter().copied().collect();
    for pi in 0..pts.len() {
        if in_simplex.contains(&pi) {
            continue;
        }
        let p = pts[pi];
        // Most visible face seeds a connected visible region.
        let mut seed: Option<(usize, T)> = None;
        for (fi, f) in faces.iter().enumerate() {
            if !f.alive {
                continue;
            }
            let d = f.n.dot(p) - f.off;
            if d > eps && seed.is_none_or(|(_, bd)| d > bd) {
                seed = Some((fi, d));
            }
        }
        let Some((seed, _)) = seed else { continue };
        let mut visible: HashSet<usize> = HashSet::new();
        let mut queue = VecDeque::from([seed]);
        visible.insert(seed);
        while let Some(fi) = queue.pop_front() {
            let v = faces[fi].v;
            for k in 0..3 {
                if let Some(&nb) = edge_owner.get(&(v[(k + 1) % 3], v[k])) {
                    if !visible.contains(&nb) && faces[nb].alive {
                        let d = faces[nb].n.dot(p) - faces[nb].off;
                        if d > eps {
                            visible.insert(nb);
                            queue.push_back(nb);
                        }
                    }
                }
            }
        }
        let mut horizon = Vec::new();
        let mut vis_sorted: Vec<usize> = visible.iter().copied().collect();
        vis_sorted.sort_unstable();
        for &fi in &vis_sorted {
            let v = faces[fi].v;
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                match edge_owner.get(&(b, a)) {
                    Some(nb) if visible.contains(nb) => {}
                    _ => horizon.push((a, b)),
                }
            }
        }
        for &fi in &vis_sorted {
            let v = faces[fi].v;
            faces[fi].alive = false;
            for k in 0..3 {
                let e = (v[k], v[(k + 1) % 3]);
                if edge_owner.get(&e) == Some(&fi) {
                    edge_owner.remove(&e);
                }
            }
        }
        for (a, b) in horizon {
            add_face(&mut faces, &mut edge_owner, [a, b, pi]);
        }
    }

    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut verts = Vec::new();
    let mut out = Vec::new();
    for f in faces.iter().filter(|f| f.alive) {
        let idx = f.v.map(|i| {
            *remap.entry(i).or_insert_with(|| {
                verts.push(pts[i]);
                verts.len() - 1
            })
        });
        out.push(idx);
    }
    Ok((verts, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn unit_cube_measures() {
        let c = VPolytope3::<f64>::cube(1.0);
        assert_eq!(c.vertices().len(), 8);
        assert_relative_eq!(c.volume(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(c.surface_area(), 6.0, max_relative = 1e-14);
        let c2 = VPolytope3::<f64>::cube(2.0);
        assert_relative_eq!(c2.volume(), 8.0, max_relative = 1e-14);
        assert_relative_eq!(c2.surface_area(), 24.0, max_relative = 1e-14);
    }

    #[test]
    fn corner_tetrahedron_volume() {
        let z = 0.0;
        let t = hull3(&[
            Vec3::new(z, z, z),
            Vec3::new(1.0, z, z),
            Vec3::new(z, 1.0, z),
            Vec3::new(z, z, 1.0),
        ])
        .unwrap();
        // det([e1, e2, e3]) / 6
        assert_relative_eq!(t.volume(), 1.0 / 6.0, max_relative = 1e-14);
        assert_eq!(t.facets().len(), 4);
    }

    #[test]
    fn interior_point_dropped() {
        let mut pts: Vec<Vec3<f64>> = VPolytope3::cube(1.0).vertices().to_vec();
        pts.push(Vec3::new(0.5, 0.5, 0.5));
        let h = hull3(&pts).unwrap();
        assert_eq!(h.vertices().len(), 8);
        assert_relative_eq!(h.volume(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn edge_and_face_points_dropped() {
        let c = VPolytope3::<f64>::cube(1.0);
        let pts: Vec<_> = c.vertices().iter().flat_map(|&a| c.vertices().iter().map(move |&b| a + b)).collect();
        let h = hull3(&pts).unwrap();
        assert_eq!(h.vertices().len(), 8);
        assert_relative_eq!(h.volume(), 8.0, max_relative = 1e-14);
        let mut pts = c.vertices().to_vec();
        pts.extend([Vec3::new(0.5, 0.0, 0.0), Vec3::new(0.5, 0.5, 1.0)]);
        pts.rotate_left(6);
        assert_eq!(hull3(&pts).unwrap().vertices().len(), 8);
    }

    #[test]
    fn coplanar_rejected() {
        let pts = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(0.3, 0.2, 0.0),
        ];
        assert!(matches!(hull3(&pts), Err(GeomError::DegenerateShape(_))));
    }

    #[test]
    fn random_ball_points_hull() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut pts = Vec::new();
        while pts.len() < 100 {
            let p = Vec3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            if p.norm() <= 1.0 {
                pts.push(p);
            }
        }
        let h = hull3(&pts).unwrap();
        assert!(h.volume() < 4.0 / 3.0 * std::f64::consts::PI);
        for p in &pts {
            assert!(h.point_margin(*p) >= -1e-12);
        }
        // Euler characteristic of a triangulated sphere.
        let v = h.vertices().len() as i64;
        let f = h.facets().len() as i64;
        let e = h.edges().len() as i64;
        assert_eq!(v - e + f, 2);
    }

    #[test]
    fn cube_edges_and_angles() {
        let c = VPolytope3::<f64>::cube(1.0);
        let sharp: Vec<_> = c.edges().into_iter().filter(|e| e.exterior_angle > 1e-9).collect();
        assert_eq!(sharp.len(), 12);
        for e in sharp {
            assert_relative_eq!(e.exterior_angle, std::f64::consts::FRAC_PI_2, max_relative = 1e-14);
            assert_relative_eq!(e.length, 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn outward_normals() {
        let t = VPolytope3::<f64>::regular_tetrahedron(1.0);
        for f in t.facets() {
            assert!(f.offset > 0.0, "origin is interior so offsets are positive");
        }
        assert_relative_eq!(t.volume(), 1.0 / (6.0 * 2f64.sqrt()), max_relative = 1e-14);
        assert_relative_eq!(t.surface_area(), 3f64.sqrt(), max_relative = 1e-14);
    }
}
