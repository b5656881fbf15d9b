//! Orientation-fit oracle: translation fit at one orientation, sweeps over
//! many orientations, and the largest homothetic copy that fits in all of them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::hpolytope::HPolytope;
use crate::inball::{erosion, max_slack_point};
use crate::rotation::{Rotation, UnitQuaternion};
use crate::scalar::Scalar;
use crate::shape::Shape;
use crate::tol::Tolerances;
use crate::vector::norm;

/// Default seed for sampled 3D orientations.
pub const DEFAULT_SEED: u64 = 0x6B61_6B65;
/// Bisection steps used by [`max_scale`].
pub const MAX_SCALE_ITERS: usize = 48;

/// Result of a fixed-orientation fit test.
///
/// `margin` is the radius of the largest ball (in the metric of the
/// normalized constraints) inside the set of valid translations; it is
/// negative when no translation works. `translation` is that ball's center.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport<T> {
    pub fits: bool,
    pub margin: T,
    pub translation: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport<T> {
    pub samples: usize,
    pub worst_margin: T,
    /// Planar angle of the worst sample; for 3D the rotation angle of its quaternion.
    pub worst_angle: T,
    pub worst_index: usize,
    /// Translation witnessing the worst sample.
    pub worst_translation: Vec<T>,
    /// Every sampled orientation fits.
    pub all_fit: bool,
    /// Fit is proven for every orientation, not just the samples (2D only).
    pub certified: bool,
    /// Lipschitz constant of the margin in the rotation angle.
    pub lipschitz_bound: T,
    /// 3D sweeps are statistical evidence only.
    pub sampled_only: bool,
}

/// Fit of `ρP` in `Q` by translation.
pub fn fits_translated<T: Scalar>(p: &Shape<T>, q: &HPolytope<T>, rot: &Rotation<T>) -> Result<FitReport<T>> {
    fits_translated_with(p, q, rot, &Tolerances::default())
}

pub fn fits_translated_with<T: Scalar>(
    p: &Shape<T>,
    q: &HPolytope<T>,
    rot: &Rotation<T>,
    tol: &Tolerances<T>,
) -> Result<FitReport<T>> {
    if p.dim() != q.dim() || rot.dim() != q.dim() {
        return Err(GeomError::DimensionMismatch { expected: q.dim(), got: p.dim().max(rot.dim()) });
    }
    let e = erosion(q, &p.rotate(rot)?)?;
    let (translation, margin) = max_slack_point(&e)?;
    Ok(FitReport { fits: margin >= -tol.abs, margin, translation })
}

/// Orientations used by a sweep: a uniform angle grid in the plane, seeded
/// uniform quaternions in space.
pub fn sweep_orientations<T: Scalar>(dim: usize, n: usize, seed: u64) -> Result<Vec<Rotation<T>>> {
    match dim {
        2 => Ok((0..n)
            .map(|k| Rotation::Planar(T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(n)))
            .collect()),
        3 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..n).map(|_| Rotation::Spatial(UnitQuaternion::random(&mut rng))).collect())
        }
        d => Err(GeomError::InvalidParameter(format!("orientation sweep in dimension {d}"))),
    }
}

fn rotation_angle<T: Scalar>(r: &Rotation<T>) -> T {
    match r {
        Rotation::Planar(a) => *a,
        Rotation::Spatial(q) => T::lit(2.0) * q.components()[0].abs().min(T::one()).acos(),
    }
}

/// Supports of each rotated copy of `P` against every normal of `Q`.
///
/// Fitting `α ρ_k P` only changes the offsets to `b_i - α h_k(a_i)`, so the
/// table is reused across scales.
struct OrientationTable<T> {
    rotations: Vec<Rotation<T>>,
    supports: Vec<Vec<T>>,
}

impl<T: Scalar> OrientationTable<T> {
    fn new(p: &Shape<T>, q: &HPolytope<T>, rotations: Vec<Rotation<T>>) -> Result<Self> {
        let supports = rotations
            .par_iter()
            .map(|r| {
                let rp = p.rotate(r)?;
                q.normals().iter().map(|a| rp.support(a)).collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rotations, supports })
    }

    fn margin(&self, q: &HPolytope<T>, k: usize, alpha: T) -> Result<(Vec<T>, T)> {
        let offsets = q.offsets().iter().zip(&self.supports[k]).map(|(&b, &h)| b - alpha * h).collect();
        max_slack_point(&q.with_offsets(offsets))
    }
}

/// Evaluates the fit at `n` orientations.
///
/// With `certify` (planar only) the report is certified when the worst
/// sampled margin exceeds `L · (2π/n) / 2` up to the fit tolerance, where `L` is the largest distance
/// from `P`'s rotation center to its boundary: the margin moves by at most
/// `L |θ - θ'|` between orientations, so every orientation then fits.
pub fn sweep_fit<T: Scalar>(p: &Shape<T>, q: &HPolytope<T>, n: usize, certify: bool) -> Result<SweepReport<T>> {
    sweep_fit_with(p, q, n, certify, DEFAULT_SEED, &Tolerances::default())
}

pub fn sweep_fit_with<T: Scalar>(
    p: &Shape<T>,
    q: &HPolytope<T>,
    n: usize,
    certify: bool,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<SweepReport<T>> {
    if n < 8 {
        return Err(GeomError::InvalidParameter(format!("sweep needs at least 8 samples, got {n}")));
    }
    if p.dim() != q.dim() {
        return Err(GeomError::DimensionMismatch { expected: q.dim(), got: p.dim() });
    }
    let d = q.dim();
    if certify && d != 2 {
        return Err(GeomError::UnsupportedCertification);
    }
    let table = OrientationTable::new(p, q, sweep_orientations(d, n, seed)?)?;
    let results = (0..n)
        .into_par_iter()
        .map(|k| table.margin(q, k, T::one()))
        .collect::<Result<Vec<_>>>()?;
    // Reduce by index so the report does not depend on scheduling.
    let mut worst = 0;
    for (k, r) in results.iter().enumerate() {
        if r.1 < results[worst].1 {
            worst = k;
        }
    }
    let worst_margin = results[worst].1;
    let lipschitz_bound = lipschitz_constant(p)?;
    let spacing = T::TAU() / T::from_usize_lossy(n);
    let all_fit = worst_margin >= -tol.abs;
    // Same slack as a single fit: every orientation then has margin >= -tol.abs.
    let certified = certify && d == 2 && worst_margin - lipschitz_bound * spacing / T::lit(2.0) >= -tol.abs;
    Ok(SweepReport {
        samples: n,
        worst_margin,
        worst_angle: rotation_angle(&table.rotations[worst]),
        worst_index: worst,
        worst_translation: results[worst].0.clone(),
        all_fit,
        certified,
        lipschitz_bound,
        sampled_only: d != 2,
    })
}

/// A ball turning about its own center has a constant support function, so
/// its margin does not move at all.
fn lipschitz_constant<T: Scalar>(p: &Shape<T>) -> Result<T> {
    match p {
        Shape::Ball(_) => Ok(T::zero()),
        _ => p.radius_about(&p.rotation_center()?),
    }
}

/// Upper bracket for [`max_scale`]: ratio of axis widths of `Q` and `P`.
fn axis_width_bound<T: Scalar>(p: &Shape<T>, q: &HPolytope<T>) -> Result<T> {
    let d = q.dim();
    let mut ub = T::infinity();
    for j in 0..d {
        let mut u = vec![T::zero(); d];
        u[j] = T::one();
        let neg: Vec<T> = u.iter().map(|&x| -x).collect();
        let wp = p.support(&u)? + p.support(&neg)?;
        let wq = q.support(&u)? + q.support(&neg)?;
        if wp > T::zero() {
            ub = ub.min(wq / wp);
        }
    }
    if !ub.is_finite() {
        return Err(GeomError::DegenerateShape("shape has zero extent along every axis".into()));
    }
    Ok(ub.max(T::zero()))
}

/// Largest `α` such that `αP` fits in `Q` at every sampled orientation,
/// found by bisection. Returns 0 when no positive scale fits.
pub fn max_scale<T: Scalar>(p: &Shape<T>, q: &HPolytope<T>, n: usize) -> Result<T> {
    max_scale_with(p, q, n, DEFAULT_SEED, &Tolerances::default())
}

pub fn max_scale_with<T: Scalar>(
    p: &Shape<T>,
    q: &HPolytope<T>,
    n: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<T> {
    if n < 8 {
        return Err(GeomError::InvalidParameter(format!("sweep needs at least 8 samples, got {n}")));
    }
    if p.dim() != q.dim() {
        return Err(GeomError::DimensionMismatch { expected: q.dim(), got: p.dim() });
    }
    let hi0 = axis_width_bound(p, q)?;
    // Scaling is about the rotation center so that the bracket does not
    // depend on where P sits.
    let center = p.rotation_center()?;
    let neg: Vec<T> = center.iter().map(|&x| -x).collect();
    let centered = p.translate(&neg)?;
    let table = OrientationTable::new(&centered, q, sweep_orientations(q.dim(), n, seed)?)?;
    let mut hint = 0usize;
    let mut passes = |alpha: T| -> Result<bool> {
        for off in 0..n {
            let k = (hint + off) % n;
            if table.margin(q, k, alpha)?.1 < -tol.abs {
                hint = k;
                return Ok(false);
            }
        }
        Ok(true)
    };
    if passes(hi0)? {
        return Ok(hi0);
    }
    let (mut lo, mut hi) = (T::zero(), hi0);
    for _ in 0..MAX_SCALE_ITERS {
        let mid = (lo + hi) / T::lit(2.0);
        if passes(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Largest scale for a single orientation, solved directly as one LP:
/// `max α` subject to `<a_i, t> + α h(a_i) <= b_i`.
pub fn max_scale_at<T: Scalar>(p: &Shape<T>, q: &HPolytope<T>, rot: &Rotation<T>) -> Result<T> {
    use crate::lp::{solve_lp, LpProblem, LpStatus};
    let center = p.rotation_center()?;
    let neg: Vec<T> = center.iter().map(|&x| -x).collect();
    let rp = p.translate(&neg)?.rotate(rot)?;
    let d = q.dim();
    let normals = q
        .normals()
        .iter()
        .map(|a| {
            let mut row = a.clone();
            row.push(rp.support(a)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut c = vec![T::zero(); d + 1];
    c[d] = T::one();
    let sol = solve_lp(&LpProblem::new(c, normals, q.offsets().to_vec())?)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.value.max(T::zero())),
        LpStatus::Infeasible => Ok(T::zero()),
        LpStatus::Unbounded => Err(GeomError::Unbounded),
    }
}

/// Normalized-constraint slack of `translation` for the rotated shape, used
/// to cross-check reports.
pub fn margin_at<T: Scalar>(p: &Shape<T>, q: &HPolytope<T>, rot: &Rotation<T>, translation: &[T]) -> Result<T> {
    let placed = p.rotate(rot)?.translate(translation)?;
    let mut m = T::infinity();
    for (a, &b) in q.normals().iter().zip(q.offsets()) {
        m = m.min((b - placed.support(a)?) / norm(a));
    }
    Ok(m)
}
