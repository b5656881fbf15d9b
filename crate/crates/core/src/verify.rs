//! Seeded experiment suites and scenario pipelines.
//!
//! Every suite returns an [`ExperimentReport`]. Trials draw from their own
//! random stream, `ChaCha8(seed)` with stream id equal to the trial index, so
//! results do not depend on thread count or scheduling.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ball::Ball;
use crate::error::{GeomError, Result};
use crate::fit::{fits_translated, margin_at, max_scale, max_scale_at, sweep_fit};
use crate::hpolytope::HPolytope;
use crate::inball::{chebyshev_center, erosion, min_width};
use crate::minkowski::{interpolate, minkowski_sum2, minkowski_sum3, pairwise_hull2, quermass, steiner_coeffs3};
use crate::mu::{edge_direction, mu_average_poly, mu_average_vec, mu_rotate, phi, polygon_from_phi, MuVector};
use crate::polygon::ConvexPolygon;
use crate::polytope3::VPolytope3;
use crate::rotation::{Rotation, UnitQuaternion};
use crate::shape::{contains, Shape};
use crate::vector::{Vec2, Vec3};

/// Grid `{0, 0.1, ..., 1}` used by the interpolation and concavity suites.
pub const LAMBDA_GRID: usize = 11;
/// Gap required by strict inequalities on shapes of unit scale.
pub const STRICT_GAP: f64 = 1e-6;
/// Safety factor applied to `max_scale` when manufacturing members of `K(Q)`.
pub const SHRINK: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialStatus {
    Pass,
    Fail,
    /// The trial's inputs did not satisfy the suite's hypothesis.
    Precondition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub label: String,
    pub inputs_digest: String,
    pub measured: BTreeMap<String, f64>,
    /// Largest excess of any check over its tolerance; positive means failure.
    pub violation: f64,
    pub status: TrialStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub precondition_failures: usize,
    pub worst_violation: f64,
    pub details: Vec<TrialRecord>,
}

impl ExperimentReport {
    pub fn from_records(name: &str, seed: u64, details: Vec<TrialRecord>) -> Self {
        let failures = details.iter().filter(|r| r.status == TrialStatus::Fail).count();
        let precondition_failures = details.iter().filter(|r| r.status == TrialStatus::Precondition).count();
        let worst_violation = details
            .iter()
            .filter(|r| r.status != TrialStatus::Precondition)
            .map(|r| r.violation)
            .fold(f64::NEG_INFINITY, f64::max);
        Self {
            name: name.to_string(),
            seed,
            trials: details.len(),
            failures,
            precondition_failures,
            worst_violation: if worst_violation.is_finite() { worst_violation } else { 0.0 },
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.precondition_failures == 0
    }
}

/// Accumulates the checks of one trial.
struct Trial {
    trial: usize,
    label: String,
    digest: String,
    measured: BTreeMap<String, f64>,
    excess: f64,
    precondition: bool,
}

impl Trial {
    fn new(trial: usize, label: impl Into<String>) -> Self {
        Self {
            trial,
            label: label.into(),
            digest: String::new(),
            measured: BTreeMap::new(),
            excess: f64::NEG_INFINITY,
            precondition: false,
        }
    }

    fn inputs<S: Serialize + ?Sized>(&mut self, x: &S) {
        self.digest = digest(x);
    }

    fn measure(&mut self, key: &str, v: f64) {
        self.measured.insert(key.to_string(), v);
    }

    /// Records `violation <= tol` as a check.
    fn check(&mut self, violation: f64, tol: f64) {
        let e = violation - tol;
        // NaN counts as a failure.
        self.excess = if e.is_nan() { f64::INFINITY } else { self.excess.max(e) };
    }

    fn require(&mut self, ok: bool) {
        self.check(if ok { 0.0 } else { 1.0 }, 0.0);
    }

    fn finish(self) -> TrialRecord {
        let violation = if self.excess == f64::NEG_INFINITY { 0.0 } else { self.excess };
        let status = if self.precondition {
            TrialStatus::Precondition
        } else if violation > 0.0 {
            TrialStatus::Fail
        } else {
            TrialStatus::Pass
        };
        let violation = if violation.is_finite() { violation } else { f64::MAX };
        TrialRecord {
            trial: self.trial,
            label: self.label,
            inputs_digest: self.digest,
            measured: self.measured,
            violation,
            status,
        }
    }
}

/// Hex SHA-256 prefix of the JSON encoding of `x`.
pub fn digest<S: Serialize + ?Sized>(x: &S) -> String {
    let bytes = serde_json::to_vec(x).unwrap_or_default();
    hex::encode(&Sha256::digest(&bytes)[..16])
}

/// Random stream for one trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trials<F>(name: &str, trials: usize, seed: u64, f: F) -> Result<ExperimentReport>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<TrialRecord> + Sync,
{
    let details = (0..trials)
        .into_par_iter()
        .map(|i| f(i, &mut trial_rng(seed, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::from_records(name, seed, details))
}

fn lambda(i: usize) -> f64 {
    i as f64 / (LAMBDA_GRID - 1) as f64
}

// Random shapes.

fn disk_point<R: Rng + ?Sized>(rng: &mut R) -> Vec2<f64> {
    let r = rng.random::<f64>().sqrt();
    Vec2::from_angle(TAU * rng.random::<f64>()).scale(r)
}

fn ball_point<R: Rng + ?Sized>(rng: &mut R) -> Vec3<f64> {
    loop {
        let p = Vec3::new(
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
        );
        if p.norm() <= 1.0 {
            return p;
        }
    }
}

/// Hull of `n` uniform points in the unit disk.
pub fn random_convex_polygon(n: usize, seed: u64) -> Result<ConvexPolygon<f64>> {
    random_polygon_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_polygon_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ConvexPolygon<f64>> {
    if n < 3 {
        return Err(GeomError::InvalidParameter(format!("random polygon needs n >= 3, got {n}")));
    }
    for _ in 0..16 {
        let pts: Vec<_> = (0..n).map(|_| disk_point(rng)).collect();
        let p = ConvexPolygon::from_points(&pts);
        if !p.is_degenerate() {
            return Ok(p);
        }
    }
    Err(GeomError::DegenerateShape("random polygon stayed degenerate after 16 draws".into()))
}

/// Hull of `n` uniform points in the unit ball.
pub fn random_body3<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<VPolytope3<f64>> {
    if n < 4 {
        return Err(GeomError::InvalidParameter(format!("random body needs n >= 4, got {n}")));
    }
    for _ in 0..16 {
        let pts: Vec<_> = (0..n).map(|_| ball_point(rng)).collect();
        if let Ok(k) = VPolytope3::from_points(&pts) {
            return Ok(k);
        }
    }
    Err(GeomError::DegenerateShape("random body stayed degenerate after 16 draws".into()))
}

/// Random μ-vector: uniform lengths, closed up by adding to the two edge
/// directions that bracket the missing displacement.
pub fn random_mu_vector<R: Rng + ?Sized>(mu: usize, rng: &mut R) -> Result<MuVector<f64>> {
    let mut lengths: Vec<f64> = (0..mu).map(|_| rng.random::<f64>()).collect();
    let gap = (0..mu).fold(Vec2::zero(), |acc, k| acc - edge_direction::<f64>(mu, k).scale(lengths[k]));
    if gap.norm() > 0.0 {
        let step = TAU / mu as f64;
        let first = edge_direction::<f64>(mu, 0).angle();
        let rel = (gap.angle() - first).rem_euclid(TAU);
        let j = ((rel / step).floor() as usize).min(mu - 1);
        let (e0, e1) = (edge_direction::<f64>(mu, j), edge_direction::<f64>(mu, (j + 1) % mu));
        let det = e0.cross(e1);
        lengths[j] += (gap.cross(e1) / det).max(0.0);
        lengths[(j + 1) % mu] += (e0.cross(gap) / det).max(0.0);
    }
    MuVector::new(mu, lengths)
}

fn random_angle<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn random_rotation3<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Result<UnitQuaternion<f64>> {
    let axis = loop {
        if let Some(a) = ball_point(rng).normalized() {
            break a;
        }
    };
    UnitQuaternion::from_axis_angle(axis, random_angle(rng, lo, hi))
}

/// Scales `p` so it fits `q` at angle `rot` with the [`SHRINK`] margin and
/// returns the scaled shape with a witness translation.
fn shrink_into(p: &ConvexPolygon<f64>, q: &HPolytope<f64>, rot: f64) -> Result<(Shape<f64>, Vec<f64>)> {
    let rot = Rotation::Planar(rot);
    let shape: Shape<f64> = p.clone().into();
    let alpha = SHRINK * max_scale_at(&shape, q, &rot)?;
    let scaled = shape.scale(alpha)?;
    let t = fits_translated(&scaled, q, &rot)?.translation;
    Ok((scaled, t))
}

fn psi(k: &Shape<f64>, w: usize) -> Result<f64> {
    Ok(quermass(k, w)?.powf(1.0 / (k.dim() - w) as f64))
}

fn check_wd(w: usize, d: usize) -> Result<()> {
    if matches!((w, d), (0, 2) | (0, 3) | (1, 3)) {
        Ok(())
    } else {
        Err(GeomError::InvalidParameter(format!("(w, d) = ({w}, {d}) needs d >= 2 + w with d in {{2, 3}}")))
    }
}

fn random_body<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Shape<f64>> {
    Ok(if d == 2 {
        random_polygon_with(rng.random_range(3..=12), rng)?.into()
    } else {
        random_body3(rng.random_range(6..=14), rng)?.into()
    })
}

fn rotate_randomly<R: Rng + ?Sized>(k: &Shape<f64>, rng: &mut R, lo: f64, hi: f64) -> Result<Shape<f64>> {
    let rot = if k.dim() == 2 {
        Rotation::Planar(random_angle(rng, lo, hi))
    } else {
        Rotation::Spatial(random_rotation3(rng, lo, hi)?)
    };
    k.rotate(&rot)
}

fn random_offset<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    (0..d).map(|_| 4.0 * rng.random::<f64>() - 2.0).collect()
}

fn points_of(k: &Shape<f64>) -> Vec<Vec<f64>> {
    k.points().unwrap_or_default()
}

// Suites.

/// Minkowski interpolation stays inside `Q` (containment version) and stays
/// placeable at a shared orientation with the averaged translation.
pub fn check_interpolation_fit(trials: usize, seed: u64) -> Result<ExperimentReport> {
    run_trials("interpolation-fit", trials, seed, |i, rng| {
        let qp = random_polygon_with(8, rng)?;
        let q = HPolytope::from_polygon(&qp);
        let p0 = random_polygon_with(rng.random_range(3..=10), rng)?;
        let p1 = random_polygon_with(rng.random_range(3..=10), rng)?;
        let rho = random_angle(rng, 0.0, TAU);
        let mut t = Trial::new(i, "interpolation");
        t.inputs(&(&qp, &p0, &p1, rho));

        let qs: Shape<f64> = q.clone().into();
        let (a0, t0) = shrink_into(&p0, &q, 0.0)?;
        let (a1, t1) = shrink_into(&p1, &q, 0.0)?;
        let (a0, a1) = (a0.translate(&t0)?, a1.translate(&t1)?);
        let (b0, u0) = shrink_into(&p0, &q, rho)?;
        let (b1, u1) = shrink_into(&p1, &q, rho)?;
        let rot = Rotation::Planar(rho);
        let mut worst_contained = f64::INFINITY;
        let mut worst_placed = f64::INFINITY;
        for k in 0..LAMBDA_GRID {
            let l = lambda(k);
            let m = contains(&qs, &interpolate(&a0, &a1, l)?)?.margin;
            worst_contained = worst_contained.min(m);
            let pl = interpolate(&b0, &b1, l)?;
            let tl: Vec<f64> = u0.iter().zip(&u1).map(|(&x, &y)| (1.0 - l) * x + l * y).collect();
            let m = margin_at(&pl, &q, &rot, &tl)?;
            worst_placed = worst_placed.min(m);
            t.require(fits_translated(&pl, &q, &rot)?.fits);
        }
        t.measure("worst_contained_margin", worst_contained);
        t.measure("worst_placed_margin", worst_placed);
        t.check(-worst_contained, 1e-9);
        t.check(-worst_placed, 1e-9);
        Ok(t.finish())
    })
}

/// `ψ_w` of the midpoint body against the common value after rescaling
/// `P1` so both ends agree. Trials cycle through independent pairs,
/// rotated copies (strict gain) and homothets (equality).
pub fn check_halfway_gain(trials: usize, seed: u64, w: usize, d: usize) -> Result<ExperimentReport> {
    check_wd(w, d)?;
    let name = format!("halfway-gain-w{w}-d{d}");
    run_trials(&name, trials, seed, |i, rng| {
        let p0 = random_body(d, rng)?;
        let (label, raw) = match i % 3 {
            0 => ("independent", random_body(d, rng)?),
            1 => ("rotated", rotate_randomly(&p0, rng, 0.4, 1.2)?),
            _ => ("homothet", p0.scale(0.3 + 1.7 * rng.random::<f64>())?.translate(&random_offset(d, rng))?),
        };
        let mut t = Trial::new(i, label);
        t.inputs(&(points_of(&p0), points_of(&raw)));
        let psi0 = psi(&p0, w)?;
        let p1 = raw.scale(psi0 / psi(&raw, w)?)?;
        let mid = interpolate(&p0, &p1, 0.5)?;
        let gain = psi(&mid, w)? - psi0;
        t.measure("psi0", psi0);
        t.measure("gain", gain);
        match label {
            "independent" => t.check(-gain, 1e-9),
            "rotated" => t.check(STRICT_GAP - gain, 0.0),
            _ => t.check(gain.abs(), 1e-9),
        }
        Ok(t.finish())
    })
}

/// Concavity of `λ ↦ ψ_w(P_λ)` on the 11-point grid, plus linearity on a
/// homothetic pair drawn in the same trial.
pub fn check_brunn_minkowski(trials: usize, seed: u64, w: usize, d: usize) -> Result<ExperimentReport> {
    check_wd(w, d)?;
    let name = format!("brunn-minkowski-w{w}-d{d}");
    run_trials(&name, trials, seed, |i, rng| {
        let p0 = random_body(d, rng)?;
        let p1 = random_body(d, rng)?;
        let h1 = p0.scale(0.3 + 1.7 * rng.random::<f64>())?.translate(&random_offset(d, rng))?;
        let mut t = Trial::new(i, "pair");
        t.inputs(&(points_of(&p0), points_of(&p1), points_of(&h1)));
        let curve = |a: &Shape<f64>, b: &Shape<f64>| -> Result<Vec<f64>> {
            (0..LAMBDA_GRID).map(|k| psi(&interpolate(a, b, lambda(k))?, w)).collect()
        };
        let f = curve(&p0, &p1)?;
        let (f0, f1) = (f[0], f[LAMBDA_GRID - 1]);
        let mut worst_chord = f64::NEG_INFINITY;
        let mut worst_mid = f64::NEG_INFINITY;
        for k in 0..LAMBDA_GRID {
            worst_chord = worst_chord.max((1.0 - lambda(k)) * f0 + lambda(k) * f1 - f[k]);
            if k > 0 && k + 1 < LAMBDA_GRID {
                worst_mid = worst_mid.max((f[k - 1] + f[k + 1]) / 2.0 - f[k]);
            }
        }
        let g = curve(&p0, &h1)?;
        let (g0, g1) = (g[0], g[LAMBDA_GRID - 1]);
        let worst_linear = (0..LAMBDA_GRID)
            .map(|k| (g[k] - ((1.0 - lambda(k)) * g0 + lambda(k) * g1)).abs())
            .fold(0.0, f64::max);
        t.measure("chord_deficit", worst_chord);
        t.measure("midpoint_deficit", worst_mid);
        t.measure("homothet_nonlinearity", worst_linear);
        t.check(worst_chord, 1e-9);
        t.check(worst_mid, 1e-9);
        t.check(worst_linear, 1e-7);
        Ok(t.finish())
    })
}

/// `peri(P + R) = peri(P) + peri(R)` to `1e-12` relative.
pub fn check_perimeter_additivity(trials: usize, seed: u64) -> Result<ExperimentReport> {
    run_trials("perimeter-additivity", trials, seed, |i, rng| {
        let p = random_polygon_with(rng.random_range(3..=20), rng)?;
        let r = random_polygon_with(rng.random_range(3..=20), rng)?.translate(Vec2::new(3.0, -1.0));
        let mut t = Trial::new(i, "pair");
        t.inputs(&(&p, &r));
        let s = minkowski_sum2(&p, &r).perimeter()?;
        let rel = (s - p.perimeter()? - r.perimeter()?).abs() / s;
        t.measure("perimeter_sum", s);
        t.measure("relative_error", rel);
        t.check(rel, 1e-12);
        Ok(t.finish())
    })
}

/// μ-values exercised by the φ-algebra suite.
pub const PHI_MUS: [usize; 4] = [4, 8, 16, 64];

/// Homomorphism, scaling and cyclic shift of `phi`, the constant μ-average
/// vector, and perimeter preservation of the polygon μ-average.
pub fn check_phi_algebra(trials: usize, seed: u64) -> Result<ExperimentReport> {
    run_trials("phi-algebra", trials, seed, |i, rng| {
        let mu = PHI_MUS[i % PHI_MUS.len()];
        let a = random_mu_vector(mu, rng)?;
        let b = random_mu_vector(mu, rng)?;
        let alpha = 0.1 + 2.9 * rng.random::<f64>();
        let general = random_polygon_with(rng.random_range(3..=10), rng)?;
        let mut t = Trial::new(i, format!("mu={mu}"));
        t.inputs(&(mu, a.lengths(), b.lengths(), alpha, &general));
        let p = polygon_from_phi(&a)?.translate(Vec2::new(-0.7, 0.4));
        let r = polygon_from_phi(&b)?;
        let (fp, fr) = (phi(&p, mu)?, phi(&r, mu)?);

        let hom = phi(&minkowski_sum2(&p, &r), mu)?.max_abs_diff(&fp.add(&fr)?);
        let scaling = phi(&p.scale(alpha), mu)?.max_abs_diff(&fp.scale(alpha));
        let shift = phi(&p.rotate(TAU / mu as f64), mu)?.max_abs_diff(&mu_rotate(&fp));
        let avg = mu_average_vec(&fp);
        let target = fp.total() / mu as f64;
        let constant = avg.lengths().iter().map(|&x| (x - target).abs()).fold(0.0, f64::max);
        let peri = general.perimeter()?;
        let peri_avg = (mu_average_poly(&general, mu)?.perimeter()? - peri).abs() / peri;
        for (k, v) in [("homomorphism", hom), ("scaling", scaling), ("shift", shift), ("average_constant", constant)] {
            t.measure(k, v);
            t.check(v, 1e-12);
        }
        t.measure("average_perimeter_rel", peri_avg);
        t.check(peri_avg, 1e-9);
        Ok(t.finish())
    })
}

/// μ-values used by the μ-average fit suite.
pub const FIT_MUS: [usize; 4] = [4, 6, 8, 16];

/// If `P` translates into `Q` at every `ρ^k`, its μ-average translates into
/// `Q` unrotated.
pub fn check_mu_average_fit(trials: usize, seed: u64) -> Result<ExperimentReport> {
    run_trials("mu-average-fit", trials, seed, |i, rng| {
        let mu = FIT_MUS[i % FIT_MUS.len()];
        let qp = random_polygon_with(8, rng)?;
        let p = random_polygon_with(rng.random_range(3..=8), rng)?;
        let mut t = Trial::new(i, format!("mu={mu}"));
        t.inputs(&(mu, &qp, &p));
        let q = HPolytope::from_polygon(&qp);
        let shape: Shape<f64> = p.clone().into();
        let grid: Vec<Rotation<f64>> = (0..mu).map(|k| Rotation::Planar(TAU * k as f64 / mu as f64)).collect();
        let mut alpha = f64::INFINITY;
        for r in &grid {
            alpha = alpha.min(max_scale_at(&shape, &q, r)?);
        }
        let scaled = p.scale(SHRINK * alpha);
        let sshape: Shape<f64> = scaled.clone().into();
        let mut grid_margin = f64::INFINITY;
        for r in &grid {
            grid_margin = grid_margin.min(fits_translated(&sshape, &q, r)?.margin);
        }
        t.measure("grid_margin", grid_margin);
        if grid_margin < -1e-9 {
            t.precondition = true;
            return Ok(t.finish());
        }
        let avg: Shape<f64> = mu_average_poly(&scaled, mu)?.into();
        let m = fits_translated(&avg, &q, &Rotation::Planar(0.0))?.margin;
        t.measure("average_margin", m);
        t.check(-m, 1e-9);
        Ok(t.finish())
    })
}

/// Compares candidates that sweep-fit in `Q` against the inball of `Q`.
///
/// Non-ball candidates must beat the inball's area (volume and surface in
/// 3D) by [`STRICT_GAP`]; in the plane perimeters may tie. A candidate that
/// fails the sweep is reported as a precondition failure.
pub fn check_main_theorem(q: &HPolytope<f64>, candidates: &[Shape<f64>], n: usize) -> Result<ExperimentReport> {
    check_main_theorem_seeded(q, candidates, n, crate::fit::DEFAULT_SEED)
}

pub fn check_main_theorem_seeded(
    q: &HPolytope<f64>,
    candidates: &[Shape<f64>],
    n: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let d = q.dim();
    let inball = chebyshev_center(q)?;
    let (vol_d, bnd_d) = (inball.volume()?, inball.boundary_measure()?);
    let details = candidates
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut t = Trial::new(i, p.kind());
            t.inputs(&points_of(p));
            let sweep = sweep_fit(p, q, n, d == 2)?;
            t.measure("worst_margin", sweep.worst_margin);
            t.measure("certified", if sweep.certified { 1.0 } else { 0.0 });
            if !sweep.all_fit {
                t.precondition = true;
                return Ok(t.finish());
            }
            let (vol, bnd) = (p.volume()?, p.boundary_measure()?);
            t.measure("volume", vol);
            t.measure("boundary", bnd);
            t.measure("inball_volume", vol_d);
            t.measure("inball_boundary", bnd_d);
            let is_ball = matches!(p, Shape::Ball(_));
            if is_ball {
                t.check(vol - vol_d, STRICT_GAP);
                t.check(bnd - bnd_d, STRICT_GAP);
            } else {
                t.check(vol - vol_d + STRICT_GAP, 0.0);
                if d == 2 {
                    t.check(bnd - bnd_d, STRICT_GAP);
                } else {
                    t.check(bnd - bnd_d + STRICT_GAP, 0.0);
                }
            }
            Ok(t.finish())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::from_records("main-theorem", seed, details))
}

/// Random members of `K(unit square)`: random polygons shrunk to
/// [`SHRINK`] times their `max_scale`.
pub fn main_theorem_candidates(trials: usize, seed: u64, n: usize) -> Result<Vec<Shape<f64>>> {
    let q = HPolytope::from_polygon(&ConvexPolygon::unit_square());
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let p: Shape<f64> = random_polygon_with(rng.random_range(3..=12), &mut rng)?.into();
            let alpha = max_scale(&p, &q, n)?;
            p.scale(SHRINK * alpha)
        })
        .collect()
}

pub fn check_main_theorem_suite(trials: usize, seed: u64, n: usize) -> Result<ExperimentReport> {
    let q = HPolytope::from_polygon(&ConvexPolygon::unit_square());
    let candidates = main_theorem_candidates(trials, seed, n)?;
    check_main_theorem_seeded(&q, &candidates, n, seed)
}

fn distance_to_unit_cube(p: Vec3<f64>) -> f64 {
    let c = |x: f64| x - x.clamp(0.0, 1.0);
    Vec3::new(c(p.x), c(p.y), c(p.z)).norm()
}

/// Steiner coefficients of the unit cube, a Monte Carlo estimate of
/// `vol(cube + rB)`, and a sandwich by polytopal ball approximations.
pub fn check_steiner(samples: usize, seed: u64) -> Result<ExperimentReport> {
    let cube = VPolytope3::<f64>::cube(1.0);
    let c = steiner_coeffs3(&cube)?;
    let mut details = Vec::new();

    let mut t = Trial::new(0, "cube-coefficients");
    t.inputs(cube.vertices());
    for (k, v, exact, tol) in [
        ("v", c.v, 1.0, 1e-12),
        ("s", c.s, 6.0, 1e-12),
        ("m", c.m, 3.0 * PI, 1e-9),
        ("b", c.b, 4.0 * PI / 3.0, 1e-12),
    ] {
        t.measure(k, v);
        t.check((v - exact).abs(), tol);
    }
    details.push(t.finish());

    for (idx, r) in [0.1f64, 0.5].into_iter().enumerate() {
        let mut t = Trial::new(details.len(), format!("monte-carlo r={r}"));
        t.inputs(&(r, samples, seed));
        let side = 1.0 + 2.0 * r;
        const CHUNK: usize = 1 << 16;
        let chunks = samples.div_ceil(CHUNK);
        let hits: usize = (0..chunks)
            .into_par_iter()
            .map(|ch| {
                let mut rng = trial_rng(seed ^ ((idx as u64 + 1) << 32), ch);
                let count = CHUNK.min(samples - ch * CHUNK);
                (0..count)
                    .filter(|_| {
                        let p = Vec3::new(rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>());
                        distance_to_unit_cube(p.scale(side) - Vec3::new(r, r, r)) <= r
                    })
                    .count()
            })
            .sum();
        let est = side.powi(3) * hits as f64 / samples as f64;
        let exact = c.parallel_volume(r);
        let rel = (est - exact).abs() / exact;
        t.measure("estimate", est);
        t.measure("steiner", exact);
        t.measure("relative_error", rel);
        t.check(rel, 5e-3);
        details.push(t.finish());

        // Polytopes between c r B and r B bound vol(cube + P) from both sides.
        let mut t = Trial::new(details.len(), format!("sandwich r={r}"));
        let ball = VPolytope3::<f64>::sphere_approx(r, 400);
        t.inputs(&(r, 400));
        let inner = ball.facets().iter().map(|f| f.offset).fold(f64::INFINITY, f64::min);
        let vol = minkowski_sum3(&cube, &ball)?.volume();
        let (lo, hi) = (c.parallel_volume(inner), c.parallel_volume(r));
        t.measure("volume", vol);
        t.measure("lower", lo);
        t.measure("upper", hi);
        t.check(lo - vol, 1e-9);
        t.check(vol - hi, 1e-9);
        details.push(t.finish());
    }
    Ok(ExperimentReport::from_records("steiner", seed, details))
}

/// Edge-merge sums against the pairwise hull, and erosion membership
/// against direct containment at `translations` points per trial.
pub fn check_oracle_equivalence(trials: usize, seed: u64, translations: usize) -> Result<ExperimentReport> {
    run_trials("oracle-equivalence", trials, seed, |i, rng| {
        let p = random_polygon_with(rng.random_range(3..=16), rng)?;
        let r = random_polygon_with(rng.random_range(3..=16), rng)?.translate(Vec2::new(1.5, 0.5));
        let qp = random_polygon_with(10, rng)?;
        let mut t = Trial::new(i, "pair");
        t.inputs(&(&p, &r, &qp));

        let a = minkowski_sum2(&p, &r).canonical();
        let b = pairwise_hull2(&p, &r).canonical();
        let dist = if a.len() == b.len() {
            a.vertices().iter().zip(b.vertices()).map(|(&x, &y)| (x - y).norm()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        t.measure("vertex_distance", dist.min(f64::MAX));
        t.check(dist, 1e-9);

        let q = HPolytope::from_polygon(&qp);
        let qs: Shape<f64> = q.clone().into();
        let small: Shape<f64> = p.scale(0.4).into();
        let e = erosion(&q, &small)?;
        let mut worst_diff = 0.0f64;
        let mut mismatches = 0usize;
        for _ in 0..translations {
            let x = [3.0 * rng.random::<f64>() - 1.5, 3.0 * rng.random::<f64>() - 1.5];
            let me = e.point_margin(&x);
            let mc = contains(&qs, &small.translate(&x)?)?.margin;
            worst_diff = worst_diff.max((me - mc).abs());
            if (me >= 0.0) != (mc >= 0.0) && me.abs().max(mc.abs()) > 1e-12 {
                mismatches += 1;
            }
        }
        t.measure("margin_difference", worst_diff);
        t.measure("membership_mismatches", mismatches as f64);
        t.check(worst_diff, 1e-9);
        t.require(mismatches == 0);
        Ok(t.finish())
    })
}

/// Suites reachable by name from [`run_suite`].
pub const SUITES: [&str; 9] = [
    "interpolation-fit",
    "halfway-gain",
    "brunn-minkowski",
    "perimeter-additivity",
    "phi-algebra",
    "mu-average-fit",
    "main-theorem",
    "steiner",
    "oracle-equivalence",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteParams {
    /// Trial count; `None` uses the suite default.
    pub trials: Option<usize>,
    pub seed: u64,
    pub w: usize,
    pub d: usize,
    /// Orientation samples for sweep-based suites.
    pub samples: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self { trials: None, seed: 42, w: 0, d: 2, samples: 360 }
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<ExperimentReport> {
    let n = |default: usize| p.trials.unwrap_or(default);
    match name {
        "interpolation-fit" => check_interpolation_fit(n(1000), p.seed),
        "halfway-gain" => check_halfway_gain(n(300), p.seed, p.w, p.d),
        "brunn-minkowski" => check_brunn_minkowski(n(500), p.seed, p.w, p.d),
        "perimeter-additivity" => check_perimeter_additivity(n(1000), p.seed),
        "phi-algebra" => check_phi_algebra(n(1000), p.seed),
        "mu-average-fit" => check_mu_average_fit(n(100), p.seed),
        "main-theorem" => check_main_theorem_suite(n(1000), p.seed, p.samples),
        "steiner" => check_steiner(n(2_000_000), p.seed),
        "oracle-equivalence" => check_oracle_equivalence(n(500), p.seed, 20),
        _ => Err(GeomError::UnknownScenario(name.to_string())),
    }
}

// Scenarios.

pub const SCENARIOS: [&str; 4] = ["square-reuleaux", "triangle-width", "square-rotor-scale", "mu-average-demo"];

/// Role of a figure element, used for styling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Container,
    Placed,
    Inball,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FigureItem {
    Polygon { role: Role, points: Vec<[f64; 2]> },
    Circle { role: Role, center: [f64; 2], radius: f64 },
}

impl FigureItem {
    pub fn polygon(role: Role, p: &ConvexPolygon<f64>) -> Self {
        FigureItem::Polygon { role, points: p.vertices().iter().map(|v| [v.x, v.y]).collect() }
    }

    pub fn ball(role: Role, b: &Ball<f64>) -> Self {
        FigureItem::Circle { role, center: [b.center[0], b.center[1]], radius: b.radius }
    }

    /// Planar shapes only; 3D shapes have no figure.
    pub fn shape(role: Role, s: &Shape<f64>) -> Option<Self> {
        match s {
            Shape::Polygon(p) => Some(Self::polygon(role, p)),
            Shape::Ball(b) if b.dim() == 2 => Some(Self::ball(role, b)),
            Shape::HPolytope(h) => h.to_polygon().ok().flatten().map(|p| Self::polygon(role, &p)),
            _ => None,
        }
    }
}

/// Planar figure: the container, placed shapes and the inball.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Figure {
    pub items: Vec<FigureItem>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reproduction {
    pub report: ExperimentReport,
    pub figure: Figure,
}

/// `P` placed at a sweep's worst sample.
fn worst_placement(p: &Shape<f64>, q: &HPolytope<f64>, n: usize) -> Result<(Shape<f64>, crate::fit::SweepReport<f64>)> {
    let s = sweep_fit(p, q, n, true)?;
    let placed = p.rotate(&Rotation::Planar(s.worst_angle))?.translate(&s.worst_translation)?;
    Ok((placed, s))
}

/// Runs a named scenario end to end.
pub fn reproduce(scenario: &str) -> Result<Reproduction> {
    let square = ConvexPolygon::<f64>::unit_square();
    let q = HPolytope::from_polygon(&square);
    let mut figure = Figure::default();
    let mut details = Vec::new();
    match scenario {
        "square-reuleaux" => {
            const SAMPLES: usize = 720;
            let reuleaux = ConvexPolygon::<f64>::reuleaux(1.0, 256);
            let disk = Ball::new(vec![0.5, 0.5], 0.5)?;
            let (pr, pd) = (reuleaux.perimeter()?, disk.boundary_measure()?);
            let (ar, ad) = (reuleaux.area()?, disk.volume()?);
            let expected_gap = PI / 4.0 - (PI - 3f64.sqrt()) / 2.0;

            let mut t = Trial::new(0, "perimeters");
            t.inputs(&reuleaux);
            t.measure("reuleaux_perimeter", pr);
            t.measure("disk_perimeter", pd);
            t.check((pr - PI).abs(), 1e-3);
            t.check((pd - PI).abs(), 1e-6);
            details.push(t.finish());

            let mut t = Trial::new(1, "areas");
            t.inputs(&reuleaux);
            t.measure("reuleaux_area", ar);
            t.measure("disk_area", ad);
            t.measure("area_gap", ad - ar);
            t.check((ad - ar - expected_gap).abs(), 1e-3);
            t.check(STRICT_GAP - (ad - ar), 0.0);
            details.push(t.finish());

            figure.items.push(FigureItem::polygon(Role::Container, &square));
            for (i, (label, shape)) in
                [("reuleaux-sweep", Shape::from(reuleaux.clone())), ("disk-sweep", Shape::from(disk.clone()))]
                    .into_iter()
                    .enumerate()
            {
                let (placed, s) = worst_placement(&shape, &q, SAMPLES)?;
                let mut t = Trial::new(2 + i, label);
                t.inputs(&points_of(&shape));
                t.measure("worst_margin", s.worst_margin);
                t.measure("worst_angle", s.worst_angle);
                t.measure("lipschitz_bound", s.lipschitz_bound);
                t.measure("certified", if s.certified { 1.0 } else { 0.0 });
                t.check(-s.worst_margin, 1e-6);
                t.require(s.all_fit);
                // The disk's margin does not depend on the angle, so its
                // sweep certifies; the Reuleaux polygon touches all four
                // sides at every angle and cannot clear the Lipschitz gap.
                if matches!(shape, Shape::Ball(_)) {
                    t.require(s.certified);
                }
                details.push(t.finish());
                figure.items.extend(FigureItem::shape(Role::Placed, &placed));
            }
            figure.items.push(FigureItem::ball(Role::Inball, &chebyshev_center(&q)?));
        }
        "triangle-width" => {
            let tri = ConvexPolygon::<f64>::equilateral_triangle(1.0);
            let qt = HPolytope::from_polygon(&tri);
            let ball = chebyshev_center(&qt)?;
            let (w, _) = min_width(&Shape::from(tri.clone()))?;
            let ratio = w / (2.0 * ball.radius);
            let mut t = Trial::new(0, "width-ratio");
            t.inputs(&tri);
            t.measure("min_width", w);
            t.measure("inradius", ball.radius);
            t.measure("ratio", ratio);
            t.check((ratio - 1.5).abs(), 1e-9);
            details.push(t.finish());
            figure.items.push(FigureItem::polygon(Role::Container, &tri));
            figure.items.push(FigureItem::ball(Role::Inball, &ball));
        }
        "square-rotor-scale" => {
            let p: Shape<f64> = square.clone().into();
            let alpha = max_scale(&p, &q, 720)?;
            let mut t = Trial::new(0, "rotor-scale");
            t.inputs(&square);
            t.measure("max_scale", alpha);
            t.check((alpha - 0.5f64.sqrt()).abs(), 1e-3);
            details.push(t.finish());
            let (placed, _) = worst_placement(&p.scale(alpha)?, &q, 720)?;
            figure.items.push(FigureItem::polygon(Role::Container, &square));
            figure.items.extend(FigureItem::shape(Role::Placed, &placed));
            figure.items.push(FigureItem::ball(Role::Inball, &chebyshev_center(&q)?));
        }
        "mu-average-demo" => {
            const MU: usize = 8;
            let tri: Shape<f64> = ConvexPolygon::<f64>::equilateral_triangle(1.0).into();
            let grid: Vec<Rotation<f64>> = (0..MU).map(|k| Rotation::Planar(TAU * k as f64 / MU as f64)).collect();
            let mut alpha = f64::INFINITY;
            for r in &grid {
                alpha = alpha.min(max_scale_at(&tri, &q, r)?);
            }
            let p = ConvexPolygon::<f64>::equilateral_triangle(SHRINK * alpha);
            let ps: Shape<f64> = p.clone().into();
            let mut grid_margin = f64::INFINITY;
            for r in &grid {
                grid_margin = grid_margin.min(fits_translated(&ps, &q, r)?.margin);
            }
            let avg = mu_average_poly(&p, MU)?;
            let fit = fits_translated(&Shape::from(avg.clone()), &q, &Rotation::Planar(0.0))?;
            let (peri, peri_avg) = (p.perimeter()?, avg.perimeter()?);
            let mut t = Trial::new(0, "mu-average");
            t.inputs(&p);
            t.measure("grid_margin", grid_margin);
            t.measure("average_margin", fit.margin);
            t.measure("perimeter", peri);
            t.measure("average_perimeter", peri_avg);
            t.check(-grid_margin, 1e-9);
            t.check(-fit.margin, 1e-9);
            t.check((peri_avg - peri).abs() / peri, 1e-9);
            details.push(t.finish());
            let placed = avg.translate(Vec2::new(fit.translation[0], fit.translation[1]));
            figure.items.push(FigureItem::polygon(Role::Container, &square));
            figure.items.push(FigureItem::polygon(Role::Placed, &placed));
            figure.items.push(FigureItem::ball(Role::Inball, &chebyshev_center(&q)?));
        }
        _ => return Err(GeomError::UnknownScenario(scenario.to_string())),
    }
    Ok(Reproduction { report: ExperimentReport::from_records(scenario, 0, details), figure })
}
