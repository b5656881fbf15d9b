//! Dense two-phase simplex for small linear programs.
//!
//! Solves `maximize <c, x>` subject to `A x <= b` with `x` free. Free
//! variables are split into nonnegative parts, rows with a negative right
//! hand side get an artificial column, and both phases pivot with Bland's
//! rule so the method terminates on degenerate problems. Everything is
//! deterministic: the same input bits give the same output bits.

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;
use crate::vector::dot;

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem<T> {
    /// Maximized objective.
    pub objective: Vec<T>,
    pub normals: Vec<Vec<T>>,
    pub offsets: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Optimal vertex when `status` is optimal, empty otherwise.
    pub point: Vec<T>,
    pub value: T,
}

impl<T: Scalar> LpProblem<T> {
    pub fn new(objective: Vec<T>, normals: Vec<Vec<T>>, offsets: Vec<T>) -> Result<Self> {
        let d = objective.len();
        if normals.len() != offsets.len() {
            return Err(GeomError::InvalidParameter(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        for a in &normals {
            if a.len() != d {
                return Err(GeomError::DimensionMismatch { expected: d, got: a.len() });
            }
        }
        Ok(Self { objective, normals, offsets })
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    /// Largest violation `<a_i, x> - b_i` over all constraints (0 if none).
    pub fn max_violation(&self, x: &[T]) -> T {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(a, &b)| dot(a, x) - b)
            .fold(T::zero(), T::max)
    }
}

struct Tableau<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    basis: Vec<usize>,
    eps: T,
}

enum Pivoted {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> T {
        self.data[r * (self.cols + 1) + c]
    }

    #[inline]
    fn rhs(&self, r: usize) -> T {
        self.data[r * (self.cols + 1) + self.cols]
    }

    fn pivot(&mut self, pr: usize, pc: usize, obj: &mut [T]) {
        let w = self.cols + 1;
        let inv = T::one() / self.at(pr, pc);
        for v in &mut self.data[pr * w..(pr + 1) * w] {
            *v *= inv;
        }
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.at(r, pc);
            if f == T::zero() {
                continue;
            }
            for c in 0..w {
                let p = self.data[pr * w + c];
                if p != T::zero() {
                    self.data[r * w + c] -= f * p;
                }
            }
        }
        let f = obj[pc];
        if f != T::zero() {
            for c in 0..w {
                let p = self.data[pr * w + c];
                obj[c] -= f * p;
            }
        }
        self.basis[pr] = pc;
    }

    /// Reduced-cost row for maximizing `cost`; last entry holds minus the
    /// current objective value.
    fn reduced_costs(&self, cost: &[T]) -> Vec<T> {
        let mut obj = vec![T::zero(); self.cols + 1];
        obj[..self.cols].copy_from_slice(&cost[..self.cols]);
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb == T::zero() {
                continue;
            }
            for (c, o) in obj.iter_mut().enumerate() {
                *o -= cb * self.data[r * (self.cols + 1) + c];
            }
        }
        obj
    }

    fn run(
        &mut self,
        obj: &mut [T],
        allowed: usize,
        iters: &mut usize,
        max_iters: usize,
    ) -> Result<Pivoted> {
        loop {
            *iters += 1;
            if *iters > max_iters {
                return Err(GeomError::NumericalFailure(format!(
                    "no convergence after {max_iters} pivots ({} rows, {} columns)",
                    self.rows, self.cols
                )));
            }
            // Bland: lowest-index improving column.
            let Some(pc) = (0..allowed).find(|&c| obj[c] > self.eps) else {
                return Ok(Pivoted::Optimal);
            };
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a > self.eps {
                    let ratio = self.rhs(r) / a;
                    best = match best {
                        None => Some((r, ratio)),
                        Some((br, bratio)) => {
                            if ratio < bratio
                                || (ratio == bratio && self.basis[r] < self.basis[br])
                            {
                                Some((r, ratio))
                            } else {
                                Some((br, bratio))
                            }
                        }
                    };
                }
            }
            let Some((pr, _)) = best else {
                return Ok(Pivoted::Unbounded);
            };
            self.pivot(pr, pc, obj);
            if !self.data[pr * (self.cols + 1)..(pr + 1) * (self.cols + 1)]
                .iter()
                .all(|v| v.is_finite())
            {
                return Err(GeomError::NumericalFailure(format!(
                    "non-finite tableau entry after pivot on ({pr}, {pc})"
                )));
            }
        }
    }
}

/// Solves the LP with the dense simplex method.
pub fn solve_lp<T: Scalar>(p: &LpProblem<T>) -> Result<LpSolution<T>> {
    let n = p.dim();
    let m = p.normals.len();
    if !p.objective.iter().chain(p.offsets.iter()).all(|v| v.is_finite())
        || !p.normals.iter().all(|a| a.iter().all(|v| v.is_finite()))
    {
        return Err(GeomError::InvalidParameter("non-finite LP data".into()));
    }

    let scale = p
        .normals
        .iter()
        .flat_map(|a| a.iter())
        .chain(p.offsets.iter())
        .fold(T::one(), |acc, v| acc.max(v.abs()));
    let eps = T::epsilon().powf(T::lit(0.7)) * scale;

    let neg_rows: Vec<usize> = (0..m).filter(|&i| p.offsets[i] < T::zero()).collect();
    let n_art = neg_rows.len();
    // Columns: x+ (n) | x- (n) | slacks (m) | artificials (n_art).
    let cols = 2 * n + m + n_art;
    let w = cols + 1;
    let mut data = vec![T::zero(); m * w];
    let mut basis = vec![0usize; m];
    let mut art = 0;
    for i in 0..m {
        let sign = if p.offsets[i] < T::zero() { -T::one() } else { T::one() };
        let row = &mut data[i * w..(i + 1) * w];
        for j in 0..n {
            row[j] = sign * p.normals[i][j];
            row[n + j] = -sign * p.normals[i][j];
        }
        row[2 * n + i] = sign;
        row[cols] = sign * p.offsets[i];
        if sign < T::zero() {
            let c = 2 * n + m + art;
            row[c] = T::one();
            basis[i] = c;
            art += 1;
        } else {
            basis[i] = 2 * n + i;
        }
    }
    let mut tab = Tableau { rows: m, cols, data, basis, eps };
    let max_iters = 64 * (m + cols) + 1024;
    let mut iters = 0;
    let first_art = 2 * n + m;

    if n_art > 0 {
        let mut cost = vec![T::zero(); cols];
        for c in cost.iter_mut().skip(first_art) {
            *c = -T::one();
        }
        let mut obj = tab.reduced_costs(&cost);
        match tab.run(&mut obj, cols, &mut iters, max_iters)? {
            Pivoted::Optimal => {}
            Pivoted::Unbounded => {
                return Err(GeomError::NumericalFailure("phase one reported unbounded".into()))
            }
        }
        let infeas: T = (0..m)
            .filter(|&r| tab.basis[r] >= first_art)
            .map(|r| tab.rhs(r).abs())
            .sum();
        let feas_tol = T::lit(1e-9).max(eps) * scale;
        if infeas > feas_tol {
            return Ok(LpSolution { status: LpStatus::Infeasible, point: Vec::new(), value: T::nan() });
        }
        // Drive remaining artificials out of the basis where possible.
        for r in 0..m {
            if tab.basis[r] < first_art {
                continue;
            }
            if let Some(c) = (0..first_art).find(|&c| tab.at(r, c).abs() > eps) {
                let mut dummy = vec![T::zero(); cols + 1];
                tab.pivot(r, c, &mut dummy);
            }
        }
    }

    let mut cost = vec![T::zero(); cols];
    for j in 0..n {
        cost[j] = p.objective[j];
        cost[n + j] = -p.objective[j];
    }
    let mut obj = tab.reduced_costs(&cost);
    match tab.run(&mut obj, first_art, &mut iters, max_iters)? {
        Pivoted::Unbounded => {
            return Ok(LpSolution { status: LpStatus::Unbounded, point: Vec::new(), value: T::infinity() })
        }
        Pivoted::Optimal => {}
    }

    let mut x = vec![T::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] += tab.rhs(r);
        } else if b < 2 * n {
            x[b - n] -= tab.rhs(r);
        }
    }
    let viol = p.max_violation(&x);
    if viol > T::lit(1e-7).max(eps * T::lit(100.0)) * scale {
        return Err(GeomError::NumericalFailure(format!(
            "optimal vertex violates a constraint by {viol} after {iters} pivots"
        )));
    }
    let value = dot(&p.objective, &x);
    Ok(LpSolution { status: LpStatus::Optimal, point: x, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> (Vec<Vec<f64>>, Vec<f64>) {
        (
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]],
            vec![1.0, 1.0, 0.0, 0.0],
        )
    }

    #[test]
    fn maximize_over_unit_square() {
        let (a, b) = square();
        let sol = solve_lp(&LpProblem::new(vec![1.0, 1.0], a, b).unwrap()).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.value - 2.0).abs() < 1e-12);
        assert!((sol.point[0] - 1.0).abs() < 1e-12 && (sol.point[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible() {
        let p = LpProblem::new(vec![1.0], vec![vec![1.0], vec![-1.0]], vec![1.0, -2.0]).unwrap();
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded() {
        let p = LpProblem::new(vec![1.0, 0.0], vec![vec![0.0, 1.0], vec![0.0, -1.0]], vec![1.0, 1.0])
            .unwrap();
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // 2 <= x <= 3, 1 <= y <= 5, maximize -x - y -> (2, 1)
        let p = LpProblem::new(
            vec![-1.0f64, -1.0],
            vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
            vec![3.0, -2.0, 5.0, -1.0],
        )
        .unwrap();
        let sol = solve_lp(&p).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.point[0] - 2.0).abs() < 1e-12);
        assert!((sol.point[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Many constraints through the same optimal vertex (1, 1).
        let mut a = Vec::new();
        let mut b = Vec::new();
        for k in 0..32 {
            let t = k as f64 / 31.0;
            a.push(vec![t, 1.0 - t]);
            b.push(1.0);
        }
        a.push(vec![-1.0, 0.0]);
        b.push(0.0);
        a.push(vec![0.0, -1.0]);
        b.push(0.0);
        let sol = solve_lp(&LpProblem::new(vec![1.0, 1.0], a, b).unwrap()).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let err = LpProblem::new(vec![1.0, 0.0], vec![vec![1.0]], vec![1.0]).unwrap_err();
        assert!(matches!(err, GeomError::DimensionMismatch { .. }));
    }

    #[test]
    fn bitwise_deterministic() {
        let (a, b) = square();
        let p = LpProblem::new(vec![0.3, 0.7], a, b).unwrap();
        let s1 = solve_lp(&p).unwrap();
        let s2 = solve_lp(&p).unwrap();
        assert_eq!(s1.point.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                   s2.point.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    }

    #[test]
    fn works_in_f32() {
        let p = LpProblem::new(
            vec![1.0f32, 1.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]],
            vec![1.0, 1.0, 0.0, 0.0],
        )
        .unwrap();
        let sol = solve_lp(&p).unwrap();
        assert!((sol.value - 2.0).abs() < 1e-5);
    }
}
