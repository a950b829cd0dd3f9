//! Restarted GMRES(m) for matrix-free operators.
//!
//! Arnoldi with modified Gram-Schmidt and Givens rotations. Each cycle
//! starts from the current iterate, and each cycle ends by recomputing the
//! true residual `b - A x`, so the reported final residual is always the
//! verified one rather than the Arnoldi estimate.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A square linear map on `f64` vectors of length [`dim`](Self::dim).
pub trait LinearOperator {
    fn dim(&self) -> usize;

    /// `y = A x`; both slices have length `dim()`.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

impl LinearOperator for nalgebra::DMatrix<f64> {
    fn dim(&self) -> usize {
        assert!(self.is_square());
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

/// Wraps a closure as a [`LinearOperator`].
pub struct FnOperator<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64])> FnOperator<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64], &mut [f64])> LinearOperator for FnOperator<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        (self.f)(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmresOptions {
    /// Krylov dimension per cycle.
    pub restart: usize,
    /// Target relative residual `‖b - Ax‖₂ / ‖b‖₂`.
    pub tol: f64,
    /// Cap on inner iterations summed over all cycles.
    pub max_iters: usize,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self { restart: 10, tol: 1e-4, max_iters: 500 }
    }
}

/// Outcome of a [`gmres_solve`] call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Inner (Arnoldi) iterations over all cycles.
    pub iterations: usize,
    /// Number of restarts, i.e. cycles after the first.
    pub restarts: usize,
    /// Verified relative residual of the returned iterate.
    pub final_relative_residual: f64,
    pub converged: bool,
    /// Relative residuals: the true residual at the start of each cycle
    /// followed by the Arnoldi estimate after each inner iteration.
    pub residual_history: Vec<f64>,
    /// Index into `residual_history` where each cycle begins.
    pub cycle_starts: Vec<usize>,
}

impl SolveReport {
    /// Residual history split into restart cycles.
    pub fn cycles(&self) -> Vec<&[f64]> {
        let mut bounds = self.cycle_starts.clone();
        bounds.push(self.residual_history.len());
        bounds.windows(2).map(|w| &self.residual_history[w[0]..w[1]]).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn residual<A: LinearOperator + ?Sized>(op: &A, b: &[f64], x: &[f64], r: &mut [f64]) {
    op.apply(x, r);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
}

/// Solve `A x = b` from the initial guess `x0`.
///
/// Non-convergence within `max_iters` is reported through
/// [`SolveReport::converged`], not as an error.
pub fn gmres_solve<A: LinearOperator + ?Sized>(
    op: &A,
    b: &[f64],
    x0: &[f64],
    options: &GmresOptions,
) -> Result<(Vec<f64>, SolveReport)> {
    let n = op.dim();
    if b.len() != n {
        return Err(Error::Contract { expected: n, actual: b.len() });
    }
    if x0.len() != n {
        return Err(Error::Contract { expected: n, actual: x0.len() });
    }
    if options.restart == 0 || options.tol.is_nan() || options.tol <= 0.0 {
        return Err(Error::Config(format!(
            "GMRES needs restart >= 1 and tol > 0 (got {} and {})",
            options.restart, options.tol
        )));
    }

    let b_norm = norm(b);
    if b_norm == 0.0 {
        let report = SolveReport {
            iterations: 0,
            restarts: 0,
            final_relative_residual: 0.0,
            converged: true,
            residual_history: vec![0.0],
            cycle_starts: vec![0],
        };
        return Ok((vec![0.0; n], report));
    }

    let m = options.restart.min(n);
    let breakdown = 1e-14 * b_norm;

    let mut x = x0.to_vec();
    let mut r = vec![0.0; n];
    residual(op, b, &x, &mut r);
    let mut beta = norm(&r);

    let mut basis: Vec<Vec<f64>> = (0..=m).map(|_| vec![0.0; n]).collect();
    // column-major Hessenberg, h[j] holds column j (length m + 1)
    let mut h = vec![vec![0.0; m + 1]; m];
    let mut cs = vec![0.0; m];
    let mut sn = vec![0.0; m];
    let mut g = vec![0.0; m + 1];
    let mut w = vec![0.0; n];

    let mut iterations = 0;
    let mut history = Vec::new();
    let mut cycle_starts = Vec::new();
    let mut cycles_run = 0usize;

    loop {
        cycle_starts.push(history.len());
        history.push(beta / b_norm);
        if beta / b_norm <= options.tol || iterations >= options.max_iters {
            break;
        }

        for (vi, ri) in basis[0].iter_mut().zip(&r) {
            *vi = ri / beta;
        }
        g.iter_mut().for_each(|v| *v = 0.0);
        g[0] = beta;
        cycles_run += 1;

        let mut k = 0;
        let mut broke_down = false;
        while k < m && iterations < options.max_iters {
            op.apply(&basis[k], &mut w);
            iterations += 1;

            let col = &mut h[k];
            for i in 0..=k {
                let hik = dot(&w, &basis[i]);
                col[i] = hik;
                for (wl, vl) in w.iter_mut().zip(&basis[i]) {
                    *wl -= hik * vl;
                }
            }
            let sub = norm(&w);
            col[k + 1] = sub;

            for i in 0..k {
                let t = cs[i] * col[i] + sn[i] * col[i + 1];
                col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
                col[i] = t;
            }
            let denom = col[k].hypot(col[k + 1]);
            let (c, s) = if denom == 0.0 { (1.0, 0.0) } else { (col[k] / denom, col[k + 1] / denom) };
            cs[k] = c;
            sn[k] = s;
            col[k] = denom;
            col[k + 1] = 0.0;
            g[k + 1] = -s * g[k];
            g[k] *= c;

            k += 1;
            history.push(g[k].abs() / b_norm);

            if sub < breakdown {
                broke_down = true;
                break;
            }
            let inv = 1.0 / sub;
            for (vl, wl) in basis[k].iter_mut().zip(&w) {
                *vl = wl * inv;
            }
            if g[k].abs() / b_norm <= options.tol {
                break;
            }
        }

        // back substitution on the k x k triangle
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let mut acc = g[i];
            for j in (i + 1)..k {
                acc -= h[j][i] * y[j];
            }
            y[i] = if h[i][i].abs() > 0.0 { acc / h[i][i] } else { 0.0 };
        }
        for (j, yj) in y.iter().enumerate() {
            for (xl, vl) in x.iter_mut().zip(&basis[j]) {
                *xl += yj * vl;
            }
        }

        let previous = beta;
        residual(op, b, &x, &mut r);
        beta = norm(&r);

        if broke_down && beta / b_norm > options.tol && beta >= previous * (1.0 - 1e-12) {
            // Krylov space exhausted without progress
            cycle_starts.push(history.len());
            history.push(beta / b_norm);
            break;
        }
    }

    let final_relative_residual = beta / b_norm;
    let report = SolveReport {
        iterations,
        restarts: cycles_run.saturating_sub(1),
        final_relative_residual,
        converged: final_relative_residual <= options.tol,
        residual_history: history,
        cycle_starts,
    };
    Ok((x, report))
}
