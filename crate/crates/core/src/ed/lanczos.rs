//! Restarted Lanczos with full reorthogonalization for the lowest eigenpair
//! of a real symmetric operator, optionally restricted to the orthogonal
//! complement of already-converged vectors.

use faer::{Mat, Side};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct LanczosOptions {
    /// Required residual norm `|H x - theta x|`.
    pub tol: f64,
    /// Krylov dimension per restart cycle (capped by the problem size).
    pub krylov_dim: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            krylov_dim: 60,
            max_restarts: 400,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub matvecs: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(v, b);
        axpy(-c, b, v);
    }
}

/// Deterministic start vector from a splitmix64 stream.
pub fn start_vector(dim: usize, seed: u64) -> Vec<f64> {
    let mut state = seed;
    let v: Vec<f64> = (0..dim)
        .map(|_| {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect();
    let n = norm(&v);
    v.into_iter().map(|x| x / n).collect()
}

/// Flip the sign so the largest-magnitude amplitude is positive.
pub fn fix_phase(v: &mut [f64]) {
    let pivot = v
        .iter()
        .copied()
        .fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn smallest_ritz(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let m = alpha.len();
    let t = Mat::<f64>::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let eig = t.selfadjoint_eigendecomposition(Side::Lower);
    let s = eig.s().column_vector();
    let u = eig.u();
    let mut best = 0;
    for i in 1..m {
        if s.read(i) < s.read(best) {
            best = i;
        }
    }
    (s.read(best), (0..m).map(|r| u.read(r, best)).collect())
}

/// Lowest eigenpair of `op` on the complement of `deflate` (orthonormal).
pub fn lowest_eigenpair<F>(
    op: F,
    dim: usize,
    deflate: &[Vec<f64>],
    opts: &LanczosOptions,
) -> Result<Eigenpair>
where
    F: Fn(&[f64], &mut [f64]),
{
    let free = dim.saturating_sub(deflate.len());
    if free == 0 {
        return Err(Error::InvalidParameter("no space left after deflation".into()));
    }
    let m_max = opts.krylov_dim.max(2).min(free);
    let mut x = start_vector(dim, opts.seed);
    project_out(&mut x, deflate);
    let n0 = norm(&x);
    x.iter_mut().for_each(|v| *v /= n0);

    let mut w = vec![0.0; dim];
    let mut matvecs = 0;
    let mut residual = f64::INFINITY;
    for _restart in 0..opts.max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![x.clone()];
        let mut alpha = Vec::with_capacity(m_max);
        let mut beta: Vec<f64> = Vec::with_capacity(m_max);
        for j in 0..m_max {
            op(&basis[j], &mut w);
            matvecs += 1;
            project_out(&mut w, deflate);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            // two passes of classical Gram-Schmidt keep the basis orthogonal
            for _ in 0..2 {
                project_out(&mut w, &basis);
                project_out(&mut w, deflate);
            }
            let b = norm(&w);
            if j + 1 == m_max || b < 1e-13 {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|v| v / b).collect());
        }
        let (theta, y) = smallest_ritz(&alpha, &beta);
        let mut next = vec![0.0; dim];
        for (coef, v) in y.iter().zip(&basis) {
            axpy(*coef, v, &mut next);
        }
        project_out(&mut next, deflate);
        let nn = norm(&next);
        next.iter_mut().for_each(|v| *v /= nn);

        op(&next, &mut w);
        matvecs += 1;
        project_out(&mut w, deflate);
        axpy(-theta, &next, &mut w);
        residual = norm(&w);
        x = next;
        if residual <= opts.tol {
            fix_phase(&mut x);
            return Ok(Eigenpair {
                value: theta,
                vector: x,
                residual,
                matvecs,
            });
        }
        // the Krylov space spans everything left: the Ritz pair is exact up
        // to rounding and restarting cannot improve it
        if alpha.len() == free {
            fix_phase(&mut x);
            return Ok(Eigenpair {
                value: theta,
                vector: x,
                residual,
                matvecs,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: matvecs,
        residual,
    })
}
