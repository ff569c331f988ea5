//! Full (non-restarted) left-preconditioned GMRES in complex arithmetic.

use std::time::Instant;

use num_complex::Complex64 as C64;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    /// `|P(A x_j - b)| / |P b|` after each iteration, starting with 1.
    pub residual_history: Vec<f64>,
    pub solution: Vec<C64>,
    pub converged: bool,
    /// Set when the run ends without convergence and the last ten iterations
    /// reduced the residual by less than 0.1%.
    pub stagnated: bool,
    pub wall_time_s: f64,
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub type LinOp<'a> = &'a dyn Fn(&[C64]) -> Vec<C64>;

pub fn gmres(apply_a: LinOp, apply_p: Option<LinOp>, b: &[C64], tol: f64, maxit: usize) -> SolveReport {
    let start = Instant::now();
    let n = b.len();
    let prec = |v: Vec<C64>| match apply_p {
        Some(p) => p(&v),
        None => v,
    };
    let zero = C64::new(0.0, 0.0);
    let r0 = prec(b.to_vec());
    let beta = norm(&r0);
    let mut report = SolveReport {
        iterations: 0,
        residual_history: vec![1.0],
        solution: vec![zero; n],
        converged: beta == 0.0,
        stagnated: false,
        wall_time_s: 0.0,
    };
    if beta == 0.0 {
        return report;
    }

    let mut basis: Vec<Vec<C64>> = vec![r0.iter().map(|v| v / beta).collect()];
    let mut h: Vec<Vec<C64>> = Vec::new();
    let mut rot: Vec<(f64, C64)> = Vec::new();
    let mut g = vec![C64::new(beta, 0.0)];

    for j in 0..maxit.min(n) {
        let mut w = prec(apply_a(&basis[j]));
        let wnorm0 = norm(&w);
        let mut col = vec![zero; j + 2];
        for _pass in 0..2 {
            for (i, v) in basis.iter().enumerate() {
                let c = dot(v, &w);
                col[i] += c;
                for (wk, vk) in w.iter_mut().zip(v) {
                    *wk -= c * vk;
                }
            }
        }
        let hn = norm(&w);
        col[j + 1] = C64::new(hn, 0.0);
        for (i, &(c, s)) in rot.iter().enumerate() {
            let (a, bb) = (col[i], col[i + 1]);
            col[i] = a * c + s * bb;
            col[i + 1] = -s.conj() * a + bb * c;
        }
        let (a, bb) = (col[j], col[j + 1]);
        let r = a.norm().hypot(bb.norm());
        let (c, s) = if a.norm() == 0.0 {
            (0.0, bb.conj() / r)
        } else {
            (a.norm() / r, (a / a.norm()) * bb.conj() / r)
        };
        col[j] = a * c + s * bb;
        col[j + 1] = zero;
        rot.push((c, s));
        let gj = g[j];
        g[j] = gj * c;
        g.push(-s.conj() * gj);
        h.push(col);

        let res = g[j + 1].norm() / beta;
        report.residual_history.push(res);
        report.iterations = j + 1;
        let breakdown = hn <= 1e-14 * wnorm0.max(f64::MIN_POSITIVE);
        if res <= tol || breakdown {
            report.converged = true;
            break;
        }
        basis.push(w.iter().map(|v| v / hn).collect());
    }

    // Back substitution for the least-squares coefficients.
    let m = report.iterations;
    let mut y = vec![zero; m];
    for i in (0..m).rev() {
        let mut acc = g[i];
        for (k, yk) in y.iter().enumerate().skip(i + 1) {
            acc -= h[k][i] * yk;
        }
        y[i] = acc / h[i][i];
    }
    for (yi, v) in y.iter().zip(&basis) {
        for (xk, vk) in report.solution.iter_mut().zip(v) {
            *xk += yi * vk;
        }
    }
    if !report.converged {
        let hist = &report.residual_history;
        if hist.len() > 10 {
            let last = hist[hist.len() - 1];
            let prev = hist[hist.len() - 11];
            report.stagnated = last > 0.999 * prev;
        }
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_converges_in_one_step() {
        let b: Vec<C64> = (0..7).map(|i| C64::new(i as f64, 1.0)).collect();
        let id = |v: &[C64]| v.to_vec();
        let r = gmres(&id, None, &b, 1e-12, 50);
        assert_eq!(r.iterations, 1);
        assert!(r.converged);
        for (x, y) in r.solution.iter().zip(&b) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn diagonal_system_exact_in_n_steps() {
        let n = 10;
        let b = vec![C64::new(1.0, 0.0); n];
        let a = |v: &[C64]| v.iter().enumerate().map(|(i, x)| x * (i + 1) as f64).collect();
        let r = gmres(&a, None, &b, 1e-12, 50);
        assert!(r.converged && r.iterations <= n);
        for (i, x) in r.solution.iter().enumerate() {
            assert!((x.re - 1.0 / (i + 1) as f64).abs() < 1e-12);
        }
        assert!(r.residual_history.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }

    #[test]
    fn zero_rhs() {
        let id = |v: &[C64]| v.to_vec();
        let r = gmres(&id, None, &[C64::new(0.0, 0.0); 3], 1e-8, 5);
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
    }
}
