//! Numerical order of an operator: the decay rate of `|A phi_n|` in `n`.

use serde::Serialize;

use crate::cheb::{norm_in, Basis};
use crate::error::{Error, Result};
use crate::operator::OperatorMat;

#[derive(Clone, Debug, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Least-squares line through `(ln x, ln y)`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Result<Fit> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 || pts.len() != xs.len() {
        return Err(Error::Fit(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(Fit { slope, intercept, r2 })
}

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub ns: Vec<usize>,
    pub norms: Vec<f64>,
    pub fit: Fit,
}

/// `n = lo, 2 lo, 4 lo, ... <= hi`.
pub fn dyadic(lo: usize, hi: usize) -> Vec<usize> {
    let mut v = Vec::new();
    let mut n = lo.max(1);
    while n <= hi {
        v.push(n);
        n *= 2;
    }
    v
}

/// Norms `|A phi_n|_s` over `ns` and their fitted slope.  `phi_n` is `T_n` in
/// the `T` basis and `U_{n-1}` in the `U` basis.
pub fn order_probe(a: &OperatorMat, ns: &[usize], s: f64) -> Result<Probe> {
    if ns.len() < 4 {
        return Err(Error::Fit(ns.len()));
    }
    let size = a.mat.ncols();
    let norms: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let col = match a.basis_in {
                Basis::T => n,
                Basis::U => n - 1,
            };
            assert!(col < size, "probe index {n} outside matrix of size {size}");
            norm_in(a.basis_out, &a.column(col), s)
        })
        .collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let fit = fit_slope(&xs, &norms)?;
    Ok(Probe { ns: ns.to_vec(), norms, fit })
}
