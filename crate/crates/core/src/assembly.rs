//! Galerkin matrices of the single layer `S`, the normal-normal weighted
//! single layer `V` and the hypersingular operator `N` on an arc.
//!
//! With `x = cos(theta)` the single layer acts on `T` expansions as
//!
//! ```text
//! (S u)(cos theta) = int_0^pi G(r(cos theta), r(cos t)) u(cos t) dt,    G = i/4 H0(k |r(x) - r(y)|)
//! ```
//!
//! The kernel is split as `-1/(2 pi) ln|x - y| a(x, y) + b(x, y)` with smooth
//! `a = J0(k |r(x) - r(y)|)`.  The logarithm of `|cos theta - cos t|` is
//! integrated exactly against the trigonometric interpolant of `a u` (Kress
//! weights); `b` uses the trapezoidal rule.  Both are folded onto the half grid
//! `theta_j = 2 pi j / M`, `j = 0..=M/2`, and columns/rows are moved to
//! coefficient space with type-I cosine transforms.
//!
//! `N` acts on `U` expansions through the pulled-back Maue identity
//! `N = -D S W - kappa^2 I V M`, where `D` differentiates `T -> U`, `W` is
//! `omega d/dx omega`, `M` multiplies by `omega^2` and `kappa = k L / 2`.

use std::f64::consts::{LN_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::cheb::Basis;
use crate::curve::Curve;
use crate::dct::Dct1;
use crate::error::{Error, Result};
use crate::operator::OperatorMat;
use crate::cheb::{transform_t, transform_u, ChebT, ChebU};
use crate::special::{h0 as hankel_h0, kernel_parts};

/// Rescaled wavenumber of the pulled-back problem.
pub fn kappa_eff(curve: &Curve, k: f64) -> f64 {
    0.5 * k * curve.length()
}

/// Fourier multiplier of `g(t) = -1/(2 pi) ln|sqrt(2) sin(t/2)|` on the circle.
pub fn log_multiplier(n: usize) -> f64 {
    if n == 0 {
        0.5 * LN_2
    } else {
        0.5 / n as f64
    }
}

/// Helmholtz Green's function `i/4 H0(k d)`, or `-ln(d)/(2 pi)` for `k = 0`.
pub fn green(k: f64, d: f64) -> C64 {
    if k == 0.0 {
        C64::new(-d.ln() / (2.0 * PI), 0.0)
    } else {
        C64::new(0.0, 0.25) * hankel_h0(k * d)
    }
}

fn check_grid(n: usize, m: usize) -> Result<()> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::BadGrid(m));
    }
    if m < 4 * n {
        return Err(Error::UnderResolved { m, required: 4 * n });
    }
    Ok(())
}

/// Kress weights `R(2 pi d / M)`, `d = 0..M`, for the kernel `-1/(2 pi) ln|cos theta - cos t|`
/// unfolded to the full circle.
fn log_weights(m: usize) -> Vec<f64> {
    let mh = m / 2;
    let cos_table: Vec<f64> = (0..m).map(|i| (2.0 * PI * i as f64 / m as f64).cos()).collect();
    let inv_m = 1.0 / m as f64;
    (0..m)
        .map(|d| {
            let mut acc = 0.5 * LN_2;
            for n in 1..mh {
                acc += cos_table[(n * d) % m] / n as f64;
            }
            acc += cos_table[(mh * d) % m] * inv_m;
            acc * inv_m
        })
        .collect()
}

struct Grid {
    x: Vec<f64>,
    pts: Vec<[f64; 2]>,
    nrm: Vec<[f64; 2]>,
}

impl Grid {
    fn new(curve: &Curve, m: usize) -> Grid {
        let mh = m / 2;
        let x: Vec<f64> = (0..=mh).map(|j| (2.0 * PI * j as f64 / m as f64).cos()).collect();
        let pts = x.iter().map(|&v| curve.point(v)).collect();
        let nrm = x.iter().map(|&v| curve.normal(v)).collect();
        Grid { x, pts, nrm }
    }
}

/// Assembles `S` and optionally `V` as `size x size` matrices on an `m` grid,
/// without the resolution check.
fn assemble_sv(
    curve: &Curve,
    k: f64,
    size: usize,
    m: usize,
    with_v: bool,
) -> (DMatrix<C64>, Option<DMatrix<C64>>) {
    let mh = m / 2;
    let grid = Grid::new(curve, m);
    let rw = log_weights(m);
    let dct = Dct1::new(mh);
    let two_pi = 2.0 * PI;
    let zero = C64::new(0.0, 0.0);

    // Rows of (kernel matrix) x (cosine synthesis), one per target node.
    let rows: Vec<(Vec<C64>, Vec<C64>)> = (0..=mh)
        .into_par_iter()
        .map(|i| {
            let mut ks = vec![zero; mh + 1];
            let mut kv = if with_v { vec![zero; mh + 1] } else { Vec::new() };
            for j in 0..=mh {
                let interior = j != 0 && j != mh;
                let q = curve.chord_ratio_pts(grid.x[i], grid.x[j], grid.pts[i], grid.pts[j]);
                let (a, b) = if k > 0.0 {
                    let z = k * q * (grid.x[i] - grid.x[j]).abs();
                    let (j0, f1) = kernel_parts(z);
                    (j0, f1 - (k * q).ln() * j0 / two_pi)
                } else {
                    (1.0, C64::new(-q.ln() / two_pi, 0.0))
                };
                let (wlog, wsm) = if interior {
                    (rw[(i + m - j) % m] + rw[(i + j) % m], two_pi / m as f64)
                } else {
                    (rw[(i + m - j) % m], PI / m as f64)
                };
                // interior samples are halved to match the DCT-I end weights
                let fold = if interior { 0.5 } else { 1.0 };
                let val = (b * wsm + wlog * a) * fold;
                ks[j] = val;
                if with_v {
                    let (p, r) = (grid.nrm[i], grid.nrm[j]);
                    kv[j] = val * (p[0] * r[0] + p[1] * r[1]);
                }
            }
            let mut gs = vec![zero; size];
            dct.apply_into(&ks, &mut gs);
            let mut gv = Vec::new();
            if with_v {
                gv = vec![zero; size];
                dct.apply_into(&kv, &mut gv);
            }
            (gs, gv)
        })
        .collect();

    let project = |second: bool| -> DMatrix<C64> {
        let cols: Vec<Vec<C64>> = (0..size)
            .into_par_iter()
            .map(|c| {
                let col: Vec<C64> =
                    rows.iter().map(|r| if second { r.1[c] } else { r.0[c] }).collect();
                let mut out = vec![zero; size];
                dct.apply_into(&col, &mut out);
                for (n, v) in out.iter_mut().enumerate() {
                    *v *= if n == 0 { 1.0 } else { 2.0 } / m as f64;
                }
                out
            })
            .collect();
        DMatrix::from_fn(size, size, |r, c| cols[c][r])
    };
    let s = project(false);
    let v = with_v.then(|| project(true));
    (s, v)
}

fn tag(mat: DMatrix<C64>, basis: Basis, curve: &Curve, k: f64, m: usize) -> OperatorMat {
    OperatorMat { mat, basis_in: basis, basis_out: basis, k, curve_id: curve.id(), quad_m: m }
}

/// `S` on `T_0..T_{n-1}`.
pub fn assemble_s(curve: &Curve, k: f64, n: usize, m: usize) -> Result<OperatorMat> {
    check_grid(n, m)?;
    let (s, _) = assemble_sv(curve, k, n, m, false);
    Ok(tag(s, Basis::T, curve, k, m))
}

/// `V` (single layer with the `n(x).n(y)` factor) on `T_0..T_{n-1}`.
pub fn assemble_v(curve: &Curve, k: f64, n: usize, m: usize) -> Result<OperatorMat> {
    check_grid(n, m)?;
    let (_, v) = assemble_sv(curve, k, n, m, true);
    Ok(tag(v.expect("requested V"), Basis::T, curve, k, m))
}

/// `N` on `U_0..U_{n-1}`.
pub fn assemble_n(curve: &Curve, k: f64, n: usize, m: usize) -> Result<OperatorMat> {
    Ok(assemble_all(curve, k, n, m)?.n)
}

pub struct Operators {
    pub s: OperatorMat,
    pub v: OperatorMat,
    pub n: OperatorMat,
}

/// `S`, `V` and `N` of size `n` from a single kernel pass.
pub fn assemble_all(curve: &Curve, k: f64, n: usize, m: usize) -> Result<Operators> {
    check_grid(n, m)?;
    let (s, v) = assemble_sv(curve, k, n + 2, m, true);
    let v = v.expect("requested V");
    let n_op = hypersingular_from(&s, &v, kappa_eff(curve, k), n);
    let crop = |a: &DMatrix<C64>| a.view((0, 0), (n, n)).into_owned();
    Ok(Operators {
        s: tag(crop(&s), Basis::T, curve, k, m),
        v: tag(crop(&v), Basis::T, curve, k, m),
        n: tag(n_op, Basis::U, curve, k, m),
    })
}

/// `-D S W - kappa^2 I V M` restricted to `U_0..U_{n-1}`; needs `S`, `V` of size `n + 2`.
fn hypersingular_from(s: &DMatrix<C64>, v: &DMatrix<C64>, kappa: f64, n: usize) -> DMatrix<C64> {
    let k2 = kappa * kappa;
    DMatrix::from_fn(n, n, |r, c| {
        let first = s[(r + 1, c + 1)] * ((r + 1) * (c + 1)) as f64;
        // Y = V M e_c, M e_c = (T_c - T_{c+2}) / 2
        let y = |i: usize| (v[(i, c)] - v[(i, c + 2)]) * 0.5;
        let second = if r == 0 { y(0) - y(2) * 0.5 } else { (y(r) - y(r + 2)) * 0.5 };
        first - second * k2
    })
}

fn plane_wave(curve: &Curve, k: f64, dir: [f64; 2], x: f64) -> C64 {
    let p = curve.point(x);
    C64::new(0.0, k * (dir[0] * p[0] + dir[1] * p[1])).exp()
}

fn sample_grid(n: usize) -> usize {
    (4 * n).max(16)
}

/// `T` coefficients of the Dirichlet data `-exp(i k d.r(x))`.
pub fn rhs_dirichlet(curve: &Curve, k: f64, dir: [f64; 2], n: usize) -> ChebT {
    let m = sample_grid(n);
    let vals: Vec<C64> = crate::cheb::cheb_points(m)
        .into_iter()
        .map(|x| -plane_wave(curve, k, dir, x))
        .collect();
    let mut c = transform_t(&vals).coeffs;
    c.truncate(n);
    ChebT::new(c)
}

/// `U` coefficients of the Neumann data `-i k (d.n(x)) exp(i k d.r(x))`.
pub fn rhs_neumann(curve: &Curve, k: f64, dir: [f64; 2], n: usize) -> ChebU {
    let m = sample_grid(n);
    let vals: Vec<C64> = crate::cheb::cheb_points(m)
        .into_iter()
        .map(|x| {
            let nr = curve.normal(x);
            let dn = dir[0] * nr[0] + dir[1] * nr[1];
            -C64::new(0.0, k * dn) * plane_wave(curve, k, dir, x)
        })
        .collect();
    let mut c = transform_u(&vals).coeffs;
    c.truncate(n);
    ChebU::new(c)
}

/// Distance from `z` to the arc: nearest sample, refined by golden-section search.
fn distance_to_arc(curve: &Curve, z: [f64; 2], samples: &[(f64, [f64; 2])]) -> f64 {
    let dist = |x: f64| {
        let p = curve.point(x);
        (z[0] - p[0]).hypot(z[1] - p[1])
    };
    let d2 = |p: &[f64; 2]| (z[0] - p[0]).hypot(z[1] - p[1]);
    let (j, _) = samples
        .iter()
        .enumerate()
        .min_by(|a, b| d2(&a.1 .1).total_cmp(&d2(&b.1 .1)))
        .expect("nonempty sample set");
    let lo = samples[(j + 1).min(samples.len() - 1)].0;
    let hi = samples[j.saturating_sub(1)].0;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if dist(c) < dist(d) {
            b = d;
        } else {
            a = c;
        }
    }
    dist(0.5 * (a + b)).min(d2(&samples[j].1))
}

/// Single-layer field `int_0^pi G(z - r(cos t)) u(cos t) dt` at points at
/// least `1e-3` away from the arc.
pub fn field_eval(curve: &Curve, k: f64, density: &ChebT, points: &[[f64; 2]]) -> Result<Vec<C64>> {
    let m = (4 * density.len()).max(256);
    let nodes: Vec<(f64, [f64; 2], C64)> = (0..=m)
        .map(|j| {
            let x = (PI * j as f64 / m as f64).cos();
            (x, curve.point(x), density.eval(x))
        })
        .collect();
    let samples: Vec<(f64, [f64; 2])> = nodes.iter().map(|(x, p, _)| (*x, *p)).collect();
    points
        .iter()
        .map(|z| {
            let d = distance_to_arc(curve, *z, &samples);
            if d < 1e-3 {
                return Err(Error::Dimension(format!(
                    "field point ({}, {}) is within {d:e} of the arc",
                    z[0], z[1]
                )));
            }
            let mut acc = C64::new(0.0, 0.0);
            for (j, (_, p, u)) in nodes.iter().enumerate() {
                let d = (z[0] - p[0]).hypot(z[1] - p[1]);
                let w = if j == 0 || j == m { 0.5 } else { 1.0 };
                acc += green(k, d) * u * w;
            }
            Ok(acc * (PI / m as f64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::make_segment;

    #[test]
    fn rejects_coarse_grids() {
        let c = make_segment();
        assert!(matches!(assemble_s(&c, 1.0, 16, 32), Err(Error::UnderResolved { .. })));
        assert!(matches!(assemble_s(&c, 1.0, 4, 33), Err(Error::BadGrid(33))));
    }

    #[test]
    fn log_weights_sum_to_mean() {
        // sum_d R(2 pi d / M) = ln 2 / 2, the mean of the unfolded kernel
        let w = log_weights(64);
        assert!((w.iter().sum::<f64>() - 0.5 * LN_2).abs() < 1e-14);
    }

    #[test]
    fn laplace_segment_small() {
        let s = assemble_s(&make_segment(), 0.0, 6, 32).unwrap();
        assert!((s.mat[(0, 0)].re - 0.5 * LN_2).abs() < 1e-13);
        for n in 1..6 {
            assert!((s.mat[(n, n)].re - 0.5 / n as f64).abs() < 1e-13);
        }
    }
}
