//! Chebyshev coefficient spaces and the exact maps between them.
//!
//! `ChebT` holds coefficients of `u = sum u_n T_n`, `ChebU` of `v = sum v_n U_n`.
//! Sobolev-type norms are
//!
//! ```text
//! |u|_{T^s}^2 = |u_0|^2 + 1/2 sum_{n>=1} (1+n^2)^s |u_n|^2
//! |v|_{U^s}^2 = 1/2 sum_{n>=0} (1+n^2)^s |v_n|^2
//! ```
//!
//! The `U` norm indexes the weight by `n`, not `n + 1`; both choices give
//! equivalent norms.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::dct::{Dct1, Dst1};
use crate::error::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    T,
    U,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::U => "U",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebT {
    pub coeffs: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebU {
    pub coeffs: Vec<C64>,
}

/// `sum a_n cos(n theta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierEven {
    pub cos: Vec<C64>,
}

/// `sum b_n sin((n+1) theta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierOdd {
    pub sin: Vec<C64>,
}

fn unit(n: usize, len: usize) -> Vec<C64> {
    let mut e = vec![ZERO; len];
    e[n] = C64::new(1.0, 0.0);
    e
}

impl ChebT {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        Self { coeffs: vec![ZERO; len] }
    }

    pub fn unit(n: usize, len: usize) -> Self {
        Self { coeffs: unit(n, len) }
    }

    pub fn from_real(c: &[f64]) -> Self {
        Self { coeffs: c.iter().map(|&x| C64::new(x, 0.0)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Clenshaw evaluation of `sum u_n T_n(x)`.
    pub fn eval(&self, x: f64) -> C64 {
        let (mut b1, mut b2) = (ZERO, ZERO);
        for c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = b0;
        }
        match self.coeffs.first() {
            Some(c0) => c0 + b1 * x - b2,
            None => ZERO,
        }
    }

    pub fn norm(&self, s: f64) -> f64 {
        norm_t(self, s)
    }
}

impl ChebU {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        Self { coeffs: vec![ZERO; len] }
    }

    pub fn unit(n: usize, len: usize) -> Self {
        Self { coeffs: unit(n, len) }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Clenshaw evaluation of `sum v_n U_n(x)`.
    pub fn eval(&self, x: f64) -> C64 {
        let (mut b1, mut b2) = (ZERO, ZERO);
        for c in self.coeffs.iter().rev() {
            let b0 = c + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    pub fn norm(&self, s: f64) -> f64 {
        norm_u(self, s)
    }
}

pub fn norm_t(u: &ChebT, s: f64) -> f64 {
    let mut acc = 0.0;
    for (n, c) in u.coeffs.iter().enumerate() {
        if n == 0 {
            acc += c.norm_sqr();
        } else {
            let n = n as f64;
            acc += 0.5 * (1.0 + n * n).powf(s) * c.norm_sqr();
        }
    }
    acc.sqrt()
}

pub fn norm_u(v: &ChebU, s: f64) -> f64 {
    let acc: f64 = v
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let n = n as f64;
            0.5 * (1.0 + n * n).powf(s) * c.norm_sqr()
        })
        .sum();
    acc.sqrt()
}

/// Norm of a raw coefficient vector in the given basis.
pub fn norm_in(basis: Basis, c: &[C64], s: f64) -> f64 {
    match basis {
        Basis::T => norm_t(&ChebT::new(c.to_vec()), s),
        Basis::U => norm_u(&ChebU::new(c.to_vec()), s),
    }
}

impl FourierEven {
    pub fn eval(&self, theta: f64) -> C64 {
        self.cos.iter().enumerate().map(|(n, a)| a * (n as f64 * theta).cos()).sum()
    }

    /// `(1/2pi int_0^{2pi} |f|^2)^{1/2}` from the coefficients.
    pub fn l2_norm(&self) -> f64 {
        let acc: f64 = self
            .cos
            .iter()
            .enumerate()
            .map(|(n, a)| if n == 0 { a.norm_sqr() } else { 0.5 * a.norm_sqr() })
            .sum();
        acc.sqrt()
    }
}

impl FourierOdd {
    pub fn eval(&self, theta: f64) -> C64 {
        self.sin
            .iter()
            .enumerate()
            .map(|(n, b)| b * ((n + 1) as f64 * theta).sin())
            .sum()
    }

    pub fn l2_norm(&self) -> f64 {
        let acc: f64 = self.sin.iter().map(|b| 0.5 * b.norm_sqr()).sum();
        acc.sqrt()
    }
}

/// `(Cu)(theta) = u(cos theta)`.
pub fn map_c(u: &ChebT) -> FourierEven {
    FourierEven { cos: u.coeffs.clone() }
}

/// `(Sv)(theta) = sin(theta) v(cos theta)`.
pub fn map_s(v: &ChebU) -> FourierOdd {
    FourierOdd { sin: v.coeffs.clone() }
}

pub fn map_c_inv(f: &FourierEven) -> ChebT {
    ChebT::new(f.cos.clone())
}

pub fn map_s_inv(f: &FourierOdd) -> ChebU {
    ChebU::new(f.sin.clone())
}

/// Identity on polynomials, rewritten from `T` to `U` coefficients.
pub fn embed_i(u: &ChebT) -> ChebU {
    let c = &u.coeffs;
    let get = |j: usize| c.get(j).copied().unwrap_or(ZERO);
    let out = (0..c.len())
        .map(|j| {
            if j == 0 {
                get(0) - get(2) * 0.5
            } else {
                (get(j) - get(j + 2)) * 0.5
            }
        })
        .collect();
    ChebU::new(out)
}

/// Identity on polynomials, rewritten from `U` to `T` coefficients.
pub fn embed_j(v: &ChebU) -> ChebT {
    let c = &v.coeffs;
    let len = c.len();
    let mut out = vec![ZERO; len];
    // Tail sums over every other coefficient.
    let mut tail = [ZERO, ZERO];
    for j in (0..len).rev() {
        tail[j % 2] += c[j];
        out[j] = if j == 0 { tail[0] } else { tail[j % 2] * 2.0 };
    }
    ChebT::new(out)
}

/// `d/dx` from `T` to `U`: `(u')_n = (n+1) u_{n+1}`.
pub fn diff_t_to_u(u: &ChebT) -> ChebU {
    let c = &u.coeffs;
    if c.len() <= 1 {
        return ChebU::zeros(1);
    }
    ChebU::new((1..c.len()).map(|n| c[n] * n as f64).collect())
}

/// `omega d/dx omega` from `U` to `T`, `omega = sqrt(1-x^2)`: `T_{n+1}` gets `-(n+1) v_n`.
pub fn wdw_u_to_t(v: &ChebU) -> ChebT {
    let mut out = vec![ZERO; v.len() + 1];
    for (n, c) in v.coeffs.iter().enumerate() {
        out[n + 1] = -c * (n + 1) as f64;
    }
    ChebT::new(out)
}

/// Multiplication by `x` in the `T` basis.
pub fn mul_x_t(u: &ChebT) -> ChebT {
    let mut out = vec![ZERO; u.len() + 1];
    for (n, c) in u.coeffs.iter().enumerate() {
        out[n + 1] += c * 0.5;
        out[n.abs_diff(1)] += c * 0.5;
    }
    ChebT::new(out)
}

/// Multiplication by `x` in the `U` basis.
pub fn mul_x_u(v: &ChebU) -> ChebU {
    let mut out = vec![ZERO; v.len() + 1];
    for (n, c) in v.coeffs.iter().enumerate() {
        out[n + 1] += c * 0.5;
        if n >= 1 {
            out[n - 1] += c * 0.5;
        }
    }
    ChebU::new(out)
}

/// `omega^2 U_n = (T_n - T_{n+2}) / 2`.
pub fn mul_omega2_u_to_t(v: &ChebU) -> ChebT {
    let mut out = vec![ZERO; v.len() + 2];
    for (n, c) in v.coeffs.iter().enumerate() {
        out[n] += c * 0.5;
        out[n + 2] -= c * 0.5;
    }
    ChebT::new(out)
}

/// `omega^2 U_n = U_n - (U_{n+2} + 2U_n + U_{n-2}) / 4` with `U_{-1} = 0`, `U_{-2} = -U_0`.
pub fn mul_omega2_u_to_u(v: &ChebU) -> ChebU {
    let mut out = vec![ZERO; v.len() + 2];
    for (n, c) in v.coeffs.iter().enumerate() {
        out[n] += c * 0.5;
        out[n + 2] -= c * 0.25;
        match n {
            0 => out[0] += c * 0.25,
            1 => {}
            _ => out[n - 2] -= c * 0.25,
        }
    }
    ChebU::new(out)
}

/// `omega^2 T_n = T_n / 2 - (T_{n+2} + T_{|n-2|}) / 4`.
pub fn mul_omega2_t(u: &ChebT) -> ChebT {
    let mut out = vec![ZERO; u.len() + 2];
    for (n, c) in u.coeffs.iter().enumerate() {
        out[n] += c * 0.5;
        out[n + 2] -= c * 0.25;
        out[n.abs_diff(2)] -= c * 0.25;
    }
    ChebT::new(out)
}

/// Chebyshev-Lobatto points `x_j = cos(pi j / m)`, `j = 0..=m`.
pub fn cheb_points(m: usize) -> Vec<f64> {
    (0..=m).map(|j| (PI * j as f64 / m as f64).cos()).collect()
}

/// `T` coefficients of the degree-`m` interpolant through samples on [`cheb_points`].
pub fn transform_t(samples: &[C64]) -> ChebT {
    let m = samples.len() - 1;
    let mut c = Dct1::new(m).apply(samples);
    let scale = 1.0 / m as f64;
    for (n, v) in c.iter_mut().enumerate() {
        *v *= if n == 0 || n == m { 0.5 * scale } else { scale };
    }
    ChebT::new(c)
}

/// Values on [`cheb_points`]`(m)` of a `T` expansion of degree at most `m`.
pub fn inverse_t(u: &ChebT, m: usize) -> Result<Vec<C64>> {
    if u.len() > m + 1 {
        return Err(Error::UnderResolved { m, required: u.len() - 1 });
    }
    let mut c = vec![ZERO; m + 1];
    for (n, v) in u.coeffs.iter().enumerate() {
        c[n] = if n == 0 || n == m { v * 2.0 } else { *v };
    }
    let mut out = Dct1::new(m).apply(&c);
    for v in out.iter_mut() {
        *v *= 0.5;
    }
    Ok(out)
}

/// `U` coefficients (degree `m - 2`) from samples of `v` on [`cheb_points`]`(m)`.
/// Only the interior samples are used.
pub fn transform_u(samples: &[C64]) -> ChebU {
    let m = samples.len() - 1;
    let g: Vec<C64> = (1..m)
        .map(|j| samples[j] * (PI * j as f64 / m as f64).sin())
        .collect();
    let c = Dst1::new(m).apply(&g);
    let scale = 1.0 / m as f64;
    ChebU::new(c[..m - 1].iter().map(|v| v * scale).collect())
}

/// Index of the last coefficient above `tol` times the largest one.
pub fn effective_degree(c: &[C64], tol: f64) -> usize {
    let max = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    c.iter().rposition(|v| v.norm() > tol * max).unwrap_or(0)
}

/// Product `f u` for `f` sampled on [`cheb_points`]`(m)`.  Exact while
/// `deg u + deg f <= m`; otherwise a warning is logged and the result aliases.
pub fn mul_smooth_t(u: &ChebT, f_samples: &[C64]) -> Result<ChebT> {
    let m = f_samples.len() - 1;
    if u.len() > m + 1 {
        return Err(Error::UnderResolved { m, required: u.len() - 1 });
    }
    let df = effective_degree(&transform_t(f_samples).coeffs, 1e-14);
    let du = u.len().saturating_sub(1);
    if du + df > m {
        log::warn!("product degree {} exceeds transform grid {m}; result is aliased", du + df);
    }
    let uv = inverse_t(u, m)?;
    let prod: Vec<C64> = uv.iter().zip(f_samples).map(|(a, b)| a * b).collect();
    let mut c = transform_t(&prod).coeffs;
    c.truncate((du + df).min(m) + 1);
    Ok(ChebT::new(c))
}

/// Dense matrix (rows = output coefficients) of a linear coefficient map,
/// truncated to `n_out x n_in`.
pub fn matrix_of<F>(n_in: usize, n_out: usize, f: F) -> DMatrix<C64>
where
    F: Fn(&[C64]) -> Vec<C64>,
{
    let mut a = DMatrix::zeros(n_out, n_in);
    for j in 0..n_in {
        let col = f(&unit(j, n_in));
        for (i, v) in col.into_iter().enumerate().take(n_out) {
            a[(i, j)] = v;
        }
    }
    a
}

/// Bilinear pairing `<u, v>_{1/omega} = 1/pi int u v / omega` of two `T` expansions.
pub fn pair_t(u: &ChebT, v: &ChebT) -> C64 {
    u.coeffs
        .iter()
        .zip(&v.coeffs)
        .enumerate()
        .map(|(n, (a, b))| if n == 0 { a * b } else { a * b * 0.5 })
        .sum()
}

/// Bilinear pairing `<u, v>_omega = 1/pi int u v omega` of two `U` expansions.
pub fn pair_u(u: &ChebU, v: &ChebU) -> C64 {
    u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a * b * 0.5).sum()
}
