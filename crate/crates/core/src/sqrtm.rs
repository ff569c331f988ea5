//! Functions of the tangential operators through weighted eigendecompositions,
//! and the parametrix preconditioners `P1 = sqrt(D1)`, `P2 = D2^{-1/2}`.
//!
//! ```text
//! D1 = -(omega d/dx)^2 - kappa^2 omega^2      on T,   D1 T_n = n^2 T_n - kappa^2 omega^2 T_n
//! D2 = -(d/dx omega)^2 - kappa^2 omega^2      on U,   D2 U_n = (n+1)^2 U_n - kappa^2 omega^2 U_n
//! ```
//!
//! Both are real and symmetric for the Chebyshev pairings, so
//! `B = W^{1/2} A W^{-1/2}` is symmetric and `f(A) = V f(Lambda) V^T W` with
//! `V = W^{-1/2} Q`.  Negative eigenvalues take the principal branch
//! `sqrt(-r) = i sqrt(r)`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::assembly::kappa_eff;
use crate::cheb::{matrix_of, mul_omega2_t, mul_omega2_u_to_u, Basis, ChebT, ChebU};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::operator::OperatorMat;

const SYMMETRY_TOL: f64 = 1e-8;
const SINGULAR_TOL: f64 = 1e-8;

/// `A = V diag(lambda) V^T W` with `V^T W V = I`.
#[derive(Clone, Debug)]
pub struct EigFactorization {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub weights: Vec<f64>,
    pub basis: Basis,
    pub k: f64,
    pub curve_id: String,
}

pub fn basis_weights(basis: Basis, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| match (basis, i) {
            (Basis::T, 0) => 1.0,
            _ => 0.5,
        })
        .collect()
}

/// Splits the index set by parity when the matrix never couples odd and even modes.
fn parity_blocks(b: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = b.nrows();
    let decoupled = (0..n).all(|i| ((i + 1) % 2..n).step_by(2).all(|j| b[(i, j)] == 0.0));
    if decoupled && n > 1 {
        vec![(0..n).step_by(2).collect(), (1..n).step_by(2).collect()]
    } else {
        vec![(0..n).collect()]
    }
}

pub fn weighted_eig(a: &OperatorMat) -> Result<EigFactorization> {
    let n = a.size();
    if a.mat.ncols() != n || a.basis_in != a.basis_out {
        return Err(Error::Dimension("weighted_eig needs a square endomorphism".into()));
    }
    let scale = a.mat.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let imag = a.mat.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag > SYMMETRY_TOL * scale {
        return Err(Error::NotReal(imag / scale));
    }
    let defect = a.weighted_symmetry_defect();
    if defect > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(defect));
    }
    let w = basis_weights(a.basis_in, n);
    let sw: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    let b = DMatrix::from_fn(n, n, |i, j| {
        let v = a.mat[(i, j)].re * sw[i] / sw[j];
        let t = a.mat[(j, i)].re * sw[j] / sw[i];
        0.5 * (v + t)
    });

    let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n);
    for idx in parity_blocks(&b) {
        let m = idx.len();
        let sub = DMatrix::from_fn(m, m, |i, j| b[(idx[i], idx[j])]);
        let eig = SymmetricEigen::try_new(sub, f64::EPSILON, 0)
            .ok_or_else(|| Error::Eigen("symmetric QR did not converge".into()))?;
        for c in 0..m {
            let mut v = vec![0.0; n];
            for (r, &i) in idx.iter().enumerate() {
                v[i] = eig.eigenvectors[(r, c)] / sw[i];
            }
            pairs.push((eig.eigenvalues[c], v));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let values = pairs.iter().map(|p| p.0).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| pairs[j].1[i]);
    Ok(EigFactorization {
        values,
        vectors,
        weights: w,
        basis: a.basis_in,
        k: a.k,
        curve_id: a.curve_id.clone(),
    })
}

impl EigFactorization {
    /// `V f(Lambda) V^T W`.
    pub fn apply_fn<F: Fn(f64) -> C64>(&self, f: F) -> OperatorMat {
        let n = self.values.len();
        let fl: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let all_real = fl.iter().all(|v| v.im == 0.0);
        let vw = DMatrix::from_fn(n, n, |i, j| self.vectors[(j, i)] * self.weights[j]);
        let mat = if all_real {
            let mut scaled = self.vectors.clone();
            for (j, v) in fl.iter().enumerate() {
                scaled.column_mut(j).scale_mut(v.re);
            }
            (scaled * vw).map(|x| C64::new(x, 0.0))
        } else {
            let re = DMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * fl[j].re);
            let im = DMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * fl[j].im);
            let (r, m) = (re * &vw, im * &vw);
            DMatrix::from_fn(n, n, |i, j| C64::new(r[(i, j)], m[(i, j)]))
        };
        OperatorMat {
            mat,
            basis_in: self.basis,
            basis_out: self.basis,
            k: self.k,
            curve_id: self.curve_id.clone(),
            quad_m: 0,
        }
    }

    pub fn reconstruct(&self) -> OperatorMat {
        self.apply_fn(|l| C64::new(l, 0.0))
    }

    /// Smallest `|lambda|`.
    pub fn min_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min)
    }
}

/// Principal square root: `sqrt(l)` for `l >= 0`, `i sqrt(-l)` otherwise.
pub fn principal_sqrt_scalar(l: f64) -> C64 {
    if l >= 0.0 {
        C64::new(l.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-l).sqrt())
    }
}

pub fn principal_sqrt(f: &EigFactorization) -> OperatorMat {
    f.apply_fn(principal_sqrt_scalar)
}

/// Inverse of [`principal_sqrt`]; fails on eigenvalues with `|sqrt(l)| <= 1e-8`.
pub fn inv_sqrt(f: &EigFactorization) -> Result<OperatorMat> {
    if let Some(&l) = f.values.iter().find(|l| l.abs().sqrt() <= SINGULAR_TOL) {
        return Err(Error::SingularEigenvalue(l));
    }
    Ok(f.apply_fn(|l| 1.0 / principal_sqrt_scalar(l)))
}

fn tag(mat: DMatrix<C64>, basis: Basis, curve: &Curve, k: f64) -> OperatorMat {
    OperatorMat { mat, basis_in: basis, basis_out: basis, k, curve_id: curve.id(), quad_m: 0 }
}

/// `D1` on `T_0..T_{n-1}`.
pub fn tangential_d1(curve: &Curve, k: f64, n: usize) -> OperatorMat {
    let k2 = kappa_eff(curve, k).powi(2);
    let m = matrix_of(n, n, |c| mul_omega2_t(&ChebT::new(c.to_vec())).coeffs);
    let mat = DMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { (i * i) as f64 } else { 0.0 };
        C64::new(d, 0.0) - m[(i, j)] * k2
    });
    tag(mat, Basis::T, curve, k)
}

/// `D2` on `U_0..U_{n-1}`.
pub fn tangential_d2(curve: &Curve, k: f64, n: usize) -> OperatorMat {
    let k2 = kappa_eff(curve, k).powi(2);
    let m = matrix_of(n, n, |c| mul_omega2_u_to_u(&ChebU::new(c.to_vec())).coeffs);
    let mat = DMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { ((i + 1) * (i + 1)) as f64 } else { 0.0 };
        C64::new(d, 0.0) - m[(i, j)] * k2
    });
    tag(mat, Basis::U, curve, k)
}

/// `sqrt(D1)` on `T_0..T_{n-1}`, computed at size `2n` and cropped.
pub fn build_p1(curve: &Curve, k: f64, n: usize) -> Result<OperatorMat> {
    let f = weighted_eig(&tangential_d1(curve, k, 2 * n))?;
    Ok(principal_sqrt(&f).crop(n))
}

/// `sqrt(D2)` on `U_0..U_{n-1}`, computed at size `2n` and cropped.
pub fn sqrt_d2(curve: &Curve, k: f64, n: usize) -> Result<OperatorMat> {
    let f = weighted_eig(&tangential_d2(curve, k, 2 * n))?;
    Ok(principal_sqrt(&f).crop(n))
}

/// `D2^{-1/2}` on `U_0..U_{n-1}`, computed at size `2n` and cropped.  An
/// eigenvalue of `D2` within `1e-8` of zero is moved away by `1e-6 |D2|`.
pub fn build_p2(curve: &Curve, k: f64, n: usize) -> Result<OperatorMat> {
    let d2 = tangential_d2(curve, k, 2 * n);
    let mut f = weighted_eig(&d2)?;
    if f.min_abs() <= SINGULAR_TOL {
        let shift = 1e-6 * d2.frobenius();
        log::warn!(
            "D2 has eigenvalue {:e} near zero (k = {k}); shifting by {shift:e}",
            f.min_abs()
        );
        for l in f.values.iter_mut() {
            *l += shift;
        }
    }
    Ok(inv_sqrt(&f)?.crop(n))
}
