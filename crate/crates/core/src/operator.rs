//! Dense Galerkin matrices tagged with their bases and assembly parameters.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::cheb::Basis;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct OperatorMat {
    pub mat: DMatrix<C64>,
    pub basis_in: Basis,
    pub basis_out: Basis,
    pub k: f64,
    pub curve_id: String,
    /// Quadrature grid size used for assembly; 0 for exact coefficient maps.
    pub quad_m: usize,
}

impl OperatorMat {
    pub fn new(mat: DMatrix<C64>, basis_in: Basis, basis_out: Basis) -> Self {
        Self { mat, basis_in, basis_out, k: 0.0, curve_id: String::new(), quad_m: 0 }
    }

    /// Copies `k`, curve and grid tags from `other`.
    pub fn tagged_like(mut self, other: &OperatorMat) -> Self {
        self.k = other.k;
        self.curve_id = other.curve_id.clone();
        self.quad_m = other.quad_m;
        self
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let n = self.mat.ncols();
        let mut y = vec![C64::new(0.0, 0.0); self.mat.nrows()];
        for (j, xj) in x.iter().enumerate().take(n) {
            if *xj == C64::new(0.0, 0.0) {
                continue;
            }
            for (yi, a) in y.iter_mut().zip(self.mat.column(j).iter()) {
                *yi += a * xj;
            }
        }
        y
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.mat.column(j).iter().copied().collect()
    }

    /// Leading `n x n` block.
    pub fn crop(&self, n: usize) -> OperatorMat {
        let n = n.min(self.mat.nrows()).min(self.mat.ncols());
        OperatorMat { mat: self.mat.view((0, 0), (n, n)).into_owned(), ..self.clone() }
    }

    pub fn frobenius(&self) -> f64 {
        self.mat.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Product `self * rhs`, checking that the bases chain.
    pub fn compose(&self, rhs: &OperatorMat) -> Result<OperatorMat> {
        if self.basis_in != rhs.basis_out {
            return Err(Error::BasisMismatch {
                expected: self.basis_in.name(),
                got: rhs.basis_out.name(),
            });
        }
        if self.mat.ncols() != rhs.mat.nrows() {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.mat.nrows(),
                self.mat.ncols(),
                rhs.mat.nrows(),
                rhs.mat.ncols()
            )));
        }
        Ok(OperatorMat {
            mat: &self.mat * &rhs.mat,
            basis_in: rhs.basis_in,
            basis_out: self.basis_out,
            k: self.k,
            curve_id: self.curve_id.clone(),
            quad_m: self.quad_m.max(rhs.quad_m),
        })
    }

    /// Largest `|W_out A - (W_in A)^T|` relative to `max |A|`, where `W` is the
    /// Chebyshev pairing weight of the basis.
    pub fn weighted_symmetry_defect(&self) -> f64 {
        let n = self.mat.nrows().min(self.mat.ncols());
        let w = |b: Basis, i: usize| match (b, i) {
            (Basis::T, 0) => 1.0,
            _ => 0.5,
        };
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let a = self.mat[(i, j)] * w(self.basis_out, i);
                let b = self.mat[(j, i)] * w(self.basis_out, j);
                worst = worst.max((a - b).norm());
                scale = scale.max(self.mat[(i, j)].norm());
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            worst / scale
        }
    }

    /// Writes the matrix as CSV: a `# rows,cols,basis_in,basis_out,k,curve,M`
    /// header line, then one row per line with `re,im` pairs.
    pub fn dump_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "# {},{},{},{},{},{},{}",
            self.mat.nrows(),
            self.mat.ncols(),
            self.basis_in.name(),
            self.basis_out.name(),
            self.k,
            self.curve_id,
            self.quad_m
        )?;
        for i in 0..self.mat.nrows() {
            let row: Vec<String> = (0..self.mat.ncols())
                .map(|j| {
                    let v = self.mat[(i, j)];
                    format!("{:.17e},{:.17e}", v.re, v.im)
                })
                .collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}
