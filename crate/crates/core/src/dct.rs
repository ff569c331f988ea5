//! Type-I cosine and sine transforms on the Chebyshev-Lobatto grid, computed
//! with an FFT of the symmetric extension.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

/// Plan for the unnormalised type-I DCT of length `m + 1`:
///
/// `F_n = f_0 + (-1)^n f_m + 2 sum_{j=1}^{m-1} f_j cos(pi n j / m)`, `n = 0..=m`.
#[derive(Clone)]
pub struct Dct1 {
    m: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl Dct1 {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "DCT-I needs at least two samples");
        let fft = FftPlanner::new().plan_fft_forward(2 * m);
        Self { m, fft }
    }

    pub fn len(&self) -> usize {
        self.m + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Transforms `f` (length `m + 1`) and returns all `m + 1` outputs.
    pub fn apply(&self, f: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.m + 1];
        self.apply_into(f, &mut out);
        out
    }

    /// Same as [`Dct1::apply`] but writes only the first `out.len()` outputs.
    pub fn apply_into(&self, f: &[C64], out: &mut [C64]) {
        let m = self.m;
        assert_eq!(f.len(), m + 1, "DCT-I input length");
        let mut buf = Vec::with_capacity(2 * m);
        buf.extend_from_slice(f);
        buf.extend(f[1..m].iter().rev());
        self.fft.process(&mut buf);
        for (o, b) in out.iter_mut().zip(buf.iter()) {
            *o = *b;
        }
    }
}

/// Plan for the unnormalised type-I DST on the interior points:
///
/// `G_n = 2 sum_{j=1}^{m-1} g_j sin(pi n j / m)`, returned for `n = 1..m`.
#[derive(Clone)]
pub struct Dst1 {
    m: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl Dst1 {
    pub fn new(m: usize) -> Self {
        assert!(m >= 2, "DST-I needs at least one interior sample");
        let fft = FftPlanner::new().plan_fft_forward(2 * m);
        Self { m, fft }
    }

    /// `g` holds the `m - 1` interior samples; output index `i` is `G_{i+1}`.
    pub fn apply(&self, g: &[C64]) -> Vec<C64> {
        let m = self.m;
        assert_eq!(g.len(), m - 1, "DST-I input length");
        let zero = C64::new(0.0, 0.0);
        let mut buf = Vec::with_capacity(2 * m);
        buf.push(zero);
        buf.extend_from_slice(g);
        buf.push(zero);
        buf.extend(g.iter().rev().map(|v| -v));
        self.fft.process(&mut buf);
        // FFT of the odd extension is -2i times the sine sum.
        buf[1..m].iter().map(|v| C64::new(-v.im, v.re)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn dct1_matches_direct_sum() {
        let m = 12;
        let f: Vec<C64> = (0..=m)
            .map(|j| C64::new((j as f64 * 0.37).sin(), (j as f64).sqrt()))
            .collect();
        let got = Dct1::new(m).apply(&f);
        for n in 0..=m {
            let mut want = f[0] + f[m] * if n % 2 == 0 { 1.0 } else { -1.0 };
            for (j, fj) in f.iter().enumerate().take(m).skip(1) {
                want += fj * 2.0 * (PI * (n * j) as f64 / m as f64).cos();
            }
            assert!((got[n] - want).norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn dst1_matches_direct_sum() {
        let m = 10;
        let g: Vec<C64> = (1..m).map(|j| C64::new(j as f64, -(j as f64).cos())).collect();
        let got = Dst1::new(m).apply(&g);
        for n in 1..m {
            let mut want = C64::new(0.0, 0.0);
            for j in 1..m {
                want += g[j - 1] * 2.0 * (PI * (n * j) as f64 / m as f64).sin();
            }
            assert!((got[n - 1] - want).norm() < 1e-12, "n = {n}");
        }
    }
}
