//! Bessel functions of order zero and the smooth remainder of the Helmholtz
//! kernel.
//!
//! The splitting used by the quadrature is
//!
//! ```text
//! i/4 H0(z) = -1/(2 pi) ln(z) J0(z) + F1(z^2)
//! F1(w) = (i/4 + (ln 2 - gamma)/(2 pi)) J0(sqrt w) - 1/(2 pi) sum_{m>=1} (-1)^{m+1} H_m (w/4)^m / (m!)^2
//! ```
//!
//! where `H_m` is the m-th harmonic number.  `F1` is entire in `w`.
//!
//! Ascending series are summed in double-double arithmetic once the terms
//! start to cancel (`z > 4`).  Beyond `z = 20` the Hankel asymptotic expansion
//! reaches full double precision and replaces the series.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use num_complex::Complex64 as C64;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const PLAIN_SERIES_MAX: f64 = 4.0;
const SERIES_MAX: f64 = 20.0;

mod dd {
    /// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
    #[derive(Clone, Copy, Debug)]
    pub struct Dd {
        pub hi: f64,
        pub lo: f64,
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    impl Dd {
        pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

        pub fn from(x: f64) -> Dd {
            Dd { hi: x, lo: 0.0 }
        }

        pub fn square(x: f64) -> Dd {
            let (hi, lo) = two_prod(x, x);
            Dd { hi, lo }
        }

        pub fn add(self, o: Dd) -> Dd {
            let (s, e) = two_sum(self.hi, o.hi);
            let (t, f) = two_sum(self.lo, o.lo);
            let (s, e) = quick_two_sum(s, e + t);
            let (hi, lo) = quick_two_sum(s, e + f);
            Dd { hi, lo }
        }

        pub fn neg(self) -> Dd {
            Dd { hi: -self.hi, lo: -self.lo }
        }

        pub fn mul(self, o: Dd) -> Dd {
            let (p, e) = two_prod(self.hi, o.hi);
            let e = e + (self.hi * o.lo + self.lo * o.hi);
            let (hi, lo) = quick_two_sum(p, e);
            Dd { hi, lo }
        }

        pub fn mul_f(self, b: f64) -> Dd {
            let (p, e) = two_prod(self.hi, b);
            let (hi, lo) = quick_two_sum(p, e + self.lo * b);
            Dd { hi, lo }
        }

        pub fn div_f(self, b: f64) -> Dd {
            let q1 = self.hi / b;
            let r = self.add(Dd::from(q1).mul_f(b).neg());
            let q2 = r.hi / b;
            let r = r.add(Dd::from(q2).mul_f(b).neg());
            let q3 = r.hi / b;
            let (hi, lo) = quick_two_sum(q1, q2);
            Dd { hi, lo }.add(Dd::from(q3))
        }

        pub fn value(self) -> f64 {
            self.hi + self.lo
        }
    }
}

use dd::Dd;

/// `(J0, S)` with `S = sum_{m>=1} (-1)^{m+1} H_m q^m / (m!)^2`, `q = z^2/4`.
fn series(z: f64) -> (f64, f64) {
    if z <= PLAIN_SERIES_MAX {
        let q = 0.25 * z * z;
        let (mut j, mut s) = (1.0, 0.0);
        let (mut t, mut h) = (1.0, 0.0);
        for m in 1..200 {
            let mf = m as f64;
            t *= -q / (mf * mf);
            h += 1.0 / mf;
            j += t;
            s -= h * t;
            if t.abs() < 1e-18 * j.abs().max(1e-300) && t.abs() * h < 1e-18 * s.abs().max(1e-300) {
                break;
            }
        }
        return (j, s);
    }
    let q = Dd::square(z).mul_f(0.25);
    let (mut j, mut s) = (Dd::from(1.0), Dd::ZERO);
    let (mut t, mut h) = (Dd::from(1.0), Dd::ZERO);
    for m in 1..400 {
        let mf = m as f64;
        t = t.mul(q).div_f(mf * mf).neg();
        h = h.add(Dd::from(1.0).div_f(mf));
        j = j.add(t);
        s = s.add(h.mul(t).neg());
        if t.hi.abs() * h.hi < 1e-34 {
            break;
        }
    }
    (j.value(), s.value())
}

/// Hankel asymptotic `(P, Q)` for order zero.
fn hankel_pq(z: f64) -> (f64, f64) {
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        a *= -(2.0 * kf - 1.0).powi(2) / (8.0 * kf * z);
        let mag = a.abs();
        if mag >= last || mag < 1e-17 {
            break;
        }
        last = mag;
        // a_k z^{-k} enters P (even k) or Q (odd k) with sign (-1)^{floor(k/2)}.
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
    }
    (p, q)
}

fn asymptotic(z: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(z);
    let chi = z - FRAC_PI_4;
    let amp = (2.0 / (PI * z)).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// Bessel function of the first kind, order zero.
pub fn j0(z: f64) -> f64 {
    let z = z.abs();
    if z <= SERIES_MAX {
        series(z).0
    } else {
        asymptotic(z).0
    }
}

/// Bessel function of the second kind, order zero, for `z > 0`.
pub fn y0(z: f64) -> f64 {
    assert!(z > 0.0, "Y0 is singular at z = {z}");
    if z <= SERIES_MAX {
        let (j, s) = series(z);
        2.0 / PI * (((0.5 * z).ln() + EULER_GAMMA) * j + s)
    } else {
        asymptotic(z).1
    }
}

/// Hankel function of the first kind, order zero: `J0 + i Y0`.
pub fn h0(z: f64) -> C64 {
    if z <= SERIES_MAX {
        let (j, s) = series(z);
        let y = 2.0 / PI * (((0.5 * z).ln() + EULER_GAMMA) * j + s);
        C64::new(j, y)
    } else {
        let (j, y) = asymptotic(z);
        C64::new(j, y)
    }
}

/// Smooth part `F1(w)` of the kernel splitting, for real `w >= 0`.
pub fn f1(w: f64) -> C64 {
    kernel_parts(w.max(0.0).sqrt()).1
}

/// `(J0(z), F1(z^2))` for `z >= 0`, sharing one series evaluation.
pub fn kernel_parts(z: f64) -> (f64, C64) {
    let z = z.abs();
    if z <= PLAIN_SERIES_MAX {
        let (j, s) = series(z);
        let c = (LN_2 - EULER_GAMMA) / (2.0 * PI);
        return (j, C64::new(c * j - s / (2.0 * PI), 0.25 * j));
    }
    let h = h0(z);
    let f = C64::new(0.0, 0.25) * h + z.ln() * h.re / (2.0 * PI);
    (h.re, f)
}
