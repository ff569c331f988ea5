//! Open arcs parametrised over `[-1, 1]` with constant speed `L/2`.
//!
//! Derivatives are expressed in the Frenet frame `(tau, n)` with
//! `n = rot90(tau)`, signed curvature `kappa` and `ell = L/2`:
//! `r' = ell tau`, `tau' = ell kappa n`, `n' = -ell kappa tau`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// Below this parameter distance the chord is expanded around the midpoint.
const TAYLOR_CUTOFF: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurveSpec {
    Segment,
    Arc {
        #[serde(default = "one")]
        radius: f64,
        opening: f64,
    },
    Perturbed {
        #[serde(default = "one")]
        radius: f64,
        opening: f64,
        amplitude: f64,
        frequency: f64,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug)]
pub enum Curve {
    Segment,
    Arc { radius: f64, opening: f64 },
    Perturbed(Box<Perturbed>),
}

impl CurveSpec {
    pub fn build(&self) -> Result<Curve> {
        match *self {
            CurveSpec::Segment => Ok(Curve::Segment),
            CurveSpec::Arc { radius, opening } => make_arc(radius, opening),
            CurveSpec::Perturbed { radius, opening, amplitude, frequency } => {
                make_perturbed(radius, opening, amplitude, frequency)
            }
        }
    }
}

pub fn make_segment() -> Curve {
    Curve::Segment
}

pub fn make_arc(radius: f64, opening: f64) -> Result<Curve> {
    if !(radius > 0.0) || !(opening > 0.0 && opening < 2.0 * PI) {
        return Err(Error::BadCurve(format!(
            "arc needs radius > 0 and opening in (0, 2pi), got {radius}, {opening}"
        )));
    }
    Ok(Curve::Arc { radius, opening })
}

/// Arc of radius `radius (1 + amplitude sin(frequency pi t))`, reparametrised
/// to constant speed.
pub fn make_perturbed(radius: f64, opening: f64, amplitude: f64, frequency: f64) -> Result<Curve> {
    if !(radius > 0.0) || !(opening > 0.0 && opening < 2.0 * PI) || !(amplitude.abs() < 1.0) {
        return Err(Error::BadCurve(format!(
            "perturbed arc needs radius > 0, opening in (0, 2pi), |amplitude| < 1; got {radius}, {opening}, {amplitude}"
        )));
    }
    let p = Perturbed::new(radius, opening, amplitude, frequency);
    let c = Curve::Perturbed(Box::new(p));
    c.check_injective(512)?;
    Ok(c)
}

/// Truncated Taylor series `sum a_i h^i` used to differentiate in the moving frame.
#[derive(Clone, Debug)]
struct Jet(Vec<f64>);

impl Jet {
    fn constant(c: f64, len: usize) -> Jet {
        let mut v = vec![0.0; len];
        v[0] = c;
        Jet(v)
    }

    fn deriv(&self) -> Jet {
        let n = self.0.len();
        let mut v = vec![0.0; n.saturating_sub(1).max(1)];
        for i in 1..n {
            v[i - 1] = i as f64 * self.0[i];
        }
        Jet(v)
    }

    fn mul(&self, o: &Jet) -> Jet {
        let n = self.0.len().min(o.0.len());
        let mut v = vec![0.0; n];
        for i in 0..n {
            for j in 0..n - i {
                v[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(v)
    }

    fn sub(&self, o: &Jet) -> Jet {
        let n = self.0.len().min(o.0.len());
        Jet((0..n).map(|i| self.0[i] - o.0[i]).collect())
    }

    fn add(&self, o: &Jet) -> Jet {
        let n = self.0.len().min(o.0.len());
        Jet((0..n).map(|i| self.0[i] + o.0[i]).collect())
    }

    fn scale(&self, s: f64) -> Jet {
        Jet(self.0.iter().map(|a| a * s).collect())
    }
}

/// Frame components `(alpha_m, beta_m)` of `r^(m)`, `m = 1..=count`, given the
/// curvature derivatives `[kappa, kappa', kappa'', kappa''']` and `ell`.
pub fn frame_derivatives(kappa: [f64; 4], ell: f64, count: usize) -> Vec<(f64, f64)> {
    let len = kappa.len();
    let mut factorial = 1.0;
    let mut k = vec![0.0; len];
    for (i, d) in kappa.iter().enumerate() {
        if i > 0 {
            factorial *= i as f64;
        }
        k[i] = d / factorial;
    }
    let lk = Jet(k).scale(ell);
    let mut a = Jet::constant(ell, len + 1);
    let mut b = Jet::constant(0.0, len + 1);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push((a.0[0], b.0[0]));
        let na = a.deriv().sub(&lk.mul(&b));
        let nb = b.deriv().add(&lk.mul(&a));
        a = na;
        b = nb;
    }
    out
}

#[derive(Clone, Debug)]
pub struct Perturbed {
    radius: f64,
    opening: f64,
    amplitude: f64,
    frequency: f64,
    length: f64,
    gl_nodes: Vec<f64>,
    gl_weights: Vec<f64>,
    /// Panel breakpoints in `t` and cumulative arclength at each.
    breaks: Vec<f64>,
    cumulative: Vec<f64>,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

impl Perturbed {
    const PANELS: usize = 64;

    fn new(radius: f64, opening: f64, amplitude: f64, frequency: f64) -> Self {
        let (gl_nodes, gl_weights) = gauss_legendre(16);
        let mut p = Perturbed {
            radius,
            opening,
            amplitude,
            frequency,
            length: 0.0,
            gl_nodes,
            gl_weights,
            breaks: Vec::new(),
            cumulative: Vec::new(),
        };
        let breaks: Vec<f64> = (0..=Self::PANELS)
            .map(|i| -1.0 + 2.0 * i as f64 / Self::PANELS as f64)
            .collect();
        let mut cumulative = vec![0.0];
        for w in breaks.windows(2) {
            let last = *cumulative.last().unwrap();
            cumulative.push(last + p.speed_integral(w[0], w[1]));
        }
        p.length = *cumulative.last().unwrap();
        p.breaks = breaks;
        p.cumulative = cumulative;
        p
    }

    /// `(R, R', R'')` of the radius profile in the raw parameter.
    fn profile(&self, t: f64) -> (f64, f64, f64) {
        let w = self.frequency * PI;
        let (s, c) = (w * t).sin_cos();
        let r = self.radius;
        (r * (1.0 + self.amplitude * s), r * self.amplitude * w * c, -r * self.amplitude * w * w * s)
    }

    fn raw(&self, t: f64) -> (Point, Point, Point) {
        let phi_d = 0.5 * self.opening;
        let (sp, cp) = (phi_d * t).sin_cos();
        let e = [sp, -cp];
        let f = [cp, sp];
        let (r, r1, r2) = self.profile(t);
        let p = [r * e[0], r * e[1]];
        let d1 = [r1 * e[0] + r * phi_d * f[0], r1 * e[1] + r * phi_d * f[1]];
        let a = r2 - r * phi_d * phi_d;
        let b = 2.0 * r1 * phi_d;
        let d2 = [a * e[0] + b * f[0], a * e[1] + b * f[1]];
        (p, d1, d2)
    }

    fn speed(&self, t: f64) -> f64 {
        let (_, d1, _) = self.raw(t);
        d1[0].hypot(d1[1])
    }

    fn raw_curvature(&self, t: f64) -> f64 {
        let (_, d1, d2) = self.raw(t);
        let sp = d1[0].hypot(d1[1]);
        (d1[0] * d2[1] - d1[1] * d2[0]) / (sp * sp * sp)
    }

    fn speed_integral(&self, a: f64, b: f64) -> f64 {
        let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.gl_nodes
            .iter()
            .zip(&self.gl_weights)
            .map(|(x, w)| w * self.speed(m + h * x))
            .sum::<f64>()
            * h
    }

    /// Raw parameter at arclength `s` measured from `t = -1`.
    fn invert(&self, s: f64) -> f64 {
        let i = match self.cumulative.iter().position(|&c| c > s) {
            Some(0) => 0,
            Some(i) => i - 1,
            None => Self::PANELS - 1,
        };
        let (t0, s0) = (self.breaks[i], self.cumulative[i]);
        self.solve_from(t0, s - s0)
    }

    /// Solves `int_{t0}^{t} |r0'| = ds` by Newton's method.
    fn solve_from(&self, t0: f64, ds: f64) -> f64 {
        let mut t = t0 + ds / self.speed(t0);
        for _ in 0..50 {
            let g = self.speed_integral(t0, t) - ds;
            let dt = g / self.speed(t);
            t -= dt;
            if dt.abs() < 1e-15 {
                break;
            }
        }
        t
    }

    fn param(&self, x: f64) -> f64 {
        self.invert(0.5 * (x + 1.0) * self.length)
    }

    fn kappa_jet(&self, x: f64) -> [f64; 4] {
        const H: f64 = 0.02;
        let t = self.param(x);
        let ell = 0.5 * self.length;
        let g: Vec<f64> = (-4i32..=4)
            .map(|j| {
                if j == 0 {
                    self.raw_curvature(t)
                } else {
                    self.raw_curvature(self.solve_from(t, ell * H * j as f64))
                }
            })
            .collect();
        let d1 = [1.0 / 280.0, -4.0 / 105.0, 0.2, -0.8, 0.0, 0.8, -0.2, 4.0 / 105.0, -1.0 / 280.0];
        let d2 = [
            -1.0 / 560.0,
            8.0 / 315.0,
            -0.2,
            1.6,
            -205.0 / 72.0,
            1.6,
            -0.2,
            8.0 / 315.0,
            -1.0 / 560.0,
        ];
        let d3 = [
            -7.0 / 240.0,
            0.3,
            -169.0 / 120.0,
            61.0 / 30.0,
            0.0,
            -61.0 / 30.0,
            169.0 / 120.0,
            -0.3,
            7.0 / 240.0,
        ];
        let dot = |c: &[f64; 9]| c.iter().zip(&g).map(|(a, b)| a * b).sum::<f64>();
        [g[4], dot(&d1) / H, dot(&d2) / (H * H), dot(&d3) / (H * H * H)]
    }
}

impl Curve {
    pub fn id(&self) -> String {
        match self {
            Curve::Segment => "segment".into(),
            Curve::Arc { radius, opening } => format!("arc(r={radius},a={opening:.6})"),
            Curve::Perturbed(p) => format!(
                "perturbed(r={},a={:.6},amp={},freq={})",
                p.radius, p.opening, p.amplitude, p.frequency
            ),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Curve::Segment => 2.0,
            Curve::Arc { radius, opening } => radius * opening,
            Curve::Perturbed(p) => p.length,
        }
    }

    /// Constant speed `|r'| = L/2`.
    pub fn ell(&self) -> f64 {
        0.5 * self.length()
    }

    pub fn point(&self, x: f64) -> Point {
        match self {
            Curve::Segment => [x, 0.0],
            Curve::Arc { radius, opening } => {
                let (s, c) = (0.5 * opening * x).sin_cos();
                [radius * s, -radius * c]
            }
            Curve::Perturbed(p) => p.raw(p.param(x)).0,
        }
    }

    pub fn tangent(&self, x: f64) -> Point {
        match self {
            Curve::Segment => [1.0, 0.0],
            Curve::Arc { opening, .. } => {
                let (s, c) = (0.5 * opening * x).sin_cos();
                [c, s]
            }
            Curve::Perturbed(p) => {
                let (_, d1, _) = p.raw(p.param(x));
                let sp = d1[0].hypot(d1[1]);
                [d1[0] / sp, d1[1] / sp]
            }
        }
    }

    pub fn normal(&self, x: f64) -> Point {
        let t = self.tangent(x);
        [-t[1], t[0]]
    }

    /// `[kappa, kappa', kappa'', kappa''']` with derivatives in `x`.
    pub fn kappa_jet(&self, x: f64) -> [f64; 4] {
        match self {
            Curve::Segment => [0.0; 4],
            Curve::Arc { radius, .. } => [1.0 / radius, 0.0, 0.0, 0.0],
            Curve::Perturbed(p) => p.kappa_jet(x),
        }
    }

    pub fn kappa(&self, x: f64) -> f64 {
        match self {
            Curve::Perturbed(p) => p.raw_curvature(p.param(x)),
            _ => self.kappa_jet(x)[0],
        }
    }

    /// `r^(m)(x)` for `m = 1..=count` (`count <= 5`), in world coordinates.
    pub fn derivatives(&self, x: f64, count: usize) -> Vec<Point> {
        let tau = self.tangent(x);
        let nrm = [-tau[1], tau[0]];
        frame_derivatives(self.kappa_jet(x), self.ell(), count)
            .into_iter()
            .map(|(a, b)| [a * tau[0] + b * nrm[0], a * tau[1] + b * nrm[1]])
            .collect()
    }

    pub fn dr(&self, x: f64) -> Point {
        self.derivatives(x, 1)[0]
    }

    /// `q` with `r(x) - r(y) = (x - y) q`; `q = r'(x)` on the diagonal.
    pub fn divided_diff(&self, x: f64, y: f64) -> Point {
        let d = x - y;
        match self {
            Curve::Segment => [1.0, 0.0],
            Curve::Arc { radius, opening } => {
                let f = 0.5 * radius * opening * sinc(0.25 * opening * d);
                let (s, c) = (0.25 * opening * (x + y)).sin_cos();
                [f * c, f * s]
            }
            Curve::Perturbed(_) if d.abs() >= TAYLOR_CUTOFF => {
                let (a, b) = (self.point(x), self.point(y));
                [(a[0] - b[0]) / d, (a[1] - b[1]) / d]
            }
            Curve::Perturbed(_) => self.midpoint_quotient(x, y),
        }
    }

    fn midpoint_quotient(&self, x: f64, y: f64) -> Point {
        // r(x) - r(y) = 2 (r' h + r''' h^3/6 + r^(5) h^5/120), h = (x - y)/2
        let h = 0.5 * (x - y);
        let r = self.derivatives(0.5 * (x + y), 5);
        let (c3, c5) = (h * h / 6.0, h.powi(4) / 120.0);
        [r[0][0] + c3 * r[2][0] + c5 * r[4][0], r[0][1] + c3 * r[2][1] + c5 * r[4][1]]
    }

    /// `|r(x) - r(y)| / |x - y|`, equal to `L/2` on the diagonal.
    pub fn chord_ratio(&self, x: f64, y: f64) -> f64 {
        self.chord_ratio_with(x, y, None)
    }

    /// [`Curve::chord_ratio`] reusing already evaluated points.
    pub fn chord_ratio_pts(&self, x: f64, y: f64, rx: Point, ry: Point) -> f64 {
        self.chord_ratio_with(x, y, Some((rx, ry)))
    }

    fn chord_ratio_with(&self, x: f64, y: f64, pts: Option<(Point, Point)>) -> f64 {
        match self {
            Curve::Segment => 1.0,
            Curve::Arc { radius, opening } => {
                // chord = 2 rho sin(alpha |x - y| / 4)
                let u = 0.25 * opening * (x - y);
                0.5 * radius * opening * sinc(u)
            }
            Curve::Perturbed(_) => {
                let d = x - y;
                if d.abs() >= TAYLOR_CUTOFF {
                    let (a, b) = pts.unwrap_or_else(|| (self.point(x), self.point(y)));
                    return (a[0] - b[0]).hypot(a[1] - b[1]) / d.abs();
                }
                let v = self.midpoint_quotient(x, y);
                v[0].hypot(v[1])
            }
        }
    }

    /// Coefficients `c_0..=c_order` of `|r(x + h) - r(x)|^2 = sum c_i h^i`,
    /// `order <= 6`.
    pub fn geo_taylor(&self, x: f64, order: usize) -> Vec<f64> {
        assert!(order <= 6, "geo_taylor supports order <= 6");
        let mut c = vec![0.0; order + 1];
        if order < 2 {
            return c;
        }
        let frame = frame_derivatives(self.kappa_jet(x), self.ell(), order - 1);
        let mut fact = vec![1.0; order + 1];
        for i in 1..=order {
            fact[i] = fact[i - 1] * i as f64;
        }
        for m1 in 1..order {
            for m2 in 1..=order - m1 {
                let (a1, b1) = frame[m1 - 1];
                let (a2, b2) = frame[m2 - 1];
                c[m1 + m2] += (a1 * a2 + b1 * b2) / (fact[m1] * fact[m2]);
            }
        }
        // keep the leading coefficient exact
        let ell = self.ell();
        c[2] = ell * ell;
        c
    }

    /// Fails if two of `samples` equispaced points coincide.
    pub fn check_injective(&self, samples: usize) -> Result<()> {
        let xs: Vec<f64> = (0..samples)
            .map(|i| -1.0 + 2.0 * i as f64 / (samples - 1) as f64)
            .collect();
        let pts: Vec<Point> = xs.iter().map(|&x| self.point(x)).collect();
        let h = 2.0 / (samples - 1) as f64;
        for i in 0..samples {
            for j in i + 2..samples {
                let dist = (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]);
                // chords shorter than a tenth of the arc spacing signal a crossing
                if dist < 0.1 * self.ell() * h {
                    return Err(Error::NotInjective { i, j, dist });
                }
            }
        }
        Ok(())
    }
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((got - 2.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn arc_frame_matches_closed_form() {
        let c = make_arc(1.0, PI / 2.0).unwrap();
        let x = 0.3;
        let d = c.derivatives(x, 3);
        let a = PI / 4.0;
        let (s, co) = (a * x).sin_cos();
        assert!((d[0][0] - a * co).abs() < 1e-15 && (d[0][1] - a * s).abs() < 1e-15);
        assert!((d[1][0] + a * a * s).abs() < 1e-15 && (d[1][1] - a * a * co).abs() < 1e-15);
        assert!((d[2][0] + a.powi(3) * co).abs() < 1e-15);
        assert!((c.kappa(x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn arc_chord_formula() {
        let c = make_arc(2.0, 1.0).unwrap();
        let (x, y) = (0.4, -0.7);
        let (a, b) = (c.point(x), c.point(y));
        let chord = (a[0] - b[0]).hypot(a[1] - b[1]);
        assert!((c.chord_ratio(x, y) * (x - y).abs() - chord).abs() < 1e-15);
        assert!((c.chord_ratio(x, x) - c.ell()).abs() < 1e-15);
        let q = c.divided_diff(x, y);
        assert!((q[0] * (x - y) - (a[0] - b[0])).abs() < 1e-15);
        assert!((q[1] * (x - y) - (a[1] - b[1])).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_arc(1.0, 2.0 * PI).is_err());
        assert!(make_arc(-1.0, 1.0).is_err());
        assert!(make_perturbed(1.0, 1.0, 1.5, 2.0).is_err());
    }

    #[test]
    fn segment_taylor_is_exact() {
        let c = make_segment();
        assert_eq!(c.geo_taylor(0.2, 6), vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }
}
