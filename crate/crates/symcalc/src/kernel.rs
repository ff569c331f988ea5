//! Symbols of the single-layer operator and of the normal-weighted single
//! layer, from Taylor data of the log-singular kernel on a general curve.
//!
//! The curve is parametrised on `[-1, 1]` with constant speed `L/2`; the
//! curvature and its `x`-derivatives enter as atoms `kappa_i`.

use crate::coef::Coef;
use crate::poly::TrigPoly;
use crate::symbol::PSymbol;

/// Power series in `t` truncated after `t^order`.
#[derive(Clone, Debug)]
pub struct Series(pub Vec<TrigPoly>);

impl Series {
    pub fn zero(order: usize) -> Series {
        Series(vec![TrigPoly::zero(); order + 1])
    }

    pub fn one(order: usize) -> Series {
        let mut s = Series::zero(order);
        s.0[0] = TrigPoly::int(1);
        s
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn add(&self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, p: &TrigPoly) -> Series {
        Series(self.0.iter().map(|a| a.mul(p)).collect())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.order();
        let mut out = Series::zero(n);
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.0[i + j] = out.0[i + j].add(&a.mul(b));
                }
            }
        }
        out
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn half_length() -> TrigPoly {
    TrigPoly::l().scale(&Coef::frac(1, 2))
}

/// Frame components `(tangential, normal)` of the first `count` derivatives of
/// a vector field starting from `(a0, b0)`.
fn frame_derivatives(a0: TrigPoly, b0: TrigPoly, count: usize) -> Vec<(TrigPoly, TrigPoly)> {
    let lk = half_length().mul(&TrigPoly::kappa(0));
    let mut out = vec![(a0, b0)];
    for _ in 1..count {
        let (a, b) = out.last().unwrap();
        let na = a.d_x().sub(&lk.mul(b));
        let nb = b.d_x().add(&lk.mul(a));
        out.push((na, nb));
    }
    out
}

/// `cos(theta + t) - cos(theta)`.
pub fn h_series(order: usize) -> Series {
    let mut h = Series::zero(order);
    let cycle = [TrigPoly::s().neg(), TrigPoly::c().neg(), TrigPoly::s(), TrigPoly::c()];
    for p in 1..=order {
        h.0[p] = cycle[(p - 1) % 4].scale(&Coef::frac(1, factorial(p)));
    }
    h
}

fn powers(h: &Series, count: usize) -> Vec<Series> {
    let mut out = vec![Series::one(h.order())];
    for m in 1..=count {
        let next = out[m - 1].mul(h);
        out.push(next);
    }
    out
}

/// Coefficients `D_m` of `|r(x + h) - r(x)|^2 = sum_m D_m h^m`, `m = 0..=order`.
pub fn chord_coefficients(order: usize) -> Vec<TrigPoly> {
    // r', r'', ... with r' = (L/2, 0)
    let r = frame_derivatives(half_length(), TrigPoly::zero(), order.max(1));
    let mut d = vec![TrigPoly::zero(); order + 1];
    for (m, dm) in d.iter_mut().enumerate().skip(2) {
        for m1 in 1..m {
            let m2 = m - m1;
            let (a1, b1) = &r[m1 - 1];
            let (a2, b2) = &r[m2 - 1];
            let dot = a1.mul(a2).add(&b1.mul(b2));
            *dm = dm.add(&dot.scale(&Coef::frac(1, factorial(m1) * factorial(m2))));
        }
    }
    d
}

/// `J0(k |r(cos(theta + t)) - r(cos(theta))|)` as a series in `t`.
pub fn bessel_series(order: usize) -> Series {
    let hp = powers(&h_series(order), order);
    let dm = chord_coefficients(order);
    let mut dist = Series::zero(order);
    for (m, c) in dm.iter().enumerate() {
        if !c.is_zero() {
            dist = dist.add(&hp[m].scale(c));
        }
    }
    let q = dist.scale(&TrigPoly::k().pow(2).scale(&Coef::frac(1, 4)));
    let mut out = Series::zero(order);
    let mut qm = Series::one(order);
    for m in 0..=order / 2 {
        let f = factorial(m);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        out = out.add(&qm.scale(&TrigPoly::frac(sign, f * f)));
        qm = qm.mul(&q);
    }
    out
}

/// `n(cos(theta)) . n(cos(theta + t))` as a series in `t`.
pub fn normal_product_series(order: usize) -> Series {
    let hp = powers(&h_series(order), order);
    let nd = frame_derivatives(TrigPoly::zero(), TrigPoly::int(1), order + 1);
    let mut out = Series::zero(order);
    for (m, (_, b)) in nd.iter().enumerate() {
        if !b.is_zero() {
            out = out.add(&hp[m].scale(&b.scale(&Coef::frac(1, factorial(m)))));
        }
    }
    out
}

/// Symbol of `u -> -1/(2 pi) int ln|x - y| a(x, y) u(y) dy / sqrt(1 - y^2)`
/// from the Taylor coefficients `a_j` of `t -> a(cos theta, cos(theta + t))`,
/// keeping exponents `>= -depth`.
pub fn integral_symbol(a: &Series, depth: i32) -> PSymbol {
    let mut out = PSymbol::zero();
    for j in 0..depth.max(0) as usize {
        let Some(aj) = a.0.get(j) else { break };
        let c = &Coef::i_pow(j as i64) * &Coef::frac(factorial(j), 2);
        out.add_at(-(j as i32) - 1, &aj.scale(&c));
    }
    out.with_remainder(Some(-depth - 1))
}

fn series_order(depth: i32) -> usize {
    depth.max(1) as usize
}

/// Symbol of the single-layer operator on `T`, exponents `>= -depth`.
pub fn sigma_s(depth: i32) -> PSymbol {
    integral_symbol(&bessel_series(series_order(depth)), depth)
}

/// Symbol of the single-layer operator with kernel weighted by `n(x) . n(y)`.
pub fn sigma_v(depth: i32) -> PSymbol {
    let n = series_order(depth);
    integral_symbol(&bessel_series(n).mul(&normal_product_series(n)), depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_starts_with_speed_squared() {
        let d = chord_coefficients(4);
        assert!(d[0].is_zero() && d[1].is_zero());
        assert_eq!(d[2], TrigPoly::l().pow(2).scale(&Coef::frac(1, 4)));
        assert!(d[3].is_zero());
        // L^4 kappa^2 / 192 from |r''|^2 / 4 - 2 r' . r''' / 6
        let want = TrigPoly::l()
            .pow(4)
            .mul(&TrigPoly::kappa(0).pow(2))
            .scale(&Coef::frac(-1, 192));
        assert_eq!(d[4], want);
    }

    #[test]
    fn leading_single_layer_terms() {
        let s = sigma_s(4);
        assert_eq!(s.coeff(-1), TrigPoly::frac(1, 2));
        assert!(s.coeff(-2).is_zero());
        let k2l2 = TrigPoly::k().pow(2).mul(&TrigPoly::l().pow(2));
        assert_eq!(s.coeff(-3), k2l2.mul(&TrigPoly::s().pow(2)).scale(&Coef::frac(1, 16)));
        let want = k2l2.mul(&TrigPoly::s()).mul(&TrigPoly::c()).scale(&(&Coef::frac(3, 16) * &Coef::i()));
        assert_eq!(s.coeff(-4), want);
        assert_eq!(s.remainder, Some(-5));
    }
}
