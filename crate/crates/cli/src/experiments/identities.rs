use arcbie_core::cheb::*;
use arcbie_core::C64;

use crate::config::Config;
use crate::report::{Cell, Report};

/// Deterministic test vector of length `len`.
fn sample(len: usize, seed: f64) -> Vec<C64> {
    (0..len)
        .map(|i| {
            let t = seed + i as f64;
            C64::new((1.3 * t).sin(), (0.7 * t + 0.2).cos()) / (1.0 + 0.05 * i as f64)
        })
        .collect()
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    let z = C64::new(0.0, 0.0);
    (0..a.len().max(b.len()))
        .map(|i| (a.get(i).copied().unwrap_or(z) - b.get(i).copied().unwrap_or(z)).norm())
        .fold(0.0, f64::max)
}

/// Round trips and dualities of the coefficient maps on degree 64, plus a
/// pointwise check of every map against direct evaluation.
pub fn coefficient_identities(cfg: &Config) -> Report {
    let tol = cfg.thresholds.identity;
    let cell = Cell::new("identities", "-", 0.0, 65);
    let u = ChebT::new(sample(65, 0.0));
    let v = ChebU::new(sample(65, 3.0));
    let mut rows = Vec::new();
    rows.push(cell.at_most("J(I(u)) - u", max_diff(&embed_j(&embed_i(&u)).coeffs, &u.coeffs), tol));
    rows.push(cell.at_most("I(J(v)) - v", max_diff(&embed_i(&embed_j(&v)).coeffs, &v.coeffs), tol));
    let lhs = pair_u(&diff_t_to_u(&u), &v);
    let rhs = -pair_t(&u, &wdw_u_to_t(&v));
    rows.push(cell.at_most("<u', v>_w + <u, wdw v>_1/w", (lhs - rhs).norm() / lhs.norm().max(1.0), tol));
    let iso_c = (map_c(&u).l2_norm() - u.norm(0.0)).abs();
    let iso_s = (map_s(&v).l2_norm() - v.norm(0.0)).abs();
    rows.push(cell.at_most("|Cu| - |u|_T0", iso_c, tol));
    rows.push(cell.at_most("|Sv| - |v|_U0", iso_s, tol));
    let round = transform_t(&inverse_t(&u, 64).expect("degree fits grid"));
    rows.push(cell.at_most("transform(inverse(u)) - u", max_diff(&round.coeffs, &u.coeffs), tol));

    // pointwise oracle: T_n(cos t) = cos(n t), U_n(cos t) sin t = sin((n+1) t)
    let mut worst: f64 = 0.0;
    for t in (1..32).map(|j| 0.098 * j as f64) {
        let x = t.cos();
        let w2 = 1.0 - x * x;
        let cu = u.eval(x);
        let cv = v.eval(x);
        let direct_u: C64 = u.coeffs.iter().enumerate().map(|(n, c)| c * (n as f64 * t).cos()).sum();
        let direct_v: C64 = v
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * ((n + 1) as f64 * t).sin() / t.sin())
            .sum();
        let scale = 1.0 + direct_u.norm() + direct_v.norm();
        let checks = [
            cu - direct_u,
            cv - direct_v,
            embed_i(&u).eval(x) - cu,
            embed_j(&v).eval(x) - cv,
            mul_x_t(&u).eval(x) - cu * x,
            mul_x_u(&v).eval(x) - cv * x,
            mul_omega2_t(&u).eval(x) - cu * w2,
            mul_omega2_u_to_t(&v).eval(x) - cv * w2,
            mul_omega2_u_to_u(&v).eval(x) - cv * w2,
        ];
        for c in checks {
            worst = worst.max(c.norm() / scale);
        }
    }
    rows.push(cell.at_most("pointwise map defect", worst, tol));
    Report { rows, ..Default::default() }
}
