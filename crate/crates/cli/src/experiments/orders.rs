use std::time::Instant;

use arcbie_core::assembly::{assemble_all, kappa_eff};
use arcbie_core::cheb::*;
use arcbie_core::curve::{Curve, CurveSpec};
use arcbie_core::operator::OperatorMat;
use arcbie_core::probe::{dyadic, fit_slope, Probe};
use arcbie_core::sqrtm::{build_p1, principal_sqrt, sqrt_d2, tangential_d1, tangential_d2, weighted_eig};
use arcbie_core::C64;
use arcbie_symbol::kernel::sigma_s;
use arcbie_symbol::poly::{Env, Var};
use arcbie_symbol::{extract_pair, SymbolPair, TrigPoly};
use rayon::prelude::*;

use super::elapsed_row;
use crate::config::{Config, Thresholds};
use crate::report::{Cell, Report, Row};
use crate::CliError;

/// Dyadic probe indices from the first power of two at or above
/// `max(8, 3 kappa_eff)` up to `n / 4`.
pub fn probe_range(curve: &Curve, k: f64, n: usize) -> Vec<usize> {
    let lo = (3.0 * kappa_eff(curve, k)).max(8.0).ceil() as usize;
    dyadic(lo.next_power_of_two(), n / 4)
}

fn unit(n: usize, len: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); len];
    v[n] = C64::new(1.0, 0.0);
    v
}

/// `|A phi_n|` over `ns` for an operator given by its action; `phi_n` is `T_n`
/// or `U_{n-1}`.
fn probe_action<F>(ns: &[usize], basis: Basis, size: usize, apply: F) -> Result<Probe, CliError>
where
    F: Fn(&[C64]) -> Vec<C64>,
{
    if ns.len() < 4 {
        return Err(arcbie_core::Error::Fit(ns.len()).into());
    }
    let norms: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let col = if matches!(basis, Basis::T) { n } else { n - 1 };
            norm_in(basis, &apply(&unit(col, size)), 0.0)
        })
        .collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let fit = fit_slope(&xs, &norms)?;
    Ok(Probe { ns: ns.to_vec(), norms, fit })
}

fn minus_scaled(a: Vec<C64>, b: &[C64], c: f64) -> Vec<C64> {
    a.into_iter().zip(b).map(|(x, y)| x - y * c).collect()
}

fn slope_rows(cell: &Cell, name: &str, p: &Probe, target: f64, th: &Thresholds, check_r2: bool) -> Vec<Row> {
    let mut rows = vec![cell.near(&format!("slope {name}"), p.fit.slope, target, th.slope_tol)];
    if check_r2 {
        rows.push(cell.at_least(&format!("r2 {name}"), p.fit.r2, th.r2_min));
    } else {
        rows.push(cell.info(&format!("r2 {name}"), p.fit.r2));
    }
    rows
}

/// `|(sqrt D1)^2 - D1| / |D1|` at size `n`.
pub fn sqrt_contract(curve: &Curve, k: f64, n: usize) -> Result<f64, CliError> {
    let d1 = tangential_d1(curve, k, n);
    let r = principal_sqrt(&weighted_eig(&d1)?);
    Ok((&r.mat * &r.mat - &d1.mat).norm() / d1.mat.norm())
}

/// Action of a `T`-class pair: `a1(x, n) T_n - omega^2 a2(x, n) U_{n-1}`.
fn pair_action(pair: &SymbolPair, n: usize, env: &Env, len: usize) -> Result<ChebT, CliError> {
    let nf = n as f64;
    let mut out = vec![C64::new(0.0, 0.0); len + 16];
    let mut accumulate = |base: &ChebT, poly: &TrigPoly, e: i32, sign: f64| -> Result<(), CliError> {
        for (mono, coef) in &poly.terms {
            let ds = mono.degree_of(Var::S);
            if ds % 2 == 1 {
                return Err(CliError::Config(format!("pair coefficient {poly} is odd in s")));
            }
            let rest = mono.with(Var::S, 0).with(Var::C, 0);
            let (re, im) = TrigPoly::term(coef.clone(), rest).eval(env);
            let scale = C64::new(re, im) * nf.powi(e) * sign;
            let mut v = base.clone();
            for _ in 0..mono.degree_of(Var::C) {
                v = mul_x_t(&v);
            }
            // s^2 = 1 - x^2
            for _ in 0..ds / 2 {
                v = mul_omega2_t(&v);
            }
            for (o, c) in out.iter_mut().zip(&v.coeffs) {
                *o += c * scale;
            }
        }
        Ok(())
    };
    let tn = ChebT::unit(n, n + 1);
    let w2u = mul_omega2_u_to_t(&ChebU::unit(n - 1, n));
    for (e, p) in &pair.a1.terms {
        accumulate(&tn, p, *e, 1.0)?;
    }
    for (e, p) in &pair.a2.terms {
        accumulate(&w2u, p, *e, -1.0)?;
    }
    out.truncate(len);
    Ok(ChebT::new(out))
}

/// Residual of the single layer against the action of its symbol truncated
/// after `xi^-4` (two terms beyond the leading one), for curves of constant
/// curvature.
pub fn two_term_action(curve: &Curve, s: &OperatorMat, k: f64, ns: &[usize]) -> Result<Probe, CliError> {
    if matches!(curve, Curve::Perturbed(_)) {
        return Err(CliError::Config("symbol action needs constant curvature".into()));
    }
    let pair = extract_pair(&sigma_s(4))?;
    let env = Env { theta: 0.0, k, l: curve.length(), kappa: curve.kappa_jet(0.0).to_vec(), gen: vec![] };
    let size = s.size();
    let mut norms = Vec::new();
    for &n in ns {
        let approx = pair_action(&pair, n, &env, size)?;
        let r: Vec<C64> = s.apply(&unit(n, size)).iter().zip(&approx.coeffs).map(|(a, b)| a - b).collect();
        norms.push(norm_t(&ChebT::new(r), 0.0));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let fit = fit_slope(&xs, &norms)?;
    Ok(Probe { ns: ns.to_vec(), norms, fit })
}

/// Order probes of the preconditioning identities for one curve and wavenumber.
pub fn order_cell(spec: &CurveSpec, k: f64, n: usize, m: usize, th: &Thresholds) -> Result<Report, CliError> {
    let start = Instant::now();
    let curve = spec.build()?;
    let cell = Cell::new("verify-orders", &curve.id(), k, n);
    log::info!("order probes on {} with k = {k}, N = {n}, M = {m}", curve.id());
    let ops = assemble_all(&curve, k, n, m)?;
    let d1 = tangential_d1(&curve, k, n);
    let d2 = tangential_d2(&curve, k, n);
    let d1_0 = tangential_d1(&curve, 0.0, n);
    let d2_0 = tangential_d2(&curve, 0.0, n);
    let p1 = build_p1(&curve, k, n)?;
    let rd2 = sqrt_d2(&curve, k, n)?;
    let ns = probe_range(&curve, k, n);
    let (s, nn) = (&ops.s, &ops.n);
    let mut rows = vec![cell.info("probe n_min", ns.first().copied().unwrap_or(0) as f64)];

    let p = probe_action(&ns, Basis::T, n, |e| minus_scaled(d1.apply(&s.apply(&s.apply(e))), e, 0.25))?;
    rows.extend(slope_rows(&cell, "D1 S^2 - I/4", &p, -4.0, th, true));
    let p = probe_action(&ns, Basis::T, n, |e| minus_scaled(p1.apply(&s.apply(e)), e, 0.5))?;
    rows.extend(slope_rows(&cell, "sqrt(D1) S - I/2", &p, -4.0, th, true));
    let p = probe_action(&ns, Basis::U, n, |e| minus_scaled(nn.apply(&nn.apply(e)), &d2.apply(e), 0.25))?;
    rows.extend(slope_rows(&cell, "N^2 - D2/4", &p, -2.0, th, true));
    let p = probe_action(&ns, Basis::U, n, |e| minus_scaled(nn.apply(e), &rd2.apply(e), 0.5))?;
    rows.extend(slope_rows(&cell, "N - sqrt(D2)/2", &p, -3.0, th, true));

    // without the k correction in the tangential operators
    let p = probe_action(&ns, Basis::T, n, |e| minus_scaled(d1_0.apply(&s.apply(&s.apply(e))), e, 0.25))?;
    rows.extend(slope_rows(&cell, "D1(k=0) S^2 - I/4", &p, -2.0, th, true));
    let p = probe_action(&ns, Basis::U, n, |e| minus_scaled(nn.apply(&nn.apply(e)), &d2_0.apply(e), 0.25))?;
    rows.extend(slope_rows(&cell, "N^2 - D2(k=0)/4", &p, 0.0, th, false));

    if matches!(curve, Curve::Segment) {
        // D1 and S commute exactly on the segment
        let s_norm = (0..n)
            .map(|j| norm_t(&ChebT::new(s.column(j)), 0.0) / norm_t(&ChebT::unit(j, n), 0.0))
            .fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for j in 0..=n / 4 {
            let e = unit(j, n);
            let d1e = d1.apply(&e);
            let scale = norm_t(&ChebT::new(d1e.clone()), 0.0);
            if scale == 0.0 {
                continue;
            }
            let c = minus_scaled(d1.apply(&s.apply(&e)), &s.apply(&d1e), 1.0);
            worst = worst.max(norm_t(&ChebT::new(c), 0.0) / (s_norm * scale));
        }
        rows.push(cell.at_most("[D1, S] relative", worst, th.commutator_rel));
        if k > 0.0 {
            let p = two_term_action(&curve, s, k, &ns)?;
            rows.extend(slope_rows(&cell, "S - two-term symbol", &p, -5.0, th, true));
        }
    } else {
        let p = probe_action(&ns, Basis::T, n, |e| minus_scaled(p1.apply(&s.apply(e)), &s.apply(&p1.apply(e)), 1.0))?;
        rows.push(cell.near("slope [sqrt(D1), S]", p.fit.slope, -5.0, th.commutator_slope_tol));
        rows.push(cell.at_least("r2 [sqrt(D1), S]", p.fit.r2, th.r2_min));
    }
    rows.push(cell.at_most("(sqrt D1)^2 - D1 relative", sqrt_contract(&curve, k, n)?, th.sqrt_rel));
    rows.push(elapsed_row(&cell, start));
    Ok(Report { rows, ..Default::default() })
}

/// Order probes over every configured curve and wavenumber.
pub fn verify_orders(cfg: &Config) -> Result<Report, CliError> {
    let cells: Vec<(CurveSpec, f64)> = cfg
        .curves
        .iter()
        .flat_map(|c| cfg.ks.iter().map(move |&k| (c.clone(), k)))
        .collect();
    let results: Vec<Result<Report, CliError>> = cells
        .par_iter()
        .map(|(c, k)| order_cell(c, *k, cfg.n, cfg.quad(cfg.n), &cfg.thresholds))
        .collect();
    let mut report = Report::default();
    for r in results {
        report.extend(r?);
    }
    Ok(report)
}
