use arcbie_core::assembly::*;
use arcbie_core::cheb::ChebT;
use arcbie_core::curve::make_segment;
use arcbie_core::gmres::gmres;
use arcbie_core::probe::fit_slope;
use arcbie_core::sqrtm::{build_p1, build_p2};
use arcbie_core::C64;

fn solve_dirichlet(n: usize, k: f64, precondition: bool) -> (usize, Vec<f64>, Vec<C64>) {
    let seg = make_segment();
    let ops = assemble_all(&seg, k, n, 4 * n).unwrap();
    let b = rhs_dirichlet(&seg, k, [0.6, 0.8], n);
    let p1 = build_p1(&seg, k, n).unwrap();
    let a = |v: &[C64]| ops.s.apply(v);
    let p = |v: &[C64]| p1.apply(v);
    let r = if precondition {
        gmres(&a, Some(&p), &b.coeffs, 1e-8, n)
    } else {
        gmres(&a, None, &b.coeffs, 1e-8, n)
    };
    assert!(r.converged);
    (r.iterations, r.residual_history, r.solution)
}

#[test]
fn preconditioned_dirichlet_is_mesh_independent() {
    let (a, hist, _) = solve_dirichlet(256, 5.0, true);
    let (b, _, _) = solve_dirichlet(512, 5.0, true);
    assert!(a.abs_diff(b) <= 2, "{a} vs {b}");
    assert!(hist.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
}

#[test]
fn neumann_parametrix_cuts_iterations() {
    let seg = make_segment();
    let k = 8.0;
    let n = 256;
    let ops = assemble_all(&seg, k, n, 4 * n).unwrap();
    let b = rhs_neumann(&seg, k, [0.6, 0.8], n);
    let p2 = build_p2(&seg, k, n).unwrap();
    let a = |v: &[C64]| ops.n.apply(v);
    let p = |v: &[C64]| p2.apply(v);
    let plain = gmres(&a, None, &b.coeffs, 1e-8, n);
    let pre = gmres(&a, Some(&p), &b.coeffs, 1e-8, n);
    assert!(plain.converged && pre.converged);
    assert!(2 * pre.iterations <= plain.iterations, "{} vs {}", pre.iterations, plain.iterations);
}

#[test]
fn scattered_field_cancels_incident_wave_near_screen() {
    let k = 3.0;
    let (_, _, sol) = solve_dirichlet(128, k, true);
    let density = ChebT::new(sol);
    let seg = make_segment();
    for x in [-0.5, 0.0, 0.4] {
        for h in [0.01, -0.01] {
            let z = [x, h];
            let us = field_eval(&seg, k, &density, &[z]).unwrap()[0];
            let ui = C64::new(0.0, k * (0.6 * z[0] + 0.8 * z[1])).exp();
            assert!((us + ui).norm() < 0.1, "at {z:?}: {}", (us + ui).norm());
        }
    }
}

#[test]
fn constant_data_has_zero_slope() {
    let f = fit_slope(&[8.0, 16.0, 32.0, 64.0], &[2.0; 4]).unwrap();
    assert!(f.slope.abs() < 1e-14);
    assert!(fit_slope(&[1.0, 2.0], &[1.0, -1.0]).is_err());
}
