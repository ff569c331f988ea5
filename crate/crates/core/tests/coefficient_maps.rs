use arcbie_core::cheb::*;
use arcbie_core::C64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..max_len)
        .prop_map(|v| v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    let n = a.len().max(b.len());
    let z = C64::new(0.0, 0.0);
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(z) - b.get(i).copied().unwrap_or(z)).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn i_then_j_is_identity(c in coeffs(66)) {
        let u = ChebT::new(c);
        let back = embed_j(&embed_i(&u));
        prop_assert!(max_diff(&back.coeffs, &u.coeffs) <= 1e-12);
    }

    #[test]
    fn j_then_i_is_identity(c in coeffs(66)) {
        let v = ChebU::new(c);
        let back = embed_i(&embed_j(&v));
        prop_assert!(max_diff(&back.coeffs, &v.coeffs) <= 1e-12);
    }

    #[test]
    fn diff_and_wdw_are_adjoint(a in coeffs(66), b in coeffs(65)) {
        // int u' v omega = -int u (omega v)' = -int u (omega (omega v)') / omega
        let u = ChebT::new(a);
        let v = ChebU::new(b);
        let lhs = pair_u(&diff_t_to_u(&u), &v);
        let rhs = -pair_t(&u, &wdw_u_to_t(&v));
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn c_and_s_are_isometries(a in coeffs(66), b in coeffs(65)) {
        let u = ChebT::new(a);
        let v = ChebU::new(b);
        prop_assert!((map_c(&u).l2_norm() - u.norm(0.0)).abs() <= 1e-12);
        prop_assert!((map_s(&v).l2_norm() - v.norm(0.0)).abs() <= 1e-12);
        prop_assert_eq!(map_c_inv(&map_c(&u)), u);
        prop_assert_eq!(map_s_inv(&map_s(&v)), v);
    }

    #[test]
    fn transform_roundtrip(c in coeffs(65)) {
        let u = ChebT::new(c);
        let vals = inverse_t(&u, 64).unwrap();
        let back = transform_t(&vals);
        prop_assert!(max_diff(&back.coeffs, &u.coeffs) <= 1e-12);
    }
}

/// `T_n(cos t) = cos(n t)`, `U_n(cos t) sin t = sin((n+1) t)`.
fn t_direct(n: usize, x: f64) -> f64 {
    (n as f64 * x.acos()).cos()
}

fn u_direct(n: usize, x: f64) -> f64 {
    let t = x.acos();
    ((n + 1) as f64 * t).sin() / t.sin()
}

#[test]
fn maps_agree_with_pointwise_evaluation() {
    let xs: Vec<f64> = (1..40).map(|j| (PI * (j as f64 + 0.3) / 40.0).cos()).collect();
    for n in [0usize, 1, 2, 7, 30, 64] {
        let t = ChebT::unit(n, 65);
        let u = ChebU::unit(n, 65);
        for &x in &xs {
            let w2 = 1.0 - x * x;
            assert!((t.eval(x).re - t_direct(n, x)).abs() < 1e-12);
            assert!((u.eval(x).re - u_direct(n, x)).abs() < 1e-10);
            assert!((embed_i(&t).eval(x).re - t_direct(n, x)).abs() < 1e-12);
            assert!((embed_j(&u).eval(x).re - u_direct(n, x)).abs() < 1e-10);
            assert!((mul_x_t(&t).eval(x).re - x * t_direct(n, x)).abs() < 1e-12);
            assert!((mul_x_u(&u).eval(x).re - x * u_direct(n, x)).abs() < 1e-10);
            assert!((mul_omega2_t(&t).eval(x).re - w2 * t_direct(n, x)).abs() < 1e-12);
            assert!((mul_omega2_u_to_t(&u).eval(x).re - w2 * u_direct(n, x)).abs() < 1e-10);
            assert!((mul_omega2_u_to_u(&u).eval(x).re - w2 * u_direct(n, x)).abs() < 1e-10);
            // T_n' = n U_{n-1};  omega (omega U_n)' = -(n+1) T_{n+1}
            let d = diff_t_to_u(&t).eval(x).re;
            let want = if n == 0 { 0.0 } else { n as f64 * u_direct(n - 1, x) };
            assert!((d - want).abs() < 1e-9 * (1.0 + want.abs()));
            let wdw = wdw_u_to_t(&u).eval(x).re;
            assert!((wdw + (n + 1) as f64 * t_direct(n + 1, x)).abs() < 1e-10 * (n + 1) as f64);
        }
    }
}

#[test]
fn fourier_images_evaluate_pointwise() {
    let u = ChebT::from_real(&[0.3, -1.0, 0.25, 2.0]);
    let v = ChebU::new(vec![C64::new(1.0, 0.5), C64::new(-0.5, 0.0), C64::new(0.0, 2.0)]);
    for j in 0..17 {
        let t = 0.37 * j as f64;
        assert!((map_c(&u).eval(t) - u.eval(t.cos())).norm() < 1e-13);
        assert!((map_s(&v).eval(t) - v.eval(t.cos()) * t.sin()).norm() < 1e-12);
    }
}

#[test]
fn norm_conventions() {
    let n = 5usize;
    let s = 1.5;
    let t = ChebT::unit(n, 8);
    let want = (0.5 * (1.0 + (n * n) as f64).powf(s)).sqrt();
    assert!((t.norm(s) - want).abs() < 1e-12);
    assert!((ChebT::unit(0, 3).norm(s) - 1.0).abs() < 1e-15);
    assert!((ChebU::unit(0, 3).norm(0.0) - 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn under_resolved_inverse_is_refused() {
    assert!(inverse_t(&ChebT::unit(10, 11), 8).is_err());
}
