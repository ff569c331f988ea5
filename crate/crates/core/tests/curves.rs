use arcbie_core::curve::*;
use arcbie_core::probe::fit_slope;
use proptest::prelude::*;

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn curves() -> Vec<Curve> {
    vec![
        make_segment(),
        make_arc(1.0, std::f64::consts::FRAC_PI_2).unwrap(),
        make_arc(0.7, 5.0).unwrap(),
        make_perturbed(1.0, 2.0, 0.1, 2.0).unwrap(),
    ]
}

#[test]
fn constant_speed() {
    for c in curves() {
        let h = 1e-5;
        for x in [-0.999f64, -0.5, 0.0, 0.31, 0.999] {
            let (a, b) = ((x - h).max(-1.0), (x + h).min(1.0));
            let speed = dist(c.point(a), c.point(b)) / (b - a);
            assert!((speed - c.ell()).abs() < 1e-7 * c.ell(), "{}: {speed}", c.id());
            let d = c.dr(x);
            assert!((d[0].hypot(d[1]) - c.ell()).abs() < 1e-10);
        }
    }
}

#[test]
fn chord_taylor_expansion_converges_at_rate() {
    // remainder after the h^6 term shrinks at least like h^7
    for c in curves().into_iter().skip(1) {
        let x = 0.2;
        let coef = c.geo_taylor(x, 6);
        let hs = match c {
            Curve::Perturbed(_) => [0.1, 0.05, 0.025, 0.0125],
            _ => [0.4, 0.2, 0.1, 0.05],
        };
        let errs: Vec<f64> = hs
            .iter()
            .map(|&h| {
                let exact = dist(c.point(x + h), c.point(x)).powi(2);
                let approx: f64 = coef.iter().enumerate().map(|(i, a)| a * h.powi(i as i32)).sum();
                (exact - approx).abs()
            })
            .collect();
        let fit = fit_slope(&hs, &errs).unwrap();
        assert!(fit.slope > 6.5, "{}: slope {}", c.id(), fit.slope);
    }
}

#[test]
fn normals_are_unit_and_orthogonal() {
    for c in curves() {
        for x in [-0.8, 0.0, 0.6] {
            let t = c.tangent(x);
            let n = c.normal(x);
            assert!((n[0].hypot(n[1]) - 1.0).abs() < 1e-12);
            assert!((t[0] * n[0] + t[1] * n[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn curvature_of_arcs() {
    let c = make_arc(2.0, 1.0).unwrap();
    assert!((c.kappa(0.3) - 0.5).abs() < 1e-15);
    let p = make_perturbed(1.0, 2.0, 0.0, 3.0).unwrap();
    assert!((p.kappa(0.4) - 1.0).abs() < 1e-8);
    assert!((p.length() - 2.0).abs() < 1e-12);
}

#[test]
fn bad_parameters() {
    assert!(make_arc(-1.0, 1.0).is_err());
    assert!(make_arc(1.0, 7.0).is_err());
    assert!(make_perturbed(1.0, 2.0, 1.5, 1.0).is_err());
}

#[test]
fn spec_roundtrip() {
    let spec: CurveSpec = serde_json::from_str(r#"{"type": "arc", "opening": 1.5}"#).unwrap();
    assert_eq!(spec, CurveSpec::Arc { radius: 1.0, opening: 1.5 });
    assert!(spec.build().is_ok());
}

proptest! {
    #[test]
    fn divided_difference_reproduces_chord(x in -1.0f64..1.0, y in -1.0f64..1.0) {
        prop_assume!((x - y).abs() > 1e-9);
        for c in curves() {
            let q = c.divided_diff(x, y);
            let (a, b) = (c.point(x), c.point(y));
            let e = [(a[0] - b[0]) - (x - y) * q[0], (a[1] - b[1]) - (x - y) * q[1]];
            prop_assert!(e[0].hypot(e[1]) < 1e-12);
            let ratio = c.chord_ratio(x, y);
            prop_assert!((ratio * (x - y).abs() - dist(a, b)).abs() < 1e-12);
        }
    }
}
