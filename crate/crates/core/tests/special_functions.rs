use arcbie_core::special::{f1, h0, j0, kernel_parts, y0};
use std::f64::consts::PI;

// J0, Y0 from 30-digit mpmath evaluations.
const REFERENCE: [(f64, f64, f64); 7] = [
    (0.3, 0.977_626_246_538_296_1, -0.807_273_577_804_519_5),
    (1.0, 0.765_197_686_557_966_6, 0.088_256_964_215_676_96),
    (2.5, -0.048_383_776_468_197_996, 0.498_070_359_615_231_9),
    (7.9, 0.194_361_844_841_278_24, 0.206_520_948_144_375_77),
    (12.0, 0.047_689_310_796_833_54, -0.225_237_312_634_361_43),
    (25.0, 0.096_266_783_275_958_12, -0.127_249_432_268_006_14),
    (45.0, 0.115_818_670_673_256_32, 0.027_060_469_763_313_288),
];

#[test]
fn bessel_reference_values() {
    for (z, wj, wy) in REFERENCE {
        assert!((j0(z) - wj).abs() < 1e-13, "J0({z}) = {}", j0(z));
        assert!((y0(z) - wy).abs() < 1e-13, "Y0({z}) = {}", y0(z));
        let h = h0(z);
        assert!((h.re - wj).abs() < 1e-13 && (h.im - wy).abs() < 1e-13);
    }
}

#[test]
fn wronskian() {
    // J0 Y0' - J0' Y0 = 2 / (pi z)
    for z in [0.5f64, 3.0, 4.0, 9.0, 19.9, 20.1, 33.0] {
        let h = 1e-4 * z.max(1.0);
        let d = |f: fn(f64) -> f64| (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h);
        let w = j0(z) * d(y0) - d(j0) * y0(z);
        assert!((w * PI * z / 2.0 - 1.0).abs() < 1e-8, "z = {z}: {w}");
    }
}

#[test]
fn smooth_kernel_part() {
    // F1(z^2) = i/4 H0(z) + ln(z) J0(z) / (2 pi)
    for (w, re, im) in [
        (0.25, 0.007_599_758_803_816_634, 0.234_617_451_810_203_23),
        (9.0, -0.139_682_476_629_374_25, -0.065_012_988_725_483_36),
        (81.0, -0.094_073_761_850_139_89, -0.022_583_402_795_719_034),
    ] {
        let v = f1(w);
        assert!((v.re - re).abs() < 1e-12 && (v.im - im).abs() < 1e-12, "F1({w}) = {v}");
        let (jz, fz) = kernel_parts(w.sqrt());
        assert!((jz - j0(w.sqrt())).abs() < 1e-14);
        assert!((fz - v).norm() < 1e-14);
    }
    let at0 = f1(0.0);
    let gamma = 0.577_215_664_901_532_9;
    assert!((at0.re - (std::f64::consts::LN_2 - gamma) / (2.0 * PI)).abs() < 1e-15);
    assert!((at0.im - 0.25).abs() < 1e-15);
}

#[test]
fn kernel_parts_continuous_at_switches() {
    for z in [4.0f64, 20.0] {
        let (a, b) = kernel_parts(z * (1.0 - 4e-16));
        let (c, d) = kernel_parts(z * (1.0 + 4e-16));
        assert!((a - c).abs() < 1e-12 && (b - d).norm() < 1e-12, "switch at {z}: {} {}", a - c, b - d);
    }
}
