//! Cross-checks of the adaptive machinery against fixed-rule oracles that
//! share no code with the implementation under test.

use std::f64::consts::PI;

use vp_core::quad::{self, QuadratureConfig};
use vp_core::specfun::kernel_ratio;
use vp_core::trigsum::{self, PeriodicFunction};

/// Composite Simpson with a fixed panel count.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels.is_multiple_of(2));
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for j in 1..panels {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * j as f64);
    }
    acc * h / 3.0
}

#[test]
fn proof_integral_against_simpson_oracle() {
    // the leading integral of the deviation estimate, strictly below 0.786
    let cfg = QuadratureConfig::default();
    let adaptive = quad::integrate_checked(kernel_ratio, 0.0, 2.66, &cfg).unwrap();
    let oracle = simpson(kernel_ratio, 0.0, 2.66, 1 << 14);
    assert!((adaptive.value - oracle).abs() < 1e-11);
    // frozen from an independent high-precision evaluation
    assert!((adaptive.value - 0.785_717_274_139_945).abs() < 1e-10);
    assert!(adaptive.value < 0.786);
}

#[test]
fn si_against_simpson_oracle_on_grid() {
    for i in 1..=16 {
        let x = i as f64;
        let oracle = simpson(
            |t| if t == 0.0 { 1.0 } else { t.sin() / t },
            0.0,
            x,
            1 << 13,
        );
        let v = vp_core::specfun::si(x).unwrap();
        assert!((v - oracle).abs() < 1e-10, "x = {x}: {v} vs {oracle}");
    }
}

#[test]
fn kernel_and_coefficient_routes_within_quad_errors() {
    // two evaluation routes for V_{n,p} agree within 10 · max(quad errors)
    let cfg = QuadratureConfig::default();
    let funcs = [
        PeriodicFunction::from_fn("abs_sin_half", |x: f64| (x / 2.0).sin().abs()),
        PeriodicFunction::from_fn("smooth_mix", |x: f64| {
            (x.sin() - 0.4 * (3.0 * x).cos()).exp().sin()
        }),
    ];
    for f in &funcs {
        let c = trigsum::fourier_coefficients(f, 12, &cfg).unwrap();
        for (n, p) in [(8usize, 4usize), (12, 3), (6, 6)] {
            for i in 0..5 {
                let x = 2.0 * PI * i as f64 / 5.0;
                let conv = quad::integrate_checked(
                    |t| f.eval(x + t) * trigsum::vp_kernel(n, p, t).unwrap(),
                    -PI,
                    PI,
                    &cfg,
                )
                .unwrap();
                let by_kernel = conv.value / PI;
                let by_coeffs = trigsum::vp_sum(&c, n, p, x).unwrap();
                let tol = 10.0 * c.quad_error.max(conv.abs_error).max(1e-12);
                assert!(
                    (by_kernel - by_coeffs).abs() <= tol,
                    "{} (n={n},p={p},x={x}): {by_kernel} vs {by_coeffs} (tol {tol:.2e})",
                    f.name
                );
            }
        }
    }
}

#[test]
fn g_direct_against_per_period_simpson() {
    // fixed-rule evaluation of 2∫_x^T ker + analytic-free long truncation,
    // accurate to ~1/T: checks the adaptive result to that accuracy
    let cfg = QuadratureConfig::default();
    for x in [0.5_f64, 2.0, 5.0] {
        let t_end = 20000.0;
        let oracle = 2.0 * simpson(kernel_ratio, x, t_end, 1 << 21);
        let v = vp_core::specfun::g_direct(x, &cfg).unwrap();
        assert!((v - oracle).abs() < 1e-3, "x = {x}: {v} vs {oracle}");
    }
}
