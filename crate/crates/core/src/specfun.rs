//! The sine integral Si(x), the function g(x) = 2∫_x^∞ (cos(t/2) − cos t)/t² dt
//! in three independently computed forms, and bracketed root-finding for the
//! zeros τ_k of g on the intervals ((2k−3)π, (2k−1)π).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::quad::{self, QuadratureConfig};
use crate::{Error, Result};

/// Quadrature/asymptotic switchover for Si; both branches agree to ~1e-11 on
/// [12, 20] (see tests).
const SI_SWITCH: f64 = 16.0;

/// Root residual targeted by [`find_tau`].
pub const TAU_RESIDUAL: f64 = 1e-10;

#[inline]
fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 6.0 * (1.0 - t2 / 20.0)
    } else {
        t.sin() / t
    }
}

/// The integrand (cos(t/2) − cos t)/t² of g, with the removable singularity at
/// t = 0 filled by the series 3/8 − (5/128)t² + (7/5120)t⁴ for |t| < 1e-3.
pub fn kernel_ratio(t: f64) -> f64 {
    if t.abs() < 1e-3 {
        let t2 = t * t;
        0.375 - t2 * (5.0 / 128.0 - t2 * (7.0 / 5120.0))
    } else {
        ((t / 2.0).cos() - t.cos()) / (t * t)
    }
}

pub(crate) fn si_quadrature(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(quad::integrate_checked(sinc, 0.0, x, cfg)?.value)
}

pub(crate) fn si_asymptotic(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    // Si(x) = π/2 − cos(x)/x + ∫_x^∞ cos t/t² dt
    let tail = quad::cos_power_tail(1.0, 2, x, cfg)?;
    Ok(FRAC_PI_2 - x.cos() / x + tail.value)
}

/// Sine integral Si(x) = ∫_0^x sin t/t dt for x ≥ 0, absolute error ≤ 1e-10.
pub fn si(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "si requires finite x >= 0, got {x}"
        )));
    }
    let cfg = QuadratureConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        ..Default::default()
    };
    if x <= SI_SWITCH {
        si_quadrature(x, &cfg)
    } else {
        si_asymptotic(x, &cfg)
    }
}

fn require_positive(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "{what} requires x > 0, got {x}"
        )));
    }
    Ok(())
}

/// g by direct quadrature of its definition: 2∫_x^∞ (cos(t/2) − cos t)/t² dt,
/// the infinite tail closed per `q.tail_policy`.
pub fn g_direct(x: f64, q: &QuadratureConfig) -> Result<f64> {
    require_positive(x, "g_direct")?;
    q.validate()?;
    let split = x.max(96.0);
    let finite = if split > x {
        quad::integrate_checked(kernel_ratio, x, split, q)?.value
    } else {
        0.0
    };
    let tail_half = quad::cos_power_tail(0.5, 2, split, q)?;
    let tail_one = quad::cos_power_tail(1.0, 2, split, q)?;
    Ok(2.0 * (finite + tail_half.value - tail_one.value))
}

/// g through the sine integral:
/// (4cos(x/2) + 2x·Si(x/2) − 4cos(x) − 4x·Si(x) + πx) / (2x).
///
/// This is the reference form used for root-finding: no infinite quadrature.
pub fn g_closed(x: f64) -> Result<f64> {
    require_positive(x, "g_closed")?;
    let si_half = si(x / 2.0)?;
    let si_full = si(x)?;
    Ok(
        (4.0 * (x / 2.0).cos() + 2.0 * x * si_half - 4.0 * x.cos() - 4.0 * x * si_full + PI * x)
            / (2.0 * x),
    )
}

/// g via the two-integral form 2∫_{x/2}^x cos t/t² dt − ∫_{x/2}^∞ cos t/t² dt.
pub fn g_alt(x: f64, q: &QuadratureConfig) -> Result<f64> {
    require_positive(x, "g_alt")?;
    q.validate()?;
    let middle = quad::integrate_checked(|t| t.cos() / (t * t), x / 2.0, x, q)?;
    let tail = quad::cos_power_tail(1.0, 2, x / 2.0, q)?;
    Ok(2.0 * middle.value - tail.value)
}

/// A bracketed zero of g.
#[derive(Clone, Copy, Debug)]
pub struct ZeroBracket {
    /// Index: the zero lies in ((2k−3)π, (2k−1)π), with the left endpoint 0 for k = 1.
    pub k: usize,
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    pub residual: f64,
    /// Number of sign changes seen in the scan of the interval. The sign
    /// alternation of g guarantees at least one; a value above 1 means the
    /// interval holds several zeros and the first one was taken.
    pub sign_changes: usize,
}

/// Locates the zero τ_k of g on ((2k−3)π, (2k−1)π) by a uniform sign scan
/// (64 cells, refined up to 4096 on failure) followed by bisection of the
/// first sign change down to |g(root)| ≤ 1e-10.
pub fn find_tau(k: usize) -> Result<ZeroBracket> {
    if k < 1 {
        return Err(Error::InvalidArgument("find_tau requires k >= 1".into()));
    }
    let x_left = if k == 1 {
        0.0
    } else {
        (2.0 * k as f64 - 3.0) * PI
    };
    let x_right = (2.0 * k as f64 - 1.0) * PI;
    // endpoints nudged inward: x = 0 is outside the domain of g and the
    // bracket must sit strictly inside the open interval
    let a = x_left + 1e-9;
    let b = x_right - 1e-9;

    let mut cells = 64usize;
    loop {
        let mut first: Option<(f64, f64, f64, f64)> = None;
        let mut sign_changes = 0usize;
        let mut prev_x = a;
        let mut prev_g = g_closed(a)?;
        for i in 1..=cells {
            let x = a + (b - a) * i as f64 / cells as f64;
            let gx = g_closed(x)?;
            if prev_g * gx < 0.0 {
                sign_changes += 1;
                if first.is_none() {
                    first = Some((prev_x, x, prev_g, gx));
                }
            }
            prev_x = x;
            prev_g = gx;
        }
        if let Some((mut lo, mut hi, mut g_lo, _)) = first {
            let mut root = 0.5 * (lo + hi);
            let mut residual = f64::INFINITY;
            for _ in 0..200 {
                root = 0.5 * (lo + hi);
                let g_mid = g_closed(root)?;
                residual = g_mid.abs();
                if residual <= TAU_RESIDUAL {
                    break;
                }
                if g_lo * g_mid < 0.0 {
                    hi = root;
                } else {
                    lo = root;
                    g_lo = g_mid;
                }
            }
            if residual > TAU_RESIDUAL {
                return Err(Error::RootNotFound { k, cells });
            }
            return Ok(ZeroBracket {
                k,
                lo,
                hi,
                root,
                residual,
                sign_changes,
            });
        }
        cells *= 2;
        if cells > 4096 {
            // would contradict the sign alternation of g
            return Err(Error::RootNotFound { k, cells: 4096 });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::TailPolicy;
    use std::f64::consts::TAU;

    /// Composite-Simpson oracle for ∫_0^x sin t/t dt, independent of the
    /// adaptive machinery.
    fn si_simpson_oracle(x: f64, panels: usize) -> f64 {
        let h = x / panels as f64;
        let mut acc = sinc(0.0) + sinc(x);
        for j in 1..panels {
            let w = if j % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * sinc(h * j as f64);
        }
        acc * h / 3.0
    }

    #[test]
    fn si_basic_values() {
        assert_eq!(si(0.0).unwrap(), 0.0);
        assert!((si(PI).unwrap() - 1.851_937_051_982_466_2).abs() < 1e-10);
        assert!((si(PI).unwrap() - si_simpson_oracle(PI, 4096)).abs() < 1e-10);
        assert!((si(1.0).unwrap() - 0.946_083_070_367_183).abs() < 1e-10);
        assert!((si(1e6).unwrap() - FRAC_PI_2).abs() < 1e-5);
        assert!(si(-1.0).is_err());
        assert!(si(f64::NAN).is_err());
        assert!(si(f64::INFINITY).is_err());
    }

    #[test]
    fn si_branches_overlap() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            ..Default::default()
        };
        for i in 0..=32 {
            let x = 12.0 + 8.0 * i as f64 / 32.0;
            let a = si_quadrature(x, &cfg).unwrap();
            let b = si_asymptotic(x, &cfg).unwrap();
            assert!((a - b).abs() < 1e-11, "x = {x}: {a} vs {b}");
        }
    }

    #[test]
    fn si_increasing_on_first_hump_and_bounded_by_si_pi() {
        let si_pi = si(PI).unwrap();
        let mut prev = 0.0;
        for i in 1..=64 {
            let x = PI * i as f64 / 64.0;
            let v = si(x).unwrap();
            assert!(v > prev, "not increasing at x = {x}");
            prev = v;
        }
        for i in 1..=200 {
            let x = 100.0 * i as f64 / 200.0;
            assert!(si(x).unwrap() <= si_pi + 1e-12, "x = {x}");
        }
    }

    #[test]
    fn g_closed_frozen_values() {
        // anchors computed with an independent arbitrary-precision evaluation
        let cases = [
            (0.1, 1.495_822_362_993_519),
            (1.0, 0.846_298_116_148_063_3),
            (3.0, -0.094_672_065_853_154_63),
            (7.0, 0.011_768_799_354_963_35),
            (20.0, 0.007_945_159_837_906_544),
            (100.0, 1.540_862_680_851_405_4e-5),
        ];
        for (x, expect) in cases {
            let v = g_closed(x).unwrap();
            assert!((v - expect).abs() < 1e-9, "g({x}) = {v}, expected {expect}");
        }
    }

    #[test]
    fn g_direct_and_closed_agree() {
        let q = QuadratureConfig::default();
        for x in [1.0, 3.0, 7.0, 20.0] {
            let d = g_direct(x, &q).unwrap();
            let c = g_closed(x).unwrap();
            assert!((d - c).abs() < 1e-8, "x = {x}: {d} vs {c}");
        }
    }

    #[test]
    fn g_alt_agrees_and_signs() {
        let q = QuadratureConfig::default();
        for x in [2.0, 6.0, 15.0] {
            let a = g_alt(x, &q).unwrap();
            let c = g_closed(x).unwrap();
            assert!((a - c).abs() < 1e-8, "x = {x}: {a} vs {c}");
        }
        assert!(g_alt(PI, &q).unwrap() < 0.0);
        assert!(g_closed(PI).unwrap() < 0.0);
        assert!(g_closed(3.0 * PI).unwrap() > 0.0);
    }

    #[test]
    fn g_domain_errors() {
        let q = QuadratureConfig::default();
        assert!(g_direct(0.0, &q).is_err());
        assert!(g_direct(-1.0, &q).is_err());
        assert!(g_closed(0.0).is_err());
        assert!(g_alt(-2.0, &q).is_err());
    }

    #[test]
    fn g_sign_alternation() {
        let q = QuadratureConfig::default();
        for k in 1..=8usize {
            let xk = (2.0 * k as f64 - 1.0) * PI;
            let expected = if k % 2 == 1 { -1.0 } else { 1.0 };
            assert_eq!(
                g_direct(xk, &q).unwrap().signum(),
                expected,
                "direct, k = {k}"
            );
        }
        for k in 1..=10usize {
            let xk = (2.0 * k as f64 - 1.0) * PI;
            let expected = if k % 2 == 1 { -1.0 } else { 1.0 };
            assert_eq!(g_closed(xk).unwrap().signum(), expected, "closed, k = {k}");
        }
    }

    #[test]
    fn tail_policies_agree_on_g_direct() {
        let closed = QuadratureConfig::default();
        let transformed = QuadratureConfig::default().with_tail_policy(TailPolicy::DomainTransform);
        for x in [0.5, 2.0, 10.0, 40.0] {
            let a = g_direct(x, &closed).unwrap();
            let b = g_direct(x, &transformed).unwrap();
            assert!((a - b).abs() < 1e-8, "x = {x}: {a} vs {b}");
        }
    }

    #[test]
    fn tail_magnitude_bound_at_interval_endpoints() {
        // |∫_{x_k/2}^∞ cos t/t² dt| < |∫_{x_k/2}^{x_k/2+π} cos t/t² dt| at x_k = (2k−1)π
        let q = QuadratureConfig::default();
        for k in 1..=4usize {
            let xk = (2.0 * k as f64 - 1.0) * PI;
            let tail = quad::cos_power_tail(1.0, 2, xk / 2.0, &q).unwrap().value;
            let first_period =
                quad::integrate_checked(|t| t.cos() / (t * t), xk / 2.0, xk / 2.0 + PI, &q)
                    .unwrap()
                    .value;
            assert!(
                tail.abs() < first_period.abs(),
                "k = {k}: {tail} vs {first_period}"
            );
        }
    }

    #[test]
    fn g_three_forms_agree_on_log_grid() {
        let q = QuadratureConfig::default();
        let points = 200usize;
        let (lo, hi) = (0.1_f64, 100.0_f64);
        let mut worst = 0.0_f64;
        for i in 0..points {
            let x = lo * (hi / lo).powf(i as f64 / (points - 1) as f64);
            let c = g_closed(x).unwrap();
            let d = g_direct(x, &q).unwrap();
            let a = g_alt(x, &q).unwrap();
            worst = worst.max((c - d).abs()).max((c - a).abs());
        }
        assert!(worst <= 1e-7, "worst pairwise discrepancy {worst:.3e}");
    }

    #[test]
    fn tau_roots_land_in_printed_intervals() {
        let intervals = [
            (2.657, 2.66),
            (6.83, 6.84),
            (14.16, 14.17),
            (19.09, 19.10),
            (26.41, 26.42),
        ];
        for (k, (lo, hi)) in intervals.iter().enumerate() {
            let z = find_tau(k + 1).unwrap();
            assert!(z.root > *lo && z.root < *hi, "tau_{}: {}", k + 1, z.root);
            assert!(z.residual <= TAU_RESIDUAL);
            assert_eq!(z.sign_changes, 1, "tau_{} interval", k + 1);
            // bracket is strictly inside the open interval and straddles the root
            let x_left = if k == 0 {
                0.0
            } else {
                (2.0 * (k + 1) as f64 - 3.0) * PI
            };
            let x_right = (2.0 * (k + 1) as f64 - 1.0) * PI;
            assert!(x_left < z.lo && z.lo < z.root && z.root < z.hi && z.hi < x_right);
            assert!(g_closed(z.lo).unwrap() * g_closed(z.hi).unwrap() < 0.0);
        }
    }

    #[test]
    fn tau_root_zeroes_g_direct() {
        let q = QuadratureConfig::default();
        let z = find_tau(1).unwrap();
        assert!(g_direct(z.root, &q).unwrap().abs() < 1e-9);
    }

    #[test]
    fn tau_spacing_below_4pi() {
        let taus: Vec<f64> = (1..=8).map(|k| find_tau(k).unwrap().root).collect();
        for k in 0..7 {
            assert!(taus[k + 1] - taus[k] < 2.0 * TAU, "k = {}", k + 1);
        }
    }

    #[test]
    fn find_tau_rejects_k_zero() {
        assert!(find_tau(0).is_err());
    }
}
