//! Adaptive Gauss–Kronrod quadrature and closures for oscillatory tail integrals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// How integrals over `[T, ∞)` of oscillatory `trig(ωt)/t^m` integrands are closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    /// Repeated integration by parts until the remainder bound drops below tolerance.
    ClosedFormTail,
    /// Two integration-by-parts steps (remainder O(1/T³)), then the substitution
    /// u = 1/t and adaptive quadrature on the transformed remainder.
    DomainTransform,
}

/// Tolerances and limits shared by every integral in the crate.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub tail_policy: TailPolicy,
    /// Floor for uniform grids (Fourier coefficients).
    pub min_grid: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            tail_policy: TailPolicy::ClosedFormTail,
            min_grid: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.abs_tol.is_finite() || self.abs_tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::InvalidArgument(format!(
                "max_subdivisions must be at least 10, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }

    /// Same tolerances with a different tail policy.
    pub fn with_tail_policy(mut self, policy: TailPolicy) -> Self {
        self.tail_policy = policy;
        self
    }
}

/// Outcome of one integral.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

// 15-point Gauss–Kronrod rule (QUADPACK abscissae and weights).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 15-point panel; returns (value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = f_center * WG[3];
    let mut res_kron = f_center * WGK[7];
    let mut res_abs = res_kron.abs();
    let mut fv1 = [0.0_f64; 7];
    let mut fv2 = [0.0_f64; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let v1 = f(center - dx);
        let v2 = f(center + dx);
        fv1[j] = v1;
        fv2[j] = v2;
        let sum = v1 + v2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * sum;
        }
        res_kron += WGK[j] * sum;
        res_abs += WGK[j] * (v1.abs() + v2.abs());
    }

    let mean = res_kron * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_kron * half;
    let err = ((res_kron - res_gauss) * half).abs();
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    (value, rescale_error(err, res_abs, res_asc))
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// Adaptive integration of `f` over `[a, b]`, splitting the worst panel first.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let (value, error) = gk15(&f, a, b);
    let mut evaluations = 15;
    let mut total_value = value;
    let mut total_error = error;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });

    while total_error > cfg.abs_tol.max(cfg.rel_tol * total_value.abs())
        && heap.len() < cfg.max_subdivisions
    {
        if !total_value.is_finite() {
            return QuadResult {
                value: total_value,
                abs_error: f64::INFINITY,
                evaluations,
                converged: false,
            };
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel no longer splittable in f64; keep its contribution
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        evaluations += 30;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }

    // re-sum from panels to shed accumulated cancellation in the running totals
    let mut value = 0.0;
    let mut error = 0.0;
    for p in heap.iter() {
        value += p.value;
        error += p.error;
    }
    let converged =
        value.is_finite() && error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) * (1.0 + 1e-12);
    QuadResult {
        value,
        abs_error: error,
        evaluations,
        converged,
    }
}

/// Like [`integrate`] but non-convergence is an error.
pub fn integrate_checked<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let r = integrate(f, a, b, cfg);
    if r.converged {
        Ok(r)
    } else {
        Err(Error::QuadratureDidNotConverge {
            achieved: r.abs_error,
            requested: cfg.abs_tol.max(cfg.rel_tol * r.value.abs()),
        })
    }
}

#[derive(Clone, Copy)]
enum Phase {
    Cos,
    Sin,
}

/// ∫_T^∞ cos(ωt)/t^m dt by repeated integration by parts, with the remainder
/// bound tracked explicitly. Returns None when ωT is too small for the series
/// to reach the tolerance.
fn cos_tail_series(omega: f64, m: i32, t0: f64, tol: f64) -> Option<(f64, f64)> {
    let mut acc = 0.0;
    let mut coef = 1.0_f64;
    let mut phase = Phase::Cos;
    let (sin_wt, cos_wt) = (omega * t0).sin_cos();
    let mut prev_bound = f64::INFINITY;
    for power in m..m + 80 {
        let bound = coef.abs() / ((power - 1) as f64 * t0.powi(power - 1));
        if bound <= tol {
            return Some((acc, bound));
        }
        if bound >= prev_bound {
            return None; // asymptotic series bottomed out above tolerance
        }
        prev_bound = bound;
        match phase {
            Phase::Cos => {
                acc += coef * (-sin_wt) / (omega * t0.powi(power));
                coef *= power as f64 / omega;
                phase = Phase::Sin;
            }
            Phase::Sin => {
                acc += coef * cos_wt / (omega * t0.powi(power));
                coef *= -(power as f64) / omega;
                phase = Phase::Cos;
            }
        }
    }
    None
}

/// ∫_x^∞ cos(ωt)/t^m dt for ω > 0, m ≥ 2: a finite adaptive part up to the point
/// where the tail becomes tractable, closed per `cfg.tail_policy`.
pub fn cos_power_tail(omega: f64, m: i32, x: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    if !omega.is_finite() || omega <= 0.0 || m < 2 || !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "cos_power_tail requires omega > 0, m >= 2, x > 0 (got omega = {omega}, m = {m}, x = {x})"
        )));
    }
    cfg.validate()?;
    let tol = cfg.abs_tol;
    match cfg.tail_policy {
        TailPolicy::ClosedFormTail => {
            let mut t0 = x.max(48.0 / omega);
            let mut series = cos_tail_series(omega, m, t0, tol / 2.0);
            let mut grow = 0;
            while series.is_none() && grow < 8 {
                t0 *= 2.0;
                series = cos_tail_series(omega, m, t0, tol / 2.0);
                grow += 1;
            }
            let (tail_value, tail_bound) = series.ok_or(Error::QuadratureDidNotConverge {
                achieved: f64::INFINITY,
                requested: tol,
            })?;
            let finite = if t0 > x {
                integrate_checked(|t| (omega * t).cos() / t.powi(m), x, t0, cfg)?
            } else {
                QuadResult {
                    value: 0.0,
                    abs_error: 0.0,
                    evaluations: 0,
                    converged: true,
                }
            };
            Ok(QuadResult {
                value: finite.value + tail_value,
                abs_error: finite.abs_error + tail_bound,
                evaluations: finite.evaluations,
                converged: true,
            })
        }
        TailPolicy::DomainTransform => {
            // two explicit integration-by-parts steps, then u = 1/t on the remainder
            let t0 = x.max(16.0 / omega);
            let finite = if t0 > x {
                integrate_checked(|t| (omega * t).cos() / t.powi(m), x, t0, cfg)?
            } else {
                QuadResult {
                    value: 0.0,
                    abs_error: 0.0,
                    evaluations: 0,
                    converged: true,
                }
            };
            let (sin_wt, cos_wt) = (omega * t0).sin_cos();
            let term1 = -sin_wt / (omega * t0.powi(m));
            let c1 = m as f64 / omega;
            let term2 = c1 * cos_wt / (omega * t0.powi(m + 1));
            let c2 = -c1 * (m + 1) as f64 / omega;
            // c2 * ∫_{t0}^∞ cos(ωt)/t^{m+2} dt = c2 * ∫_0^{1/t0} cos(ω/u) u^m du
            let u_hi = 1.0 / t0;
            let mp1 = (m + 1) as f64;
            let u_min = (tol / 2.0 * mp1 / c2.abs().max(1e-300))
                .powf(1.0 / mp1)
                .min(u_hi / 2.0);
            let cutoff_bound = c2.abs() * u_min.powf(mp1) / mp1;
            let transformed =
                integrate_checked(|u| (omega / u).cos() * u.powi(m), u_min, u_hi, cfg)?;
            Ok(QuadResult {
                value: finite.value + term1 + term2 + c2 * transformed.value,
                abs_error: finite.abs_error + c2.abs() * transformed.abs_error + cutoff_bound,
                evaluations: finite.evaluations + transformed.evaluations,
                converged: true,
            })
        }
    }
}

/// ∫_{t0}^∞ g(t)/t² dt for g periodic with the given period, folded onto a single
/// period against the lattice sum Σ_{j≥0} 1/(t + jP)² = ψ₁(t/P)/P².
pub fn periodic_over_t2_tail<F: Fn(f64) -> f64>(
    g: F,
    period: f64,
    t0: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if !period.is_finite() || period <= 0.0 || !t0.is_finite() || t0 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "periodic tail requires period > 0 and t0 > 0 (got period = {period}, t0 = {t0})"
        )));
    }
    let inv_p2 = 1.0 / (period * period);
    let r = integrate_checked(|s| g(s) * trigamma(s / period), t0, t0 + period, cfg)?;
    Ok(QuadResult {
        value: r.value * inv_p2,
        abs_error: r.abs_error * inv_p2,
        evaluations: r.evaluations,
        converged: true,
    })
}

/// Trigamma function ψ₁(x) for x > 0: recurrence up to x ≥ 10, then the
/// asymptotic series with Bernoulli numbers through B₁₂.
pub fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut shift = 0.0;
    let mut z = x;
    while z < 10.0 {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    const B: [f64; 6] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
    ];
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &bk in B.iter().rev() {
        series = (series + bk) * inv2;
    }
    shift + inv + 0.5 * inv2 + series * inv
}
