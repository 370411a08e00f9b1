//! Fourier coefficients and the summation operators S_k, σ_{n-1}, V_{n,p},
//! plus the V_{n,p} kernel and its operator norm (Lebesgue constant) at p = n/2.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use crate::quad::{self, QuadratureConfig};
use crate::{Error, Result};

/// Coefficient grids are doubled until agreement but never beyond this size;
/// for non-smooth functions the residual disagreement is reported in
/// [`TrigCoefficients::quad_error`] instead of being hidden.
const MAX_COEFF_GRID: usize = 1 << 19;

/// Smoothness hint carried by a test function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothnessTag {
    Smooth,
    Lipschitz,
    Holder,
}

/// A real-valued 2π-periodic function, backed by a closed-form evaluator or a
/// dense uniform sample grid.
#[derive(Clone)]
pub struct PeriodicFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub name: String,
    pub smoothness: Option<SmoothnessTag>,
    /// Hölder exponent α when the function belongs to a known H^α family.
    pub holder_exponent: Option<f64>,
    /// Hölder (or Lipschitz) constant of that family, when known.
    pub holder_constant: Option<f64>,
}

impl fmt::Debug for PeriodicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicFunction")
            .field("name", &self.name)
            .field("smoothness", &self.smoothness)
            .field("holder_exponent", &self.holder_exponent)
            .field("holder_constant", &self.holder_constant)
            .finish()
    }
}

impl PeriodicFunction {
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(f),
            name: name.into(),
            smoothness: None,
            holder_exponent: None,
            holder_constant: None,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_fn(format!("constant({c})"), move |_| c).with_smoothness(SmoothnessTag::Smooth)
    }

    /// Periodic linear interpolation of uniform samples over [0, 2π);
    /// periodicity is exact by construction.
    pub fn from_samples(name: impl Into<String>, samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid-backed function needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        for (j, v) in samples.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue {
                    x: TAU * j as f64 / samples.len() as f64,
                });
            }
        }
        let n = samples.len();
        let samples = Arc::new(samples);
        Ok(Self::from_fn(name, move |x| {
            // reduce the argument first: rem_euclid is exact, so the value
            // depends only on x mod 2π
            let u = x.rem_euclid(TAU) / TAU * n as f64;
            let i0 = u.floor() as usize % n;
            let i1 = (i0 + 1) % n;
            let frac = u - u.floor();
            samples[i0] + (samples[i1] - samples[i0]) * frac
        }))
    }

    pub fn with_smoothness(mut self, tag: SmoothnessTag) -> Self {
        self.smoothness = Some(tag);
        self
    }

    pub fn with_holder(mut self, exponent: f64, constant: f64) -> Self {
        self.holder_exponent = Some(exponent);
        self.holder_constant = Some(constant);
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Checks f(x + 2π) = f(x) on a deterministic pseudo-random grid.
    pub fn verify_periodic(&self, samples: usize, tol: f64) -> Result<()> {
        let mut state = 0x9e37_79b9_7f4a_7c15_u64;
        for _ in 0..samples {
            // splitmix64
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^= z >> 31;
            let x = (z as f64 / u64::MAX as f64) * TAU - PI;
            let d = (self.eval(x + TAU) - self.eval(x)).abs();
            if !d.is_finite() || d > tol {
                return Err(Error::NotPeriodic { x, difference: d });
            }
        }
        Ok(())
    }
}

/// Fourier data a₀, {a_k}, {b_k} up to a stated order, with the quadrature
/// disagreement of the last grid doubling.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigCoefficients {
    order: usize,
    pub a0: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    pub quad_error: f64,
}

impl TrigCoefficients {
    pub fn new(a0: f64, a: Vec<f64>, b: Vec<f64>, quad_error: f64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidArgument(format!(
                "coefficient arrays must have equal length, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if !quad_error.is_finite() || quad_error < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "quad_error must be nonnegative, got {quad_error}"
            )));
        }
        Ok(Self {
            order: a.len(),
            a0,
            a,
            b,
            quad_error,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Cosine coefficient a_k, 1 ≤ k ≤ order.
    #[inline]
    pub fn a(&self, k: usize) -> f64 {
        self.a[k - 1]
    }

    /// Sine coefficient b_k, 1 ≤ k ≤ order.
    #[inline]
    pub fn b(&self, k: usize) -> f64 {
        self.b[k - 1]
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.a
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.b
    }
}

fn coefficients_on_grid(
    f: &PeriodicFunction,
    m: usize,
    n: usize,
) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let mut a = vec![0.0_f64; m + 1];
    let mut b = vec![0.0_f64; m + 1];
    for j in 0..n {
        let t = -PI + TAU * j as f64 / n as f64;
        let v = f.eval(t);
        if !v.is_finite() {
            return Err(Error::NonFiniteValue { x: t });
        }
        // accumulate v·cos(kt), v·sin(kt) by complex rotation
        let (s1, c1) = t.sin_cos();
        let mut ck = 1.0_f64;
        let mut sk = 0.0_f64;
        for k in 0..=m {
            a[k] += v * ck;
            b[k] += v * sk;
            let cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
        }
    }
    let scale = 2.0 / n as f64;
    for v in a.iter_mut().chain(b.iter_mut()) {
        *v *= scale;
    }
    let a0 = a[0];
    a.remove(0);
    b.remove(0);
    Ok((a0, a, b))
}

/// Fourier coefficients a_k = (1/π)∫_{-π}^{π} f(t)cos(kt) dt (and b_k likewise)
/// by the periodic trapezoidal rule, with grid doubling until successive grids
/// agree within `q.abs_tol`. The final disagreement is reported as `quad_error`.
pub fn fourier_coefficients(
    f: &PeriodicFunction,
    m: usize,
    q: &QuadratureConfig,
) -> Result<TrigCoefficients> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!(
            "order m must be >= 1, got {m}"
        )));
    }
    q.validate()?;
    let mut n = (8 * m).max(q.min_grid).max(2 * m + 1).next_power_of_two();
    let mut current = coefficients_on_grid(f, m, n)?;
    let mut err = f64::INFINITY;
    while n < MAX_COEFF_GRID {
        n *= 2;
        let next = coefficients_on_grid(f, m, n)?;
        err = (current.0 - next.0).abs();
        for k in 0..m {
            err = err.max((current.1[k] - next.1[k]).abs());
            err = err.max((current.2[k] - next.2[k]).abs());
        }
        current = next;
        if err <= q.abs_tol {
            break;
        }
    }
    TrigCoefficients::new(current.0, current.1, current.2, err.min(f64::MAX))
}

#[inline]
fn series_term(c: &TrigCoefficients, j: usize, x: f64) -> f64 {
    let jx = j as f64 * x;
    c.a(j) * jx.cos() + c.b(j) * jx.sin()
}

/// Fourier partial sum S_k(f; x) = a₀/2 + Σ_{j=1..k} (a_j cos jx + b_j sin jx).
pub fn partial_sum(c: &TrigCoefficients, k: usize, x: f64) -> Result<f64> {
    if k > c.order() {
        return Err(Error::OrderExceeded {
            k,
            order: c.order(),
        });
    }
    let mut s = c.a0 / 2.0;
    for j in 1..=k {
        s += series_term(c, j, x);
    }
    Ok(s)
}

/// De la Vallée Poussin mean V_{n,p}(f; x) = (1/p) Σ_{k=n-p}^{n-1} S_k(f; x).
///
/// The partial sums are generated by the same running accumulation as
/// [`partial_sum`], so V_{n,1} coincides with S_{n-1} bit for bit.
pub fn vp_sum(c: &TrigCoefficients, n: usize, p: usize, x: f64) -> Result<f64> {
    if n < 1 || p < 1 || p > n {
        return Err(Error::InvalidArgument(format!(
            "vp_sum requires 1 <= p <= n, got p = {p}, n = {n}"
        )));
    }
    if n - 1 > c.order() {
        return Err(Error::OrderExceeded {
            k: n - 1,
            order: c.order(),
        });
    }
    let mut running = c.a0 / 2.0; // S_0
    let mut acc = if n == p { running } else { 0.0 };
    for k in 1..n {
        running += series_term(c, k, x);
        if k >= n - p {
            acc += running;
        }
    }
    Ok(acc / p as f64)
}

/// Fejér mean σ_{n-1}(f; x) = (1/n) Σ_{k=0}^{n-1} S_k(f; x); identical to
/// `vp_sum` with p = n.
pub fn fejer_sum(c: &TrigCoefficients, n: usize, x: f64) -> Result<f64> {
    vp_sum(c, n, n, x)
}

/// Closed form of the V_{n,p} kernel (1/p) Σ_{k=n-p}^{n-1} D_k(t):
///
/// (cos((n−p)t) − cos(nt)) / (4p sin²(t/2)),
///
/// with the removable singularities at t ∈ 2πZ filled by a 6th-order series
/// (limit n − p/2 at t → 0). Satisfies (1/π)∫_{-π}^{π} vp_kernel dt = 1.
pub fn vp_kernel(n: usize, p: usize, t: f64) -> Result<f64> {
    if n < 1 || p < 1 || p > n {
        return Err(Error::InvalidArgument(format!(
            "vp_kernel requires 1 <= p <= n, got p = {p}, n = {n}"
        )));
    }
    let nf = n as f64;
    let pf = p as f64;
    let qf = nf - pf;
    let s = (t / 2.0).sin();
    if s.abs() < 1e-6 {
        // reduce to the nearest multiple of 2π; cos(k·2πj) = 1 for integer k
        let t0 = t - TAU * (t / TAU).round();
        let t2 = t0 * t0;
        // numerator/t² and denominator/(p·t²) as short series in t0²
        let a2 = nf * nf - qf * qf;
        let a4 = nf.powi(4) - qf.powi(4);
        let a6 = nf.powi(6) - qf.powi(6);
        let num = a2 / 2.0 - t2 * (a4 / 24.0 - t2 * a6 / 720.0);
        let den = 1.0 - t2 / 12.0 + t2 * t2 / 360.0;
        return Ok(num / (pf * den));
    }
    Ok(((qf * t).cos() - (nf * t).cos()) / (4.0 * pf * s * s))
}

/// Operator norm of V_{n,n/2} on C: (1/2π)∫_{-π}^{π} |sin(3t/2)/sin(t/2)| dt,
/// integrated adaptively with the range split at the interior zeros of
/// sin(3t/2). Independent of n; n is accepted only to enforce that p = n/2
/// is an integer.
pub fn lebesgue_constant(n: usize, q: &QuadratureConfig) -> Result<f64> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "p = n/2 requires even n, got n = {n}"
        )));
    }
    q.validate()?;
    let integrand = |t: f64| {
        let s = (t / 2.0).sin();
        if s.abs() < 1e-6 {
            // sin(3u) = 3 sin u − 4 sin³u, so the ratio tends to 3 − 4 sin²u
            (3.0 - 4.0 * s * s).abs()
        } else {
            ((1.5 * t).sin() / s).abs()
        }
    };
    // even integrand: twice [0, π], split at the zero t = 2π/3 of sin(3t/2)
    let left = quad::integrate_checked(integrand, 0.0, 2.0 * PI / 3.0, q)?;
    let right = quad::integrate_checked(integrand, 2.0 * PI / 3.0, PI, q)?;
    Ok((left.value + right.value) / PI)
}
