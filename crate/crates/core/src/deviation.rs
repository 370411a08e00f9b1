//! The deviation ρ_{n,p}(f; x) = f(x) − V_{n,p}(f; x) by two independent
//! routes, sup-deviation search, and empirical class suprema.

use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use serde::Serialize;

use crate::modulus::{self, TestFunctionSpec};
use crate::quad::{self, QuadratureConfig};
use crate::specfun::kernel_ratio;
use crate::trigsum::{self, PeriodicFunction, TrigCoefficients};
use crate::{Error, Result};

/// Cross-check subgrid size; sup grids are kept multiples of this so the
/// subgrid is contained in the sup grid.
pub const CROSS_CHECK_POINTS: usize = 33;
const MAX_SUP_DOUBLINGS: usize = 4;

/// A sampled deviation run.
#[derive(Clone, Debug, Serialize)]
pub struct DeviationSample {
    pub n: usize,
    pub p: usize,
    pub x_grid: Vec<f64>,
    pub direct: Vec<f64>,
    /// Integral-route values on the cross-check subgrid (every
    /// `x_grid.len()/33`-th point), when requested.
    pub integral_form: Option<Vec<f64>>,
    pub sup_abs: f64,
    /// max |direct − integral_form| over the subgrid, when present.
    pub route_disagreement: Option<f64>,
}

/// Compact summary for JSON output.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DeviationSummary {
    pub n: usize,
    pub p: usize,
    pub grid_points: usize,
    pub sup_abs: f64,
    pub route_disagreement: Option<f64>,
}

impl DeviationSample {
    pub fn summary(&self) -> DeviationSummary {
        DeviationSummary {
            n: self.n,
            p: self.p,
            grid_points: self.x_grid.len(),
            sup_abs: self.sup_abs,
            route_disagreement: self.route_disagreement,
        }
    }

    /// CSV rows `x,direct,integral_form`, the last column empty away from the
    /// cross-check subgrid.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "x,direct,integral_form")?;
        let stride = if self.integral_form.is_some() {
            self.x_grid.len() / CROSS_CHECK_POINTS
        } else {
            0
        };
        for (i, (&x, &d)) in self.x_grid.iter().zip(self.direct.iter()).enumerate() {
            match &self.integral_form {
                Some(values) if stride > 0 && i % stride == 0 => {
                    writeln!(w, "{:.16e},{:.16e},{:.16e}", x, d, values[i / stride])?;
                }
                _ => writeln!(w, "{:.16e},{:.16e},", x, d)?,
            }
        }
        Ok(())
    }
}

/// ρ_{n,p}(f; x) through the coefficient route.
pub fn deviation_direct(
    f: &PeriodicFunction,
    c: &TrigCoefficients,
    n: usize,
    p: usize,
    x: f64,
) -> Result<f64> {
    Ok(f.eval(x) - trigsum::vp_sum(c, n, p, x)?)
}

/// ρ_{n,n/2}(f; x) through the integral representation
/// (2/π)∫_0^∞ Δ(f; x; t/n)·(cos(t/2) − cos t)/t² dt with
/// Δ(f; x; h) = 2f(x) − f(x+h) − f(x−h).
///
/// The integrand is integrated adaptively up to T = max(4πn, 64); past T the
/// factor Δ·(cos(t/2) − cos t) is 2πn-periodic and the tail is folded exactly
/// onto one period against the lattice sum of 1/t².
pub fn deviation_integral(
    f: &PeriodicFunction,
    n: usize,
    x: f64,
    q: &QuadratureConfig,
) -> Result<f64> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "p = n/2 requires even n, got n = {n}"
        )));
    }
    q.validate()?;
    let nf = n as f64;
    let fx = f.eval(x);
    if !fx.is_finite() {
        return Err(Error::NonFiniteValue { x });
    }
    let delta = move |t: f64| 2.0 * fx - f.eval(x + t / nf) - f.eval(x - t / nf);
    let t_fold = (2.0 * TAU * nf).max(64.0);
    let main = quad::integrate_checked(|t| delta(t) * kernel_ratio(t), 0.0, t_fold, q)?;
    let period = TAU * nf;
    let tail = quad::periodic_over_t2_tail(
        |t| delta(t) * ((t / 2.0).cos() - t.cos()),
        period,
        t_fold,
        q,
    )?;
    Ok(2.0 / PI * (main.value + tail.value))
}

fn sup_on_grid(
    f: &PeriodicFunction,
    c: &TrigCoefficients,
    n: usize,
    p: usize,
    g: usize,
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let mut xs = Vec::with_capacity(g);
    let mut vals = Vec::with_capacity(g);
    let mut sup = 0.0_f64;
    for i in 0..g {
        let x = TAU * i as f64 / g as f64;
        let d = deviation_direct(f, c, n, p, x)?;
        sup = sup.max(d.abs());
        xs.push(x);
        vals.push(d);
    }
    Ok((xs, vals, sup))
}

/// Sup of |ρ_{n,p}| over a refined uniform grid (doubling until the sup moves
/// by less than 1e-4 relative). When `integral_check` is given, the integral
/// route is evaluated on the 33-point subgrid; this requires p = n/2.
pub fn sup_deviation(
    f: &PeriodicFunction,
    c: &TrigCoefficients,
    n: usize,
    p: usize,
    grid_points: usize,
    integral_check: Option<&QuadratureConfig>,
) -> Result<DeviationSample> {
    if grid_points < 512 {
        return Err(Error::InvalidArgument(format!(
            "grid_points must be >= 512, got {grid_points}"
        )));
    }
    if integral_check.is_some() && (!n.is_multiple_of(2) || p != n / 2) {
        return Err(Error::InvalidArgument(format!(
            "the integral cross-check is available only for p = n/2 with even n (got n = {n}, p = {p})"
        )));
    }
    // keep the grid a multiple of the cross-check subgrid
    let mut g = grid_points.div_ceil(CROSS_CHECK_POINTS) * CROSS_CHECK_POINTS;
    let (mut xs, mut vals, mut sup) = sup_on_grid(f, c, n, p, g)?;
    for _ in 0..MAX_SUP_DOUBLINGS {
        let (nxs, nvals, nsup) = sup_on_grid(f, c, n, p, 2 * g)?;
        let change = (nsup - sup).abs();
        g *= 2;
        xs = nxs;
        vals = nvals;
        sup = nsup;
        if change < 1e-4 * (nsup + 1e-12) {
            break;
        }
    }
    let (integral_form, route_disagreement) = match integral_check {
        Some(q) => {
            let stride = g / CROSS_CHECK_POINTS;
            let mut integral = Vec::with_capacity(CROSS_CHECK_POINTS);
            let mut disagreement = 0.0_f64;
            for j in 0..CROSS_CHECK_POINTS {
                let x = xs[j * stride];
                let v = deviation_integral(f, n, x, q)?;
                disagreement = disagreement.max((vals[j * stride] - v).abs());
                integral.push(v);
            }
            (Some(integral), Some(disagreement))
        }
        None => (None, None),
    };
    Ok(DeviationSample {
        n,
        p,
        x_grid: xs,
        direct: vals,
        integral_form,
        sup_abs: sup,
        route_disagreement,
    })
}

/// Hölder class H^α with a stated constant: |f(x) − f(y)| ≤ C·|x − y|^α.
#[derive(Clone, Copy, Debug)]
pub struct HolderClass {
    pub alpha: f64,
    pub constant: f64,
}

/// Per-function entry of an empirical class supremum run.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSupRow {
    pub name: String,
    pub sup_abs: f64,
}

/// Empirical lower estimate of sup over the class of ‖f − V_{n,n/2}(f)‖ by
/// maximizing over a finite corpus. Every member is first verified against
/// the class by its measured modulus profile; failures are rejected.
pub fn empirical_class_sup(
    specs: &[TestFunctionSpec],
    n: usize,
    class: &HolderClass,
    q: &QuadratureConfig,
) -> Result<(f64, Vec<ClassSupRow>)> {
    if specs.is_empty() {
        return Err(Error::InvalidArgument("corpus must be nonempty".into()));
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "p = n/2 requires even n >= 2, got n = {n}"
        )));
    }
    if !class.alpha.is_finite()
        || class.alpha <= 0.0
        || class.alpha > 1.0
        || !class.constant.is_finite()
        || class.constant < 0.0
    {
        return Err(Error::InvalidArgument(format!(
            "class requires alpha in (0, 1] and constant >= 0, got alpha = {}, constant = {}",
            class.alpha, class.constant
        )));
    }
    let deltas: Vec<f64> = (0..12)
        .map(|i| PI / 128.0 * (128.0_f64).powf(i as f64 / 11.0))
        .collect();
    let mut rows = Vec::with_capacity(specs.len());
    let mut class_sup = 0.0_f64;
    for spec in specs {
        let f = modulus::make_test_function(spec)?;
        f.verify_periodic(64, 1e-12)?;
        let profile = modulus::modulus_profile(&f, &deltas, 1024)?;
        for (&d, &v) in profile.deltas.iter().zip(profile.values.iter()) {
            let cap = class.constant * d.powf(class.alpha);
            if v > cap * (1.0 + 1e-3) + 1e-9 {
                return Err(Error::ClassMembership {
                    name: f.name.clone(),
                    reason: format!("measured ω({d:.6}) = {v:.6e} exceeds the class cap {cap:.6e}"),
                });
            }
        }
        let order = (n - 1).max(1);
        let coeffs = trigsum::fourier_coefficients(&f, order, q)?;
        let sample = sup_deviation(&f, &coeffs, n, n / 2, 512, None)?;
        class_sup = class_sup.max(sample.sup_abs);
        rows.push(ClassSupRow {
            name: f.name.clone(),
            sup_abs: sample.sup_abs,
        });
    }
    Ok((class_sup, rows))
}
