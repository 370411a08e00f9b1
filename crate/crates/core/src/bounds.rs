//! The deviation bounds as calculators, plus a discrete-minimax oracle for the
//! best uniform approximation E_m(f) by trigonometric polynomials.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::quad::{self, QuadratureConfig};
use crate::trigsum::{PeriodicFunction, TrigCoefficients};
use crate::{Error, Result};

/// A named bound value plus provenance.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub inputs: BTreeMap<String, f64>,
    /// Whether the underlying inequality is strict.
    pub strict: bool,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, value: f64, strict: bool) -> Self {
        Self {
            name: name.into(),
            value,
            inputs: BTreeMap::new(),
            strict,
        }
    }

    pub fn with_input(mut self, key: impl Into<String>, value: f64) -> Self {
        self.inputs.insert(key.into(), value);
        self
    }
}

/// Coefficients (1, 9/(10π), 31/(25π)) of the three-term modulus bound.
pub fn three_term_coefficients() -> [f64; 3] {
    [1.0, 9.0 / (10.0 * PI), 31.0 / (25.0 * PI)]
}

/// 1 + 9/(10π) + 31/(25π) ≈ 1.68118.
pub fn three_term_coefficient_sum() -> f64 {
    three_term_coefficients().iter().sum()
}

/// 4/3 + 2√3/π, the multiplier of ω(f, 2π/n) in the general-class bound.
pub fn general_class_coefficient() -> f64 {
    4.0 / 3.0 + 2.0 * 3.0_f64.sqrt() / PI
}

/// 2/3 + √3/π, the multiplier for functions with concave modulus.
pub fn convex_class_coefficient() -> f64 {
    2.0 / 3.0 + 3.0_f64.sqrt() / PI
}

/// Upper coefficient of the two-sided Hölder estimate:
/// 6^α/7^α + 3^{2−α}2^{α−1}/(5π) + 31/(25π).
pub fn holder_upper_coefficient(alpha: f64) -> f64 {
    (6.0_f64 / 7.0).powf(alpha)
        + 3.0_f64.powf(2.0 - alpha) * 2.0_f64.powf(alpha - 1.0) / (5.0 * PI)
        + 31.0 / (25.0 * PI)
}

/// w1 + (9/(10π))·w2 + (31/(25π))·w3 for the moduli w1 = ω(f, 6π/7n),
/// w2 = ω(f, 2π/3n), w3 = ω(f, π/n).
pub fn three_term_bound(w1: f64, w2: f64, w3: f64) -> Result<f64> {
    for (name, w) in [("w1", w1), ("w2", w2), ("w3", w3)] {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "{name} must be a nonnegative modulus value, got {w}"
            )));
        }
    }
    let [c1, c2, c3] = three_term_coefficients();
    Ok(c1 * w1 + c2 * w2 + c3 * w3)
}

/// The classical estimate 2(n/p)·E_{n−p}(f).
pub fn classical_vp_bound(n: usize, p: usize, e: f64) -> Result<f64> {
    if n < 1 || p < 1 || p > n {
        return Err(Error::InvalidArgument(format!(
            "classical bound requires 1 <= p <= n, got p = {p}, n = {n}"
        )));
    }
    if !e.is_finite() || e < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "best-approximation value must be nonnegative, got {e}"
        )));
    }
    Ok(2.0 * n as f64 / p as f64 * e)
}

/// The Lebesgue-type estimate (‖V_{n,p}‖ + 1)·E_{n−p}(f).
pub fn lebesgue_analog_bound(op_norm: f64, e: f64) -> Result<f64> {
    if !op_norm.is_finite() || op_norm < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "operator norm of a projection-like mean is >= 1, got {op_norm}"
        )));
    }
    if !e.is_finite() || e < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "best-approximation value must be nonnegative, got {e}"
        )));
    }
    Ok((op_norm + 1.0) * e)
}

/// The main term A_{n,p}(ω) of the class deviation. The case split has an
/// overlap zone at the integer boundary n/2 ≤ p ≤ (n+1)/2: there both branch
/// values are reported. The O(1)·ω(1/n) remainder of the full asymptotic is
/// not quantified here.
#[derive(Clone, Copy, Debug)]
pub struct EfimovReport {
    /// The applicable branch (integral branch preferred at the overlap).
    pub value: f64,
    /// (e_n(ω)/π)·ln((n−1)/p), present when p ≤ (n+1)/2 and e_n was supplied.
    pub log_branch: Option<f64>,
    /// (2/(πp))∫_{1/n}^{1/(n−p)} ω(t)/t² dt, present when p ≥ n/2.
    pub integral_branch: Option<f64>,
    pub quad_error: f64,
}

/// Branches on p against the boundary (n+1)/2; the log branch needs the
/// caller-supplied sharp n-th Fourier coefficient bound e_n(ω), the integral
/// branch covers p ≥ n/2.
pub fn efimov_a(
    n: usize,
    p: usize,
    omega: impl Fn(f64) -> f64,
    e_n: Option<f64>,
    q: &QuadratureConfig,
) -> Result<EfimovReport> {
    if n < 2 || p < 1 || p > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "A_(n,p) is stated for 1 <= p <= n-1, got p = {p}, n = {n}"
        )));
    }
    q.validate()?;
    let pf = p as f64;
    if 2 * p < n && e_n.is_none() {
        return Err(Error::InvalidArgument(format!(
            "p = {p} < n/2: e_n(omega) must be supplied for the log branch"
        )));
    }
    let log_branch = match e_n {
        Some(e) if 2 * p <= n + 1 => {
            if !e.is_finite() || e < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "e_n must be nonnegative, got {e}"
                )));
            }
            Some(e / PI * ((n - 1) as f64 / pf).ln())
        }
        _ => None,
    };
    let mut quad_error = 0.0;
    let integral_branch = if 2 * p >= n {
        let r = quad::integrate_checked(
            |t| omega(t) / (t * t),
            1.0 / n as f64,
            1.0 / (n - p) as f64,
            q,
        )?;
        quad_error = r.abs_error * 2.0 / (PI * pf);
        Some(2.0 / (PI * pf) * r.value)
    } else {
        None
    };
    let value = integral_branch
        .or(log_branch)
        .expect("one branch always applies");
    Ok(EfimovReport {
        value,
        log_branch,
        integral_branch,
        quad_error,
    })
}

/// Two-sided estimate for the Hölder class H^α:
/// π^α/((1+α)n^α) below, the three-term coefficient times π^α/n^α above.
pub fn holder_two_sided(alpha: f64, n: usize) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha <= 1.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "holder_two_sided requires alpha in (0, 1], got {alpha}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let scale = (PI / n as f64).powf(alpha);
    let lower = scale / (1.0 + alpha);
    let upper = holder_upper_coefficient(alpha) * scale;
    // 1/(1+α) ≤ 1 while the upper coefficient stays above 1.44 on (0, 1]
    debug_assert!(lower < upper);
    Ok((lower, upper))
}

/// Result of the discrete minimax oracle.
#[derive(Clone, Debug)]
pub struct BestApproxResult {
    /// Approximant degree is at most m − 1.
    pub m: usize,
    /// Discrete minimax error on the final grid (a lower estimate of the
    /// continuous E_m up to the refinement tolerance).
    pub value: f64,
    pub approximant: TrigCoefficients,
    pub equioscillation_points: Vec<f64>,
    /// Whether the exchange itself converged (as opposed to the IRLS fallback).
    pub exchange_converged: bool,
    /// Minimax values per grid-refinement level.
    pub refinement_history: Vec<f64>,
}

struct GridSolve {
    value: f64,
    a0: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    reference: Vec<f64>,
    exchange_converged: bool,
}

fn basis_dim(m: usize) -> usize {
    2 * m - 1
}

fn fill_basis_row(x: f64, m: usize, row: &mut [f64]) {
    row[0] = 0.5;
    for k in 1..m {
        let (s, c) = (k as f64 * x).sin_cos();
        row[2 * k - 1] = c;
        row[2 * k] = s;
    }
}

fn eval_approximant(coef: &[f64], m: usize, x: f64) -> f64 {
    let mut s = coef[0] * 0.5;
    for k in 1..m {
        let (sn, cs) = (k as f64 * x).sin_cos();
        s += coef[2 * k - 1] * cs + coef[2 * k] * sn;
    }
    s
}

/// Alternation-run extrema of the residual: one argmax |e| per maximal run of
/// constant sign. Consecutive entries alternate in sign by construction.
fn alternation_extrema(errs: &[f64]) -> Vec<usize> {
    let mut pts = Vec::new();
    let mut i = 0;
    let g = errs.len();
    while i < g {
        let run_sign = errs[i].signum();
        let mut best = i;
        let mut j = i;
        while j < g && (errs[j].signum() == run_sign || errs[j] == 0.0) {
            if errs[j].abs() > errs[best].abs() {
                best = j;
            }
            j += 1;
        }
        pts.push(best);
        i = j;
    }
    pts
}

fn trim_to_reference(mut pts: Vec<usize>, errs: &[f64], want: usize) -> Vec<usize> {
    while pts.len() > want {
        if pts.len() - want >= 2 {
            // drop the adjacent pair of smallest max-amplitude; alternation survives
            let mut k_best = 0;
            let mut amp_best = f64::INFINITY;
            for k in 0..pts.len() - 1 {
                let amp = errs[pts[k]].abs().max(errs[pts[k + 1]].abs());
                if amp < amp_best {
                    amp_best = amp;
                    k_best = k;
                }
            }
            pts.drain(k_best..k_best + 2);
        } else if errs[pts[0]].abs() < errs[*pts.last().unwrap()].abs() {
            pts.remove(0);
        } else {
            pts.pop();
        }
    }
    pts
}

fn remez_on_grid(xs: &[f64], fv: &[f64], m: usize) -> Result<GridSolve> {
    let n_basis = basis_dim(m);
    let n_ref = n_basis + 1; // 2m alternation points
    let g = xs.len();
    let mut reference: Vec<usize> = (0..n_ref).map(|i| i * (g - 1) / (n_ref - 1)).collect();
    let f_scale = fv.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));

    let mut last_change = f64::INFINITY;
    for iter in 0..200 {
        let mut mat = DMatrix::zeros(n_ref, n_ref);
        let mut rhs = DVector::zeros(n_ref);
        let mut row = vec![0.0; n_basis];
        for (i, &idx) in reference.iter().enumerate() {
            fill_basis_row(xs[idx], m, &mut row);
            for (j, &v) in row.iter().enumerate() {
                mat[(i, j)] = v;
            }
            mat[(i, n_basis)] = if i % 2 == 0 { 1.0 } else { -1.0 };
            rhs[i] = fv[idx];
        }
        let sol = mat.lu().solve(&rhs).ok_or(Error::MinimaxDidNotConverge {
            iterations: iter,
            last_change,
        })?;
        let coef: Vec<f64> = sol.iter().take(n_basis).copied().collect();
        let h = sol[n_basis];

        let errs: Vec<f64> = (0..g)
            .map(|i| fv[i] - eval_approximant(&coef, m, xs[i]))
            .collect();
        let emax = errs.iter().fold(0.0_f64, |acc, e| acc.max(e.abs()));
        last_change = emax - h.abs();

        let assemble = |exchange_converged: bool| {
            let mut a = vec![0.0; m.saturating_sub(1)];
            let mut b = vec![0.0; m.saturating_sub(1)];
            for k in 1..m {
                a[k - 1] = coef[2 * k - 1];
                b[k - 1] = coef[2 * k];
            }
            GridSolve {
                value: emax,
                a0: coef[0],
                a,
                b,
                reference: reference.iter().map(|&i| xs[i]).collect(),
                exchange_converged,
            }
        };

        // f already inside the approximation space: the residual is noise
        if emax <= 1e-13 * (1.0 + f_scale) {
            return Ok(assemble(true));
        }
        if emax <= h.abs() * (1.0 + 1e-9) + 1e-15 {
            return Ok(assemble(true));
        }

        let pts = alternation_extrema(&errs);
        if pts.len() < n_ref {
            return Err(Error::MinimaxDidNotConverge {
                iterations: iter,
                last_change,
            });
        }
        reference = trim_to_reference(pts, &errs, n_ref);
    }
    Err(Error::MinimaxDidNotConverge {
        iterations: 200,
        last_change,
    })
}

/// Lawson iteratively-reweighted least squares; linear convergence toward the
/// discrete minimax, used when the exchange stalls.
fn lawson_on_grid(xs: &[f64], fv: &[f64], m: usize) -> Result<GridSolve> {
    let n_basis = basis_dim(m);
    let g = xs.len();
    let mut basis = DMatrix::zeros(g, n_basis);
    let mut row = vec![0.0; n_basis];
    for i in 0..g {
        fill_basis_row(xs[i], m, &mut row);
        for (j, &v) in row.iter().enumerate() {
            basis[(i, j)] = v;
        }
    }
    let f_vec = DVector::from_column_slice(fv);
    let mut weights = vec![1.0 / g as f64; g];
    let mut prev_emax = f64::INFINITY;
    let mut result: Option<(Vec<f64>, Vec<f64>, f64)> = None;
    let mut last_change = f64::INFINITY;
    for iter in 0..200 {
        // normal equations of the weighted least-squares problem
        let mut ata = DMatrix::zeros(n_basis, n_basis);
        let mut atf = DVector::zeros(n_basis);
        for i in 0..g {
            let w = weights[i];
            for j in 0..n_basis {
                let bij = basis[(i, j)];
                atf[j] += w * bij * f_vec[i];
                for k in j..n_basis {
                    ata[(j, k)] += w * bij * basis[(i, k)];
                }
            }
        }
        for j in 0..n_basis {
            for k in 0..j {
                ata[(j, k)] = ata[(k, j)];
            }
        }
        let coef = ata.lu().solve(&atf).ok_or(Error::MinimaxDidNotConverge {
            iterations: iter,
            last_change,
        })?;
        let coef: Vec<f64> = coef.iter().copied().collect();
        let errs: Vec<f64> = (0..g)
            .map(|i| fv[i] - eval_approximant(&coef, m, xs[i]))
            .collect();
        let emax = errs.iter().fold(0.0_f64, |acc, e| acc.max(e.abs()));
        last_change = (emax - prev_emax).abs();
        result = Some((coef, errs, emax));
        if last_change < 1e-9 * emax.max(1e-12) {
            break;
        }
        prev_emax = emax;
        let mut total = 0.0;
        for (w, e) in weights.iter_mut().zip(result.as_ref().unwrap().1.iter()) {
            *w *= e.abs().max(1e-300);
            total += *w;
        }
        for w in weights.iter_mut() {
            *w /= total;
        }
    }
    let (coef, errs, emax) = result.ok_or(Error::MinimaxDidNotConverge {
        iterations: 200,
        last_change,
    })?;
    let pts = alternation_extrema(&errs);
    let n_ref = n_basis + 1;
    let reference = if pts.len() >= n_ref {
        trim_to_reference(pts, &errs, n_ref)
    } else {
        pts
    };
    let mut a = vec![0.0; m.saturating_sub(1)];
    let mut b = vec![0.0; m.saturating_sub(1)];
    for k in 1..m {
        a[k - 1] = coef[2 * k - 1];
        b[k - 1] = coef[2 * k];
    }
    Ok(GridSolve {
        value: emax,
        a0: coef[0],
        a,
        b,
        reference: reference.iter().map(|&i| xs[i]).collect(),
        exchange_converged: false,
    })
}

/// Discrete minimax approximation of f by trigonometric polynomials of degree
/// ≤ m − 1: alternation exchange on a uniform grid, IRLS fallback when the
/// exchange stalls, and grid doubling until the value stabilizes to 1e-6
/// relative.
pub fn best_approx_oracle(
    f: &PeriodicFunction,
    m: usize,
    grid_points: usize,
) -> Result<BestApproxResult> {
    if m < 1 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    if grid_points < 16 * m {
        return Err(Error::InvalidArgument(format!(
            "grid_points must be >= 16 m = {}, got {grid_points}",
            16 * m
        )));
    }
    let mut g = grid_points;
    let mut history = Vec::new();
    let mut prev: Option<GridSolve> = None;
    for _ in 0..7 {
        let xs: Vec<f64> = (0..g).map(|i| 2.0 * PI * i as f64 / g as f64).collect();
        let mut fv = Vec::with_capacity(g);
        for &x in &xs {
            let v = f.eval(x);
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { x });
            }
            fv.push(v);
        }
        let solve = match remez_on_grid(&xs, &fv, m) {
            Ok(s) => s,
            Err(_) => lawson_on_grid(&xs, &fv, m)?,
        };
        history.push(solve.value);
        let stable = prev
            .as_ref()
            .map(|p| (solve.value - p.value).abs() < 1e-6 * solve.value.max(1e-12))
            .unwrap_or(false);
        prev = Some(solve);
        if stable || g >= (1 << 17) {
            break;
        }
        g *= 2;
    }
    let best = prev.expect("at least one refinement level runs");
    Ok(BestApproxResult {
        m,
        value: best.value,
        approximant: TrigCoefficients::new(best.a0, best.a, best.b, 0.0)?,
        equioscillation_points: best.reference,
        exchange_converged: best.exchange_converged,
        refinement_history: history,
    })
}
