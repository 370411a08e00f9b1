//! Modulus-of-continuity estimation, concavity checks for class membership,
//! and the deterministic test-function corpus.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::trigsum::{PeriodicFunction, SmoothnessTag};
use crate::{Error, Result};

/// Default x-resolution for modulus scans.
pub const DEFAULT_MODULUS_GRID: usize = 4096;
const MIN_OFFSETS: usize = 64;
const MAX_DOUBLINGS: usize = 3;

/// A modulus estimate together with its refinement status.
#[derive(Clone, Copy, Debug)]
pub struct ModulusEstimate {
    pub value: f64,
    pub converged: bool,
    /// Resolution of the final scan.
    pub grid_points: usize,
}

/// Sampled values of ω(f, δ) on a δ-grid.
#[derive(Clone, Debug, Serialize)]
pub struct ModulusProfile {
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
    pub grid_points: usize,
    pub converged: bool,
    /// Whether the monotone (running-max) regularization changed any value.
    pub regularized: bool,
}

fn effective_grid(grid_points: usize, delta: f64) -> usize {
    let mut m = grid_points.next_power_of_two();
    while (delta * m as f64 / TAU).floor() < MIN_OFFSETS as f64 {
        m *= 2;
    }
    m
}

/// Largest |f(x) − f(y)| over grid pairs with |x − y| ≤ delta, via a sliding
/// window max/min over one period (offsets are the grid multiples k·2π/m ≤ δ).
fn scan(f: &PeriodicFunction, delta: f64, m: usize) -> Result<f64> {
    let mut vals = Vec::with_capacity(m);
    for j in 0..m {
        let x = TAU * j as f64 / m as f64;
        let v = f.eval(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteValue { x });
        }
        vals.push(v);
    }
    let span = (delta * m as f64 / TAU).floor() as usize; // window covers span+1 points
    let total = m + span;
    let mut max_q: VecDeque<usize> = VecDeque::new();
    let mut min_q: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0_f64;
    for i in 0..total {
        let v = vals[i % m];
        while let Some(&back) = max_q.back() {
            if vals[back % m] <= v {
                max_q.pop_back();
            } else {
                break;
            }
        }
        max_q.push_back(i);
        while let Some(&back) = min_q.back() {
            if vals[back % m] >= v {
                min_q.pop_back();
            } else {
                break;
            }
        }
        min_q.push_back(i);
        if i >= span {
            let lo = i - span;
            while *max_q.front().unwrap() < lo {
                max_q.pop_front();
            }
            while *min_q.front().unwrap() < lo {
                min_q.pop_front();
            }
            best = best.max(vals[*max_q.front().unwrap() % m] - vals[*min_q.front().unwrap() % m]);
        }
    }
    Ok(best)
}

/// Lower estimate of ω(f, δ) on nested uniform grids, doubled until the value
/// stabilizes to 1e-4 relative (at most three doublings).
pub fn estimate_modulus(
    f: &PeriodicFunction,
    delta: f64,
    grid_points: usize,
) -> Result<ModulusEstimate> {
    if !(delta > 0.0 && delta <= PI) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0, π], got {delta}"
        )));
    }
    if grid_points < 256 {
        return Err(Error::InvalidArgument(format!(
            "grid_points must be >= 256, got {grid_points}"
        )));
    }
    let mut m = effective_grid(grid_points, delta);
    let mut value = scan(f, delta, m)?;
    let mut converged = false;
    for _ in 0..MAX_DOUBLINGS {
        let next = scan(f, delta, 2 * m)?;
        m *= 2;
        let change = next - value; // nested grids: nondecreasing
        value = next;
        if change < 1e-4 * (value + 1e-12) {
            converged = true;
            break;
        }
    }
    Ok(ModulusEstimate {
        value,
        converged,
        grid_points: m,
    })
}

/// Applies [`estimate_modulus`] per delta and enforces monotone regularization
/// by running maximum.
pub fn modulus_profile(
    f: &PeriodicFunction,
    deltas: &[f64],
    grid_points: usize,
) -> Result<ModulusProfile> {
    if deltas.is_empty() {
        return Err(Error::InvalidArgument("deltas must be nonempty".into()));
    }
    for w in deltas.windows(2) {
        if !w[0].is_finite() || !w[1].is_finite() || w[1] <= w[0] {
            return Err(Error::InvalidArgument(format!(
                "deltas must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    let mut values = Vec::with_capacity(deltas.len());
    let mut converged = true;
    let mut grid = 0usize;
    for &d in deltas {
        let est = estimate_modulus(f, d, grid_points)?;
        values.push(est.value);
        converged &= est.converged;
        grid = grid.max(est.grid_points);
    }
    let mut regularized = false;
    let mut running = 0.0_f64;
    for v in values.iter_mut() {
        if *v < running {
            *v = running;
            regularized = true;
        } else {
            running = *v;
        }
    }
    Ok(ModulusProfile {
        deltas: deltas.to_vec(),
        values,
        grid_points: grid,
        converged,
        regularized,
    })
}

/// True when all second divided differences of the profile are ≤ 1e-6, i.e.
/// the sampled modulus is concave within tolerance. Profiles with fewer than
/// three points are vacuously concave.
pub fn is_concave_profile(p: &ModulusProfile) -> bool {
    if p.deltas.len() < 3 {
        return true;
    }
    for i in 0..p.deltas.len() - 2 {
        let (x0, x1, x2) = (p.deltas[i], p.deltas[i + 1], p.deltas[i + 2]);
        let (v0, v1, v2) = (p.values[i], p.values[i + 1], p.values[i + 2]);
        let d1 = (v1 - v0) / (x1 - x0);
        let d2 = (v2 - v1) / (x2 - x1);
        let second = (d2 - d1) / (x2 - x0);
        if second > 1e-6 {
            return false;
        }
    }
    true
}

fn default_amplitude() -> f64 {
    1.0
}
fn default_sawtooth_width() -> f64 {
    PI / 32.0
}

/// Description of a corpus member; expressible in the CLI JSON config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TestFunctionSpec {
    /// |sin(x/2)|^α: 2π-periodic, α-Hölder with constant 2^{-α}, near-extremal
    /// increments at x = 0.
    HolderAlpha {
        alpha: f64,
    },
    /// Deterministic full-degree polynomial:
    /// A·(Σ_{k=1..d} cos(kx)/(k+1) + sin(kx)/(k+2)).
    TrigPoly {
        degree: usize,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    /// Zero-mean triangle wave convolved with a box of the given width;
    /// Lipschitz with constant 2A/π.
    LipschitzSawtoothSmoothed {
        #[serde(default = "default_amplitude")]
        amplitude: f64,
        #[serde(default = "default_sawtooth_width")]
        width: f64,
    },
    /// Seeded coefficients a_k, b_k ~ U(-1,1)·A/k², deterministic per seed.
    RandomTrig {
        seed: u64,
        degree: usize,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    Constant {
        value: f64,
    },
}

impl TestFunctionSpec {
    pub fn describe(&self) -> String {
        match self {
            Self::HolderAlpha { alpha } => format!("holder_alpha({alpha})"),
            Self::TrigPoly { degree, amplitude } => format!("trig_poly({degree}, {amplitude})"),
            Self::LipschitzSawtoothSmoothed { amplitude, width } => {
                format!("sawtooth_smoothed({amplitude}, {width})")
            }
            Self::RandomTrig {
                seed,
                degree,
                amplitude,
            } => {
                format!("random_trig({seed}, {degree}, {amplitude})")
            }
            Self::Constant { value } => format!("constant({value})"),
        }
    }
}

fn wrap_to_pm_pi(x: f64) -> f64 {
    (x + PI).rem_euclid(TAU) - PI
}

/// Periodic antiderivative of the zero-mean triangle wave 1 − (2/π)|x| on [-π, π).
fn triangle_antiderivative(x: f64) -> f64 {
    let u = wrap_to_pm_pi(x);
    u - u.abs() * u / PI
}

/// Builds a corpus member from its spec.
pub fn make_test_function(spec: &TestFunctionSpec) -> Result<PeriodicFunction> {
    match *spec {
        TestFunctionSpec::HolderAlpha { alpha } => {
            if !(alpha > 0.0 && alpha <= 1.0) || !alpha.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "holder_alpha requires alpha in (0, 1], got {alpha}"
                )));
            }
            let f = PeriodicFunction::from_fn(spec.describe(), move |x: f64| {
                (x / 2.0).sin().abs().powf(alpha)
            });
            let tag = if alpha == 1.0 {
                SmoothnessTag::Lipschitz
            } else {
                SmoothnessTag::Holder
            };
            Ok(f.with_smoothness(tag)
                .with_holder(alpha, 2.0_f64.powf(-alpha)))
        }
        TestFunctionSpec::TrigPoly { degree, amplitude } => {
            if degree < 1 {
                return Err(Error::InvalidArgument(format!(
                    "trig_poly requires degree >= 1, got {degree}"
                )));
            }
            if !amplitude.is_finite() {
                return Err(Error::InvalidArgument(
                    "trig_poly amplitude must be finite".into(),
                ));
            }
            let f = PeriodicFunction::from_fn(spec.describe(), move |x: f64| {
                let mut s = 0.0;
                for k in 1..=degree {
                    let kf = k as f64;
                    s += (kf * x).cos() / (kf + 1.0) + (kf * x).sin() / (kf + 2.0);
                }
                amplitude * s
            });
            Ok(f.with_smoothness(SmoothnessTag::Smooth))
        }
        TestFunctionSpec::LipschitzSawtoothSmoothed { amplitude, width } => {
            if !(width > 0.0 && width <= PI / 2.0) || !amplitude.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "sawtooth smoothing width must lie in (0, π/2], got {width}"
                )));
            }
            let f = PeriodicFunction::from_fn(spec.describe(), move |x: f64| {
                amplitude
                    * (triangle_antiderivative(x + width / 2.0)
                        - triangle_antiderivative(x - width / 2.0))
                    / width
            });
            let lipschitz = 2.0 * amplitude.abs() / PI;
            Ok(f.with_smoothness(SmoothnessTag::Lipschitz)
                .with_holder(1.0, lipschitz))
        }
        TestFunctionSpec::RandomTrig {
            seed,
            degree,
            amplitude,
        } => {
            if degree < 1 {
                return Err(Error::InvalidArgument(format!(
                    "random_trig requires degree >= 1, got {degree}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut a = Vec::with_capacity(degree);
            let mut b = Vec::with_capacity(degree);
            for k in 1..=degree {
                let decay = amplitude / (k * k) as f64;
                a.push(rng.gen_range(-1.0..1.0) * decay);
                b.push(rng.gen_range(-1.0..1.0) * decay);
            }
            let f = PeriodicFunction::from_fn(spec.describe(), move |x: f64| {
                let mut s = 0.0;
                for k in 1..=degree {
                    let kf = k as f64;
                    s += a[k - 1] * (kf * x).cos() + b[k - 1] * (kf * x).sin();
                }
                s
            });
            Ok(f.with_smoothness(SmoothnessTag::Smooth))
        }
        TestFunctionSpec::Constant { value } => {
            if !value.is_finite() {
                return Err(Error::InvalidArgument(
                    "constant value must be finite".into(),
                ));
            }
            Ok(PeriodicFunction::constant(value).with_holder(1.0, 0.0))
        }
    }
}
