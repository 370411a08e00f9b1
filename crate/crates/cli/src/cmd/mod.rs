//! Command implementations behind the `vp-approx` subcommands.

pub mod approximate;
pub mod bounds;
pub mod constants;
pub mod holder;
pub mod verify;

use vp_core::modulus::{self, TestFunctionSpec};
use vp_core::trigsum::{self, PeriodicFunction, TrigCoefficients};

use crate::config::RunConfig;

/// A corpus member with its Fourier data at the order needed by the largest n.
pub struct ResolvedFunction {
    pub spec: TestFunctionSpec,
    pub f: PeriodicFunction,
    pub coeffs: TrigCoefficients,
}

pub fn resolve_functions(cfg: &RunConfig) -> Result<Vec<ResolvedFunction>, vp_core::Error> {
    let max_n = cfg.n_values.iter().copied().max().unwrap_or(2);
    let order = (max_n.saturating_sub(1)).max(1);
    let mut out = Vec::with_capacity(cfg.functions.len());
    for spec in &cfg.functions {
        let f = modulus::make_test_function(spec)?;
        let coeffs = trigsum::fourier_coefficients(&f, order, &cfg.quadrature)?;
        out.push(ResolvedFunction {
            spec: spec.clone(),
            f,
            coeffs,
        });
    }
    Ok(out)
}
