//! The two-sided Hölder-class estimate over an α grid, with the empirical
//! corpus supremum alongside.

use vp_core::bounds;
use vp_core::deviation;
use vp_core::modulus::TestFunctionSpec;
use vp_core::trigsum;
use vp_core::Error;

use crate::config::RunConfig;
use crate::table::{Cell, Table};

pub struct HolderOutput {
    pub table: Table,
    pub violations: usize,
}

pub fn run_holder(cfg: &RunConfig) -> Result<HolderOutput, Error> {
    let alphas: Vec<f64> = cfg
        .functions
        .iter()
        .filter_map(|spec| match spec {
            TestFunctionSpec::HolderAlpha { alpha } => Some(*alpha),
            _ => None,
        })
        .collect();
    if alphas.is_empty() {
        return Err(Error::InvalidArgument(
            "holder command needs at least one holder_alpha function in the config".into(),
        ));
    }
    let mut table = Table::new(&["alpha", "n", "lower", "upper", "empirical", "violated"]);
    let mut violations = 0usize;
    for &alpha in &alphas {
        let f = vp_core::modulus::make_test_function(&TestFunctionSpec::HolderAlpha { alpha })?;
        for &n in &cfg.n_values {
            if !n.is_multiple_of(2) {
                return Err(Error::InvalidArgument(format!(
                    "p = n/2 requires even n, got n = {n}"
                )));
            }
            let (lower, upper) = bounds::holder_two_sided(alpha, n)?;
            let coeffs = trigsum::fourier_coefficients(&f, (n - 1).max(1), &cfg.quadrature)?;
            let sample = deviation::sup_deviation(&f, &coeffs, n, n / 2, 512, None)?;
            let mut violated: Vec<&str> = Vec::new();
            if lower >= upper {
                violated.push("lower<upper");
            }
            if sample.sup_abs > upper {
                violated.push("empirical<=upper");
            }
            if !violated.is_empty() {
                violations += 1;
            }
            table.push(vec![
                Cell::Num(alpha),
                Cell::Int(n as i64),
                Cell::Num(lower),
                Cell::Num(upper),
                Cell::Num(sample.sup_abs),
                Cell::Str(violated.join(";")),
            ]);
        }
    }
    Ok(HolderOutput { table, violations })
}
