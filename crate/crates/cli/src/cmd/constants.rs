//! Tabulates every named closed-form constant of the estimate chain, each
//! computed from its formula rather than a decimal literal.

use std::f64::consts::PI;

use vp_core::bounds::{self, BoundReport};
use vp_core::quad::QuadratureConfig;
use vp_core::specfun;
use vp_core::trigsum;

use crate::table::{Cell, Table};

pub struct ConstantsOutput {
    pub reports: Vec<BoundReport>,
    pub table: Table,
}

pub fn run_constants(q: &QuadratureConfig) -> Result<ConstantsOutput, vp_core::Error> {
    let mut reports = Vec::new();

    let lebesgue = trigsum::lebesgue_constant(2, q)?;
    let closed = 1.0 / 3.0 + 2.0 * 3.0_f64.sqrt() / PI;
    reports.push(
        BoundReport::new("vp_half_operator_norm", lebesgue, false)
            .with_input("closed_form", closed)
            .with_input("difference", (lebesgue - closed).abs()),
    );
    reports.push(BoundReport::new(
        "general_class_coefficient",
        bounds::general_class_coefficient(),
        true,
    ));
    reports.push(BoundReport::new(
        "convex_class_coefficient",
        bounds::convex_class_coefficient(),
        false,
    ));

    let [c1, c2, c3] = bounds::three_term_coefficients();
    reports.push(BoundReport::new("three_term_coefficient_1", c1, true));
    reports.push(BoundReport::new("three_term_coefficient_2", c2, true));
    reports.push(BoundReport::new("three_term_coefficient_3", c3, true));
    reports.push(
        BoundReport::new(
            "three_term_coefficient_sum",
            bounds::three_term_coefficient_sum(),
            true,
        )
        .with_input("comparison", 1.6812),
    );

    for alpha in [1.0, 0.5] {
        reports.push(
            BoundReport::new(
                format!("holder_lower_coefficient_alpha_{alpha}"),
                1.0 / (1.0 + alpha),
                false,
            )
            .with_input("alpha", alpha),
        );
        reports.push(
            BoundReport::new(
                format!("holder_upper_coefficient_alpha_{alpha}"),
                bounds::holder_upper_coefficient(alpha),
                true,
            )
            .with_input("alpha", alpha),
        );
    }

    for k in 1..=5usize {
        let z = specfun::find_tau(k)?;
        reports.push(
            BoundReport::new(format!("tau_{k}"), z.root, false)
                .with_input("bracket_lo", z.lo)
                .with_input("bracket_hi", z.hi)
                .with_input("residual", z.residual),
        );
    }

    let mut table = Table::new(&["name", "value", "strict"]);
    for r in &reports {
        table.push(vec![
            Cell::Str(r.name.clone()),
            Cell::Num(r.value),
            Cell::Str(r.strict.to_string()),
        ]);
    }
    Ok(ConstantsOutput { reports, table })
}
