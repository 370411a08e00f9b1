//! Tabulates f, V_{n,p}(f) and the deviation ρ over the corpus.

use std::f64::consts::TAU;

use vp_core::deviation;
use vp_core::trigsum;

use crate::cmd::resolve_functions;
use crate::config::RunConfig;
use crate::plot::Chart;
use crate::table::{Cell, Table};

const TABLE_POINTS: usize = 256;

pub struct ApproximateOutput {
    pub table: Table,
    pub charts: Vec<Chart>,
}

pub fn run_approximate(cfg: &RunConfig) -> Result<ApproximateOutput, vp_core::Error> {
    let functions = resolve_functions(cfg)?;
    let pairs = cfg.pairs();
    let mut table = Table::new(&["function", "n", "p", "x", "f", "vp", "rho", "sup_abs"]);
    let mut charts = Vec::new();
    for rf in &functions {
        for &(n, p) in &pairs {
            let sample = deviation::sup_deviation(&rf.f, &rf.coeffs, n, p, 512, None)?;
            let mut xs = Vec::with_capacity(TABLE_POINTS);
            let mut f_values = Vec::with_capacity(TABLE_POINTS);
            let mut vp_values = Vec::with_capacity(TABLE_POINTS);
            for i in 0..TABLE_POINTS {
                let x = TAU * i as f64 / TABLE_POINTS as f64;
                let fx = rf.f.eval(x);
                let vx = trigsum::vp_sum(&rf.coeffs, n, p, x)?;
                table.push(vec![
                    Cell::Str(rf.spec.describe()),
                    Cell::Int(n as i64),
                    Cell::Int(p as i64),
                    Cell::Num(x),
                    Cell::Num(fx),
                    Cell::Num(vx),
                    Cell::Num(fx - vx),
                    Cell::Num(sample.sup_abs),
                ]);
                xs.push(x);
                f_values.push(fx);
                vp_values.push(vx);
            }
            charts.push(Chart {
                title: format!(
                    "{}  n={n} p={p}  sup|rho|={:.3e}",
                    rf.spec.describe(),
                    sample.sup_abs
                ),
                xs,
                f_values,
                vp_values,
            });
        }
    }
    Ok(ApproximateOutput { table, charts })
}
