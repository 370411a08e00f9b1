//! Library behind the `vp-approx` binary: JSON config in, deterministic
//! CSV/JSON tables and optional SVG plots out.

pub mod cmd;
pub mod config;
pub mod plot;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;

use crate::config::{CommandName, OutputFormat, RunConfig};
use crate::plot::Chart;
use crate::table::Table;

/// What a command produced and how the process should exit.
pub struct CommandResult {
    pub table: Table,
    /// When set, JSON output uses this document instead of the table rows.
    pub json_override: Option<serde_json::Value>,
    pub charts: Vec<Chart>,
    pub exit_code: i32,
}

pub fn execute(command: CommandName, cfg: &RunConfig) -> anyhow::Result<CommandResult> {
    match command {
        CommandName::Verify => {
            let report = cmd::verify::run_verify(&cfg.quadrature)?;
            report.print_lines();
            Ok(CommandResult {
                table: report.to_table(),
                json_override: None,
                charts: Vec::new(),
                exit_code: report.exit_code(),
            })
        }
        CommandName::Approximate => {
            require(
                !cfg.functions.is_empty(),
                "functions: must be nonempty for approximate",
            )?;
            require(
                !cfg.n_values.is_empty(),
                "n_values: must be nonempty for approximate",
            )?;
            let out = cmd::approximate::run_approximate(cfg)?;
            Ok(CommandResult {
                table: out.table,
                json_override: None,
                charts: out.charts,
                exit_code: 0,
            })
        }
        CommandName::Bounds => {
            require(
                !cfg.functions.is_empty(),
                "functions: must be nonempty for bounds",
            )?;
            require(
                !cfg.n_values.is_empty(),
                "n_values: must be nonempty for bounds",
            )?;
            let out = cmd::bounds::run_bounds(cfg)?;
            Ok(CommandResult {
                table: out.table,
                json_override: None,
                charts: Vec::new(),
                exit_code: if out.violations > 0 { 1 } else { 0 },
            })
        }
        CommandName::Holder => {
            require(
                !cfg.n_values.is_empty(),
                "n_values: must be nonempty for holder",
            )?;
            let out = cmd::holder::run_holder(cfg)?;
            Ok(CommandResult {
                table: out.table,
                json_override: None,
                charts: Vec::new(),
                exit_code: if out.violations > 0 { 1 } else { 0 },
            })
        }
        CommandName::Constants => {
            let out = cmd::constants::run_constants(&cfg.quadrature)?;
            let json = serde_json::to_value(&out.reports)?;
            Ok(CommandResult {
                table: out.table,
                json_override: Some(json),
                charts: Vec::new(),
                exit_code: 0,
            })
        }
    }
}

fn require(ok: bool, message: &str) -> anyhow::Result<()> {
    if ok {
        Ok(())
    } else {
        anyhow::bail!("{message}")
    }
}

/// Writes the table to `path` (or stdout when absent) in the configured format.
pub fn write_result(
    result: &CommandResult,
    format: OutputFormat,
    path: Option<&Path>,
) -> anyhow::Result<()> {
    let mut sink: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    match (format, &result.json_override) {
        (OutputFormat::Csv, _) => result.table.write_csv(&mut sink)?,
        (OutputFormat::Json, Some(doc)) => {
            sink.write_all(serde_json::to_string_pretty(doc)?.as_bytes())?;
            writeln!(sink)?;
        }
        (OutputFormat::Json, None) => result.table.write_json(&mut sink)?,
    }
    Ok(())
}

pub fn write_plot(result: &CommandResult, path: &Path) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    plot::write_svg(BufWriter::new(file), &result.charts)?;
    Ok(())
}
