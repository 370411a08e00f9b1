use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vp_cli::config::{CommandName, RunConfig};

/// Exit codes: 0 all checks pass, 1 inequality violation, 2 inconclusive,
/// 3 usage or config error.
#[derive(Parser)]
#[command(
    name = "vp-approx",
    version,
    about = "de la Vallée Poussin approximation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output path (defaults to the config's output.path, then stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot path (defaults to the config's output.plot).
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Optional JSON run configuration (only the quadrature block is used).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate f, V_{n,p}(f) and the deviation over the corpus.
    Approximate(CommonArgs),
    /// Measured sup-deviations against every applicable bound.
    Bounds(CommonArgs),
    /// The named closed-form constants, recomputed from their formulas.
    Constants(VerifyArgs),
    /// Two-sided Hölder-class estimates over an alpha grid.
    Holder(CommonArgs),
    /// Recompute and check every numeric constant of the estimate chain.
    Verify(VerifyArgs),
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap would exit 2; keep 2 reserved for inconclusive results
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    let (name, config_path, out, plot) = match &cli.command {
        Command::Approximate(a) => (
            CommandName::Approximate,
            Some(a.config.clone()),
            a.out.clone(),
            a.plot.clone(),
        ),
        Command::Bounds(a) => (
            CommandName::Bounds,
            Some(a.config.clone()),
            a.out.clone(),
            a.plot.clone(),
        ),
        Command::Holder(a) => (
            CommandName::Holder,
            Some(a.config.clone()),
            a.out.clone(),
            a.plot.clone(),
        ),
        Command::Constants(a) => (
            CommandName::Constants,
            a.config.clone(),
            a.out.clone(),
            None,
        ),
        Command::Verify(a) => (CommandName::Verify, a.config.clone(), a.out.clone(), None),
    };

    let cfg = match &config_path {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("config error: {e}");
                return 3;
            }
        },
        None => RunConfig::default(),
    };
    if let Some(declared) = cfg.command {
        if declared != name {
            eprintln!(
                "config error: command: config declares '{}' but '{}' was invoked",
                declared.as_str(),
                name.as_str()
            );
            return 3;
        }
    }

    let result = match vp_cli::execute(name, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };

    let out_path = out.or_else(|| cfg.output.path.clone());
    // verify already printed its per-item lines; only persist the table when
    // a destination was asked for
    if !(name == CommandName::Verify && out_path.is_none()) {
        if let Err(e) = vp_cli::write_result(&result, cfg.output.format, out_path.as_deref()) {
            eprintln!("output error: {e}");
            return 3;
        }
    }
    let plot_path = plot.or_else(|| cfg.output.plot.clone());
    if let Some(p) = plot_path {
        if result.charts.is_empty() {
            eprintln!("note: no charts for this command; plot not written");
        } else if let Err(e) = vp_cli::write_plot(&result, &p) {
            eprintln!("plot error: {e}");
            return 3;
        }
    }
    result.exit_code
}

fn main() -> ExitCode {
    ExitCode::from(u8::try_from(run()).unwrap_or(3))
}
