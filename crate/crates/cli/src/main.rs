use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mzi_parity::Variant;
use mzi_parity_cli::config::SweepConfig;
use mzi_parity_cli::figures::{figure_data, write_figure, FigureId};
use mzi_parity_cli::sweep::run_scenario_sweep;
use mzi_parity_cli::verify::{verify_consistency, Suite};

/// Parity-detection phase estimation: sweeps, figure data and self-checks.
#[derive(Parser)]
#[command(name = "mzi-parity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Literal,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario over one axis and write sweep.csv and sweep.json.
    Sweep {
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Run the Fock-space oracle alongside every row.
        #[arg(long)]
        verify: bool,
        /// Small-phase formula used for the φ → 0 limit.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// Write the data files of one figure panel.
    Figure {
        /// fig1a, fig1b, fig2a, fig2b, fig3a, fig3b, fig4a, fig4b, fig5, fig6 or fig7.
        id: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Also write a gnuplot script.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Run a consistency suite; exit status 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        suite: SuiteArg,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn sweep(path: &Path, out: &Path, verify: bool, variant: Option<VariantArg>) -> Result<ExitCode> {
    let mut config = SweepConfig::from_file(path)?;
    config.verify |= verify;
    if let Some(v) = variant {
        config.variant = match v {
            VariantArg::Literal => Variant::Literal,
            VariantArg::Series => Variant::SeriesConsistent,
        };
    }
    let table = run_scenario_sweep(&config)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let csv_path = out.join("sweep.csv");
    let file = fs::File::create(&csv_path).with_context(|| format!("creating {}", csv_path.display()))?;
    table.write_csv(std::io::BufWriter::new(file))?;

    let manifest = serde_json::json!({
        "code_version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "rows": table.rows.len(),
        "failed_rows": table.failures(),
    });
    let json_path = out.join("sweep.json");
    fs::write(&json_path, serde_json::to_string_pretty(&manifest)? + "\n")
        .with_context(|| format!("writing {}", json_path.display()))?;

    let failures = table.failures();
    eprintln!("wrote {} rows to {}", table.rows.len(), csv_path.display());
    if let Some((p, q)) = table.max_residuals() {
        eprintln!("max oracle residuals: parity {p:e}, qfi {q:e}");
    }
    if failures > 0 {
        eprintln!("{failures} row(s) failed; see the error column");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn figure(id: &str, out: &Path, gnuplot: bool) -> Result<ExitCode> {
    let id: FigureId = id.parse()?;
    let data = figure_data(id)?;
    for path in write_figure(&data, out, gnuplot)? {
        eprintln!("wrote {}", path.display());
    }
    let failures = data.hard_failures();
    if failures > 0 {
        eprintln!("{failures} row(s) failed; see the error column");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(suite: SuiteArg, json: Option<&Path>) -> Result<ExitCode> {
    let suite = match suite {
        SuiteArg::Quick => Suite::Quick,
        SuiteArg::Full => Suite::Full,
    };
    let report = verify_consistency(suite)?;
    let text = serde_json::to_string_pretty(&report)? + "\n";
    print!("{text}");
    if let Some(path) = json {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    for c in &report.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        eprintln!("{status} {} (max residual {:e} at {})", c.name, c.max_residual, c.worst_point);
    }
    for f in &report.findings {
        eprintln!("finding {}: {}", f.name, f.summary);
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep {
            config,
            out,
            verify,
            variant,
        } => sweep(config, out, *verify, *variant),
        Command::Figure { id, out, gnuplot } => figure(id, out, *gnuplot),
        Command::Verify { suite, json } => verify(*suite, json.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
