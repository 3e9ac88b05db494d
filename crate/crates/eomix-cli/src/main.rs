//! Command-line front end: each verb reads a config file, applies `--set`
//! overrides, validates, runs one slice of the toolkit and writes CSV files
//! into the output directory. Diagnostics go to stderr; data only to files.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eomix::config::{DesignConfig, Severity};
use eomix::csvio::Table;
use eomix::error::Error;

mod verbs;

#[derive(Parser)]
#[command(
    name = "eomix",
    about = "Design toolkit for electro-optic microwave-to-optical transducers \
             built from coupled ring resonators",
    version
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Common {
    /// Path to the key = value config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV files (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override config keys, e.g. --set coupler.bias_v=0.5 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Doublet tuning: phase, splitting and the bias that matches the
    /// microwave frequency.
    Tune(Common),
    /// Solve the electrode cross-section; emit a summary and the field map.
    Fields(Common),
    /// Conversion-rate design curve versus ring FSR.
    Gfactor(Common),
    /// Closed-system three-mode trajectory.
    Dynamics(Common),
    /// Open-system conversion point: efficiency, powers, transfer rows.
    Convert(Common),
    /// Sweep one config variable through the full pipeline.
    Sweep(Common),
    /// Quasiparticle-limited microwave Q versus absorbed power.
    Qp(Common),
    /// Full design pipeline report.
    Pipeline(Common),
}

fn load_config(common: &Common) -> Result<DesignConfig, Error> {
    let text = std::fs::read_to_string(&common.config)?;
    let mut config = DesignConfig::parse(&text)?;
    for kv in &common.sets {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set `{kv}`: expected KEY=VALUE")))?;
        config.set_path(key.trim(), value.trim())?;
    }
    Ok(config)
}

/// Print diagnostics to stderr; error out if any are fatal.
fn report_diagnostics(config: &DesignConfig, strict: bool) -> Result<(), Error> {
    let diags = config.validate();
    let mut fatal = 0;
    for d in &diags {
        if strict || d.severity == Severity::Warning {
            eprintln!("{d}");
        }
        if d.severity == Severity::Error {
            fatal += 1;
        }
    }
    if strict && fatal > 0 {
        return Err(Error::Config(format!(
            "{fatal} configuration error(s); see diagnostics above"
        )));
    }
    Ok(())
}

fn write_table(out_dir: &Path, name: &str, table: &Table) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(name);
    let mut file = std::fs::File::create(&path)?;
    table.write(&mut file)?;
    eprintln!("wrote {}", path.display());
    Ok(path)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.verb {
        Verb::Tune(c) => {
            let config = load_config(&c)?;
            let table = verbs::tune(&config)?;
            write_table(&c.out, "tune.csv", &table)?;
            Ok(())
        }
        Verb::Fields(c) => {
            let config = load_config(&c)?;
            let (summary, map) = verbs::fields(&config)?;
            write_table(&c.out, "fields_summary.csv", &summary)?;
            write_table(&c.out, "field_map.csv", &map)?;
            Ok(())
        }
        Verb::Gfactor(c) => {
            let config = load_config(&c)?;
            let table = verbs::gfactor(&config)?;
            write_table(&c.out, "gfactor.csv", &table)?;
            Ok(())
        }
        Verb::Dynamics(c) => {
            let config = load_config(&c)?;
            let table = verbs::dynamics(&config)?;
            write_table(&c.out, "dynamics.csv", &table)?;
            Ok(())
        }
        Verb::Convert(c) => {
            let config = load_config(&c)?;
            report_diagnostics(&config, false)?;
            let (point, transfer) = verbs::convert(&config)?;
            write_table(&c.out, "convert.csv", &point)?;
            write_table(&c.out, "transfer.csv", &transfer)?;
            Ok(())
        }
        Verb::Sweep(c) => {
            let config = load_config(&c)?;
            report_diagnostics(&config, true)?;
            let table = verbs::sweep(&config)?;
            write_table(&c.out, "sweep.csv", &table)?;
            Ok(())
        }
        Verb::Qp(c) => {
            let config = load_config(&c)?;
            let table = verbs::qp(&config)?;
            write_table(&c.out, "qp.csv", &table)?;
            Ok(())
        }
        Verb::Pipeline(c) => {
            let config = load_config(&c)?;
            report_diagnostics(&config, true)?;
            let report = eomix::pipeline::run_pipeline(&config)?;
            write_table(&c.out, "pipeline.csv", &report.table())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
