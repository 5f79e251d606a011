//! Experiment runner CLI.
//!
//! Exit codes: 0 all requested verdicts pass; 1 a trend verdict violated its
//! expectation; 2 configuration or I/O error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use pdolab::harness::{configure_threads, run_experiment, ExperimentId, HarnessConfig};
use pdolab::symbol::SymbolSpec;
use pdolab::Error;

#[derive(Parser)]
#[command(name = "pdolab", version, about = "Operator estimate trend laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment (or all) from a configuration file
    Run {
        /// e1..e5, or "all"
        #[arg(long)]
        experiment: String,
        /// key=value configuration file with [e1]..[e5] sections
        #[arg(long)]
        config: Option<PathBuf>,
        /// override one key: --set e1.rho=0.0 (repeatable)
        #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
        overrides: Vec<String>,
        /// output directory (env PDOLAB_OUT_DIR overrides the default)
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// worker threads for the parallel feature (0 = library default)
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Print the built-in symbol families
    ListSymbols,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::ListSymbols => {
            list_symbols();
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            experiment,
            config,
            overrides,
            out_dir,
            threads,
        } => {
            configure_threads(if threads > 0 { Some(threads) } else { None });
            let mut cfg = match &config {
                Some(path) => HarnessConfig::from_file(path)?,
                None => HarnessConfig::default(),
            };
            for spec in &overrides {
                cfg.set_override(spec)?;
            }
            let out_dir = std::env::var_os("PDOLAB_OUT_DIR")
                .map(PathBuf::from)
                .or(out_dir)
                .unwrap_or_else(|| PathBuf::from("out"));

            let ids: Vec<ExperimentId> = if experiment.eq_ignore_ascii_case("all") {
                ExperimentId::all().to_vec()
            } else {
                vec![ExperimentId::from_str(&experiment)?]
            };

            let mut all_pass = true;
            for id in ids {
                let report = run_experiment(id, &cfg)?;
                let paths = report.write_outputs(&out_dir)?;
                println!(
                    "{}: {} ({} ms) -> {}",
                    id,
                    if report.pass { "PASS" } else { "FAIL" },
                    report.runtime_ms,
                    paths[0].display()
                );
                for f in &report.failures {
                    println!("  failure: {f}");
                }
                all_pass &= report.pass;
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn list_symbols() {
    println!("built-in symbol families (selectable per experiment section):");
    println!("  bessel      a(ξ) = ⟨ξ⟩^m                      keys: m");
    println!(
        "  miyachi     a(ξ) = φ(ξ)|ξ|^m e^(i|ξ|^(1-ρ))    keys: m/m_offset, rho, cutoff_radius"
    );
    println!(
        "  x-modulated base · (1 + ε·osc_δ(x,ξ))          via symbol::make_x_dependent_symbol"
    );
    println!();
    println!("examples at the defaults:");
    for (name, sym) in [
        ("bessel(m=-1)", SymbolSpec::bessel(-1.0)),
        (
            "miyachi(m=-0.25, rho=0.5)",
            SymbolSpec::miyachi(-0.25, 0.5, 1.0).expect("valid"),
        ),
    ] {
        let v = sym.eval([0.0, 0.0], [8.0, 0.0]);
        println!("  {name}: a(ξ=8) = {:.4}{:+.4}i", v.re, v.im);
    }
}
