//! Command-line front end for `sectorts`.
//!
//! `sectorts decompose it`, `sectorts correlate it djia`, `sectorts ccf cg
//! nifty --component seasonal`, `sectorts fit it --on djia` and
//! `sectorts export-plot-data --out plots`.

pub mod commands;
pub mod config;
pub mod error;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use sectorts::{Component, ForecastOptions, MonthWindow};

pub use commands::{Context, Output};
pub use config::AnalysisConfig;
pub use error::{CliError, Result};
use render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "sectorts",
    version,
    about = "Decompose, correlate and regress monthly index series"
)]
pub struct Cli {
    /// Dataset registry (TOML). Defaults to the bundled datasets.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Restrict the analysed months, e.g. 2009-01:2014-12
    #[arg(long, global = true, value_name = "FROM:TO")]
    pub window: Option<MonthWindow>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Print full-precision numbers instead of display rounding
    #[arg(long, global = true)]
    pub raw: bool,

    /// Write output to this file (a directory for export-plot-data)
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trend, seasonal and random components of one dataset
    Decompose { dataset: String },

    /// Pearson correlation test between two datasets
    Correlate {
        x: String,
        y: String,
        #[arg(long, default_value = "aggregate")]
        component: Component,
    },

    /// Cross-correlation of x shifted by each lag against y
    Ccf {
        x: String,
        y: String,
        #[arg(long, default_value = "aggregate")]
        component: Component,
        /// Largest lag in months [default: from config, else 24]
        #[arg(long)]
        max_lag: Option<usize>,
    },

    /// Least-squares fit of DEPENDENT on another dataset, then forecasts
    Fit {
        dependent: String,
        /// Independent (predictor) dataset
        #[arg(long, value_name = "DATASET")]
        on: String,
        #[arg(long, value_name = "FROM:TO")]
        train: Option<MonthWindow>,
        #[arg(long, value_name = "FROM:TO")]
        test: Option<MonthWindow>,
        /// Report (E - A)/A * 100 instead of its magnitude
        #[arg(long)]
        signed_errors: bool,
        /// Round forecasts to integers before computing errors
        #[arg(long)]
        round_forecast: bool,
        /// Round predictor values to integers before forecasting
        #[arg(long)]
        round_predictor: bool,
        /// Forecast with unrounded coefficients instead of the printed ones
        #[arg(long)]
        full_precision: bool,
    },

    /// Write one `YYYY-MM<TAB>value` file per dataset, scaled for plotting
    ExportPlotData {
        /// Datasets to export [default: all]
        datasets: Vec<String>,
        #[arg(long, default_value = "aggregate")]
        component: Component,
    },
}

/// Runs a parsed command line. Nothing is written here; the caller prints
/// `stdout` and creates `files` only after the whole command succeeded.
pub fn run(cli: &Cli) -> Result<Output> {
    let config = match &cli.config {
        Some(path) => AnalysisConfig::load(path)?,
        None => AnalysisConfig::bundled(),
    };
    let ctx = Context {
        config,
        format: cli.format,
        raw: cli.raw,
        window: cli.window,
    };
    let text = match &cli.command {
        Command::Decompose { dataset } => commands::decompose_cmd(&ctx, dataset)?,
        Command::Correlate { x, y, component } => commands::correlate_cmd(&ctx, x, y, *component)?,
        Command::Ccf {
            x,
            y,
            component,
            max_lag,
        } => commands::ccf_cmd(&ctx, x, y, *component, *max_lag)?,
        Command::Fit {
            dependent,
            on,
            train,
            test,
            signed_errors,
            round_forecast,
            round_predictor,
            full_precision,
        } => {
            let args = commands::FitArgs {
                train: *train,
                test: *test,
                options: ForecastOptions {
                    published_coefficients: !full_precision,
                    round_predictor: *round_predictor,
                    round_forecast: *round_forecast,
                    signed_errors: *signed_errors,
                },
            };
            commands::fit_cmd(&ctx, dependent, on, args)?
        }
        Command::ExportPlotData { datasets, component } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            return commands::export_plot_data_cmd(&ctx, datasets, *component, &dir);
        }
    };
    Ok(match &cli.out {
        Some(path) => Output {
            stdout: String::new(),
            files: vec![(path.clone(), text)],
        },
        None => Output {
            stdout: text,
            files: Vec::new(),
        },
    })
}
