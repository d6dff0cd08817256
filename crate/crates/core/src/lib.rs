//! Analysis toolkit for monthly financial index series.
//!
//! The pipeline runs in four stages:
//!
//! * [`series`]: the monthly data model, text/CSV ingestion, daily to
//!   monthly averaging, windowing and pairing of two series.
//! * [`decomposition`]: classical additive decomposition into trend,
//!   seasonal and random components.
//! * [`association`]: Pearson correlation tests with Student-t p-values and
//!   the cross-correlation function over month lags.
//! * [`regression`]: one-predictor least squares, forecasts over a test
//!   window and percent-error tables.

pub mod association;
pub mod decomposition;
pub mod error;
pub mod regression;
pub mod series;
pub mod special;

pub use association::{ccf, cor_test, pearson_r, student_t_sf, CorrelationTest, CrossCorrelogram, DEFAULT_MAX_LAG};
pub use decomposition::{centered_ma_trend, decompose, seasonal_figures, Component, Decomposition, SeasonalFigures};
pub use error::{Error, Result};
pub use regression::{
    error_table, fit_ols, forecast, reciprocal_fit_check, ForecastOptions, ForecastRow, ForecastTable,
    LinearModelSummary,
};
pub use series::{
    aggregate_daily_to_monthly, align, parse_daily_csv, parse_monthly, window, AlignedPair, DailyRecord, MonthStamp,
    MonthWindow, MonthlySeries, UnitHint,
};
