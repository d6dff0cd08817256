//! Simple least-squares regression between two monthly series, forecasting
//! and percent-error tables.

use crate::error::{Error, Result};
use crate::series::{align, window, AlignedPair, MonthStamp, MonthWindow, MonthlySeries};

/// Summary of a one-predictor least-squares fit.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModelSummary {
    pub intercept: f64,
    pub slope: f64,
    /// Residual standard error, `sqrt(RSS / (n - 2))`.
    pub rse: f64,
    pub df: u64,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub n: usize,
    /// First and last month of the paired training sample.
    pub train_window: MonthWindow,
    pub dependent: String,
    pub independent: String,
}

impl LinearModelSummary {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    /// The coefficients as a summary table prints them: slope to four
    /// significant digits, intercept to two decimals. The other statistics
    /// are left untouched.
    pub fn with_published_coefficients(&self) -> Self {
        Self {
            intercept: round_decimals(self.intercept, 2),
            slope: round_significant(self.slope, 4),
            ..self.clone()
        }
    }
}

/// How the coefficients and forecasts of an error table are rounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ForecastOptions {
    /// Forecast with the coefficients rounded as a summary table prints them.
    pub published_coefficients: bool,
    /// Round each predictor value to an integer before use.
    pub round_predictor: bool,
    /// Round each forecast to an integer before computing its error.
    pub round_forecast: bool,
    /// Report `(E - A) / A * 100` instead of its magnitude.
    pub signed_errors: bool,
}

/// One test month: actual `A`, predictor `B`, `C = B * slope`,
/// intercept `D`, forecast `E = C + D` and the percent error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForecastRow {
    pub month: MonthStamp,
    pub actual: f64,
    pub predictor: f64,
    pub contribution: f64,
    pub intercept_term: f64,
    pub forecast: f64,
    pub percent_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForecastTable {
    pub model: LinearModelSummary,
    pub rows: Vec<ForecastRow>,
    pub mean_percent_error: f64,
    pub options: ForecastOptions,
}

/// Rounds to `digits` significant digits.
pub fn round_significant(v: f64, digits: i32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let magnitude = v.abs().log10().floor() as i32;
    round_decimals(v, digits - 1 - magnitude)
}

/// Rounds to `decimals` places (negative values round to tens, hundreds, ...).
pub fn round_decimals(v: f64, decimals: i32) -> f64 {
    if decimals >= 0 {
        let scale = 10f64.powi(decimals);
        (v * scale).round() / scale
    } else {
        let scale = 10f64.powi(-decimals);
        (v / scale).round() * scale
    }
}

fn training_pair(dependent: &MonthlySeries, independent: &MonthlySeries, train: MonthWindow) -> Result<AlignedPair> {
    let y = window(dependent, train)?;
    let x = window(independent, train)?;
    match align(&x, &y) {
        Err(Error::InsufficientOverlap { found }) => Err(Error::InsufficientData(found)),
        other => other,
    }
}

/// Least-squares fit of `dependent ~ independent` over the months of `train`
/// where both are observed.
///
/// `R^2` is computed as `sxy^2 / (sxx * syy)`, which is symmetric in the two
/// roles.
pub fn fit_ols(
    dependent: &MonthlySeries,
    independent: &MonthlySeries,
    train: MonthWindow,
) -> Result<LinearModelSummary> {
    let pair = training_pair(dependent, independent, train)?;
    let (x, y) = (pair.x(), pair.y());
    let n = pair.len();
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (xi, yi) in x.iter().zip(y) {
        let (dx, dy) = (xi - mx, yi - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| {
            let e = yi - intercept - slope * xi;
            e * e
        })
        .sum();
    let df = (n - 2) as u64;
    let r_squared = ((sxy * sxy) / (sxx * syy)).min(1.0);
    let adj_r_squared = 1.0 - (1.0 - r_squared) * (nf - 1.0) / (nf - 2.0);
    Ok(LinearModelSummary {
        intercept,
        slope,
        rse: (rss / df as f64).sqrt(),
        df,
        r_squared,
        adj_r_squared,
        n,
        train_window: MonthWindow {
            from: pair.first_month(),
            to: pair.last_month(),
        },
        dependent: dependent.label().to_string(),
        independent: independent.label().to_string(),
    })
}

/// `intercept + slope * x_t` for every month of `test`.
pub fn forecast(
    model: &LinearModelSummary,
    independent: &MonthlySeries,
    test: MonthWindow,
) -> Result<Vec<(MonthStamp, f64)>> {
    (0..test.month_count())
        .map(|i| {
            let month = test.from.offset(i as i64);
            let x = independent.get(month).ok_or(Error::MissingPredictor(month))?;
            Ok((month, model.predict(x)))
        })
        .collect()
}

/// Forecasts over `test` and compares against the dependent series.
pub fn error_table(
    model: &LinearModelSummary,
    dependent: &MonthlySeries,
    independent: &MonthlySeries,
    test: MonthWindow,
    options: ForecastOptions,
) -> Result<ForecastTable> {
    let coefficients = if options.published_coefficients {
        model.with_published_coefficients()
    } else {
        model.clone()
    };
    let mut rows = Vec::with_capacity(test.month_count());
    for i in 0..test.month_count() {
        let month = test.from.offset(i as i64);
        let mut predictor = independent.get(month).ok_or(Error::MissingPredictor(month))?;
        let actual = dependent.get(month).ok_or(Error::UnexpectedMissing(month))?;
        if actual == 0.0 {
            return Err(Error::DivisionByZero(month));
        }
        if options.round_predictor {
            predictor = predictor.round();
        }
        let contribution = predictor * coefficients.slope;
        let intercept_term = coefficients.intercept;
        let mut forecast = contribution + intercept_term;
        if options.round_forecast {
            forecast = forecast.round();
        }
        let signed = (forecast - actual) / actual * 100.0;
        let percent_error = if options.signed_errors {
            signed
        } else {
            (forecast - actual).abs() / actual.abs() * 100.0
        };
        rows.push(ForecastRow {
            month,
            actual,
            predictor,
            contribution,
            intercept_term,
            forecast,
            percent_error,
        });
    }
    let mean_percent_error = rows.iter().map(|r| r.percent_error).sum::<f64>() / rows.len() as f64;
    Ok(ForecastTable {
        model: model.clone(),
        rows,
        mean_percent_error,
        options,
    })
}

/// `slope(y ~ x) * slope(x ~ y)`, which equals the shared `R^2` of the two fits.
pub fn reciprocal_fit_check(m_xy: &LinearModelSummary, m_yx: &LinearModelSummary) -> Result<f64> {
    let swapped = m_xy.dependent == m_yx.independent && m_xy.independent == m_yx.dependent;
    if m_xy.train_window != m_yx.train_window || m_xy.n != m_yx.n || !swapped {
        return Err(Error::WindowMismatch);
    }
    Ok(m_xy.slope * m_yx.slope)
}
