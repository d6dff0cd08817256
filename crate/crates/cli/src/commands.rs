//! One function per subcommand. Each renders its complete output before
//! anything is written, so a failing command leaves no partial table.

use std::path::{Path, PathBuf};

use sectorts::{
    align, ccf, cor_test, decompose, error_table, fit_ols, window, Component, CrossCorrelogram, ForecastOptions,
    MonthWindow, MonthlySeries, UnitHint,
};

use crate::config::AnalysisConfig;
use crate::error::Result;
use crate::render::{fixed, full, p_value, significant, significant_trimmed, Align, Format, Table};

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Context {
    pub config: AnalysisConfig,
    pub format: Format,
    pub raw: bool,
    /// Months to analyse. Components are still computed from the full series.
    pub window: Option<MonthWindow>,
}

/// Rendered result: text for standard output plus files to create.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
}

impl Context {
    fn restrict(&self, s: MonthlySeries) -> Result<MonthlySeries> {
        Ok(match self.window {
            Some(w) => window(&s, w)?,
            None => s,
        })
    }

    fn component(&self, name: &str, which: Component) -> Result<MonthlySeries> {
        let series = self.config.load_series(name)?;
        let picked = match which {
            Component::Aggregate => series,
            other => decompose(&series)?.component(other),
        };
        self.restrict(picked)
    }

    /// Formats an observation of a series with the given unit hint.
    /// Aggregates print as integers for both integer and one-decimal data.
    fn value(&self, v: Option<f64>, unit: UnitHint, aggregate: bool) -> String {
        let Some(v) = v else { return String::new() };
        match (self.raw, unit) {
            (true, _) | (_, UnitHint::Raw) => full(v),
            (false, UnitHint::Integer) => fixed(v, 0),
            (false, UnitHint::OneDecimal) => fixed(v, if aggregate { 0 } else { 1 }),
        }
    }

    fn number(&self, v: f64, shown: impl FnOnce(f64) -> String) -> String {
        if self.raw {
            full(v)
        } else {
            shown(v)
        }
    }

    fn title(&self, text: String) -> String {
        if self.format == Format::Table {
            format!("{text}\n\n")
        } else {
            String::new()
        }
    }
}

fn param_table() -> Table {
    Table::new(&[("Parameter", Align::Left), ("Value", Align::Right)])
}

pub fn decompose_cmd(ctx: &Context, name: &str) -> Result<String> {
    let series = ctx.config.load_series(name)?;
    let d = decompose(&series)?;
    let unit = series.unit_hint();
    let seasonal = d.seasonal_series();
    let shown = ctx.restrict(series.clone())?;

    let mut t = Table::new(&[
        ("Year", Align::Right),
        ("Month", Align::Left),
        ("Aggregate", Align::Right),
        ("Trend", Align::Right),
        ("Seasonal", Align::Right),
        ("Random", Align::Right),
    ]);
    for (month, value) in shown.iter() {
        t.push(vec![
            month.year().to_string(),
            month.month_name().to_string(),
            ctx.value(value, unit, true),
            ctx.value(d.trend.get(month), unit, false),
            ctx.value(seasonal.get(month), unit, false),
            ctx.value(d.random.get(month), unit, false),
        ]);
    }
    let head = ctx.title(format!("{}: additive decomposition, {}", series.label(), shown.span()));
    Ok(head + &t.render(ctx.format))
}

pub fn correlate_cmd(ctx: &Context, x: &str, y: &str, which: Component) -> Result<String> {
    let (sx, sy) = (ctx.component(x, which)?, ctx.component(y, which)?);
    let pair = align(&sx, &sy)?;
    let test = cor_test(&pair)?;

    let mut t = param_table();
    let stat = if test.t.is_infinite() {
        if test.t > 0.0 { "Inf" } else { "-Inf" }.to_string()
    } else {
        ctx.number(test.t, |v| significant_trimmed(v, 5))
    };
    t.push(vec!["t-statistic".into(), stat]);
    t.push(vec!["Degrees of freedom (df)".into(), test.df.to_string()]);
    t.push(vec!["Significance value (p-value)".into(), ctx.number(test.p, p_value)]);
    t.push(vec![
        "Correlation coefficient".into(),
        ctx.number(test.r, |v| significant_trimmed(v, 7)),
    ]);

    let head = ctx.title(format!(
        "Correlation test: {} vs {} ({}, {} to {}, n = {})",
        ctx.config.dataset(x)?.label,
        ctx.config.dataset(y)?.label,
        which,
        pair.first_month(),
        pair.last_month(),
        test.n
    ));
    Ok(head + &t.render(ctx.format))
}

pub fn ccf_cmd(ctx: &Context, x: &str, y: &str, which: Component, max_lag: Option<usize>) -> Result<String> {
    let (sx, sy) = (ctx.component(x, which)?, ctx.component(y, which)?);
    let pair = align(&sx, &sy)?;
    let g = ccf(&pair, max_lag.unwrap_or(ctx.config.max_lag))?;

    let mut t = Table::new(&[
        ("Lag (months)", Align::Right),
        ("Lag (years)", Align::Right),
        ("Correlation", Align::Right),
    ]);
    for (lag, r) in g.iter() {
        t.push(vec![
            lag.to_string(),
            fixed(CrossCorrelogram::lag_year_fraction(lag), 3),
            ctx.number(r, |v| fixed(v, 4)),
        ]);
    }
    let mut out = ctx.title(format!(
        "Cross-correlation: {} shifted by lag vs {} ({}, n = {})",
        ctx.config.dataset(x)?.label,
        ctx.config.dataset(y)?.label,
        which,
        pair.len()
    ));
    out += &t.render(ctx.format);
    if ctx.format == Format::Table {
        let (lag, r) = g.peak();
        let mirror = g.at(-lag).expect("lag within range");
        out += &format!(
            "\nPeak |r| = {} at lag {lag} months ({} years); r at lag {} = {}\n",
            ctx.number(r, |v| fixed(v, 4)),
            fixed(CrossCorrelogram::lag_year_fraction(lag), 3),
            -lag,
            ctx.number(mirror, |v| fixed(v, 4)),
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FitArgs {
    pub train: Option<MonthWindow>,
    pub test: Option<MonthWindow>,
    pub options: ForecastOptions,
}

pub fn fit_cmd(ctx: &Context, dependent: &str, independent: &str, args: FitArgs) -> Result<String> {
    let dep = ctx.restrict(ctx.config.load_series(dependent)?)?;
    let ind = ctx.restrict(ctx.config.load_series(independent)?)?;
    let train = args.train.unwrap_or(ctx.config.default_train);
    let test = args.test.unwrap_or(ctx.config.default_test);
    let model = fit_ols(&dep, &ind, train)?;
    let table = error_table(&model, &dep, &ind, test, args.options)?;
    let shown = if args.options.published_coefficients {
        model.with_published_coefficients()
    } else {
        model.clone()
    };

    let mut summary = param_table();
    summary.push(vec![
        "Constant term in the regression model".into(),
        ctx.number(shown.intercept, |v| fixed(v, 2)),
    ]);
    summary.push(vec![
        format!("Coefficient of the {}", model.independent),
        ctx.number(shown.slope, |v| significant(v, 4)),
    ]);
    summary.push(vec![
        "Residual standard error".into(),
        format!(
            "{} on {} degrees of freedom",
            ctx.number(model.rse, |v| significant(v, 4)),
            model.df
        ),
    ]);
    summary.push(vec![
        "Multiple R-squared".into(),
        ctx.number(model.r_squared, |v| significant(v, 4)),
    ]);
    summary.push(vec![
        "Adjusted R-squared".into(),
        ctx.number(model.adj_r_squared, |v| significant(v, 4)),
    ]);

    let error_header = if args.options.signed_errors {
        "Signed error %"
    } else {
        "Error %"
    };
    let mut rows = Table::new(&[
        ("Year", Align::Right),
        ("Month", Align::Left),
        ("Actual (A)", Align::Right),
        ("Predictor (B)", Align::Right),
        ("B * coefficient (C)", Align::Right),
        ("Intercept (D)", Align::Right),
        ("Forecast E = C + D", Align::Right),
        (error_header, Align::Right),
    ]);
    for r in &table.rows {
        rows.push(vec![
            r.month.year().to_string(),
            r.month.month_name().to_string(),
            ctx.value(Some(r.actual), dep.unit_hint(), true),
            ctx.value(Some(r.predictor), ind.unit_hint(), true),
            ctx.number(r.contribution, |v| fixed(v, 2)),
            ctx.number(r.intercept_term, |v| fixed(v, 2)),
            ctx.number(r.forecast, |v| fixed(v, 0)),
            ctx.number(r.percent_error, |v| fixed(v, 2)),
        ]);
    }

    let mut out = ctx.title(format!(
        "Linear model: {} ~ {}, trained on {} (n = {})",
        model.dependent, model.independent, model.train_window, model.n
    ));
    out += &summary.render(ctx.format);
    out.push('\n');
    out += &ctx.title(format!("Forecasts for {test}"));
    out += &rows.render(ctx.format);
    if ctx.format == Format::Table {
        out += &format!(
            "\nMean percent error: {}\n",
            ctx.number(table.mean_percent_error, |v| fixed(v, 2))
        );
    }
    Ok(out)
}

/// Writes `<out>/<name>.tsv` per dataset: `YYYY-MM<TAB>value`, value
/// multiplied by the dataset's plot scale, unobserved months omitted.
pub fn export_plot_data_cmd(ctx: &Context, names: &[String], which: Component, out: &Path) -> Result<Output> {
    let names: Vec<String> = if names.is_empty() {
        ctx.config.datasets.iter().map(|d| d.name.clone()).collect()
    } else {
        names.to_vec()
    };
    let mut result = Output::default();
    for name in &names {
        let spec = ctx.config.dataset(name)?;
        let series = ctx.component(name, which)?;
        let mut text = String::new();
        let mut count = 0;
        for (month, v) in series.observations() {
            text += &format!("{month}\t{}\n", full(v * spec.plot_scale));
            count += 1;
        }
        let path = out.join(format!("{name}.tsv"));
        result.stdout += &format!("{}\t{count} rows\n", path.display());
        result.files.push((path, text));
    }
    Ok(result)
}
