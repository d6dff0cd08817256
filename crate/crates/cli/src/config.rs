//! Dataset registry and analysis defaults.
//!
//! A config file is TOML:
//!
//! ```toml
//! train = "2009-01:2014-12"
//! test = "2015-01:2016-04"
//! max_lag = 24
//!
//! [[dataset]]
//! name = "usd_inr"
//! path = "data/usd_inr.txt"    # relative to the config file
//! kind = "monthly"             # or "daily" (CSV with a date,value header)
//! start = "2009-01"            # required for monthly files
//! unit = "one-decimal"         # integer | one-decimal | raw
//! plot_scale = 100.0
//! label = "USD/INR exchange rate"
//! ```
//!
//! Without a config the five bundled reference datasets are available under
//! the names `it`, `cg`, `djia`, `nifty` and `usd_inr`.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use sectorts::{
    aggregate_daily_to_monthly, parse_daily_csv, parse_monthly, MonthStamp, MonthWindow, MonthlySeries, UnitHint,
    DEFAULT_MAX_LAG,
};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DatasetKind {
    #[default]
    Monthly,
    Daily,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSource {
    File(PathBuf),
    Bundled(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub name: String,
    pub source: DatasetSource,
    pub kind: DatasetKind,
    pub start: Option<MonthStamp>,
    pub unit_hint: UnitHint,
    pub plot_scale: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub datasets: Vec<DatasetSpec>,
    pub default_train: MonthWindow,
    pub default_test: MonthWindow,
    pub max_lag: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    train: Option<String>,
    test: Option<String>,
    max_lag: Option<usize>,
    #[serde(default)]
    dataset: Vec<RawDataset>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    name: String,
    path: PathBuf,
    #[serde(default)]
    kind: DatasetKind,
    start: Option<String>,
    unit: Option<String>,
    plot_scale: Option<f64>,
    label: Option<String>,
}

const BUNDLED: [(&str, &str, UnitHint, f64, &str); 5] = [
    (
        "it",
        "IT sector index",
        UnitHint::Integer,
        1.0,
        include_str!("../../core/fixtures/it.txt"),
    ),
    (
        "cg",
        "CG sector index",
        UnitHint::Integer,
        1.0,
        include_str!("../../core/fixtures/cg.txt"),
    ),
    (
        "djia",
        "DJIA index",
        UnitHint::Integer,
        1.0,
        include_str!("../../core/fixtures/djia.txt"),
    ),
    (
        "nifty",
        "NIFTY index",
        UnitHint::Integer,
        1.0,
        include_str!("../../core/fixtures/nifty.txt"),
    ),
    (
        "usd_inr",
        "USD/INR exchange rate",
        UnitHint::OneDecimal,
        100.0,
        include_str!("../../core/fixtures/usd_inr.txt"),
    ),
];

fn month(y: i32, m: u32) -> MonthStamp {
    MonthStamp::new(y, m).expect("valid constant month")
}

fn default_train() -> MonthWindow {
    MonthWindow {
        from: month(2009, 1),
        to: month(2014, 12),
    }
}

fn default_test() -> MonthWindow {
    MonthWindow {
        from: month(2015, 1),
        to: month(2016, 4),
    }
}

impl AnalysisConfig {
    /// The bundled datasets, monthly from January 2009.
    pub fn bundled() -> Self {
        let datasets = BUNDLED
            .iter()
            .map(|&(name, label, unit_hint, plot_scale, text)| DatasetSpec {
                name: name.to_string(),
                source: DatasetSource::Bundled(text),
                kind: DatasetKind::Monthly,
                start: Some(month(2009, 1)),
                unit_hint,
                plot_scale,
                label: label.to_string(),
            })
            .collect();
        Self {
            datasets,
            default_train: default_train(),
            default_test: default_test(),
            max_lag: DEFAULT_MAX_LAG,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base).map_err(|message| CliError::Config {
            path: path.to_path_buf(),
            message,
        })
    }

    /// Parses and validates config text. Relative dataset paths are resolved
    /// against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, String> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        let window = |field: &str, v: Option<String>, default: MonthWindow| match v {
            Some(s) => s.parse::<MonthWindow>().map_err(|e| format!("{field}: {e}")),
            None => Ok(default),
        };
        let default_train = window("train", raw.train, default_train())?;
        let default_test = window("test", raw.test, default_test())?;
        if default_train.to >= default_test.from {
            return Err(format!(
                "train window {default_train} must end before test window {default_test}"
            ));
        }

        let mut seen = HashSet::new();
        let mut datasets = Vec::with_capacity(raw.dataset.len());
        for d in raw.dataset {
            if d.name.is_empty() {
                return Err("dataset name must not be empty".into());
            }
            if !seen.insert(d.name.clone()) {
                return Err(format!("duplicate dataset `{}`", d.name));
            }
            let start = d
                .start
                .map(|s| {
                    s.parse::<MonthStamp>()
                        .map_err(|e| format!("dataset `{}`: start: {e}", d.name))
                })
                .transpose()?;
            if d.kind == DatasetKind::Monthly && start.is_none() {
                return Err(format!("dataset `{}`: monthly data needs a start month", d.name));
            }
            let unit_hint = match d.unit {
                Some(u) => u.parse().map_err(|e| format!("dataset `{}`: {e}", d.name))?,
                None => UnitHint::default(),
            };
            let plot_scale = d.plot_scale.unwrap_or(1.0);
            if !(plot_scale.is_finite() && plot_scale > 0.0) {
                return Err(format!("dataset `{}`: plot_scale must be positive", d.name));
            }
            let label = d.label.unwrap_or_else(|| d.name.clone());
            datasets.push(DatasetSpec {
                name: d.name,
                source: DatasetSource::File(base.join(d.path)),
                kind: d.kind,
                start,
                unit_hint,
                plot_scale,
                label,
            });
        }
        Ok(Self {
            datasets,
            default_train,
            default_test,
            max_lag: raw.max_lag.unwrap_or(DEFAULT_MAX_LAG),
        })
    }

    pub fn dataset(&self, name: &str) -> Result<&DatasetSpec> {
        self.datasets
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| CliError::UnknownDataset(name.to_string()))
    }

    /// Looks up and loads a dataset as a monthly series.
    pub fn load_series(&self, name: &str) -> Result<MonthlySeries> {
        self.dataset(name)?.load()
    }
}

impl DatasetSpec {
    pub fn load(&self) -> Result<MonthlySeries> {
        let owned;
        let bytes: &[u8] = match &self.source {
            DatasetSource::Bundled(text) => text.as_bytes(),
            DatasetSource::File(path) => {
                owned = std::fs::read(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                &owned
            }
        };
        let wrap = |source| CliError::Dataset {
            name: self.name.clone(),
            source,
        };
        let series = match self.kind {
            DatasetKind::Monthly => {
                let start = self.start.expect("validated: monthly datasets carry a start month");
                parse_monthly(bytes, start, &self.label).map_err(wrap)?
            }
            DatasetKind::Daily => {
                let records = parse_daily_csv(bytes).map_err(wrap)?;
                aggregate_daily_to_monthly(&records, &self.label).map_err(wrap)?
            }
        };
        Ok(series.with_unit_hint(self.unit_hint))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_registry() {
        let c = AnalysisConfig::bundled();
        assert_eq!(c.datasets.len(), 5);
        let usd = c.dataset("usd_inr").unwrap();
        assert_eq!(usd.plot_scale, 100.0);
        assert_eq!(usd.unit_hint, UnitHint::OneDecimal);
        let s = c.load_series("it").unwrap();
        assert_eq!(s.len(), 88);
        assert_eq!(s.end(), month(2016, 4));
        assert!(matches!(c.dataset("sp500"), Err(CliError::UnknownDataset(_))));
    }

    #[test]
    fn parses_full_config() {
        let text = r#"
            train = "2010-01:2012-12"
            test = "2013-01:2013-06"
            max_lag = 6

            [[dataset]]
            name = "a"
            path = "a.txt"
            start = "2010-01"
            unit = "raw"

            [[dataset]]
            name = "b"
            path = "/abs/b.csv"
            kind = "daily"
            plot_scale = 2.5
            label = "Series B"
        "#;
        let c = AnalysisConfig::parse(text, Path::new("/cfg")).unwrap();
        assert_eq!(c.max_lag, 6);
        assert_eq!(c.default_train.to, month(2012, 12));
        assert_eq!(c.datasets[0].source, DatasetSource::File("/cfg/a.txt".into()));
        assert_eq!(c.datasets[0].unit_hint, UnitHint::Raw);
        assert_eq!(c.datasets[0].label, "a");
        assert_eq!(c.datasets[1].source, DatasetSource::File("/abs/b.csv".into()));
        assert_eq!(c.datasets[1].kind, DatasetKind::Daily);
        assert_eq!(c.datasets[1].start, None);
        assert_eq!(c.datasets[1].plot_scale, 2.5);
    }

    #[test]
    fn defaults_apply() {
        let c = AnalysisConfig::parse("", Path::new("")).unwrap();
        assert!(c.datasets.is_empty());
        assert_eq!(c.default_train, default_train());
        assert_eq!(c.default_test, default_test());
        assert_eq!(c.max_lag, DEFAULT_MAX_LAG);
    }

    #[test]
    fn rejects_invalid() {
        let cases = [
            (
                "[[dataset]]\nname='a'\npath='x'\nstart='2009-01'\n[[dataset]]\nname='a'\npath='y'\nstart='2009-01'",
                "duplicate",
            ),
            ("[[dataset]]\nname='a'\npath='x'", "start month"),
            (
                "[[dataset]]\nname='a'\npath='x'\nstart='2009-01'\nplot_scale=0.0",
                "plot_scale",
            ),
            (
                "[[dataset]]\nname='a'\npath='x'\nstart='2009-01'\nplot_scale=-2.0",
                "plot_scale",
            ),
            ("[[dataset]]\nname='a'\npath='x'\nstart='2009-13'", "start"),
            (
                "[[dataset]]\nname='a'\npath='x'\nstart='2009-01'\nunit='percent'",
                "unit",
            ),
            ("train = '2009-01:2015-06'\ntest = '2015-01:2016-04'", "before"),
            ("train = '2009-01'", "train"),
            ("colour = 'red'", "unknown field"),
            (
                "[[dataset]]\nname='a'\npath='x'\nkind='weekly'\nstart='2009-01'",
                "unknown variant",
            ),
        ];
        for (text, needle) in cases {
            let err = AnalysisConfig::parse(text, Path::new("")).unwrap_err();
            assert!(err.contains(needle), "{text:?} gave {err:?}");
        }
    }
}
