//! Monthly series data model, ingestion and windowing.
//!
//! A [`MonthlySeries`] is anchored at a calendar month and holds one optional
//! value per month. Missing values may only appear as a leading and/or
//! trailing run; this is the shape the decomposition produces when it trims
//! the ends of the trend.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};

use crate::error::{Error, Result};

/// A calendar month. Ordering is chronological.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonthStamp {
    year: i32,
    month: u32,
}

impl MonthStamp {
    pub fn new(year: i32, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidMonth(format!("{year}-{month}")));
        }
        Ok(Self { year, month })
    }

    pub fn year(self) -> i32 {
        self.year
    }

    /// Calendar month, 1 = January.
    pub fn month(self) -> u32 {
        self.month
    }

    /// Months since year 0, January. Monotone in chronological order.
    pub fn ordinal(self) -> i64 {
        i64::from(self.year) * 12 + i64::from(self.month) - 1
    }

    fn from_ordinal(ordinal: i64) -> Self {
        let year = ordinal.div_euclid(12);
        let month = ordinal.rem_euclid(12) + 1;
        Self {
            year: year as i32,
            month: month as u32,
        }
    }

    /// The month `n` months after this one (before, when `n` is negative).
    pub fn offset(self, n: i64) -> Self {
        Self::from_ordinal(self.ordinal() + n)
    }

    /// Signed number of months from `self` to `other`.
    pub fn months_until(self, other: MonthStamp) -> i64 {
        other.ordinal() - self.ordinal()
    }

    pub fn of_date(date: NaiveDate) -> Self {
        Self {
            year: date.year(),
            month: date.month(),
        }
    }

    pub fn month_name(self) -> &'static str {
        const NAMES: [&str; 12] = [
            "January",
            "February",
            "March",
            "April",
            "May",
            "June",
            "July",
            "August",
            "September",
            "October",
            "November",
            "December",
        ];
        NAMES[self.month as usize - 1]
    }
}

impl fmt::Display for MonthStamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for MonthStamp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMonth(s.to_string());
        let (y, m) = s.trim().split_once('-').ok_or_else(bad)?;
        if y.is_empty()
            || m.is_empty()
            || !y.bytes().all(|b| b.is_ascii_digit())
            || !m.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let year: i32 = y.parse().map_err(|_| bad())?;
        let month: u32 = m.parse().map_err(|_| bad())?;
        MonthStamp::new(year, month).map_err(|_| bad())
    }
}

/// An inclusive range of months, `from..=to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonthWindow {
    pub from: MonthStamp,
    pub to: MonthStamp,
}

impl MonthWindow {
    pub fn new(from: MonthStamp, to: MonthStamp) -> Result<Self> {
        if from > to {
            return Err(Error::InvalidWindow { from, to });
        }
        Ok(Self { from, to })
    }

    pub fn contains(&self, m: MonthStamp) -> bool {
        self.from <= m && m <= self.to
    }

    pub fn month_count(&self) -> usize {
        (self.from.months_until(self.to) + 1) as usize
    }
}

impl fmt::Display for MonthWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.from, self.to)
    }
}

/// Parses `YYYY-MM:YYYY-MM`.
impl FromStr for MonthWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(':').ok_or_else(|| Error::InvalidMonth(s.to_string()))?;
        MonthWindow::new(a.parse()?, b.parse()?)
    }
}

/// Display rounding rule attached to a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitHint {
    /// Every value to the nearest integer (index levels).
    #[default]
    Integer,
    /// Aggregate values as integers, derived quantities to one decimal
    /// (exchange rates).
    OneDecimal,
    /// Full precision.
    Raw,
}

impl FromStr for UnitHint {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "integer" => Ok(Self::Integer),
            "one-decimal" => Ok(Self::OneDecimal),
            "raw" => Ok(Self::Raw),
            other => Err(format!("unknown unit hint {other:?} (integer | one-decimal | raw)")),
        }
    }
}

/// A monthly sequence anchored at `start`; value `i` belongs to month `start + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonthlySeries {
    start: MonthStamp,
    values: Vec<Option<f64>>,
    label: String,
    unit_hint: UnitHint,
}

impl MonthlySeries {
    /// Builds a series, rejecting empty input and interior gaps.
    pub fn new(start: MonthStamp, values: Vec<Option<f64>>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let first = values.iter().position(Option::is_some);
        let last = values.iter().rposition(Option::is_some);
        if let (Some(first), Some(last)) = (first, last) {
            if let Some(gap) = values[first..=last].iter().position(Option::is_none) {
                return Err(Error::InteriorGap(start.offset((first + gap) as i64)));
            }
        }
        Ok(Self {
            start,
            values,
            label: label.into(),
            unit_hint: UnitHint::default(),
        })
    }

    /// A series with every month observed.
    pub fn observed(start: MonthStamp, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        Self::new(start, values.into_iter().map(Some).collect(), label)
    }

    pub fn with_unit_hint(mut self, hint: UnitHint) -> Self {
        self.unit_hint = hint;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn start(&self) -> MonthStamp {
        self.start
    }

    pub fn end(&self) -> MonthStamp {
        self.start.offset(self.values.len() as i64 - 1)
    }

    pub fn span(&self) -> MonthWindow {
        MonthWindow {
            from: self.start,
            to: self.end(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn unit_hint(&self) -> UnitHint {
        self.unit_hint
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn month_at(&self, index: usize) -> MonthStamp {
        self.start.offset(index as i64)
    }

    pub fn get(&self, month: MonthStamp) -> Option<f64> {
        let idx = self.start.months_until(month);
        if idx < 0 {
            return None;
        }
        self.values.get(idx as usize).copied().flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MonthStamp, Option<f64>)> + '_ {
        self.values.iter().enumerate().map(move |(i, v)| (self.month_at(i), *v))
    }

    /// Observed `(month, value)` pairs in chronological order.
    pub fn observations(&self) -> impl Iterator<Item = (MonthStamp, f64)> + '_ {
        self.iter().filter_map(|(m, v)| v.map(|v| (m, v)))
    }

    pub fn observed_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_fully_observed(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// The values as plain reals, failing on the first missing month.
    pub fn dense_values(&self) -> Result<Vec<f64>> {
        self.iter().map(|(m, v)| v.ok_or(Error::UnexpectedMissing(m))).collect()
    }

    /// Applies `f` to every observed value. Missing months stay missing.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            start: self.start,
            values: self.values.iter().map(|v| v.map(&f)).collect(),
            label: self.label.clone(),
            unit_hint: self.unit_hint,
        }
    }
}

/// One observation of a daily input file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DailyRecord {
    pub date: NaiveDate,
    pub value: f64,
}

/// Paired observations over a common set of months.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedPair {
    x: Vec<f64>,
    y: Vec<f64>,
    months: Vec<MonthStamp>,
}

impl AlignedPair {
    pub fn new(x: Vec<f64>, y: Vec<f64>, months: Vec<MonthStamp>) -> Result<Self> {
        if x.len() != y.len() || x.len() != months.len() {
            return Err(Error::LengthMismatch { x: x.len(), y: y.len() });
        }
        if x.len() < 3 {
            return Err(Error::InsufficientOverlap { found: x.len() });
        }
        Ok(Self { x, y, months })
    }

    /// Pairs plain sequences, labelling them with consecutive months from
    /// January of year 1.
    pub fn from_values(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let origin = MonthStamp { year: 1, month: 1 };
        let months = (0..x.len()).map(|i| origin.offset(i as i64)).collect();
        Self::new(x, y, months)
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn months(&self) -> &[MonthStamp] {
        &self.months
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.y.clone(),
            y: self.x.clone(),
            months: self.months.clone(),
        }
    }

    pub fn first_month(&self) -> MonthStamp {
        self.months[0]
    }

    pub fn last_month(&self) -> MonthStamp {
        self.months[self.months.len() - 1]
    }
}

/// Parses whitespace-separated decimal numbers (any mix of spaces, tabs,
/// LF or CRLF) into a series anchored at `start`.
pub fn parse_monthly(text: &[u8], start: MonthStamp, label: &str) -> Result<MonthlySeries> {
    let mut values = Vec::new();
    for (idx, line) in text.split(|&b| b == b'\n').enumerate() {
        for token in line.split(|b| b.is_ascii_whitespace()).filter(|t| !t.is_empty()) {
            let parsed = std::str::from_utf8(token)
                .ok()
                .and_then(|t| t.parse::<f64>().ok())
                .filter(|v| v.is_finite());
            match parsed {
                Some(v) => values.push(Some(v)),
                None => {
                    return Err(Error::Parse {
                        line: idx + 1,
                        token: String::from_utf8_lossy(token).into_owned(),
                    })
                }
            }
        }
    }
    MonthlySeries::new(start, values, label)
}

/// Parses a `date,value` CSV (ISO-8601 dates) into daily records.
pub fn parse_daily_csv(text: &[u8]) -> Result<Vec<DailyRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text);
    let header_err = |message: String| Error::DailyRecord { line: 1, message };
    let headers = reader.headers().map_err(|e| header_err(e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "date" || &headers[1] != "value" {
        return Err(header_err(format!(
            "expected header `date,value`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::DailyRecord {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let fail = |message: String| Error::DailyRecord { line, message };
        if row.len() != 2 {
            return Err(fail(format!("expected 2 fields, found {}", row.len())));
        }
        let date =
            NaiveDate::parse_from_str(&row[0], "%Y-%m-%d").map_err(|e| fail(format!("bad date {:?}: {e}", &row[0])))?;
        let value = row[1]
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| fail(format!("bad value {:?}", &row[1])))?;
        records.push(DailyRecord { date, value });
    }
    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(records)
}

/// Averages daily records into monthly means.
///
/// Each month's values are sorted before averaging, so the result does not
/// depend on record order. The mean is taken as offsets from the month's
/// smallest value, which keeps a constant month exact.
pub fn aggregate_daily_to_monthly(records: &[DailyRecord], label: &str) -> Result<MonthlySeries> {
    let mut by_month: BTreeMap<MonthStamp, Vec<f64>> = BTreeMap::new();
    for r in records {
        by_month.entry(MonthStamp::of_date(r.date)).or_default().push(r.value);
    }
    let (&first, _) = by_month.iter().next().ok_or(Error::EmptyDataset)?;
    let (&last, _) = by_month.iter().next_back().ok_or(Error::EmptyDataset)?;

    let mut values = Vec::with_capacity(first.months_until(last) as usize + 1);
    for i in 0..=first.months_until(last) {
        let month = first.offset(i);
        let mut daily = by_month.remove(&month).ok_or(Error::GapMonth(month))?;
        daily.sort_by(f64::total_cmp);
        let base = daily[0];
        let offset: f64 = daily.iter().map(|v| v - base).sum::<f64>() / daily.len() as f64;
        values.push(Some(base + offset));
    }
    MonthlySeries::new(first, values, label)
}

/// Restricts `s` to the months in `w`. Months outside the span of `s` are
/// dropped, not padded.
pub fn window(s: &MonthlySeries, w: MonthWindow) -> Result<MonthlySeries> {
    if w.from > w.to {
        return Err(Error::InvalidWindow { from: w.from, to: w.to });
    }
    let from = w.from.max(s.start());
    let to = w.to.min(s.end());
    if from > to {
        return Err(Error::EmptyWindow { from: w.from, to: w.to });
    }
    let lo = s.start().months_until(from) as usize;
    let hi = s.start().months_until(to) as usize;
    Ok(MonthlySeries {
        start: from,
        values: s.values[lo..=hi].to_vec(),
        label: s.label.clone(),
        unit_hint: s.unit_hint,
    })
}

/// Pairs the months where both series are observed.
pub fn align(a: &MonthlySeries, b: &MonthlySeries) -> Result<AlignedPair> {
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut months = Vec::new();
    for (m, va) in a.observations() {
        if let Some(vb) = b.get(m) {
            x.push(va);
            y.push(vb);
            months.push(m);
        }
    }
    if x.len() < 3 {
        return Err(Error::InsufficientOverlap { found: x.len() });
    }
    AlignedPair::new(x, y, months)
}
