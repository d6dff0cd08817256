//! Classical additive decomposition `Y = T + S + R` for monthly data.
//!
//! The trend is a 2x12 centered moving average, so six months are lost at
//! each end. Seasonal figures are per-calendar-month means of the detrended
//! series, centered to sum to zero.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{MonthStamp, MonthlySeries};

/// Observations per seasonal cycle.
pub const PERIOD: usize = 12;
/// Months trimmed from each end of the trend.
pub const HALF_WINDOW: usize = PERIOD / 2;

/// Which part of a decomposition to analyse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Component {
    #[default]
    Aggregate,
    Trend,
    Seasonal,
    Random,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::Aggregate => "aggregate",
            Component::Trend => "trend",
            Component::Seasonal => "seasonal",
            Component::Random => "random",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "aggregate" => Ok(Component::Aggregate),
            "trend" => Ok(Component::Trend),
            "seasonal" => Ok(Component::Seasonal),
            "random" => Ok(Component::Random),
            other => Err(format!(
                "unknown component {other:?} (aggregate | trend | seasonal | random)"
            )),
        }
    }
}

/// One additive offset per calendar month.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeasonalFigures {
    by_month: [f64; PERIOD],
}

impl SeasonalFigures {
    pub fn new(by_month: [f64; PERIOD]) -> Self {
        Self { by_month }
    }

    /// Figure for calendar month `month` (1 = January).
    pub fn for_month(&self, month: u32) -> f64 {
        self.by_month[month as usize - 1]
    }

    pub fn as_array(&self) -> &[f64; PERIOD] {
        &self.by_month
    }

    pub fn sum(&self) -> f64 {
        self.by_month.iter().sum()
    }

    /// The figures repeated month by month over `len` months from `start`.
    pub fn cycled(&self, start: MonthStamp, len: usize, label: &str) -> MonthlySeries {
        let values = (0..len)
            .map(|i| self.for_month(start.offset(i as i64).month()))
            .collect();
        MonthlySeries::observed(start, values, label).expect("cycled figures are dense and non-empty")
    }
}

/// A series split into trend, seasonal and random parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub aggregate: MonthlySeries,
    pub trend: MonthlySeries,
    pub seasonal: SeasonalFigures,
    pub random: MonthlySeries,
}

impl Decomposition {
    /// Seasonal figures laid out over the span of the aggregate.
    pub fn seasonal_series(&self) -> MonthlySeries {
        self.seasonal
            .cycled(
                self.aggregate.start(),
                self.aggregate.len(),
                &format!("{} seasonal", self.aggregate.label()),
            )
            .with_unit_hint(self.aggregate.unit_hint())
    }

    pub fn component(&self, which: Component) -> MonthlySeries {
        match which {
            Component::Aggregate => self.aggregate.clone(),
            Component::Trend => self.trend.clone(),
            Component::Seasonal => self.seasonal_series(),
            Component::Random => self.random.clone(),
        }
    }
}

/// 2x12 centered moving average:
/// `T_t = (Y_{t-6}/2 + Y_{t-5} + ... + Y_{t+5} + Y_{t+6}/2) / 12`.
///
/// The first and last six months are missing.
pub fn centered_ma_trend(s: &MonthlySeries) -> Result<MonthlySeries> {
    let required = 2 * HALF_WINDOW + 1;
    if s.len() < required {
        return Err(Error::SeriesTooShort { len: s.len(), required });
    }
    let y = s.dense_values()?;
    let n = y.len();
    let mut trend = vec![None; n];
    for (t, slot) in trend.iter_mut().enumerate().take(n - HALF_WINDOW).skip(HALF_WINDOW) {
        let inner: f64 = y[t + 1 - HALF_WINDOW..t + HALF_WINDOW].iter().sum();
        let ends = 0.5 * (y[t - HALF_WINDOW] + y[t + HALF_WINDOW]);
        *slot = Some((inner + ends) / PERIOD as f64);
    }
    Ok(MonthlySeries::new(s.start(), trend, format!("{} trend", s.label()))?.with_unit_hint(s.unit_hint()))
}

/// Mean detrended value per calendar month, centered to sum to zero.
///
/// Only months where the trend exists contribute.
pub fn seasonal_figures(s: &MonthlySeries, trend: &MonthlySeries) -> Result<SeasonalFigures> {
    let mut sums = [0.0; PERIOD];
    let mut counts = [0usize; PERIOD];
    for (month, t) in trend.observations() {
        let y = s.get(month).ok_or(Error::UnexpectedMissing(month))?;
        let slot = month.month() as usize - 1;
        sums[slot] += y - t;
        counts[slot] += 1;
    }
    let mut raw = [0.0; PERIOD];
    for m in 0..PERIOD {
        if counts[m] == 0 {
            return Err(Error::IncompleteCycle(m as u32 + 1));
        }
        raw[m] = sums[m] / counts[m] as f64;
    }
    let mean = raw.iter().sum::<f64>() / PERIOD as f64;
    Ok(SeasonalFigures::new(raw.map(|f| f - mean)))
}

/// Full additive decomposition. Needs at least two complete cycles.
pub fn decompose(s: &MonthlySeries) -> Result<Decomposition> {
    let required = 2 * PERIOD;
    if s.len() < required {
        return Err(Error::SeriesTooShort { len: s.len(), required });
    }
    let trend = centered_ma_trend(s)?;
    let seasonal = seasonal_figures(s, &trend)?;
    let random: Vec<Option<f64>> = s
        .iter()
        .zip(trend.values())
        .map(|((month, y), t)| match (y, t) {
            (Some(y), Some(t)) => Some(y - t - seasonal.for_month(month.month())),
            _ => None,
        })
        .collect();
    let random = MonthlySeries::new(s.start(), random, format!("{} random", s.label()))?.with_unit_hint(s.unit_hint());
    Ok(Decomposition {
        aggregate: s.clone(),
        trend,
        seasonal,
        random,
    })
}
