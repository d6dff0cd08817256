//! Pearson correlation tests and the sample cross-correlation function.

use crate::error::{Error, Result};
use crate::series::AlignedPair;
use crate::special::regularized_incomplete_beta;

/// Maximum lag (months) used when the caller does not choose one.
pub const DEFAULT_MAX_LAG: usize = 24;

/// Outcome of a two-sided test of zero correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTest {
    pub r: f64,
    pub t: f64,
    pub df: u64,
    /// Two-sided p-value.
    pub p: f64,
    pub n: usize,
    /// Set when `|r| = 1`; `t` is then infinite and `p` is 0.
    pub degenerate: bool,
}

/// Correlations of `x[t + k]` with `y[t]` for `k` in `-max_lag..=max_lag`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCorrelogram {
    max_lag: usize,
    entries: Vec<f64>,
}

impl CrossCorrelogram {
    pub fn max_lag(&self) -> usize {
        self.max_lag
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn at(&self, lag: i64) -> Option<f64> {
        let idx = lag + self.max_lag as i64;
        if idx < 0 {
            return None;
        }
        self.entries.get(idx as usize).copied()
    }

    /// `(lag, r)` in ascending lag order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let offset = self.max_lag as i64;
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, r)| (i as i64 - offset, *r))
    }

    /// Lag expressed in years, the unit monthly correlograms are usually plotted in.
    pub fn lag_year_fraction(lag: i64) -> f64 {
        lag as f64 / 12.0
    }

    /// Lag with the largest `|r|`. Ties go to the smaller `|lag|`, then the
    /// negative lag.
    pub fn peak(&self) -> (i64, f64) {
        self.best_by(f64::abs)
    }

    /// Lag with the largest signed `r`.
    pub fn max(&self) -> (i64, f64) {
        self.best_by(|r| r)
    }

    fn best_by(&self, score: impl Fn(f64) -> f64) -> (i64, f64) {
        let mut order: Vec<(i64, f64)> = self.iter().collect();
        order.sort_by_key(|(k, _)| (k.abs(), *k));
        order
            .into_iter()
            .fold(None, |best: Option<(i64, f64)>, (k, r)| match best {
                Some((_, br)) if score(r) <= score(br) => best,
                _ => Some((k, r)),
            })
            .expect("correlogram has at least the zero lag")
    }
}

struct Centered {
    dx: Vec<f64>,
    dy: Vec<f64>,
    sxx: f64,
    syy: f64,
}

fn centered(pair: &AlignedPair) -> Result<Centered> {
    let n = pair.len() as f64;
    let mx = pair.x().iter().sum::<f64>() / n;
    let my = pair.y().iter().sum::<f64>() / n;
    let dx: Vec<f64> = pair.x().iter().map(|v| v - mx).collect();
    let dy: Vec<f64> = pair.y().iter().map(|v| v - my).collect();
    let sxx: f64 = dx.iter().map(|d| d * d).sum();
    let syy: f64 = dy.iter().map(|d| d * d).sum();
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(Centered { dx, dy, sxx, syy })
}

/// Sample Pearson correlation coefficient.
pub fn pearson_r(pair: &AlignedPair) -> Result<f64> {
    let c = centered(pair)?;
    let sxy: f64 = c.dx.iter().zip(&c.dy).map(|(a, b)| a * b).sum();
    Ok((sxy / (c.sxx * c.syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson correlation with `t = r * sqrt(df / (1 - r^2))`, `df = n - 2`, and
/// a two-sided p-value from the Student-t distribution.
pub fn cor_test(pair: &AlignedPair) -> Result<CorrelationTest> {
    let r = pearson_r(pair)?;
    let n = pair.len();
    let df = (n - 2) as u64;
    if r.abs() == 1.0 {
        return Ok(CorrelationTest {
            r,
            t: f64::INFINITY.copysign(r),
            df,
            p: 0.0,
            n,
            degenerate: true,
        });
    }
    let t = r * (df as f64 / (1.0 - r * r)).sqrt();
    let p = (2.0 * student_t_sf(t.abs(), df)?).min(1.0);
    Ok(CorrelationTest {
        r,
        t,
        df,
        p,
        n,
        degenerate: false,
    })
}

/// Upper tail `P(T > t)` of Student's t with `df` degrees of freedom.
///
/// For `t >= 0` this is `I_{df/(df+t^2)}(df/2, 1/2) / 2`; negative `t` uses
/// `sf(-t) = 1 - sf(t)`.
pub fn student_t_sf(t: f64, df: u64) -> Result<f64> {
    if df < 1 {
        return Err(Error::InvalidDf(df));
    }
    if t.is_nan() {
        return Ok(f64::NAN);
    }
    let nu = df as f64;
    let upper = |t: f64| -> Result<f64> {
        let x = nu / (nu + t * t);
        Ok(0.5 * regularized_incomplete_beta(nu / 2.0, 0.5, x)?)
    };
    if t >= 0.0 {
        upper(t)
    } else {
        Ok(1.0 - upper(-t)?)
    }
}

/// Sample cross-correlation with full-sample means and a `1/n` divisor at
/// every lag: `r(k) = c_xy(k) / sqrt(c_xx(0) c_yy(0))` where
/// `c_xy(k) = (1/n) sum_t (x[t+k] - mean x)(y[t] - mean y)`.
pub fn ccf(pair: &AlignedPair, max_lag: usize) -> Result<CrossCorrelogram> {
    let n = pair.len();
    if n < max_lag + 3 {
        return Err(Error::LagExceedsData { max_lag, n });
    }
    let c = centered(pair)?;
    let denom = (c.sxx * c.syy).sqrt();
    let lag = max_lag as i64;
    let entries = (-lag..=lag)
        .map(|k| {
            // iterate over the index of the y term so ccf(y, x)(-k) sums
            // the same products in the same order
            let t0 = (-k).max(0) as usize;
            let t1 = (n as i64 - k).min(n as i64) as usize;
            let s: f64 = (t0..t1).map(|t| c.dx[(t as i64 + k) as usize] * c.dy[t]).sum();
            s / denom
        })
        .collect();
    Ok(CrossCorrelogram { max_lag, entries })
}
