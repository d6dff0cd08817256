//! Table layout and number formatting.

use std::fmt::Write as _;

use clap::ValueEnum;

/// Smallest p-value printed as a number; anything below shows as `< 2.2e-16`.
pub const P_DISPLAY_FLOOR: f64 = 2.2e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Fixed-width columns for reading
    #[default]
    Table,
    Tsv,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Align {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    headers: Vec<String>,
    align: Vec<Align>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[(&str, Align)]) -> Self {
        Self {
            headers: columns.iter().map(|(h, _)| h.to_string()).collect(),
            align: columns.iter().map(|(_, a)| *a).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.fixed_width(),
            Format::Tsv => self.delimited(b'\t'),
            Format::Csv => self.delimited(b','),
        }
    }

    fn fixed_width(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (cell, (w, a))) in cells.iter().zip(widths.iter().zip(&self.align)).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                match a {
                    Align::Left => write!(s, "{cell:<w$}").unwrap(),
                    Align::Right => write!(s, "{cell:>w$}").unwrap(),
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&self.headers);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(&rule);
        for row in &self.rows {
            line(row);
        }
        out
    }

    fn delimited(&self, delimiter: u8) -> String {
        let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
    }
}

/// Shortest representation that round-trips.
pub fn full(v: f64) -> String {
    format!("{v}")
}

pub fn fixed(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    // avoid "-0" and "-0.0"
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Decimal places needed to show `digits` significant digits of `v`.
fn significant_decimals(v: f64, digits: usize) -> usize {
    if v == 0.0 || !v.is_finite() {
        return digits.saturating_sub(1);
    }
    let magnitude = v.abs().log10().floor() as i64;
    (digits as i64 - 1 - magnitude).max(0) as usize
}

/// `digits` significant digits, keeping trailing zeros (`0.002240`).
pub fn significant(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return full(v);
    }
    let rounded = sectorts::regression::round_significant(v, digits as i32);
    fixed(rounded, significant_decimals(rounded, digits))
}

/// `digits` significant digits with trailing zeros dropped (`0.945425`).
pub fn significant_trimmed(v: f64, digits: usize) -> String {
    let s = significant(v, digits);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// p-values: clamped below the display floor, scientific below 1e-4,
/// otherwise four significant digits.
pub fn p_value(p: f64) -> String {
    if p < P_DISPLAY_FLOOR {
        format!("< {P_DISPLAY_FLOOR:e}")
    } else if p < 1e-4 {
        format!("{p:.3e}")
    } else {
        significant_trimmed(p, 4)
    }
}
