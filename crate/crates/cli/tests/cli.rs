use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sectorts::{parse_monthly, MonthStamp};
use tempfile::TempDir;

fn sectorts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sectorts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = sectorts(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = sectorts(args);
    assert!(!out.status.success(), "{args:?} should fail");
    assert!(out.stdout.is_empty(), "no partial output on error");
    String::from_utf8(out.stderr).unwrap()
}

fn tsv(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split('\t').map(String::from).collect())
        .collect()
}

fn num(cell: &str) -> f64 {
    cell.parse().unwrap_or_else(|_| panic!("not a number: {cell:?}"))
}

fn value_of(table: &[Vec<String>], parameter: &str) -> String {
    table
        .iter()
        .find(|r| r[0] == parameter)
        .unwrap_or_else(|| panic!("no {parameter}"))[1]
        .clone()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn decompose_it_rows() {
    let rows = tsv(&ok(&["decompose", "it", "--format", "tsv"]));
    assert_eq!(rows.len(), 88);
    let jan10 = rows.iter().find(|r| r[0] == "2010" && r[1] == "January").unwrap();
    for (cell, want) in jan10[2..].iter().zip([5197.0, 4869.0, 299.0, 29.0]) {
        assert!((num(cell) - want).abs() <= 2.0, "{cell} vs {want}");
    }
    // trend and random blank for six months at each end
    let blank: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r[3].is_empty())
        .map(|(i, _)| i)
        .collect();
    assert_eq!(blank, vec![0, 1, 2, 3, 4, 5, 82, 83, 84, 85, 86, 87]);
    assert!(rows.iter().all(|r| r[3].is_empty() == r[5].is_empty()));
}

#[test]
fn decompose_exchange_rate_one_decimal() {
    let rows = tsv(&ok(&[
        "decompose",
        "usd_inr",
        "--format",
        "tsv",
        "--window",
        "2009-07:2009-07",
    ]));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2], "48");
    for (cell, want) in rows[0][3..].iter().zip([48.3, 0.2, -0.4]) {
        assert_eq!(cell.split_once('.').map(|(_, d)| d.len()), Some(1), "{cell}");
        assert!((num(cell) - want).abs() <= 0.2, "{cell} vs {want}");
    }
}

#[test]
fn decompose_short_series_fails_cleanly() {
    let dir = TempDir::new().unwrap();
    let data: String = (1..=23).map(|i| format!("{i}\n")).collect();
    write(dir.path(), "short.txt", &data);
    let cfg = write(
        dir.path(),
        "c.toml",
        "[[dataset]]\nname = \"short\"\npath = \"short.txt\"\nstart = \"2020-01\"\n",
    );
    let err = fails(&["--config", &cfg, "decompose", "short"]);
    assert!(err.contains("24"), "{err}");
}

#[test]
fn correlate_aggregate_matches_reference() {
    let t = tsv(&ok(&["correlate", "it", "djia", "--format", "tsv"]));
    assert_eq!(value_of(&t, "t-statistic"), "26.907");
    assert_eq!(value_of(&t, "Degrees of freedom (df)"), "86");
    assert_eq!(value_of(&t, "Significance value (p-value)"), "< 2.2e-16");
    assert!((num(&value_of(&t, "Correlation coefficient")) - 0.945425).abs() < 5e-3);
}

#[test]
fn correlate_windowed() {
    let t = tsv(&ok(&[
        "correlate",
        "cg",
        "djia",
        "--window",
        "2009-01:2014-12",
        "--format",
        "tsv",
    ]));
    assert_eq!(value_of(&t, "Degrees of freedom (df)"), "70");
    assert!((num(&value_of(&t, "Correlation coefficient")) - 0.082).abs() < 0.02);
}

#[test]
fn correlate_self() {
    let t = tsv(&ok(&["correlate", "it", "it", "--format", "tsv"]));
    assert_eq!(value_of(&t, "Correlation coefficient"), "1");
    assert_eq!(value_of(&t, "Significance value (p-value)"), "< 2.2e-16");
    assert_eq!(value_of(&t, "t-statistic"), "Inf");
}

#[test]
fn correlate_trend_components_use_observed_overlap() {
    let t = tsv(&ok(&[
        "correlate",
        "it",
        "usd_inr",
        "--component",
        "trend",
        "--format",
        "tsv",
    ]));
    assert_eq!(value_of(&t, "Degrees of freedom (df)"), "74");
}

fn peak(args: &[&str]) -> (i64, f64) {
    let text = ok(args);
    let line = text.lines().find(|l| l.starts_with("Peak")).expect("peak line");
    // Peak |r| = R at lag K months (...)
    let words: Vec<&str> = line.split_whitespace().collect();
    (words[6].parse().unwrap(), words[3].parse().unwrap())
}

#[test]
fn ccf_peaks() {
    assert_eq!(peak(&["ccf", "it", "djia"]).0, 0);
    let (lag, r) = peak(&["ccf", "cg", "nifty", "--component", "seasonal"]);
    assert_eq!(lag.abs(), 4);
    assert!((r - 0.7).abs() <= 0.05);
    let (lag, r) = peak(&["ccf", "nifty", "nifty", "--max-lag", "6"]);
    assert_eq!((lag, r), (0, 1.0));
}

#[test]
fn ccf_rows_and_year_labels() {
    let rows = tsv(&ok(&["ccf", "it", "djia", "--max-lag", "12", "--format", "csv"]).replace(',', "\t"));
    assert_eq!(rows.len(), 25);
    assert_eq!(rows[0][..2], ["-12".to_string(), "-1.000".to_string()]);
    assert_eq!(rows[15][..2], ["3".to_string(), "0.250".to_string()]);
}

#[test]
fn fit_reproduces_reference_errors() {
    let text = ok(&["fit", "it", "--on", "djia", "--format", "tsv"]);
    let (summary, forecasts) = text.split_once("\n\n").unwrap();
    let s = tsv(summary);
    assert_eq!(value_of(&s, "Constant term in the regression model"), "-2585.21");
    assert_eq!(value_of(&s, "Coefficient of the DJIA index"), "0.6958");
    assert_eq!(
        value_of(&s, "Residual standard error"),
        "752.4 on 70 degrees of freedom"
    );
    assert_eq!(value_of(&s, "Multiple R-squared"), "0.8686");
    assert_eq!(value_of(&s, "Adjusted R-squared"), "0.8667");

    let reference = tsv(include_str!("../../core/fixtures/reference/forecast/it_on_djia.tsv"));
    let rows = tsv(forecasts);
    assert_eq!(rows.len(), 16);
    for (got, want) in rows.iter().zip(&reference) {
        assert_eq!(got[4], want[4], "contribution column");
        assert_eq!(got[6], want[6], "forecast column");
        assert!((num(&got[7]) - num(&want[7])).abs() <= 0.05);
    }
}

#[test]
fn fit_recent_training_window() {
    let text = ok(&[
        "fit",
        "cg",
        "--on",
        "nifty",
        "--train",
        "2014-01:2014-12",
        "--format",
        "tsv",
    ]);
    let (summary, forecasts) = text.split_once("\n\n").unwrap();
    assert_eq!(value_of(&tsv(summary), "Adjusted R-squared"), "0.8322");
    let jan = &tsv(forecasts)[0];
    assert_eq!(jan[6], "16565");
    assert!((num(&jan[7]) - 2.33).abs() <= 0.05);
}

#[test]
fn fit_signed_and_rounded_errors() {
    let rows = |extra: &[&str]| {
        let mut args = vec!["fit", "usd_inr", "--on", "it", "--format", "tsv"];
        args.extend_from_slice(extra);
        let text = ok(&args);
        tsv(text.split_once("\n\n").unwrap().1)
    };
    let plain = rows(&[]);
    let signed = rows(&["--signed-errors"]);
    let rounded = rows(&["--round-forecast"]);
    assert!(plain.iter().all(|r| num(&r[7]) >= 0.0));
    assert!(signed.iter().any(|r| num(&r[7]) < 0.0));
    for ((p, s), r) in plain.iter().zip(&signed).zip(&rounded) {
        assert!((num(&p[7]) - num(&s[7]).abs()).abs() < 0.011);
        // April 2015: rounded forecast 63 equals the actual 63
        if p[0] == "2015" && p[1] == "April" {
            assert_eq!(r[6], "63");
            assert_eq!(r[7], "0.00");
        }
    }
}

#[test]
fn fit_exact_line() {
    let dir = TempDir::new().unwrap();
    let xs: Vec<f64> = (0..36).map(|i| 10.0 + i as f64 * 1.5).collect();
    let x: String = xs.iter().map(|v| format!("{v}\n")).collect();
    let y: String = xs.iter().map(|v| format!("{}\n", 3.0 * v + 2.0)).collect();
    write(dir.path(), "x.txt", &x);
    write(dir.path(), "y.txt", &y);
    let cfg = write(
        dir.path(),
        "c.toml",
        "train = \"2000-01:2001-12\"\ntest = \"2002-01:2002-12\"\n\
         [[dataset]]\nname = \"x\"\npath = \"x.txt\"\nstart = \"2000-01\"\n\
         [[dataset]]\nname = \"y\"\npath = \"y.txt\"\nstart = \"2000-01\"\n",
    );
    let text = ok(&[
        "--config",
        &cfg,
        "fit",
        "y",
        "--on",
        "x",
        "--full-precision",
        "--format",
        "tsv",
    ]);
    let (summary, forecasts) = text.split_once("\n\n").unwrap();
    assert_eq!(value_of(&tsv(summary), "Multiple R-squared"), "1.000");
    let rows = tsv(forecasts);
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r[7] == "0.00"));
}

#[test]
fn export_plot_data_scales_and_skips_missing() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("plots");
    let out_s = out.to_str().unwrap();
    ok(&["export-plot-data", "it", "usd_inr", "--out", out_s]);
    let usd = fs::read_to_string(out.join("usd_inr.tsv")).unwrap();
    let raw = include_str!("../../core/fixtures/usd_inr.txt");
    let want: Vec<f64> = raw.split_whitespace().map(num).collect();
    let lines: Vec<&str> = usd.lines().collect();
    assert_eq!(lines.len(), 88);
    assert_eq!(lines[0], format!("2009-01\t{}", want[0] * 100.0));
    for (line, w) in lines.iter().zip(&want) {
        assert_eq!(num(line.split_once('\t').unwrap().1), w * 100.0);
    }
    // plot_scale 1 leaves values verbatim
    let it = fs::read_to_string(out.join("it.tsv")).unwrap();
    assert!(it.starts_with("2009-01\t2189\n2009-02\t2140\n"));

    ok(&["export-plot-data", "it", "--component", "trend", "--out", out_s]);
    let trend = fs::read_to_string(out.join("it.tsv")).unwrap();
    assert_eq!(trend.lines().count(), 76);
    assert!(trend.starts_with("2009-07\t"));
}

#[test]
fn export_plot_data_all_by_default() {
    let dir = TempDir::new().unwrap();
    let listing = ok(&["export-plot-data", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(listing.lines().count(), 5);
    for name in ["it", "cg", "djia", "nifty", "usd_inr"] {
        assert!(dir.path().join(format!("{name}.tsv")).exists());
    }
}

#[test]
fn unwritable_destination_fails() {
    let dir = TempDir::new().unwrap();
    let blocker = write(dir.path(), "file", "not a directory");
    fails(&["export-plot-data", "it", "--out", &format!("{blocker}/sub")]);
    fails(&["decompose", "it", "--out", &format!("{blocker}/x.txt")]);
}

#[test]
fn out_writes_file_instead_of_stdout() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("corr.csv");
    let stdout = ok(&[
        "correlate",
        "it",
        "nifty",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(stdout.is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("Parameter,Value\n"));
}

#[test]
fn raw_aggregate_round_trips() {
    let rows = tsv(&ok(&["decompose", "usd_inr", "--raw", "--format", "tsv"]));
    let column: String = rows.iter().map(|r| format!("{}\n", r[2])).collect();
    let start = MonthStamp::new(2009, 1).unwrap();
    let reparsed = parse_monthly(column.as_bytes(), start, "x").unwrap();
    let original = parse_monthly(include_str!("../../core/fixtures/usd_inr.txt").as_bytes(), start, "x").unwrap();
    assert_eq!(reparsed.values(), original.values());
    // components carry full precision in raw mode
    assert!(rows.iter().any(|r| r[3].len() > 6));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["decompose", "cg"][..],
        &["ccf", "cg", "djia", "--window", "2009-01:2014-12"],
        &["fit", "nifty", "--on", "cg"],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn daily_csv_dataset() {
    let dir = TempDir::new().unwrap();
    let mut csv = String::from("date,value\n");
    for m in 1..=12 {
        csv += &format!("2020-{m:02}-03,{}\n2020-{m:02}-17,{}\n", m * 10, m * 10 + 4);
    }
    write(dir.path(), "d.csv", &csv);
    let cfg = write(
        dir.path(),
        "c.toml",
        "[[dataset]]\nname = \"d\"\npath = \"d.csv\"\nkind = \"daily\"\n",
    );
    let files = dir.path().join("out");
    ok(&["--config", &cfg, "export-plot-data", "--out", files.to_str().unwrap()]);
    let text = fs::read_to_string(files.join("d.tsv")).unwrap();
    assert!(text.starts_with("2020-01\t12\n2020-02\t22\n"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn errors_exit_nonzero() {
    assert!(fails(&["decompose", "sp500"]).contains("unknown dataset `sp500`"));
    fails(&["--config", "/nonexistent/cfg.toml", "decompose", "it"]);
    fails(&["fit", "it", "--on", "djia", "--test", "2016-01:2016-12"]);
    fails(&["ccf", "it", "djia", "--window", "2009-01:2010-06", "--max-lag", "24"]);
    let bad_window = sectorts(&["decompose", "it", "--window", "2014-12:2009-01"]);
    assert!(!bad_window.status.success());
}
