#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorts::{decompose, parse_monthly, MonthStamp};

fuzz_target!(|data: &[u8]| {
    let start = MonthStamp::new(2009, 1).unwrap();
    if let Ok(series) = parse_monthly(data, start, "fuzz") {
        assert!(series.is_fully_observed());
        assert_eq!(series.end(), start.offset(series.len() as i64 - 1));
        // values are finite, so decomposition either succeeds or reports a short series
        if let Ok(d) = decompose(&series) {
            assert_eq!(d.trend.len(), series.len());
        }
    }
});
