#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorts::{aggregate_daily_to_monthly, parse_daily_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(records) = parse_daily_csv(data) {
        assert!(!records.is_empty());
        if let Ok(series) = aggregate_daily_to_monthly(&records, "fuzz") {
            assert!(series.observations().all(|(_, v)| v.is_finite()));
        }
    }
});
