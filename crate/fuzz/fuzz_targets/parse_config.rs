#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use sectorts_cli::AnalysisConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(config) = AnalysisConfig::parse(text, Path::new("base")) {
        assert!(config.default_train.to < config.default_test.from);
        assert!(config.datasets.iter().all(|d| d.plot_scale > 0.0));
    }
});
