#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorts::{MonthStamp, MonthWindow};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<MonthStamp>() {
        assert_eq!(m.to_string().parse::<MonthStamp>().unwrap(), m);
    }
    if let Ok(w) = text.parse::<MonthWindow>() {
        assert!(w.from <= w.to);
        assert_eq!(w.to_string().parse::<MonthWindow>().unwrap(), w);
    }
});
