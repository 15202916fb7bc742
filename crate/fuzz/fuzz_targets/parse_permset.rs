#![no_main]

use libfuzzer_sys::fuzz_target;
use permdesign::io::{format_permset, parse_permset};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = parse_permset(text) {
        assert_eq!(parse_permset(&format_permset(&d)).unwrap(), d);
    }
});
