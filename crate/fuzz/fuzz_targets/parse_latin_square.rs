#![no_main]

use libfuzzer_sys::fuzz_target;
use permdesign::construct::{from_latin_square, to_latin_square};
use permdesign::io::parse_latin_square;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rows) = parse_latin_square(text) else {
        return;
    };
    if let Ok(d) = from_latin_square(&rows) {
        assert_eq!(d.len(), rows.len());
        assert_eq!(from_latin_square(&to_latin_square(&d).unwrap()).unwrap(), d);
    }
});
