#![no_main]

use libfuzzer_sys::fuzz_target;
use permdesign::{format_one_line, parse_one_line};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let n = usize::from(n % 16);
    if let Ok(sigma) = parse_one_line(text, n) {
        assert_eq!(sigma.degree(), n);
        assert_eq!(parse_one_line(&format_one_line(&sigma), n).unwrap(), sigma);
    }
});
