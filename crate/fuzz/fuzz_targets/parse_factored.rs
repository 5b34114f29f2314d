#![no_main]

use additive_designs::analysis::{parse_factored, MAX_FACTORED_BITS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_factored(text) {
        assert!(v.bits() <= MAX_FACTORED_BITS);
        assert_eq!(parse_factored(&v.to_string()).expect("decimal parses"), v);
    }
});
