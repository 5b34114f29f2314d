#![no_main]

use additive_designs::gf::{parse_polynomial, render_polynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(coeffs) = parse_polynomial(text) {
        let again =
            parse_polynomial(&render_polynomial(&coeffs)).expect("a rendered polynomial parses");
        assert_eq!(again, coeffs);
    }
});
