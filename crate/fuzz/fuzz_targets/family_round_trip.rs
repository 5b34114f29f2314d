#![no_main]

use additive_designs::format::parse_family;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_family(text) else { return };
    let rendered = file.render().expect("a parsed file renders");
    let again = parse_family(&rendered).expect("a rendered file parses");
    assert_eq!(again, file);
});
