#![no_main]

use additive_designs::format::parse_family;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(file) = parse_family(text) {
            let _ = file.to_sdf();
            let _ = file.to_rdf();
            let _ = file.to_dm();
            let _ = file.to_design();
        }
    }
});
