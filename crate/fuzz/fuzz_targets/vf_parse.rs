#![no_main]

use bentforge::format::{parse_vf, vf_to_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_vf(text) {
        assert_eq!(parse_vf(&vf_to_string(&f)).expect("round trip"), f);
    }
});
