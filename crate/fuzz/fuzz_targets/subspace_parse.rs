#![no_main]

use bentforge::format::{parse_subspace, subspace_to_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = parse_subspace(text, None) {
        let back =
            parse_subspace(&subspace_to_string(&s), Some(s.ambient_dim())).expect("round trip");
        assert_eq!(back, s);
    }
});
