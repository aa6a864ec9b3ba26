#![no_main]

use bentforge::format::parse_field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(k) = parse_field(text) {
        let again = parse_field(&k.spec_string()).expect("round trip");
        assert_eq!(again.modulus(), k.modulus());
        let g = k.generator();
        assert_eq!(k.mul(g, k.inv(g).expect("nonzero")), 1);
    }
});
