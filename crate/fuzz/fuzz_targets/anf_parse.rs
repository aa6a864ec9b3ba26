#![no_main]

use bentforge::anf::AnfPoly;
use bentforge::BooleanFunction;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = AnfPoly::parse(text, None) {
        let again = AnfPoly::parse(&p.to_string(), Some(p.n())).expect("printed ANF parses");
        assert_eq!(again, p);
        if p.n() <= 12 {
            let f = BooleanFunction::from_anf(&p).expect("parsed ANF fits");
            assert_eq!(f.to_anf(), p);
        }
    }
});
