#![no_main]

use bentforge::report::ClassReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = ClassReport::from_json(text) {
        let json = r.to_json();
        assert_eq!(
            ClassReport::from_json(&json).expect("round trip").to_json(),
            json
        );
    }
});
