#![no_main]
use libfuzzer_sys::fuzz_target;
use numeral_decomposer::dataset::NumeralDictionary;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = NumeralDictionary::from_json_str(text);
    }
});
