#![no_main]
use libfuzzer_sys::fuzz_target;
use numeral_decomposer::dataset::{LoadOptions, NumeralDictionary};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for normalize_nfc in [false, true] {
        if let Ok(dict) =
            NumeralDictionary::from_tsv_str_with("fz", text, LoadOptions { normalize_nfc })
        {
            let again = NumeralDictionary::from_tsv_str("fz", &dict.to_tsv()).unwrap();
            assert_eq!(dict.len(), again.len());
        }
    }
});
