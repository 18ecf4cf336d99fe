#![no_main]
use libfuzzer_sys::fuzz_target;
use numeral_decomposer::dataset::NumeralDictionary;
use numeral_decomposer::decomposer::{DecomposeError, Decomposer, Engine};

// Input: a TSV dictionary; every numeral in it is decomposed by every engine.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(dict) = NumeralDictionary::from_tsv_str("fz", text) else {
        return;
    };
    for engine in [Engine::V1, Engine::V2, Engine::V6] {
        let decomposer = Decomposer::new(engine).with_trace(true);
        for (n, w) in dict.entries() {
            match decomposer.decompose_entry(&dict, w, n) {
                Ok(d) => assert_eq!(d.reconstruct(), d.word),
                Err(DecomposeError::OverlappingSpan { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
});
