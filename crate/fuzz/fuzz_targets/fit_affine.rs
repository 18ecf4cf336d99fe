#![no_main]
use libfuzzer_sys::fuzz_target;
use numeral_decomposer::fitter::{fit_affine, verify, FitError, FitOutcome};

// First byte picks the arity (0..=3); the rest is read as little-endian i16s.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let arity = (head % 4) as usize;
    let nums: Vec<i64> = rest
        .chunks_exact(2)
        .map(|c| i16::from_le_bytes([c[0], c[1]]) as i64)
        .collect();
    let samples: Vec<(Vec<i64>, i64)> = nums
        .chunks_exact(arity + 1)
        .take(12)
        .map(|c| (c[..arity].to_vec(), c[arity]))
        .collect();
    if samples.is_empty() {
        return;
    }
    match fit_affine(samples.iter().map(|(a, v)| (a.as_slice(), *v)), arity) {
        Ok(FitOutcome::Exact(eq)) => {
            assert!(verify(&eq, samples.iter().map(|(a, v)| (a.as_slice(), *v))))
        }
        Ok(_) | Err(FitError::CoefficientOverflow) => {}
        Err(e) => panic!("{e}"),
    }
});
