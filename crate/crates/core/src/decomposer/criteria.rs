//! Arithmetic tests deciding whether a found sub-numeral may be unpacked.
//!
//! `s` is the value of the sub-numeral, `x` the value of the whole numeral.

/// Necessary condition for a factor or summand: `2·s < x`.
pub fn criterion_necessary(s: i64, x: i64) -> bool {
    match s.checked_mul(2) {
        Some(double) => double < x,
        None => false,
    }
}

/// Sufficient condition: `s² ≤ x` guarantees `s` cannot contain the multiplier.
pub fn criterion_sufficient(s: i64, x: i64) -> bool {
    match s.checked_mul(s) {
        Some(square) => square <= x,
        None => false,
    }
}

/// Leaky gate for sub-numerals between `√x` and `x/2`.
///
/// `enclosing` is the value of the sub-numeral that just failed the
/// necessary test and whose suffix `nss` is. The candidate is admitted when
/// it does not divide `enclosing` and is smaller than `x`.
pub fn criterion_leaky(nss: i64, enclosing: i64, x: i64) -> bool {
    nss != 0 && enclosing % nss != 0 && nss < x
}
