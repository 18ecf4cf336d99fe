//! Arithmetic decomposition of numeral words.
//!
//! A numeral such as `"sixty-nine"` is split into a *root* (`_ty-_`) and the
//! sub-numerals that fill its slots (`six`, `nine`). Sub-numerals are found by
//! plain substring lookup in a number/numeral dictionary; whether a found
//! sub-numeral is unpacked is decided purely by arithmetic on the values
//! involved (`2·s < x`, `s² ≤ x`, a divisibility test, and a final
//! factor·multiplier + summand check).
//!
//! Decomposing every numeral of a language and grouping by root yields a
//! lexicon of root functions; [`fitter`] then looks for an exact
//! integer-coefficient affine equation behind each function.
//!
//! ```
//! use numeral_decomposer::{dataset::NumeralDictionary, decomposer};
//!
//! let dict = NumeralDictionary::from_tsv_str("en", "6\tsix\n9\tnine\n60\tsixty\n69\tsixty-nine\n").unwrap();
//! let d = decomposer::decompose_v6(&dict, "sixty-nine").unwrap();
//! assert_eq!(d.to_string(), "_ty-_(6, 9)");
//! ```

pub mod cli;
pub mod dataset;
pub mod decomposer;
pub mod eval;
pub mod fitter;
pub mod lexicon;

pub use dataset::{DatasetError, NumeralDictionary};
pub use decomposer::{Decomposition, Engine};
pub use fitter::{AffineEquation, FitOutcome};
pub use lexicon::{LexiconEntry, RootKey};
