//! Extremal length machinery for the twice-punctured plane `C \ {-1, 1}`.
//!
//! * [`word`]: reduced words in the free group on `a1`, `a2`.
//! * [`syllables`]: syllable decomposition, the invariant `Λ(w)` and
//!   bounds on extremal length with their exceptional cases.
//! * [`elliptic`]: extremal length of the rectangle `R^M` via complete
//!   elliptic integrals, checked against quadrature.
//! * [`covering`]: the covering `C \ iZ -> C \ {-1, 1}`, path lifting,
//!   slalom decomposition and word/curve conversion.
//! * [`braid`]: pure 3-braids and the cross-ratio homomorphism onto the
//!   free group.
//! * [`cli`]: the `slalom` command-line front end.
//!
//! ```
//! use slalom::syllables::lambda_invariant;
//! use slalom::word::parse_word;
//!
//! let w = parse_word("a1^3").unwrap();
//! assert!((lambda_invariant(&w) - 4f64.ln()).abs() < 1e-15);
//! ```

pub mod braid;
pub mod cli;
pub mod covering;
pub mod elliptic;
pub mod quadrature;
pub mod svg;
pub mod syllables;
pub mod word;

mod error;

pub use error::Error;
