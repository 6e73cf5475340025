//! Exact computations around half-spin representations of `Spin(2n)`:
//! Clifford models, Pfaffian coordinates, Weyl characters and plethysms,
//! secant-variety tables and a `GL₂` localization toy model.

pub mod error;
pub mod exact;
pub mod exterior;
pub mod linalg;
pub mod pfaffian;
pub mod secant;
pub mod toy;
pub mod weyl;

pub use error::{Error, Result};
pub use exact::{binomial, series_coeffs, IntPoly, IntegerSeries, Rational};
