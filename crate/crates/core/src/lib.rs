//! Classical values of the Riemann zeta function.
//!
//! Exact routes produce `ζ(-n)` as rationals and `ζ(2n)` as rational
//! multiples of `π^{2n}`:
//!
//! * the closed forms in Bernoulli numbers,
//! * the residue at the origin of the Hankel integrand,
//! * the generating function `1/(e^{-z} - 1) + 1/z`,
//! * Abel sums of `1^m - 2^m + 3^m - ...`.
//!
//! The numeric side continues ζ to complex `s` by quadrature on a Hankel
//! contour and checks it against an Euler–Maclaurin evaluation and the
//! functional equation.

pub mod abel;
pub mod bernoulli;
pub mod exact;
pub mod numeric;
pub mod poly;
pub mod series;
pub mod zeta_exact;

pub use bernoulli::BernoulliTable;
pub use exact::{BigRational, ExactError, PiValue};
pub use numeric::{ComplexValue, ContourSpec, NumericConfig, NumericError};
pub use poly::{Polynomial, RationalFunction};
pub use series::{LaurentSeries, SeriesError};
pub use zeta_exact::{ClassicalValue, Route, ZetaError};
