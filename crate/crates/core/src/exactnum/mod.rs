//! Exact scalar arithmetic: Gaussian rationals, multivariate polynomials,
//! and quotients with recorded nonvanishing denominators. No floating point.

mod gauss;
mod parse;
mod poly;
mod scalar;

pub use gauss::GaussRat;
pub use parse::{parse_poly, parse_scalar};
pub use poly::{Monomial, Poly, Symbol};
pub use scalar::{Assignment, Scalar, ScalarClass};

/// Builds an assignment from `(name, value)` pairs.
pub fn assignment<'a>(pairs: impl IntoIterator<Item = (&'a str, GaussRat)>) -> Assignment {
    pairs.into_iter().map(|(k, v)| (Symbol::new(k), v)).collect()
}
