//! Exact toolkit for Rota-Baxter operators on low-dimensional algebras.
//!
//! Algebras are given by structure constants over the Gaussian rationals
//! (with optional symbolic parameters), operators by matrices whose row `i`
//! is the image of `e_i`. Everything is exact; there is no floating point.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod exactnum;
pub mod format;
pub mod linalg;
pub mod operators;
pub mod polysolve;
pub mod reproduce;

pub use algebra::{Algebra, AlgebraKind, Element, LieInvariants};
pub use error::{
    AlgebraError, CatalogError, ClassifyError, FormatError, OperatorError, ReproduceError, ScalarError, SolveError,
};
pub use exactnum::{parse_poly, parse_scalar, Assignment, GaussRat, Monomial, Poly, Scalar, ScalarClass, Symbol};
pub use operators::{
    family_member, family_verify, is_derivation, is_rota_baxter, myb_residual, nijenhuis_residual, rb_residual,
    FamilyVerdict, Operator, OperatorFamily,
};
pub use polysolve::{
    buchberger, classification_cover, generate_system, grid_enumerate, ideal_member, solve_zero_dim, Budget,
    CoverReport, GroebnerBasis, MonomialOrder, PolySystem, ZeroDimResult,
};
