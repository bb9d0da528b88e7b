use thiserror::Error;

use crate::exactnum::Symbol;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("nonvanishing condition violated: {0} = 0")]
    ConditionViolated(String),
    #[error("symbol {0} is not assigned")]
    Unassigned(Symbol),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("algebra declared {declared} fails its identity check: {detail}")]
    KindCheckFailed { declared: String, detail: String },
    #[error("commutator not guaranteed Lie: {0}")]
    CommutatorNotLie(String),
    #[error("not a Lie algebra: {0}")]
    NotLie(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("basis computation exceeded budget ({reductions} reductions, {basis_len} basis elements, {pending_pairs} pairs pending)")]
    BudgetExceeded {
        reductions: u64,
        basis_len: usize,
        pending_pairs: usize,
    },
    #[error("grid enumeration of {candidates} candidates exceeds budget {budget}")]
    GridBudgetExceeded { candidates: u128, budget: u128 },
    #[error("root search exceeded budget for {0}")]
    RootBudgetExceeded(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("family degenerate: {0} lies in the relation ideal")]
    FamilyDegenerate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog label {0}")]
    UnknownLabel(String),
    #[error("catalog entry {label}: {detail}")]
    VerificationFailed { label: String, detail: String },
    #[error("catalog data: {0}")]
    Format(#[from] FormatError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("isomorphism search inconclusive: {0}")]
    Inconclusive(String),
    #[error("dimension {0} is outside the supported range")]
    UnsupportedDimension(usize),
    #[error("algebra has symbolic constants: {0}")]
    NotConcrete(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReproduceError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
