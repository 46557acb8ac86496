//! Error type shared across the workbench.

use crate::field::FieldTag;

/// Everything that can go wrong in the library.
///
/// Arithmetic, monoid construction, family evaluation, expression parsing
/// and spec-document validation all report through this one enum so that
/// callers (in particular the CLI) can map failures to exit codes uniformly.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Elements of different ambient fields never mix in arithmetic.
    #[error("field tag mismatch: {0} vs {1}")]
    TagMismatch(FieldTag, FieldTag),

    /// The Archimedean valuation is undefined at zero.
    #[error("Archimedean valuation undefined at 0")]
    UndefinedValuation,

    /// A p-adic valuation was requested for a non-prime modulus.
    #[error("invalid prime: {0}")]
    InvalidPrime(String),

    #[error("division by zero")]
    DivisionByZero,

    /// A precondition on an argument's range failed (negative target,
    /// zero index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A monoid generator was negative.
    #[error("invalid generator: {0} is negative")]
    InvalidGenerator(String),

    /// An element-level precondition failed: the value does not belong to
    /// the monoid it was claimed to belong to.
    #[error("not an element of the monoid: {0}")]
    NotAnElement(String),

    /// A claimed submonoid has a generator outside the ambient monoid.
    #[error("not a submonoid: generator {0} is not a member of the ambient monoid")]
    NotASubmonoid(String),

    /// A sub-level set that would be enumerated is provably infinite.
    #[error("infinite set: {0}")]
    InfiniteSet(String),

    /// A family term evaluated to a nonpositive or undefined value.
    #[error("family evaluation failed: {0}")]
    FamilyEval(String),

    /// The requested analysis does not apply to this input.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Unknown id in the worked-example registry.
    #[error("unknown example id: {0:?}")]
    UnknownExample(String),

    /// A substitution point for the evaluation oracle made a generator
    /// or target nonpositive.
    #[error("invalid evaluation point: {0}")]
    InvalidEvalPoint(String),

    /// `floor` applied to a value that is not a rational constant.
    #[error("floor of a nonconstant value: {0}")]
    FloorNonConstant(String),

    /// `p(...)` applied to a value that is not a positive integer.
    #[error("p() expects a positive integer, got {0}")]
    PrimeArgument(String),

    /// Expression syntax error, with a byte offset into the source and the
    /// set of tokens that would have been accepted there.
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    /// Spec-document schema violation, addressed by a path into the document.
    #[error("spec error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
