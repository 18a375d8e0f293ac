use thiserror::Error;

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(Rat),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: Rat, right: Box<Rat> },
    #[error("half-width {half_width} outside [0, {modulus}/2]")]
    HalfWidthOutOfRange { half_width: Rat, modulus: Box<Rat> },
    #[error("empty range [{lo}, {hi}]")]
    EmptyRange { lo: Rat, hi: Box<Rat> },
    #[error("no rational with denominator <= {bound_den} in [{lo}, {hi}]")]
    NoRepresentable {
        lo: Rat,
        hi: Box<Rat>,
        bound_den: u64,
    },
    #[error("denominator bound must be at least 1")]
    BadDenominatorBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("images {0:?} do not form a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("base group mismatch: {0}")]
    BaseMismatch(String),
    #[error("permutation is not a power of the long cycle")]
    NotCyclic,
    #[error("block sizes have {blocks} entries but the permutation has degree {degree}")]
    BlockCount { blocks: usize, degree: usize },
    #[error("action undefined: {0}")]
    ActionUndefined(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("outer arity {outer} but {inners} inner operations")]
    ArityMismatch { outer: usize, inners: usize },
    #[error("{instance}: invariant violated: {detail}")]
    Invariant {
        instance: &'static str,
        detail: String,
    },
    #[error("cannot mix operations from different operads: {0}")]
    MixedInstances(String),
    #[error("unknown operad instance {0:?}")]
    UnknownInstance(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("{variant}: invariant violated: {detail}")]
    Invariant {
        variant: &'static str,
        detail: String,
    },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("coincident centers at indices {0} and {1}")]
    Coincident(usize, usize),
    #[error("wrong variant: expected {expected}, got {got}")]
    WrongVariant {
        expected: &'static str,
        got: &'static str,
    },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Operad(#[from] OperadError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicError {
    #[error("ill-formed word: {0}")]
    IllFormed(String),
    #[error("cannot parse word {0:?}")]
    Parse(String),
    #[error("degree mismatch: operator expects {expected}, point has {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarError {
    #[error("monoid table invalid: {0}")]
    InvalidMonoid(String),
    #[error("pointed set invalid: {0}")]
    InvalidPointedSet(String),
    #[error("face index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("truncation overflow")]
    Overflow,
    #[error("label {0} out of range")]
    BadLabel(usize),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {name:?}; valid suites: {valid}")]
    UnknownSuite { name: String, valid: String },
    #[error("malformed config: {0}")]
    Config(String),
    #[error("unknown element kind {0:?}")]
    UnknownKind(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}
