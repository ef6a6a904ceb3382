use thiserror::Error;

use crate::elements::{Element, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} outside the ground set 1..={n}")]
    ElementOutOfRange { element: Element, n: usize },

    #[error("ground sets larger than 64 elements are not supported (got {0})")]
    GroundSetTooLarge(usize),

    #[error("circuits must be nonempty")]
    EmptyCircuit,

    #[error("circuit {smaller} is contained in circuit {larger}")]
    ComparableCircuits {
        smaller: ElementSet,
        larger: ElementSet,
    },

    #[error("circuit elimination fails for {first}, {second} at element {element}")]
    EliminationFailure {
        first: ElementSet,
        second: ElementSet,
        element: Element,
    },

    #[error("{0} is not unidependent")]
    NotUnidependent(ElementSet),

    #[error("matroid has a loop at {0}")]
    LoopPresent(Element),

    #[error("cannot contract the loop {0}")]
    LoopContraction(Element),

    #[error("{0} is not a flat")]
    NotAFlat(ElementSet),

    #[error("{0} is dependent")]
    DependentInput(ElementSet),

    #[error("word {0:?} repeats an element")]
    RepeatedElement(Vec<Element>),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a diagonal basis: {0}")]
    NotDiagonal(String),

    #[error("matroid is not simple")]
    NotSimple,

    #[error("vector {0} does not have last coordinate 1")]
    NotAffineNormalized(Element),

    #[error("element #{0} of the proposed basis is not in the ideal")]
    NotInIdeal(usize),

    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),

    #[error("vector {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("invalid flat basis: {0}")]
    InvalidFlatBasis(String),

    #[error("invalid commutation scalars: {0}")]
    InvalidBeta(String),

    #[error("{0}")]
    Invalid(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
