use serde_json::{json, Value};
use thiserror::Error;

/// Errors raised while building or combining the algebraic objects of this crate.
///
/// Element references inside witnesses are carried by name so that they can
/// be reported back verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("order is not antisymmetric: `{a}` <= `{b}` and `{b}` <= `{a}`")]
    NotAntisymmetric { a: String, b: String },
    #[error("`{a}` and `{b}` have no unique {bound}")]
    NotALattice { a: String, b: String, bound: &'static str },
    #[error("lattice must have at least two elements")]
    TrivialLattice,
    #[error("{what}: size {size} out of range")]
    SizeOutOfRange { what: &'static str, size: usize },
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("map is not order-preserving: `{a}` <= `{b}` but images are not ordered")]
    NotOrderPreserving { a: String, b: String },
    #[error("multiplication is not associative at ({x}, {y}, {z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("`{0}` is not a two-sided identity")]
    NoIdentity(String),
    #[error("order is not compatible: `{x}` <= `{y}` but not after multiplying by `{z}` on the {side}")]
    NotCompatible { x: String, y: String, z: String, side: &'static str },
    #[error("map is not a monoid morphism at ({x}, {y})")]
    NotAMorphism { x: String, y: String },
    #[error("mismatched {0}")]
    Mismatched(&'static str),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("automaton is not complete: no transition from `{state}` on `{letter}`")]
    PartialAutomaton { state: String, letter: String },
    #[error("triple does not recognize the automaton's language")]
    NotARecognizer { word: Vec<String> },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("bad fraction `{0}`")]
    BadFraction(String),
    #[error("row `{state}` sums to {actual}, not 1")]
    RowSumNotOne { state: String, actual: String },
    #[error("negative entry {value} at ({state}, {target})")]
    NegativeEntry { state: String, target: String, value: String },
    #[error("chain has no ergodic class")]
    NoErgodicClass,
    #[error("no initial state `{0}`")]
    NoInitial(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("decomposition does not reconstruct the chain: {0}")]
    BadDecomposition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownElement(_) => "UnknownElement",
            Error::DuplicateName(_) => "DuplicateName",
            Error::NotAntisymmetric { .. } => "NotAntisymmetric",
            Error::NotALattice { .. } => "NotALattice",
            Error::TrivialLattice => "TrivialLattice",
            Error::SizeOutOfRange { .. } => "SizeOutOfRange",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::NotOrderPreserving { .. } => "NotOrderPreserving",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::NoIdentity(_) => "NoIdentity",
            Error::NotCompatible { .. } => "NotCompatible",
            Error::NotAMorphism { .. } => "NotAMorphism",
            Error::Mismatched(_) => "Mismatched",
            Error::UnknownLetter(_) => "UnknownLetter",
            Error::PartialAutomaton { .. } => "PartialAutomaton",
            Error::NotARecognizer { .. } => "NotARecognizer",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::BadFraction(_) => "BadFraction",
            Error::RowSumNotOne { .. } => "RowSumNotOne",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NoErgodicClass => "NoErgodicClass",
            Error::NoInitial(_) => "NoInitial",
            Error::SingularSystem => "SingularSystem",
            Error::BadDecomposition(_) => "BadDecomposition",
            Error::Parse(_) => "Parse",
        }
    }

    pub fn witness(&self) -> Value {
        match self {
            Error::UnknownElement(s)
            | Error::DuplicateName(s)
            | Error::NoIdentity(s)
            | Error::UnknownLetter(s)
            | Error::NoInitial(s)
            | Error::BadFraction(s)
            | Error::InternalInconsistency(s)
            | Error::BadDecomposition(s)
            | Error::Parse(s) => json!(s),
            Error::Mismatched(s) => json!(s),
            Error::NotAntisymmetric { a, b } | Error::NotOrderPreserving { a, b } => json!([a, b]),
            Error::NotALattice { a, b, bound } => json!({"pair": [a, b], "bound": bound}),
            Error::TrivialLattice | Error::NoErgodicClass | Error::SingularSystem => Value::Null,
            Error::SizeOutOfRange { what, size } => json!({"what": what, "size": size}),
            Error::SizeCapExceeded { what, size, cap } => {
                json!({"what": what, "size": size, "cap": cap})
            }
            Error::NotAssociative { x, y, z } => json!([x, y, z]),
            Error::NotCompatible { x, y, z, side } => {
                json!({"leq": [x, y], "by": z, "side": side})
            }
            Error::NotAMorphism { x, y } => json!([x, y]),
            Error::PartialAutomaton { state, letter } => json!([state, letter]),
            Error::NotARecognizer { word } => json!(word),
            Error::RowSumNotOne { state, actual } => json!({"state": state, "sum": actual}),
            Error::NegativeEntry { state, target, value } => {
                json!({"from": state, "to": target, "value": value})
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string(), "witness": self.witness()}})
    }
}
