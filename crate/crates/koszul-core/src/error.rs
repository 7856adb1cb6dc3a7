use alloc::string::String;
use core::fmt;

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    FieldMismatch { left: Field, right: Field },
    DivisionByZero,
    InvalidField(String),
    DuplicateLabel(String),
    UnknownLabel(String),
    UnknownObject(String),
    DegreeMismatch(String),
    NotAComplex { witness: String },
    NotSplit { object: String },
    IllFormedDifferential(String),
    IllFormed(String),
    NotCurvedMap { witness: String },
    EnumerationTooLarge { count: u128 },
    TruncationTooSmall { needed: usize },
    IncompleteCandidate(String),
    ComparisonFailure { witness: String },
    NotSimplicial { witness: String },
    Mismatch(String),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch { left, right } => write!(f, "field mismatch: {left} vs {right}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InvalidField(s) => write!(f, "invalid field {s}"),
            Error::DuplicateLabel(s) => write!(f, "duplicate label {s}"),
            Error::UnknownLabel(s) => write!(f, "unknown label {s}"),
            Error::UnknownObject(s) => write!(f, "unknown object {s}"),
            Error::DegreeMismatch(s) => write!(f, "degree mismatch: {s}"),
            Error::NotAComplex { witness } => write!(f, "d^2 != 0 at {witness}"),
            Error::NotSplit { object } => write!(f, "identity of {object} is zero"),
            Error::IllFormedDifferential(s) => write!(f, "ill-formed differential: {s}"),
            Error::IllFormed(s) => write!(f, "ill-formed: {s}"),
            Error::NotCurvedMap { witness } => write!(f, "not a curved map: {witness}"),
            Error::EnumerationTooLarge { count } => {
                write!(f, "enumeration of {count} candidates exceeds budget")
            }
            Error::TruncationTooSmall { needed } => {
                write!(f, "word bound too small, need at least {needed}")
            }
            Error::IncompleteCandidate(s) => write!(f, "incomplete candidate: {s}"),
            Error::ComparisonFailure { witness } => write!(f, "comparison failed at {witness}"),
            Error::NotSimplicial { witness } => write!(f, "not simplicial at {witness}"),
            Error::Mismatch(s) => write!(f, "mismatch: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

/// Result of a validator: a list of failed laws, each with a witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub failures: alloc::vec::Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub law: String,
    pub witness: String,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, law: &str, witness: String) {
        self.failures.push(Failure {
            law: law.into(),
            witness,
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.failures.extend(other.failures);
    }

    /// True if some failure concerns `law`.
    pub fn has(&self, law: &str) -> bool {
        self.failures.iter().any(|f| f.law == law)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        for (i, x) in self.failures.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", x.law, x.witness)?;
        }
        Ok(())
    }
}
