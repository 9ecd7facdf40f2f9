use std::fmt;

use thiserror::Error;

/// A single violated law found while validating raw category tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawViolation {
    DuplicateObject(String),
    DuplicateMorphism(String),
    UnknownObject { morphism: String, object: String },
    UnknownMorphism(String),
    MissingIdentity(String),
    IdentityNotEndomorphism { object: String, morphism: String },
    NotComposable { first: String, then: String },
    ConflictingComposite { first: String, then: String },
    CompositeWrongEnds { first: String, then: String, result: String },
    MissingComposite { first: String, then: String },
    BrokenUnit { morphism: String, side: &'static str },
    BrokenAssociativity { f: String, g: String, h: String },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LawViolation::*;
        match self {
            DuplicateObject(o) => write!(f, "duplicate object id `{o}`"),
            DuplicateMorphism(m) => write!(f, "duplicate morphism id `{m}`"),
            UnknownObject { morphism, object } => {
                write!(f, "morphism `{morphism}` refers to unknown object `{object}`")
            }
            UnknownMorphism(m) => write!(f, "unknown morphism id `{m}`"),
            MissingIdentity(o) => write!(f, "object `{o}` has no identity"),
            IdentityNotEndomorphism { object, morphism } => {
                write!(f, "identity `{morphism}` of `{object}` is not an endomorphism of it")
            }
            NotComposable { first, then } => {
                write!(f, "composite entry for non-composable pair (`{first}`, `{then}`)")
            }
            ConflictingComposite { first, then } => {
                write!(f, "conflicting composites for (`{first}`, `{then}`)")
            }
            CompositeWrongEnds { first, then, result } => write!(
                f,
                "composite `{result}` of (`{first}`, `{then}`) has the wrong source or target"
            ),
            MissingComposite { first, then } => {
                write!(f, "missing composite for (`{first}`, `{then}`)")
            }
            BrokenUnit { morphism, side } => {
                write!(f, "{side} unit law fails for `{morphism}`")
            }
            BrokenAssociativity { f: a, g, h } => {
                write!(f, "associativity fails on (`{a}`, `{g}`, `{h}`)")
            }
        }
    }
}

/// Validation failure: the first violated law plus the full report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    pub first: LawViolation,
    pub violations: Vec<LawViolation>,
}

impl ValidationError {
    pub fn new(violations: Vec<LawViolation>) -> Option<Self> {
        let first = violations.first()?.clone();
        Some(Self { first, violations })
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.first)?;
        if self.violations.len() > 1 {
            write!(f, " (and {} more)", self.violations.len() - 1)?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid category: {0}")]
    Validation(ValidationError),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("objects live over different base categories")]
    BaseMismatch,
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("map is not natural: {0}")]
    NotNatural(String),
    #[error("maps do not share a codomain")]
    TargetMismatch,
    #[error("map is not a monomorphism")]
    NotMono,
    #[error("ambient is not locally cartesian closed: {0}")]
    AmbientNotLcc(String),
    #[error("isomorphism search failed: {0}")]
    IsoSearchFailed(String),
    #[error("simplicial object is not Segal: {0}")]
    NotSegal(String),
    #[error("not a Segal set: {0}")]
    NotSegalSet(String),
    #[error("invalid simplicial object: {0}")]
    InvalidSimplicial(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<ValidationError> for Error {
    fn from(e: ValidationError) -> Self {
        Error::Validation(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
