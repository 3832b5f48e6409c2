use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monoid law `{law}` fails at {witness:?}")]
    MonoidLawViolation { law: &'static str, witness: Vec<usize> },

    #[error("action law `{law}` fails at {witness:?}")]
    ActionLawViolation { law: &'static str, witness: Vec<usize> },

    #[error("group law `{law}` fails at {witness:?}")]
    GroupLawViolation { law: &'static str, witness: Vec<usize> },

    #[error("Boolean algebra law `{law}` fails at {witness:?}")]
    LatticeLawViolation { law: &'static str, witness: Vec<usize> },

    #[error("Kleene algebra axiom `{axiom}` fails at {witness:?}")]
    KleeneAxiomViolation { axiom: &'static str, witness: Vec<usize> },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("value {value} out of range (bound {bound})")]
    IndexOutOfRange { value: usize, bound: usize },

    #[error("codomain of the first map does not match the domain of the second")]
    CompositionMismatch,

    #[error("maps do not share a common domain")]
    DomainMismatch,

    #[error("domain is not a product change action")]
    NotAProductDomain,

    #[error("domain is not a coproduct change action")]
    NotACoproductDomain,

    #[error("not a derivative: condition fails at {witness:?}")]
    NotADerivative { witness: Vec<usize> },

    #[error("derivative is not regular: fails at {witness:?}")]
    NotRegular { witness: Vec<usize> },

    #[error("unknown object: {0}")]
    UnknownObject(String),

    #[error("model is not closed under change objects: {0}")]
    NotClosedUnderDelta(String),

    #[error("space of {size} points exceeds the bound {bound}")]
    SpaceTooLarge { size: u128, bound: u128 },

    #[error("derivative search space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("evaluation failed: {0}")]
    DomainError(String),

    #[error("unbound variable x{}", .0 + 1)]
    UnboundVariable(usize),

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("depth {requested} exceeds available depth {available}")]
    DepthExceeded { requested: usize, available: usize },

    #[error("tower has no structure maps; build it from a model")]
    NoStructureMaps,

    #[error("towers have different depths ({0} vs {1})")]
    DepthMismatch(usize, usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
