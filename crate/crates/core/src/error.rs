use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("homomorphism not well defined: {0}")]
    NotWellDefined(String),
    #[error("composite map is nonzero at generator {0}; not a complex")]
    CompositionNotZero(usize),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("involution is not free: {0}")]
    NotFree(String),
    #[error("not an elementary graded algebra: {0}")]
    NotElementary(String),
    #[error("real structure axiom violated: {0}")]
    NotRealStructure(String),
    #[error("not a 2-cocycle: {0}")]
    NotCocycle(String),
    #[error("cochain fails the reality condition: {0}")]
    NotReal(String),
    #[error("coefficient tower did not stabilize: {0}")]
    NotStabilized(String),
    #[error("modulus must be even, got {0}")]
    OddOrder(u64),
    #[error("anti-linear square is not scalar: {0}")]
    NonScalarSquare(String),
    #[error("size cap exceeded: {0}")]
    SizeExceeded(String),
    #[error("classes come from different contexts: {0}")]
    MixedContext(String),
    #[error("operation needs a trivial involution: {0}")]
    NontrivialInvolution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
