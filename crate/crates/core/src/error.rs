use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u32),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("field of order {p}^{n} exceeds the supported table size")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("no irreducible polynomial found (search budget exhausted)")]
    NoIrreducibleFound,
    #[error("modulus is not an irreducible monic polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("invalid degree {degree}: must divide {h} and satisfy the stated lower bound")]
    InvalidDegree { degree: u32, h: u32 },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("tuple has only zero entries")]
    AllZero,
    #[error("entry {index} has degree above its bound {bound} - 1")]
    BoundViolated { index: usize, bound: usize },
    #[error("zero vector does not define a projective point")]
    ZeroVector,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("point lies on the projection axis")]
    PointOnAxis,
    #[error("projection frame is invalid: {0}")]
    BadFrame(String),
    #[error("cross-ratio needs four pairwise distinct points of a projective line")]
    NotDistinct,
    #[error("construction invariant violated: {0}")]
    SpecInvariantViolated(String),
    #[error("vector count {0} + 1 is not a power of q")]
    NonIntegralWeight(u64),
    #[error("wrong shape: {0}")]
    BadShape(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("axis meets the {0}")]
    DisjointnessFailure(&'static str),
    #[error("ambient space is not a projective plane")]
    NotAPlane,
    #[error("point set does not block every line")]
    NotBlocking,
    #[error("report carries no source basis")]
    MissingSource,
}
