use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors;
/// they are reported through verdict values.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("at most {max} vertices are supported, got {got}")]
    TooManyVertices { got: usize, max: usize },

    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("vertex labelings do not match")]
    LabelingMismatch,

    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),

    #[error("operation is undefined on the void complex")]
    VoidComplex,

    #[error("complex is not pure")]
    NotPure,

    #[error("not a subcomplex: face {0} is missing from the ambient complex")]
    NotSubcomplex(String),

    #[error("facet order is not a permutation of the facets: {0}")]
    NotPermutation(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("invalid toric context: {0}")]
    InvalidContext(String),

    #[error("removing vertex `{0}` would empty its block")]
    BlockWouldEmpty(String),

    #[error("operation requires a product of projective spaces")]
    NotAProduct,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("monomial ideal is not square-free")]
    NotSquareFree,

    #[error("colon by the zero ideal is undefined")]
    ColonByZero,

    #[error("facet {0} lies in the irrelevant complex")]
    FacetIrrelevant(String),

    #[error("irrelevant complex is not contained in the irrelevant complex of the ambient space (face {0})")]
    NotIrrelevant(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
