use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex index {vertex} out of range for a complex with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),

    #[error("empty simplex")]
    EmptySimplex,

    #[error("vertex function has {got} values, complex has {expected} vertices")]
    VertexCountMismatch { expected: usize, got: usize },

    #[error("vertex {vertex} has {got} components, expected {expected}")]
    ArityMismatch { vertex: usize, expected: usize, got: usize },

    #[error("non-finite value at vertex {vertex}")]
    NonFiniteValue { vertex: usize },

    #[error("codomain dimension must be positive")]
    ZeroArity,

    #[error("field characteristic {0} is not a prime below 65536")]
    InvalidCharacteristic(u32),

    #[error("permutation is not a bijection on {0} vertices")]
    NotABijection(usize),

    #[error("permutation acts on {got} vertices, expected {expected}")]
    PermutationSizeMismatch { expected: usize, got: usize },

    #[error("group closure exceeds cap of {0} elements")]
    GroupCapExceeded(usize),

    #[error("element list is not a group: {0}")]
    NotAGroup(String),

    #[error("permutation is not a simplicial automorphism: it maps {simplex:?} to a non-simplex")]
    NotAnAutomorphism { simplex: Vec<usize> },

    #[error("action is not free: a non-identity element fixes simplex {simplex:?}")]
    NonFreeAction { simplex: Vec<usize> },

    #[error("action is not regular: simplex {simplex:?} contains two vertices of one orbit; apply barycentric subdivision (twice suffices)")]
    IrregularAction { simplex: Vec<usize> },

    #[error("quotient is not a simplicial complex: distinct simplex orbits share the vertex-orbit set {orbits:?}; apply barycentric subdivision")]
    QuotientNotSimplicial { orbits: Vec<usize> },

    #[error("operation requires scalar grades (k = 1), got k = {0}")]
    NotScalar(usize),

    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquareNonzero(usize),

    #[error("grade of a boundary face exceeds the grade of its coface in degree {0}")]
    NonMonotoneGrades(usize),

    #[error("query requires u strictly below v in every component")]
    NotStrictlyBelow,

    #[error("query point has {got} components, expected {expected}")]
    QueryArity { expected: usize, got: usize },

    #[error("empty group sample")]
    EmptySample,

    #[error("filtered complexes are built on different simplicial complexes")]
    ComplexMismatch,

    #[error("instance too large for the dense oracle: {size} basis elements (cap {cap})")]
    OracleSizeCap { size: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// True for errors caused by a well-formed input that fails a mathematical
    /// precondition (as opposed to malformed data).
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Format(_))
    }
}
