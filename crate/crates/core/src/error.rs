use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain mismatch: expected size {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },

    #[error("measurement domains differ: `{left}` vs `{right}`")]
    DomainLabelMismatch { left: String, right: String },

    #[error("not a bijection of 0..{size}: {reason}")]
    NotBijective { size: usize, reason: String },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("label `{0}` appears more than once")]
    RepeatedLabel(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("size cap exceeded: {what} would reach {size}, cap is {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("element {0} is not a member of the group")]
    NotInGroup(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex permutation is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("unsupported constraint form: {0}")]
    UnsupportedConstraint(String),

    #[error("not a perception pair: {0}")]
    NotPerceptionPair(String),

    #[error("empty sample")]
    EmptySample,

    #[error("not a generalized permutant: {0}")]
    NotPermutant(String),

    #[error("empty permutant")]
    EmptyPermutant,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("incompatible operators: {0}")]
    Incompatible(String),

    #[error("invalid permutant measure: {0}")]
    InvalidMeasure(String),

    #[error("operator is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("group does not act transitively on the domain")]
    NotTransitive,

    #[error("decomposition needs an endo-operator with the identity homomorphism")]
    NotEndomorphic,

    #[error("no permutant measure with total variation at most 1 reproduces the operator")]
    NoDecomposition,
}
