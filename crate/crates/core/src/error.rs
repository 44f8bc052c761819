use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, got n = {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ratio x{0}/x{0} is the trivial class")]
    TrivialRatio(usize),

    #[error("class has odd valuation along x{0}; extract the uniformizer first")]
    OddValuation(usize),

    #[error("cannot reduce b along x{0}: g is not attested to be a square modulo the coordinates")]
    UnattestedB(usize),

    #[error("class {0} does not have degree zero")]
    OddWeight(String),

    #[error("symbol degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid rho table: {0}")]
    InvalidRho(String),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("subform of rank {sub} does not fit into a form of rank {ambient}")]
    RankOverflow { sub: usize, ambient: usize },

    #[error("form has no b entry in slot 0")]
    MissingB,

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("point rejected: entry {0} vanishes")]
    VanishingEntry(usize),

    #[error("isotropy search budget of {0} vectors exceeded")]
    SearchBudget(u64),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial parse error: {0}")]
    Parse(String),

    #[error("polynomial structure: {0}")]
    Structure(String),

    #[error("infeasible parameters: {0} violated")]
    Infeasible(String),

    #[error("certificate schema: {0}")]
    Schema(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
