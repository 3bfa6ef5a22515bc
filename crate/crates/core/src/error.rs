use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable index 0 at byte {pos}; indices start at 1")]
    ZeroVariable { pos: usize },

    #[error("variable x{index} exceeds the {generators} generators of the model")]
    VariableOutOfRange { index: u32, generators: u32 },

    #[error("variable x{0} has no assigned value")]
    UnassignedVariable(u32),

    #[error("{what} exceeds the configured limit of {limit}")]
    ResourceCap { what: &'static str, limit: usize },

    #[error("expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("term {0} is not reduced")]
    NotReduced(String),

    #[error("term is not in canonical form: {0}")]
    NotCanonical(String),

    #[error("expected exactly one occurrence of x{var}, found {count}")]
    OccurrenceCount { var: u32, count: usize },

    #[error("pivot x{pivot} occurs in shift {shift}")]
    PivotInShift { pivot: u32, shift: String },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("length descent violated: total image length went from {before} to {after}")]
    DescentViolated { before: usize, after: usize },

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("point {0:?} is listed twice")]
    DuplicatePoint(String),

    #[error("block {block:?} references unknown point {point:?}")]
    UnknownPoint { point: String, block: [String; 3] },

    #[error("block {0:?} repeats a point")]
    RepeatedPoint([String; 3]),

    #[error("pair ({a}, {b}) lies in two blocks: {first:?} and {second:?}")]
    DuplicatePair {
        a: String,
        b: String,
        first: [String; 3],
        second: [String; 3],
    },

    #[error("pair ({0}, {1}) lies in no block; a finite model needs a full triple system")]
    UncoveredPair(String, String),

    #[error("quasigroup axiom fails: {0}")]
    AxiomViolation(String),

    #[error("no built-in Steiner triple system of order {0} (available: 7, 9)")]
    UnsupportedOrder(u32),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("{0}")]
    Precondition(String),
}
