/// Resource limits for the exhaustive operations.
///
/// Exceeding any of them is reported as [`crate::Error::ResourceCap`]; no
/// operation truncates its output silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of term classes an enumeration may produce.
    pub max_classes: usize,
    /// Maximum rank accepted by enumeration and level construction.
    pub max_rank: usize,
    /// Maximum number of generators for exhaustive level operations.
    pub max_exhaustive_generators: u32,
    /// Maximum working-set size of a bounded subalgebra closure.
    pub max_closure_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_classes: 1_000_000,
            max_rank: 6,
            max_exhaustive_generators: 5,
            max_closure_elements: 2_000_000,
        }
    }
}
