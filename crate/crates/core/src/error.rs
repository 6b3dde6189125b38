use thiserror::Error;

use crate::arrangement::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate line: coefficients of x and y are both zero")]
    DegenerateLine,

    #[error("lines {0} and {1} are equal")]
    EqualLines(usize, usize),

    #[error("lines {0} and {1} are parallel but the arrangement forbids parallels")]
    ParallelLines(usize, usize),

    #[error("invalid arrangement: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidArrangement(Vec<Violation>),

    #[error("inconsistent lattice: {0}")]
    InconsistentLattice(String),

    #[error("parallel classes do not partition the {0} lines")]
    NotAPartition(usize),

    #[error("line index {line} out of range for {n_lines} lines")]
    LineOutOfRange { line: usize, n_lines: usize },

    #[error("unknown point id {0}")]
    UnknownPoint(usize),

    #[error("point {0} is not a multiple point")]
    NotMultiplePoint(usize),

    #[error("line {0} is not generic: it passes through a multiple point")]
    NotGeneric(usize),

    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subgroups live in different ambient groups (Z^{left} vs Z^{right})")]
    AmbientMismatch { left: usize, right: usize },

    #[error("conjugator table has an entry for point {point} and line {line}, which are not incident")]
    ConjugatorKey { point: usize, line: usize },

    #[error("generator index {index} out of range for {n_generators} generators")]
    GeneratorOutOfRange { index: usize, n_generators: usize },

    #[error("relator index {index} out of range for {n_relators} relators")]
    RelatorOutOfRange { index: usize, n_relators: usize },

    #[error("generator label {0:?} is already in use")]
    DuplicateLabel(String),

    #[error("no relator expresses generator {0} as a word in the others")]
    NotEliminable(String),

    #[error("torsion in the commutator summand at point {0}")]
    Torsion(usize),

    #[error("cycle does not match the graph: {0}")]
    CycleMismatch(String),

    #[error("the multiple-point graph has no cycle")]
    NoCycle,

    #[error("the multiple-point graph has beta = {0}, expected a forest")]
    NotForest(usize),

    #[error("certificate check failed: {0}")]
    CertificateFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
}
