use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cycle detected: relation would not be irreflexive")]
    CycleDetected,
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("{0:?} is not an antichain")]
    NotAntichain(Vec<usize>),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("{0:?} is not a block")]
    NotABlock(Vec<usize>),
    #[error("block containment violated")]
    BlockContainment,
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("orbit graph is not connected")]
    NotConnected,
    #[error("cell {0} is a cutvertex of the orbit graph")]
    Cutvertex(usize),
    #[error("structured set is not tight: {0}")]
    NotTight(String),
    #[error("improper nesting: level {level} of cell {cell} carries an alternating group")]
    ImproperNesting { cell: usize, level: usize },
    #[error("restriction to cell {0} is not primitive")]
    NotPrimitive(usize),
    #[error("width {0} exceeds 11")]
    WidthExceeded(usize),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}
