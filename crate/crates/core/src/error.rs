use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("unknown standard space `{0}`")]
    UnknownSpace(String),
    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("parameter {0} lies outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("epsilon {0} must lie strictly between 0 and 1")]
    EpsilonOutOfRange(f64),
    #[error("interval [{a}, {b}] is empty")]
    EmptyInterval { a: f64, b: f64 },
    #[error("endpoint {beta} is neither end of [{a}, {b}]")]
    EndpointNotInInterval { beta: f64, a: f64, b: f64 },
    #[error("point has non-finite coordinate at index {0}")]
    NonFinite(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("concatenation endpoints differ by {gap}")]
    EndpointMismatch { gap: f64 },
    #[error("reparametrization decreases by {drop} after t = {at}")]
    NotMonotone { drop: f64, at: f64 },
    #[error("reparametrization leaves [0, 1] or misses an endpoint (defect {0})")]
    NotEndpointPreserving(f64),
    #[error("shape `{0}` needs a parameter t")]
    MissingParameter(&'static str),
    #[error("homotopy is not {side} semistationary (violation {violation}); use weak_lift")]
    NotSemistationary { side: &'static str, violation: f64 },
    #[error("precondition `{contract}` fails with violation {violation}")]
    Precondition { contract: String, violation: f64 },
    #[error("probe {index} is not a valid pointed path: {reason}")]
    InvalidProbe { index: usize, reason: String },
    #[error("homotopy chain is empty")]
    EmptyChain,
    #[error("chain has {len} steps after pruning; supported depth is {max}")]
    UnsupportedDepth { len: usize, max: usize },
    #[error("base of fibration `{0}` is not a cylinder B x I")]
    NotCylinder(String),
    #[error("no probe points supplied for {0}")]
    NoProbes(&'static str),
}
