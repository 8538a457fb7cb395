use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomial is constant in w; resultant in w is undefined")]
    ZeroWDegree,

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("root iteration failed to converge after {max_iter} iterations (worst residual {residual:e})")]
    NoConvergence { max_iter: usize, residual: f64 },

    #[error("boundary sample too close to a zero (min |p| = {min_abs:e} < threshold {threshold:e}); winding number unreliable")]
    BoundaryZero { min_abs: f64, threshold: f64 },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },

    #[error("polynomial is not square-free in w (resultant with its w-derivative vanishes identically)")]
    NonSquareFree,

    #[error("w-degree drops at z = {z}; fiber is degenerate there")]
    DegenerateSlice { z: String },

    #[error("another discriminant point lies within the probe radius {probe} of the classified point")]
    ProbeTooLarge { probe: f64 },

    #[error("trivial monodromy with distinct sheet values: the probed point is not a discriminant point")]
    ProbeFalsePositive,

    #[error("Newton polygon is trivial: the polynomial is a single monomial")]
    TrivialPolygon,

    #[error("branches not separated at truncation order {order}; increase the order")]
    OrderTooSmall { order: usize },

    #[error("path tracking ambiguous at step {step} even at {steps_per_turn} steps per turn")]
    PathJump { step: usize, steps_per_turn: usize },

    #[error("loop passes within {distance:e} of a discriminant point")]
    OnDiscriminant { distance: f64 },

    #[error("start fiber has coincident points; monodromy labels are undefined")]
    CoincidentFiber,

    #[error("sampling grid misses the domain entirely")]
    EmptyDomain,

    #[error("series truncation could alter the zero count (tail bound {tail:e} vs boundary min {boundary_min:e})")]
    TruncationDominates { tail: f64, boundary_min: f64 },

    #[error("polydisk is not a good neighborhood: witness (z, w) = ({z}, {w})")]
    NotGood { z: String, w: String },

    #[error("composition degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("restriction to the line is identically zero: the line lies inside the curve")]
    IdenticallyZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<V> = std::result::Result<V, Error>;
