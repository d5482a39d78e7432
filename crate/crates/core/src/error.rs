use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across the crate. Variants map 1:1 onto CLI exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("1-skeleton is not a simple graph: {0}")]
    NonSimpleSkeleton(String),

    #[error("bad cube shape: {0}")]
    BadCubeShape(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("ball would have about {projected} vertices, above the cap {cap}")]
    BallTooLarge { projected: usize, cap: usize },

    #[error("input complex is disconnected")]
    DisconnectedInput,

    #[error("complex is not flag; minimal non-spanning clique {0:?}")]
    NotFlag(Vec<String>),

    #[error("hyperplane {hyperplane} does not two-side the complex ({components} components)")]
    NonSeparating { hyperplane: u32, components: usize },

    #[error("no horizon cycle for hyperplane {hyperplane} at radius {radius}: {reason}")]
    NoHorizonCycle {
        hyperplane: u32,
        radius: u32,
        reason: String,
    },

    #[error("connector family on hyperplane {hyperplane} is not admissible")]
    NotAdmissible {
        hyperplane: u32,
        /// Indices of flip constraints whose GF(2) sum is the contradiction 0 = 1.
        certificate: Vec<usize>,
    },

    #[error("truncated complex of hyperplane {hyperplane} is disconnected ({components} components)")]
    DisconnectedHorizon { hyperplane: u32, components: usize },

    #[error("hyperplane {hyperplane} has no vertices outside radius {radius}")]
    DomainTooSmall { hyperplane: u32, radius: u32 },

    #[error("vertex {0:?} is outside the domain")]
    OutOfDomain(String),

    #[error("connectors overlap without being identical")]
    OverlappingConnectors,

    #[error("regions do not cover the curve ({0} samples uncovered)")]
    NotACover(usize),

    #[error("point is not on the hyperplane trace")]
    NotOnTrace,

    #[error("successor chain stalled at parameter {0}")]
    ChainStalled(f64),

    #[error("invalid scale parameters: {0}")]
    BadScale(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
