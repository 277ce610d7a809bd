//! Error type shared by all geometric operations.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, GeomError>;

/// Failure modes of the light-cone constructions.
///
/// Degeneracies are reported, never patched over: a tangent configuration,
/// a rank drop or a vanishing denominator each surface as their own variant
/// so callers can decide whether to continue.
#[derive(Debug, Error)]
pub enum GeomError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ambient dimension {0} outside supported range 2..=6")]
    UnsupportedDimension(usize),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("point at infinity has no Euclidean representative")]
    PointAtInfinity,
    #[error("expected signature (1,1), found ({pos},{neg}) with rank {rank}")]
    DegenerateSignature { pos: usize, neg: usize, rank: usize },
    #[error("linearly dependent spanning set")]
    DependentBasis,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("points are not concircular (residual {residual:.3e})")]
    NotConcircular { residual: f64 },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("normal must be a unit vector, |n| = {0}")]
    NonUnitNormal(f64),
    #[error("vector is not unit spacelike: (v,v) = {0}")]
    NotUnitSpacelike(f64),
    #[error("input not incident: {0}")]
    InputNotIncident(&'static str),
    #[error("circle and sphere do not intersect")]
    NoIntersection,
    #[error("identical circles: second intersection is ambiguous")]
    AmbiguousIdenticalCircles,
    #[error("circles do not lie on a common 2-sphere")]
    NotCospherical,
    #[error("curve meets the target sphere at sample {index}")]
    CurveMeetsSphere { index: usize },
    #[error("net meets the target sphere at vertex ({i},{j})")]
    NetMeetsSphere { i: usize, j: usize },
    #[error("initial point does not lie on the target sphere")]
    InitialNotOnSphere,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("corresponding points coincide at index {index}")]
    RegularityViolation { index: usize },
    #[error("spheres are not orthogonal: (e1,e2) = {0}")]
    NotOrthogonalSpheres(f64),
    #[error("Miguel route mismatch at ({i},{j}): gap {gap:.3e}")]
    MiguelMismatch { i: usize, j: usize, gap: f64 },
    #[error("inconsistent cube: third-face residual {residual:.3e}")]
    InconsistentCube { residual: f64 },
    #[error("transform routes disagree: max gap {gap:.3e}")]
    OrderMismatch { gap: f64 },
    #[error("zero denominator in reduction formula")]
    ZeroDenominator,
    #[error("reduction equations are linearly dependent")]
    RankDeficient,
    #[error("normal field is not parallel: residual {residual:.3e}")]
    NonParallelFrame { residual: f64 },
    #[error("derivative of the sphere family vanishes")]
    DegenerateDerivative,
    #[error("curves do not form a Ribaucour pair (edge {index}, residual {residual:.3e})")]
    NonRibaucourInput { index: usize, residual: f64 },
    #[error("strip boundaries do not match")]
    BoundaryMismatch,
    #[error("step {index}: {source}")]
    AtStep {
        index: usize,
        #[source]
        source: Box<GeomError>,
    },
    #[error("stage {stage}: {source}")]
    AtStage {
        stage: &'static str,
        #[source]
        source: Box<GeomError>,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl GeomError {
    /// Wraps an error with the propagation step (edge or sample index) it
    /// occurred at.
    pub fn at_step(self, index: usize) -> Self {
        GeomError::AtStep {
            index,
            source: Box::new(self),
        }
    }

    /// Wraps an error with the pipeline stage it occurred in.
    pub fn at_stage(self, stage: &'static str) -> Self {
        GeomError::AtStage {
            stage,
            source: Box::new(self),
        }
    }
}
