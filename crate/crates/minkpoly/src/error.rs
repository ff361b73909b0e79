//! Error types shared by all geometry constructors.

use thiserror::Error;

/// Everything that can go wrong while building or querying a shape.
///
/// Constructors validate their full precondition set and name the first
/// violation they find; indices refer to the caller's input order.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("input contains a non-finite component")]
    NonFinite,
    #[error("tolerance must satisfy 0 < abs_eps <= rel_eps < 1e-3")]
    BadTolerance,
    #[error("spanning vectors are linearly dependent")]
    DegenerateSpan,
    #[error("orientation witness pairs to zero with the normal")]
    AmbiguousOrientation,
    #[error("covector is not null within tolerance")]
    NotNull,
    #[error("direction is not null")]
    NotNullDirection,
    #[error("point {0} does not lie on the hyperplane")]
    PointOffPlane(usize),
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("vertices do not span a null hyperplane")]
    NotNullSpan,
    #[error("edge {0} is not spacelike")]
    NonSpacelikeEdge(usize),
    #[error("face {0} has vanishing area")]
    DegenerateFace(usize),
    #[error("base vertex lies outside the triangle of its neighbors")]
    ConvexityViolation,
    #[error("hyperplanes are in degenerate position")]
    DegeneratePlanes,
    #[error("face is not spacelike (tolerance breakdown)")]
    NonSpacelikeFace,
    #[error("base tetrahedron is degenerate")]
    DegenerateBase,
    #[error("base tetrahedron does not lie in a spacelike hyperplane")]
    NonSpacelikeBase,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("hyperface {0} does not lie in a null hyperplane")]
    NonNullHyperface(usize),
    #[error("generator {0} is not spacelike")]
    NonSpacelikeGenerator(usize),
    #[error("chosen hyperface normals are linearly dependent")]
    DependentBasis,
    #[error("operation is not defined for the {0:?} polytope family")]
    FamilyUnsupported(crate::polytopes::Family),
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("area matrix is singular")]
    SingularAreaMatrix,
    #[error("numerical rank is unstable under step-size change")]
    RankUnstable,
    #[error("tiling extent of {0} cells exceeds the cap of {1}")]
    ExtentTooLarge(usize, usize),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
