//! Lie-theoretic invariants of PU(p,q) period domains.
//!
//! The crate is organised by subsystem:
//!
//! * [`rootcalc`]: type-A roots, the parabolic subalgebra attached to a
//!   tuple of Hodge numbers, its grading, and exact block-matrix kernels.
//! * [`domain`]: Hodge numbers, flags of `C^{p+q}`, membership in the period
//!   domain and the projections to the symmetric space.
//! * [`pi2`]: second homotopy classes of root spheres and the map induced by
//!   the projection to the compact Grassmannian.
//! * [`higgs`]: pointwise Higgs-field algebra and the rank-one lemma.
//! * [`horizontal`]: the bracket 2-form on the superhorizontal fiber,
//!   isotropic and regular 2-planes, and the `su(2,2)` embeddings.
//! * [`spheremesh`]: even triangulations of the round sphere, their
//!   3-colorings, face geometry and the gluing polyhedron.
//!
//! All algebraic decisions are made in exact Gaussian-rational arithmetic
//! ([`linalg`]); only the sphere meshes use floating point.

pub mod domain;
pub mod higgs;
pub mod horizontal;
pub mod intlin;
pub mod linalg;
pub mod pi2;
pub mod rootcalc;
pub mod sampling;
pub mod spheremesh;

pub use domain::HodgeNumbers;
pub use linalg::{Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid ranks: {0}")]
    InvalidRanks(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("relation closure failed: {0}")]
    RelationClosure(String),
    #[error("triangulation is not 3-colorable: {0}")]
    NotThreeColorable(String),
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Repr(#[from] linalg::ReprError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
