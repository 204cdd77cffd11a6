//! Library-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("polytope is degenerate: {0}")]
    DegeneratePolytope(String),

    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,

    #[error("malformed fan: {0}")]
    MalformedFan(String),

    #[error("fan is not complete")]
    NotComplete,

    #[error("fan is not projective")]
    NotProjective,

    #[error("fan is not simplicial")]
    NotSimplicial,

    #[error("coloring is not disjoint")]
    NotDisjoint,

    #[error("coloring is not simplicial: cone {{{cone}}} sees all colors", cone = crate::error::fmt_indices(.cone_rays))]
    NotSimplicialColoring { cone_rays: Vec<usize> },

    #[error("cone rays share no color")]
    EmptyColorSet,

    #[error("degenerate sampling: retry cap exceeded in the piecewise-linear degree oracle")]
    DegenerateSampling,

    #[error("divisor is not Cartier on cone {{{cone}}}", cone = crate::error::fmt_indices(.cone_rays))]
    NotCartier { cone_rays: Vec<usize> },

    #[error("divisor is not semiample")]
    NotSemiample,

    #[error("divisor polytope is empty")]
    EmptyPolytope,

    #[error("variable x{} divides no tuple entry", .ray + 1)]
    UncoloredRay { ray: usize },

    #[error("tuple product is not divisible by the product of the variables")]
    NotDivisible,

    #[error("tuple entries vanish simultaneously on cone {{{cone}}}", cone = crate::error::fmt_indices(.cone_rays))]
    CommonZero {
        cone_rays: Vec<usize>,
        witness: Vec<(usize, usize)>,
    },

    #[error("section monomial of row {row} is divisible by no tuple entry")]
    NotDecomposable { row: usize, point: Vec<i64> },

    #[error("monomial ideal is malformed: {0}")]
    MalformedIdeal(String),

    #[error("input is malformed: {0}")]
    MalformedInput(String),

    #[error("internal cross-check disagreement: {0}")]
    InternalInconsistency(String),
}

pub(crate) fn fmt_indices(v: &[usize]) -> String {
    v.iter()
        .map(|i| format!("x{}", i + 1))
        .collect::<Vec<_>>()
        .join(",")
}
