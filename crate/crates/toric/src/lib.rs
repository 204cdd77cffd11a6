//! Exact combinatorics of projective toric varieties: combinatorial
//! degrees of fan colorings, toric residues of monomial tuples, semiample
//! fan reductions, and monomial-ideal membership for semiample degrees.
//!
//! All geometry is exact: arbitrary-precision integers and rationals
//! throughout, with an exact rational LP for feasibility questions.
//! Values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

pub mod coloring;
pub mod degree;
pub mod error;
pub mod exact;
pub mod fan;
pub mod io;
pub mod lp;
pub mod polytope;
pub mod residue;
pub mod semiample;
pub mod suite;

pub use coloring::{is_simplicial, psi_of_face, Coloring, SimplicialCheck};
pub use degree::{
    cdeg, cdeg_cones, cdeg_flags, dual_map_degree, pl_degree_oracle, FacetColoring,
    SimplexTarget, DEFAULT_ORACLE_SEED,
};
pub use error::{Error, Result};
pub use exact::{
    det_sign, primitive, quotient_lattice, solve_linear_exact, IntMatrix, IntVector,
    LinearSolution, QuotientMap,
};
pub use fan::{ConeMap, Fan, FanFlags, Refinement};
pub use polytope::{Face, FaceId, FaceLattice, Flag, Orientation, Polytope};
pub use residue::{
    coloring_of_tuple, decompose_sections, degree_of, ideal_member_semiample,
    residue_monomials, search_degree_one, sections_basis, Monomial, MonomialIdeal,
    MonomialTuple, SearchOutcome, SearchStats, SectionSupport,
};
pub use semiample::{
    b_alpha_generators, cartier_data, class_eq, divisor_polytope, is_semiample,
    primitive_collections, semiample_fan, DegreeClass, SemiampleReduction, SupportFunction,
    TorusDivisor,
};
