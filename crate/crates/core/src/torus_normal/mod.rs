//! Elliptic maps of infinite order: kernel lattices, monomial conjugation,
//! conjugacy decisions, centralizer shapes and triangular normal forms.

pub mod centralizer;
pub mod diagonal;
pub mod intlin;
pub mod triangular;

pub use centralizer::{centralizer_shape_check, CentralizerCheck, EllipticMap, ShapeVerdict};
pub use diagonal::{
    almost_diag_conjugacy, diag_conjugacy, iterate_conjugacy_constraints, kernel_lattice, monomial_conjugate,
    normalize_diagonal, AlmostDiagonalAuto, Conjugacy, DiagonalAuto, EllipticData, KernelLattice, Mat2,
    NormalizedDiagonal, DEFAULT_SEARCH_BOUND,
};
pub use intlin::{smith_normal_form, Snf};
pub use triangular::{reduce_triangular, Conjugator, StepKind, TriangularReduction, TriangularShape};
