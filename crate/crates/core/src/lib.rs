//! Exact linear algebra over finite-dimensional (Γ, λ)-commutative algebras.
//!
//! Scalars live in cyclotomic fields Q(ζ_N). Grading groups are finite
//! abelian, and commutation factors and multipliers are bicharacters into
//! the N-th roots of unity. On top of these sit graded matrices, the twist
//! J_σ, the graded trace, the determinants Gdet⁰ and Gdet_σ, and the graded
//! Berezinian.

pub mod algebra;
pub mod berezinian;
pub mod error;
pub mod gdet;
pub mod grading;
pub mod gmatrix;
pub mod io;
pub mod linalg;
pub mod oracles;
pub mod permutation;
pub mod presets;
pub mod random;
pub mod scalars;

pub use algebra::{make_algebra, AlgebraElement, GradedAlgebra, Homogeneity};
pub use berezinian::{ber_super, gber, gber0, parity_blocks, udl, ParityBlocks};
pub use error::{Error, ErrorKind, Result};
pub use gdet::{canonical_ordering, gdet0, gdet0_leibniz, gdet0_via_crossed, gdet_sigma, leibniz_det_commutative, Ordering};
pub use gmatrix::{graded_trace, j_sigma, permutation_matrix, GradedMatrix};
pub use grading::{
    enumerate_ns_multipliers, enumerate_ns_multipliers_on, is_ns_multiplier, lambda_twist,
    solve_ns_multiplier, Bicharacter, GradingGroup, GroupElement, Multiplier,
};
pub use oracles::{gdet_via_row_decomposition, run_property_sweeps, SweepConfig, SweepReport};
pub use permutation::Permutation;
pub use scalars::CycloScalar;
