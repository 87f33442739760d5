//! Exact arithmetic in the Clifford algebra `ℝ_m`, slice regular polynomials
//! and the operators `Δ^k` and `∂̄Δ^k` acting on them.

pub mod clifford;
pub mod error;
pub mod mpoly;
pub mod operators;
pub mod parse;
mod render;
pub mod slice;
pub mod theorem;

pub type Rational = num_rational::BigRational;

pub use clifford::{
    blade_product, cone_decompose, AlgebraSignature, BladeMask, ConeDecomposition, ConeKind,
    Multivector,
};
pub use error::{Error, Result};
pub use mpoly::{expand_slice_poly, DiracConvention, MultiPoly};
pub use operators::{
    coeff_closed, coeff_table_recursive, dirac_laplacian_power, dirac_slice,
    laplacian_power_spherical, lemma_sum, CoeffTable,
};
pub use slice::{
    g_representation, slice_eval, spherical_derivative, stem_components, BiPoly, GPoly, Parity,
    SlicePoly, StemPair,
};
pub use theorem::{
    harmonicity_check, kernel_test, ode_residual, reconstruct_entire, verify_main_theorem,
    KernelReport, ReconstructionInput,
};
