//! Singular-point analysis for products of Milnor fibration maps.
//!
//! Given polynomials f₁, …, f_m vanishing at the origin of ℂⁿ, the product
//! map Φ(z) = (f₁(z)/|f₁(z)|, …, f_m(z)/|f_m(z)|) sends the sphere S_ε minus
//! the link {z : ∏ f_j(z) = 0} to the m-torus. This crate decides where Φ is
//! singular, classifies the singular points that are folds, and computes the
//! exact weighted-homogeneity certificates those tests rely on:
//!
//! - [`poly`]: sparse polynomials over exact Gaussian-rational coefficients,
//!   gradients, logarithmic gradients and Hessians.
//! - [`parse`]: the text grammar shared by the library and the CLI.
//! - [`weights`]: exact weight systems, common-weight certificates with the
//!   ratio vector s, and the Euler/rescaling identities they guarantee.
//! - [`singular`]: the rank criteria for singularity (numeric margin and
//!   algebraic minors), exact circle enumeration for two-variable
//!   homogeneous pairs, and a multistart sphere search.
//! - [`fold`]: the second-order fold test det Re(VᵀHV) ≠ 0 with Morse index.
//! - [`roots`]: dense univariate root finding (simultaneous iteration).
//! - [`linalg`]: small dense complex/real matrices, one-sided Jacobi SVD,
//!   symmetric eigenvalues, orthocomplements.
//! - [`report`]: deterministic, lossless JSON reports.
//! - [`suites`]: named end-to-end verification suites for families with
//!   independently known answers.

pub mod error;
pub mod exact;
pub mod fold;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod roots;
pub mod singular;
pub mod suites;
pub mod weights;

pub use error::{Error, Result};
pub use fold::{fold_test, index_of, FoldReport};
pub use parse::{parse_complex, parse_point, parse_polynomial, parse_polynomial_in};
pub use poly::Polynomial;
pub use singular::{
    dependence_margin, differential_rank, homogeneous_2var_circles, is_singular_algebraic,
    is_singular_numeric, phi, sphere_search, AlgebraicVerdict, CircleFamily, MapSpec,
    SingularityReport, SpherePoint, Tolerances,
};
pub use weights::{
    common_weights, common_weights_multi, weight_space, CommonWeightCertificate, WeightSolution,
};
