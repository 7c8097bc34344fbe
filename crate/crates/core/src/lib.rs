//! Exact computations in the Hoffman algebra `H = Q<x, y>`: the duality map,
//! the derivations `d_n`, the automorphisms `Delta_u`, and the linear
//! algebra needed to compare the spaces of relations they generate.

pub mod algebra;
pub mod dspace;
mod error;
pub mod maps;
mod rational;
pub mod relspace;
pub mod report;
pub mod series;
pub mod zeta;

pub use algebra::{
    index_from_word, is_z_polynomial, leading_word, poly_mul, to_xy_basis, to_xz_basis,
    word_from_index, Alphabet, Index, Letter, NCPoly, Word,
};
pub use dspace::{
    appendix_identity, corollary_identity, d_generator, km_generator, power_check, verify_eq31,
    AppendixIdentity, Corollary, DGenerator,
};
pub use error::{Error, Result};
pub use maps::{
    apply_spec, delta_exp_oracle, delta_single, partial, partial_poly, tau, tau_poly, theta,
    MapSpec, RingHom,
};
pub use rational::{ParseRationalError, Rational};
pub use relspace::{
    derivation_space, dims_table, dspace_coef_span, duality_space, echelon_basis, graded_kernel,
    intersect, intersection_space, membership_cor44, pairwise_triviality, theta_space, Cor44,
    DimsRow, DimsTable, KernelMap, SubspaceBasis,
};
pub use report::{Check, VerificationReport};
pub use series::{
    geo, geometric_inverse, series_mul, Mismatch, MultiExponent, TruncSeries, Truncation,
};
pub use zeta::{relation_residual, zeta_eval, Residual, ZetaCache, ZetaValue};
