//! Bergman analytic content of planar domains.
//!
//! The Bergman analytic content λ(Ω) of a bounded domain is the L²(Ω) distance
//! from z̄ to the Bergman space A²(Ω). For simply-connected domains its square
//! equals the torsional rigidity ρ(Ω) of Saint-Venant torsion.
//!
//! This crate provides:
//!
//! * [`polydomain`]: complex polynomial arithmetic, domain descriptors for
//!   polynomial-map quadrature domains, annuli and confocal-ellipse annuli,
//!   boundary sampling and Newton inversion of the conformal map.
//! * [`closedform`]: exact formulas for λ, the best approximation to z̄ and
//!   the torsional rigidity of those families.
//! * [`oracle`]: independent numerical checks. Gram-matrix projections with
//!   exact pulled-back inner products, a tensor quadrature variant, and a
//!   finite-difference Poisson solver for the torsion function.

pub mod closedform;
mod error;
pub mod oracle;
pub mod polydomain;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use closedform::{
    annulus_closedforms, bergman_content, best_approx_primitive, confocal_coeffs,
    confocal_content_sq, epicycloid_content, monomial_critical_constant,
    monomial_radial_profile, product_coeffs, projection_norm_sq, torsional_rigidity_sc,
    zbar_norm_sq, AnnulusForms, BestApproxPrimitive, ConfocalCoeffs, ContentBreakdown,
    RadialProfile,
};
pub use oracle::{
    fd_torsion, gram_project_annulus, gram_project_confocal, gram_project_disk,
    quad_project_disk, DiskBasis, ProjectionResult, TorsionSolveResult,
};
pub use polydomain::{
    boundary_points, invert_map, poly_mul, AnnulusDomain, ConfocalDomain, MapCoeffs,
    MonomialLevelParams, PolyMapDomain,
};
