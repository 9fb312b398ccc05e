//! Independent numerical checks on the closed forms.
//!
//! Every projection oracle works in pulled-back coordinates. For a basis
//! function g of A²(Ω) write h = (g∘φ)·φ′; the change of variables z = φ(ζ)
//! turns ⟨g₁, g₂⟩_Ω into ⟨h₁, h₂⟩ over the parameter domain, and z̄ into the
//! target t = conj(φ)·φ′. Because ⟨t, h⟩ = ⟨φ′, φ·h⟩, every inner product
//! needed by the normal equations is an inner product of holomorphic
//! (Laurent) polynomials, which monomial orthogonality evaluates exactly.
//!
//! None of this uses the closed-form content formula.

pub mod fd;
mod gram;
mod laurent;
mod quadrature;

pub use fd::{
    fd_torsion, fd_torsion_polygon, fd_torsion_with, map_diameter, richardson,
    BoundaryTreatment, FdOptions, TorsionSolveResult,
};
pub use gram::{gram_project_disk, gram_project_disk_with, DiskBasis, GRAM_CONDITION_LIMIT};
pub use laurent::{gram_project_annulus, gram_project_confocal, LaurentPoly};
pub use quadrature::{quad_project_disk, quad_project_disk_with, DiskQuadrature};

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

/// Least-squares projection of z̄ onto a finite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// Degree label of each basis element (z-degree for the monomial basis,
    /// ζ-degree for pulled-back bases).
    pub basis_degrees: Vec<i32>,
    pub basis_coeffs: Vec<Complex64>,
    /// ‖z̄ − f̂‖, the content estimate λ̂.
    pub residual_norm: f64,
    pub zbar_norm_sq: f64,
    /// ‖f̂‖² = cᴴGc.
    pub projection_norm_sq: f64,
    /// Spectral condition number of the Gram matrix after symmetric diagonal
    /// scaling, which is the matrix the solver factors.
    pub gram_condition: f64,
    pub basis_size: usize,
    /// max_k |⟨z̄ − f̂, e_k⟩| / ‖z̄‖ over the basis.
    pub orthogonality_defect: f64,
}

impl ProjectionResult {
    pub fn residual_sq(&self) -> f64 {
        self.residual_norm * self.residual_norm
    }

    /// Coefficient attached to a basis degree, if that degree is present.
    pub fn coeff_at(&self, degree: i32) -> Option<Complex64> {
        self.basis_degrees
            .iter()
            .position(|&d| d == degree)
            .map(|i| self.basis_coeffs[i])
    }
}

/// Normal equations G c = b with `gram[(l, k)] = ⟨e_k, e_l⟩` and
/// `rhs[l] = ⟨z̄, e_l⟩`.
pub(crate) struct NormalSystem {
    pub gram: DMatrix<Complex64>,
    pub rhs: DVector<Complex64>,
    pub zbar_norm_sq: f64,
    pub degrees: Vec<i32>,
}

impl NormalSystem {
    pub fn solve(self, condition_limit: f64) -> Result<ProjectionResult> {
        let n = self.rhs.len();
        let mut scale = DVector::<f64>::zeros(n);
        for i in 0..n {
            let d = self.gram[(i, i)].re;
            if !(d > 0.0) {
                return Err(Error::NotPositiveDefinite);
            }
            scale[i] = d.sqrt().recip();
        }
        let scaled = DMatrix::from_fn(n, n, |i, j| self.gram[(i, j)] * (scale[i] * scale[j]));

        let eig = SymmetricEigen::new(scaled.clone()).eigenvalues;
        let max = eig.max();
        let min = eig.min();
        // A non-positive computed eigenvalue means the condition number is
        // beyond what f64 resolves.
        let gram_condition = if min > 0.0 { max / min } else { f64::INFINITY };
        if gram_condition > condition_limit {
            return Err(Error::IllConditionedGram {
                condition: gram_condition,
                limit: condition_limit,
            });
        }

        let chol = Cholesky::new(scaled).ok_or(Error::NotPositiveDefinite)?;
        let scaled_rhs = DVector::from_fn(n, |i, _| self.rhs[i] * scale[i]);
        let y = chol.solve(&scaled_rhs);
        let coeffs = DVector::from_fn(n, |i, _| y[i] * scale[i]);

        let g_c = &self.gram * &coeffs;
        let projection_norm_sq = coeffs.dotc(&g_c).re;
        let cross = coeffs.dotc(&self.rhs).re;
        let residual_sq = self.zbar_norm_sq - 2.0 * cross + projection_norm_sq;
        let zbar_norm = self.zbar_norm_sq.sqrt();
        let orthogonality_defect = (0..n)
            .map(|l| (self.rhs[l] - g_c[l]).norm())
            .fold(0.0, f64::max)
            / zbar_norm;

        Ok(ProjectionResult {
            basis_degrees: self.degrees,
            basis_coeffs: coeffs.iter().copied().collect(),
            residual_norm: residual_sq.max(0.0).sqrt(),
            zbar_norm_sq: self.zbar_norm_sq,
            projection_norm_sq,
            gram_condition,
            basis_size: n,
            orthogonality_defect,
        })
    }
}
