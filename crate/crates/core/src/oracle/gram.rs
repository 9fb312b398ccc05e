use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{NormalSystem, ProjectionResult};
use crate::polydomain::{disk_inner, disk_norm_sq, poly_mul, poly_powers, MapCoeffs};
use crate::{Error, Result};

/// Gram matrices above this condition number are rejected.
pub const GRAM_CONDITION_LIMIT: f64 = 1e12;

/// Basis of A²(Ω) used by the disk oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiskBasis {
    /// g_k with (g_k∘φ)·φ′ = ζ^k, k = 0..N−1. Orthogonal, and complete once
    /// N ≥ deg φ − 1, since the best approximation pulls back to a
    /// polynomial of degree deg φ − 2.
    #[default]
    PulledBack,
    /// z^k, k = 0..N−1. Converges only as fast as polynomials approximate
    /// the best approximation on Ω, which is slow when it has singularities
    /// near ∂Ω (the cardioid cusp gives about 1% error in λ at N = 24).
    Monomial,
}

impl DiskBasis {
    /// Pulled-back representatives h_k = (g_k∘φ)·φ′ as dense polynomials.
    pub(crate) fn pulled_back(self, map: &MapCoeffs, size: usize) -> Vec<Vec<Complex64>> {
        match self {
            DiskBasis::PulledBack => (0..size)
                .map(|k| {
                    let mut p = vec![Complex64::new(0.0, 0.0); k + 1];
                    p[k] = Complex64::new(1.0, 0.0);
                    p
                })
                .collect(),
            DiskBasis::Monomial => {
                let dphi = map.derivative_poly();
                poly_powers(map.as_poly(), size)
                    .iter()
                    .map(|pk| poly_mul(pk, &dphi))
                    .collect()
            }
        }
    }
}

/// Projects z̄ onto an `basis_size`-dimensional subspace of A²(φ(𝔻)) with
/// exact inner products, using the default pulled-back basis.
pub fn gram_project_disk(map: &MapCoeffs, basis_size: usize) -> Result<ProjectionResult> {
    gram_project_disk_with(map, basis_size, DiskBasis::default())
}

pub fn gram_project_disk_with(
    map: &MapCoeffs,
    basis_size: usize,
    basis: DiskBasis,
) -> Result<ProjectionResult> {
    if basis_size == 0 {
        return Err(Error::Domain("basis size must be ≥ 1".into()));
    }
    let h = basis.pulled_back(map, basis_size);
    let dphi = map.derivative_poly();
    let n = basis_size;
    let gram = DMatrix::from_fn(n, n, |l, k| disk_inner(&h[k], &h[l]));
    let rhs = DVector::from_fn(n, |l, _| disk_inner(&dphi, &poly_mul(map.as_poly(), &h[l])));
    NormalSystem {
        gram,
        rhs,
        zbar_norm_sq: disk_norm_sq(&poly_mul(map.as_poly(), &dphi)),
        degrees: (0..n as i32).collect(),
    }
    .solve(GRAM_CONDITION_LIMIT)
}
