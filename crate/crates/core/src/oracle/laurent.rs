use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::gram::GRAM_CONDITION_LIMIT;
use super::{NormalSystem, ProjectionResult};
use crate::polydomain::{AnnulusDomain, ConfocalDomain};
use crate::{Error, Result};

/// Σ c_i ζ^{lowest + i}.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    pub lowest: i32,
    pub coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    pub fn monomial(degree: i32, coeff: Complex64) -> Self {
        Self {
            lowest: degree,
            coeffs: vec![coeff],
        }
    }

    pub fn from_terms(terms: &[(i32, Complex64)]) -> Self {
        let lowest = terms.iter().map(|t| t.0).min().unwrap_or(0);
        let highest = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (highest - lowest + 1) as usize];
        for &(k, c) in terms {
            coeffs[(k - lowest) as usize] += c;
        }
        Self { lowest, coeffs }
    }

    pub fn coeff(&self, degree: i32) -> Complex64 {
        let i = degree - self.lowest;
        if i < 0 || i as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self {
            lowest: self.lowest + other.lowest,
            coeffs,
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (self.lowest + i as i32) as f64)
            .collect::<Vec<_>>();
        Self {
            lowest: self.lowest - 1,
            coeffs,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * z.powi(self.lowest + i as i32))
            .sum()
    }
}

/// ∫ |ζ^k|² dA over r < |ζ| < R.
fn annular_weight(k: i32, r: f64, big_r: f64) -> f64 {
    let s = 2 * k + 2;
    if s == 0 {
        2.0 * PI * (big_r / r).ln()
    } else {
        2.0 * PI * (big_r.powi(s) - r.powi(s)) / s as f64
    }
}

fn annular_inner(p: &LaurentPoly, q: &LaurentPoly, r: f64, big_r: f64) -> Complex64 {
    let lo = p.lowest.max(q.lowest);
    let hi = (p.lowest + p.coeffs.len() as i32).min(q.lowest + q.coeffs.len() as i32);
    (lo..hi)
        .map(|k| p.coeff(k) * q.coeff(k).conj() * annular_weight(k, r, big_r))
        .sum()
}

/// Projects conj(φ)·φ′ onto span{ζ^k : lo ≤ k ≤ hi} over r < |ζ| < R.
fn project_annular(
    phi: &LaurentPoly,
    r: f64,
    big_r: f64,
    min_degree: i32,
    max_degree: i32,
) -> Result<ProjectionResult> {
    if min_degree > max_degree {
        return Err(Error::Domain(format!(
            "empty degree range {min_degree}..={max_degree}"
        )));
    }
    let degrees: Vec<i32> = (min_degree..=max_degree).collect();
    let n = degrees.len();
    let one = Complex64::new(1.0, 0.0);
    let dphi = phi.derivative();
    let basis: Vec<_> = degrees.iter().map(|&k| LaurentPoly::monomial(k, one)).collect();
    let gram = DMatrix::from_fn(n, n, |l, k| annular_inner(&basis[k], &basis[l], r, big_r));
    let rhs = DVector::from_fn(n, |l, _| annular_inner(&dphi, &phi.mul(&basis[l]), r, big_r));
    let prod = phi.mul(&dphi);
    NormalSystem {
        gram,
        rhs,
        zbar_norm_sq: annular_inner(&prod, &prod, r, big_r).re,
        degrees,
    }
    .solve(GRAM_CONDITION_LIMIT)
}

/// Projection of z̄ onto span{z^k : min ≤ k ≤ max} on the annulus. Basis
/// degrees are z-degrees.
pub fn gram_project_annulus(
    domain: &AnnulusDomain,
    min_degree: i32,
    max_degree: i32,
) -> Result<ProjectionResult> {
    let one = Complex64::new(1.0, 0.0);
    // h_k = ζ^k for the identity map.
    project_annular(
        &LaurentPoly::monomial(1, one),
        domain.inner(),
        domain.outer(),
        min_degree,
        max_degree,
    )
}

/// Projection of z̄ over the confocal domain G onto the pulled-back basis
/// {g_k : (g_k∘φ)·φ′ = ζ^k, min ≤ k ≤ max} with φ(ζ) = ζ + 1/ζ. Basis
/// degrees are ζ-degrees.
pub fn gram_project_confocal(
    domain: &ConfocalDomain,
    min_degree: i32,
    max_degree: i32,
) -> Result<ProjectionResult> {
    let one = Complex64::new(1.0, 0.0);
    let phi = LaurentPoly::from_terms(&[(-1, one), (1, one)]);
    project_annular(&phi, domain.inner(), domain.outer(), min_degree, max_degree)
}
