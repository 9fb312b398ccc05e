use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::gram::{DiskBasis, GRAM_CONDITION_LIMIT};
use super::{NormalSystem, ProjectionResult};
use crate::polydomain::{poly_eval, MapCoeffs};
use crate::{Error, Result};

/// Tensor rule on the unit disk: Gauss–Legendre in ρ ∈ [0, 1] (weights
/// include the Jacobian ρ) times the trapezoid rule in θ.
#[derive(Debug, Clone)]
pub struct DiskQuadrature {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    nodes: Vec<(Complex64, f64)>,
}

impl DiskQuadrature {
    pub const MIN_RADIAL: usize = 8;
    pub const MIN_ANGULAR: usize = 16;

    pub fn new(radial_nodes: usize, angular_nodes: usize) -> Result<Self> {
        if radial_nodes < Self::MIN_RADIAL || angular_nodes < Self::MIN_ANGULAR {
            return Err(Error::Domain(format!(
                "quadrature needs ≥ {} radial and ≥ {} angular nodes, got {radial_nodes}×{angular_nodes}",
                Self::MIN_RADIAL,
                Self::MIN_ANGULAR
            )));
        }
        let gl = GaussLegendre::new(NonZeroUsize::new(radial_nodes).unwrap());
        let dtheta = 2.0 * PI / angular_nodes as f64;
        let mut nodes = Vec::with_capacity(radial_nodes * angular_nodes);
        for (x, w) in gl.as_node_weight_pairs() {
            let rho = 0.5 * (x + 1.0);
            let wr = 0.5 * w * rho;
            for j in 0..angular_nodes {
                let theta = j as f64 * dtheta;
                nodes.push((Complex64::from_polar(rho, theta), wr * dtheta));
            }
        }
        Ok(Self {
            radial_nodes,
            angular_nodes,
            nodes,
        })
    }

    pub fn nodes(&self) -> &[(Complex64, f64)] {
        &self.nodes
    }

    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes.iter().map(|&(z, w)| f(z) * w).sum()
    }
}

/// Same projection as the exact Gram oracle, with every inner product
/// replaced by a `radial_nodes` × `angular_nodes` quadrature.
pub fn quad_project_disk(
    map: &MapCoeffs,
    basis_size: usize,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<ProjectionResult> {
    let rule = DiskQuadrature::new(radial_nodes, angular_nodes)?;
    quad_project_disk_with(map, basis_size, &rule, DiskBasis::default())
}

pub fn quad_project_disk_with(
    map: &MapCoeffs,
    basis_size: usize,
    rule: &DiskQuadrature,
    basis: DiskBasis,
) -> Result<ProjectionResult> {
    if basis_size == 0 {
        return Err(Error::Domain("basis size must be ≥ 1".into()));
    }
    let n = basis_size;
    let h = basis.pulled_back(map, n);
    let dphi = map.derivative_poly();

    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    let mut rhs = DVector::<Complex64>::zeros(n);
    let mut zbar_norm_sq = 0.0;
    let mut vals = vec![Complex64::new(0.0, 0.0); n];
    for &(zeta, w) in rule.nodes() {
        // z̄ pulled back: conj(φ)·φ′
        let t = poly_eval(map.as_poly(), zeta).conj() * poly_eval(&dphi, zeta);
        zbar_norm_sq += w * t.norm_sqr();
        for (v, hk) in vals.iter_mut().zip(&h) {
            *v = poly_eval(hk, zeta);
        }
        for l in 0..n {
            let hl = vals[l].conj() * w;
            rhs[l] += t * hl;
            for k in 0..n {
                gram[(l, k)] += vals[k] * hl;
            }
        }
    }
    NormalSystem {
        gram,
        rhs,
        zbar_norm_sq,
        degrees: (0..n as i32).collect(),
    }
    .solve(GRAM_CONDITION_LIMIT)
}
