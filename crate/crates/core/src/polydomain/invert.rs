use std::f64::consts::TAU;

use num_complex::Complex64;

use super::MapCoeffs;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvertOptions {
    pub max_iterations: usize,
    /// Accept ζ once |φ(ζ) − z| ≤ tolerance · (1 + |z|).
    pub tolerance: f64,
    /// Iterates with |φ′| below this abort the Newton run.
    pub min_derivative: f64,
    /// Reseed from a coarse grid over the disk when Newton fails from `seed`.
    pub grid_fallback: bool,
}

impl Default for InvertOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            tolerance: 1e-12,
            min_derivative: 1e-14,
            grid_fallback: true,
        }
    }
}

/// Solves φ(ζ) = z for ζ in the open unit disk by Newton iteration started
/// at `seed`, with default options.
pub fn invert_map(map: &MapCoeffs, z: Complex64, seed: Complex64) -> Result<Complex64> {
    invert_map_with(map, z, seed, &InvertOptions::default())
}

pub fn invert_map_with(
    map: &MapCoeffs,
    z: Complex64,
    seed: Complex64,
    opts: &InvertOptions,
) -> Result<Complex64> {
    let first = newton(map, z, seed, opts);
    if first.is_ok() || !opts.grid_fallback {
        return first;
    }
    newton(map, z, grid_seed(map, z), opts)
}

/// The linearized guess z / a₁.
pub fn linear_seed(map: &MapCoeffs, z: Complex64) -> Complex64 {
    z / map.a(1)
}

fn newton(map: &MapCoeffs, z: Complex64, seed: Complex64, opts: &InvertOptions) -> Result<Complex64> {
    let target = opts.tolerance * (1.0 + z.norm());
    let mut zeta = seed;
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iterations {
        let value = map.eval(zeta) - z;
        residual = value.norm();
        let deriv = map.eval_derivative(zeta);
        if deriv.norm() < opts.min_derivative {
            return Err(Error::VanishingDerivative {
                at: zeta,
                modulus: deriv.norm(),
            });
        }
        zeta -= value / deriv;
        // the step after reaching tolerance is a free polish
        if residual <= target || !zeta.re.is_finite() || !zeta.im.is_finite() {
            break;
        }
    }
    let residual_now = (map.eval(zeta) - z).norm();
    if !(residual_now <= target) {
        return Err(Error::NoConvergence {
            iterations: opts.max_iterations,
            residual: residual.min(residual_now),
        });
    }
    if zeta.norm() >= 1.0 {
        return Err(Error::OutsideDisk(zeta));
    }
    Ok(zeta)
}

fn grid_seed(map: &MapCoeffs, z: Complex64) -> Complex64 {
    let radial = 24;
    let angular = 64;
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for i in 0..radial {
        let rho = (i as f64 + 0.5) / radial as f64;
        for j in 0..angular {
            let zeta = Complex64::from_polar(rho, TAU * j as f64 / angular as f64);
            let miss = (map.eval(zeta) - z).norm();
            if miss < best.0 {
                best = (miss, zeta);
            }
        }
    }
    best.1
}
