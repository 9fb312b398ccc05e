//! Domain descriptors and the conformal-map machinery they share.
//!
//! A simply-connected one-point quadrature domain is the image of the unit
//! disk under a polynomial φ(ζ) = a₁ζ + … + aₙζⁿ with φ(0) = 0. Doubly
//! connected examples are the round annulus r < |z| < R and the image of such
//! an annulus (with r > 1) under the Joukowski map ζ + 1/ζ.

mod geometry;
mod invert;
mod poly;

pub(crate) use geometry::map_circle;
pub use geometry::{
    boundary_points, check_univalence, diameter, is_simple_polygon, winding_number,
    UnivalenceCheck,
};
pub use invert::{invert_map, invert_map_with, linear_seed, InvertOptions};
pub use poly::{disk_inner, disk_norm_sq, poly_derivative, poly_eval, poly_mul, poly_powers};

use num_complex::Complex64;

use crate::{Error, Result};

/// Coefficients of a polynomial conformal map φ(ζ) = Σ_{k=1}^{n} a_k ζ^k.
///
/// Stored dense, lowest degree first, including the (always zero) constant
/// term: `as_poly()[k]` is a_k.
#[derive(Debug, Clone, PartialEq)]
pub struct MapCoeffs {
    poly: Vec<Complex64>,
}

impl MapCoeffs {
    /// Builds a map from `[a_1, ..., a_n]`.
    pub fn new(coeffs: &[Complex64]) -> Result<Self> {
        let mut poly = Vec::with_capacity(coeffs.len() + 1);
        poly.push(Complex64::new(0.0, 0.0));
        poly.extend_from_slice(coeffs);
        Self::from_poly(poly)
    }

    /// Builds a map from real `[a_1, ..., a_n]`.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(&c)
    }

    /// Builds a map from a dense polynomial whose constant term must vanish.
    pub fn from_poly(poly: Vec<Complex64>) -> Result<Self> {
        if poly.len() < 2 {
            return Err(Error::InvalidMap("at least a_1 is required".into()));
        }
        if poly.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidMap("coefficients must be finite".into()));
        }
        if poly[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidMap("φ(0) must be 0".into()));
        }
        if poly[1] == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidMap("a_1 = φ′(0) must be nonzero".into()));
        }
        if poly[poly.len() - 1] == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidMap("leading coefficient must be nonzero".into()));
        }
        Ok(Self { poly })
    }

    /// φ(ζ) = ζ + a ζⁿ.
    pub fn epicycloid(n: usize, a: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("epicycloid degree must be ≥ 2, got {n}")));
        }
        if a == 0.0 {
            return Self::from_real(&[1.0]);
        }
        let mut c = vec![0.0; n];
        c[0] = 1.0;
        c[n - 1] = a;
        Self::from_real(&c)
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// a_k for k ≥ 1; zero outside 1..=n.
    pub fn a(&self, k: usize) -> Complex64 {
        self.poly.get(k).copied().unwrap_or_default()
    }

    /// `[a_1, ..., a_n]`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.poly[1..]
    }

    pub fn as_poly(&self) -> &[Complex64] {
        &self.poly
    }

    pub fn derivative_poly(&self) -> Vec<Complex64> {
        poly_derivative(&self.poly)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.poly, z)
    }

    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.poly.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * k as f64;
        }
        acc
    }

    /// The map t·φ.
    pub fn scaled(&self, t: Complex64) -> Result<Self> {
        Self::from_poly(self.poly.iter().map(|&c| c * t).collect())
    }
}

/// A simply-connected one-point quadrature domain Ω = φ(𝔻).
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMapDomain {
    pub map: MapCoeffs,
    /// Set only when [`check_univalence`] ran and passed.
    pub univalence_checked: bool,
}

impl PolyMapDomain {
    /// Wraps a map without testing univalence; that stays the caller's job.
    pub fn new(map: MapCoeffs) -> Self {
        Self {
            map,
            univalence_checked: false,
        }
    }

    /// Runs the univalence heuristic with `samples` boundary points and records
    /// the outcome.
    pub fn checked(map: MapCoeffs, samples: usize) -> Result<(Self, UnivalenceCheck)> {
        let report = check_univalence(&map, samples)?;
        let domain = Self {
            map,
            univalence_checked: report.passed(),
        };
        Ok((domain, report))
    }
}

/// The round annulus `inner < |z| < outer`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusDomain {
    inner: f64,
    outer: f64,
}

impl AnnulusDomain {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(inner.is_finite() && outer.is_finite() && inner > 0.0 && inner < outer) {
            return Err(Error::Domain(format!(
                "annulus needs 0 < r < R, got r = {inner}, R = {outer}"
            )));
        }
        Ok(Self { inner, outer })
    }

    /// r
    pub fn inner(&self) -> f64 {
        self.inner
    }

    /// R
    pub fn outer(&self) -> f64 {
        self.outer
    }
}

/// The region between two confocal ellipses: the image of the annulus
/// `inner < |ζ| < outer` under ζ ↦ ζ + 1/ζ. Requires 1 < inner so the
/// Joukowski map is injective there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfocalDomain {
    inner: f64,
    outer: f64,
}

impl ConfocalDomain {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(inner.is_finite() && outer.is_finite() && inner > 1.0 && inner < outer) {
            return Err(Error::Domain(format!(
                "confocal annulus needs 1 < r < R, got r = {inner}, R = {outer}"
            )));
        }
        Ok(Self { inner, outer })
    }

    pub fn inner(&self) -> f64 {
        self.inner
    }

    pub fn outer(&self) -> f64 {
        self.outer
    }

    /// ζ + 1/ζ
    pub fn joukowski(zeta: Complex64) -> Complex64 {
        zeta + zeta.inv()
    }

    pub fn joukowski_derivative(zeta: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0) - (zeta * zeta).inv()
    }
}

/// Parameters of the level-set family C·Re(zⁿ) − |z|² + 1 > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialLevelParams {
    pub n: u32,
    pub c: f64,
}

impl MonomialLevelParams {
    pub fn new(n: u32, c: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("monomial degree must be ≥ 2, got {n}")));
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Domain(format!("C must be finite and ≥ 0, got {c}")));
        }
        Ok(Self { n, c })
    }

    /// C cos(nθ) rⁿ − r² + 1
    pub fn defining_function(&self, r: f64, theta: f64) -> f64 {
        self.c * (self.n as f64 * theta).cos() * r.powi(self.n as i32) - r * r + 1.0
    }
}
