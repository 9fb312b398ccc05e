use std::f64::consts::PI;

use crate::polydomain::{AnnulusDomain, ConfocalDomain};
use crate::{Error, Result};

/// λ for the image of the disk under ζ + aζⁿ, 0 ≤ a ≤ 1/n:
/// λ² = π(1 + 4a² + na⁴)/2.
pub fn epicycloid_content(n: usize, a: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("epicycloid degree must be ≥ 2, got {n}")));
    }
    if !(0.0..=1.0 / n as f64).contains(&a) {
        return Err(Error::Domain(format!(
            "epicycloid parameter must lie in [0, 1/{n}], got {a}"
        )));
    }
    let a2 = a * a;
    Ok((PI * (1.0 + 4.0 * a2 + n as f64 * a2 * a2) / 2.0).sqrt())
}

/// Closed forms on the annulus r < |z| < R, where the best approximation to
/// z̄ is `best_coeff / z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusForms {
    pub best_coeff: f64,
    /// λ² = ‖z̄‖² − ‖best_coeff/z‖²
    pub content_sq: f64,
    /// ρ = (π/2)(R⁴ − r⁴), which is also ‖z̄‖².
    pub torsion: f64,
    /// (π/2)(R² − r²)² / log(R/r), evaluated directly.
    pub gap_formula: f64,
}

impl AnnulusForms {
    pub fn zbar_norm_sq(&self) -> f64 {
        self.torsion
    }

    /// ρ − λ², computed by subtraction.
    pub fn gap(&self) -> f64 {
        self.torsion - self.content_sq
    }
}

pub fn annulus_closedforms(domain: &AnnulusDomain) -> AnnulusForms {
    let (r, big_r) = (domain.inner(), domain.outer());
    let log_ratio = (big_r / r).ln();
    let diff_sq = big_r * big_r - r * r;
    let quartic = big_r.powi(4) - r.powi(4);
    let gap_formula = PI / 2.0 * diff_sq * diff_sq / log_ratio;
    AnnulusForms {
        best_coeff: diff_sq / (2.0 * log_ratio),
        content_sq: PI / 2.0 * (quartic - diff_sq * diff_sq / log_ratio),
        torsion: PI / 2.0 * quartic,
        gap_formula,
    }
}

/// Coefficients of the harmonic extension of |φ|²/2 to the ζ-annulus for the
/// Joukowski map:
///
/// ```text
/// 2ũ(ζ) = A + B log|ζ| + C(ζ² + ζ̄²) + D(ζ⁻² + ζ̄⁻²)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfocalCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ConfocalCoeffs {
    /// (f∘φ)·φ′ as (ζ-degree, coefficient) pairs.
    ///
    /// ũ = Re(A/2 + (B/2) log ζ + Cζ² + Dζ⁻²), so differentiating gives
    /// B/(2ζ) + 2Cζ − 2D/ζ³.
    pub fn pulled_back_projection(&self) -> [(i32, f64); 3] {
        [(-3, -2.0 * self.d), (-1, self.b / 2.0), (1, 2.0 * self.c)]
    }

    /// Residuals of the four boundary equations at radii r and R, each
    /// relative to its right-hand side.
    pub fn boundary_residuals(&self, r: f64, big_r: f64) -> [f64; 4] {
        let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / rhs.abs();
        [
            rel(self.c * r * r + self.d / (r * r), 1.0),
            rel(self.c * big_r * big_r + self.d / (big_r * big_r), 1.0),
            rel(self.a + self.b * big_r.ln(), big_r * big_r + 1.0 / (big_r * big_r)),
            rel(self.a + self.b * r.ln(), r * r + 1.0 / (r * r)),
        ]
    }
}

pub fn confocal_coeffs(domain: &ConfocalDomain) -> ConfocalCoeffs {
    let (r, big_r) = (domain.inner(), domain.outer());
    let (log_r, log_big) = (r.ln(), big_r.ln());
    let log_ratio = (big_r / r).ln();
    let outer_data = big_r * big_r + 1.0 / (big_r * big_r);
    let inner_data = r * r + 1.0 / (r * r);
    let sum_sq = big_r * big_r + r * r;
    ConfocalCoeffs {
        a: (-log_r * outer_data + log_big * inner_data) / log_ratio,
        b: (outer_data - inner_data) / log_ratio,
        c: 1.0 / sum_sq,
        d: r * r * big_r * big_r / sum_sq,
    }
}

/// ∫_G |z|² dA = (π/2)(R⁴ − r⁴ + r⁻⁴ − R⁻⁴).
pub fn confocal_zbar_norm_sq(domain: &ConfocalDomain) -> f64 {
    let (r, big_r) = (domain.inner(), domain.outer());
    PI / 2.0 * (big_r.powi(4) - r.powi(4) + r.powi(-4) - big_r.powi(-4))
}

/// ∫_G |f|² dA from the pulled-back projection B/(2ζ) + 2Cζ − 2D/ζ³:
/// (π/2)(B² log(R/r) + 4C²(R⁴ − r⁴) + 4D²(r⁻⁴ − R⁻⁴)).
pub fn confocal_projection_norm_sq(domain: &ConfocalDomain) -> f64 {
    let (r, big_r) = (domain.inner(), domain.outer());
    let k = confocal_coeffs(domain);
    PI / 2.0
        * (k.b * k.b * (big_r / r).ln()
            + 4.0 * k.c * k.c * (big_r.powi(4) - r.powi(4))
            + 4.0 * k.d * k.d * (r.powi(-4) - big_r.powi(-4)))
}

/// λ²(G) in simplified form:
///
/// ```text
/// (π/2)(R⁴ − r⁴ + r⁻⁴ − R⁻⁴ − (R² + R⁻² − r² − r⁻²)²/log(R/r) − 8(R² − r²)/(R² + r²))
/// ```
pub fn confocal_content_sq(domain: &ConfocalDomain) -> f64 {
    let (r, big_r) = (domain.inner(), domain.outer());
    let (r2, big2) = (r * r, big_r * big_r);
    let data_jump = big2 + 1.0 / big2 - r2 - 1.0 / r2;
    PI / 2.0
        * (big2 * big2 - r2 * r2 + 1.0 / (r2 * r2) - 1.0 / (big2 * big2)
            - data_jump * data_jump / (big_r / r).ln()
            - 8.0 * (big2 - r2) / (big2 + r2))
}
