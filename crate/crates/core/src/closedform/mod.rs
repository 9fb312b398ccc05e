//! Exact formulas.
//!
//! For φ(ζ) = Σ a_k ζ^k with c_m the coefficients of φ·φ′ and
//! b_k = Σ_j a_{k+j} ā_j,
//!
//! ```text
//! ‖z̄‖²  = π Σ_{m=1}^{2n−1} |c_m|² / (m+1)
//! ‖f‖²  = π Σ_{k=1}^{n−1}  k |b_k|²
//! λ²    = ‖z̄‖² − ‖f‖²  = ρ(Ω)
//! ```
//!
//! The best approximation f to z̄ satisfies (f∘φ)·φ′ = P′ where
//! P(ζ) = ½ Σ |a_k|² + Σ b_k ζ^k.
//!
//! Note the factor π on ‖f‖²: ‖ζ^{k−1}‖² over the disk is π/k, and without it
//! the epicycloid formula λ² = π(1 + 4a² + na⁴)/2 does not follow.

mod families;
mod monomial;

pub use families::{
    annulus_closedforms, confocal_coeffs, confocal_content_sq, confocal_projection_norm_sq,
    confocal_zbar_norm_sq, epicycloid_content, AnnulusForms, ConfocalCoeffs,
};
pub use monomial::{
    monomial_boundary_radius, monomial_critical_constant, monomial_has_bounded_component,
    monomial_radial_profile, RadialProfile,
};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::polydomain::{invert_map_with, poly_eval, InvertOptions, MapCoeffs};
use crate::{Error, Result};

/// Discriminants in [−NEGATIVE_CLAMP, 0] are rounding noise and clamp to 0.
pub const NEGATIVE_CLAMP: f64 = 1e-10;

/// (c_1, …, c_{2n−1}) with c_m = Σ_{k+j=m+1} k a_k a_j. Index 0 holds c_1.
pub fn product_coeffs(map: &MapCoeffs) -> Vec<Complex64> {
    let n = map.degree();
    let mut c = vec![Complex64::new(0.0, 0.0); 2 * n - 1];
    for k in 1..=n {
        let ak = map.a(k) * k as f64;
        for j in 1..=n {
            c[k + j - 2] += ak * map.a(j);
        }
    }
    c
}

/// ∫_Ω |z|² dA.
pub fn zbar_norm_sq(map: &MapCoeffs) -> f64 {
    let sum: f64 = product_coeffs(map)
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm_sqr() / (i as f64 + 2.0))
        .sum();
    PI * sum
}

/// The primitive P of the best approximation, pulled back to the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct BestApproxPrimitive {
    /// ½ Σ |a_k|²
    pub constant: f64,
    /// b_1, …, b_{n−1}; `coeffs[k - 1]` multiplies ζ^k.
    pub coeffs: Vec<Complex64>,
}

impl BestApproxPrimitive {
    /// p = P′ as a dense polynomial: `p[k]` = (k+1) b_{k+1}.
    pub fn derivative_poly(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &b)| b * (i as f64 + 1.0))
            .collect()
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        let mut poly = Vec::with_capacity(self.coeffs.len() + 1);
        poly.push(Complex64::new(self.constant, 0.0));
        poly.extend_from_slice(&self.coeffs);
        poly_eval(&poly, zeta)
    }
}

pub fn best_approx_primitive(map: &MapCoeffs) -> BestApproxPrimitive {
    let n = map.degree();
    let constant = 0.5 * map.coeffs().iter().map(|a| a.norm_sqr()).sum::<f64>();
    let coeffs = (1..n)
        .map(|k| (1..=n - k).map(|j| map.a(k + j) * map.a(j).conj()).sum())
        .collect();
    BestApproxPrimitive { constant, coeffs }
}

/// ∫_Ω |f|² dA = π Σ k |b_k|².
pub fn projection_norm_sq(map: &MapCoeffs) -> f64 {
    projection_norm_from(&best_approx_primitive(map).coeffs)
}

fn projection_norm_from(b: &[Complex64]) -> f64 {
    PI * b
        .iter()
        .enumerate()
        .map(|(i, b)| (i as f64 + 1.0) * b.norm_sqr())
        .sum::<f64>()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContentBreakdown {
    /// ‖z̄‖²_{L²(Ω)}
    pub zbar_norm_sq: f64,
    /// ‖f‖²_{A²(Ω)}
    pub proj_norm_sq: f64,
    /// λ_{A²}(Ω)
    pub content: f64,
    /// c_1, …, c_{2n−1}
    pub c: Vec<Complex64>,
    /// b_1, …, b_{n−1}
    pub b: Vec<Complex64>,
}

impl ContentBreakdown {
    pub fn content_sq(&self) -> f64 {
        self.content * self.content
    }
}

pub fn bergman_content(map: &MapCoeffs) -> Result<ContentBreakdown> {
    let c = product_coeffs(map);
    let zbar = PI
        * c.iter()
            .enumerate()
            .map(|(i, c)| c.norm_sqr() / (i as f64 + 2.0))
            .sum::<f64>();
    let b = best_approx_primitive(map).coeffs;
    let proj = projection_norm_from(&b);
    let disc = zbar - proj;
    if disc < -NEGATIVE_CLAMP {
        return Err(Error::NegativeDiscriminant(disc));
    }
    Ok(ContentBreakdown {
        zbar_norm_sq: zbar,
        proj_norm_sq: proj,
        content: disc.max(0.0).sqrt(),
        c,
        b,
    })
}

/// ρ(Ω) for the simply-connected domain φ(𝔻), via ρ = λ².
pub fn torsional_rigidity_sc(map: &MapCoeffs) -> Result<f64> {
    Ok(bergman_content(map)?.content_sq())
}

/// The best approximation at a point ζ of the disk: f(φ(ζ)) = p(ζ)/φ′(ζ).
pub fn best_approximation_pulled_back(
    map: &MapCoeffs,
    primitive: &BestApproxPrimitive,
    zeta: Complex64,
) -> Complex64 {
    poly_eval(&primitive.derivative_poly(), zeta) / map.eval_derivative(zeta)
}

/// f(z) for z ∈ Ω, inverting the map from the seed z/a₁.
pub fn best_approximation_at(
    map: &MapCoeffs,
    primitive: &BestApproxPrimitive,
    z: Complex64,
    opts: &InvertOptions,
) -> Result<Complex64> {
    let zeta = invert_map_with(map, z, z / map.a(1), opts)?;
    Ok(best_approximation_pulled_back(map, primitive, zeta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polydomain::{poly_derivative, poly_mul};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn product_coeffs_cases() {
        let id = MapCoeffs::from_real(&[1.0]).unwrap();
        assert_eq!(product_coeffs(&id), vec![Complex64::new(1.0, 0.0)]);

        // cross-check against the generic convolution
        let card = MapCoeffs::from_real(&[1.0, 0.5]).unwrap();
        let brute = poly_mul(card.as_poly(), &poly_derivative(card.as_poly()));
        assert_eq!(product_coeffs(&card), brute[1..].to_vec());
        assert_eq!(
            product_coeffs(&card),
            vec![1.0, 1.5, 0.5]
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn product_coeffs_epicycloid_pattern() {
        // (z + a zⁿ)(1 + n a z^{n−1}): c_1 = 1, c_n = (n+1)a, c_{2n−1} = n a².
        for n in 2..=7 {
            let a = 0.1;
            let c = product_coeffs(&MapCoeffs::epicycloid(n, a).unwrap());
            for (i, v) in c.iter().enumerate() {
                let m = i + 1;
                let expected = if m == 1 {
                    1.0
                } else if m == n {
                    (n as f64 + 1.0) * a
                } else if m == 2 * n - 1 {
                    n as f64 * a * a
                } else {
                    0.0
                };
                assert!((v.re - expected).abs() < 1e-15 && v.im == 0.0, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn zbar_norm_cases() {
        let id = MapCoeffs::from_real(&[1.0]).unwrap();
        assert!(rel(zbar_norm_sq(&id), PI / 2.0) < 1e-15);
        let r = 1.7;
        let disk = MapCoeffs::from_real(&[r]).unwrap();
        assert!(rel(zbar_norm_sq(&disk), PI * r.powi(4) / 2.0) < 1e-14);
        // c = (1, 5/4, 1/4) at m = 1, 4, 7: π(1/2 + (25/16)/5 + (1/16)/8) = 105π/128.
        let epi = MapCoeffs::epicycloid(4, 0.25).unwrap();
        assert!(rel(zbar_norm_sq(&epi), 105.0 * PI / 128.0) < 1e-14);
    }

    #[test]
    fn primitive_cases() {
        let id = best_approx_primitive(&MapCoeffs::from_real(&[1.0]).unwrap());
        assert_eq!(id.constant, 0.5);
        assert!(id.coeffs.is_empty());

        let card = best_approx_primitive(&MapCoeffs::from_real(&[1.0, 0.5]).unwrap());
        assert!((card.constant - 0.625).abs() < 1e-15);
        assert_eq!(card.coeffs, vec![Complex64::new(0.5, 0.0)]);

        for n in 2..=6 {
            let a = 0.13;
            let p = best_approx_primitive(&MapCoeffs::epicycloid(n, a).unwrap());
            assert_eq!(p.coeffs.len(), n - 1);
            assert!((p.constant - (1.0 + a * a) / 2.0).abs() < 1e-15);
            for (i, b) in p.coeffs.iter().enumerate() {
                let expected = if i + 1 == n - 1 { a } else { 0.0 };
                assert!((b.re - expected).abs() < 1e-15 && b.im == 0.0);
            }
        }
    }

    #[test]
    fn primitive_matches_boundary_identity() {
        // On |ζ| = 1, |φ|² = P + P̄.
        let map = MapCoeffs::new(&[
            Complex64::new(1.0, 0.1),
            Complex64::new(0.2, -0.1),
            Complex64::new(-0.05, 0.07),
        ])
        .unwrap();
        let p = best_approx_primitive(&map);
        for k in 0..16 {
            let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 16.0);
            let lhs = map.eval(zeta).norm_sqr();
            let rhs = 2.0 * p.eval(zeta).re;
            assert!((lhs - rhs).abs() < 1e-14, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn projection_norm_cases() {
        assert_eq!(projection_norm_sq(&MapCoeffs::from_real(&[1.0]).unwrap()), 0.0);
        let card = MapCoeffs::from_real(&[1.0, 0.5]).unwrap();
        assert!(rel(projection_norm_sq(&card), PI / 4.0) < 1e-15);
        for n in 2..=6 {
            let a = 0.11;
            let got = projection_norm_sq(&MapCoeffs::epicycloid(n, a).unwrap());
            assert!(rel(got, PI * (n as f64 - 1.0) * a * a) < 1e-14);
        }
    }

    #[test]
    fn content_cases() {
        let disk = bergman_content(&MapCoeffs::from_real(&[1.0]).unwrap()).unwrap();
        assert!(rel(disk.content, (PI / 2.0).sqrt()) < 1e-15);
        assert_eq!(disk.proj_norm_sq, 0.0);

        let card = bergman_content(&MapCoeffs::from_real(&[1.0, 0.5]).unwrap()).unwrap();
        assert!(rel(card.content, (17.0 * PI / 16.0).sqrt()) < 1e-15);
        assert!(rel(card.content_sq(), card.zbar_norm_sq - card.proj_norm_sq) < 1e-12);
    }

    #[test]
    fn torsion_cases() {
        let r = 0.7;
        let disk = MapCoeffs::from_real(&[r]).unwrap();
        assert!(rel(torsional_rigidity_sc(&disk).unwrap(), PI * r.powi(4) / 2.0) < 1e-14);
        let card = MapCoeffs::from_real(&[1.0, 0.5]).unwrap();
        assert!(rel(torsional_rigidity_sc(&card).unwrap(), 17.0 * PI / 16.0) < 1e-14);
        let epi = MapCoeffs::epicycloid(4, 0.25).unwrap();
        assert!(rel(torsional_rigidity_sc(&epi).unwrap(), 81.0 * PI / 128.0) < 1e-14);
    }

    #[test]
    fn best_approximation_pointwise() {
        // Cardioid: p ≡ 1/2, φ′ = 1 + ζ, so f(φ(ζ)) = 1/(2(1+ζ)).
        let map = MapCoeffs::from_real(&[1.0, 0.5]).unwrap();
        let prim = best_approx_primitive(&map);
        let zeta = Complex64::new(0.2, -0.3);
        let f = best_approximation_at(&map, &prim, map.eval(zeta), &InvertOptions::default())
            .unwrap();
        let expected = Complex64::new(0.5, 0.0) / (Complex64::new(1.0, 0.0) + zeta);
        assert!((f - expected).norm() < 1e-13);
    }
}
