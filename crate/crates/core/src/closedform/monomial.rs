//! The level-set family {C·Re(zⁿ) − |z|² + 1 > 0}, whose best approximation
//! to z̄ is the monomial (Cn/2)·z^{n−1} whenever the component containing the
//! origin is bounded.
//!
//! Along the ray θ = 0 the defining function is F(r) = C rⁿ − r² + 1. For
//! n ≥ 3 it has a single positive critical point R = (2/(nC))^{1/(n−2)}, a
//! minimum, and F(R) ≤ 0 exactly when C ≤ 2(n−2)^{(n−2)/2}/n^{n/2}. Since
//! f(R, θ) ≤ f(R, 0), the circle |z| = R then encloses a bounded component.

use crate::polydomain::MonomialLevelParams;
use crate::{Error, Result};

/// 2(n−2)^{(n−2)/2} / n^{n/2}, with 0⁰ = 1 so that n = 2 gives 1.
pub fn monomial_critical_constant(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("monomial degree must be ≥ 2, got {n}")));
    }
    if n == 2 {
        return Ok(1.0);
    }
    let nf = n as f64;
    let m = nf - 2.0;
    Ok(2.0 * m.powf(m / 2.0) / nf.powf(nf / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProfile {
    /// Critical point of F(r) = C rⁿ − r² + 1.
    pub r_crit: f64,
    pub f_at_r: f64,
    /// F(r_crit) ≤ 0.
    pub bounded: bool,
}

pub fn monomial_radial_profile(params: &MonomialLevelParams) -> Result<RadialProfile> {
    let (n, c) = (params.n, params.c);
    if n < 3 {
        return Err(Error::Domain(format!(
            "radial profile needs n ≥ 3 (n = 2 is a conic), got {n}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::Domain(format!("radial profile needs C > 0, got {c}")));
    }
    let nf = n as f64;
    let r_crit = (2.0 / (nf * c)).powf(1.0 / (nf - 2.0));
    let f_at_r = c * r_crit.powi(n as i32) - r_crit * r_crit + 1.0;
    Ok(RadialProfile {
        r_crit,
        f_at_r,
        bounded: f_at_r <= 0.0,
    })
}

/// Whether the component of the level set containing the origin is bounded.
///
/// n = 2 gives (C − 1)x² − (C + 1)y² + 1 > 0, an ellipse exactly when C < 1.
pub fn monomial_has_bounded_component(params: &MonomialLevelParams) -> bool {
    if params.c == 0.0 {
        return true;
    }
    if params.n == 2 {
        return params.c < 1.0;
    }
    monomial_radial_profile(params)
        .map(|p| p.bounded)
        .unwrap_or(false)
}

/// Smallest r > 0 with C cos(nθ) rⁿ − r² + 1 = 0 along the ray at angle θ,
/// or `None` when the ray never leaves the set.
pub fn monomial_boundary_radius(params: &MonomialLevelParams, theta: f64) -> Option<f64> {
    let f = |r: f64| params.defining_function(r, theta);
    // F(0) = 1 > 0. Walk outward until the sign changes, then bisect.
    let mut lo = 0.0;
    let mut step = 1e-2;
    let mut hi = step;
    loop {
        if f(hi) <= 0.0 {
            break;
        }
        lo = hi;
        if hi > 1e6 {
            return None;
        }
        step *= 1.05;
        hi += step;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_constants() {
        assert_eq!(monomial_critical_constant(2).unwrap(), 1.0);
        let c3 = monomial_critical_constant(3).unwrap();
        assert!((c3 - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((c3 - 0.38490).abs() < 1e-5);
        assert!((monomial_critical_constant(4).unwrap() - 0.25).abs() < 1e-15);
        assert!(monomial_critical_constant(1).is_err());
    }

    #[test]
    fn cubic_half_is_unbounded() {
        let p = monomial_radial_profile(&MonomialLevelParams::new(3, 0.5).unwrap()).unwrap();
        assert!(!p.bounded);
        // R = 4/3, F(R) = 32/27 − 16/9 + 1 = 11/27
        assert!((p.r_crit - 4.0 / 3.0).abs() < 1e-15);
        assert!((p.f_at_r - 11.0 / 27.0).abs() < 1e-14);
    }

    #[test]
    fn cubic_below_critical_is_bounded() {
        let p = monomial_radial_profile(&MonomialLevelParams::new(3, 0.38).unwrap()).unwrap();
        assert!(p.bounded && p.f_at_r <= 0.0);
    }

    #[test]
    fn equality_case_is_a_double_root() {
        for n in 3..=8 {
            let c = monomial_critical_constant(n).unwrap();
            let p = monomial_radial_profile(&MonomialLevelParams::new(n, c).unwrap()).unwrap();
            assert!(p.f_at_r.abs() <= 1e-10, "n={n}: {}", p.f_at_r);
        }
    }

    #[test]
    fn profile_domain_errors() {
        assert!(monomial_radial_profile(&MonomialLevelParams::new(2, 0.5).unwrap()).is_err());
        assert!(monomial_radial_profile(&MonomialLevelParams::new(3, 0.0).unwrap()).is_err());
    }

    #[test]
    fn conic_case() {
        let bounded = |c| monomial_has_bounded_component(&MonomialLevelParams::new(2, c).unwrap());
        assert!(bounded(0.0) && bounded(0.99));
        assert!(!bounded(1.0) && !bounded(1.5));
    }

    #[test]
    fn boundary_radius_of_disk_and_open_ray() {
        let disk = MonomialLevelParams::new(3, 0.0).unwrap();
        assert!((monomial_boundary_radius(&disk, 0.3).unwrap() - 1.0).abs() < 1e-12);
        let open = MonomialLevelParams::new(3, 0.5).unwrap();
        assert!(monomial_boundary_radius(&open, 0.0).is_none());
        // θ = π/3: cos(3θ) = −1, so the ray closes.
        assert!(monomial_boundary_radius(&open, std::f64::consts::FRAC_PI_3).is_some());
    }
}
