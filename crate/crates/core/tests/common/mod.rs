#![allow(dead_code)]

use bergman_core::{Complex64, MapCoeffs};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        (got - want).abs() / want.abs()
    }
}

/// Random univalent map z + a₂z² + … of degree ≤ 6 with Σ k|a_k| ≤ 0.9, so
/// Re φ′ > 0 on the disk.
pub fn random_map(seed: u64) -> MapCoeffs {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degree = rng.random_range(1..=6usize);
    let mut raw: Vec<Complex64> = (2..=degree)
        .map(|_| Complex64::from_polar(rng.random_range(0.0..1.0), rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    let weight: f64 = raw.iter().enumerate().map(|(i, a)| (i + 2) as f64 * a.norm()).sum();
    let budget = rng.random_range(0.0..0.9);
    if weight > 0.0 {
        for a in &mut raw {
            *a *= budget / weight;
        }
    }
    let a1 = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU));
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    coeffs.extend(raw);
    // keep the leading coefficient nonzero
    if coeffs.len() > 1 && coeffs.last().unwrap().norm() == 0.0 {
        coeffs.pop();
    }
    MapCoeffs::new(&coeffs).unwrap().scaled(a1).unwrap()
}

/// Proptest strategy over the same family as [`random_map`].
pub fn univalent_map() -> impl proptest::strategy::Strategy<Value = MapCoeffs> {
    use proptest::prelude::*;
    (
        prop::collection::vec((0.0..1.0f64, 0.0..std::f64::consts::TAU), 0..=5),
        0.0..0.9f64,
        0.5..2.0f64,
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|(raw, budget, modulus, arg)| {
            let mut coeffs = vec![Complex64::new(1.0, 0.0)];
            let weight: f64 = raw.iter().enumerate().map(|(i, p)| (i + 2) as f64 * p.0).sum();
            for (r, t) in raw {
                let s = if weight > 0.0 { budget / weight } else { 0.0 };
                coeffs.push(Complex64::from_polar(r * s, t));
            }
            while coeffs.len() > 1 && coeffs.last().unwrap().norm() == 0.0 {
                coeffs.pop();
            }
            MapCoeffs::new(&coeffs)
                .unwrap()
                .scaled(Complex64::from_polar(modulus, arg))
                .unwrap()
        })
}
