//! Dense complex polynomials stored lowest degree first: `p[k]` is the
//! coefficient of ζ^k.

use num_complex::Complex64;

/// Cauchy product of two coefficient sequences.
///
/// The result has `p.len() + q.len() - 1` entries, so the degree is additive
/// even when leading coefficients cancel. An empty factor gives an empty
/// product.
pub fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Horner evaluation.
pub fn poly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn poly_derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Powers `p^0, p^1, ..., p^count-1`.
pub fn poly_powers(p: &[Complex64], count: usize) -> Vec<Vec<Complex64>> {
    let mut out = Vec::with_capacity(count);
    let mut current = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..count {
        let next = poly_mul(&current, p);
        out.push(current);
        current = next;
    }
    out
}

/// The A²(𝔻) inner product ⟨p, q⟩ = ∫_𝔻 p q̄ dA of two polynomials, using
/// ∫_𝔻 ζ^j ζ̄^k dA = δ_jk π/(j+1).
pub fn disk_inner(p: &[Complex64], q: &[Complex64]) -> Complex64 {
    let sum: Complex64 = p
        .iter()
        .zip(q)
        .enumerate()
        .map(|(m, (&a, &b))| a * b.conj() / (m as f64 + 1.0))
        .sum();
    sum * std::f64::consts::PI
}

pub fn disk_norm_sq(p: &[Complex64]) -> f64 {
    disk_inner(p, p).re
}
