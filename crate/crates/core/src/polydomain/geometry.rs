use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{MapCoeffs, PolyMapDomain};
use crate::{Error, Result};

/// φ(e^{2πik/M}) for k = 0..M−1.
pub fn boundary_points(domain: &PolyMapDomain, m: usize) -> Result<Vec<Complex64>> {
    map_circle(&domain.map, 1.0, m)
}

pub(crate) fn map_circle(map: &MapCoeffs, radius: f64, m: usize) -> Result<Vec<Complex64>> {
    if m < 3 {
        return Err(Error::Domain(format!("need at least 3 boundary samples, got {m}")));
    }
    Ok((0..m)
        .map(|k| map.eval(Complex64::from_polar(radius, TAU * k as f64 / m as f64)))
        .collect())
}

fn is_left(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    (b.re - a.re) * (p.im - a.im) - (p.re - a.re) * (b.im - a.im)
}

/// Winding number of the closed polygon `poly` about `p`. Points on an edge
/// count as outside or inside depending on the half-open crossing rule.
pub fn winding_number(poly: &[Complex64], p: Complex64) -> i32 {
    let mut wn = 0;
    for (i, &a) in poly.iter().enumerate() {
        let b = poly[(i + 1) % poly.len()];
        if a.im <= p.im {
            if b.im > p.im && is_left(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.im <= p.im && is_left(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    wn
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = is_left(c, d, a);
    let d2 = is_left(c, d, b);
    let d3 = is_left(a, b, c);
    let d4 = is_left(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Complex64, q: Complex64, r: Complex64| {
        r.re >= p.re.min(q.re)
            && r.re <= p.re.max(q.re)
            && r.im >= p.im.min(q.im)
            && r.im <= p.im.max(q.im)
    };
    (d1 == 0.0 && on(c, d, a))
        || (d2 == 0.0 && on(c, d, b))
        || (d3 == 0.0 && on(a, b, c))
        || (d4 == 0.0 && on(a, b, d))
}

/// True when no two non-adjacent edges of the closed polygon meet.
/// Quadratic in the vertex count.
pub fn is_simple_polygon(poly: &[Complex64]) -> bool {
    let m = poly.len();
    if m < 3 {
        return false;
    }
    let edge = |i: usize| (poly[i], poly[(i + 1) % m]);
    for i in 0..m {
        let (a, b) = edge(i);
        let (xmin, xmax) = (a.re.min(b.re), a.re.max(b.re));
        let (ymin, ymax) = (a.im.min(b.im), a.im.max(b.im));
        for j in (i + 2)..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            let (c, d) = edge(j);
            if c.re.max(d.re) < xmin
                || c.re.min(d.re) > xmax
                || c.im.max(d.im) < ymin
                || c.im.min(d.im) > ymax
            {
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Largest pairwise distance in a point set.
pub fn diameter(points: &[Complex64]) -> f64 {
    let mut best = 0.0f64;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            best = best.max((p - q).norm());
        }
    }
    best
}

/// Outcome of the univalence heuristic.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivalenceCheck {
    /// min |φ′| over a polar grid of the open disk.
    pub min_derivative: f64,
    pub probes_tested: usize,
    /// Interior probes φ(ζ) about which the boundary does not wind exactly once.
    pub probes_failed: usize,
    /// The sampled boundary polygon has no self-intersections.
    pub simple: bool,
}

impl UnivalenceCheck {
    pub const MIN_DERIVATIVE: f64 = 1e-10;

    pub fn passed(&self) -> bool {
        self.min_derivative > Self::MIN_DERIVATIVE && self.probes_failed == 0 && self.simple
    }
}

/// Heuristic univalence test: nonvanishing derivative inside the disk, a
/// simple boundary polygon of `samples` points, and winding number one about
/// images of interior probe points. Not a proof.
pub fn check_univalence(map: &MapCoeffs, samples: usize) -> Result<UnivalenceCheck> {
    let boundary = map_circle(map, 1.0, samples)?;

    let radial = 64;
    let angular = 256;
    let mut min_derivative = f64::INFINITY;
    for i in 0..radial {
        let rho = i as f64 / radial as f64;
        for j in 0..angular {
            let zeta = Complex64::from_polar(rho, TAU * j as f64 / angular as f64);
            min_derivative = min_derivative.min(map.eval_derivative(zeta).norm());
        }
    }

    let mut probes_tested = 0;
    let mut probes_failed = 0;
    for &rho in &[0.0, 0.25, 0.5, 0.75, 0.9] {
        for j in 0..8 {
            let p = map.eval(Complex64::from_polar(rho, TAU * (j as f64 + 0.5) / 8.0));
            probes_tested += 1;
            if winding_number(&boundary, p) != 1 {
                probes_failed += 1;
            }
        }
    }

    Ok(UnivalenceCheck {
        min_derivative,
        probes_tested,
        probes_failed,
        simple: is_simple_polygon(&boundary),
    })
}
