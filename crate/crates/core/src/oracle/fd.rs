//! Five-point finite differences for −Δν = 2 in Ω, ν = 0 on ∂Ω, with
//! ρ = ∫|∇ν|² = 2∫ν.
//!
//! Ω is represented by the polygon through M boundary samples. Nodes lie on
//! the lattice hℤ², inside means nonzero winding number. Near the boundary
//! the default cut-cell treatment uses the true distance θh to the polygon
//! along each grid line (Shortley–Weller with the symmetric 1/θ weight),
//! which keeps the energy second order in h. The snapped treatment puts the
//! wall at the neighbouring node and is only first order.

use num_complex::Complex64;

use crate::polydomain::{diameter, map_circle, MapCoeffs};
use crate::{Error, Result};

/// Fewer interior nodes than this is refused as too coarse.
pub const MIN_INTERIOR_NODES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryTreatment {
    #[default]
    CutCell,
    Snapped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions {
    pub boundary: BoundaryTreatment,
    pub boundary_samples: usize,
    /// Stop when ‖r‖ ≤ tolerance·‖b‖.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Lower clamp on the cut fraction θ.
    pub min_fraction: f64,
}

impl Default for FdOptions {
    fn default() -> Self {
        Self {
            boundary: BoundaryTreatment::CutCell,
            boundary_samples: 4096,
            tolerance: 1e-10,
            max_iterations: 200_000,
            min_fraction: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionSolveResult {
    /// Discrete Dirichlet energy uᵀAu.
    pub rho: f64,
    /// 2h²Σu. Agrees with `rho` up to the solver residual.
    pub rho_volume: f64,
    pub grid_h: f64,
    pub interior_cells: usize,
    pub iterations: usize,
    pub relative_residual: f64,
    pub min_value: f64,
    pub max_value: f64,
}

pub fn fd_torsion(map: &MapCoeffs, grid_h: f64) -> Result<TorsionSolveResult> {
    fd_torsion_with(map, grid_h, &FdOptions::default())
}

pub fn fd_torsion_with(map: &MapCoeffs, grid_h: f64, opts: &FdOptions) -> Result<TorsionSolveResult> {
    let polygon = map_circle(map, 1.0, opts.boundary_samples)?;
    fd_torsion_polygon(&polygon, grid_h, opts)
}

/// Diameter of φ(∂𝔻) from 1024 samples, the length scale for grid sizes.
pub fn map_diameter(map: &MapCoeffs) -> Result<f64> {
    Ok(diameter(&map_circle(map, 1.0, 1024)?))
}

/// Extrapolates two second-order values on grids h and h/2.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Sorted crossings of the polygon with one grid line, with the direction
/// of each crossing edge.
type Crossings = Vec<(f64, i32)>;

/// Crossings of the polygon with the lines `coord(v) = (start + j)·h`.
/// `coord` picks the axis the lines are constant in; `along` is the other.
fn line_crossings(
    polygon: &[Complex64],
    h: f64,
    start: i64,
    count: usize,
    coord: fn(Complex64) -> f64,
    along: fn(Complex64) -> f64,
) -> Vec<Crossings> {
    let mut lines = vec![Vec::new(); count];
    let m = polygon.len();
    for i in 0..m {
        let (a, b) = (polygon[i], polygon[(i + 1) % m]);
        let (ya, yb) = (coord(a), coord(b));
        if ya == yb {
            continue;
        }
        let (lo, hi) = (ya.min(yb), ya.max(yb));
        let dir = if yb > ya { 1 } else { -1 };
        let j_lo = ((lo / h).floor() as i64 - start - 1).max(0);
        let j_hi = ((hi / h).ceil() as i64 - start + 1).min(count as i64 - 1);
        for j in j_lo..=j_hi {
            let y = (start + j) as f64 * h;
            // half-open so a vertex on a grid line is counted once
            if y < lo || y >= hi {
                continue;
            }
            let t = (y - ya) / (yb - ya);
            lines[j as usize].push((along(a) + t * (along(b) - along(a)), dir));
        }
    }
    for l in &mut lines {
        l.sort_by(|p, q| p.0.total_cmp(&q.0));
    }
    lines
}

/// Distance fractions from x to the nearest crossing on each side, capped
/// at one cell.
fn cut_fractions(crossings: &Crossings, x: f64, h: f64) -> (f64, f64) {
    let idx = crossings.partition_point(|c| c.0 < x);
    let ahead = crossings.get(idx).map_or(1.0, |c| ((c.0 - x) / h).min(1.0));
    let behind = if idx > 0 {
        ((x - crossings[idx - 1].0) / h).min(1.0)
    } else {
        1.0
    };
    (behind, ahead)
}

/// Nodes closer than `min_fraction`·h to ∂Ω along a grid line are treated
/// as boundary nodes, which also catches nodes lying exactly on an edge.
fn clear_of_boundary(row: &Crossings, col: &Crossings, x: f64, y: f64, h: f64, min_fraction: f64) -> bool {
    let (w, e) = cut_fractions(row, x, h);
    let (s, n) = cut_fractions(col, y, h);
    w.min(e).min(s).min(n) >= min_fraction
}

pub fn fd_torsion_polygon(
    polygon: &[Complex64],
    grid_h: f64,
    opts: &FdOptions,
) -> Result<TorsionSolveResult> {
    if !(grid_h > 0.0) || !grid_h.is_finite() {
        return Err(Error::Domain(format!("grid spacing must be positive, got {grid_h}")));
    }
    if polygon.len() < 3 {
        return Err(Error::Domain("boundary polygon needs ≥ 3 vertices".into()));
    }
    let h = grid_h;
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in polygon {
        xmin = xmin.min(p.re);
        xmax = xmax.max(p.re);
        ymin = ymin.min(p.im);
        ymax = ymax.max(p.im);
    }
    let i0 = (xmin / h).floor() as i64 - 1;
    let j0 = (ymin / h).floor() as i64 - 1;
    let nx = ((xmax / h).ceil() as i64 - i0 + 2) as usize;
    let ny = ((ymax / h).ceil() as i64 - j0 + 2) as usize;
    let cells = nx
        .checked_mul(ny)
        .filter(|&c| c <= 400_000_000)
        .ok_or_else(|| Error::Domain(format!("grid of {nx}×{ny} nodes is too large")))?;

    let rows = line_crossings(polygon, h, j0, ny, |z| z.im, |z| z.re);
    let cols = line_crossings(polygon, h, i0, nx, |z| z.re, |z| z.im);
    let xs: Vec<f64> = (0..nx).map(|i| (i0 + i as i64) as f64 * h).collect();
    let ys: Vec<f64> = (0..ny).map(|j| (j0 + j as i64) as f64 * h).collect();

    const OUT: usize = usize::MAX;
    let mut index = vec![OUT; cells];
    let mut count = 0;
    for j in 0..ny {
        let row = &rows[j];
        let mut winding = 0;
        let mut p = row.len();
        for i in (0..nx).rev() {
            while p > 0 && row[p - 1].0 > xs[i] {
                winding += row[p - 1].1;
                p -= 1;
            }
            if winding != 0 && clear_of_boundary(row, &cols[i], xs[i], ys[j], h, opts.min_fraction) {
                index[j * nx + i] = count;
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err(Error::EmptyMask);
    }
    if count < MIN_INTERIOR_NODES {
        return Err(Error::GridTooCoarse(count));
    }

    // Assemble h²·A: diagonal plus up to four interior neighbours.
    let mut diag = vec![0.0; count];
    let mut nbrs = vec![[OUT; 4]; count];
    for j in 0..ny {
        for i in 0..nx {
            let k = index[j * nx + i];
            if k == OUT {
                continue;
            }
            let (west, east) = cut_fractions(&rows[j], xs[i], h);
            let (south, north) = cut_fractions(&cols[i], ys[j], h);
            let neighbours = [
                (index[j * nx + i - 1], west),
                (index[j * nx + i + 1], east),
                (index[(j - 1) * nx + i], south),
                (index[(j + 1) * nx + i], north),
            ];
            let mut d = 0.0;
            for (slot, &(nb, theta)) in neighbours.iter().enumerate() {
                if nb != OUT {
                    nbrs[k][slot] = nb;
                    d += 1.0;
                } else {
                    d += match opts.boundary {
                        BoundaryTreatment::Snapped => 1.0,
                        BoundaryTreatment::CutCell => 1.0 / theta.max(opts.min_fraction),
                    };
                }
            }
            diag[k] = d;
        }
    }

    let apply = |x: &[f64], y: &mut [f64]| {
        for k in 0..x.len() {
            let mut s = diag[k] * x[k];
            for &nb in &nbrs[k] {
                if nb != OUT {
                    s -= x[nb];
                }
            }
            y[k] = s;
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let rhs_value = 2.0 * h * h;
    let b_norm = rhs_value * (count as f64).sqrt();
    let mut x = vec![0.0; count];
    let mut r = vec![rhs_value; count];
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; count];
    let mut rz = dot(&r, &z);
    let mut iterations = 0;
    let mut res_norm = b_norm;
    while res_norm > opts.tolerance * b_norm {
        if iterations >= opts.max_iterations {
            return Err(Error::SolverDivergence {
                iterations,
                residual: res_norm / b_norm,
            });
        }
        apply(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for k in 0..count {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        res_norm = dot(&r, &r).sqrt();
        if !res_norm.is_finite() {
            return Err(Error::SolverDivergence {
                iterations,
                residual: res_norm,
            });
        }
        for k in 0..count {
            z[k] = r[k] / diag[k];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..count {
            p[k] = z[k] + beta * p[k];
        }
        iterations += 1;
    }

    apply(&x, &mut ap);
    let rho = dot(&x, &ap);
    let sum: f64 = x.iter().sum();
    Ok(TorsionSolveResult {
        rho,
        rho_volume: rhs_value * sum,
        grid_h: h,
        interior_cells: count,
        iterations,
        relative_residual: res_norm / b_norm,
        min_value: x.iter().copied().fold(f64::INFINITY, f64::min),
        max_value: x.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn disk() -> MapCoeffs {
        MapCoeffs::from_real(&[1.0]).unwrap()
    }

    #[test]
    fn disk_torsion_close_to_half_pi() {
        let res = fd_torsion(&disk(), 2.0 / 200.0).unwrap();
        assert!((res.rho - PI / 2.0).abs() / (PI / 2.0) < 2e-3, "{}", res.rho);
        assert!((res.rho - res.rho_volume).abs() < 1e-8);
        assert!(res.min_value > 0.0);
        // ν = (1 − |z|²)/2 peaks at 1/2.
        assert!((res.max_value - 0.5).abs() < 1e-3);
    }

    #[test]
    fn square_torsion() {
        // ρ(unit square) ≈ 0.140577 for −Δν = 2.
        let sq = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(0.0, 1.0),
        ];
        let res = fd_torsion_polygon(&sq, 1.0 / 64.0, &FdOptions::default()).unwrap();
        assert!((res.rho - 0.140_577).abs() < 1e-3, "{}", res.rho);
    }

    #[test]
    fn coarse_grid_rejected() {
        let err = fd_torsion(&disk(), 0.5).unwrap_err();
        assert!(matches!(err, Error::GridTooCoarse(_)));
    }

    #[test]
    fn richardson_of_exact_quadratic_error() {
        let exact = 3.0;
        let coarse = exact + 0.04;
        let fine = exact + 0.01;
        assert!((richardson(coarse, fine) - exact).abs() < 1e-15);
    }
}
