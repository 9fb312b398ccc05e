mod common;

use std::f64::consts::PI;

use bergman_core::oracle::{
    fd_torsion_polygon, fd_torsion_with, gram_project_disk_with, map_diameter,
    quad_project_disk_with, richardson, BoundaryTreatment, DiskQuadrature, FdOptions,
};
use bergman_core::*;
use common::{rel, univalent_map};
use proptest::prelude::*;

fn map(coeffs: &[f64]) -> MapCoeffs {
    MapCoeffs::from_real(coeffs).unwrap()
}

#[test]
fn gram_disk_examples() {
    let disk = map(&[1.0]);
    for n in [1, 5, 24] {
        let res = gram_project_disk(&disk, n).unwrap();
        assert!(res.basis_coeffs.iter().all(|c| c.norm() < 1e-14));
        assert!(rel(res.residual_norm, (PI / 2.0).sqrt()) < 1e-14);
    }
    for (coeffs, want) in [
        (vec![1.0, 0.5], (17.0 * PI / 16.0).sqrt()),
        (vec![1.0, 0.0, 0.2], epicycloid_content(3, 0.2).unwrap()),
    ] {
        let m = map(&coeffs);
        let mut prev = f64::INFINITY;
        for n in [4, 8, 16, 24] {
            let res = gram_project_disk(&m, n).unwrap();
            assert!(res.residual_norm <= prev);
            prev = res.residual_norm;
        }
        assert!(rel(prev, want) < 1e-6);
    }
}

#[test]
fn monomial_basis_converges_from_above() {
    let m = map(&[1.0, 0.5]);
    let exact = (17.0 * PI / 16.0).sqrt();
    let mut prev = f64::INFINITY;
    for n in [4, 8, 16, 24] {
        let res = gram_project_disk_with(&m, n, DiskBasis::Monomial).unwrap();
        assert!(res.residual_norm <= prev && res.residual_norm >= exact);
        assert!(res.orthogonality_defect <= 1e-8);
        prev = res.residual_norm;
    }
    assert!(rel(prev, exact) < 2e-2);
}

#[test]
fn ill_conditioned_gram_rejected() {
    let err = gram_project_disk_with(&map(&[1.0, 0.5]), 60, DiskBasis::Monomial).unwrap_err();
    assert!(matches!(err, Error::IllConditionedGram { .. }));
}

#[test]
fn annulus_examples() {
    let dom = AnnulusDomain::new(1.0, 2.0).unwrap();
    let res = gram_project_annulus(&dom, -4, 4).unwrap();
    for (&deg, coeff) in res.basis_degrees.iter().zip(&res.basis_coeffs) {
        if deg == -1 {
            assert!(rel(coeff.re, 3.0 / (2.0 * 2f64.ln())) < 1e-13);
            assert!(coeff.im.abs() < 1e-12);
        } else {
            assert!(coeff.norm() < 1e-12, "degree {deg}");
        }
    }
    let forms = annulus_closedforms(&dom);
    assert!(rel(res.residual_sq(), forms.content_sq) < 1e-10);

    let constants = gram_project_annulus(&dom, 0, 0).unwrap();
    assert!(rel(constants.residual_sq(), PI / 2.0 * 15.0) < 1e-12);
    assert!(gram_project_annulus(&dom, 2, -2).is_err());
}

#[test]
fn confocal_examples() {
    let dom = ConfocalDomain::new(1.2, 2.5).unwrap();
    let res = gram_project_confocal(&dom, -8, 8).unwrap();
    assert!(rel(res.residual_sq(), confocal_content_sq(&dom)) < 1e-8);

    // the exact pulled-back projection is B/(2ζ) + 2Cζ − 2D/ζ³
    let k = confocal_coeffs(&dom);
    for (deg, want) in k.pulled_back_projection() {
        assert!((res.coeff_at(deg).unwrap().re - want).abs() < 1e-8);
    }
    for deg in [-8, -7, -6, -5, -4, -2, 0, 2, 3, 4, 5, 6, 7, 8] {
        assert!(res.coeff_at(deg).unwrap().norm() < 1e-10, "degree {deg}");
    }

    let far = gram_project_confocal(&ConfocalDomain::new(50.0, 100.0).unwrap(), -8, 8).unwrap();
    let annulus = annulus_closedforms(&AnnulusDomain::new(50.0, 100.0).unwrap());
    assert!(rel(far.residual_sq(), annulus.content_sq) < 1e-3);
}

/// The literal claim that the projection pulls back to B/(2ζ) + Cζ − D/ζ³.
/// The exact coefficients at ζ and ζ⁻³ are 2C and −2D, so this fails.
#[test]
fn confocal_stated_coefficients() {
    let dom = ConfocalDomain::new(1.2, 2.5).unwrap();
    let k = confocal_coeffs(&dom);
    let res = gram_project_confocal(&dom, -8, 8).unwrap();
    for (deg, want) in [(-1, k.b / 2.0), (1, k.c), (-3, -k.d)] {
        let got = res.coeff_at(deg).unwrap();
        assert!(
            (got.re - want).abs() <= 1e-8,
            "ζ^{deg}: oracle {} vs stated {want}",
            got.re
        );
    }
}

#[test]
fn quadrature_examples() {
    let card = map(&[1.0, 0.5]);
    let gram = gram_project_disk(&card, 16).unwrap();
    let quad = quad_project_disk(&card, 16, 64, 256).unwrap();
    assert!((quad.residual_norm - gram.residual_norm).abs() < 1e-8);

    let disk = map(&[1.0]);
    for (n, r, a) in [(1, 8, 16), (6, 20, 64), (12, 64, 256)] {
        let res = quad_project_disk(&disk, n, r, a).unwrap();
        assert!((res.residual_norm - (PI / 2.0).sqrt()).abs() < 1e-10);
    }
    assert!(quad_project_disk(&disk, 1, 4, 16).is_err());
}

#[test]
fn quadrature_radial_convergence() {
    // With the pulled-back basis angular orthogonality makes even coarse
    // radial rules exact. The z^k basis pulls back to φ^kφ′, whose Gram
    // integrands reach ρ-degree ≈ 4N, so 8 and 16 radial nodes are inexact.
    let m = map(&[1.0, 0.3, 0.05]);
    let n = 12;
    let exact = gram_project_disk_with(&m, n, DiskBasis::Monomial).unwrap().residual_norm;
    let err = |radial| {
        let rule = DiskQuadrature::new(radial, 256).unwrap();
        (quad_project_disk_with(&m, n, &rule, DiskBasis::Monomial).unwrap().residual_norm - exact).abs()
    };
    let (coarse, fine, finest) = (err(8), err(16), err(64));
    assert!(coarse > 1e-12 && fine < coarse / 4.0, "{coarse:e} {fine:e}");
    assert!(finest < 1e-10, "{finest:e}");
}

#[test]
fn fd_examples() {
    let disk = fd_torsion(&map(&[1.0]), 1.0 / 200.0).unwrap();
    assert!(rel(disk.rho, PI / 2.0) < 1e-2);
    assert!(disk.rho > 0.0 && disk.min_value >= 0.0);
    assert!(rel(disk.rho_volume, disk.rho) < 1e-8);
    assert!(disk.relative_residual <= 1e-10);
    assert!(disk.interior_cells >= 100);

    let card = fd_torsion(&map(&[1.0, 0.5]), 1.0 / 200.0).unwrap();
    assert!(rel(card.rho, 17.0 * PI / 16.0) < 2e-2);
    assert!(card.min_value >= 0.0);
}

#[test]
fn fd_second_order_on_smooth_boundaries() {
    for coeffs in [vec![1.0], vec![1.0, 0.0, 0.0, 0.2]] {
        let m = map(&coeffs);
        let d = map_diameter(&m).unwrap();
        let rho: Vec<f64> = [100.0, 200.0, 400.0]
            .iter()
            .map(|k| fd_torsion(&m, d / k).unwrap().rho)
            .collect();
        let ratio = (rho[0] - rho[1]) / (rho[1] - rho[2]);
        assert!(ratio >= 3.0, "{coeffs:?}: ratio {ratio}");
        let exact = bergman_content(&m).unwrap().content_sq();
        assert!(rel(richardson(rho[1], rho[2]), exact) <= rel(rho[2], exact));
    }
}

#[test]
fn fd_snapped_boundary_is_first_order_but_within_tolerance() {
    let opts = FdOptions {
        boundary: BoundaryTreatment::Snapped,
        ..FdOptions::default()
    };
    let m = map(&[1.0, 0.0, 0.25]);
    let h = map_diameter(&m).unwrap() / 400.0;
    let res = fd_torsion_with(&m, h, &opts).unwrap();
    let exact = bergman_content(&m).unwrap().content_sq();
    assert!(rel(res.rho, exact) < 2e-2);
}

#[test]
fn fd_errors_and_determinism() {
    let disk = map(&[1.0]);
    assert!(matches!(fd_torsion(&disk, 0.3), Err(Error::GridTooCoarse(_))));
    assert!(fd_torsion(&disk, 0.0).is_err());
    assert!(fd_torsion(&disk, -1.0).is_err());
    // a sliver thinner than the grid has no interior nodes
    let sliver = [
        Complex64::new(0.1, 0.1),
        Complex64::new(0.9, 0.1),
        Complex64::new(0.9, 0.1001),
    ];
    assert!(matches!(
        fd_torsion_polygon(&sliver, 0.25, &FdOptions::default()),
        Err(Error::EmptyMask)
    ));
    let a = fd_torsion(&disk, 1.0 / 60.0).unwrap();
    let b = fd_torsion(&disk, 1.0 / 60.0).unwrap();
    assert_eq!(a, b);
    let tight = FdOptions {
        max_iterations: 2,
        ..FdOptions::default()
    };
    assert!(matches!(
        fd_torsion_with(&disk, 1.0 / 60.0, &tight),
        Err(Error::SolverDivergence { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn projection_certificates(m in univalent_map()) {
        for basis in [DiskBasis::PulledBack, DiskBasis::Monomial] {
            let mut prev = f64::INFINITY;
            for n in 1..=12 {
                let res = gram_project_disk_with(&m, n, basis).unwrap();
                prop_assert!(res.residual_norm >= 0.0);
                prop_assert!(res.residual_sq() <= prev + 1e-12 * res.zbar_norm_sq);
                prev = res.residual_sq();
                prop_assert!(res.orthogonality_defect <= 1e-8);
                prop_assert!(rel(res.residual_sq() + res.projection_norm_sq, res.zbar_norm_sq) <= 1e-10);
                prop_assert!(res.gram_condition >= 1.0 && res.gram_condition <= 1e12);
            }
        }
    }

    #[test]
    fn oracle_matches_closed_form(m in univalent_map()) {
        let res = gram_project_disk(&m, 24).unwrap();
        let want = bergman_content(&m).unwrap().content;
        prop_assert!(rel(res.residual_norm, want) <= 1e-6);
    }

    #[test]
    fn annulus_oracle_inequality(r in 0.05..5.0f64, ratio in 1.01..10.0f64) {
        let big_r = r * ratio;
        let res = gram_project_annulus(&AnnulusDomain::new(r, big_r).unwrap(), -3, 3).unwrap();
        let torsion = PI / 2.0 * (big_r.powi(4) - r.powi(4));
        prop_assert!(res.residual_sq() < torsion);
        let gap = PI / 2.0 * (big_r * big_r - r * r).powi(2) / ratio.ln();
        prop_assert!(rel(torsion - res.residual_sq(), gap) <= 1e-8);
        prop_assert!(rel(res.residual_sq() + res.projection_norm_sq, res.zbar_norm_sq) <= 1e-10);
    }

    #[test]
    fn confocal_oracle_monotone(r in 1.05..3.0f64, ratio in 1.1..3.0f64) {
        let dom = ConfocalDomain::new(r, r * ratio).unwrap();
        let mut prev = f64::INFINITY;
        for width in 0..=8 {
            let res = gram_project_confocal(&dom, -width, width).unwrap();
            prop_assert!(res.residual_sq() <= prev + 1e-12 * res.zbar_norm_sq);
            prop_assert!(res.orthogonality_defect <= 1e-8);
            prev = res.residual_sq();
        }
        prop_assert!(rel(prev, confocal_content_sq(&dom)) <= 1e-8);
    }
}
