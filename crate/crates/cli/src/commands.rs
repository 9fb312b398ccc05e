use std::f64::consts::TAU;

use bergman_core::closedform::{
    annulus_closedforms, bergman_content, best_approx_primitive, best_approximation_pulled_back,
    confocal_coeffs, confocal_content_sq, confocal_projection_norm_sq, confocal_zbar_norm_sq,
    epicycloid_content, monomial_boundary_radius, monomial_critical_constant,
    monomial_has_bounded_component, monomial_radial_profile,
};
use bergman_core::oracle::{
    fd_torsion, gram_project_annulus, gram_project_confocal, gram_project_disk_with,
    map_diameter, quad_project_disk_with, richardson, DiskBasis, DiskQuadrature,
};
use bergman_core::polydomain::{
    boundary_points, check_univalence, invert_map, linear_seed, winding_number, AnnulusDomain,
    ConfocalDomain, MapCoeffs, MonomialLevelParams, PolyMapDomain,
};
use bergman_core::{closedform::product_coeffs, Complex64};

use crate::domain::Domain;
use crate::json::{Json, ObjBuilder};
use crate::{
    BasisArg, CliError, ComputeArgs, ExportArgs, ExportWhat, GridKind, Report, SweepArgs, Table,
    Tolerances, VerifyArgs, VERSION,
};

fn header(command: &str) -> ObjBuilder {
    Json::obj().str("tool", "bergman").str("version", VERSION).str("command", command)
}

fn complex_list(values: &[Complex64]) -> Json {
    Json::Arr(values.iter().map(|c| Json::nums([c.re, c.im])).collect())
}

fn rel_err(observed: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        observed.abs()
    } else {
        (observed - expected).abs() / expected.abs()
    }
}

pub fn compute(args: &ComputeArgs) -> Result<Report, CliError> {
    let domain = args.domain.spec()?.validate()?;
    let result = match &domain {
        Domain::Polymap(map) => compute_polymap(map)?,
        Domain::Annulus(d) => compute_annulus(d),
        Domain::Confocal(d) => compute_confocal(d),
        Domain::MonomialLevel(p) => compute_monomial(p)?,
    };
    let doc = header("compute")
        .field("domain", domain.echo())
        .field("tolerances", args.tol.to_json())
        .field("result", result)
        .build();
    Ok(Report {
        doc,
        table: None,
        passed: true,
    })
}

fn compute_polymap(map: &MapCoeffs) -> Result<Json, CliError> {
    let content = bergman_content(map)?;
    let prim = best_approx_primitive(map);
    let univ = check_univalence(map, 1024)?;
    Ok(Json::obj()
        .int("degree", map.degree() as i64)
        .num("content", content.content)
        .num("content_sq", content.content_sq())
        .num("zbar_norm_sq", content.zbar_norm_sq)
        .num("proj_norm_sq", content.proj_norm_sq)
        .num("torsion", content.content_sq())
        .field(
            "primitive",
            Json::obj()
                .num("constant", prim.constant)
                .field("coeffs", complex_list(&prim.coeffs))
                .build(),
        )
        .field("pulled_back_best_approximation", complex_list(&prim.derivative_poly()))
        .field("product_coeffs", complex_list(&product_coeffs(map)))
        .field(
            "univalence",
            Json::obj()
                .bool("passed", univ.passed())
                .num("min_derivative", univ.min_derivative)
                .int("probes_tested", univ.probes_tested as i64)
                .int("probes_failed", univ.probes_failed as i64)
                .bool("simple_boundary", univ.simple)
                .build(),
        )
        .build())
}

fn compute_annulus(d: &AnnulusDomain) -> Json {
    let f = annulus_closedforms(d);
    Json::obj()
        .num("best_coeff", f.best_coeff)
        .num("content", f.content_sq.sqrt())
        .num("content_sq", f.content_sq)
        .num("zbar_norm_sq", f.zbar_norm_sq())
        .num("torsion", f.torsion)
        .num("gap", f.gap())
        .num("gap_formula", f.gap_formula)
        .build()
}

fn compute_confocal(d: &ConfocalDomain) -> Json {
    let k = confocal_coeffs(d);
    let content_sq = confocal_content_sq(d);
    Json::obj()
        .field(
            "coefficients",
            Json::obj().num("A", k.a).num("B", k.b).num("C", k.c).num("D", k.d).build(),
        )
        .num("content", content_sq.sqrt())
        .num("content_sq", content_sq)
        .num("zbar_norm_sq", confocal_zbar_norm_sq(d))
        .num("proj_norm_sq", confocal_projection_norm_sq(d))
        .field(
            "pulled_back_projection",
            Json::Arr(
                k.pulled_back_projection()
                    .iter()
                    .map(|&(deg, c)| Json::obj().int("degree", deg as i64).num("coeff", c).build())
                    .collect(),
            ),
        )
        .build()
}

fn compute_monomial(p: &MonomialLevelParams) -> Result<Json, CliError> {
    let bounded = monomial_has_bounded_component(p);
    let mut out = Json::obj()
        .int("n", p.n as i64)
        .num("C", p.c)
        .num("critical_constant", monomial_critical_constant(p.n)?)
        .bool("bounded", bounded);
    out = match monomial_radial_profile(p) {
        Ok(prof) => out.field(
            "radial_profile",
            Json::obj().num("r_crit", prof.r_crit).num("f_at_r_crit", prof.f_at_r).build(),
        ),
        Err(_) => out.field("radial_profile", Json::Null),
    };
    let best = if bounded {
        Json::obj()
            .num("coeff", p.c * p.n as f64 / 2.0)
            .int("degree", p.n as i64 - 1)
            .build()
    } else {
        Json::Null
    };
    Ok(out.field("best_approximation", best).build())
}

struct Check {
    name: &'static str,
    expected: f64,
    observed: f64,
    error: f64,
    tolerance: f64,
}

impl Check {
    fn relative(name: &'static str, expected: f64, observed: f64, tolerance: f64) -> Self {
        Self {
            name,
            expected,
            observed,
            error: rel_err(observed, expected),
            tolerance,
        }
    }

    fn passed(&self) -> bool {
        self.error <= self.tolerance
    }

    fn to_json(&self) -> Json {
        Json::obj()
            .str("name", self.name)
            .num("expected", self.expected)
            .num("observed", self.observed)
            .num("error", self.error)
            .num("tolerance", self.tolerance)
            .str("status", if self.passed() { "PASS" } else { "FAIL" })
            .build()
    }

    fn row(&self) -> Vec<Json> {
        vec![
            Json::str(self.name),
            Json::Num(self.expected),
            Json::Num(self.observed),
            Json::Num(self.error),
            Json::Num(self.tolerance),
            Json::str(if self.passed() { "PASS" } else { "FAIL" }),
        ]
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let domain = args.domain.spec()?.validate()?;
    if args.basis_size == 0 {
        return Err(CliError::Validation("--basis-size must be ≥ 1".into()));
    }
    let (checks, diagnostics) = match &domain {
        Domain::Polymap(map) => verify_polymap(map, args)?,
        Domain::Annulus(d) => verify_annulus(d, args)?,
        Domain::Confocal(d) => verify_confocal(d, args)?,
        Domain::MonomialLevel(_) => {
            return Err(CliError::Validation(
                "verify supports polymap, annulus and confocal domains".into(),
            ))
        }
    };
    let passed = checks.iter().all(Check::passed);
    let doc = header("verify")
        .field("domain", domain.echo())
        .field("tolerances", args.tol.to_json())
        .int("basis_size", args.basis_size as i64)
        .str("status", if passed { "PASS" } else { "FAIL" })
        .field("checks", Json::Arr(checks.iter().map(Check::to_json).collect()))
        .field("diagnostics", diagnostics)
        .build();
    let table = Table {
        columns: ["check", "expected", "observed", "error", "tolerance", "status"]
            .map(String::from)
            .to_vec(),
        rows: checks.iter().map(Check::row).collect(),
    };
    Ok(Report {
        doc,
        table: Some(table),
        passed,
    })
}

fn verify_polymap(map: &MapCoeffs, args: &VerifyArgs) -> Result<(Vec<Check>, Json), CliError> {
    let tol: &Tolerances = &args.tol;
    let basis = match args.basis {
        BasisArg::PulledBack => DiskBasis::PulledBack,
        BasisArg::Monomial => DiskBasis::Monomial,
    };
    let content = bergman_content(map)?;
    let lambda = content.content;
    let mut checks = vec![Check::relative(
        "pythagoras_closed_form",
        content.zbar_norm_sq,
        content.content_sq() + content.proj_norm_sq,
        tol.closed,
    )];

    let gram = gram_project_disk_with(map, args.basis_size, basis)?;
    checks.push(Check::relative("gram_content", lambda, gram.residual_norm, tol.oracle));

    let rule = DiskQuadrature::new(args.radial_nodes, args.angular_nodes)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let quad = quad_project_disk_with(map, args.basis_size, &rule, basis)?;
    checks.push(Check::relative(
        "quad_vs_gram",
        gram.residual_norm,
        quad.residual_norm,
        tol.quad,
    ));

    let mut diag = Json::obj().field(
        "gram",
        Json::obj()
            .num("residual_norm", gram.residual_norm)
            .num("projection_norm_sq", gram.projection_norm_sq)
            .num("gram_condition", gram.gram_condition)
            .num("orthogonality_defect", gram.orthogonality_defect)
            .str("basis", if basis == DiskBasis::PulledBack { "pulled-back" } else { "monomial" })
            .build(),
    );

    if !args.skip_fd {
        let h = match args.fd_h {
            Some(h) if h > 0.0 && h.is_finite() => h,
            Some(h) => return Err(CliError::Validation(format!("--fd-h must be positive, got {h}"))),
            None => map_diameter(map)? / 400.0,
        };
        let fd = fd_torsion(map, h)?;
        checks.push(Check::relative("fd_torsion", content.content_sq(), fd.rho, tol.fd));
        let extrapolated = fd_torsion(map, 2.0 * h).ok().map(|c| richardson(c.rho, fd.rho));
        diag = diag.field(
            "fd",
            Json::obj()
                .num("grid_h", fd.grid_h)
                .num("rho", fd.rho)
                .num("rho_volume", fd.rho_volume)
                .field("richardson", extrapolated.map_or(Json::Null, Json::Num))
                .int("interior_cells", fd.interior_cells as i64)
                .int("iterations", fd.iterations as i64)
                .num("relative_residual", fd.relative_residual)
                .num("min_value", fd.min_value)
                .num("max_value", fd.max_value)
                .build(),
        );
    }
    Ok((checks, diag.build()))
}

fn verify_annulus(d: &AnnulusDomain, args: &VerifyArgs) -> Result<(Vec<Check>, Json), CliError> {
    let tol = &args.tol;
    let span = (args.basis_size / 2).max(1) as i32;
    let forms = annulus_closedforms(d);
    let oracle = gram_project_annulus(d, -span, span)?;
    let checks = vec![
        Check::relative("oracle_content_sq", forms.content_sq, oracle.residual_sq(), tol.oracle),
        Check::relative(
            "oracle_best_coeff",
            forms.best_coeff,
            oracle.coeff_at(-1).map_or(f64::NAN, |c| c.re),
            tol.oracle,
        ),
        Check::relative("gap_formula", forms.gap_formula, forms.gap(), tol.closed),
        Check::relative(
            "oracle_gap",
            forms.gap_formula,
            forms.torsion - oracle.residual_sq(),
            tol.oracle,
        ),
        Check {
            name: "strict_inequality",
            expected: forms.torsion,
            observed: forms.content_sq,
            error: if forms.content_sq < forms.torsion { 0.0 } else { f64::INFINITY },
            tolerance: 0.0,
        },
    ];
    let diag = Json::obj()
        .num("content_sq", forms.content_sq)
        .num("torsion", forms.torsion)
        .num("gap", forms.gap())
        .field("degree_range", Json::Arr(vec![Json::Int(-span as i64), Json::Int(span as i64)]))
        .build();
    Ok((checks, diag))
}

fn verify_confocal(d: &ConfocalDomain, args: &VerifyArgs) -> Result<(Vec<Check>, Json), CliError> {
    let tol = &args.tol;
    let span = ((args.basis_size / 2).max(3)) as i32;
    let k = confocal_coeffs(d);
    let content_sq = confocal_content_sq(d);
    let oracle = gram_project_confocal(d, -span, span)?;
    let eq = k.boundary_residuals(d.inner(), d.outer()).into_iter().fold(0.0, f64::max);
    let mut checks = vec![
        Check {
            name: "defining_equations",
            expected: 0.0,
            observed: eq,
            error: eq,
            tolerance: tol.closed,
        },
        Check::relative("oracle_content_sq", content_sq, oracle.residual_sq(), tol.oracle),
    ];
    let names = ["projection_coeff_zeta^-3", "projection_coeff_zeta^-1", "projection_coeff_zeta^1"];
    for ((deg, want), name) in k.pulled_back_projection().into_iter().zip(names) {
        let got = oracle.coeff_at(deg).map_or(f64::NAN, |c| c.re);
        checks.push(Check::relative(name, want, got, tol.oracle));
    }
    let diag = Json::obj()
        .num("content_sq", content_sq)
        .num("oracle_residual_sq", oracle.residual_sq())
        .field("degree_range", Json::Arr(vec![Json::Int(-span as i64), Json::Int(span as i64)]))
        .build();
    Ok((checks, diag))
}

pub fn sweep_epicycloid(args: &SweepArgs) -> Result<Report, CliError> {
    if args.n < 2 {
        return Err(CliError::Validation(format!("--n must be ≥ 2, got {}", args.n)));
    }
    if args.steps < 2 {
        return Err(CliError::Validation(format!("--steps must be ≥ 2, got {}", args.steps)));
    }
    let n = args.n;
    let mut rows = Vec::with_capacity(args.steps);
    for i in 0..args.steps {
        let a = (i as f64 / (args.steps - 1) as f64) / n as f64;
        let lambda = epicycloid_content(n, a)?;
        rows.push(vec![Json::Num(a), Json::Num(lambda), Json::Num(lambda * lambda)]);
    }
    let table = Table {
        columns: ["a", "lambda", "lambda_sq"].map(String::from).to_vec(),
        rows,
    };
    let doc = header("sweep-epicycloid")
        .int("n", n as i64)
        .int("steps", args.steps as i64)
        .field("table", table.to_json())
        .build();
    Ok(Report {
        doc,
        table: Some(table),
        passed: true,
    })
}

pub fn export(args: &ExportArgs) -> Result<Report, CliError> {
    let domain = args.domain.spec()?.validate()?;
    let min = match args.what {
        ExportWhat::Boundary => 3,
        ExportWhat::Field => 1,
    };
    if args.resolution < min {
        return Err(CliError::Validation(format!(
            "--resolution must be ≥ {min}, got {}",
            args.resolution
        )));
    }
    let (table, extra) = match args.what {
        ExportWhat::Boundary => export_boundary(&domain, args.resolution)?,
        ExportWhat::Field => export_field(&domain, args.resolution, args.grid)?,
    };
    let mut doc = header("export")
        .field("domain", domain.echo())
        .str("what", match args.what {
            ExportWhat::Boundary => "boundary",
            ExportWhat::Field => "field",
        })
        .int("resolution", args.resolution as i64);
    if args.what == ExportWhat::Field {
        doc = doc.str("grid", match args.grid {
            GridKind::Polar => "polar",
            GridKind::Cartesian => "cartesian",
        });
    }
    for (k, v) in extra {
        doc = doc.field(k, v);
    }
    let doc = doc.field("table", table.to_json()).build();
    Ok(Report {
        doc,
        table: Some(table),
        passed: true,
    })
}

type Extra = Vec<(&'static str, Json)>;

fn circle(radius: f64, m: usize) -> impl Iterator<Item = Complex64> {
    (0..m).map(move |j| Complex64::from_polar(radius, TAU * j as f64 / m as f64))
}

fn export_boundary(domain: &Domain, m: usize) -> Result<(Table, Extra), CliError> {
    let mut rows = Vec::new();
    let mut push = |curve: &str, z: Complex64| {
        rows.push(vec![Json::str(curve), Json::Num(z.re), Json::Num(z.im)]);
    };
    let mut extra = Extra::new();
    match domain {
        Domain::Polymap(map) => {
            for z in boundary_points(&PolyMapDomain::new(map.clone()), m)? {
                push("outer", z);
            }
        }
        Domain::Annulus(d) => {
            circle(d.outer(), m).for_each(|z| push("outer", z));
            circle(d.inner(), m).for_each(|z| push("inner", z));
        }
        Domain::Confocal(d) => {
            circle(d.outer(), m).for_each(|z| push("outer", ConfocalDomain::joukowski(z)));
            circle(d.inner(), m).for_each(|z| push("inner", ConfocalDomain::joukowski(z)));
        }
        Domain::MonomialLevel(p) => {
            let mut open = 0;
            for j in 0..m {
                let theta = TAU * j as f64 / m as f64;
                match monomial_boundary_radius(p, theta) {
                    Some(r) => push("level", Complex64::from_polar(r, theta)),
                    None => open += 1,
                }
            }
            extra.push(("bounded", Json::Bool(monomial_has_bounded_component(p))));
            extra.push(("open_rays", Json::Int(open)));
        }
    }
    let table = Table {
        columns: ["curve", "x", "y"].map(String::from).to_vec(),
        rows,
    };
    Ok((table, extra))
}

/// Best approximation f and the pulled-back point for each kind.
enum Field<'a> {
    Poly(&'a MapCoeffs, Vec<Complex64>),
    Annulus(&'a AnnulusDomain, f64),
    Confocal(&'a ConfocalDomain, [(i32, f64); 3]),
    Monomial(&'a MonomialLevelParams),
}

impl Field<'_> {
    fn value_at_parameter(&self, zeta: Complex64) -> (Complex64, Complex64) {
        match self {
            Field::Poly(map, p) => {
                let prim = bergman_core::closedform::BestApproxPrimitive {
                    constant: 0.0,
                    coeffs: p.clone(),
                };
                (map.eval(zeta), best_approximation_pulled_back(map, &prim, zeta))
            }
            Field::Annulus(_, c) => (zeta, *c / zeta),
            Field::Confocal(_, terms) => {
                let pulled: Complex64 = terms.iter().map(|&(k, c)| c * zeta.powi(k)).sum();
                (
                    ConfocalDomain::joukowski(zeta),
                    pulled / ConfocalDomain::joukowski_derivative(zeta),
                )
            }
            Field::Monomial(p) => (zeta, monomial_value(p, zeta)),
        }
    }
}

fn monomial_value(p: &MonomialLevelParams, z: Complex64) -> Complex64 {
    p.c * p.n as f64 / 2.0 * z.powi(p.n as i32 - 1)
}

fn field_row(z: Complex64, f: Complex64) -> Vec<Json> {
    vec![
        Json::Num(z.re),
        Json::Num(z.im),
        Json::Num(f.re),
        Json::Num(f.im),
        Json::Num((z.conj() - f).norm()),
    ]
}

fn export_field(domain: &Domain, n: usize, grid: GridKind) -> Result<(Table, Extra), CliError> {
    let field = match domain {
        Domain::Polymap(map) => Field::Poly(map, best_approx_primitive(map).coeffs),
        Domain::Annulus(d) => Field::Annulus(d, annulus_closedforms(d).best_coeff),
        Domain::Confocal(d) => Field::Confocal(d, confocal_coeffs(d).pulled_back_projection()),
        Domain::MonomialLevel(p) => {
            if !monomial_has_bounded_component(p) {
                return Err(CliError::Validation(
                    "the level set has no bounded component, so z̄ is not square integrable".into(),
                ));
            }
            Field::Monomial(p)
        }
    };
    let mut rows = Vec::new();
    let mut extra = Extra::new();
    match grid {
        GridKind::Polar => {
            let mut skipped = 0;
            for i in 0..n {
                let s = (i as f64 + 0.5) / n as f64;
                for j in 0..n {
                    let theta = TAU * j as f64 / n as f64;
                    let zeta = match &field {
                        Field::Poly(..) => Complex64::from_polar(s, theta),
                        Field::Annulus(d, _) => Complex64::from_polar(d.inner() + s * (d.outer() - d.inner()), theta),
                        Field::Confocal(d, _) => Complex64::from_polar(d.inner() + s * (d.outer() - d.inner()), theta),
                        Field::Monomial(p) => match monomial_boundary_radius(p, theta) {
                            Some(r) => Complex64::from_polar(s * r, theta),
                            None => {
                                skipped += 1;
                                continue;
                            }
                        },
                    };
                    let (z, f) = field.value_at_parameter(zeta);
                    if f.re.is_finite() && f.im.is_finite() {
                        rows.push(field_row(z, f));
                    } else {
                        skipped += 1;
                    }
                }
            }
            extra.push(("skipped", Json::Int(skipped)));
        }
        GridKind::Cartesian => {
            let (rows_out, outside, failed) = cartesian_field(&field, n)?;
            rows = rows_out;
            extra.push(("outside", Json::Int(outside)));
            extra.push(("inversion_failed", Json::Int(failed)));
        }
    }
    let table = Table {
        columns: ["x", "y", "re_f", "im_f", "residual"].map(String::from).to_vec(),
        rows,
    };
    Ok((table, extra))
}

/// Samples on an n×n grid over the bounding box; points outside Ω are
/// dropped and points where the inverse map cannot be found are counted.
fn cartesian_field(field: &Field, n: usize) -> Result<(Vec<Vec<Json>>, i64, i64), CliError> {
    let polygon: Vec<Complex64> = match field {
        Field::Poly(map, _) => boundary_points(&PolyMapDomain::new((*map).clone()), 4096)?,
        Field::Annulus(d, _) => circle(d.outer(), 4096).collect(),
        Field::Confocal(d, _) => circle(d.outer(), 4096).map(ConfocalDomain::joukowski).collect(),
        Field::Monomial(p) => (0..4096)
            .filter_map(|j| {
                let theta = TAU * j as f64 / 4096.0;
                monomial_boundary_radius(p, theta).map(|r| Complex64::from_polar(r, theta))
            })
            .collect(),
    };
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in &polygon {
        xmin = xmin.min(z.re);
        xmax = xmax.max(z.re);
        ymin = ymin.min(z.im);
        ymax = ymax.max(z.im);
    }
    let mut rows = Vec::new();
    let (mut outside, mut failed) = (0, 0);
    for j in 0..n {
        let y = ymin + (j as f64 + 0.5) * (ymax - ymin) / n as f64;
        for i in 0..n {
            let x = xmin + (i as f64 + 0.5) * (xmax - xmin) / n as f64;
            let z = Complex64::new(x, y);
            if winding_number(&polygon, z) == 0 {
                outside += 1;
                continue;
            }
            let value = match field {
                Field::Poly(map, _) => match invert_map(map, z, linear_seed(map, z)) {
                    Ok(zeta) => Some(field.value_at_parameter(zeta).1),
                    Err(_) => {
                        failed += 1;
                        continue;
                    }
                },
                Field::Annulus(d, c) => (z.norm() > d.inner()).then(|| *c / z),
                Field::Confocal(d, _) => {
                    // the root of ζ + 1/ζ = z outside the unit circle
                    let root = (z * z - 4.0).sqrt();
                    let mut zeta = (z + root) / 2.0;
                    if zeta.norm() < 1.0 {
                        zeta = 1.0 / zeta;
                    }
                    (zeta.norm() > d.inner()).then(|| field.value_at_parameter(zeta).1)
                }
                Field::Monomial(p) => Some(monomial_value(p, z)),
            };
            match value {
                Some(f) => rows.push(field_row(z, f)),
                None => outside += 1,
            }
        }
    }
    Ok((rows, outside, failed))
}
