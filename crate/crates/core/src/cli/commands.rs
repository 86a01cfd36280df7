//! The subcommands as plain functions returning reports.

use serde_json::{json, Value};

use super::spec::{matrix_to_json, RelationSpecFile};
use super::CliError;
use crate::boundary::{self, BoundaryTriplet, TripletKind};
use crate::extension::LiftBundle;
use crate::linalg::{self, C64};
use crate::oracle;
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::ToleranceConfig;

const GREEN_TOL: f64 = 1e-10;
const WEYL_TOL: f64 = 1e-9;

/// JSON number, or the strings `"inf"`, `"-inf"`, `"nan"`.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn header(cfg: &ToleranceConfig) -> Value {
    json!({
        "tool": "linrel",
        "version": env!("CARGO_PKG_VERSION"),
        "cfg": cfg,
    })
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": matrix_to_json(s.basis()) })
}

fn relation_json(r: &LinearRelation, label: &str) -> Value {
    serde_json::to_value(RelationSpecFile::from_relation(r, Some(label.to_string()))).expect("spec serializes")
}

fn symmetry_json(r: &LinearRelation, cfg: &ToleranceConfig) -> Value {
    let rep = r.classify(cfg);
    json!({
        "square": rep.square,
        "is_symmetric": rep.is_symmetric,
        "is_selfadjoint": rep.is_selfadjoint,
        "is_nonnegative": rep.is_nonnegative,
        "dom_perp_ran": rep.dom_perp_ran,
        "cross_gram_max": rep.cross_gram_max,
        "lower_bound": rep.lower_bound.map(num),
        "numerical_range_radius": num(rep.numerical_range_radius),
    })
}

fn with_header(cfg: &ToleranceConfig, body: Value) -> Value {
    let mut out = header(cfg);
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

pub fn cmd_analyze(spec: &RelationSpecFile, cfg: &ToleranceConfig) -> Result<Value, CliError> {
    let r = spec.relation(cfg)?;
    let parts = r.parts(cfg);
    Ok(with_header(
        cfg,
        json!({
            "input": spec,
            "relation": relation_json(&r, "R"),
            "parts": {
                "dom": subspace_json(&parts.dom),
                "ran": subspace_json(&parts.ran),
                "ker": subspace_json(&parts.ker),
                "mul": subspace_json(&parts.mul),
            },
            "single_valued": r.is_single_valued(cfg),
            "operator_part_norm": r.operator_part_norm(cfg),
            "symmetry": symmetry_json(&r, cfg),
            "adjoint": relation_json(&r.adjoint(), "R*"),
        }),
    ))
}

fn triplet_checks(t: &BoundaryTriplet, bundle: &LiftBundle, cfg: &ToleranceConfig) -> Value {
    let (k0, k1) = t.designated_kernels(bundle);
    json!({
        "kind": t.kind().name(),
        "boundary_dim": t.g(),
        "degenerate": t.is_degenerate(),
        "green_residual": t.green_residual(),
        "boundary_rank": t.boundary_rank(cfg),
        "surjective": t.is_surjective(cfg),
        "kernel0_matches": t.kernel0(cfg).approx_eq(&k0, cfg),
        "kernel1_matches": t.kernel1(cfg).approx_eq(&k1, cfg),
    })
}

fn triplet_ok(v: &Value) -> bool {
    v["green_residual"].as_f64().is_some_and(|x| x < GREEN_TOL)
        && v["surjective"] == json!(true)
        && v["kernel0_matches"] == json!(true)
        && v["kernel1_matches"] == json!(true)
}

pub fn cmd_extensions(spec: &RelationSpecFile, cfg: &ToleranceConfig, seed: u64) -> Result<Value, CliError> {
    let r = spec.relation(cfg)?;
    let b = LiftBundle::new(&r, cfg);
    let checks = b.verify(cfg)?;
    let decomposition = b.s0_adjoint_decomposition_check(cfg)?;
    let triplets: Vec<Value> = [TripletKind::Main, TripletKind::Basic, TripletKind::Tilde]
        .into_iter()
        .map(|k| triplet_checks(&BoundaryTriplet::of_kind(k, &b, cfg), &b, cfg))
        .collect();

    let mut rng = oracle::rng_from_seed(seed);
    let g0 = b.g0.dim();
    let mut krein = Vec::new();
    for _ in 0..if g0 == 0 { 1 } else { 5 } {
        let theta = oracle::random_selfadjoint_relation(&mut rng, g0, 0.0, 3.0);
        let a = b.nonneg_extension(&theta, cfg)?;
        let order = b.krein_order_check(&a, cfg)?;
        krein.push(json!({
            "theta": relation_json(&theta, "Θ"),
            "lower_min_eigenvalue": order.lower_min_eigenvalue,
            "upper_min_eigenvalue": order.upper_min_eigenvalue,
            "hermitian_defect": order.hermitian_defect,
            "holds": order.holds,
        }));
    }
    let mut extremal = Vec::new();
    let mut choices = vec![("{0}", Subspace::zero(g0))];
    if g0 > 0 {
        choices.push(("G0", Subspace::full(g0)));
    }
    for (name, l) in choices {
        let a = b.extremal_family(&l, cfg)?;
        extremal.push(json!({
            "L": name,
            "L_basis": matrix_to_json(l.basis()),
            "extension": relation_json(&a, &format!("A[L={name}]")),
            "is_extremal": b.is_extremal(&a, cfg)?,
        }));
    }
    let all_pass = checks.all_hold()
        && decomposition
        && triplets.iter().all(triplet_ok)
        && krein.iter().all(|k| k["holds"] == json!(true))
        && extremal.iter().all(|e| e["is_extremal"] == json!(true));
    Ok(with_header(
        cfg,
        json!({
            "input": spec,
            "seed": seed,
            "dims": {
                "n1": b.n1(), "n2": b.n2(),
                "G": b.g.dim(), "G0": g0, "G_tilde": b.g_tilde.dim(),
            },
            "friedrichs_equals_krein": b.friedrichs_equals_krein(),
            "inventory": [
                relation_json(&b.s, "S"),
                relation_json(&b.s_star, "S*"),
                relation_json(&b.h, "H"),
                relation_json(&b.k, "K"),
                relation_json(&b.s_f, "S_F"),
                relation_json(&b.s_k, "S_K"),
                relation_json(&b.s0, "S0"),
                relation_json(&b.s0_star, "S0*"),
                relation_json(&b.s_tilde, "S~"),
                relation_json(&b.s_tilde_star, "S~*"),
            ],
            "checks": checks,
            "s0_star_decomposition": decomposition,
            "triplets": triplets,
            "krein_order": krein,
            "extremal_family": extremal,
            "all_checks_pass": all_pass,
        }),
    ))
}

pub fn default_lambda_grid() -> Vec<C64> {
    vec![
        linalg::real(-10.0),
        linalg::real(-1.0),
        linalg::real(-0.1),
        linalg::c(0.0, 1.0),
        linalg::c(1.0, 1.0),
        linalg::real(2.0),
    ]
}

/// `"RE"` or `"RE,IM"`.
pub fn parse_lambda(text: &str) -> Result<C64, CliError> {
    let bad = || CliError::Input(format!("cannot parse spectral parameter `{text}` (expected RE or RE,IM)"));
    let mut it = text.split(',').map(|p| p.trim().parse::<f64>());
    let re = it.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match it.next() {
        Some(v) => v.map_err(|_| bad())?,
        None => 0.0,
    };
    if it.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

/// CSV with columns `re_lambda, im_lambda, m_<i>_<j>_re, m_<i>_<j>_im, ...,
/// status`; rows follow the grid order.
pub fn cmd_weyl(
    spec: &RelationSpecFile,
    kind: TripletKind,
    grid: &[C64],
    cfg: &ToleranceConfig,
) -> Result<String, CliError> {
    let r = spec.relation(cfg)?;
    let b = LiftBundle::new(&r, cfg);
    let t = BoundaryTriplet::of_kind(kind, &b, cfg);
    let g = t.g();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut head = vec!["re_lambda".to_string(), "im_lambda".to_string()];
    for i in 0..g {
        for j in 0..g {
            head.push(format!("m_{i}_{j}_re"));
            head.push(format!("m_{i}_{j}_im"));
        }
    }
    head.push("status".into());
    let csv_err = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(&head).map_err(csv_err)?;
    for (lambda, value) in grid.iter().zip(t.weyl_grid(grid, cfg)) {
        let mut row = vec![lambda.re.to_string(), lambda.im.to_string()];
        match value {
            Ok(v) => {
                for i in 0..g {
                    for j in 0..g {
                        row.push(v.matrix[(i, j)].re.to_string());
                        row.push(v.matrix[(i, j)].im.to_string());
                    }
                }
                row.push("ok".into());
            }
            Err(_) => {
                row.extend(std::iter::repeat_n(String::new(), 2 * g * g));
                row.push("singular".into());
            }
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn cmd_extend(
    spec: &RelationSpecFile,
    theta_spec: &RelationSpecFile,
    kind: TripletKind,
    cfg: &ToleranceConfig,
) -> Result<Value, CliError> {
    let r = spec.relation(cfg)?;
    let b = LiftBundle::new(&r, cfg);
    let t = BoundaryTriplet::of_kind(kind, &b, cfg);
    let theta = theta_spec.relation(cfg)?;
    if theta.n1() != t.g() || theta.n2() != t.g() {
        return Err(CliError::Input(format!(
            "Θ acts in C^{} -> C^{}, but the {} boundary space has dimension {}",
            theta.n1(),
            theta.n2(),
            kind.name(),
            t.g()
        )));
    }
    if !theta.classify(cfg).is_selfadjoint {
        return Err(CliError::Precondition("Θ is not selfadjoint in the boundary space".into()));
    }
    let a = t.extension_from_boundary(&theta, cfg)?;
    let rep = a.classify(cfg);
    let nonneg_ext = rep.is_selfadjoint && rep.is_nonnegative && b.s.is_restriction_of(&a, cfg);
    let (extremal, krein) = if nonneg_ext {
        let order = b.krein_order_check(&a, cfg)?;
        (json!(b.is_extremal(&a, cfg)?), serde_json::to_value(order).expect("serializes"))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(with_header(
        cfg,
        json!({
            "input": spec,
            "theta": theta_spec,
            "triplet": kind.name(),
            "boundary_dim": t.g(),
            "extension": relation_json(&a, "A_Θ"),
            "extends_s": b.s.is_restriction_of(&a, cfg),
            "within_star": a.is_restriction_of(t.star_relation(), cfg),
            "symmetry": symmetry_json(&a, cfg),
            "extremal": extremal,
            "krein_order": krein,
        }),
    ))
}

pub struct SemiboundDemo {
    pub csv: String,
    pub verdict: String,
    pub passed: bool,
}

pub fn cmd_semibound_demo(delta: f64, c_list: &[f64], cfg: &ToleranceConfig) -> Result<SemiboundDemo, CliError> {
    let rep = boundary::alternative_experiment(c_list, delta, cfg)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record([
        "c",
        "lower_bound",
        "closed_form",
        "abs_error",
        "sufficient_x",
        "sufficient_bound_holds",
    ])
    .map_err(csv_err)?;
    for row in &rep.rows {
        w.write_record([
            row.c.to_string(),
            row.lower_bound.to_string(),
            row.closed_form.to_string(),
            row.abs_error.to_string(),
            row.sufficient_x.to_string(),
            row.sufficient_bound_holds.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))?;
    let bound_ok = rep.rows.iter().all(|r| r.sufficient_bound_holds);
    let passed = rep.strictly_decreasing && rep.max_abs_error < 1e-8 && bound_ok;
    let verdict = format!(
        "{}: delta = {}, m(A_Θ) strictly decreasing in c: {}, max |m - closed form| = {:.3e}, \
         bounded-case sufficient bound holds: {} ({})",
        if passed { "PASS" } else { "FAIL" },
        delta,
        rep.strictly_decreasing,
        rep.max_abs_error,
        bound_ok,
        rep.note
    );
    Ok(SemiboundDemo {
        csv: String::from_utf8(bytes).expect("csv output is utf-8"),
        verdict,
        passed,
    })
}

pub struct VerifyReport {
    pub json: Value,
    pub failures: Vec<String>,
}

struct Checks {
    items: Vec<Value>,
    failures: Vec<String>,
}

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: Value) {
        if !passed {
            self.failures.push(format!("{name} ({detail})"));
        }
        self.items.push(json!({ "name": name, "passed": passed, "detail": detail }));
    }
}

pub fn cmd_verify(spec: &RelationSpecFile, cfg: &ToleranceConfig, seed: u64) -> Result<VerifyReport, CliError> {
    let mut checks = Checks {
        items: Vec::new(),
        failures: Vec::new(),
    };
    if spec.orthonormal {
        let raw = spec.raw_basis()?;
        let residual = linalg::orthonormality_residual(&raw);
        checks.push("claimed_basis_orthonormal", residual <= 1e-10, json!(residual));
        if residual > 1e-10 {
            return Ok(VerifyReport {
                json: with_header(cfg, json!({ "input": spec, "seed": seed, "checks": checks.items, "passed": false })),
                failures: checks.failures,
            });
        }
    }
    let r = spec.relation(cfg)?;
    let tol = cfg.angle_tol;

    let adj = r.adjoint();
    let cmp = adj.relate(&oracle::adjoint_definitional(&r), cfg)?;
    checks.push("adjoint_matches_definition", cmp.is_equal(), json!(cmp.max_angle));
    let back = adj.adjoint().relate(&r, cfg)?;
    checks.push("double_adjoint_is_relation", back.is_equal(), json!(back.max_angle));
    let parts = r.parts(cfg);
    let adj_parts = adj.parts(cfg);
    let ker_ok = adj_parts.ker.approx_eq(&parts.ran.complement(), cfg);
    let mul_ok = adj_parts.mul.approx_eq(&parts.dom.complement(), cfg);
    checks.push("adjoint_parts", ker_ok && mul_ok, json!({ "ker": ker_ok, "mul": mul_ok }));

    let rep = r.classify(cfg);
    if rep.square && rep.dom_perp_ran {
        let hull = oracle::numerical_range_hull(&r, 512, seed);
        let radius = hull.iter().map(|z| z.norm()).fold(0.0, f64::max);
        checks.push("numerical_range_zero", radius < tol, json!(radius));
    }
    if rep.square {
        let direct = oracle::is_selfadjoint_direct(&r, tol);
        checks.push("selfadjoint_verdict", direct == rep.is_selfadjoint, json!(direct));
    }

    let b = LiftBundle::new(&r, cfg);
    let lift = b.verify(cfg)?;
    checks.push("lift_closed_forms", lift.all_hold(), serde_json::to_value(&lift).expect("serializes"));

    for kind in [TripletKind::Main, TripletKind::Basic, TripletKind::Tilde] {
        let t = BoundaryTriplet::of_kind(kind, &b, cfg);
        let v = triplet_checks(&t, &b, cfg);
        let sampled = oracle::green_residual_sampled(&t, 64, seed);
        checks.push(&format!("triplet_{}", kind.name()), triplet_ok(&v), v);
        checks.push(&format!("green_sampled_{}", kind.name()), sampled < GREEN_TOL, json!(sampled));
        if t.is_degenerate() {
            continue;
        }
        let mut worst: f64 = 0.0;
        let mut nevanlinna: f64 = 0.0;
        for l in default_lambda_grid() {
            let m = t.weyl(l, cfg)?.matrix;
            worst = worst.max((&m - t.closed_form_weyl(l)?).norm());
            let mc = t.weyl(l.conj(), cfg)?.matrix;
            nevanlinna = nevanlinna.max(linalg::max_abs(&(m.adjoint() - mc)));
        }
        checks.push(&format!("weyl_closed_form_{}", kind.name()), worst < WEYL_TOL, json!(worst));
        checks.push(&format!("weyl_symmetry_{}", kind.name()), nevanlinna < WEYL_TOL, json!(nevanlinna));
    }

    let mut rng = oracle::rng_from_seed(seed);
    let g = b.g.dim();
    if g > 0 {
        let mut thetas: Vec<LinearRelation> =
            (0..8).map(|_| oracle::random_selfadjoint_relation(&mut rng, g, -3.0, 3.0)).collect();
        thetas.push(LinearRelation::zero_operator(g, g));
        thetas.push(LinearRelation::purely_multivalued(g, g));
        thetas.push(oracle::random_non_selfadjoint(&mut rng, g));
        let sweep = oracle::extension_sweep(&b, TripletKind::Main, &thetas, cfg)?;
        let ok = sweep.injective && sweep.all_between && sweep.selfadjointness_preserved;
        checks.push(
            "extension_sweep",
            ok,
            json!({
                "injective": sweep.injective,
                "between_s_and_star": sweep.all_between,
                "selfadjointness_preserved": sweep.selfadjointness_preserved,
            }),
        );
    }

    let tilde = BoundaryTriplet::tilde(&b);
    if tilde.g() > 0 {
        let mut disagreements = 0;
        for _ in 0..10 {
            let theta = oracle::random_selfadjoint_operator(&mut rng, tilde.g(), -3.0, 3.0);
            let x = -rand::Rng::random_range(&mut rng, 0.05..6.0);
            let v = tilde.semibound_criterion(&theta, x, cfg)?;
            if v.lhs != v.rhs {
                disagreements += 1;
            }
        }
        checks.push("semibound_equivalence", disagreements == 0, json!(disagreements));
    }

    let g0 = b.g0.dim();
    let mut krein_ok = true;
    let mut worst_eig = f64::INFINITY;
    for _ in 0..if g0 == 0 { 1 } else { 6 } {
        let theta = oracle::random_selfadjoint_relation(&mut rng, g0, 0.0, 3.0);
        let a = b.nonneg_extension(&theta, cfg)?;
        let order = b.krein_order_check(&a, cfg)?;
        krein_ok &= order.holds;
        worst_eig = worst_eig.min(order.lower_min_eigenvalue.min(order.upper_min_eigenvalue));
    }
    checks.push("krein_order", krein_ok, num(worst_eig));

    let passed = checks.failures.is_empty();
    Ok(VerifyReport {
        json: with_header(
            cfg,
            json!({ "input": spec, "seed": seed, "checks": checks.items, "passed": passed }),
        ),
        failures: checks.failures,
    })
}
