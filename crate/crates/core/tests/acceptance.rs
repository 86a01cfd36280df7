//! Acceptance suite: nine criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! terminal; the process exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use linrel::blockcalc::{self, Block2x2};
use linrel::boundary::{self, BoundaryTriplet, TripletKind};
use linrel::extension::LiftBundle;
use linrel::linalg::{self, c, real};
use linrel::oracle::{self, rng_from_seed};
use linrel::{CMat, LinearRelation, Subspace, ToleranceConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn dims(rng: &mut ChaCha8Rng, max: usize) -> (usize, usize) {
    (rng.random_range(1..=max), rng.random_range(1..=max))
}

fn sub_relation(rng: &mut ChaCha8Rng, r: &LinearRelation) -> LinearRelation {
    let d = r.dim();
    let k = if d == 0 { 0 } else { rng.random_range(0..=d) };
    let coeffs = oracle::random_cmat(rng, d, k);
    LinearRelation::from_graph_basis(&(r.graph().basis() * coeffs), r.n1(), r.n2(), &cfg()).unwrap()
}

fn unit(rng: &mut ChaCha8Rng, n: usize) -> linrel::CVec {
    oracle::random_cvec(rng, n).normalize()
}

fn lambda_grid() -> Vec<linrel::C64> {
    vec![real(-10.0), real(-1.0), real(-0.1), c(0.0, 1.0), c(1.0, 1.0), real(2.0)]
}

fn relation_with_g0(rng: &mut ChaCha8Rng, g0: usize, max: usize) -> (LinearRelation, LiftBundle) {
    loop {
        let (n1, n2) = dims(rng, max);
        if n1 + n2 < g0 {
            continue;
        }
        let r = oracle::random_relation_dims(rng, n1, n2);
        let b = LiftBundle::new(&r, &cfg());
        if b.g0.dim() == g0 {
            return (r, b);
        }
    }
}

fn ac1() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac01);
    let start = Instant::now();
    let (mut worst, mut bad) = (0.0f64, 0);
    for i in 0..1000 {
        let (n1, n2) = dims(&mut rng, 6);
        let r = match i % 10 {
            0 => oracle::random_relation_shaped(&mut rng, n1, n2, 0, 0, 0),
            1 => oracle::random_relation_shaped(&mut rng, n1, n2, n1 + n2, 0, 0),
            _ => oracle::random_relation_dims(&mut rng, n1, n2),
        };
        let cmp = r.adjoint().relate(&oracle::adjoint_definitional(&r), &cfg).unwrap();
        worst = worst.max(cmp.max_angle);
        if !(cmp.is_equal() && cmp.max_angle < 1e-8) {
            bad += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: bad == 0 && secs < 10.0,
        detail: format!("1000 relations, {bad} mismatches, max angle {worst:.2e}, {secs:.2}s (limit 10s)"),
    }
}

fn ac2() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac02);
    let mut failures: Vec<&str> = Vec::new();
    let mut note = |ok: bool, what: &'static str| {
        if !ok {
            failures.push(what);
        }
    };
    for _ in 0..500 {
        let (h1, h2) = dims(&mut rng, 3);
        let e11 = oracle::random_relation_dims(&mut rng, h1, h1);
        let e12 = oracle::random_relation_dims(&mut rng, h2, h1);
        let e21 = oracle::random_relation_dims(&mut rng, h1, h2);
        let e22 = oracle::random_relation_dims(&mut rng, h2, h2);
        let b = Block2x2::new(e11.clone(), e12.clone(), e21.clone(), e22.clone()).unwrap();
        note(blockcalc::check_row_col_duality(&b, &cfg).unwrap(), "row/column duality");

        let col = blockcalc::column(&e11, &e21, &cfg).unwrap();
        let (p11, p12, p21, p22) = (e11.parts(&cfg), e12.parts(&cfg), e21.parts(&cfg), e22.parts(&cfg));
        let pc = col.parts(&cfg);
        note(pc.dom.approx_eq(&p11.dom.meet(&p21.dom, &cfg).unwrap(), &cfg), "dom col");
        note(pc.ker.approx_eq(&p11.ker.meet(&p21.ker, &cfg).unwrap(), &cfg), "ker col");
        note(pc.mul.approx_eq(&Subspace::direct_sum(&p11.mul, &p21.mul), &cfg), "mul col");

        let row = blockcalc::row(&e11, &e12, &cfg).unwrap();
        let pr = row.parts(&cfg);
        note(pr.dom.approx_eq(&Subspace::direct_sum(&p11.dom, &p12.dom), &cfg), "dom row");
        note(pr.ran.approx_eq(&p11.ran.join(&p12.ran, &cfg).unwrap(), &cfg), "ran row");
        note(pr.mul.approx_eq(&p11.mul.join(&p12.mul, &cfg).unwrap(), &cfg), "mul row");

        let e = b.relation(&cfg).unwrap();
        let pe = e.parts(&cfg);
        let dom_e = Subspace::direct_sum(
            &p11.dom.meet(&p21.dom, &cfg).unwrap(),
            &p12.dom.meet(&p22.dom, &cfg).unwrap(),
        );
        let mul_e = Subspace::direct_sum(
            &p11.mul.join(&p12.mul, &cfg).unwrap(),
            &p21.mul.join(&p22.mul, &cfg).unwrap(),
        );
        note(pe.dom.approx_eq(&dom_e, &cfg), "dom block");
        note(pe.mul.approx_eq(&mul_e, &cfg), "mul block");

        let small = Block2x2::new(
            sub_relation(&mut rng, &e11),
            sub_relation(&mut rng, &e12),
            sub_relation(&mut rng, &e21),
            sub_relation(&mut rng, &e22),
        )
        .unwrap();
        let mono = small.relation(&cfg).unwrap().relate(&e, &cfg).unwrap();
        note(mono.is_contained(), "block monotonicity");

        note(blockcalc::check_adjoint_inclusion(&b, &cfg).unwrap().holds(), "adjoint inclusion");
        note(blockcalc::check_row_adjoint(&e11, &e12, &cfg).unwrap().is_equal(), "row adjoint");
        note(
            blockcalc::check_column_adjoint(&e11, &e21, &cfg).unwrap().is_contained(),
            "column adjoint inclusion",
        );
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("500 blocks, {} failed checks {:?}", failures.len(), dedup(&failures)),
    }
}

fn dedup(v: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    out.sort();
    out.dedup();
    out
}

fn ac3() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac03);
    let mut failures: Vec<&str> = Vec::new();
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let (n1, n2) = dims(&mut rng, 4);
        let r = oracle::random_relation_dims(&mut rng, n1, n2);
        let b = LiftBundle::new(&r, &cfg);
        let checks = b.verify(&cfg).unwrap();
        worst = worst.max(checks.max_angle);
        let named = [
            (checks.s_star_matches_adjoint, "S*"),
            (checks.friedrichs_matches_generic, "S_F"),
            (checks.krein_matches_generic, "S_K"),
            (checks.s0_star_matches_adjoint, "S0*"),
            (checks.s0_star_is_sum, "S0* = S_F + S_K"),
            (checks.transversal, "S* = H + K"),
            (checks.s_tilde_star_matches_adjoint, "S~*"),
            (checks.s0_is_intersection, "S0 = S_F ∩ S_K"),
        ];
        for (ok, what) in named {
            if !ok {
                failures.push(what);
            }
        }
        let oracle_pairs = [
            (&b.s_star, &b.s, "S* oracle"),
            (&b.s0_star, &b.s0, "S0* oracle"),
            (&b.s_tilde_star, &b.s_tilde, "S~* oracle"),
        ];
        for (star, base, what) in oracle_pairs {
            if !oracle::same_graph(star, &oracle::adjoint_definitional(base), 1e-8) {
                failures.push(what);
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("300 relations, {} failed checks {:?}, max angle {worst:.2e}", failures.len(), dedup(&failures)),
    }
}

fn ac4() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac04);
    let mut failures: Vec<String> = Vec::new();
    let mut worst_green = 0.0f64;
    for i in 0..200 {
        let (n1, n2) = dims(&mut rng, 4);
        let r = oracle::random_relation_dims(&mut rng, n1, n2);
        let b = LiftBundle::new(&r, &cfg);
        for kind in [TripletKind::Main, TripletKind::Basic, TripletKind::Tilde] {
            let t = BoundaryTriplet::of_kind(kind, &b, &cfg);
            let green = t.green_residual().max(oracle::green_residual_sampled(&t, 20, i));
            worst_green = worst_green.max(green);
            let (k0, k1) = t.designated_kernels(&b);
            let ok = green < 1e-10
                && t.boundary_rank(&cfg) == 2 * t.g()
                && t.kernel0(&cfg).approx_eq(&k0, &cfg)
                && t.kernel1(&cfg).approx_eq(&k1, &cfg);
            if !ok {
                failures.push(kind.name().to_string());
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "200 relations x 3 triplets, {} failures, max Green residual {worst_green:.2e}",
            failures.len()
        ),
    }
}

fn ac5() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac05);
    let (mut weyl_gap, mut weak, mut basic_gap) = (0.0f64, 0.0f64, 0.0f64);
    let mut errors = 0;
    for _ in 0..100 {
        let (n1, n2) = dims(&mut rng, 4);
        let r = oracle::random_relation_dims(&mut rng, n1, n2);
        let b = LiftBundle::new(&r, &cfg);
        for kind in [TripletKind::Main, TripletKind::Basic, TripletKind::Tilde] {
            let t = BoundaryTriplet::of_kind(kind, &b, &cfg);
            if t.is_degenerate() {
                continue;
            }
            for l in lambda_grid() {
                let Ok(m) = t.weyl(l, &cfg) else {
                    errors += 1;
                    continue;
                };
                weyl_gap = weyl_gap.max((&m.matrix - t.closed_form_weyl(l).unwrap()).norm());
                match kind {
                    TripletKind::Basic => {
                        let id = CMat::identity(t.g(), t.g()) * l;
                        basic_gap = basic_gap.max(linalg::max_abs(&(&m.matrix - id)));
                    }
                    TripletKind::Main => {
                        let u = unit(&mut rng, t.g());
                        let h = t.boundary_space().basis() * &u;
                        let lhs = u.dotc(&(&m.matrix * &u));
                        let rhs = -l.inv() * h.rows(0, n1).norm_squared() + l * h.rows(n1, n2).norm_squared();
                        weak = weak.max((lhs - rhs).norm());
                    }
                    _ => {}
                }
            }
        }
    }
    // Weak divergence of the tilde Weyl function on unit vectors of 𝒢̃,
    // over relations whose operator part of R* has norm at most 10.
    let xs: Vec<f64> = (1..=6).map(|k| -(10f64.powi(k))).collect();
    let mut divergence_ok = true;
    let mut worst_end = f64::NEG_INFINITY;
    let mut families = 0;
    while families < 40 {
        let (n1, n2) = dims(&mut rng, 4);
        let r = oracle::random_relation_dims(&mut rng, n1, n2);
        let b = LiftBundle::new(&r, &cfg);
        if b.g_tilde.dim() == 0 || b.r_star.operator_part_norm(&cfg) > 10.0 {
            continue;
        }
        families += 1;
        let t = BoundaryTriplet::tilde(&b);
        let values: Vec<CMat> = xs.iter().map(|&x| t.weyl(real(x), &cfg).unwrap().matrix).collect();
        for _ in 0..5 {
            let u = unit(&mut rng, t.g());
            let q: Vec<f64> = values.iter().map(|m| u.dotc(&(m * &u)).re).collect();
            let end = *q.last().unwrap();
            worst_end = worst_end.max(end);
            if !(q.windows(2).all(|w| w[1] < w[0]) && end < -1e3) {
                divergence_ok = false;
            }
        }
    }
    let pass = errors == 0 && weyl_gap < 1e-9 && weak < 1e-10 && basic_gap < 1e-12 && divergence_ok;
    Outcome {
        pass,
        detail: format!(
            "generic vs closed form {weyl_gap:.2e}, weak identity {weak:.2e}, M0 - λI {basic_gap:.2e}, \
             singular evaluations {errors}, tilde divergence monotone: {divergence_ok} (largest value at -1e6: {worst_end:.3e})"
        ),
    }
}

fn extremal_verdicts(b: &LiftBundle, a: &LinearRelation, cfg: &ToleranceConfig) -> [bool; 3] {
    let basic = BoundaryTriplet::basic(b);
    let theta = basic.parameter_of(a, cfg).unwrap();
    let dom = theta.dom(cfg);
    let product_form = theta.approx_eq(&LinearRelation::product(&dom, &dom.complement()), cfg);
    let radius = oracle::numerical_range_hull(a, 256, 7)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    [b.is_extremal(a, cfg).unwrap(), radius < 1e-8, product_form]
}

fn subspaces_for_sweep(rng: &mut ChaCha8Rng, g0: usize) -> Vec<Subspace> {
    let cfg = cfg();
    let mut out = vec![Subspace::zero(g0), Subspace::full(g0)];
    match g0 {
        1 => {}
        2 => {
            for t in [0.0, PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0] {
                for phi in [0.0, PI / 2.0, PI, 3.0 * PI / 2.0] {
                    let v = linrel::CVec::from_vec(vec![real(t.cos()), c(phi.cos(), phi.sin()) * t.sin()]);
                    out.push(Subspace::span(2, &[v], &cfg).unwrap());
                }
            }
        }
        _ => {
            out.clear();
            for _ in 0..50 {
                let d = rng.random_range(0..=g0);
                out.push(oracle::random_subspace(rng, g0, d));
            }
        }
    }
    out
}

fn ac6() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac06);
    let mut failures: Vec<&str> = Vec::new();
    for _ in 0..50 {
        let (n1, n2) = dims(&mut rng, 4);
        let r = oracle::random_relation_dims(&mut rng, n1, n2);
        let b = LiftBundle::new(&r, &cfg);
        let t = BoundaryTriplet::main(&b, &cfg);
        let g = t.g();
        if !t.extension_from_boundary(&LinearRelation::purely_multivalued(g, g), &cfg).unwrap().approx_eq(&b.h, &cfg) {
            failures.push("Θ = {0} x G gives H");
        }
        if !t.extension_from_boundary(&LinearRelation::zero_operator(g, g), &cfg).unwrap().approx_eq(&b.k, &cfg) {
            failures.push("Θ = 0 gives K");
        }
    }
    for _ in 0..50 {
        let g0 = rng.random_range(1..=3);
        let (_, b) = relation_with_g0(&mut rng, g0, 4);
        let theta = oracle::random_selfadjoint_relation(&mut rng, g0, -2.0, 2.0);
        let op = BoundaryTriplet::basic_op(&b, &cfg);
        let block = boundary::s_theta_block(&b, &theta, &cfg).unwrap();
        if !op.extension_from_boundary(&theta, &cfg).unwrap().approx_eq(&block, &cfg) {
            failures.push("block formula in H0");
        }
        let full = BoundaryTriplet::basic(&b).extension_from_boundary(&theta, &cfg).unwrap();
        if !full.approx_eq(&b.nonneg_extension(&theta, &cfg).unwrap(), &cfg) {
            failures.push("block formula in H");
        }
    }
    let mut swept = 0;
    for (g0, relations) in [(1, 5), (2, 5), (3, 1)] {
        for _ in 0..relations {
            let (_, b) = relation_with_g0(&mut rng, g0, 4);
            for l in subspaces_for_sweep(&mut rng, g0) {
                let a = b.extremal_family(&l, &cfg).unwrap();
                swept += 1;
                if extremal_verdicts(&b, &a, &cfg) != [true; 3] {
                    failures.push("extremal family");
                }
            }
            for _ in 0..5 {
                // Nonnegative parameters with a strictly positive operator part.
                let l_dim = rng.random_range(1..=g0);
                let l = oracle::random_subspace(&mut rng, g0, l_dim);
                let h = oracle::random_hermitian(&mut rng, l_dim, 0.5, 3.0);
                let lb = l.basis();
                let perp = l.complement();
                let theta_basis = linalg::hstack(&[
                    &linalg::vstack(&[lb, &(lb * h)]),
                    &linalg::vstack(&[&CMat::zeros(g0, perp.dim()), perp.basis()]),
                ]);
                let theta = LinearRelation::from_graph_basis(&theta_basis, g0, g0, &cfg).unwrap();
                let a = b.nonneg_extension(&theta, &cfg).unwrap();
                swept += 1;
                if extremal_verdicts(&b, &a, &cfg) != [false; 3] {
                    failures.push("non-extremal parameter");
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "H/K recovery and block formula on 100 relations, {swept} extremality cases, {} failures {:?}",
            failures.len(),
            dedup(&failures)
        ),
    }
}

fn ac7() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac07);
    let (mut worst_eig, mut worst_defect) = (f64::INFINITY, 0.0f64);
    for _ in 0..100 {
        let g0 = rng.random_range(1..=3);
        let (_, b) = relation_with_g0(&mut rng, g0, 4);
        let theta = oracle::random_selfadjoint_relation(&mut rng, g0, 0.0, 3.0);
        let a = b.nonneg_extension(&theta, &cfg).unwrap();
        let order = b.krein_order_check(&a, &cfg).unwrap();
        worst_eig = worst_eig.min(order.lower_min_eigenvalue).min(order.upper_min_eigenvalue);
        worst_defect = worst_defect.max(order.hermitian_defect);
    }
    Outcome {
        pass: worst_eig >= -1e-10 && worst_defect < 1e-10,
        detail: format!("100 parameters, min eigenvalue {worst_eig:.2e}, Hermitian defect {worst_defect:.2e}"),
    }
}

fn ac8() -> Outcome {
    let cfg = cfg();
    let start = Instant::now();
    let spots = [
        (0.0, 1.0, Some(-1.0)),
        (1.0, 1.0, Some(-1.0 - 2f64.sqrt())),
        (2.0, 1.0, Some((-5.0 - 41f64.sqrt()) / 2.0)),
        (10.0, 0.1, None),
    ];
    let mut worst = 0.0f64;
    let mut ok = true;
    for (cv, delta, spot) in spots {
        let rep = boundary::alternative_experiment(&[cv], delta, &cfg).unwrap();
        let row = &rep.rows[0];
        worst = worst.max(row.abs_error);
        ok &= row.abs_error < 1e-8 && row.sufficient_bound_holds;
        match spot {
            Some(v) => ok &= (row.lower_bound - v).abs() < 1e-8,
            None => ok &= row.lower_bound < -10.0,
        }
    }
    let family = boundary::alternative_experiment(&[1.0, 2.0, 4.0, 8.0, 16.0, 32.0], 1.0, &cfg).unwrap();
    ok &= family.strictly_decreasing && family.max_abs_error < 1e-8;
    ok &= family.rows.iter().all(|r| r.sufficient_bound_holds);
    let last = family.rows.last().unwrap().lower_bound;
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: ok && secs < 5.0,
        detail: format!(
            "spot values max |Δ| {worst:.2e}, c in 1..32 strictly decreasing: {} (m at c=32: {last:.3e}), {secs:.2}s (limit 5s)",
            family.strictly_decreasing
        ),
    }
}

fn ac9() -> Outcome {
    let cfg = cfg();
    let mut rng = rng_from_seed(0xac09);
    let (mut done, mut disagree, mut both_true) = (0, 0, 0);
    while done < 200 {
        let (n1, n2) = dims(&mut rng, 3);
        let r = oracle::random_relation_dims(&mut rng, n1, n2);
        let b = LiftBundle::new(&r, &cfg);
        let t = BoundaryTriplet::tilde(&b);
        if t.g() == 0 {
            continue;
        }
        let theta = oracle::random_selfadjoint_operator(&mut rng, t.g(), -3.0, 3.0);
        let x = -rng.random_range(0.05..6.0);
        let v = t.semibound_criterion(&theta, x, &cfg).unwrap();
        done += 1;
        if v.lhs != v.rhs {
            disagree += 1;
        }
        if v.lhs {
            both_true += 1;
        }
    }
    Outcome {
        pass: disagree == 0,
        detail: format!("200 instances, {disagree} disagreements ({both_true} with x ≤ A_Θ, {} without)", 200 - both_true),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("adjoint oracle equivalence", ac1),
        ("column/row/block calculus", ac2),
        ("closed forms vs definitions", ac3),
        ("boundary triplets", ac4),
        ("Weyl functions", ac5),
        ("extension parametrization", ac6),
        ("Krein inequality", ac7),
        ("semiboundedness alternative demo", ac8),
        ("semibound criterion equivalence", ac9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failed += 1;
        }
        println!(
            "AC{} {verdict} {name}: {} [{:.2}s]",
            i + 1,
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
