//! The lift S of a relation R and its distinguished selfadjoint extensions.

use linrel::extension::LiftBundle;
use linrel::linalg::real;
use linrel::{CMat, LinearRelation, ToleranceConfig};

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    let r = LinearRelation::from_operator(&CMat::from_row_slice(1, 2, &[real(1.0), real(-2.0)]));
    let b = LiftBundle::new(&r, &cfg);
    println!("R: C^{} -> C^{}", b.n1(), b.n2());
    println!("dim S = {}, dim S* = {}", b.s.dim(), b.s_star.dim());
    println!("dim G = {}, dim G0 = {}, dim G~ = {}", b.g.dim(), b.g0.dim(), b.g_tilde.dim());
    for (name, a) in [("H", &b.h), ("K", &b.k), ("S_F", &b.s_f), ("S_K", &b.s_k)] {
        let rep = a.classify(&cfg);
        println!("{name:>3}: selfadjoint {}, lower bound {:?}", rep.is_selfadjoint, rep.lower_bound);
    }
    let checks = b.verify(&cfg)?;
    println!("all structural checks hold: {} (max angle {:.2e})", checks.all_hold(), checks.max_angle);
    println!("S_F = S_K: {}", b.friedrichs_equals_krein());
    Ok(())
}
