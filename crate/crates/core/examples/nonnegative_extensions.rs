//! Nonnegative extensions A_Θ, extremality and the Kreĭn inequality.

use linrel::extension::LiftBundle;
use linrel::oracle::{self, rng_from_seed};
use linrel::{Subspace, ToleranceConfig};

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    let mut rng = rng_from_seed(3);
    let r = oracle::random_relation_dims(&mut rng, 2, 3);
    let b = LiftBundle::new(&r, &cfg);
    let g0 = b.g0.dim();
    println!("dim G0 = {g0}");

    let theta = oracle::random_selfadjoint_relation(&mut rng, g0, 0.0, 2.0);
    let a = b.nonneg_extension(&theta, &cfg)?;
    let order = b.krein_order_check(&a, &cfg)?;
    println!(
        "A_Θ nonnegative: {}, Kreĭn order holds: {} (eigenvalue floors {:.2e}, {:.2e})",
        a.classify(&cfg).is_nonnegative,
        order.holds,
        order.lower_min_eigenvalue,
        order.upper_min_eigenvalue
    );
    println!("A_Θ extremal: {}", b.is_extremal(&a, &cfg)?);

    for l in [Subspace::zero(g0), Subspace::full(g0), oracle::random_subspace(&mut rng, g0, g0 / 2)] {
        let e = b.extremal_family(&l, &cfg)?;
        println!("L of dim {}: extremal {}", l.dim(), b.is_extremal(&e, &cfg)?);
    }
    Ok(())
}
