//! The main, basic and tilde boundary triplets: Green identity, kernels and
//! the parametrization Θ ↦ A_Θ.

use linrel::boundary::{BoundaryTriplet, TripletKind};
use linrel::extension::LiftBundle;
use linrel::oracle::{self, rng_from_seed};
use linrel::{LinearRelation, ToleranceConfig};

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    let mut rng = rng_from_seed(5);
    let r = oracle::random_relation_dims(&mut rng, 2, 2);
    let b = LiftBundle::new(&r, &cfg);
    for kind in [TripletKind::Main, TripletKind::Basic, TripletKind::Tilde] {
        let t = BoundaryTriplet::of_kind(kind, &b, &cfg);
        let (k0, k1) = t.designated_kernels(&b);
        println!(
            "{:>5}: g = {}, Green residual {:.2e}, surjective {}, kernels as designated {} {}",
            kind.name(),
            t.g(),
            t.green_residual(),
            t.is_surjective(&cfg),
            t.kernel0(&cfg).approx_eq(&k0, &cfg),
            t.kernel1(&cfg).approx_eq(&k1, &cfg)
        );
    }
    let t = BoundaryTriplet::main(&b, &cfg);
    let g = t.g();
    let h = t.extension_from_boundary(&LinearRelation::purely_multivalued(g, g), &cfg)?;
    let k = t.extension_from_boundary(&LinearRelation::zero_operator(g, g), &cfg)?;
    println!("Θ = {{0}} x G gives H: {}", h.approx_eq(&b.h, &cfg));
    println!("Θ = 0 gives K: {}", k.approx_eq(&b.k, &cfg));
    let theta = oracle::random_selfadjoint_relation(&mut rng, g, -1.0, 1.0);
    let a = t.extension_from_boundary(&theta, &cfg)?;
    println!("parameter recovered from A_Θ: {}", t.parameter_of(&a, &cfg)?.approx_eq(&theta, &cfg));
    Ok(())
}
