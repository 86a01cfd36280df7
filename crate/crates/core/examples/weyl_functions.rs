//! Weyl functions of the three triplets on a small grid, generic versus
//! closed form.

use linrel::boundary::{BoundaryTriplet, TripletKind};
use linrel::extension::LiftBundle;
use linrel::linalg::{c, real};
use linrel::{CMat, LinearRelation, ToleranceConfig};

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    let r = LinearRelation::from_operator(&CMat::from_row_slice(1, 2, &[real(1.0), real(-2.0)]));
    let b = LiftBundle::new(&r, &cfg);
    let grid = [real(-10.0), real(-1.0), c(0.0, 1.0), c(1.0, 1.0)];
    for kind in [TripletKind::Main, TripletKind::Basic, TripletKind::Tilde] {
        let t = BoundaryTriplet::of_kind(kind, &b, &cfg);
        if t.is_degenerate() {
            println!("{}: degenerate boundary space", kind.name());
            continue;
        }
        for (lambda, value) in grid.iter().zip(t.weyl_grid(&grid, &cfg)) {
            let m = value?.matrix;
            let gap = (&m - t.closed_form_weyl(*lambda)?).norm();
            println!("{:>5} λ = {:>8.3}: trace M = {:>22.5}, |generic - closed| = {:.1e}", kind.name(), lambda, m.trace(), gap);
        }
    }
    Ok(())
}
