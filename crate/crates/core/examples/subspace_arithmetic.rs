//! Joins, meets, complements and principal-angle comparisons in C^4.

use linrel::linalg::{c, real};
use linrel::{CVec, Subspace, ToleranceConfig};

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    let a = Subspace::coordinate(4, &[0, 1])?;
    let v = CVec::from_vec(vec![real(0.0), c(1.0, 1.0), real(1.0), real(0.0)]);
    let b = Subspace::span(4, &[v], &cfg)?.join(&Subspace::coordinate(4, &[3])?, &cfg)?;

    let join = a.join(&b, &cfg)?;
    let meet = a.meet(&b, &cfg)?;
    println!("dim a = {}, dim b = {}", a.dim(), b.dim());
    println!("dim (a + b) = {}, dim (a ∩ b) = {}", join.dim(), meet.dim());
    println!("gap(a, b) = {:.6}", a.gap_to(&b)?);
    println!("a ∩ b ⊂ a: {}", meet.is_subspace_of(&a, &cfg));
    println!("(a + b)⊥ = a⊥ ∩ b⊥: {}", join.complement().approx_eq(&a.complement().meet(&b.complement(), &cfg)?, &cfg));
    println!("{:?}", a.relate(&join, &cfg)?);
    Ok(())
}
