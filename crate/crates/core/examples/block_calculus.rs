//! Columns, rows and 2x2 blocks of relations, and the formal adjoint.

use linrel::blockcalc::{self, Block2x2};
use linrel::oracle::{self, rng_from_seed};
use linrel::ToleranceConfig;

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    let mut rng = rng_from_seed(11);
    let e11 = oracle::random_relation_dims(&mut rng, 2, 2);
    let e12 = oracle::random_relation_dims(&mut rng, 1, 2);
    let e21 = oracle::random_relation_dims(&mut rng, 2, 1);
    let e22 = oracle::random_relation_dims(&mut rng, 1, 1);

    let col = blockcalc::column(&e11, &e21, &cfg)?;
    let row = blockcalc::row(&e11, &e12, &cfg)?;
    println!("column: C^{} -> C^{}, graph dim {}", col.n1(), col.n2(), col.dim());
    println!("row:    C^{} -> C^{}, graph dim {}", row.n1(), row.n2(), row.dim());

    let block = Block2x2::new(e11, e12, e21, e22)?;
    let e = block.relation(&cfg)?;
    println!("block:  C^{} -> C^{}, graph dim {}", e.n1(), e.n2(), e.dim());
    println!("column of rows = row of columns: {}", blockcalc::check_row_col_duality(&block, &cfg)?);
    let inc = blockcalc::check_adjoint_inclusion(&block, &cfg)?;
    println!("formal adjoint ⊂ adjoint: {} (max angle {:.2e})", inc.holds(), inc.max_angle);
    Ok(())
}
