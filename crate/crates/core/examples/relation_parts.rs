//! Domain, range, kernel and multivalued part of a relation and its adjoint.

use linrel::linalg::real;
use linrel::{CMat, LinearRelation, ToleranceConfig};

fn main() -> linrel::Result<()> {
    let cfg = ToleranceConfig::default();
    // {(Cx, Dx)}: the first coordinate of C^2 maps to itself, the second
    // direction carries a multivalued part.
    let cm = CMat::from_row_slice(2, 2, &[real(1.0), real(0.0), real(0.0), real(0.0)]);
    let dm = CMat::from_row_slice(2, 2, &[real(2.0), real(0.0), real(0.0), real(1.0)]);
    let r = LinearRelation::from_kernel_pair(&cm, &dm, &cfg)?;
    let star = r.adjoint();
    for (name, rel) in [("R", &r), ("R*", &star)] {
        let p = rel.parts(&cfg);
        println!(
            "{name}: dim graph {}, dom {}, ran {}, ker {}, mul {}",
            rel.dim(),
            p.dom.dim(),
            p.ran.dim(),
            p.ker.dim(),
            p.mul.dim()
        );
    }
    let op = r.operator_part(&cfg);
    println!("operator part of R: graph dim {}, norm {:.4}", op.dim(), r.operator_part_norm(&cfg));
    let report = r.classify(&cfg);
    println!("selfadjoint {}, nonnegative {}, lower bound {:?}", report.is_selfadjoint, report.is_nonnegative, report.lower_bound);
    Ok(())
}
