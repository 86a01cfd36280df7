//! Columns, rows and 2x2 blocks of linear relations.

use serde::Serialize;

use crate::error::{dim_mismatch, Result};
use crate::linalg::{self, CMat};
use crate::relation::LinearRelation;
use crate::subspace::{Comparison, Inclusion, Subspace};
use crate::tolerance::ToleranceConfig;

/// Entries `E_ij: H_j -> H_i` of a block relation in `H1 ⊕ H2`.
#[derive(Debug, Clone)]
pub struct Block2x2 {
    pub e11: LinearRelation,
    pub e12: LinearRelation,
    pub e21: LinearRelation,
    pub e22: LinearRelation,
}

/// Outcome of comparing the block of adjoints with the adjoint of the block.
#[derive(Debug, Clone, Serialize)]
pub struct AdjointInclusion {
    /// `Subset` or `Equal` when the inclusion holds; anything else is a violation.
    pub verdict: Inclusion,
    pub max_angle: f64,
}

impl AdjointInclusion {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Inclusion::Equal | Inclusion::Subset)
    }
}

/// Column `col(A; B) = {(h, (k1, k2)) : (h, k1) ∈ A, (h, k2) ∈ B}`.
pub fn column(a: &LinearRelation, b: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
    if a.n1() != b.n1() {
        return Err(dim_mismatch(format!(
            "column of relations with domain spaces C^{} and C^{}",
            a.n1(),
            b.n1()
        )));
    }
    let (fa, ga) = (a.top(), a.bottom());
    let (fb, gb) = (b.top(), b.bottom());
    // Coefficient pairs (x, y) with F_A x = F_B y.
    let constraint = linalg::hstack(&[&fa, &(-&fb)]);
    let null = linalg::null_space(&constraint, cfg.rank_tol);
    let nx = linalg::row_block(&null, 0, fa.ncols());
    let ny = linalg::row_block(&null, fa.ncols(), fb.ncols());
    let h = (&fa * &nx + &fb * &ny) * linalg::real(0.5);
    let stacked = linalg::vstack(&[&h, &(&ga * &nx), &(&gb * &ny)]);
    LinearRelation::from_graph(
        Subspace::from_internal(&stacked, cfg),
        a.n1(),
        a.n2() + b.n2(),
    )
}

/// Row `(C; D) = {((h1, h2), k1 + k2) : (h1, k1) ∈ C, (h2, k2) ∈ D}`.
pub fn row(c: &LinearRelation, d: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
    if c.n2() != d.n2() {
        return Err(dim_mismatch(format!(
            "row of relations with range spaces C^{} and C^{}",
            c.n2(),
            d.n2()
        )));
    }
    let top = linalg::block_diag(&[&c.top(), &d.top()]);
    let bottom = linalg::hstack(&[&c.bottom(), &d.bottom()]);
    let stacked = linalg::vstack(&[&top, &bottom]);
    LinearRelation::from_graph(
        Subspace::from_internal(&stacked, cfg),
        c.n1() + d.n1(),
        c.n2(),
    )
}

/// Cartesian product `(M1 ⊕ M2) × (N1 ⊕ N2)` built directly from the four
/// subspaces, without going through the block calculus.
pub fn singular_block(m1: &Subspace, m2: &Subspace, n1: &Subspace, n2: &Subspace) -> Result<LinearRelation> {
    if m1.ambient_dim() != n1.ambient_dim() || m2.ambient_dim() != n2.ambient_dim() {
        return Err(dim_mismatch("singular block: M_i and N_i must share H_i"));
    }
    Ok(LinearRelation::product(
        &Subspace::direct_sum(m1, m2),
        &Subspace::direct_sum(n1, n2),
    ))
}

impl Block2x2 {
    pub fn new(
        e11: LinearRelation,
        e12: LinearRelation,
        e21: LinearRelation,
        e22: LinearRelation,
    ) -> Result<Self> {
        let h1 = e11.n1();
        let h2 = e22.n1();
        let shapes = [
            ("E11", &e11, (h1, h1)),
            ("E12", &e12, (h2, h1)),
            ("E21", &e21, (h1, h2)),
            ("E22", &e22, (h2, h2)),
        ];
        for (name, e, (from, to)) in shapes {
            if e.n1() != from || e.n2() != to {
                return Err(dim_mismatch(format!(
                    "{name} maps C^{} -> C^{}, expected C^{from} -> C^{to}",
                    e.n1(),
                    e.n2()
                )));
            }
        }
        Ok(Self { e11, e12, e21, e22 })
    }

    /// Block of four everywhere defined operators given as matrices.
    pub fn from_operators(a11: &CMat, a12: &CMat, a21: &CMat, a22: &CMat) -> Result<Self> {
        Self::new(
            LinearRelation::from_operator(a11),
            LinearRelation::from_operator(a12),
            LinearRelation::from_operator(a21),
            LinearRelation::from_operator(a22),
        )
    }

    pub fn h1(&self) -> usize {
        self.e11.n1()
    }

    pub fn h2(&self) -> usize {
        self.e22.n1()
    }

    /// The block relation: the row of the two columns.
    pub fn relation(&self, cfg: &ToleranceConfig) -> Result<LinearRelation> {
        let left = column(&self.e11, &self.e21, cfg)?;
        let right = column(&self.e12, &self.e22, cfg)?;
        row(&left, &right, cfg)
    }

    /// The column of the two rows.
    pub fn relation_via_rows(&self, cfg: &ToleranceConfig) -> Result<LinearRelation> {
        let upper = row(&self.e11, &self.e12, cfg)?;
        let lower = row(&self.e21, &self.e22, cfg)?;
        column(&upper, &lower, cfg)
    }

    /// Formal adjoint `[[E11*, E21*], [E12*, E22*]]`.
    pub fn formal_adjoint(&self) -> Self {
        Self {
            e11: self.e11.adjoint(),
            e12: self.e21.adjoint(),
            e21: self.e12.adjoint(),
            e22: self.e22.adjoint(),
        }
    }

    /// Entrywise inclusion `[E_ij] ⊂ [F_ij]`.
    pub fn is_entrywise_subset_of(&self, other: &Self, cfg: &ToleranceConfig) -> bool {
        self.e11.is_restriction_of(&other.e11, cfg)
            && self.e12.is_restriction_of(&other.e12, cfg)
            && self.e21.is_restriction_of(&other.e21, cfg)
            && self.e22.is_restriction_of(&other.e22, cfg)
    }
}

/// Whether the row of columns equals the column of rows.
pub fn check_row_col_duality(b: &Block2x2, cfg: &ToleranceConfig) -> Result<bool> {
    let by_columns = b.relation(cfg)?;
    let by_rows = b.relation_via_rows(cfg)?;
    Ok(by_columns.approx_eq(&by_rows, cfg))
}

/// Compare the block relation of `[E_ij]*` with `E*`; the former is always
/// contained in the latter.
pub fn check_adjoint_inclusion(b: &Block2x2, cfg: &ToleranceConfig) -> Result<AdjointInclusion> {
    let of_adjoints = b.formal_adjoint().relation(cfg)?;
    let adjoint = b.relation(cfg)?.adjoint();
    let cmp = of_adjoints.relate(&adjoint, cfg)?;
    Ok(AdjointInclusion {
        verdict: cmp.verdict,
        max_angle: cmp.max_angle,
    })
}

/// `(C; D)*` against `col(C*; D*)`; these are always equal.
pub fn check_row_adjoint(c: &LinearRelation, d: &LinearRelation, cfg: &ToleranceConfig) -> Result<Comparison> {
    let lhs = row(c, d, cfg)?.adjoint();
    let rhs = column(&c.adjoint(), &d.adjoint(), cfg)?;
    lhs.relate(&rhs, cfg)
}

/// `(A*; B*)` against `col(A; B)*`; the former is always contained in the latter.
pub fn check_column_adjoint(a: &LinearRelation, b: &LinearRelation, cfg: &ToleranceConfig) -> Result<Comparison> {
    let lhs = row(&a.adjoint(), &b.adjoint(), cfg)?;
    let rhs = column(a, b, cfg)?.adjoint();
    lhs.relate(&rhs, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_matrix, real_vector};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn scalar(x: f64) -> LinearRelation {
        LinearRelation::from_operator(&real_matrix(1, 1, &[x]))
    }

    fn trivial(n1: usize, n2: usize) -> LinearRelation {
        LinearRelation::product(&Subspace::zero(n1), &Subspace::zero(n2))
    }

    #[test]
    fn column_of_scalars_is_a_vector_operator() {
        let col = column(&scalar(1.0), &scalar(2.0), &cfg()).unwrap();
        let expected = LinearRelation::from_operator(&real_matrix(2, 1, &[1.0, 2.0]));
        assert!(col.approx_eq(&expected, &cfg()));
    }

    #[test]
    fn column_with_purely_multivalued_entry() {
        let col = column(&scalar(1.0), &LinearRelation::purely_multivalued(1, 1), &cfg()).unwrap();
        let expected = LinearRelation::product(
            &Subspace::zero(1),
            &Subspace::coordinate(2, &[1]).unwrap(),
        );
        assert!(col.approx_eq(&expected, &cfg()));
    }

    #[test]
    fn row_of_identities_adds() {
        let r = row(&scalar(1.0), &scalar(1.0), &cfg()).unwrap();
        let expected = LinearRelation::from_operator(&real_matrix(1, 2, &[1.0, 1.0]));
        assert!(r.approx_eq(&expected, &cfg()));
    }

    #[test]
    fn row_of_zero_and_multivalued() {
        let r = row(
            &LinearRelation::zero_operator(1, 1),
            &LinearRelation::purely_multivalued(1, 1),
            &cfg(),
        )
        .unwrap();
        let p = r.parts(&cfg());
        assert!(p.dom.approx_eq(&Subspace::coordinate(2, &[0]).unwrap(), &cfg()));
        assert!(p.ran.is_full());
        assert!(r.contains_pair(&real_vector(&[5.0, 0.0]), &real_vector(&[-3.0]), &cfg()));
    }

    #[test]
    fn lift_as_block() {
        let r = scalar(1.0);
        let b = Block2x2::new(
            LinearRelation::zero_operator(1, 1),
            trivial(1, 1),
            r,
            trivial(1, 1),
        )
        .unwrap();
        let s = b.relation(&cfg()).unwrap();
        let expected = LinearRelation::from_graph_basis(
            &real_matrix(4, 1, &[1.0, 0.0, 0.0, 1.0]),
            2,
            2,
            &cfg(),
        )
        .unwrap();
        assert!(s.approx_eq(&expected, &cfg()));
        assert!(check_row_col_duality(&b, &cfg()).unwrap());
    }

    #[test]
    fn operator_blocks_are_block_matrices() {
        let a11 = real_matrix(1, 1, &[1.0]);
        let a12 = real_matrix(1, 2, &[2.0, 3.0]);
        let a21 = real_matrix(2, 1, &[4.0, 5.0]);
        let a22 = real_matrix(2, 2, &[6.0, 7.0, 8.0, 9.0]);
        let b = Block2x2::from_operators(&a11, &a12, &a21, &a22).unwrap();
        let full = real_matrix(3, 3, &[1.0, 2.0, 3.0, 4.0, 6.0, 7.0, 5.0, 8.0, 9.0]);
        let e = b.relation(&cfg()).unwrap();
        assert!(e.approx_eq(&LinearRelation::from_operator(&full), &cfg()));
        let check = check_adjoint_inclusion(&b, &cfg()).unwrap();
        assert_eq!(check.verdict, Inclusion::Equal);
    }

    #[test]
    fn singular_blocks_are_products() {
        let m1 = Subspace::coordinate(2, &[0]).unwrap();
        let n1 = Subspace::zero(2);
        let m2 = Subspace::zero(1);
        let n2 = Subspace::full(1);
        let b = Block2x2::new(
            LinearRelation::product(&m1, &n1),
            LinearRelation::product(&m2, &n1),
            LinearRelation::product(&m1, &n2),
            LinearRelation::product(&m2, &n2),
        )
        .unwrap();
        let direct = singular_block(&m1, &m2, &n1, &n2).unwrap();
        assert!(b.relation(&cfg()).unwrap().approx_eq(&direct, &cfg()));
    }

    #[test]
    fn adjoint_inclusion_is_an_equality_in_finite_dimensions() {
        // col(A; {0} x M)* differs from (A*; M^⊥ x H) only through the closure
        // of dom A*, which is automatic here.
        let b = Block2x2::new(
            LinearRelation::zero_operator(1, 1),
            LinearRelation::zero_operator(1, 1),
            LinearRelation::purely_multivalued(1, 1),
            LinearRelation::zero_operator(1, 1),
        )
        .unwrap();
        let check = check_adjoint_inclusion(&b, &cfg()).unwrap();
        assert_eq!(check.verdict, Inclusion::Equal);
        let col = check_column_adjoint(
            &LinearRelation::zero_operator(1, 1),
            &LinearRelation::purely_multivalued(1, 1),
            &cfg(),
        )
        .unwrap();
        assert!(col.is_equal());
    }

    #[test]
    fn shape_errors() {
        assert!(column(&scalar(1.0), &LinearRelation::zero_operator(2, 1), &cfg()).is_err());
        assert!(row(&scalar(1.0), &LinearRelation::zero_operator(1, 2), &cfg()).is_err());
        assert!(Block2x2::new(scalar(1.0), scalar(1.0), scalar(1.0), LinearRelation::zero_operator(2, 2)).is_err());
    }
}
