//! Linear relations `H1 -> H2` stored as graph subspaces of `C^{n1+n2}`.
//!
//! The first `n1` coordinates of a graph vector are the domain component,
//! the last `n2` the range component. Inner products are linear in the
//! first argument: `<x, y> = y^H x`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{self, C64, CMat, CVec};
use crate::subspace::{Comparison, Subspace};
use crate::tolerance::ToleranceConfig;

/// Default sample count for the Monte-Carlo numerical range radius.
pub const NUMERICAL_RANGE_SAMPLES: usize = 2048;
const NUMERICAL_RANGE_SEED: u64 = 0x6e75_6d72;

#[derive(Debug, Clone)]
pub struct LinearRelation {
    n1: usize,
    n2: usize,
    graph: Subspace,
}

/// Domain, range, kernel and multivalued part of a relation.
#[derive(Debug, Clone)]
pub struct RelationParts {
    pub dom: Subspace,
    pub ran: Subspace,
    pub ker: Subspace,
    pub mul: Subspace,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    /// Whether the relation acts in a single space (`n1 == n2`). All other
    /// fields are `false`/`None` when it does not.
    pub square: bool,
    pub is_symmetric: bool,
    pub is_selfadjoint: bool,
    pub is_nonnegative: bool,
    pub dom_perp_ran: bool,
    /// `max |(G^H F)_ij|` over the graph basis `[F; G]`.
    pub cross_gram_max: f64,
    /// Greatest lower bound `m(R)` for symmetric relations; `+inf` when the
    /// domain is `{0}`.
    pub lower_bound: Option<f64>,
    pub numerical_range_radius: f64,
}

impl LinearRelation {
    /// Wrap a graph subspace of `C^{n1+n2}`.
    pub fn from_graph(graph: Subspace, n1: usize, n2: usize) -> Result<Self> {
        if graph.ambient_dim() != n1 + n2 {
            return Err(dim_mismatch(format!(
                "graph lives in C^{} but n1 + n2 = {}",
                graph.ambient_dim(),
                n1 + n2
            )));
        }
        Ok(Self { n1, n2, graph })
    }

    pub(crate) fn from_graph_unchecked(graph: Subspace, n1: usize, n2: usize) -> Self {
        debug_assert_eq!(graph.ambient_dim(), n1 + n2);
        Self { n1, n2, graph }
    }

    /// Relation spanned by the columns of an arbitrary `(n1+n2) x p` matrix.
    pub fn from_graph_basis(mat: &CMat, n1: usize, n2: usize, cfg: &ToleranceConfig) -> Result<Self> {
        if mat.nrows() != n1 + n2 {
            return Err(dim_mismatch(format!(
                "graph basis has {} rows, expected {}",
                mat.nrows(),
                n1 + n2
            )));
        }
        Self::from_graph(Subspace::from_columns(mat, cfg), n1, n2)
    }

    /// Graph of the operator `mat: C^{ncols} -> C^{nrows}`.
    pub fn from_operator(mat: &CMat) -> Self {
        let (n2, n1) = mat.shape();
        let stacked = linalg::vstack(&[&linalg::identity(n1), mat]);
        let basis = linalg::orth(&stacked, 0.5);
        Self::from_graph_unchecked(Subspace::from_orthonormal_unchecked(basis), n1, n2)
    }

    /// `{(C x, D x) : x ∈ C^p}`.
    pub fn from_kernel_pair(c: &CMat, d: &CMat, cfg: &ToleranceConfig) -> Result<Self> {
        if c.ncols() != d.ncols() {
            return Err(dim_mismatch(format!(
                "kernel pair with {} and {} parameters",
                c.ncols(),
                d.ncols()
            )));
        }
        let stacked = linalg::vstack(&[c, d]);
        Ok(Self::from_graph_unchecked(
            Subspace::from_columns(&stacked, cfg),
            c.nrows(),
            d.nrows(),
        ))
    }

    /// The Cartesian product `M × N = {(m, n) : m ∈ M, n ∈ N}`.
    pub fn product(dom: &Subspace, ran: &Subspace) -> Self {
        Self::from_graph_unchecked(
            Subspace::direct_sum(dom, ran),
            dom.ambient_dim(),
            ran.ambient_dim(),
        )
    }

    /// Zero operator `H1 × {0}`.
    pub fn zero_operator(n1: usize, n2: usize) -> Self {
        Self::product(&Subspace::full(n1), &Subspace::zero(n2))
    }

    /// Purely multivalued relation `{0} × H2`.
    pub fn purely_multivalued(n1: usize, n2: usize) -> Self {
        Self::product(&Subspace::zero(n1), &Subspace::full(n2))
    }

    /// Graph of `λ I` on `C^n`.
    pub fn scalar(n: usize, lambda: C64) -> Self {
        Self::from_operator(&(linalg::identity(n) * lambda))
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn is_square(&self) -> bool {
        self.n1 == self.n2
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    /// Domain block `F` of the graph basis `[F; G]`.
    pub fn top(&self) -> CMat {
        linalg::row_block(self.graph.basis(), 0, self.n1)
    }

    /// Range block `G` of the graph basis `[F; G]`.
    pub fn bottom(&self) -> CMat {
        linalg::row_block(self.graph.basis(), self.n1, self.n2)
    }

    pub fn parts(&self, cfg: &ToleranceConfig) -> RelationParts {
        let f = self.top();
        let g = self.bottom();
        let ker_coeffs = linalg::null_space(&g, cfg.rank_tol);
        let mul_coeffs = linalg::null_space(&f, cfg.rank_tol);
        RelationParts {
            dom: Subspace::from_internal(&f, cfg),
            ran: Subspace::from_internal(&g, cfg),
            ker: Subspace::from_internal(&(&f * ker_coeffs), cfg),
            mul: Subspace::from_internal(&(&g * mul_coeffs), cfg),
        }
    }

    pub fn dom(&self, cfg: &ToleranceConfig) -> Subspace {
        Subspace::from_internal(&self.top(), cfg)
    }

    pub fn ran(&self, cfg: &ToleranceConfig) -> Subspace {
        Subspace::from_internal(&self.bottom(), cfg)
    }

    pub fn ker(&self, cfg: &ToleranceConfig) -> Subspace {
        self.parts(cfg).ker
    }

    pub fn mul(&self, cfg: &ToleranceConfig) -> Subspace {
        self.parts(cfg).mul
    }

    /// Adjoint `R*: H2 -> H1` from the flip-flop identity `R^⊥ = J R*`,
    /// `J{φ, ψ} = {ψ, -φ}`: a complement vector `(φ, ψ)` of the graph
    /// yields the adjoint pair `(-ψ, φ)`.
    pub fn adjoint(&self) -> Self {
        let comp = self.graph.complement().into_basis();
        let phi = linalg::row_block(&comp, 0, self.n1);
        let psi = linalg::row_block(&comp, self.n1, self.n2);
        let basis = linalg::vstack(&[&(-psi), &phi]);
        Self::from_graph_unchecked(Subspace::from_orthonormal_unchecked(basis), self.n2, self.n1)
    }

    /// `R^{-1} = {(g, f) : (f, g) ∈ R}`.
    pub fn inverse(&self) -> Self {
        let basis = linalg::vstack(&[&self.bottom(), &self.top()]);
        Self::from_graph_unchecked(Subspace::from_orthonormal_unchecked(basis), self.n2, self.n1)
    }

    /// Operator part `R_s = {(f, P g) : (f, g) ∈ R}` with `P` the orthogonal
    /// projection onto `(mul R)^⊥`.
    pub fn operator_part(&self, cfg: &ToleranceConfig) -> Self {
        let mul = self.mul(cfg);
        let p = linalg::identity(self.n2) - mul.projector();
        let stacked = linalg::vstack(&[&self.top(), &(p * self.bottom())]);
        Self::from_graph_unchecked(Subspace::from_internal(&stacked, cfg), self.n1, self.n2)
    }

    pub fn is_single_valued(&self, cfg: &ToleranceConfig) -> bool {
        self.mul(cfg).is_zero()
    }

    /// Whether `R = dom R × ran R`, i.e. `R` is a Cartesian product.
    pub fn is_singular(&self, cfg: &ToleranceConfig) -> bool {
        let product = Self::product(&self.dom(cfg), &self.ran(cfg));
        self.graph.approx_eq(&product.graph, cfg)
    }

    /// Matrix of an everywhere defined single-valued relation.
    pub fn operator_matrix(&self, cfg: &ToleranceConfig) -> Result<CMat> {
        let f = self.top();
        if self.dim() != self.n1 {
            return Err(Error::Precondition(
                "relation is not an everywhere defined operator".into(),
            ));
        }
        let inv = linalg::checked_inverse(&f, cfg.rank_tol).ok_or_else(|| {
            Error::Precondition("relation is not an everywhere defined operator".into())
        })?;
        Ok(self.bottom() * inv)
    }

    /// Operator norm of the operator part `R_s` on its domain.
    pub fn operator_part_norm(&self, cfg: &ToleranceConfig) -> f64 {
        let rs = self.operator_part(cfg);
        let f = rs.top();
        let g = rs.bottom();
        if f.ncols() == 0 {
            return 0.0;
        }
        // R_s is single valued, so F has full column rank on its graph.
        let d = linalg::svd(&f);
        let inv_sigma = CMat::from_diagonal(&CVec::from_iterator(
            d.s.len(),
            d.s.iter().map(|&s| linalg::real(1.0 / s)),
        ));
        let pinv = &d.v * inv_sigma * d.u.adjoint();
        linalg::spectral_norm(&(g * pinv))
    }

    fn check_same_spaces(&self, other: &Self, op: &str) -> Result<()> {
        if self.n1 != other.n1 || self.n2 != other.n2 {
            return Err(dim_mismatch(format!(
                "{op}: relations C^{} -> C^{} and C^{} -> C^{}",
                self.n1, self.n2, other.n1, other.n2
            )));
        }
        Ok(())
    }

    /// Componentwise sum `R +̂ T` (join of graphs).
    pub fn sum(&self, other: &Self, cfg: &ToleranceConfig) -> Result<Self> {
        self.check_same_spaces(other, "componentwise sum")?;
        Ok(Self::from_graph_unchecked(
            self.graph.join(&other.graph, cfg)?,
            self.n1,
            self.n2,
        ))
    }

    /// Orthogonal componentwise sum `R ⊕̂ T`; the graphs must be orthogonal.
    pub fn orthogonal_sum(&self, other: &Self, cfg: &ToleranceConfig) -> Result<Self> {
        self.check_same_spaces(other, "orthogonal sum")?;
        let cross = self.graph.basis().adjoint() * other.graph.basis();
        let defect = linalg::max_abs(&cross);
        if defect > cfg.angle_tol {
            return Err(Error::Precondition(format!(
                "graphs are not orthogonal (max inner product {defect:.3e})"
            )));
        }
        self.sum(other, cfg)
    }

    pub fn intersection(&self, other: &Self, cfg: &ToleranceConfig) -> Result<Self> {
        self.check_same_spaces(other, "intersection")?;
        Ok(Self::from_graph_unchecked(
            self.graph.meet(&other.graph, cfg)?,
            self.n1,
            self.n2,
        ))
    }

    /// Compare graphs; `Subset` means `self ⊂ other`.
    pub fn relate(&self, other: &Self, cfg: &ToleranceConfig) -> Result<Comparison> {
        self.check_same_spaces(other, "relate")?;
        self.graph.relate(&other.graph, cfg)
    }

    pub fn approx_eq(&self, other: &Self, cfg: &ToleranceConfig) -> bool {
        self.n1 == other.n1 && self.n2 == other.n2 && self.graph.approx_eq(&other.graph, cfg)
    }

    /// `self ⊂ other` as graphs.
    pub fn is_restriction_of(&self, other: &Self, cfg: &ToleranceConfig) -> bool {
        self.n1 == other.n1 && self.n2 == other.n2 && self.graph.is_subspace_of(&other.graph, cfg)
    }

    pub fn contains_pair(&self, f: &CVec, g: &CVec, cfg: &ToleranceConfig) -> bool {
        if f.len() != self.n1 || g.len() != self.n2 {
            return false;
        }
        let v = CVec::from_iterator(self.n1 + self.n2, f.iter().chain(g.iter()).copied());
        self.graph.contains_vector(&v, cfg)
    }

    /// `{(f, g + M f) : (f, g) ∈ R}` for a matrix `M: H1 -> H2`.
    pub fn add_operator(&self, m: &CMat) -> Result<Self> {
        if m.shape() != (self.n2, self.n1) {
            return Err(dim_mismatch(format!(
                "operator of shape {:?} added to a relation C^{} -> C^{}",
                m.shape(),
                self.n1,
                self.n2
            )));
        }
        let f = self.top();
        let g = self.bottom() + m * &f;
        let stacked = linalg::vstack(&[&f, &g]);
        // The shear (f, g) -> (f, g + M f) is invertible, so the dimension is kept.
        let basis = linalg::orth(&stacked, 0.0);
        let basis = linalg::select_columns(&basis, 0..self.dim());
        Ok(Self::from_graph_unchecked(
            Subspace::from_orthonormal_unchecked(basis),
            self.n1,
            self.n2,
        ))
    }

    /// Cross-Gram matrix `F^H G`; entry `(i, j)` is `<g_j, f_i>`.
    pub fn cross_gram(&self) -> CMat {
        self.top().adjoint() * self.bottom()
    }

    /// Symmetry, nonnegativity, and orthogonality of domain and range.
    ///
    /// The decisive quantity is the cross-Gram matrix `F^H G` of the graph
    /// basis `[F; G]`: `(g, f)` for `(f, g) = (F a, G a)` equals
    /// `a^H F^H G a`. Hence `R` is symmetric iff `F^H G` is Hermitian,
    /// nonnegative iff it is in addition positive semidefinite, and
    /// `dom R ⊥ ran R` iff it vanishes, which by polarization is the same as
    /// a numerical range equal to `{0}`.
    pub fn classify(&self, cfg: &ToleranceConfig) -> SymmetryReport {
        if !self.is_square() {
            return SymmetryReport {
                square: false,
                is_symmetric: false,
                is_selfadjoint: false,
                is_nonnegative: false,
                dom_perp_ran: false,
                cross_gram_max: linalg::max_abs(&self.cross_gram_rect()),
                lower_bound: None,
                numerical_range_radius: f64::NAN,
            };
        }
        let gram = self.cross_gram();
        let cross_gram_max = linalg::max_abs(&gram);
        let dom_perp_ran = cross_gram_max <= cfg.angle_tol;
        let is_symmetric = dom_perp_ran || linalg::hermitian_defect(&gram) <= cfg.angle_tol;
        // A symmetric relation in C^n is selfadjoint iff its graph has dimension n.
        let is_selfadjoint = is_symmetric && self.dim() == self.n1;
        let is_nonnegative = dom_perp_ran
            || (is_symmetric && linalg::min_hermitian_eigenvalue(&gram) >= cfg.psd_floor);
        let lower_bound = if is_symmetric {
            Some(self.symmetric_lower_bound(cfg))
        } else {
            None
        };
        let radius = self
            .numerical_range_samples(NUMERICAL_RANGE_SAMPLES, NUMERICAL_RANGE_SEED, cfg)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        SymmetryReport {
            square: true,
            is_symmetric,
            is_selfadjoint,
            is_nonnegative,
            dom_perp_ran,
            cross_gram_max,
            lower_bound,
            numerical_range_radius: radius,
        }
    }

    fn cross_gram_rect(&self) -> CMat {
        // Only meaningful for square relations; kept for report completeness.
        let f = self.top();
        let g = self.bottom();
        let k = f.nrows().min(g.nrows());
        linalg::row_block(&f, 0, k).adjoint() * linalg::row_block(&g, 0, k)
    }

    /// Coefficient vectors `a` with `F a ≠ 0`: an orthonormal basis of
    /// `(ker F)^⊥` in coefficient space.
    fn domain_coefficients(&self, cfg: &ToleranceConfig) -> CMat {
        let f = self.top();
        linalg::orth(&f.adjoint(), cfg.abs_rank(linalg::spectral_norm(&f)))
    }

    /// `inf (g, f) / ||f||^2` over pairs with `f ≠ 0`, via the Hermitian
    /// pencil `(W^H F^H G W, W^H F^H F W)`.
    fn symmetric_lower_bound(&self, cfg: &ToleranceConfig) -> f64 {
        let w = self.domain_coefficients(cfg);
        if w.ncols() == 0 {
            return f64::INFINITY;
        }
        let fw = self.top() * &w;
        let gw = self.bottom() * &w;
        let d = linalg::svd(&fw);
        let v = d.v;
        let inv_sigma = CMat::from_diagonal(&CVec::from_iterator(
            d.s.len(),
            d.s.iter().map(|&s| linalg::real(1.0 / s)),
        ));
        let t = &v * &inv_sigma;
        let b = (self.top() * &w).adjoint() * gw;
        let pencil = t.adjoint() * linalg::hermitian_part(&b) * &t;
        linalg::min_hermitian_eigenvalue(&pencil)
    }

    /// Lower bound of a symmetric relation, `None` otherwise.
    pub fn lower_bound(&self, cfg: &ToleranceConfig) -> Option<f64> {
        self.classify_symmetric_only(cfg)
            .then(|| self.symmetric_lower_bound(cfg))
    }

    fn classify_symmetric_only(&self, cfg: &ToleranceConfig) -> bool {
        self.is_square() && linalg::hermitian_defect(&self.cross_gram()) <= cfg.angle_tol
    }

    /// Seeded Monte-Carlo points `(g, f) / ||f||^2` of the numerical range.
    /// A purely multivalued relation yields the single point `0`.
    pub fn numerical_range_samples(&self, count: usize, seed: u64, cfg: &ToleranceConfig) -> Vec<C64> {
        if !self.is_square() {
            return Vec::new();
        }
        let w = self.domain_coefficients(cfg);
        if w.ncols() == 0 {
            return vec![linalg::ZERO];
        }
        let fw = self.top() * &w;
        let gw = self.bottom() * &w;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = w.ncols();
        (0..count)
            .map(|_| {
                let z = CVec::from_fn(k, |_, _| {
                    C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
                });
                let f = &fw * &z;
                let g = &gw * &z;
                f.dotc(&g) / f.norm_squared()
            })
            .collect()
    }

    /// Defect pairs `N̂_λ = R ∩ graph(λ I)`.
    pub fn defect_pairs(&self, lambda: C64, cfg: &ToleranceConfig) -> Result<Self> {
        if !self.is_square() {
            return Err(dim_mismatch("eigenspace of a non-square relation"));
        }
        self.intersection(&Self::scalar(self.n1, lambda), cfg)
    }

    /// Eigenspace `N_λ = ker(R - λ)`.
    pub fn eigenspace(&self, lambda: C64, cfg: &ToleranceConfig) -> Result<Subspace> {
        let pairs = self.defect_pairs(lambda, cfg)?;
        Ok(Subspace::from_internal(&pairs.top(), cfg))
    }

    /// Matrix of `(A - λ)^{-1}` for a selfadjoint relation `A`.
    ///
    /// The graph of `(A - λ)^{-1}` is `{(g - λ f, f)}`; `λ` is in the
    /// resolvent set iff that graph is an everywhere defined operator, i.e.
    /// `G - λ F` is invertible on the `n`-dimensional graph.
    pub fn resolvent(&self, lambda: C64, cfg: &ToleranceConfig) -> Result<CMat> {
        let report = self.classify(cfg);
        if !report.is_selfadjoint {
            return Err(Error::NotSelfadjoint("resolvent requires a selfadjoint relation".into()));
        }
        let f = self.top();
        let x = self.bottom() - &f * lambda;
        let inv = linalg::checked_inverse(&x, cfg.rank_tol).ok_or(Error::ResolventUndefined { lambda })?;
        Ok(f * inv)
    }
}
