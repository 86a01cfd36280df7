//! Boundary triplets for the adjoints of the lifted relations, their
//! γ-fields and Weyl functions, and the extensions `A_Θ = ker(Γ₁ − ΘΓ₀)`.
//!
//! A triplet stores `Γ₀, Γ₁` as `g x d` matrices acting on coordinates of
//! the fixed orthonormal graph basis `Y` of the star relation, so
//! `Γᵢ f̂ = Γᵢ a` for `f̂ = Y a`. Boundary vectors are coordinates in the
//! fixed orthonormal basis of the boundary space.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{dim_mismatch, Error, Result};
use crate::extension::LiftBundle;
use crate::linalg::{self, C64, CMat};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::ToleranceConfig;

/// Weyl functions are not evaluated inside this disk around the origin.
pub const LAMBDA_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripletKind {
    /// `{𝒢, Γ₀, Γ₁}` for `S*`, `𝒢 = N₋₁(S*)`.
    Main,
    /// `{𝒢₀, Γ⁰₀, Γ⁰₁}` for `S₀*`.
    Basic,
    /// The restriction of the basic triplet to `((S₀)_op)*` in `H₀`.
    BasicOp,
    /// `{𝒢̃, Γ̃₀, Γ̃₁}` for `(S̃)*`.
    Tilde,
}

impl TripletKind {
    pub fn name(self) -> &'static str {
        match self {
            TripletKind::Main => "main",
            TripletKind::Basic => "basic",
            TripletKind::BasicOp => "basic_op",
            TripletKind::Tilde => "tilde",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundaryTriplet {
    kind: TripletKind,
    n1: usize,
    n2: usize,
    /// Orthonormal basis (in `H1 ⊕ H2`) of the space the star relation acts
    /// in; the identity except for `BasicOp`, where it spans `H₀`.
    space_basis: CMat,
    star: LinearRelation,
    boundary_space: Subspace,
    gamma0: CMat,
    gamma1: CMat,
    kernel0_is_friedrichs: bool,
}

#[derive(Debug, Clone)]
pub struct WeylValue {
    pub lambda: C64,
    pub matrix: CMat,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SemiboundVerdict {
    pub x: f64,
    /// `x ≤ A_Θ`.
    pub lhs: bool,
    /// `M(x) ≤ Θ`.
    pub rhs: bool,
    pub lower_bound: f64,
    /// Lower bound of the relation `Θ − M(x)`.
    pub parameter_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlternativeRow {
    pub c: f64,
    pub lower_bound: f64,
    pub closed_form: f64,
    pub abs_error: f64,
    /// A point `x` satisfying the hypotheses of the bounded case.
    pub sufficient_x: f64,
    pub sufficient_bound_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlternativeReport {
    pub delta: f64,
    pub rows: Vec<AlternativeRow>,
    pub strictly_decreasing: bool,
    pub max_abs_error: f64,
    pub note: String,
}

fn zeros(r: usize, c: usize) -> CMat {
    CMat::zeros(r, c)
}

impl BoundaryTriplet {
    /// `Γ₀f̂ = Q(−k₁, h₂)`, `Γ₁f̂ = Q(h₁, k₂)` on `S*` with `𝒢 = N₋₁(S*)`.
    pub fn main(bundle: &LiftBundle, cfg: &ToleranceConfig) -> Self {
        let friedrichs = bundle.h.approx_eq(&bundle.s_f, cfg);
        Self::flip(TripletKind::Main, bundle, &bundle.s_star, &bundle.g, friedrichs)
    }

    /// The same boundary maps on `(S̃)*` with `𝒢̃ = J(R*)_s`.
    pub fn tilde(bundle: &LiftBundle) -> Self {
        Self::flip(TripletKind::Tilde, bundle, &bundle.s_tilde_star, &bundle.g_tilde, true)
    }

    /// `Γ⁰₀f̂ = Q₀(h₁, h₂)`, `Γ⁰₁f̂ = Q₀(k₁, k₂)` on `S₀*`.
    pub fn basic(bundle: &LiftBundle) -> Self {
        let n = bundle.n();
        let y = bundle.s0_star.graph().basis();
        let b = bundle.g0.basis();
        let gamma0 = b.adjoint() * linalg::row_block(y, 0, n);
        let gamma1 = b.adjoint() * linalg::row_block(y, n, n);
        Self {
            kind: TripletKind::Basic,
            n1: bundle.n1(),
            n2: bundle.n2(),
            space_basis: linalg::identity(n),
            star: bundle.s0_star.clone(),
            boundary_space: bundle.g0.clone(),
            gamma0,
            gamma1,
            kernel0_is_friedrichs: true,
        }
    }

    /// The basic triplet restricted to `((S₀)_op)* = H₀ × 𝒢₀`, written in
    /// coordinates of the fixed basis of `H₀ = H1 ⊕ ker R*`.
    pub fn basic_op(bundle: &LiftBundle, cfg: &ToleranceConfig) -> Self {
        let e = bundle.h0.basis().clone();
        let m = e.ncols();
        let g0_local = e.adjoint() * bundle.g0.basis();
        let boundary_space = Subspace::from_internal(&g0_local, cfg);
        let star = LinearRelation::product(&Subspace::full(m), &boundary_space);
        let y = star.graph().basis();
        let b = boundary_space.basis();
        let gamma0 = b.adjoint() * linalg::row_block(y, 0, m);
        let gamma1 = b.adjoint() * linalg::row_block(y, m, m);
        Self {
            kind: TripletKind::BasicOp,
            n1: bundle.n1(),
            n2: bundle.n2(),
            space_basis: e,
            star,
            boundary_space,
            gamma0,
            gamma1,
            kernel0_is_friedrichs: true,
        }
    }

    pub fn of_kind(kind: TripletKind, bundle: &LiftBundle, cfg: &ToleranceConfig) -> Self {
        match kind {
            TripletKind::Main => Self::main(bundle, cfg),
            TripletKind::Basic => Self::basic(bundle),
            TripletKind::BasicOp => Self::basic_op(bundle, cfg),
            TripletKind::Tilde => Self::tilde(bundle),
        }
    }

    fn flip(
        kind: TripletKind,
        bundle: &LiftBundle,
        star: &LinearRelation,
        space: &Subspace,
        kernel0_is_friedrichs: bool,
    ) -> Self {
        let (n1, n2) = (bundle.n1(), bundle.n2());
        let n = n1 + n2;
        let y = star.graph().basis();
        let h1 = linalg::row_block(y, 0, n1);
        let h2 = linalg::row_block(y, n1, n2);
        let k1 = linalg::row_block(y, n, n1);
        let k2 = linalg::row_block(y, n + n1, n2);
        let b = space.basis().adjoint();
        let gamma0 = &b * linalg::vstack(&[&(-k1), &h2]);
        let gamma1 = &b * linalg::vstack(&[&h1, &k2]);
        Self {
            kind,
            n1,
            n2,
            space_basis: linalg::identity(n),
            star: star.clone(),
            boundary_space: space.clone(),
            gamma0,
            gamma1,
            kernel0_is_friedrichs,
        }
    }

    pub fn kind(&self) -> TripletKind {
        self.kind
    }

    pub fn star_relation(&self) -> &LinearRelation {
        &self.star
    }

    pub fn boundary_space(&self) -> &Subspace {
        &self.boundary_space
    }

    pub fn gamma0(&self) -> &CMat {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &CMat {
        &self.gamma1
    }

    /// Dimension `g` of the boundary space.
    pub fn g(&self) -> usize {
        self.boundary_space.dim()
    }

    /// `𝒢₀ = {0}` for the basic triplets: every extension then coincides.
    pub fn is_degenerate(&self) -> bool {
        self.g() == 0
    }

    /// Whether `ker Γ₀` is the Friedrichs extension, as the semiboundedness
    /// criterion requires.
    pub fn kernel0_is_friedrichs(&self) -> bool {
        self.kernel0_is_friedrichs
    }

    /// Basis of the space the star relation acts in, as columns of `H1 ⊕ H2`.
    pub fn space_basis(&self) -> &CMat {
        &self.space_basis
    }

    fn space_dim(&self) -> usize {
        self.space_basis.ncols()
    }

    fn y(&self) -> &CMat {
        self.star.graph().basis()
    }

    fn y_top(&self) -> CMat {
        linalg::row_block(self.y(), 0, self.space_dim())
    }

    fn y_bottom(&self) -> CMat {
        linalg::row_block(self.y(), self.space_dim(), self.space_dim())
    }

    fn relation_from_coords(&self, coords: &CMat, cfg: &ToleranceConfig) -> LinearRelation {
        let m = self.space_dim();
        LinearRelation::from_graph_unchecked(Subspace::from_internal(&(self.y() * coords), cfg), m, m)
    }

    /// Largest entry of `[⟨f′,h⟩ − ⟨f,h′⟩] − [⟨Γ₁f̂,Γ₀ĥ⟩ − ⟨Γ₀f̂,Γ₁ĥ⟩]`
    /// over all pairs of graph basis vectors.
    pub fn green_residual(&self) -> f64 {
        let yt = self.y_top();
        let yb = self.y_bottom();
        let form = yt.adjoint() * &yb - yb.adjoint() * &yt;
        let boundary = self.gamma0.adjoint() * &self.gamma1 - self.gamma1.adjoint() * &self.gamma0;
        linalg::max_abs(&(form - boundary))
    }

    /// Rank of the stacked map `(Γ₀, Γ₁)`.
    pub fn boundary_rank(&self, cfg: &ToleranceConfig) -> usize {
        let stacked = linalg::vstack(&[&self.gamma0, &self.gamma1]);
        let sv = linalg::singular_values(&stacked);
        let smax = sv.first().copied().unwrap_or(0.0);
        sv.iter().filter(|&&s| s > cfg.abs_rank(smax)).count()
    }

    /// `(Γ₀, Γ₁)` maps onto `𝒢 × 𝒢`.
    pub fn is_surjective(&self, cfg: &ToleranceConfig) -> bool {
        self.boundary_rank(cfg) == 2 * self.g()
    }

    pub fn kernel0(&self, cfg: &ToleranceConfig) -> LinearRelation {
        self.relation_from_coords(&linalg::null_space(&self.gamma0, cfg.rank_tol), cfg)
    }

    pub fn kernel1(&self, cfg: &ToleranceConfig) -> LinearRelation {
        self.relation_from_coords(&linalg::null_space(&self.gamma1, cfg.rank_tol), cfg)
    }

    /// The extensions that `ker Γ₀` and `ker Γ₁` are known to equal.
    pub fn designated_kernels(&self, bundle: &LiftBundle) -> (LinearRelation, LinearRelation) {
        match self.kind {
            TripletKind::Main => (bundle.h.clone(), bundle.k.clone()),
            TripletKind::Basic => (bundle.s_f.clone(), bundle.s_k.clone()),
            TripletKind::Tilde => (bundle.s_f.clone(), bundle.k.clone()),
            TripletKind::BasicOp => {
                let e = &self.space_basis;
                let m = e.ncols();
                let dom_local = Subspace::from_orthonormal_unchecked(e.adjoint() * bundle.dom_r_in_h());
                (
                    LinearRelation::product(&dom_local, &self.boundary_space),
                    LinearRelation::product(&Subspace::full(m), &Subspace::zero(m)),
                )
            }
        }
    }

    fn check_parameter(&self, theta: &LinearRelation) -> Result<()> {
        let g = self.g();
        if theta.n1() != g || theta.n2() != g {
            return Err(dim_mismatch(format!(
                "parameter relation acts in C^{} -> C^{}, but the boundary space has dimension {g}",
                theta.n1(),
                theta.n2()
            )));
        }
        Ok(())
    }

    /// `A_Θ = {f̂ ∈ S* : (Γ₀f̂, Γ₁f̂) ∈ Θ}`, obtained from the orthogonal
    /// complement of `Θ` so that multivalued parameters need no inversion.
    pub fn extension_from_boundary(&self, theta: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
        self.check_parameter(theta)?;
        let perp = theta.graph().complement();
        let stacked = linalg::vstack(&[&self.gamma0, &self.gamma1]);
        let condition = perp.basis().adjoint() * stacked;
        let coords = if condition.nrows() == 0 {
            linalg::identity(self.star.dim())
        } else {
            linalg::null_space(&condition, cfg.rank_tol)
        };
        Ok(self.relation_from_coords(&coords, cfg))
    }

    /// Boundary parameter `Θ = {(Γ₀f̂, Γ₁f̂) : f̂ ∈ A}` of an intermediate
    /// relation `A ⊂ S*`.
    pub fn parameter_of(&self, a: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
        let m = self.space_dim();
        if a.n1() != m || a.n2() != m {
            return Err(dim_mismatch("relation does not act in the space of the triplet"));
        }
        if !a.is_restriction_of(&self.star, cfg) {
            return Err(Error::Precondition("relation is not contained in the star relation".into()));
        }
        let coords = self.y().adjoint() * a.graph().basis();
        let data = linalg::vstack(&[&(&self.gamma0 * &coords), &(&self.gamma1 * &coords)]);
        let g = self.g();
        Ok(LinearRelation::from_graph_unchecked(Subspace::from_internal(&data, cfg), g, g))
    }

    fn defect_coords(&self, lambda: C64, cfg: &ToleranceConfig) -> Result<(CMat, CMat)> {
        if lambda.norm() < LAMBDA_GUARD {
            return Err(Error::Singular { lambda });
        }
        let yt = self.y_top();
        let pencil = self.y_bottom() - &yt * lambda;
        let nc = linalg::null_space(&pencil, cfg.rank_tol);
        let g = self.g();
        if nc.ncols() != g {
            return Err(Error::Singular { lambda });
        }
        let g0 = &self.gamma0 * &nc;
        let inv = linalg::checked_inverse(&g0, cfg.rank_tol).ok_or(Error::Singular { lambda })?;
        Ok((nc, inv))
    }

    /// `M(λ)` from its definition `M(λ)Γ₀f̂ = Γ₁f̂` on `N̂_λ(S*)`.
    pub fn weyl(&self, lambda: C64, cfg: &ToleranceConfig) -> Result<WeylValue> {
        let (nc, inv) = self.defect_coords(lambda, cfg)?;
        Ok(WeylValue {
            lambda,
            matrix: &self.gamma1 * nc * inv,
        })
    }

    /// `γ(λ)`: boundary coordinates to `N_λ(S*)`, columns in the space of
    /// the triplet.
    pub fn gamma_field(&self, lambda: C64, cfg: &ToleranceConfig) -> Result<CMat> {
        let (nc, inv) = self.defect_coords(lambda, cfg)?;
        Ok(self.y_top() * nc * inv)
    }

    /// `Q diag(−1/λ, λ)|𝒢` for the main and tilde triplets, `λ I` for the
    /// basic ones.
    pub fn closed_form_weyl(&self, lambda: C64) -> Result<CMat> {
        if lambda.norm() < LAMBDA_GUARD {
            return Err(Error::Singular { lambda });
        }
        let b = self.boundary_space.basis();
        Ok(match self.kind {
            TripletKind::Main | TripletKind::Tilde => b.adjoint() * self.flip_diag(-lambda.inv(), lambda) * b,
            TripletKind::Basic | TripletKind::BasicOp => linalg::identity(self.g()) * lambda,
        })
    }

    /// `diag(−1/λ, 1)|𝒢` for the main and tilde triplets, the inclusion of
    /// `𝒢₀` for the basic ones.
    pub fn closed_form_gamma(&self, lambda: C64) -> Result<CMat> {
        if lambda.norm() < LAMBDA_GUARD {
            return Err(Error::Singular { lambda });
        }
        let b = self.boundary_space.basis();
        Ok(match self.kind {
            TripletKind::Main | TripletKind::Tilde => self.flip_diag(-lambda.inv(), linalg::ONE) * b,
            TripletKind::Basic | TripletKind::BasicOp => b.clone(),
        })
    }

    fn flip_diag(&self, first: C64, second: C64) -> CMat {
        let mut d = CMat::zeros(self.n1 + self.n2, self.n1 + self.n2);
        for i in 0..self.n1 {
            d[(i, i)] = first;
        }
        for i in self.n1..self.n1 + self.n2 {
            d[(i, i)] = second;
        }
        d
    }

    /// Weyl function on a grid, evaluated in parallel; output order follows
    /// the input.
    pub fn weyl_grid(&self, lambdas: &[C64], cfg: &ToleranceConfig) -> Vec<Result<WeylValue>> {
        lambdas.par_iter().map(|&l| self.weyl(l, cfg)).collect()
    }

    /// Both sides of `x ≤ A_Θ ⟺ M(x) ≤ Θ` for `x < 0`.
    pub fn semibound_criterion(&self, theta: &LinearRelation, x: f64, cfg: &ToleranceConfig) -> Result<SemiboundVerdict> {
        self.check_parameter(theta)?;
        if !(x < 0.0 && x.is_finite()) {
            return Err(Error::InvalidInput(format!("x = {x} is not a finite negative number")));
        }
        if !self.kernel0_is_friedrichs {
            return Err(Error::Precondition("ker Γ₀ is not the Friedrichs extension".into()));
        }
        if !theta.classify(cfg).is_selfadjoint {
            return Err(Error::NotSelfadjoint("boundary parameter is not selfadjoint".into()));
        }
        let a = self.extension_from_boundary(theta, cfg)?;
        let lower_bound = a
            .lower_bound(cfg)
            .ok_or_else(|| Error::NotSelfadjoint("A_Θ is not symmetric".into()))?;
        let m = self.weyl(linalg::real(x), cfg)?.matrix;
        let shifted = theta.add_operator(&(-m))?;
        let parameter_margin = shifted
            .lower_bound(cfg)
            .ok_or_else(|| Error::NotSelfadjoint("Θ − M(x) is not symmetric".into()))?;
        Ok(SemiboundVerdict {
            x,
            lhs: lower_bound - x >= cfg.psd_floor,
            rhs: parameter_margin >= cfg.psd_floor,
            lower_bound,
            parameter_margin,
        })
    }
}

impl WeylValue {
    /// `max |M(λ)^H − M(λ̄)|` given the value at `λ̄`.
    pub fn nevanlinna_defect(&self, conjugate: &WeylValue) -> f64 {
        linalg::max_abs(&(self.matrix.adjoint() - &conjugate.matrix))
    }
}

/// `[−δ(1+c²) − √(δ²(1+c²)² + 4c²)] / 2`, the lower bound of `A_{−δI}` for
/// `R = graph(c)` and the tilde triplet.
pub fn scalar_family_lower_bound(c: f64, delta: f64) -> f64 {
    let a = delta * (1.0 + c * c);
    (-a - (a * a + 4.0 * c * c).sqrt()) / 2.0
}

/// Lower bounds of `A_{−δI}` along the scalar family `R = graph(c)`.
///
/// A single matrix relation is always semibounded, so unboundedness is shown
/// as divergence of the lower bound along the family as `c` grows.
pub fn alternative_experiment(c_list: &[f64], delta: f64, cfg: &ToleranceConfig) -> Result<AlternativeReport> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidInput(format!("delta = {delta} must be positive")));
    }
    if c_list.is_empty() {
        return Err(Error::InvalidInput("empty list of c values".into()));
    }
    if c_list.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
        return Err(Error::InvalidInput("c values must be finite and nonnegative".into()));
    }
    if c_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("c values must be strictly increasing".into()));
    }
    let rows = c_list
        .par_iter()
        .map(|&c| alternative_row(c, delta, cfg))
        .collect::<Result<Vec<_>>>()?;
    let strictly_decreasing = rows.windows(2).all(|w| w[1].lower_bound < w[0].lower_bound);
    let max_abs_error = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    Ok(AlternativeReport {
        delta,
        rows,
        strictly_decreasing,
        max_abs_error,
        note: "each (R*)_s is bounded, so every A_Θ here is semibounded; the unbounded case appears as \
               divergence of m(A_Θ) to -inf as c grows while ||Θ|| = delta stays fixed"
            .into(),
    })
}

fn alternative_row(c: f64, delta: f64, cfg: &ToleranceConfig) -> Result<AlternativeRow> {
    let r = LinearRelation::from_operator(&linalg::real_matrix(1, 1, &[c]));
    let bundle = LiftBundle::new(&r, cfg);
    let t = BoundaryTriplet::tilde(&bundle);
    let theta = LinearRelation::scalar(t.g(), linalg::real(-delta));
    let a = t.extension_from_boundary(&theta, cfg)?;
    let lower_bound = a
        .lower_bound(cfg)
        .ok_or_else(|| Error::NotSelfadjoint("A_Θ is not symmetric".into()))?;
    let closed_form = scalar_family_lower_bound(c, delta);
    let norm = bundle.r_star.operator_part_norm(cfg);
    let gamma = -delta;
    let sufficient_x = (-1.0f64).min(-norm * norm).min(gamma * (norm * norm + 1.0) - 1.0) - 1.0;
    Ok(AlternativeRow {
        c,
        lower_bound,
        closed_form,
        abs_error: (lower_bound - closed_form).abs(),
        sufficient_x,
        sufficient_bound_holds: lower_bound - sufficient_x >= cfg.psd_floor,
    })
}

/// `S_Θ = O_{dom R} ⊕̂ Θ` in coordinates of the fixed basis of `H₀`, with
/// `Θ` given in coordinates of the basic triplet's boundary space.
pub fn s_theta_block(bundle: &LiftBundle, theta: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
    let t = BoundaryTriplet::basic_op(bundle, cfg);
    t.check_parameter(theta)?;
    let e = t.space_basis();
    let m = e.ncols();
    let dom_local = e.adjoint() * bundle.dom_r_in_h();
    let b = t.boundary_space().basis();
    let zero_part = linalg::vstack(&[&dom_local, &zeros(m, dom_local.ncols())]);
    let theta_part = linalg::vstack(&[&(b * theta.top()), &(b * theta.bottom())]);
    let stacked = linalg::hstack(&[&zero_part, &theta_part]);
    Ok(LinearRelation::from_graph_unchecked(Subspace::from_internal(&stacked, cfg), m, m))
}
