//! The symmetric lift `S` of a relation `R: H1 -> H2` and its distinguished
//! extensions in `H = H1 ⊕ H2`.
//!
//! Vectors of `H` are ordered `(h1, h2)`; graph vectors of relations in `H`
//! are ordered `(h1, h2, k1, k2)` in `C^{2N}` with `N = n1 + n2`.

use serde::Serialize;

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{self, CMat};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::ToleranceConfig;

/// `R` together with every relation and subspace derived from it.
#[derive(Debug, Clone)]
pub struct LiftBundle {
    pub r: LinearRelation,
    pub r_star: LinearRelation,
    /// Closures of domain and range of `R`.
    pub dom_r: Subspace,
    pub ran_r: Subspace,
    pub ker_r_star: Subspace,
    pub mul_r_star: Subspace,
    pub s: LinearRelation,
    pub s_star: LinearRelation,
    pub h: LinearRelation,
    pub k: LinearRelation,
    pub s_f: LinearRelation,
    pub s_k: LinearRelation,
    pub s0: LinearRelation,
    pub s0_star: LinearRelation,
    pub s_tilde: LinearRelation,
    pub s_tilde_star: LinearRelation,
    pub s_tilde_k: LinearRelation,
    pub s_tilde0: LinearRelation,
    pub s_tilde0_star: LinearRelation,
    /// `𝒢 = H ⊖ R`, the defect space `N_{-1}(S*)`.
    pub g: Subspace,
    /// `𝒢₀ = mul R* ⊕ ker R*`.
    pub g0: Subspace,
    /// `𝒢̃ = J (R*)_s`.
    pub g_tilde: Subspace,
    /// `0 ⊕ ker R*`, the defect space `N_λ(S̃₀*)` for `λ ≠ 0`.
    pub g_tilde0: Subspace,
    /// `H0 = H1 ⊕ ker R*`, where the operator part of `S0` lives.
    pub h0: Subspace,
}

/// Agreement between closed forms and independent computations.
#[derive(Debug, Clone, Serialize)]
pub struct LiftChecks {
    pub s_is_symmetric_with_orthogonal_parts: bool,
    pub s_star_matches_adjoint: bool,
    pub s_tilde_star_matches_adjoint: bool,
    pub s0_star_matches_adjoint: bool,
    pub friedrichs_matches_generic: bool,
    pub krein_matches_generic: bool,
    pub s0_is_intersection: bool,
    pub s0_star_is_sum: bool,
    pub transversal: bool,
    pub g_is_defect_space: bool,
    pub friedrichs_equals_krein: bool,
    pub max_angle: f64,
}

impl LiftChecks {
    pub fn all_hold(&self) -> bool {
        self.s_is_symmetric_with_orthogonal_parts
            && self.s_star_matches_adjoint
            && self.s_tilde_star_matches_adjoint
            && self.s0_star_matches_adjoint
            && self.friedrichs_matches_generic
            && self.krein_matches_generic
            && self.s0_is_intersection
            && self.s0_star_is_sum
            && self.transversal
            && self.g_is_defect_space
    }
}

/// Resolvent comparison `(S_F+1)^{-1} ≤ (A+1)^{-1} ≤ (S_K+1)^{-1}`.
#[derive(Debug, Clone, Serialize)]
pub struct KreinOrder {
    /// Smallest eigenvalue of `(A+1)^{-1} - (S_F+1)^{-1}`.
    pub lower_min_eigenvalue: f64,
    /// Smallest eigenvalue of `(S_K+1)^{-1} - (A+1)^{-1}`.
    pub upper_min_eigenvalue: f64,
    pub hermitian_defect: f64,
    pub holds: bool,
}

/// Graph in `C^{2N}` from coefficient blocks `(h1, h2, k1, k2)`.
fn assemble(n1: usize, n2: usize, blocks: [&CMat; 4], cfg: &ToleranceConfig) -> LinearRelation {
    let stacked = linalg::vstack(&blocks);
    let n = n1 + n2;
    LinearRelation::from_graph_unchecked(Subspace::from_internal(&stacked, cfg), n, n)
}

fn zeros(rows: usize, cols: usize) -> CMat {
    CMat::zeros(rows, cols)
}

impl LiftBundle {
    pub fn new(r: &LinearRelation, cfg: &ToleranceConfig) -> Self {
        let (n1, n2) = (r.n1(), r.n2());
        let n = n1 + n2;
        let r_star = r.adjoint();
        let parts = r.parts(cfg);
        let star_parts = r_star.parts(cfg);
        let (dom_r, ran_r) = (parts.dom, parts.ran);
        let (ker_r_star, mul_r_star) = (star_parts.ker, star_parts.mul);

        let f = r.top();
        let g = r.bottom();
        let d = r.dim();
        // R* maps H2 -> H1: top block in H2, bottom block in H1.
        let a = r_star.top();
        let b = r_star.bottom();
        let e = r_star.dim();
        let id1 = linalg::identity(n1);
        let id2 = linalg::identity(n2);

        let s = assemble(n1, n2, [&f, &zeros(n2, d), &zeros(n1, d), &g], cfg);
        let s_star = assemble(
            n1,
            n2,
            [
                &linalg::hstack(&[&id1, &zeros(n1, e), &zeros(n1, n2)]),
                &linalg::hstack(&[&zeros(n2, n1), &a, &zeros(n2, n2)]),
                &linalg::hstack(&[&zeros(n1, n1), &b, &zeros(n1, n2)]),
                &linalg::hstack(&[&zeros(n2, n1), &zeros(n2, e), &id2]),
            ],
            cfg,
        );
        let h = LinearRelation::product(
            &Subspace::direct_sum(&Subspace::full(n1), &Subspace::zero(n2)),
            &Subspace::direct_sum(&Subspace::zero(n1), &Subspace::full(n2)),
        );
        let k = assemble(
            n1,
            n2,
            [
                &linalg::hstack(&[&f, &zeros(n1, e)]),
                &linalg::hstack(&[&zeros(n2, d), &a]),
                &linalg::hstack(&[&zeros(n1, d), &b]),
                &linalg::hstack(&[&g, &zeros(n2, e)]),
            ],
            cfg,
        );
        let full1 = Subspace::full(n1);
        let full2 = Subspace::full(n2);
        let zero1 = Subspace::zero(n1);
        let zero2 = Subspace::zero(n2);
        let sum = Subspace::direct_sum;

        let s_f = LinearRelation::product(&sum(&dom_r, &zero2), &sum(&mul_r_star, &full2));
        let s_k = LinearRelation::product(&sum(&full1, &ker_r_star), &sum(&zero1, &ran_r));
        let s0 = LinearRelation::product(&sum(&dom_r, &zero2), &sum(&zero1, &ran_r));
        let s0_star = LinearRelation::product(&sum(&full1, &ker_r_star), &sum(&mul_r_star, &full2));

        let mstar = mul_r_star.basis().clone();
        let m = mstar.ncols();
        let s_tilde = assemble(
            n1,
            n2,
            [
                &linalg::hstack(&[&f, &zeros(n1, m)]),
                &zeros(n2, d + m),
                &linalg::hstack(&[&zeros(n1, d), &mstar]),
                &linalg::hstack(&[&g, &zeros(n2, m)]),
            ],
            cfg,
        );
        let dbasis = dom_r.basis().clone();
        let p = dbasis.ncols();
        let s_tilde_star = assemble(
            n1,
            n2,
            [
                &linalg::hstack(&[&dbasis, &zeros(n1, e), &zeros(n1, n2)]),
                &linalg::hstack(&[&zeros(n2, p), &a, &zeros(n2, n2)]),
                &linalg::hstack(&[&zeros(n1, p), &b, &zeros(n1, n2)]),
                &linalg::hstack(&[&zeros(n2, p), &zeros(n2, e), &id2]),
            ],
            cfg,
        );
        let s_tilde_k = LinearRelation::product(&sum(&dom_r, &ker_r_star), &sum(&mul_r_star, &ran_r));
        let s_tilde0 = LinearRelation::product(&sum(&dom_r, &zero2), &sum(&mul_r_star, &ran_r));
        let s_tilde0_star = LinearRelation::product(&sum(&dom_r, &ker_r_star), &sum(&mul_r_star, &full2));

        let g_space = r.graph().complement();
        let g0 = sum(&mul_r_star, &ker_r_star);
        // (R*)_s = {(α, β)} with α ∈ H2, β ∈ H1; 𝒢̃ = {(h1, h2) : (h2, -h1) ∈ (R*)_s}.
        let rs = r_star.operator_part(cfg);
        let g_tilde_basis = linalg::vstack(&[&(-rs.bottom()), &rs.top()]);
        let g_tilde = Subspace::from_internal(&g_tilde_basis, cfg);
        let g_tilde0 = sum(&zero1, &ker_r_star);
        let h0 = sum(&full1, &ker_r_star);
        debug_assert_eq!(g_space.ambient_dim(), n);

        Self {
            r: r.clone(),
            r_star,
            dom_r,
            ran_r,
            ker_r_star,
            mul_r_star,
            s,
            s_star,
            h,
            k,
            s_f,
            s_k,
            s0,
            s0_star,
            s_tilde,
            s_tilde_star,
            s_tilde_k,
            s_tilde0,
            s_tilde0_star,
            g: g_space,
            g0,
            g_tilde,
            g_tilde0,
            h0,
        }
    }

    pub fn n1(&self) -> usize {
        self.r.n1()
    }

    pub fn n2(&self) -> usize {
        self.r.n2()
    }

    /// Dimension `N = n1 + n2` of `H`.
    pub fn n(&self) -> usize {
        self.r.n1() + self.r.n2()
    }

    /// Basis of `dom R ⊕ {0}` as columns of `H1 ⊕ H2`.
    pub fn dom_r_in_h(&self) -> CMat {
        Subspace::direct_sum(&self.dom_r, &Subspace::zero(self.n2()))
            .basis()
            .clone()
    }

    /// Whether `S_F = S_K`, i.e. `R` is densely defined with dense range.
    pub fn friedrichs_equals_krein(&self) -> bool {
        self.g0.is_zero()
    }

    /// `S ⊂ A ⊂ S*`.
    pub fn is_extension(&self, a: &LinearRelation, cfg: &ToleranceConfig) -> bool {
        self.s.is_restriction_of(a, cfg) && a.is_restriction_of(&self.s_star, cfg)
    }

    /// Cross-check every closed form against an independent computation.
    pub fn verify(&self, cfg: &ToleranceConfig) -> Result<LiftChecks> {
        let mut max_angle: f64 = 0.0;
        let mut eq = |a: &LinearRelation, b: &LinearRelation| -> Result<bool> {
            let cmp = a.relate(b, cfg)?;
            max_angle = max_angle.max(cmp.max_angle);
            Ok(cmp.is_equal())
        };
        let report = self.s.classify(cfg);
        let s_ok = report.is_symmetric && report.dom_perp_ran;
        let s_star_ok = eq(&self.s_star, &self.s.adjoint())?;
        let s_tilde_ok = eq(&self.s_tilde_star, &self.s_tilde.adjoint())?;
        let s0_star_ok = eq(&self.s0_star, &self.s0.adjoint())?;
        let fr_ok = eq(&self.s_f, &friedrichs_generic(&self.s, cfg)?)?;
        let kr_ok = eq(&self.s_k, &krein_generic(&self.s, cfg)?)?;
        let s0_ok = eq(&self.s0, &self.s_f.intersection(&self.s_k, cfg)?)?;
        let sum_ok = eq(&self.s0_star, &self.s_f.sum(&self.s_k, cfg)?)?;
        let trans_ok = eq(&self.s_star, &self.h.sum(&self.k, cfg)?)?;
        let defect = self.s_star.eigenspace(linalg::real(-1.0), cfg)?;
        let g_ok = defect.approx_eq(&self.g, cfg);
        Ok(LiftChecks {
            s_is_symmetric_with_orthogonal_parts: s_ok,
            s_star_matches_adjoint: s_star_ok,
            s_tilde_star_matches_adjoint: s_tilde_ok,
            s0_star_matches_adjoint: s0_star_ok,
            friedrichs_matches_generic: fr_ok,
            krein_matches_generic: kr_ok,
            s0_is_intersection: s0_ok,
            s0_star_is_sum: sum_ok,
            transversal: trans_ok,
            g_is_defect_space: g_ok,
            friedrichs_equals_krein: self.friedrichs_equals_krein(),
            max_angle,
        })
    }

    /// `S0* = S_F +̂ S_K` together with the transversality `S* = H +̂ K`.
    pub fn s0_adjoint_decomposition_check(&self, cfg: &ToleranceConfig) -> Result<bool> {
        let adj = self.s0.adjoint();
        let sum = self.s_f.sum(&self.s_k, cfg)?;
        let transversal = self.h.sum(&self.k, cfg)?;
        Ok(adj.approx_eq(&sum, cfg)
            && adj.approx_eq(&self.s0_star, cfg)
            && transversal.approx_eq(&self.s_star, cfg))
    }

    /// Selfadjoint extension of `S0` determined by a selfadjoint relation `Θ`
    /// in `𝒢₀`, given in coordinates of the fixed basis of `𝒢₀`:
    /// `(dom R ⊕ 0) × {0}  ⊕̂  Θ  ⊕̂  {0} × (0 ⊕ ran R)`.
    pub fn nonneg_extension(&self, theta: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
        let g0 = self.g0.dim();
        if theta.n1() != g0 || theta.n2() != g0 {
            return Err(dim_mismatch(format!(
                "parameter relation acts in C^{} -> C^{}, but dim 𝒢₀ = {g0}",
                theta.n1(),
                theta.n2()
            )));
        }
        if !theta.classify(cfg).is_selfadjoint {
            return Err(Error::NotSelfadjoint("parameter is not selfadjoint in 𝒢₀".into()));
        }
        let (n1, n2) = (self.n1(), self.n2());
        let n = n1 + n2;
        let b0 = self.g0.basis();
        let dom0 = Subspace::direct_sum(&self.dom_r, &Subspace::zero(n2));
        let mul0 = Subspace::direct_sum(&Subspace::zero(n1), &self.ran_r);
        let zero_part = linalg::vstack(&[dom0.basis(), &zeros(n, dom0.dim())]);
        let theta_part = linalg::vstack(&[&(b0 * theta.top()), &(b0 * theta.bottom())]);
        let mul_part = linalg::vstack(&[&zeros(n, mul0.dim()), mul0.basis()]);
        let stacked = linalg::hstack(&[&zero_part, &theta_part, &mul_part]);
        Ok(LinearRelation::from_graph_unchecked(
            Subspace::from_internal(&stacked, cfg),
            n,
            n,
        ))
    }

    /// Extremal extension for `Θ = L × (𝒢₀ ⊖ L)`, `L` given in `𝒢₀` coordinates.
    pub fn extremal_family(&self, l: &Subspace, cfg: &ToleranceConfig) -> Result<LinearRelation> {
        if l.ambient_dim() != self.g0.dim() {
            return Err(dim_mismatch(format!(
                "subspace of C^{} given, but dim 𝒢₀ = {}",
                l.ambient_dim(),
                self.g0.dim()
            )));
        }
        let theta = LinearRelation::product(l, &l.complement());
        self.nonneg_extension(&theta, cfg)
    }

    fn check_nonneg_extension(&self, a: &LinearRelation, cfg: &ToleranceConfig) -> Result<()> {
        if a.n1() != self.n() || a.n2() != self.n() {
            return Err(dim_mismatch("relation does not act in H1 ⊕ H2"));
        }
        let report = a.classify(cfg);
        if !report.is_selfadjoint || !report.is_nonnegative {
            return Err(Error::Precondition(
                "relation is not a nonnegative selfadjoint relation".into(),
            ));
        }
        if !self.s.is_restriction_of(a, cfg) {
            return Err(Error::Precondition("relation does not extend S".into()));
        }
        Ok(())
    }

    /// A nonnegative selfadjoint extension is extremal iff `dom A ⊥ ran A`.
    pub fn is_extremal(&self, a: &LinearRelation, cfg: &ToleranceConfig) -> Result<bool> {
        self.check_nonneg_extension(a, cfg)?;
        Ok(a.classify(cfg).dom_perp_ran)
    }

    /// Kreĭn's inequality `S_K ≤ A ≤ S_F` in resolvent form at `-1`.
    pub fn krein_order_check(&self, a: &LinearRelation, cfg: &ToleranceConfig) -> Result<KreinOrder> {
        self.check_nonneg_extension(a, cfg)?;
        let minus_one = linalg::real(-1.0);
        let rf = self.s_f.resolvent(minus_one, cfg)?;
        let ra = a.resolvent(minus_one, cfg)?;
        let rk = self.s_k.resolvent(minus_one, cfg)?;
        let lower = &ra - &rf;
        let upper = &rk - &ra;
        let defect = linalg::hermitian_defect(&lower).max(linalg::hermitian_defect(&upper));
        let lo = linalg::min_hermitian_eigenvalue(&lower);
        let up = linalg::min_hermitian_eigenvalue(&upper);
        Ok(KreinOrder {
            lower_min_eigenvalue: lo,
            upper_min_eigenvalue: up,
            hermitian_defect: defect,
            holds: defect <= cfg.angle_tol && lo >= cfg.psd_floor && up >= cfg.psd_floor,
        })
    }
}

fn require_zero_form(s: &LinearRelation, cfg: &ToleranceConfig) -> Result<()> {
    if !s.is_square() || !s.classify(cfg).dom_perp_ran {
        return Err(Error::Precondition(
            "the numerical range is not {0} (dom S is not orthogonal to ran S)".into(),
        ));
    }
    Ok(())
}

/// Friedrichs extension `{(h, k) ∈ S* : h ∈ dom S}` of a relation with
/// `dom S ⊥ ran S`.
pub fn friedrichs_generic(s: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
    require_zero_form(s, cfg)?;
    let n = s.n1();
    let restriction = LinearRelation::product(&s.dom(cfg), &Subspace::full(n));
    s.adjoint().intersection(&restriction, cfg)
}

/// Kreĭn-von Neumann extension `{(h, k) ∈ S* : k ∈ ran S}` of a relation
/// with `dom S ⊥ ran S`.
pub fn krein_generic(s: &LinearRelation, cfg: &ToleranceConfig) -> Result<LinearRelation> {
    require_zero_form(s, cfg)?;
    let n = s.n1();
    let restriction = LinearRelation::product(&Subspace::full(n), &s.ran(cfg));
    s.adjoint().intersection(&restriction, cfg)
}
