//! Brute-force references for the test suite.
//!
//! Nothing here calls the adjoint, symmetry or subspace-comparison code of
//! the main modules: bases are orthonormalized by pivoted Gram-Schmidt and
//! containment is measured by explicit projection residuals. Seeded random
//! generators for relations and boundary parameters live here as well.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::boundary::{BoundaryTriplet, TripletKind};
use crate::error::Result;
use crate::extension::LiftBundle;
use crate::linalg::{self, C64, CMat, CVec};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::ToleranceConfig;

/// Orthonormal basis of the column span by modified Gram-Schmidt with
/// column pivoting and one reorthogonalization pass. Columns whose residual
/// norm drops to `threshold` or below are discarded.
pub fn gram_schmidt(a: &CMat, threshold: f64) -> CMat {
    let m = a.nrows();
    let mut work: Vec<CVec> = a.column_iter().map(|c| c.into_owned()).collect();
    let mut basis: Vec<CVec> = Vec::new();
    while !work.is_empty() {
        let (idx, best) = work
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= threshold {
            break;
        }
        let mut q = work.swap_remove(idx);
        for _ in 0..2 {
            for b in &basis {
                let p = b.dotc(&q);
                q -= b * p;
            }
        }
        let norm = q.norm();
        if norm <= threshold {
            continue;
        }
        q /= C64::new(norm, 0.0);
        for v in work.iter_mut() {
            let p = q.dotc(v);
            *v -= &q * p;
        }
        basis.push(q);
    }
    let mut out = CMat::zeros(m, basis.len());
    for (j, b) in basis.iter().enumerate() {
        out.set_column(j, b);
    }
    out
}

/// Orthonormal basis of `{x : a x = 0}` for a matrix with orthonormal rows:
/// `I − aᴴa` is then the projector onto the null space.
fn null_of_orthonormal_rows(a: &CMat) -> CMat {
    let n = a.ncols();
    let p = CMat::identity(n, n) - a.adjoint() * a;
    // Every nonzero projector column has norm² ≥ rank / n before deflation,
    // and the same bound holds for the deflated remainder.
    gram_schmidt(&p, 0.5 / (n.max(1) as f64).sqrt())
}

/// `max ‖(I − QQᴴ) v‖` over the columns `v` of `small`, `Q` an orthonormal
/// basis of the span of `big`.
pub fn containment_residual(small: &CMat, big: &CMat) -> f64 {
    let q = gram_schmidt(big, 1e-10);
    let res = small - &q * (q.adjoint() * small);
    res.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Graph equality by mutual containment of orthonormalized bases.
pub fn same_graph(a: &LinearRelation, b: &LinearRelation, tol: f64) -> bool {
    let qa = gram_schmidt(a.graph().basis(), 1e-10);
    let qb = gram_schmidt(b.graph().basis(), 1e-10);
    qa.ncols() == qb.ncols() && containment_residual(&qa, &qb) <= tol && containment_residual(&qb, &qa) <= tol
}

/// `R* = {(h, k) : ⟨k, f⟩ = ⟨h, g⟩ for all (f, g) ∈ R}`, solved as the null
/// space of `[−Gᴴ, Fᴴ]` over the orthonormalized graph basis `[F; G]`.
pub fn adjoint_definitional(r: &LinearRelation) -> LinearRelation {
    let (n1, n2) = (r.n1(), r.n2());
    let q = gram_schmidt(r.graph().basis(), 1e-10);
    let f = q.rows(0, n1).into_owned();
    let g = q.rows(n1, n2).into_owned();
    let a = linalg::hstack(&[&(-g.adjoint()), &f.adjoint()]);
    let null = null_of_orthonormal_rows(&a);
    LinearRelation::from_graph(Subspace::from_orthonormal(null).expect("orthonormal"), n2, n1)
        .expect("graph lives in C^{n2+n1}")
}

/// Monte-Carlo sample of `{⟨g, f⟩ / ‖f‖² : (f, g) ∈ R, f ≠ 0}` drawn from
/// Gaussian graph coefficients. A purely multivalued relation yields `{0}`.
pub fn numerical_range_hull(r: &LinearRelation, samples: usize, seed: u64) -> Vec<C64> {
    let n1 = r.n1();
    let basis = r.graph().basis();
    let f = basis.rows(0, n1).into_owned();
    let g = basis.rows(n1, r.n2()).into_owned();
    if f.ncols() == 0 || f.iter().all(|z| z.norm() < 1e-12) {
        return vec![C64::new(0.0, 0.0)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = f.ncols();
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let z = random_cvec(&mut rng, d);
        let fz = &f * &z;
        let nf = fz.norm_squared();
        if nf < 1e-20 {
            continue;
        }
        out.push(fz.dotc(&(&g * &z)) / nf);
    }
    out
}

/// Symmetry by direct evaluation: `⟨g, f⟩` is real on every graph vector,
/// i.e. `FᴴG` Hermitian, and selfadjointness adds `dim = n`.
pub fn is_selfadjoint_direct(a: &LinearRelation, tol: f64) -> bool {
    if a.n1() != a.n2() {
        return false;
    }
    let n = a.n1();
    let q = gram_schmidt(a.graph().basis(), 1e-10);
    if q.ncols() != n {
        return false;
    }
    let f = q.rows(0, n).into_owned();
    let g = q.rows(n, n).into_owned();
    let cross = f.adjoint() * g;
    linalg::max_abs(&(&cross - cross.adjoint())) <= tol
}

/// Green identity checked pair by pair on random unit elements of the star
/// relation; returns the largest discrepancy.
pub fn green_residual_sampled(t: &BoundaryTriplet, pairs: usize, seed: u64) -> f64 {
    let y = t.star_relation().graph().basis();
    let m = t.star_relation().n1();
    let d = y.ncols();
    if d == 0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let a = random_cvec(&mut rng, d).normalize();
        let b = random_cvec(&mut rng, d).normalize();
        let fa = y * &a;
        let hb = y * &b;
        let (f, fp) = (fa.rows(0, m), fa.rows(m, m));
        let (h, hp) = (hb.rows(0, m), hb.rows(m, m));
        let lhs = h.dotc(&fp) - hp.dotc(&f);
        let (g0a, g1a) = (t.gamma0() * &a, t.gamma1() * &a);
        let (g0b, g1b) = (t.gamma0() * &b, t.gamma1() * &b);
        let rhs = g0b.dotc(&g1a) - g1b.dotc(&g0a);
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry {
    pub theta_selfadjoint: bool,
    pub extension_selfadjoint: bool,
    pub between_s_and_star: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    /// Distinct parameters gave distinct extensions.
    pub injective: bool,
    /// Every selfadjoint parameter gave a selfadjoint extension and every
    /// non-selfadjoint one a non-selfadjoint extension.
    pub selfadjointness_preserved: bool,
    pub all_between: bool,
}

/// Runs `Θ ↦ A_Θ` over a list of parameters and checks the correspondence
/// with the reference tests above.
pub fn extension_sweep(
    bundle: &LiftBundle,
    kind: TripletKind,
    thetas: &[LinearRelation],
    cfg: &ToleranceConfig,
) -> Result<SweepReport> {
    let t = BoundaryTriplet::of_kind(kind, bundle, cfg);
    let op_part;
    let inner = match kind {
        TripletKind::Main => &bundle.s,
        TripletKind::Tilde => &bundle.s_tilde,
        TripletKind::Basic => &bundle.s0,
        TripletKind::BasicOp => {
            // (S0)_op = (dom R ⊕ 0) × {0}, the part of S0 inside H0.
            let dom = Subspace::direct_sum(&bundle.dom_r, &Subspace::zero(bundle.n2()));
            op_part = LinearRelation::product(&dom, &Subspace::zero(bundle.n()));
            &op_part
        }
    };
    let star_basis = t.star_relation().graph().basis().clone();
    let space = t.space_basis();
    let inner_local = linalg::block_diag(&[space, space]).adjoint() * inner.graph().basis();
    let tol = cfg.angle_tol;
    let mut entries = Vec::with_capacity(thetas.len());
    let mut extensions = Vec::with_capacity(thetas.len());
    for theta in thetas {
        let a = t.extension_from_boundary(theta, cfg)?;
        let ab = a.graph().basis();
        entries.push(SweepEntry {
            theta_selfadjoint: is_selfadjoint_direct(theta, tol),
            extension_selfadjoint: is_selfadjoint_direct(&a, tol),
            between_s_and_star: containment_residual(&inner_local, ab) <= tol
                && containment_residual(ab, &star_basis) <= tol,
        });
        extensions.push(a);
    }
    let mut injective = true;
    for i in 0..thetas.len() {
        for j in i + 1..thetas.len() {
            let same_theta = same_graph(&thetas[i], &thetas[j], tol);
            let same_ext = same_graph(&extensions[i], &extensions[j], tol);
            if same_ext && !same_theta {
                injective = false;
            }
        }
    }
    Ok(SweepReport {
        selfadjointness_preserved: entries.iter().all(|e| e.theta_selfadjoint == e.extension_selfadjoint),
        all_between: entries.iter().all(|e| e.between_s_and_star),
        entries,
        injective,
    })
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_c64<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

pub fn random_cvec<R: Rng>(rng: &mut R, n: usize) -> CVec {
    CVec::from_fn(n, |_, _| random_c64(rng))
}

pub fn random_cmat<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| random_c64(rng))
}

/// Random `dim`-dimensional subspace of `C^n`.
pub fn random_subspace<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Subspace {
    let dim = dim.min(n);
    Subspace::from_orthonormal(gram_schmidt(&random_cmat(rng, n, dim), 1e-8)).expect("orthonormal")
}

/// Random relation `C^{n1} -> C^{n2}` whose graph is spanned by `generic`
/// generic pairs, `multi` pairs `(0, g)` and `kernel` pairs `(f, 0)`.
pub fn random_relation_shaped<R: Rng>(
    rng: &mut R,
    n1: usize,
    n2: usize,
    generic: usize,
    multi: usize,
    kernel: usize,
) -> LinearRelation {
    let gen = random_cmat(rng, n1 + n2, generic);
    let mul = linalg::vstack(&[&CMat::zeros(n1, multi), &random_cmat(rng, n2, multi)]);
    let ker = linalg::vstack(&[&random_cmat(rng, n1, kernel), &CMat::zeros(n2, kernel)]);
    let all = linalg::hstack(&[&gen, &mul, &ker]);
    let q = gram_schmidt(&all, 1e-8);
    LinearRelation::from_graph(Subspace::from_orthonormal(q).expect("orthonormal"), n1, n2)
        .expect("graph lives in C^{n1+n2}")
}

/// Random relation with `1 ≤ n1, n2 ≤ max_dim` and a random mix of generic,
/// multivalued and kernel directions; graph dimensions range from 0 to full.
pub fn random_relation<R: Rng>(rng: &mut R, max_dim: usize) -> LinearRelation {
    let n1 = rng.random_range(1..=max_dim);
    let n2 = rng.random_range(1..=max_dim);
    random_relation_dims(rng, n1, n2)
}

/// Random relation `C^{n1} -> C^{n2}` with a random mix of generic,
/// multivalued and kernel directions.
pub fn random_relation_dims<R: Rng>(rng: &mut R, n1: usize, n2: usize) -> LinearRelation {
    let total = rng.random_range(0..=n1 + n2);
    let multi = rng.random_range(0..=total.min(n2));
    let kernel = rng.random_range(0..=(total - multi).min(n1));
    random_relation_shaped(rng, n1, n2, total - multi - kernel, multi, kernel)
}

/// Random Hermitian matrix with eigenvalues drawn from `[lo, hi]`.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> CMat {
    let q = gram_schmidt(&random_cmat(rng, n, n), 1e-8);
    let d = CMat::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(rng.random_range(lo..=hi), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    &q * d * q.adjoint()
}

/// Selfadjoint relation in `C^g`: a Hermitian operator with spectrum in
/// `[lo, hi]` on a random subspace `L`, multivalued on `L^⊥`.
pub fn random_selfadjoint_relation<R: Rng>(rng: &mut R, g: usize, lo: f64, hi: f64) -> LinearRelation {
    let l_dim = rng.random_range(0..=g);
    let l = random_subspace(rng, g, l_dim);
    let h = random_hermitian(rng, l_dim, lo, hi);
    let lb = l.basis();
    let op_part = linalg::vstack(&[lb, &(lb * h)]);
    let perp = Subspace::from_orthonormal(null_of_orthonormal_rows(&lb.adjoint())).expect("orthonormal");
    let mul_part = linalg::vstack(&[&CMat::zeros(g, perp.dim()), perp.basis()]);
    let all = linalg::hstack(&[&op_part, &mul_part]);
    let q = gram_schmidt(&all, 1e-10);
    LinearRelation::from_graph(Subspace::from_orthonormal(q).expect("orthonormal"), g, g).expect("square")
}

/// Random Hermitian operator on `C^g` with spectrum in `[lo, hi]`.
pub fn random_selfadjoint_operator<R: Rng>(rng: &mut R, g: usize, lo: f64, hi: f64) -> LinearRelation {
    LinearRelation::from_operator(&random_hermitian(rng, g, lo, hi))
}

/// Random non-selfadjoint operator on `C^g` (`g ≥ 1`).
pub fn random_non_selfadjoint<R: Rng>(rng: &mut R, g: usize) -> LinearRelation {
    let h = random_hermitian(rng, g, -1.0, 1.0);
    let skew = random_hermitian(rng, g, 0.5, 1.5) * C64::new(0.0, 1.0);
    LinearRelation::from_operator(&(h + skew))
}
