//! Closed subspaces of `C^n` held by an orthonormal basis.
//!
//! Equality is never decided by comparing bases. Two subspaces are equal when
//! their largest principal angle is below `angle_tol`, and inclusion is
//! measured by the sine of the largest angle between the smaller space and
//! its projection onto the larger one.

use serde::Serialize;

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone)]
pub struct Subspace {
    basis: CMat,
}

/// Outcome of comparing two subspaces of the same ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inclusion {
    Equal,
    /// The first subspace is a proper subspace of the second.
    Subset,
    /// The second subspace is a proper subspace of the first.
    Superset,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub verdict: Inclusion,
    /// Largest principal angle between the lower-dimensional space and the
    /// other one, in radians.
    pub max_angle: f64,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.verdict == Inclusion::Equal
    }

    /// First space contained in the second (possibly equal).
    pub fn is_contained(&self) -> bool {
        matches!(self.verdict, Inclusion::Equal | Inclusion::Subset)
    }

    /// First space contains the second (possibly equal).
    pub fn contains(&self) -> bool {
        matches!(self.verdict, Inclusion::Equal | Inclusion::Superset)
    }
}

impl Subspace {
    /// The zero subspace `{0}` of `C^n`.
    pub fn zero(n: usize) -> Self {
        Self {
            basis: CMat::zeros(n, 0),
        }
    }

    /// The whole space `C^n`.
    pub fn full(n: usize) -> Self {
        Self {
            basis: linalg::identity(n),
        }
    }

    /// Span of the listed standard basis vectors `e_i`.
    pub fn coordinate(n: usize, indices: &[usize]) -> Result<Self> {
        let mut basis = CMat::zeros(n, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            if i >= n {
                return Err(dim_mismatch(format!("coordinate index {i} out of range for C^{n}")));
            }
            basis[(i, j)] = linalg::ONE;
        }
        Self::from_orthonormal(basis)
    }

    /// Wrap a basis that is already orthonormal (checked to 1e-10).
    pub fn from_orthonormal(basis: CMat) -> Result<Self> {
        let residual = linalg::orthonormality_residual(&basis);
        if residual > 1e-10 {
            return Err(Error::NotOrthonormal(residual));
        }
        Ok(Self { basis })
    }

    pub(crate) fn from_orthonormal_unchecked(basis: CMat) -> Self {
        debug_assert!(linalg::orthonormality_residual(&basis) < 1e-8);
        Self { basis }
    }

    /// Column span of `mat`; numerical rank is decided relative to the
    /// largest singular value.
    pub fn from_columns(mat: &CMat, cfg: &ToleranceConfig) -> Self {
        let smax = linalg::spectral_norm(mat);
        if smax == 0.0 {
            return Self::zero(mat.nrows());
        }
        Self {
            basis: linalg::orth(mat, cfg.rank_tol * smax),
        }
    }

    /// Span of a list of vectors in `C^ambient`.
    pub fn span(ambient: usize, vectors: &[CVec], cfg: &ToleranceConfig) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(dim_mismatch(format!(
                "vector of length {} in span over C^{ambient}",
                v.len()
            )));
        }
        let mat = CMat::from_fn(ambient, vectors.len(), |i, j| vectors[j][i]);
        Ok(Self::from_columns(&mat, cfg))
    }

    /// Span of internally assembled columns whose natural scale is 1.
    pub(crate) fn from_internal(mat: &CMat, cfg: &ToleranceConfig) -> Self {
        let smax = linalg::spectral_norm(mat);
        Self {
            basis: linalg::orth(mat, cfg.abs_rank(smax)),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn into_basis(self) -> CMat {
        self.basis
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }

    pub fn project(&self, v: &CVec) -> CVec {
        &self.basis * (self.basis.adjoint() * v)
    }

    /// Whether `v` lies in the subspace up to a relative residual of `angle_tol`.
    pub fn contains_vector(&self, v: &CVec, cfg: &ToleranceConfig) -> bool {
        let norm = v.norm();
        if norm == 0.0 {
            return true;
        }
        (v - self.project(v)).norm() <= cfg.angle_tol * norm
    }

    pub fn complement(&self) -> Self {
        Self {
            basis: linalg::complement_of_orthonormal(&self.basis),
        }
    }

    fn check_ambient(&self, other: &Self, op: &str) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(dim_mismatch(format!(
                "{op}: ambient dimensions {} and {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Closure of the sum `U + V`.
    pub fn join(&self, other: &Self, cfg: &ToleranceConfig) -> Result<Self> {
        self.check_ambient(other, "join")?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let stacked = linalg::hstack(&[&self.basis, &other.basis]);
        Ok(Self::from_internal(&stacked, cfg))
    }

    /// Intersection `U ∩ V`, from the null space of `[Q_U, -Q_V]`.
    ///
    /// A principal angle `θ` contributes a singular value `sqrt(1 - cos θ)`,
    /// which is linear in `θ` near zero, so near-intersections are resolved
    /// at the rank tolerance rather than its square root.
    pub fn meet(&self, other: &Self, cfg: &ToleranceConfig) -> Result<Self> {
        self.check_ambient(other, "meet")?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim()));
        }
        let system = linalg::hstack(&[&self.basis, &(-&other.basis)]);
        let null = linalg::null_space(&system, cfg.rank_tol);
        if null.ncols() == 0 {
            return Ok(Self::zero(self.ambient_dim()));
        }
        let du = self.dim();
        let dv = other.dim();
        let a = linalg::row_block(&null, 0, du);
        let b = linalg::row_block(&null, du, dv);
        // Average both representations of each intersection vector.
        let vectors = (&self.basis * a + &other.basis * b) * linalg::real(0.5);
        // Exact intersection vectors have norm 1/sqrt(2) here.
        Ok(Self {
            basis: linalg::orth(&vectors, 0.25),
        })
    }

    /// Sine of the largest angle between vectors of `self` and the space
    /// `other`: `|| (I - P_other) Q_self ||_2`. Zero iff `self ⊂ other`.
    pub fn gap_to(&self, other: &Self) -> Result<f64> {
        self.check_ambient(other, "gap")?;
        if self.is_zero() {
            return Ok(0.0);
        }
        let residual = &self.basis - other.basis() * (other.basis().adjoint() * &self.basis);
        Ok(linalg::spectral_norm(&residual).min(1.0))
    }

    pub fn relate(&self, other: &Self, cfg: &ToleranceConfig) -> Result<Comparison> {
        self.check_ambient(other, "relate")?;
        let (du, dv) = (self.dim(), other.dim());
        let comparison = if du == dv {
            let s = self.gap_to(other)?.max(other.gap_to(self)?);
            let angle = s.asin();
            Comparison {
                verdict: if angle < cfg.angle_tol {
                    Inclusion::Equal
                } else {
                    Inclusion::Incomparable
                },
                max_angle: angle,
            }
        } else if du < dv {
            let angle = self.gap_to(other)?.asin();
            Comparison {
                verdict: if angle < cfg.angle_tol {
                    Inclusion::Subset
                } else {
                    Inclusion::Incomparable
                },
                max_angle: angle,
            }
        } else {
            let angle = other.gap_to(self)?.asin();
            Comparison {
                verdict: if angle < cfg.angle_tol {
                    Inclusion::Superset
                } else {
                    Inclusion::Incomparable
                },
                max_angle: angle,
            }
        };
        Ok(comparison)
    }

    /// Equality by principal angles; subspaces of different ambient
    /// dimension are never equal.
    pub fn approx_eq(&self, other: &Self, cfg: &ToleranceConfig) -> bool {
        self.relate(other, cfg).map(|c| c.is_equal()).unwrap_or(false)
    }

    pub fn is_subspace_of(&self, other: &Self, cfg: &ToleranceConfig) -> bool {
        self.relate(other, cfg)
            .map(|c| c.is_contained())
            .unwrap_or(false)
    }

    /// `(U ⊕ V)` as a subspace of `C^{m+n}`: pairs `(u, v)` with `u ∈ U`, `v ∈ V`.
    pub fn direct_sum(first: &Self, second: &Self) -> Self {
        Self {
            basis: linalg::block_diag(&[&first.basis, &second.basis]),
        }
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &CMat, cfg: &ToleranceConfig) -> Result<Self> {
        if map.ncols() != self.ambient_dim() {
            return Err(dim_mismatch(format!(
                "image: map with {} columns applied to C^{}",
                map.ncols(),
                self.ambient_dim()
            )));
        }
        Ok(Self::from_internal(&(map * &self.basis), cfg))
    }

    /// Coordinates of `self` with respect to the orthonormal basis of `outer`,
    /// as a subspace of `C^{dim outer}`. Requires `self ⊂ outer`.
    pub fn coordinates_in(&self, outer: &Self, cfg: &ToleranceConfig) -> Result<Self> {
        if !self.is_subspace_of(outer, cfg) {
            return Err(Error::Precondition(
                "subspace is not contained in the reference space".into(),
            ));
        }
        Ok(Self::from_internal(&(outer.basis.adjoint() * &self.basis), cfg))
    }

    /// Inverse of [`Subspace::coordinates_in`]: the subspace of the ambient
    /// space of `outer` whose coordinates are `coords`.
    pub fn from_coordinates(outer: &Self, coords: &Self) -> Result<Self> {
        if coords.ambient_dim() != outer.dim() {
            return Err(dim_mismatch(format!(
                "coordinates in C^{} for a {}-dimensional space",
                coords.ambient_dim(),
                outer.dim()
            )));
        }
        Ok(Self {
            basis: &outer.basis * &coords.basis,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_vector, C64};
    use std::f64::consts::FRAC_PI_4;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn span_of(n: usize, vs: &[&[f64]]) -> Subspace {
        let vs: Vec<CVec> = vs.iter().map(|v| real_vector(v)).collect();
        Subspace::span(n, &vs, &cfg()).unwrap()
    }

    #[test]
    fn span_identity_is_full() {
        let s = span_of(2, &[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(s.is_full());
    }

    #[test]
    fn span_collinear_is_a_line() {
        let s = span_of(2, &[&[1.0, 1.0], &[2.0, 2.0]]);
        assert_eq!(s.dim(), 1);
        let expected = span_of(2, &[&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]]);
        assert!(s.approx_eq(&expected, &cfg()));
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::span(3, &[], &cfg()).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient_dim(), 3);
    }

    #[test]
    fn span_rejects_mismatched_lengths() {
        let vs = vec![real_vector(&[1.0, 0.0]), real_vector(&[1.0, 0.0, 0.0])];
        assert!(matches!(
            Subspace::span(2, &vs, &cfg()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn complement_examples() {
        let c = span_of(2, &[&[1.0, 0.0]]).complement();
        assert!(c.approx_eq(&span_of(2, &[&[0.0, 1.0]]), &cfg()));

        assert!(Subspace::zero(3).complement().is_full());

        let u = span_of(2, &[&[1.0, 1.0]]);
        let v = u.complement();
        assert!(linalg::max_abs(&(u.basis().adjoint() * v.basis())) < 1e-15);
        assert!(v.approx_eq(&span_of(2, &[&[1.0, -1.0]]), &cfg()));
    }

    #[test]
    fn meet_and_join_examples() {
        let e1 = span_of(2, &[&[1.0, 0.0]]);
        let e2 = span_of(2, &[&[0.0, 1.0]]);
        assert!(e1.meet(&e2, &cfg()).unwrap().is_zero());
        assert!(e1.join(&e2, &cfg()).unwrap().is_full());

        let line = span_of(2, &[&[1.0, 1.0]]);
        let plane = span_of(2, &[&[1.0, 1.0], &[1.0, 0.0]]);
        let m = line.meet(&plane, &cfg()).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.approx_eq(&line, &cfg()));
    }

    #[test]
    fn meet_rejects_ambient_mismatch() {
        assert!(Subspace::full(2).meet(&Subspace::full(3), &cfg()).is_err());
        assert!(Subspace::full(2).join(&Subspace::full(3), &cfg()).is_err());
    }

    #[test]
    fn relate_examples() {
        let e1 = span_of(2, &[&[1.0, 0.0]]);
        let r = e1.relate(&Subspace::full(2), &cfg()).unwrap();
        assert_eq!(r.verdict, Inclusion::Subset);
        assert!(r.max_angle < 1e-15);

        assert_eq!(e1.relate(&e1, &cfg()).unwrap().verdict, Inclusion::Equal);

        let diag = span_of(2, &[&[1.0, 1.0]]);
        let r = e1.relate(&diag, &cfg()).unwrap();
        assert_eq!(r.verdict, Inclusion::Incomparable);
        assert!((r.max_angle - FRAC_PI_4).abs() < 1e-12);

        let r = Subspace::full(2).relate(&e1, &cfg()).unwrap();
        assert_eq!(r.verdict, Inclusion::Superset);
    }

    #[test]
    fn zero_subspaces_compare_equal() {
        let r = Subspace::zero(3).relate(&Subspace::zero(3), &cfg()).unwrap();
        assert!(r.is_equal());
    }

    #[test]
    fn complex_phases_do_not_matter() {
        let v = CVec::from_vec(vec![C64::new(0.0, 1.0), C64::new(0.0, 1.0)]);
        let s = Subspace::span(2, &[v], &cfg()).unwrap();
        assert!(s.approx_eq(&span_of(2, &[&[1.0, 1.0]]), &cfg()));
    }

    #[test]
    fn coordinates_round_trip() {
        let outer = span_of(3, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 1.0]]);
        let inner = span_of(3, &[&[0.0, 1.0, 1.0]]);
        let coords = inner.coordinates_in(&outer, &cfg()).unwrap();
        assert_eq!(coords.ambient_dim(), 2);
        let back = Subspace::from_coordinates(&outer, &coords).unwrap();
        assert!(back.approx_eq(&inner, &cfg()));
        assert!(span_of(3, &[&[0.0, 0.0, 1.0]])
            .coordinates_in(&outer, &cfg())
            .is_err());
    }
}
