//! Dense complex helpers shared by the subspace and relation code.
//!
//! Everything here works on small `DMatrix<Complex<f64>>` values and treats
//! zero-sized matrices as ordinary inputs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Build a complex matrix from real row-major data.
pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMat {
    assert_eq!(data.len(), rows * cols, "real_matrix: data length mismatch");
    CMat::from_fn(rows, cols, |i, j| real(data[i * cols + j]))
}

pub fn real_vector(data: &[f64]) -> CVec {
    CVec::from_iterator(data.len(), data.iter().map(|&x| real(x)))
}

pub(crate) fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Thin singular value decomposition `a = u diag(s) v^H`, singular values
/// in decreasing order. Left vectors belonging to a zero singular value are
/// returned as zero columns.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

/// One-sided Jacobi SVD. Slower than bidiagonalization but accurate to
/// working precision for every singular value, which the rank decisions
/// in this crate rely on.
pub fn svd(a: &CMat) -> Svd {
    let (m, n) = a.shape();
    if m < n {
        let t = svd(&a.adjoint());
        return Svd { u: t.v, s: t.s, v: t.u };
    }
    let mut w = a.clone();
    let mut v = identity(n);
    for _sweep in 0..80 {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha = w.column(i).norm_squared();
                let beta = w.column(j).norm_squared();
                let gamma = w.column(i).dotc(&w.column(j));
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                rotate_columns(&mut w, i, j, phase, cs, sn);
                rotate_columns(&mut v, i, j, phase, cs, sn);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(usize, f64)> = (0..n).map(|j| (j, w.column(j).norm())).collect();
    order.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    let k = n.min(m);
    let mut u = CMat::zeros(m, k);
    let mut vs = CMat::zeros(n, k);
    let mut s = Vec::with_capacity(k);
    for (dst, &(j, sigma)) in order.iter().take(k).enumerate() {
        if sigma > 0.0 {
            u.set_column(dst, &(w.column(j) * real(1.0 / sigma)));
        }
        vs.set_column(dst, &v.column(j));
        s.push(sigma);
    }
    Svd { u, s, v: vs }
}

// Column j is first multiplied by conj(phase) so that the pair's inner
// product becomes real, then a real plane rotation makes them orthogonal.
fn rotate_columns(x: &mut CMat, i: usize, j: usize, phase: C64, cs: f64, sn: f64) {
    let ph = phase.conj();
    for r in 0..x.nrows() {
        let a = x[(r, i)];
        let b = x[(r, j)] * ph;
        x[(r, i)] = a * cs - b * sn;
        x[(r, j)] = a * sn + b * cs;
    }
}

/// Singular values of `a` (empty for zero-sized input).
pub fn singular_values(a: &CMat) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    svd(a).s
}

pub fn spectral_norm(a: &CMat) -> f64 {
    singular_values(a).into_iter().fold(0.0, f64::max)
}

/// Orthonormal basis of the column span of `a`, keeping singular directions
/// whose singular value exceeds `threshold`. Columns are ordered by
/// decreasing singular value.
pub(crate) fn orth(a: &CMat, threshold: f64) -> CMat {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return CMat::zeros(m, 0);
    }
    let d = svd(a);
    let keep = d.s.iter().take_while(|&&x| x > threshold).count();
    d.u.columns(0, keep).into_owned()
}

pub(crate) fn select_columns(a: &CMat, cols: impl IntoIterator<Item = usize>) -> CMat {
    let cols: Vec<usize> = cols.into_iter().collect();
    CMat::from_fn(a.nrows(), cols.len(), |i, j| a[(i, cols[j])])
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns of `q` inside `C^n`.
pub(crate) fn complement_of_orthonormal(q: &CMat) -> CMat {
    let n = q.nrows();
    let r = q.ncols();
    if r == 0 {
        return identity(n);
    }
    if r >= n {
        return CMat::zeros(n, 0);
    }
    // The projector onto the complement has singular values 1 (kept) and 0.
    let p = identity(n) - q * q.adjoint();
    orth(&p, 0.5)
}

/// Orthonormal basis of the null space of `a` (a subspace of `C^{ncols}`).
/// Singular values at most `rank_tol * max(sigma_max, 1)` are treated as zero.
pub(crate) fn null_space(a: &CMat, rank_tol: f64) -> CMat {
    let n = a.ncols();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return identity(n);
    }
    let ah = a.adjoint();
    let smax = spectral_norm(&ah);
    let row_space = orth(&ah, rank_tol * smax.max(1.0));
    complement_of_orthonormal(&row_space)
}

/// Largest deviation of `q^H q` from the identity.
pub fn orthonormality_residual(q: &CMat) -> f64 {
    if q.ncols() == 0 {
        return 0.0;
    }
    let g = q.adjoint() * q - identity(q.ncols());
    max_abs(&g)
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues (ascending) of the Hermitian part of a square matrix.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let h = hermitian_part(a);
    let n = h.nrows();
    // Real symmetric embedding [[Re, -Im], [Im, Re]] carries every eigenvalue
    // of `h` twice.
    let mut e = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    jacobi_symmetric(&mut e);
    let mut ev: Vec<f64> = e.diagonal().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

// Cyclic Jacobi rotations until the off-diagonal part is negligible; the
// diagonal then holds the eigenvalues.
fn jacobi_symmetric(a: &mut nalgebra::DMatrix<f64>) {
    let n = a.nrows();
    for _sweep in 0..80 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        let diag: f64 = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum();
        if off <= f64::EPSILON * f64::EPSILON * (diag + off) || off == 0.0 {
            return;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (x, y) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * x - s * y;
                    a[(k, q)] = s * x + c * y;
                }
                for k in 0..n {
                    let (x, y) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * x - s * y;
                    a[(q, k)] = s * x + c * y;
                }
            }
        }
    }
}

pub fn hermitian_part(a: &CMat) -> CMat {
    (a + a.adjoint()) * real(0.5)
}

/// `max |a - a^H|`, zero for an exactly Hermitian matrix.
pub fn hermitian_defect(a: &CMat) -> f64 {
    max_abs(&(a - a.adjoint()))
}

/// Smallest eigenvalue of the Hermitian part; `+inf` for an empty matrix.
pub fn min_hermitian_eigenvalue(a: &CMat) -> f64 {
    hermitian_eigenvalues(a)
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// Rows `start..start+len` of `a`.
pub(crate) fn row_block(a: &CMat, start: usize, len: usize) -> CMat {
    a.rows(start, len).into_owned()
}

/// Stack matrices with equal column counts on top of each other.
pub fn vstack(blocks: &[&CMat]) -> CMat {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        assert_eq!(b.ncols(), cols, "vstack: column mismatch");
        out.view_mut((r, 0), (b.nrows(), cols)).copy_from(*b);
        r += b.nrows();
    }
    out
}

/// Place matrices side by side.
pub fn hstack(blocks: &[&CMat]) -> CMat {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut c0 = 0;
    for b in blocks {
        assert_eq!(b.nrows(), rows, "hstack: row mismatch");
        out.view_mut((0, c0), (rows, b.ncols())).copy_from(*b);
        c0 += b.ncols();
    }
    out
}

/// Block-diagonal arrangement.
pub fn block_diag(blocks: &[&CMat]) -> CMat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let (mut r, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r, c0), (b.nrows(), b.ncols())).copy_from(*b);
        r += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// Inverse of a square matrix, or `None` when its smallest singular value
/// is at most `threshold`.
pub(crate) fn checked_inverse(a: &CMat, threshold: f64) -> Option<CMat> {
    let n = a.nrows();
    if n != a.ncols() {
        return None;
    }
    if n == 0 {
        return Some(CMat::zeros(0, 0));
    }
    let sv = singular_values(a);
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if smin <= threshold {
        return None;
    }
    a.clone().lu().try_inverse()
}
