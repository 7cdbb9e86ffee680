//! Dense complex linear algebra on `C^|X|`.
//!
//! Functions on `X` are column vectors. The `L²(μ)` inner product for the
//! uniform probability measure is `[f, g] = (1/|X|) Σ f(x) conj(g(x))`; it is a
//! scalar multiple of the Euclidean one, so orthogonal projectors agree and
//! subspace bases are stored Euclidean-orthonormal.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Default tolerance for rank decisions and subspace comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative gap under which eigenvalues are treated as one cluster.
pub const CLUSTER_REL: f64 = 1e-7;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus. All residuals in this crate use this norm.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn ensure_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn weighted_inner(f: &CVector, g: &CVector) -> Complex64 {
    let n = f.len() as f64;
    f.iter().zip(g.iter()).map(|(a, b)| a * b.conj()).sum::<Complex64>() / n
}

pub fn weighted_norm(f: &CVector) -> f64 {
    weighted_inner(f, f).re.max(0.0).sqrt()
}

/// Eigenvalues in ascending order with a unitary matrix of eigenvectors.
pub fn hermitian_eig(m: &CMatrix, tol: f64) -> Result<(Vec<f64>, CMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    ensure_finite(m)?;
    let residual = max_abs(&(m - m.adjoint()));
    if residual > tol * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    Ok((values, vectors))
}

/// Groups ascending eigenvalues whose consecutive gaps are within
/// `CLUSTER_REL · max(1, scale)`. Returns index ranges into the input.
pub fn cluster_eigenvalues(values: &[f64], scale: f64) -> Vec<std::ops::Range<usize>> {
    let gap = CLUSTER_REL * scale.max(1.0);
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// A subspace of `C^n` held as an orthonormal column basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: CMatrix,
    tol: f64,
}

impl Subspace {
    /// Wraps columns that are already orthonormal, checking it.
    pub fn from_orthonormal(basis: CMatrix, tol: f64) -> Result<Self> {
        ensure_finite(&basis)?;
        let gram = basis.adjoint() * &basis;
        let dev = max_abs(&(gram - CMatrix::identity(basis.ncols(), basis.ncols())));
        if dev > tol {
            return Err(Error::InternalInconsistency(format!(
                "basis is not orthonormal (deviation {dev:e})"
            )));
        }
        Ok(Self { basis, tol })
    }

    pub fn zero(ambient_dim: usize, tol: f64) -> Self {
        Self {
            basis: CMatrix::zeros(ambient_dim, 0),
            tol,
        }
    }

    pub fn full(ambient_dim: usize, tol: f64) -> Self {
        Self {
            basis: CMatrix::identity(ambient_dim, ambient_dim),
            tol,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `max |((I - P) v)(x)|` over the columns of `v`.
    pub fn distance(&self, v: &CMatrix) -> f64 {
        let coords = self.basis.adjoint() * v;
        max_abs(&(v - &self.basis * coords))
    }
}

/// Modified Gram–Schmidt with one reorthogonalization pass. A column is
/// dropped when its deflated norm is at most `tol · max(1, original norm)`.
pub fn orthonormalize(vectors: &CMatrix, tol: f64) -> Subspace {
    let n = vectors.nrows();
    let mut kept: Vec<CVector> = Vec::new();
    for j in 0..vectors.ncols() {
        let mut v: CVector = vectors.column(j).into_owned();
        let original = v.norm();
        for _pass in 0..2 {
            for q in &kept {
                let proj = q.dotc(&v);
                v.axpy(-proj, q, Complex64::new(1.0, 0.0));
            }
        }
        let norm = v.norm();
        if norm > tol * original.max(1.0) {
            kept.push(v.unscale(norm));
        }
    }
    let basis = if kept.is_empty() {
        CMatrix::zeros(n, 0)
    } else {
        CMatrix::from_columns(&kept)
    };
    Subspace { basis, tol }
}

fn check_same_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(())
}

/// Intersection via the eigenvalue-1 eigenspace of `P_a P_b P_a`, computed in
/// the coordinates of `a`'s basis (where it is `Aᴴ P_b A`).
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_same_ambient(a, b)?;
    let tol = a.tol.max(b.tol);
    if a.rank() == 0 || b.rank() == 0 {
        return Ok(Subspace::zero(a.ambient_dim(), tol));
    }
    let coords = b.basis.adjoint() * &a.basis;
    let compressed = coords.adjoint() * coords;
    let (values, vectors) = hermitian_eig(&compressed, tol)?;
    let keep: Vec<usize> = (0..values.len()).filter(|&i| values[i] >= 1.0 - tol).collect();
    let cols: Vec<CVector> = keep.iter().map(|&i| &a.basis * vectors.column(i)).collect();
    let basis = if cols.is_empty() {
        CMatrix::zeros(a.ambient_dim(), 0)
    } else {
        CMatrix::from_columns(&cols)
    };
    Ok(Subspace { basis, tol })
}

pub fn projector(s: &Subspace) -> CMatrix {
    &s.basis * s.basis.adjoint()
}

pub fn subspace_equal(a: &Subspace, b: &Subspace, tol: f64) -> bool {
    a.ambient_dim() == b.ambient_dim()
        && a.rank() == b.rank()
        && max_abs(&(projector(a) - projector(b))) <= tol
}

/// Matrix of the permutation operator `(L f)(x) = f(p(x))`.
pub fn perm_matrix(images: &[usize]) -> CMatrix {
    let n = images.len();
    let mut m = CMatrix::zeros(n, n);
    for (x, &y) in images.iter().enumerate() {
        m[(x, y)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// `L_p⁻¹ · m · L_p`, i.e. entry `(x, y)` is `m[p⁻¹x][p⁻¹y]`.
pub fn conjugate_by(images: &[usize], m: &CMatrix) -> CMatrix {
    let n = images.len();
    let mut inv = vec![0; n];
    for (i, &j) in images.iter().enumerate() {
        inv[j] = i;
    }
    CMatrix::from_fn(n, n, |x, y| m[(inv[x], inv[y])])
}

/// `‖L_p m − m L_p‖`, evaluated by index permutation.
pub fn commutator_with_perm(images: &[usize], m: &CMatrix) -> f64 {
    let n = images.len();
    let mut inv = vec![0; n];
    for (i, &j) in images.iter().enumerate() {
        inv[j] = i;
    }
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            // (L m)[x][y] = m[p x][y], (m L)[x][y] = m[x][p⁻¹ y]
            worst = worst.max((m[(images[x], y)] - m[(x, inv[y])]).norm());
        }
    }
    worst
}

/// `(L_p v)(x) = v(p(x))` applied to every column.
pub fn apply_perm(images: &[usize], v: &CMatrix) -> CMatrix {
    CMatrix::from_fn(v.nrows(), v.ncols(), |x, j| v[(images[x], j)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> CVector {
        let mut v = CVector::zeros(n);
        v[i] = c(1.0, 0.0);
        v
    }

    fn span(cols: &[CVector]) -> Subspace {
        orthonormalize(&CMatrix::from_columns(cols), DEFAULT_TOL)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let a = CMatrix::from_fn(n, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        &a + a.adjoint()
    }

    #[test]
    fn eig_small_cases() {
        let (v, _) = hermitian_eig(&CMatrix::identity(3, 3), 1e-9).unwrap();
        assert_eq!(v, vec![1.0, 1.0, 1.0]);

        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![c(2.0, 0.0), c(-1.0, 0.0)]));
        let (v, _) = hermitian_eig(&d, 1e-9).unwrap();
        assert_eq!(v, vec![-1.0, 2.0]);

        let x = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let (v, vecs) = hermitian_eig(&x, 1e-9).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvectors up to phase: |⟨u, (1,∓1)/√2⟩| = 1
        let minus = CVector::from_vec(vec![c(s, 0.0), c(-s, 0.0)]);
        let plus = CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]);
        assert!((vecs.column(0).dotc(&minus).norm() - 1.0).abs() < 1e-14);
        assert!((vecs.column(1).dotc(&plus).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(hermitian_eig(&m, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_residual_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 17, 64, 200] {
            let m = random_hermitian(n, &mut rng);
            let (vals, v) = hermitian_eig(&m, 1e-9).unwrap();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            let lam = CMatrix::from_diagonal(&CVector::from_iterator(n, vals.iter().map(|&x| c(x, 0.0))));
            let rec = &v * lam * v.adjoint();
            assert!(max_abs(&(&m - rec)) <= 1e-10 * max_abs(&m).max(1.0), "n = {n}");
            let unit = max_abs(&(v.adjoint() * &v - CMatrix::identity(n, n)));
            assert!(unit <= 1e-10);
        }
    }

    #[test]
    fn orthonormalize_cases() {
        let s = span(&[e(2, 0), e(2, 0).scale(2.0)]);
        assert_eq!(s.rank(), 1);
        assert!(subspace_equal(&s, &span(&[e(2, 0)]), 1e-12));

        let empty = orthonormalize(&CMatrix::zeros(4, 0), DEFAULT_TOL);
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.ambient_dim(), 4);

        let cols = [
            CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            CVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]),
        ];
        // Gram determinant oracle: det [[2,0],[0,2]] = 4 ≠ 0, so rank 2
        let g = CMatrix::from_columns(&cols);
        let gram = g.adjoint() * &g;
        assert!((gram.determinant() - c(4.0, 0.0)).norm() < 1e-12);
        let s = span(&cols);
        assert_eq!(s.rank(), 2);
        let gram = s.basis().adjoint() * s.basis();
        assert!(max_abs(&(gram - CMatrix::identity(2, 2))) < 1e-14);
    }

    #[test]
    fn intersection_cases() {
        let a = span(&[e(3, 0), e(3, 1)]);
        let b = span(&[e(3, 1), e(3, 2)]);
        let i = intersect(&a, &b).unwrap();
        assert!(subspace_equal(&i, &span(&[e(3, 1)]), 1e-12));

        assert!(subspace_equal(&intersect(&a, &a).unwrap(), &a, 1e-12));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let diag = span(&[CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)])]);
        // angle oracle: cos² = 1/2, far from 1
        let cos2 = diag.basis().column(0).dotc(&e(2, 0)).norm_sqr();
        assert!((cos2 - 0.5).abs() < 1e-15);
        assert_eq!(intersect(&diag, &span(&[e(2, 0)])).unwrap().rank(), 0);
    }

    #[test]
    fn equality_cases() {
        let a = span(&[e(2, 0)]);
        assert!(subspace_equal(&a, &a, 1e-9));
        assert!(!subspace_equal(&a, &span(&[e(2, 1)]), 1e-9));
        let nearly = span(&[CVector::from_vec(vec![c(1.0, 0.0), c(1e-13, 0.0)])]);
        // projector difference oracle: off-diagonal entry ≈ 1e-13
        let diff = max_abs(&(projector(&a) - projector(&nearly)));
        assert!(diff < 2e-13);
        assert!(subspace_equal(&a, &nearly, 1e-9));
    }

    #[test]
    fn projector_cases() {
        assert_eq!(projector(&Subspace::full(3, 1e-9)), CMatrix::identity(3, 3));
        assert_eq!(projector(&Subspace::zero(3, 1e-9)), CMatrix::zeros(3, 3));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = projector(&span(&[CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)])]));
        let want = CMatrix::from_element(2, 2, c(0.5, 0.0));
        assert!(max_abs(&(p.clone() - want)) < 1e-15);
        assert!(max_abs(&(&p * &p - &p)) < 1e-10);
        assert!(max_abs(&(p.adjoint() - &p)) < 1e-10);
    }

    #[test]
    fn clustering() {
        let v = [-1.0, -1.0 + 1e-12, 0.5, 2.0, 2.0];
        assert_eq!(cluster_eigenvalues(&v, 2.0), vec![0..2, 2..3, 3..5]);
        assert!(cluster_eigenvalues(&[], 1.0).is_empty());
    }

    #[test]
    fn perm_helpers_match_dense_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let images = [2usize, 0, 3, 1];
        let l = perm_matrix(&images);
        let m = random_hermitian(4, &mut rng);
        let linv = l.transpose();
        assert!(max_abs(&(conjugate_by(&images, &m) - &linv * &m * &l)) < 1e-15);
        let comm = max_abs(&(&l * &m - &m * &l));
        assert!((commutator_with_perm(&images, &m) - comm).abs() < 1e-15);
        assert!(max_abs(&(apply_perm(&images, &m) - &l * &m)) < 1e-15);
    }
}
