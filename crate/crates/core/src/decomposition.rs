//! Minimal invariant subspaces of the permutation representation.
//!
//! The candidate collection comes from eigenspaces of a random Hermitian
//! element of the commutant (the span of the orbital indicator matrices).
//! Each eigenspace is invariant; minimality is certified by checking that the
//! commutant compresses to scalars on it.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    cluster_eigenvalues, commutator_with_perm, hermitian_eig, intersect, max_abs,
    orthonormalize, perm_matrix, projector, CMatrix, Subspace,
};
use crate::perm_action::{is_transitive, orbitals, pair_orbits, stabilizer_orbits, GroupAction};

/// Fresh seeds tried before a minimality failure is surfaced.
pub const MAX_ATTEMPTS: usize = 5;

/// Tolerance on exact 0/1 commutation checks.
pub const COMMUTE_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct RepOperator {
    pub element: usize,
    /// `(L_α f)(x) = f(α·x)`.
    pub matrix: CMatrix,
}

#[derive(Clone, Debug)]
pub struct MinimalSpace {
    pub id: usize,
    pub space: Subspace,
    pub projector: CMatrix,
    /// Eigenvalue of the commutant element that produced this space.
    pub eigenvalue: f64,
}

impl MinimalSpace {
    pub fn dim(&self) -> usize {
        self.space.rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarTable {
    /// `entries[i][x] = dim(H_i ∩ H(x))`.
    pub entries: Vec<Vec<usize>>,
}

impl StarTable {
    pub fn holds(&self) -> bool {
        self.entries.iter().flatten().all(|&d| d == 1)
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    GCollection,
    LacksStarOnly,
    NotUniqueDecomposition,
}

#[derive(Clone, Debug)]
pub struct GCollectionReport {
    pub spaces: Vec<MinimalSpace>,
    pub orthogonality_residual: f64,
    pub completeness_residual: f64,
    pub equivariance_residual: f64,
    pub multiplicity_free: bool,
    pub star: StarTable,
    pub verdict: Verdict,
}

pub fn rep_operators(action: &GroupAction) -> Vec<RepOperator> {
    action
        .elements()
        .iter()
        .enumerate()
        .map(|(element, a)| RepOperator {
            element,
            matrix: perm_matrix(a.images()),
        })
        .collect()
}

fn indicator(n: usize, pairs: &[(usize, usize)]) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for &(x, y) in pairs {
        m[(x, y)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// One 0/1 indicator matrix per orbital; the first is the identity.
pub fn commutant_basis(action: &GroupAction) -> Result<Vec<CMatrix>> {
    let n = action.n_points();
    let basis: Vec<CMatrix> = orbitals(action)?
        .iter()
        .map(|o| indicator(n, o))
        .collect();
    for (r, a) in basis.iter().enumerate() {
        for g in action.generators() {
            let res = commutator_with_perm(g.images(), a);
            if res > COMMUTE_TOL {
                return Err(Error::InternalInconsistency(format!(
                    "orbital {r} does not commute with a generator ({res:e})"
                )));
            }
        }
    }
    Ok(basis)
}

/// Seeded Hermitian element `Σ a_r (A_r + A_rᴴ) + b_r i (A_r − A_rᴴ)` of the
/// commutant with `a_r, b_r` uniform on `[-1, 1]`.
pub fn random_commutant_element(basis: &[CMatrix], seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = basis.first().map_or(0, |b| b.nrows());
    let mut m = CMatrix::zeros(n, n);
    let i = Complex64::new(0.0, 1.0);
    for a in basis {
        let re: f64 = rng.random_range(-1.0..=1.0);
        let im: f64 = rng.random_range(-1.0..=1.0);
        let adj = a.adjoint();
        m += (a + &adj).scale(re) + (a - &adj) * (i * im);
    }
    m
}

/// `dim` of `span{ P A_r P }` over the orbital basis, i.e. the dimension of
/// the self-intertwiners of the space. Works for intransitive actions too.
pub fn intertwiner_dimension(projector: &CMatrix, action: &GroupAction, tol: f64) -> usize {
    let n = action.n_points();
    let cols: Vec<_> = pair_orbits(action)
        .iter()
        .map(|o| {
            let pap = projector * indicator(n, o) * projector;
            crate::linalg::CVector::from_iterator(n * n, pap.iter().copied())
        })
        .collect();
    orthonormalize(&CMatrix::from_columns(&cols), tol).rank()
}

/// True iff the commutant restricted to the space is scalar.
pub fn is_minimal(space: &MinimalSpace, action: &GroupAction, tol: f64) -> bool {
    space.dim() > 0 && intertwiner_dimension(&space.projector, action, tol) == 1
}

/// Gelfand-pair criterion: the orbital matrices pairwise commute.
pub fn multiplicity_free(action: &GroupAction) -> Result<bool> {
    let basis = commutant_basis(action)?;
    for (r, a) in basis.iter().enumerate() {
        for b in &basis[r + 1..] {
            if max_abs(&(a * b - b * a)) > COMMUTE_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `H(x)`: functions constant on the orbits of `Stab(x)`.
pub fn h_space(action: &GroupAction, x: usize, tol: f64) -> Subspace {
    let n = action.n_points();
    let orbits = stabilizer_orbits(action, x);
    let mut v = CMatrix::zeros(n, orbits.len());
    for (j, o) in orbits.iter().enumerate() {
        for &y in o {
            v[(y, j)] = Complex64::new(1.0, 0.0);
        }
    }
    orthonormalize(&v, tol)
}

fn seed_for_attempt(seed: u64, attempt: usize) -> u64 {
    seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Entrywise comparison of projector row 0, treating differences below
/// `1e-6` as ties. Row 0 determines the projector of an invariant space of a
/// transitive action, so this order does not depend on the seed.
fn compare_row0(a: &CMatrix, b: &CMatrix) -> Ordering {
    for y in 0..a.ncols() {
        for (p, q) in [(a[(0, y)].re, b[(0, y)].re), (a[(0, y)].im, b[(0, y)].im)] {
            if (p - q).abs() > 1e-6 {
                return p.total_cmp(&q);
            }
        }
    }
    Ordering::Equal
}

fn first_support(p: &CMatrix, tol: f64) -> usize {
    (0..p.nrows()).find(|&x| p[(x, x)].re > tol).unwrap_or(p.nrows())
}

fn decompose_once(
    action: &GroupAction,
    basis: &[CMatrix],
    seed: u64,
    tol: f64,
) -> Result<Option<Vec<MinimalSpace>>> {
    let m = random_commutant_element(basis, seed);
    let (values, vectors) = hermitian_eig(&m, tol)?;
    let mut spaces = Vec::new();
    for range in cluster_eigenvalues(&values, max_abs(&m)) {
        let cols = vectors.columns(range.start, range.len()).into_owned();
        let space = Subspace::from_orthonormal(cols, tol)?;
        let proj = projector(&space);
        for g in action.generators() {
            let res = commutator_with_perm(g.images(), &proj);
            if res > tol {
                return Err(Error::InternalInconsistency(format!(
                    "eigenspace is not invariant ({res:e})"
                )));
            }
        }
        let eigenvalue = values[range.clone()].iter().sum::<f64>() / range.len() as f64;
        let candidate = MinimalSpace {
            id: 0,
            space,
            projector: proj,
            eigenvalue,
        };
        if !is_minimal(&candidate, action, tol) {
            return Ok(None);
        }
        spaces.push(candidate);
    }
    spaces.sort_by(|a, b| {
        a.dim()
            .cmp(&b.dim())
            .then(first_support(&a.projector, tol).cmp(&first_support(&b.projector, tol)))
            .then(compare_row0(&a.projector, &b.projector))
            .then(a.eigenvalue.total_cmp(&b.eigenvalue))
    });
    for (id, s) in spaces.iter_mut().enumerate() {
        s.id = id;
    }
    Ok(Some(spaces))
}

/// Orthogonal decomposition of `C^|X|` into minimal invariant subspaces,
/// ordered by dimension, then first supported point, then projector row 0,
/// then eigenvalue.
pub fn minimal_decomposition(
    action: &GroupAction,
    seed: u64,
    tol: f64,
) -> Result<Vec<MinimalSpace>> {
    let basis = commutant_basis(action)?;
    for attempt in 0..MAX_ATTEMPTS {
        if let Some(spaces) = decompose_once(action, &basis, seed_for_attempt(seed, attempt), tol)? {
            return Ok(spaces);
        }
    }
    Err(Error::MinimalityFailure {
        attempts: MAX_ATTEMPTS,
    })
}

/// `dim(H_i ∩ H(x))` for every space and point. A zero entry contradicts the
/// stabilizer invariance of reproducing kernels and is reported as an error.
pub fn check_star(spaces: &[MinimalSpace], action: &GroupAction, tol: f64) -> Result<StarTable> {
    let h: Vec<Subspace> = (0..action.n_points()).map(|x| h_space(action, x, tol)).collect();
    let mut entries = Vec::with_capacity(spaces.len());
    for s in spaces {
        let row = h
            .iter()
            .map(|hx| intersect(&s.space, hx).map(|i| i.rank()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(x) = row.iter().position(|&d| d == 0) {
            return Err(Error::InternalInconsistency(format!(
                "space {} meets H({x}) trivially",
                s.id
            )));
        }
        entries.push(row);
    }
    Ok(StarTable { entries })
}

pub fn orthogonality_residual(spaces: &[MinimalSpace]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in spaces.iter().enumerate() {
        for b in &spaces[i + 1..] {
            worst = worst.max(max_abs(&(&a.projector * &b.projector)));
        }
    }
    worst
}

pub fn completeness_residual(spaces: &[MinimalSpace], n: usize) -> f64 {
    let sum = spaces
        .iter()
        .fold(CMatrix::zeros(n, n), |acc, s| acc + &s.projector);
    max_abs(&(sum - CMatrix::identity(n, n)))
}

pub fn equivariance_residual(spaces: &[MinimalSpace], action: &GroupAction) -> f64 {
    spaces
        .iter()
        .flat_map(|s| {
            action
                .generators()
                .iter()
                .map(move |g| commutator_with_perm(g.images(), &s.projector))
        })
        .fold(0.0, f64::max)
}

pub fn build_report(action: &GroupAction, seed: u64, tol: f64) -> Result<GCollectionReport> {
    if !is_transitive(action) {
        return Err(Error::NotTransitive);
    }
    let spaces = minimal_decomposition(action, seed, tol)?;
    let n = action.n_points();
    let dim_sum: usize = spaces.iter().map(MinimalSpace::dim).sum();
    if dim_sum != n {
        return Err(Error::InternalInconsistency(format!(
            "dimensions sum to {dim_sum}, expected {n}"
        )));
    }
    let multiplicity_free = multiplicity_free(action)?;
    let star = check_star(&spaces, action, tol)?;
    let verdict = match (multiplicity_free, star.holds()) {
        (true, true) => Verdict::GCollection,
        (true, false) => Verdict::LacksStarOnly,
        (false, _) => Verdict::NotUniqueDecomposition,
    };
    Ok(GCollectionReport {
        orthogonality_residual: orthogonality_residual(&spaces),
        completeness_residual: completeness_residual(&spaces, n),
        equivariance_residual: equivariance_residual(&spaces, action),
        spaces,
        multiplicity_free,
        star,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, subspace_equal, CVector, DEFAULT_TOL};
    use crate::perm_action::{cyclic, enumerate_group, symmetric, Permutation, DEFAULT_CAP};

    fn act(gens: Vec<Permutation>) -> GroupAction {
        let n = gens[0].len();
        enumerate_group(n, gens, DEFAULT_CAP).unwrap()
    }

    fn s3_regular() -> GroupAction {
        act(symmetric(3).unwrap()).regular(DEFAULT_CAP).unwrap()
    }

    /// Oracle for minimality: average `L_α⁻¹ P E_xy P L_α` over the whole group
    /// for every matrix unit and count independent results.
    fn averaged_intertwiner_dimension(p: &CMatrix, action: &GroupAction) -> usize {
        let n = action.n_points();
        let ops = rep_operators(action);
        let mut cols = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let mut unit = CMatrix::zeros(n, n);
                unit[(x, y)] = c(1.0, 0.0);
                let pap = p * unit * p;
                let mut t = CMatrix::zeros(n, n);
                for op in &ops {
                    t += op.matrix.transpose() * &pap * &op.matrix;
                }
                t /= c(ops.len() as f64, 0.0);
                cols.push(CVector::from_iterator(n * n, t.iter().copied()));
            }
        }
        orthonormalize(&CMatrix::from_columns(&cols), DEFAULT_TOL).rank()
    }

    #[test]
    fn rep_operator_basics() {
        let s3 = act(symmetric(3).unwrap());
        let ops = rep_operators(&s3);
        assert_eq!(ops[0].matrix, CMatrix::identity(3, 3));

        let c2 = act(cyclic(2).unwrap());
        let swap = &rep_operators(&c2)[1].matrix;
        assert_eq!(*swap, perm_matrix(&[1, 0]));

        // L_α L_β = L_{βα}
        let t = Permutation::cycle(3, &[0, 1]).unwrap();
        let r = Permutation::cycle(3, &[0, 1, 2]).unwrap();
        let lhs = perm_matrix(t.images()) * perm_matrix(r.images());
        assert_eq!(lhs, perm_matrix(r.compose(&t).images()));
        for a in &ops {
            for b in &ops {
                let ab = &a.matrix * &b.matrix;
                let ba = s3.elements()[b.element].compose(&s3.elements()[a.element]);
                assert_eq!(ab, perm_matrix(ba.images()));
            }
        }
    }

    #[test]
    fn commutant_examples() {
        let c2 = act(cyclic(2).unwrap());
        let b = commutant_basis(&c2).unwrap();
        assert_eq!(b, vec![CMatrix::identity(2, 2), perm_matrix(&[1, 0])]);

        let s3 = act(symmetric(3).unwrap());
        let b = commutant_basis(&s3).unwrap();
        let ones = CMatrix::from_element(3, 3, c(1.0, 0.0));
        assert_eq!(b, vec![CMatrix::identity(3, 3), ones - CMatrix::identity(3, 3)]);

        let swap = act(vec![Permutation::cycle(3, &[0, 1]).unwrap()]);
        assert!(matches!(commutant_basis(&swap), Err(Error::NotTransitive)));
    }

    #[test]
    fn random_commutant_elements() {
        let m = random_commutant_element(&[CMatrix::identity(3, 3)], 9);
        let scalar = m[(0, 0)];
        assert!(max_abs(&(&m - CMatrix::identity(3, 3) * scalar)) == 0.0);

        let a = act(crate::perm_action::dihedral(6).unwrap());
        let basis = commutant_basis(&a).unwrap();
        for seed in 0..5 {
            let m = random_commutant_element(&basis, seed);
            assert_eq!(max_abs(&(&m - m.adjoint())), 0.0);
            for op in rep_operators(&a) {
                let comm = &op.matrix * &m - &m * &op.matrix;
                assert!(max_abs(&comm) <= 1e-12);
            }
        }
        assert_eq!(random_commutant_element(&basis, 4), random_commutant_element(&basis, 4));
    }

    #[test]
    fn trivial_group_single_space() {
        let a = act(vec![Permutation::identity(1)]);
        let spaces = minimal_decomposition(&a, 1, DEFAULT_TOL).unwrap();
        assert_eq!(spaces.len(), 1);
        assert_eq!(spaces[0].dim(), 1);
    }

    #[test]
    fn cyclic_three_gives_fourier_characters() {
        let a = act(cyclic(3).unwrap());
        let spaces = minimal_decomposition(&a, 42, DEFAULT_TOL).unwrap();
        assert_eq!(spaces.len(), 3);
        let w = std::f64::consts::TAU / 3.0;
        // DFT oracle: each character spans exactly one of the spaces
        for j in 0..3 {
            let chi = CVector::from_iterator(3, (0..3).map(|x| Complex64::from_polar(1.0, w * (j * x) as f64)));
            let line = orthonormalize(&CMatrix::from_columns(&[chi]), DEFAULT_TOL);
            let hits = spaces
                .iter()
                .filter(|s| subspace_equal(&s.space, &line, 1e-9))
                .count();
            assert_eq!(hits, 1, "character {j}");
        }
    }

    #[test]
    fn s3_natural_splits_into_constants_and_sum_zero() {
        let a = act(symmetric(3).unwrap());
        let spaces = minimal_decomposition(&a, 42, DEFAULT_TOL).unwrap();
        let dims: Vec<usize> = spaces.iter().map(MinimalSpace::dim).collect();
        assert_eq!(dims, vec![1, 2]);
        let ones = CMatrix::from_element(3, 1, c(1.0, 0.0));
        assert!(subspace_equal(&spaces[0].space, &orthonormalize(&ones, 1e-9), 1e-9));
        let sum_zero = CMatrix::from_row_slice(3, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        assert!(subspace_equal(&spaces[1].space, &orthonormalize(&sum_zero, 1e-9), 1e-9));
    }

    #[test]
    fn minimality_certificates() {
        let s3 = act(symmetric(3).unwrap());
        let spaces = minimal_decomposition(&s3, 42, DEFAULT_TOL).unwrap();
        for s in &spaces {
            assert!(is_minimal(s, &s3, DEFAULT_TOL));
            assert_eq!(averaged_intertwiner_dimension(&s.projector, &s3), 1);
        }

        // constants ⊕ signs in C_2 is the whole space: not minimal
        let c2 = act(cyclic(2).unwrap());
        let whole = MinimalSpace {
            id: 0,
            space: Subspace::full(2, DEFAULT_TOL),
            projector: CMatrix::identity(2, 2),
            eigenvalue: 0.0,
        };
        assert!(!is_minimal(&whole, &c2, DEFAULT_TOL));
        assert_eq!(averaged_intertwiner_dimension(&whole.projector, &c2), 2);

        let reg = s3_regular();
        for s in minimal_decomposition(&reg, 5, DEFAULT_TOL).unwrap() {
            assert_eq!(averaged_intertwiner_dimension(&s.projector, &reg), 1);
        }
    }

    #[test]
    fn multiplicity_free_examples() {
        for n in [2, 5, 8] {
            assert!(multiplicity_free(&act(cyclic(n).unwrap())).unwrap());
        }
        assert!(multiplicity_free(&act(symmetric(3).unwrap())).unwrap());
        assert!(!multiplicity_free(&s3_regular()).unwrap());
    }

    #[test]
    fn h_spaces() {
        let c5 = act(cyclic(5).unwrap());
        assert_eq!(h_space(&c5, 2, DEFAULT_TOL).rank(), 5);

        let s3 = act(symmetric(3).unwrap());
        let h = h_space(&s3, 0, DEFAULT_TOL);
        let want = CMatrix::from_row_slice(3, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(subspace_equal(&h, &orthonormalize(&want, 1e-9), 1e-9));

        let s4 = act(symmetric(4).unwrap());
        for x in 0..4 {
            assert_eq!(h_space(&s4, x, DEFAULT_TOL).rank(), 2);
        }
    }

    #[test]
    fn star_tables() {
        let c6 = act(cyclic(6).unwrap());
        let spaces = minimal_decomposition(&c6, 1, DEFAULT_TOL).unwrap();
        let t = check_star(&spaces, &c6, DEFAULT_TOL).unwrap();
        assert!(t.holds());

        let s3 = act(symmetric(3).unwrap());
        let spaces = minimal_decomposition(&s3, 1, DEFAULT_TOL).unwrap();
        // explicit oracle: (a, b, b) with a + 2b = 0 is the unique line in H(0) ∩ H_std
        let line = CMatrix::from_column_slice(3, 1, &[c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let std_space = &spaces[1].space;
        assert!(std_space.distance(&line) < 1e-12);
        assert!(check_star(&spaces, &s3, DEFAULT_TOL).unwrap().holds());

        let reg = s3_regular();
        let spaces = minimal_decomposition(&reg, 1, DEFAULT_TOL).unwrap();
        let t = check_star(&spaces, &reg, DEFAULT_TOL).unwrap();
        for (s, row) in spaces.iter().zip(&t.entries) {
            assert!(row.iter().all(|&d| d == s.dim()));
        }
        assert_eq!(t.max_entry(), 2);
        assert!(!t.holds());
    }

    #[test]
    fn report_verdicts() {
        let s3 = act(symmetric(3).unwrap());
        assert_eq!(build_report(&s3, 42, DEFAULT_TOL).unwrap().verdict, Verdict::GCollection);
        let r = build_report(&s3_regular(), 42, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::NotUniqueDecomposition);
        assert_eq!(r.spaces.iter().map(MinimalSpace::dim).collect::<Vec<_>>(), vec![1, 1, 2, 2]);
        let c12 = act(cyclic(12).unwrap());
        let r = build_report(&c12, 42, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::GCollection);
        assert!(r.completeness_residual <= 1e-9);
        assert!(r.orthogonality_residual <= 1e-9);
        assert!(r.equivariance_residual <= 1e-9);
    }

    #[test]
    fn seed_independence_when_multiplicity_free() {
        for gens in [cyclic(12).unwrap(), crate::perm_action::dihedral(7).unwrap(), symmetric(4).unwrap()] {
            let a = act(gens);
            let x = minimal_decomposition(&a, 1, DEFAULT_TOL).unwrap();
            let y = minimal_decomposition(&a, 99, DEFAULT_TOL).unwrap();
            assert_eq!(x.len(), y.len());
            for (s, t) in x.iter().zip(&y) {
                assert!(subspace_equal(&s.space, &t.space, 1e-9));
            }
        }
    }
}
