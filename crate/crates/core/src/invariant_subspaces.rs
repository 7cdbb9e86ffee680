//! Invariant subspaces as direct sums of minimal spaces.
//!
//! For an invariant `Y`, its signature `Ω` is the set of minimal spaces with
//! `Π_i Y ≠ {0}`. When the decomposition is multiplicity-free, `Y = E_Ω`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::decomposition::MinimalSpace;
use crate::error::{Error, Result};
use crate::linalg::{
    apply_perm, commutator_with_perm, max_abs, orthonormalize, projector, subspace_equal,
    weighted_norm, CMatrix, CVector, Subspace,
};
use crate::perm_action::GroupAction;
use crate::schur::group_average;

/// Largest collection for which every subset is enumerated.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignatureSet {
    pub omega: Vec<usize>,
}

impl SignatureSet {
    pub fn new(mut omega: Vec<usize>) -> Self {
        omega.sort_unstable();
        omega.dedup();
        Self { omega }
    }

    pub fn is_subset(&self, other: &SignatureSet) -> bool {
        self.omega.iter().all(|i| other.omega.binary_search(i).is_ok())
    }
}

/// Evidence that an invariant subspace is strictly smaller than `E_Ω`.
#[derive(Clone, Debug, Serialize)]
pub struct StructureWitness {
    pub omega: Vec<usize>,
    pub y_rank: usize,
    pub e_rank: usize,
    pub residual: f64,
    #[serde(skip)]
    pub vectors: CMatrix,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StructureReport {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_residual: f64,
    pub failures: Vec<StructureWitness>,
}

impl StructureReport {
    pub fn ensure_passed(self) -> Result<Self> {
        match self.failures.first() {
            Some(w) => Err(Error::StructureFailure(Box::new(w.clone()))),
            None => Ok(self),
        }
    }
}

/// Smallest invariant subspace containing the columns of `vectors`.
pub fn orbit_span(vectors: &CMatrix, action: &GroupAction, tol: f64) -> Result<Subspace> {
    let n = action.n_points();
    if vectors.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: vectors.nrows(),
        });
    }
    let images: Vec<CMatrix> = action
        .elements()
        .iter()
        .map(|a| apply_perm(a.images(), vectors))
        .collect();
    let cols: Vec<CVector> = images
        .iter()
        .flat_map(|m| m.column_iter().map(|c| c.into_owned()))
        .collect();
    let span = if cols.is_empty() {
        Subspace::zero(n, tol)
    } else {
        orthonormalize(&CMatrix::from_columns(&cols), tol)
    };
    let p = projector(&span);
    for g in action.generators() {
        let res = commutator_with_perm(g.images(), &p);
        if res > tol {
            return Err(Error::InternalInconsistency(format!(
                "orbit span is not invariant ({res:e})"
            )));
        }
    }
    Ok(span)
}

pub fn signature(y: &Subspace, spaces: &[MinimalSpace], tol: f64) -> SignatureSet {
    let py = projector(y);
    SignatureSet::new(
        spaces
            .iter()
            .filter(|s| max_abs(&(&s.projector * &py)) > tol)
            .map(|s| s.id)
            .collect(),
    )
}

fn lookup(spaces: &[MinimalSpace], id: usize) -> Result<&MinimalSpace> {
    spaces
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown space id {id}")))
}

/// `E_Ω`: concatenated bases of the spaces in `omega`.
pub fn direct_sum(omega: &SignatureSet, spaces: &[MinimalSpace], tol: f64) -> Result<Subspace> {
    let n = spaces.first().map_or(0, |s| s.space.ambient_dim());
    let mut cols = Vec::new();
    for &id in &omega.omega {
        let s = lookup(spaces, id)?;
        cols.extend(s.space.basis().column_iter().map(|c| c.into_owned()));
    }
    if cols.is_empty() {
        return Ok(Subspace::zero(n, tol));
    }
    Subspace::from_orthonormal(CMatrix::from_columns(&cols), tol)
}

/// Compares an invariant subspace with the direct sum over its signature.
pub fn check_structure(
    y: &Subspace,
    spaces: &[MinimalSpace],
    tol: f64,
) -> Result<(SignatureSet, f64)> {
    let omega = signature(y, spaces, tol);
    let e = direct_sum(&omega, spaces, tol)?;
    let residual = if e.rank() == y.rank() {
        max_abs(&(projector(y) - projector(&e)))
    } else {
        f64::INFINITY
    };
    if subspace_equal(y, &e, tol) {
        Ok((omega, residual))
    } else {
        Err(Error::StructureFailure(Box::new(StructureWitness {
            omega: omega.omega,
            y_rank: y.rank(),
            e_rank: e.rank(),
            residual,
            vectors: y.basis().clone(),
        })))
    }
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random trials: orbit-span 1–3 Gaussian vectors and compare with `E_Ω`.
pub fn verify_structure(
    action: &GroupAction,
    spaces: &[MinimalSpace],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<StructureReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = StructureReport {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let k = rng.random_range(1..=3);
        let v = gaussian_matrix(&mut rng, action.n_points(), k);
        let y = orbit_span(&v, action, tol)?;
        match check_structure(&y, spaces, tol) {
            Ok((_, res)) => {
                report.passed += 1;
                report.max_residual = report.max_residual.max(res);
            }
            Err(Error::StructureFailure(w)) => {
                report.failed += 1;
                report.max_residual = report.max_residual.max(w.residual);
                report.failures.push(*w);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Basis of the graph `{f + T f : f ∈ H_i}` of a nonzero intertwiner
/// `T : H_i → H_j` between two distinct isomorphic spaces, if such a pair
/// exists. The result is invariant but lies strictly inside `E_{i,j}`.
pub fn twisted_diagonal(
    action: &GroupAction,
    spaces: &[MinimalSpace],
    seed: u64,
    tol: f64,
) -> Option<CMatrix> {
    let n = action.n_points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for src in spaces {
        for dst in spaces {
            if src.id == dst.id || src.dim() != dst.dim() {
                continue;
            }
            let a = gaussian_matrix(&mut rng, n, n);
            let t = group_average(&a, src, dst, action);
            if max_abs(&t) > tol.sqrt() {
                let b = src.space.basis();
                return Some(b + &t * b);
            }
        }
    }
    None
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RoundTripReport {
    pub subsets: usize,
    /// Subsets with `signature(E_Ω) ≠ Ω`.
    pub mismatches: usize,
    pub max_invariance_residual: f64,
}

impl RoundTripReport {
    /// `signature ∘ E` is the identity, so `Ω ↦ E_Ω` is injective.
    pub fn injective(&self) -> bool {
        self.mismatches == 0
    }
}

/// Enumerates every subset `Ω` and checks `signature(E_Ω) = Ω` and invariance
/// of `E_Ω`. Returns `None` above [`EXHAUSTIVE_LIMIT`] spaces.
pub fn exhaustive_round_trip(
    action: &GroupAction,
    spaces: &[MinimalSpace],
    tol: f64,
) -> Result<Option<RoundTripReport>> {
    let m = spaces.len();
    if m > EXHAUSTIVE_LIMIT {
        return Ok(None);
    }
    let mut report = RoundTripReport::default();
    for mask in 0u32..(1 << m) {
        let omega = SignatureSet::new(
            spaces
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, s)| s.id)
                .collect(),
        );
        let e = direct_sum(&omega, spaces, tol)?;
        let p = projector(&e);
        for g in action.generators() {
            report.max_invariance_residual =
                report.max_invariance_residual.max(commutator_with_perm(g.images(), &p));
        }
        if signature(&e, spaces, tol) != omega {
            report.mismatches += 1;
        }
        report.subsets += 1;
    }
    Ok(Some(report))
}

/// `max |P_small − P_large P_small|`; zero iff `small ⊆ large`.
pub fn containment_residual(small: &Subspace, large: &Subspace) -> f64 {
    let ps = projector(small);
    max_abs(&(&ps - projector(large) * &ps))
}

/// Distance from `g` to `y` in the uniform norm and in the `L²(μ)` norm.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MembershipResiduals {
    pub uniform: f64,
    pub l2: f64,
}

impl MembershipResiduals {
    /// On `|X|` points, `‖v‖₂ ≤ ‖v‖∞ ≤ √|X| ‖v‖₂`, so the two membership
    /// verdicts must agree.
    pub fn consistent(&self, n_points: usize, tol: f64) -> bool {
        let slack = 1.0 + 1e-12;
        let bounds = self.l2 <= self.uniform * slack
            && self.uniform <= (n_points as f64).sqrt() * self.l2 * slack;
        bounds && (self.uniform <= tol) == (self.l2 <= tol)
    }
}

pub fn membership_residuals(y: &Subspace, g: &CVector) -> MembershipResiduals {
    let coords = y.basis().adjoint() * g;
    let diff = g - y.basis() * coords;
    MembershipResiduals {
        uniform: diff.camax(),
        l2: weighted_norm(&diff),
    }
}
