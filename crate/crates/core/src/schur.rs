//! Group-averaged maps between minimal spaces and their scalar/zero
//! classification.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::MinimalSpace;
use crate::linalg::{commutator_with_perm, conjugate_by, max_abs, CMatrix};
use crate::perm_action::GroupAction;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Classification {
    Zero,
    Scalar(Complex64),
    Violation { residual: f64 },
}

/// `T = (1/|G|) Σ_α L_α⁻¹ Π_dst A Π_src L_α`.
pub fn group_average(
    a: &CMatrix,
    src: &MinimalSpace,
    dst: &MinimalSpace,
    action: &GroupAction,
) -> CMatrix {
    let sandwiched = &dst.projector * a * &src.projector;
    let n = a.nrows();
    let mut t = CMatrix::zeros(n, n);
    for alpha in action.elements() {
        t += conjugate_by(alpha.images(), &sandwiched);
    }
    t / Complex64::new(action.order() as f64, 0.0)
}

pub fn classify_intertwiner(
    t: &CMatrix,
    src: &MinimalSpace,
    dst: &MinimalSpace,
    tol: f64,
) -> Classification {
    let restricted = t * &src.projector;
    if max_abs(&restricted) <= tol {
        return Classification::Zero;
    }
    if src.id != dst.id || src.dim() == 0 {
        return Classification::Violation {
            residual: max_abs(&restricted),
        };
    }
    let c = restricted.trace() / Complex64::new(src.dim() as f64, 0.0);
    let residual = max_abs(&(restricted - src.projector.map(|z| z * c)));
    if residual <= tol {
        Classification::Scalar(c)
    } else {
        Classification::Violation { residual }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SchurSummary {
    pub pairs: usize,
    pub trials_per_pair: usize,
    pub zero: usize,
    pub scalar: usize,
    pub violation: usize,
    /// Off-diagonal pairs that did not average to zero.
    pub off_diagonal_nonzero: usize,
    /// Diagonal pairs that did not average to a scalar.
    pub diagonal_non_scalar: usize,
    pub max_off_diagonal_norm: f64,
    pub max_scalar_residual: f64,
    pub max_commutator: f64,
}

impl SchurSummary {
    pub fn dichotomy_holds(&self) -> bool {
        self.violation == 0 && self.off_diagonal_nonzero == 0 && self.diagonal_non_scalar == 0
    }
}

/// Averages `trials` seeded random operators for every ordered pair of spaces
/// and tallies the classifications.
pub fn run_trials(
    action: &GroupAction,
    spaces: &[MinimalSpace],
    trials: usize,
    seed: u64,
    tol: f64,
) -> SchurSummary {
    let n = action.n_points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SchurSummary {
        pairs: spaces.len() * spaces.len(),
        trials_per_pair: trials,
        ..Default::default()
    };
    for src in spaces {
        for dst in spaces {
            for _ in 0..trials {
                let a = CMatrix::from_fn(n, n, |_, _| {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                });
                let t = group_average(&a, src, dst, action);
                for g in action.generators() {
                    s.max_commutator = s.max_commutator.max(commutator_with_perm(g.images(), &t));
                }
                let class = classify_intertwiner(&t, src, dst, tol);
                match class {
                    Classification::Zero => s.zero += 1,
                    Classification::Scalar(_) => s.scalar += 1,
                    Classification::Violation { .. } => s.violation += 1,
                }
                if src.id == dst.id {
                    if let Classification::Scalar(c) = class {
                        let res = max_abs(&(&t - src.projector.map(|z| z * c)));
                        s.max_scalar_residual = s.max_scalar_residual.max(res);
                    } else {
                        s.diagonal_non_scalar += 1;
                    }
                } else {
                    s.max_off_diagonal_norm = s.max_off_diagonal_norm.max(max_abs(&t));
                    if class != Classification::Zero {
                        s.off_diagonal_nonzero += 1;
                    }
                }
            }
        }
    }
    s
}
