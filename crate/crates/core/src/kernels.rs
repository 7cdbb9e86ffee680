//! Reproducing kernels of invariant subspaces.
//!
//! For the uniform probability measure, `K_x(y) = |X| · Π[y][x]` satisfies
//! `(Π f)(x) = [f, K_x]` exactly.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::MinimalSpace;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, CMatrix, CVector};
use crate::perm_action::{stabilizer, GroupAction};

/// Random vectors used for the reproduction check.
pub const REPRODUCTION_SAMPLES: usize = 50;

#[derive(Clone, Debug)]
pub struct KernelFamily {
    pub space_id: usize,
    /// Column `x` holds `K_x`, so `k[(y, x)] = K_x(y)`.
    pub k: CMatrix,
}

impl KernelFamily {
    pub fn kernel_at(&self, x: usize) -> CVector {
        self.k.column(x).into_owned()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KernelReport {
    pub space_id: usize,
    /// `K_x(y) = conj(K_y(x))`.
    pub symmetry: f64,
    /// `Π f = (1/|X|) Σ_x f(x) K_x`.
    pub reproduction: f64,
    /// `K_{α x} = K_x ∘ α⁻¹`.
    pub equivariance: f64,
    /// `K_x = K_x ∘ α` for `α` fixing `x`.
    pub stabilizer_invariance: f64,
    /// Spread of `K_x(x)` over `x`.
    pub diagonal_spread: f64,
    pub diagonal_min: f64,
    /// `max_x |K_x(x) − dim H|`.
    pub diagonal_law: f64,
    /// `‖(I − Π) K‖`.
    pub membership: f64,
}

impl KernelReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.symmetry,
            self.reproduction,
            self.equivariance,
            self.stabilizer_invariance,
            self.diagonal_spread,
            self.diagonal_law,
            self.membership,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn kernel_family(space: &MinimalSpace, n_points: usize) -> KernelFamily {
    KernelFamily {
        space_id: space.id,
        k: space.projector.scale(n_points as f64),
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// `max_y |K_{α x}(y) − K_x(α⁻¹ y)|` over all `x`.
fn equivariance_residual(k: &CMatrix, alpha: &crate::perm_action::Permutation) -> f64 {
    let inv = alpha.inverse();
    let n = k.nrows();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            worst = worst.max((k[(y, alpha.apply(x))] - k[(inv.apply(y), x)]).norm());
        }
    }
    worst
}

/// `max_y |K_x(α y) − K_x(y)|` over the given stabilizer elements of `x`.
fn stabilizer_residual<'a>(
    k: &CMatrix,
    x: usize,
    members: impl IntoIterator<Item = &'a crate::perm_action::Permutation>,
) -> f64 {
    let mut worst: f64 = 0.0;
    for alpha in members {
        debug_assert_eq!(alpha.apply(x), x);
        for y in 0..k.nrows() {
            worst = worst.max((k[(alpha.apply(y), x)] - k[(y, x)]).norm());
        }
    }
    worst
}

/// Computes all kernel residuals and fails with `PropertyViolation` on the
/// first one above `tol`.
pub fn verify_kernel_properties(
    family: &KernelFamily,
    space: &MinimalSpace,
    action: &GroupAction,
    seed: u64,
    tol: f64,
) -> Result<KernelReport> {
    let k = &family.k;
    let p = &space.projector;
    let n = action.n_points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let symmetry = max_abs(&(k - k.adjoint()));

    let mut reproduction: f64 = 0.0;
    for _ in 0..REPRODUCTION_SAMPLES {
        let f = random_vector(&mut rng, n);
        let direct = p * &f;
        let mut integral = CVector::zeros(n);
        for x in 0..n {
            integral += k.column(x) * f[x];
        }
        integral /= Complex64::new(n as f64, 0.0);
        reproduction = reproduction.max((direct - integral).camax());
    }

    let mut equivariance = action
        .generators()
        .iter()
        .map(|g| equivariance_residual(k, g))
        .fold(0.0, f64::max);
    let random_element = &action.elements()[rng.random_range(0..action.order())];
    equivariance = equivariance.max(equivariance_residual(k, random_element));

    let stab0 = stabilizer(action, 0);
    let stab0_perms: Vec<_> = stab0.members.iter().map(|&i| &action.elements()[i]).collect();
    let mut stabilizer_invariance = stabilizer_residual(k, 0, stab0_perms.iter().copied());
    for _ in 0..3 {
        let x = rng.random_range(0..n);
        if let Some(g) = action.transporter(0, x) {
            let g_inv = g.inverse();
            let conjugated: Vec<_> = stab0_perms
                .iter()
                .map(|s| g.compose(&s.compose(&g_inv)))
                .collect();
            stabilizer_invariance = stabilizer_invariance.max(stabilizer_residual(k, x, &conjugated));
        }
    }

    let diag: Vec<Complex64> = (0..n).map(|x| k[(x, x)]).collect();
    let diagonal_spread = diag.iter().map(|d| (d - diag[0]).norm()).fold(0.0, f64::max);
    let diagonal_min = diag.iter().map(|d| d.re).fold(f64::INFINITY, f64::min);
    let dim = space.dim() as f64;
    let diagonal_law = diag
        .iter()
        .map(|d| (d - Complex64::new(dim, 0.0)).norm())
        .fold(0.0, f64::max);

    let membership = max_abs(&(k - p * k));

    let report = KernelReport {
        space_id: family.space_id,
        symmetry,
        reproduction,
        equivariance,
        stabilizer_invariance,
        diagonal_spread,
        diagonal_min,
        diagonal_law,
        membership,
    };
    let checks = [
        ("hermitian symmetry", report.symmetry),
        ("reproduction", report.reproduction),
        ("equivariance", report.equivariance),
        ("stabilizer invariance", report.stabilizer_invariance),
        ("constant diagonal", report.diagonal_spread),
        ("diagonal law", report.diagonal_law),
        ("membership", report.membership),
    ];
    for (property, residual) in checks {
        if residual > tol {
            return Err(Error::PropertyViolation {
                property: property.into(),
                residual,
            });
        }
    }
    if space.dim() > 0 && report.diagonal_min <= 0.0 {
        return Err(Error::PropertyViolation {
            property: "positive diagonal".into(),
            residual: report.diagonal_min,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::minimal_decomposition;
    use crate::linalg::{orthonormalize, projector, Subspace, DEFAULT_TOL};
    use crate::perm_action::{cyclic, enumerate_group, symmetric, DEFAULT_CAP};

    fn space_from(v: CMatrix) -> MinimalSpace {
        let space = orthonormalize(&v, DEFAULT_TOL);
        MinimalSpace {
            id: 0,
            projector: projector(&space),
            space,
            eigenvalue: 0.0,
        }
    }

    #[test]
    fn constants_have_unit_kernel() {
        let a = enumerate_group(5, cyclic(5).unwrap(), DEFAULT_CAP).unwrap();
        let s = space_from(CMatrix::from_element(5, 1, Complex64::new(1.0, 0.0)));
        let fam = kernel_family(&s, 5);
        assert!(max_abs(&(fam.k.clone() - CMatrix::from_element(5, 5, Complex64::new(1.0, 0.0)))) < 1e-14);
        let r = verify_kernel_properties(&fam, &s, &a, 1, DEFAULT_TOL).unwrap();
        assert!(r.max_residual() < 1e-14);
        assert!((r.diagonal_min - 1.0).abs() < 1e-14);
    }

    #[test]
    fn c4_character_kernel() {
        let a = enumerate_group(4, cyclic(4).unwrap(), DEFAULT_CAP).unwrap();
        let i = Complex64::new(0.0, 1.0);
        for j in 0..4i32 {
            let chi = CMatrix::from_fn(4, 1, |x, _| i.powi(j * x as i32));
            let s = space_from(chi);
            let fam = kernel_family(&s, 4);
            // DFT projector oracle: Π = χ χᴴ / 4, so K_x(y) = i^{j(y−x)}
            for x in 0..4i32 {
                for y in 0..4i32 {
                    let want = i.powi(j * (y - x));
                    assert!((fam.k[(y as usize, x as usize)] - want).norm() < 1e-14);
                }
            }
            verify_kernel_properties(&fam, &s, &a, 2, DEFAULT_TOL).unwrap();
        }
    }

    #[test]
    fn zero_space_has_zero_family() {
        let s = MinimalSpace {
            id: 3,
            space: Subspace::zero(4, DEFAULT_TOL),
            projector: CMatrix::zeros(4, 4),
            eigenvalue: 0.0,
        };
        let fam = kernel_family(&s, 4);
        assert_eq!(fam.k, CMatrix::zeros(4, 4));
        assert_eq!(fam.space_id, 3);
    }

    #[test]
    fn diagonal_equals_dimension() {
        let a = enumerate_group(3, symmetric(3).unwrap(), DEFAULT_CAP).unwrap();
        let spaces = minimal_decomposition(&a, 42, DEFAULT_TOL).unwrap();
        for s in &spaces {
            let fam = kernel_family(s, 3);
            // trace oracle: Σ_x Π[x][x] = dim
            let trace: Complex64 = (0..3).map(|x| s.projector[(x, x)]).sum();
            assert!((trace.re - s.dim() as f64).abs() < 1e-12);
            for x in 0..3 {
                assert!((fam.k[(x, x)].re - s.dim() as f64).abs() < 1e-9);
            }
            verify_kernel_properties(&fam, s, &a, 7, DEFAULT_TOL).unwrap();
        }
        assert_eq!(spaces[1].dim(), 2);
    }

    #[test]
    fn non_invariant_space_is_flagged() {
        let a = enumerate_group(3, cyclic(3).unwrap(), DEFAULT_CAP).unwrap();
        let mut e0 = CMatrix::zeros(3, 1);
        e0[(0, 0)] = Complex64::new(1.0, 0.0);
        let s = space_from(e0);
        let err = verify_kernel_properties(&kernel_family(&s, 3), &s, &a, 0, DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, Error::PropertyViolation { .. }));
    }
}
