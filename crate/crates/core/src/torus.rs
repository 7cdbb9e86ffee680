//! Trigonometric polynomials on the torus `T^n` (n ≤ 3) under rotation.
//!
//! A function is a finite coefficient map `k ↦ c_k` over the degree box
//! `‖k‖∞ ≤ d`, standing for `f(z) = Σ c_k z^k`. Rotation by `w ∈ T^n` sends
//! `c_k` to `c_k w^k`, each monomial line `H_k` is a one-dimensional minimal
//! space, and Parseval makes the normalized `L²` inner product exact.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;
pub const DEFAULT_DEGREE: u32 = 8;
const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<i32>);

impl MultiIndex {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn max_abs(&self) -> u32 {
        self.0.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl From<Vec<i32>> for MultiIndex {
    fn from(v: Vec<i32>) -> Self {
        Self(v)
    }
}

/// All multi-indices of the box `‖k‖∞ ≤ degree` in lexicographic order.
pub fn box_indices(n: usize, degree: u32) -> Vec<MultiIndex> {
    let d = degree as i32;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-d..=d).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(MultiIndex).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourierFunction {
    n: usize,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "torus dimension must be between 1 and {MAX_DIM}, got {n}"
        )))
    }
}

impl FourierFunction {
    pub fn zero(n: usize, degree: u32) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn monomial(degree: u32, k: impl Into<MultiIndex>, c: Complex64) -> Result<Self> {
        let k = k.into();
        let mut f = Self::zero(k.n(), degree)?;
        f.insert(k, c)?;
        Ok(f)
    }

    pub fn from_terms(
        n: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Result<Self> {
        let mut f = Self::zero(n, degree)?;
        for (k, c) in terms {
            f.insert(k, c)?;
        }
        Ok(f)
    }

    /// Adds `c` to coefficient `k`. Exact zeros are not stored.
    pub fn insert(&mut self, k: MultiIndex, c: Complex64) -> Result<()> {
        if k.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: k.n(),
            });
        }
        if k.max_abs() > self.degree {
            return Err(Error::InvalidArgument(format!(
                "index ({k}) lies outside the degree-{} box",
                self.degree
            )));
        }
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let sum = self.coeff(&k) + c;
        if sum == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, k: &MultiIndex) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Complex64> {
        &self.coeffs
    }

    pub fn support(&self) -> BTreeSet<MultiIndex> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&MultiIndex, Complex64) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, &c)| (k.clone(), f(k, c)))
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .collect();
        Self {
            n: self.n,
            degree: self.degree,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.degree = out.degree.max(other.degree);
        for (k, &c) in &other.coeffs {
            out.insert(k.clone(), -c)?;
        }
        Ok(out)
    }

    /// Evaluates `Σ c_k z^k` at a point of the torus.
    pub fn eval(&self, z: &TorusPoint) -> Result<Complex64> {
        check_same(self.n, z.n())?;
        Ok(self.coeffs.iter().map(|(k, c)| c * z.power(k)).sum())
    }

    /// Random coefficients (uniform real and imaginary parts in `[-1, 1]`)
    /// on every index of the box.
    pub fn random_dense(n: usize, degree: u32, rng: &mut impl Rng) -> Result<Self> {
        Self::from_terms(
            n,
            degree,
            box_indices(n, degree).into_iter().map(|k| {
                (k, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            }),
        )
    }
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    w: Vec<Complex64>,
}

impl TorusPoint {
    pub fn new(w: Vec<Complex64>) -> Result<Self> {
        check_dim(w.len())?;
        if let Some(bad) = w.iter().find(|z| (z.norm() - 1.0).abs() > UNIT_TOL) {
            return Err(Error::InvalidArgument(format!("{bad} is not of unit modulus")));
        }
        Ok(Self { w })
    }

    pub fn from_angles(theta: &[f64]) -> Result<Self> {
        Self::new(theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        let theta: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        Self::from_angles(&theta)
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// `w^k = Π w_j^{k_j}`.
    pub fn power(&self, k: &MultiIndex) -> Complex64 {
        self.w
            .iter()
            .zip(&k.0)
            .map(|(w, &e)| w.powi(e))
            .product()
    }
}

/// `f ↦ f(w ·)`, i.e. `c_k ↦ c_k w^k`.
pub fn act(w: &TorusPoint, f: &FourierFunction) -> Result<FourierFunction> {
    check_same(f.n, w.n())?;
    Ok(f.map_coeffs(|k, c| c * w.power(k)))
}

/// `Σ_k c_k conj(d_k)`, the `L²` inner product for normalized Lebesgue measure.
pub fn inner_product(f: &FourierFunction, g: &FourierFunction) -> Result<Complex64> {
    check_same(f.n, g.n)?;
    Ok(f.coeffs
        .iter()
        .filter_map(|(k, c)| g.coeffs.get(k).map(|d| c * d.conj()))
        .sum())
}

/// Orthogonal projection onto `H_k`.
pub fn project_k(f: &FourierFunction, k: &MultiIndex) -> Result<FourierFunction> {
    check_same(f.n, k.n())?;
    if k.max_abs() > f.degree {
        return Err(Error::InvalidArgument(format!(
            "index ({k}) lies outside the degree-{} box",
            f.degree
        )));
    }
    let mut out = FourierFunction::zero(f.n, f.degree)?;
    if let Some(&c) = f.coeffs.get(k) {
        out.insert(k.clone(), c)?;
    }
    Ok(out)
}

/// Fourier multiplier of the `n`-fold Fejér kernel of degree `d`.
pub fn fejer_multiplier(k: &MultiIndex, d: u32) -> f64 {
    k.0.iter()
        .map(|&kj| (1.0 - f64::from(kj.unsigned_abs()) / f64::from(d + 1)).max(0.0))
        .product()
}

/// Convolution with the Fejér kernel: a nonnegative, unit-mass average of
/// rotates of `f`. Its support is contained in that of `f`.
pub fn fejer_smooth(f: &FourierFunction, d: u32) -> FourierFunction {
    f.map_coeffs(|k, c| c * fejer_multiplier(k, d))
}

/// True iff every supported index is nonnegative (extends holomorphically to
/// the polydisc).
pub fn polydisc_signature(f: &FourierFunction) -> bool {
    f.coeffs.keys().all(MultiIndex::is_nonnegative)
}

/// Separating functional for `g` against `E_ω`.
///
/// With `h` the part of `g` supported outside `omega`, `Λ(f) = ⟨f, h⟩ / ‖h‖²`
/// vanishes on `E_ω` and has `Λ(g) = 1`. Returns false when `h = 0`.
pub fn separation_check(omega: &BTreeSet<MultiIndex>, g: &FourierFunction) -> bool {
    let outside = g.map_coeffs(|k, c| if omega.contains(k) { Complex64::new(0.0, 0.0) } else { c });
    let norm2 = outside.norm().powi(2);
    if norm2 == 0.0 {
        return false;
    }
    let functional = |f: &FourierFunction| -> Complex64 {
        inner_product(f, &outside).unwrap_or_default() / norm2
    };
    let vanishes = omega.iter().all(|k| {
        k.n() != g.n
            || functional(&FourierFunction {
                n: g.n,
                degree: g.degree.max(k.max_abs()),
                coeffs: BTreeMap::from([(k.clone(), Complex64::new(1.0, 0.0))]),
            }) == Complex64::new(0.0, 0.0)
    });
    vanishes && functional(g).re >= 0.5
}

/// Evidence that the rotates of `f` span exactly `E_support(f)`.
#[derive(Clone, Debug)]
pub struct OrbitSpanCertificate {
    pub support: BTreeSet<MultiIndex>,
    pub rotations: usize,
    /// `max_k ‖Σ_t a_t (w_t · f) − z^k‖∞` over the isolating combinations.
    pub max_residual: f64,
}

/// Rotates `f` by the grid of `(2d+1)`-th roots of unity and solves, for each
/// supported `k`, for the combination of rotates that isolates `z^k`.
pub fn orbit_span_certificate(f: &FourierFunction) -> Result<OrbitSpanCertificate> {
    let support: Vec<MultiIndex> = f.coeffs.keys().cloned().collect();
    let m = 2 * f.degree as usize + 1;
    let grid = box_indices(f.n, f.degree);
    let rotations: Vec<TorusPoint> = grid
        .iter()
        .map(|t| {
            let theta: Vec<f64> = t
                .0
                .iter()
                .map(|&j| TAU * f64::from(j) / m as f64)
                .collect();
            TorusPoint::from_angles(&theta)
        })
        .collect::<Result<_>>()?;
    // r[(i, t)]: coefficient of z^{k_i} in f(w_t ·)
    let r = DMatrix::from_fn(support.len(), rotations.len(), |i, t| {
        f.coeffs[&support[i]] * rotations[t].power(&support[i])
    });
    let gram = &r * r.adjoint();
    let lu = gram.lu();
    let mut max_residual: f64 = 0.0;
    for i in 0..support.len() {
        let mut e = DMatrix::<Complex64>::zeros(support.len(), 1);
        e[(i, 0)] = Complex64::new(1.0, 0.0);
        let z = lu.solve(&e).ok_or_else(|| {
            Error::InternalInconsistency("rotation system is singular".into())
        })?;
        let a = r.adjoint() * z;
        let res = (&r * a - e).iter().map(|c| c.norm()).fold(0.0, f64::max);
        max_residual = max_residual.max(res);
    }
    Ok(OrbitSpanCertificate {
        support: support.into_iter().collect(),
        rotations: rotations.len(),
        max_residual,
    })
}
