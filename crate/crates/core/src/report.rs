//! Group specifications and the machine-readable reports emitted by `ginv`.
//!
//! Reports are plain `serde` structs. [`to_json`] renders them with every
//! float in 17 significant digits, so output is byte-stable for a fixed input.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decomposition::{build_report, MinimalSpace, Verdict};
use crate::error::{Error, Result};
use crate::invariant_subspaces::{
    check_structure, exhaustive_round_trip, orbit_span, twisted_diagonal, verify_structure,
    RoundTripReport, StructureReport, StructureWitness,
};
use crate::kernels::{kernel_family, verify_kernel_properties, KernelReport};
use crate::linalg::{DEFAULT_TOL, CMatrix};
use crate::perm_action::{self, enumerate_group, GroupAction, Permutation, DEFAULT_CAP};
use crate::schur::{run_trials, SchurSummary};
use crate::torus::{
    act, box_indices, fejer_smooth, inner_product, orbit_span_certificate, polydisc_signature,
    separation_check, FourierFunction, MultiIndex, TorusPoint, DEFAULT_DEGREE,
};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SCHUR_TRIALS: usize = 100;
pub const DEFAULT_STRUCTURE_TRIALS: usize = 50;
/// Largest degree accepted by the torus command.
pub const MAX_TORUS_DEGREE: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "dihedral" => Ok(Family::Dihedral),
            "symmetric" => Ok(Family::Symmetric),
            other => Err(Error::Parse(format!("unknown group family `{other}`"))),
        }
    }
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Symmetric => "symmetric",
        }
    }

    pub fn generators(self, n: usize) -> Result<Vec<Permutation>> {
        match self {
            Family::Cyclic => perm_action::cyclic(n),
            Family::Dihedral => perm_action::dihedral(n),
            Family::Symmetric => perm_action::symmetric(n),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ActionKind {
    #[default]
    Natural,
    Regular,
}

impl FromStr for ActionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(ActionKind::Natural),
            "regular" => Ok(ActionKind::Regular),
            other => Err(Error::Parse(format!("unknown action `{other}`"))),
        }
    }
}

/// On-disk group description: `{"points": n, "generators": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub points: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Named {
        family: Family,
        n: usize,
        action: ActionKind,
    },
    Explicit(GroupFile),
}

fn parse_size(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a group size")))
}

impl GroupSpec {
    /// Accepts `family:n`, `regular:family:n`, inline JSON, or a path to a
    /// JSON group file. `action` overrides the action of named families.
    pub fn parse(s: &str, action: Option<ActionKind>) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Self::from_json(s);
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["regular", family, n] => Ok(GroupSpec::Named {
                family: family.parse()?,
                n: parse_size(n)?,
                action: ActionKind::Regular,
            }),
            [family, n] if Family::from_str(family).is_ok() => Ok(GroupSpec::Named {
                family: family.parse()?,
                n: parse_size(n)?,
                action: action.unwrap_or_default(),
            }),
            _ => {
                let text = std::fs::read_to_string(s)
                    .map_err(|e| Error::Parse(format!("cannot read group spec `{s}`: {e}")))?;
                Self::from_json(&text)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map(GroupSpec::Explicit)
            .map_err(|e| Error::Parse(format!("bad group JSON: {e}")))
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Named { family, n, action } => match action {
                ActionKind::Natural => format!("{}:{n}", family.name()),
                ActionKind::Regular => format!("regular:{}:{n}", family.name()),
            },
            GroupSpec::Explicit(f) => format!("explicit:{}", f.points),
        }
    }

    pub fn build(&self, cap: usize) -> Result<GroupAction> {
        match self {
            GroupSpec::Named { family, n, action } => {
                let gens = family.generators(*n)?;
                let natural = enumerate_group(gens[0].len(), gens, cap)?;
                match action {
                    ActionKind::Natural => Ok(natural),
                    ActionKind::Regular => natural.regular(cap),
                }
            }
            GroupSpec::Explicit(f) => {
                let gens = f
                    .generators
                    .iter()
                    .map(|g| Permutation::new(g.clone()))
                    .collect::<Result<Vec<_>>>()?;
                enumerate_group(f.points, gens, cap)
            }
        }
    }
}

/// `family:a..b` (inclusive) or `family:n`, expanded into named specs.
pub fn parse_family_range(s: &str, action: ActionKind) -> Result<Vec<GroupSpec>> {
    let (family, range) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected family:range, got `{s}`")))?;
    let family: Family = family.parse()?;
    let (lo, hi) = match range.split_once("..") {
        Some((a, b)) => (parse_size(a)?, parse_size(b.trim_start_matches('='))?),
        None => {
            let n = parse_size(range)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(Error::Parse(format!("empty range `{range}`")));
    }
    Ok((lo..=hi)
        .map(|n| GroupSpec::Named { family, n, action })
        .collect())
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub tol: f64,
    pub cap: usize,
    pub emit_bases: bool,
    pub schur_trials: usize,
    pub structure_trials: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
            cap: DEFAULT_CAP,
            emit_bases: false,
            schur_trials: DEFAULT_SCHUR_TRIALS,
            structure_trials: DEFAULT_STRUCTURE_TRIALS,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceEntry {
    pub id: usize,
    pub dim: usize,
    pub eigenvalue: f64,
    /// Orthonormal basis columns as `[re, im]` pairs, with `--emit-bases`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residuals {
    pub orthogonality: f64,
    pub completeness: f64,
    pub equivariance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelSummary {
    pub max_residual: f64,
    pub spaces: Vec<KernelReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureSummary {
    pub random: StructureReport,
    /// Exhaustive `signature(E_Ω) = Ω` check, when multiplicity-free and small.
    pub round_trip: Option<RoundTripReport>,
    /// Failure recorded for the twisted-diagonal subspace, when the action is
    /// not multiplicity-free.
    pub twisted_diagonal: Option<StructureWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeReport {
    pub schema: u32,
    pub instance: String,
    pub group_order: usize,
    pub n_points: usize,
    pub seed: u64,
    pub tol: f64,
    pub verdict: Verdict,
    pub multiplicity_free: bool,
    pub dims: Vec<usize>,
    pub spaces: Vec<SpaceEntry>,
    pub residuals: Residuals,
    pub star_table: Vec<Vec<usize>>,
    pub kernels: KernelSummary,
    pub schur: SchurSummary,
    pub structure: StructureSummary,
}

fn basis_entries(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    m.column_iter()
        .map(|c| c.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn twisted_witness(
    action: &GroupAction,
    spaces: &[MinimalSpace],
    seed: u64,
    tol: f64,
) -> Result<Option<StructureWitness>> {
    let Some(v) = twisted_diagonal(action, spaces, seed, tol) else {
        return Ok(None);
    };
    let y = orbit_span(&v, action, tol)?;
    match check_structure(&y, spaces, tol) {
        Ok(_) => Ok(None),
        Err(Error::StructureFailure(w)) => Ok(Some(*w)),
        Err(e) => Err(e),
    }
}

/// Full pipeline for one action: decomposition, kernels, Schur trials and
/// structure-theorem trials.
pub fn decompose(spec: &GroupSpec, opts: &Options) -> Result<DecomposeReport> {
    let action = spec.build(opts.cap)?;
    decompose_action(&spec.label(), &action, opts)
}

pub fn decompose_action(label: &str, action: &GroupAction, opts: &Options) -> Result<DecomposeReport> {
    let tol = opts.tol;
    let report = build_report(action, opts.seed, tol)?;
    let n = action.n_points();

    let mut kernels = Vec::with_capacity(report.spaces.len());
    for s in &report.spaces {
        let fam = kernel_family(s, n);
        kernels.push(verify_kernel_properties(&fam, s, action, opts.seed.wrapping_add(1), tol)?);
    }
    let schur = run_trials(action, &report.spaces, opts.schur_trials, opts.seed.wrapping_add(2), tol);
    let random = verify_structure(action, &report.spaces, opts.structure_trials, opts.seed.wrapping_add(3), tol)?;
    let round_trip = if report.multiplicity_free {
        exhaustive_round_trip(action, &report.spaces, tol)?
    } else {
        None
    };
    let twisted = if report.multiplicity_free {
        None
    } else {
        twisted_witness(action, &report.spaces, opts.seed.wrapping_add(4), tol)?
    };

    Ok(DecomposeReport {
        schema: SCHEMA,
        instance: label.to_string(),
        group_order: action.order(),
        n_points: n,
        seed: opts.seed,
        tol,
        verdict: report.verdict,
        multiplicity_free: report.multiplicity_free,
        dims: report.spaces.iter().map(MinimalSpace::dim).collect(),
        spaces: report
            .spaces
            .iter()
            .map(|s| SpaceEntry {
                id: s.id,
                dim: s.dim(),
                eigenvalue: s.eigenvalue,
                basis: opts.emit_bases.then(|| basis_entries(s.space.basis())),
            })
            .collect(),
        residuals: Residuals {
            orthogonality: report.orthogonality_residual,
            completeness: report.completeness_residual,
            equivariance: report.equivariance_residual,
        },
        star_table: report.star.entries.clone(),
        kernels: KernelSummary {
            max_residual: kernels.iter().map(KernelReport::max_residual).fold(0.0, f64::max),
            spaces: kernels,
        },
        schur,
        structure: StructureSummary {
            random,
            round_trip,
            twisted_diagonal: twisted,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub instance: String,
    pub group_order: usize,
    pub n_points: usize,
    pub minimal_spaces: usize,
    pub multiplicity_free: bool,
    pub star_holds: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub schema: u32,
    pub seed: u64,
    pub rows: Vec<SurveyRow>,
}

/// Decomposition verdicts for many instances, computed in parallel and
/// returned in input order.
pub fn survey(specs: &[GroupSpec], opts: &Options) -> Result<SurveyReport> {
    let rows = specs
        .par_iter()
        .map(|spec| {
            let action = spec.build(opts.cap)?;
            let r = build_report(&action, opts.seed, opts.tol)?;
            Ok(SurveyRow {
                instance: spec.label(),
                group_order: action.order(),
                n_points: action.n_points(),
                minimal_spaces: r.spaces.len(),
                multiplicity_free: r.multiplicity_free,
                star_holds: r.star.holds(),
                verdict: r.verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurveyReport {
        schema: SCHEMA,
        seed: opts.seed,
        rows,
    })
}

pub fn survey_csv(report: &SurveyReport) -> String {
    let mut out = String::from("instance,group_order,n_points,minimal_spaces,multiplicity_free,star_holds,verdict\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:?}",
            r.instance, r.group_order, r.n_points, r.minimal_spaces, r.multiplicity_free, r.star_holds, r.verdict
        );
    }
    out
}

/// Parses one complex literal: `a`, `bi`, `a+bi`, `a-bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad complex number `{s}`"));
    let num = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => Ok(Complex64::new(
            body[..i].parse::<f64>().map_err(|_| bad())?,
            num(&body[i..])?,
        )),
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

/// Parses `k1,..,kn:coefficient` terms separated by `;` or whitespace.
pub fn parse_monomials(s: &str, degree: u32) -> Result<FourierFunction> {
    let mut terms = Vec::new();
    for term in s.split(|c: char| c == ';' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (k, coeff) = term
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected k-tuple:coefficient, got `{term}`")))?;
        let k = k
            .split(',')
            .map(|x| x.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad index `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        terms.push((MultiIndex(k), parse_complex(coeff)?));
    }
    let n = terms
        .first()
        .map(|(k, _)| k.n())
        .ok_or_else(|| Error::Parse("no monomials given".into()))?;
    FourierFunction::from_terms(n, degree, terms).map_err(|e| match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientEntry {
    pub k: Vec<i32>,
    pub re: f64,
    pub im: f64,
}

pub fn coefficient_table(f: &FourierFunction) -> Vec<CoefficientEntry> {
    f.coeffs()
        .iter()
        .map(|(k, c)| CoefficientEntry {
            k: k.0.clone(),
            re: c.re,
            im: c.im,
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationScan {
    pub n: usize,
    pub degree: u32,
    pub pairs: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusSuite {
    /// `max |⟨z^k, z^k'⟩ − δ_kk'|` over the whole box.
    pub orthonormality: f64,
    /// `max |⟨w·f, w·g⟩ − ⟨f, g⟩|` over random triples.
    pub action_unitarity: f64,
    /// `‖f − F_d f‖₂` for `d ∈ {1, 2, 4, 8, 16}`, one row per random function.
    pub fejer_errors: Vec<Vec<f64>>,
    pub fejer_monotone: bool,
    /// `max |F_d(w·f) − w·F_d(f)|`.
    pub fejer_equivariance: f64,
    pub polydisc_rotations: usize,
    pub polydisc_preserved: bool,
    pub separation: SeparationScan,
    /// Largest residual when isolating coefficients from rotates.
    pub orbit_span: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolydiscCheck {
    pub holds: bool,
    pub violations: Vec<Vec<i32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub schema: u32,
    pub n: usize,
    pub degree: u32,
    pub seed: u64,
    pub suite: TorusSuite,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Vec<CoefficientEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fejer_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smoothed: Option<Vec<CoefficientEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polydisc: Option<PolydiscCheck>,
}

#[derive(Clone, Debug)]
pub struct TorusOptions {
    /// Torus dimension; inferred from `monomials` when absent.
    pub n: Option<usize>,
    pub degree: u32,
    pub seed: u64,
    pub monomials: Option<String>,
    pub fejer: Option<u32>,
    pub check_polydisc: bool,
}

impl Default for TorusOptions {
    fn default() -> Self {
        Self {
            n: None,
            degree: DEFAULT_DEGREE,
            seed: DEFAULT_SEED,
            monomials: None,
            fejer: None,
            check_polydisc: false,
        }
    }
}

pub const FEJER_DEGREES: [u32; 5] = [1, 2, 4, 8, 16];

/// Every `(support, ω)` pair of the `n = 1, d = 4` box: separation must
/// succeed exactly when the support leaves `ω`.
pub fn separation_scan(seed: u64) -> Result<SeparationScan> {
    let (n, degree) = (1, 4);
    let indices = box_indices(n, degree);
    let m = indices.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = 0;
    let mut mismatches = 0;
    for support_mask in 1u32..(1 << m) {
        let support: Vec<&MultiIndex> = (0..m).filter(|b| support_mask & (1 << b) != 0).map(|b| &indices[b]).collect();
        let dense = FourierFunction::random_dense(n, degree, &mut rng)?;
        let g = FourierFunction::from_terms(
            n,
            degree,
            support.iter().map(|&k| {
                let c = dense.coeff(k);
                (k.clone(), if c == Complex64::new(0.0, 0.0) { Complex64::new(1.0, 0.0) } else { c })
            }),
        )?;
        for omega_mask in 0u32..(1 << m) {
            let omega: BTreeSet<MultiIndex> = (0..m)
                .filter(|b| omega_mask & (1 << b) != 0)
                .map(|b| indices[b].clone())
                .collect();
            let expected = support_mask & !omega_mask != 0;
            if separation_check(&omega, &g) != expected {
                mismatches += 1;
            }
            pairs += 1;
        }
    }
    Ok(SeparationScan {
        n,
        degree,
        pairs,
        mismatches,
    })
}

pub fn torus_suite(n: usize, degree: u32, seed: u64) -> Result<TorusSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Complex64::new(1.0, 0.0);

    let monomials: Vec<FourierFunction> = box_indices(n, degree)
        .into_iter()
        .map(|k| FourierFunction::monomial(degree, k, one))
        .collect::<Result<_>>()?;
    let mut orthonormality: f64 = 0.0;
    for (i, a) in monomials.iter().enumerate() {
        for (j, b) in monomials.iter().enumerate() {
            let want = if i == j { one } else { Complex64::new(0.0, 0.0) };
            orthonormality = orthonormality.max((inner_product(a, b)? - want).norm());
        }
    }

    let mut action_unitarity: f64 = 0.0;
    let mut fejer_equivariance: f64 = 0.0;
    for _ in 0..20 {
        let f = FourierFunction::random_dense(n, degree, &mut rng)?;
        let g = FourierFunction::random_dense(n, degree, &mut rng)?;
        let w = TorusPoint::random(n, &mut rng)?;
        let lhs = inner_product(&act(&w, &f)?, &act(&w, &g)?)?;
        action_unitarity = action_unitarity.max((lhs - inner_product(&f, &g)?).norm());
        for d in FEJER_DEGREES {
            let diff = fejer_smooth(&act(&w, &f)?, d).sub(&act(&w, &fejer_smooth(&f, d))?)?;
            let worst = diff.coeffs().values().map(|c| c.norm()).fold(0.0, f64::max);
            fejer_equivariance = fejer_equivariance.max(worst);
        }
    }

    let mut fejer_errors = Vec::with_capacity(20);
    for _ in 0..20 {
        let f = FourierFunction::random_dense(n, degree, &mut rng)?;
        let row = FEJER_DEGREES
            .iter()
            .map(|&d| Ok(f.sub(&fejer_smooth(&f, d))?.norm()))
            .collect::<Result<Vec<f64>>>()?;
        fejer_errors.push(row);
    }
    let fejer_monotone = fejer_errors.iter().all(|r| r.windows(2).all(|w| w[1] < w[0]));

    let mut polydisc_preserved = true;
    let polydisc_rotations = 100;
    for _ in 0..polydisc_rotations {
        let dense = FourierFunction::random_dense(n, degree, &mut rng)?;
        let f = dense.map_coeffs(|k, c| if k.is_nonnegative() { c } else { Complex64::new(0.0, 0.0) });
        let w = TorusPoint::random(n, &mut rng)?;
        let rotated = act(&w, &f)?;
        polydisc_preserved &= polydisc_signature(&f) && polydisc_signature(&rotated) && rotated.support() == f.support();
    }

    let separation = separation_scan(seed)?;

    let sparse = FourierFunction::random_dense(n, degree, &mut rng)?;
    let limited = FourierFunction::from_terms(n, degree, sparse.coeffs().iter().take(64).map(|(k, c)| (k.clone(), *c)))?;
    let orbit_span = orbit_span_certificate(&limited)?.max_residual;

    Ok(TorusSuite {
        orthonormality,
        action_unitarity,
        fejer_errors,
        fejer_monotone,
        fejer_equivariance,
        polydisc_rotations,
        polydisc_preserved,
        separation,
        orbit_span,
    })
}

pub fn torus(opts: &TorusOptions) -> Result<TorusReport> {
    if opts.degree > MAX_TORUS_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "degree {} exceeds {MAX_TORUS_DEGREE}",
            opts.degree
        )));
    }
    let input = opts
        .monomials
        .as_deref()
        .map(|m| parse_monomials(m, opts.degree))
        .transpose()?;
    let n = match (&input, opts.n) {
        (Some(f), Some(n)) if f.n() != n => {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.n(),
            })
        }
        (Some(f), _) => f.n(),
        (None, n) => n.unwrap_or(2),
    };
    let suite = torus_suite(n, opts.degree, opts.seed)?;
    let smoothed = match (&input, opts.fejer) {
        (Some(f), Some(d)) => Some(coefficient_table(&fejer_smooth(f, d))),
        _ => None,
    };
    let polydisc = match (&input, opts.check_polydisc) {
        (Some(f), true) => Some(PolydiscCheck {
            holds: polydisc_signature(f),
            violations: f
                .coeffs()
                .keys()
                .filter(|k| !k.is_nonnegative())
                .map(|k| k.0.clone())
                .collect(),
        }),
        _ => None,
    };
    Ok(TorusReport {
        schema: SCHEMA,
        n,
        degree: opts.degree,
        seed: opts.seed,
        suite,
        input: input.as_ref().map(coefficient_table),
        fejer_degree: opts.fejer.filter(|_| input.is_some()),
        smoothed,
        polydisc,
    })
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema: u32,
    error: ErrorBody<'a>,
}

pub fn error_json(err: &Error) -> String {
    to_json(&ErrorReport {
        schema: SCHEMA,
        error: ErrorBody {
            kind: err.kind(),
            message: err.to_string(),
            exit_code: err.exit_code(),
        },
    })
}

/// Pretty JSON with every float written as `{:.16e}` (17 significant digits).
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize to JSON");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, level: usize| {
        for _ in 0..level {
            out.push_str("  ");
        }
    };
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => {
                let _ = write!(out, "{i}");
            }
            (_, Some(u), _) => {
                let _ = write!(out, "{u}");
            }
            (_, _, Some(f)) => {
                let _ = write!(out, "{f:.16e}");
            }
            _ => out.push_str(&n.to_string()),
        },
        Value::Array(items) => {
            if items.iter().all(|i| !i.is_array() && !i.is_object()) {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, item, indent);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}
