//! Every invariant subspace of a multiplicity-free action is a sum of
//! minimal spaces, and different index sets give different sums.
//!
//! cargo run --example structure_theorem

use ginvariant::decomposition::minimal_decomposition;
use ginvariant::invariant_subspaces::{check_structure, exhaustive_round_trip, orbit_span};
use ginvariant::linalg::{c, CMatrix, DEFAULT_TOL};
use ginvariant::perm_action::{dihedral, enumerate_group, DEFAULT_CAP};

fn main() -> ginvariant::Result<()> {
    let action = enumerate_group(8, dihedral(8)?, DEFAULT_CAP)?;
    let spaces = minimal_decomposition(&action, 42, DEFAULT_TOL)?;
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    println!("D8 on 8 vertices, dims {dims:?}");

    // f(x) = 1 on even vertices, 0 on odd ones
    let f = CMatrix::from_fn(8, 1, |x, _| c(((x + 1) % 2) as f64, 0.0));
    let y = orbit_span(&f, &action, DEFAULT_TOL)?;
    let (omega, residual) = check_structure(&y, &spaces, DEFAULT_TOL)?;
    println!("orbit span of the even indicator: rank {}, signature {:?}, residual {residual:.1e}", y.rank(), omega.omega);

    let delta = CMatrix::from_fn(8, 1, |x, _| c(if x == 0 { 1.0 } else { 0.0 }, 0.0));
    let y = orbit_span(&delta, &action, DEFAULT_TOL)?;
    let (omega, _) = check_structure(&y, &spaces, DEFAULT_TOL)?;
    println!("orbit span of a point mass: rank {}, signature {:?}", y.rank(), omega.omega);

    if let Some(rt) = exhaustive_round_trip(&action, &spaces, DEFAULT_TOL)? {
        println!("{} subsets, {} mismatches, injective {}", rt.subsets, rt.mismatches, rt.injective());
    }
    Ok(())
}
