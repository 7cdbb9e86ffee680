//! Splits the functions on the vertices of a hexagon into minimal invariant
//! spaces and prints the star table.
//!
//! cargo run --example decompose

use ginvariant::decomposition::build_report;
use ginvariant::linalg::DEFAULT_TOL;
use ginvariant::perm_action::{dihedral, enumerate_group, DEFAULT_CAP};

fn main() -> ginvariant::Result<()> {
    let action = enumerate_group(6, dihedral(6)?, DEFAULT_CAP)?;
    let report = build_report(&action, 42, DEFAULT_TOL)?;

    println!("D6 on 6 vertices, |G| = {}", action.order());
    for s in &report.spaces {
        println!("  H{}  dim {}  commutant eigenvalue {:+.6}", s.id, s.dim(), s.eigenvalue);
    }
    println!("completeness  {:.2e}", report.completeness_residual);
    println!("orthogonality {:.2e}", report.orthogonality_residual);
    println!("equivariance  {:.2e}", report.equivariance_residual);
    println!("dim(H_i ∩ H(x)):");
    for row in &report.star.entries {
        println!("  {row:?}");
    }
    println!("verdict {:?}", report.verdict);
    Ok(())
}
