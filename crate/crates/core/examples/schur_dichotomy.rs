//! Group-averaged random operators between minimal spaces vanish off the
//! diagonal and are scalar on it.
//!
//! cargo run --example schur_dichotomy

use ginvariant::decomposition::minimal_decomposition;
use ginvariant::linalg::{c, CMatrix, DEFAULT_TOL};
use ginvariant::perm_action::{dihedral, enumerate_group, DEFAULT_CAP};
use ginvariant::schur::{classify_intertwiner, group_average, run_trials};

fn main() -> ginvariant::Result<()> {
    let action = enumerate_group(5, dihedral(5)?, DEFAULT_CAP)?;
    let spaces = minimal_decomposition(&action, 42, DEFAULT_TOL)?;

    let shift = CMatrix::from_fn(5, 5, |i, j| if j == (i + 1) % 5 { c(1.0, 0.5) } else { c(0.0, 0.0) });
    for src in &spaces {
        for dst in &spaces {
            let t = group_average(&shift, src, dst, &action);
            println!("H{} -> H{}: {:?}", src.id, dst.id, classify_intertwiner(&t, src, dst, DEFAULT_TOL));
        }
    }

    let summary = run_trials(&action, &spaces, 100, 7, DEFAULT_TOL);
    println!(
        "{} pairs x {} trials: {} zero, {} scalar, {} violations",
        summary.pairs, summary.trials_per_pair, summary.zero, summary.scalar, summary.violation
    );
    Ok(())
}
