//! Reproducing kernels of the minimal spaces of S4 acting on 4 points.
//!
//! cargo run --example kernels

use ginvariant::decomposition::minimal_decomposition;
use ginvariant::kernels::{kernel_family, verify_kernel_properties};
use ginvariant::linalg::DEFAULT_TOL;
use ginvariant::perm_action::{enumerate_group, symmetric, DEFAULT_CAP};

fn main() -> ginvariant::Result<()> {
    let action = enumerate_group(4, symmetric(4)?, DEFAULT_CAP)?;
    let spaces = minimal_decomposition(&action, 42, DEFAULT_TOL)?;

    for s in &spaces {
        let fam = kernel_family(s, action.n_points());
        let r = verify_kernel_properties(&fam, s, &action, 1, DEFAULT_TOL)?;
        println!("H{} (dim {})", s.id, s.dim());
        let k0 = fam.kernel_at(0);
        let row: Vec<String> = k0.iter().map(|z| format!("{:+.4}", z.re)).collect();
        println!("  K_0 = [{}]", row.join(", "));
        println!("  K_x(x) = {:.12}", r.diagonal_min);
        println!("  worst residual {:.2e}", r.max_residual());
    }
    Ok(())
}
