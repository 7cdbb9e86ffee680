//! The regular action of S3 contains its 2-dimensional irreducible twice, so
//! the decomposition is not unique and an invariant subspace escapes the
//! sum-of-minimal-spaces form.
//!
//! cargo run --example negative_control

use ginvariant::report::{decompose, ActionKind, Family, GroupSpec, Options};

fn main() -> ginvariant::Result<()> {
    let spec = GroupSpec::Named {
        family: Family::Symmetric,
        n: 3,
        action: ActionKind::Regular,
    };
    let r = decompose(&spec, &Options::default())?;
    println!("{}: |G| = {}, dims {:?}", r.instance, r.group_order, r.dims);
    println!("multiplicity free: {}", r.multiplicity_free);
    println!("star table:");
    for row in &r.star_table {
        println!("  {row:?}");
    }
    println!("verdict {:?}", r.verdict);
    match &r.structure.twisted_diagonal {
        Some(w) => println!(
            "twisted diagonal: rank {} inside a sum of rank {} (signature {:?})",
            w.y_rank, w.e_rank, w.omega
        ),
        None => println!("no twisted diagonal found"),
    }
    Ok(())
}
