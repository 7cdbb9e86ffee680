//! Fejér smoothing on the 2-torus: error against the original polynomial as
//! the smoothing degree grows, and separation of a function from a span of
//! monomials.
//!
//! cargo run --example torus_fejer

use std::collections::BTreeSet;

use ginvariant::linalg::c;
use ginvariant::torus::{
    act, fejer_smooth, orbit_span_certificate, polydisc_signature, separation_check, FourierFunction,
    MultiIndex, TorusPoint,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ginvariant::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = FourierFunction::random_dense(2, 6, &mut rng)?;
    for d in [1, 2, 4, 8, 16, 32] {
        println!("d = {d:>2}  ‖f − F_d f‖ = {:.6}", f.sub(&fejer_smooth(&f, d))?.norm());
    }

    let g = FourierFunction::from_terms(
        2,
        6,
        [
            (MultiIndex(vec![1, 0]), c(1.0, 0.0)),
            (MultiIndex(vec![2, 3]), c(0.0, -2.0)),
        ],
    )?;
    let w = TorusPoint::from_angles(&[0.7, -1.9])?;
    let rotated = act(&w, &g)?;
    println!("polydisc support before and after rotation: {} {}", polydisc_signature(&g), polydisc_signature(&rotated));

    let omega: BTreeSet<MultiIndex> = [MultiIndex(vec![1, 0])].into();
    println!("separated from span{{z^(1,0)}}: {}", separation_check(&omega, &g));
    let omega: BTreeSet<MultiIndex> = g.support();
    println!("separated from its own support: {}", separation_check(&omega, &g));

    let cert = orbit_span_certificate(&g)?;
    println!("{} rotates isolate every monomial, residual {:.1e}", cert.rotations, cert.max_residual);
    Ok(())
}
