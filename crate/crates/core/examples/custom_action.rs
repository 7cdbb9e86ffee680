//! Decomposes an action given by explicit generators: the rotation group of
//! the cube acting on its 6 faces.
//!
//! cargo run --example custom_action

use ginvariant::report::{decompose, to_json, GroupSpec, Options};

const CUBE_FACES: &str = r#"{
  "points": 6,
  "generators": [[0, 1, 4, 5, 3, 2], [4, 5, 2, 3, 1, 0]]
}"#;

fn main() -> ginvariant::Result<()> {
    let spec = GroupSpec::from_json(CUBE_FACES)?;
    let opts = Options {
        schur_trials: 10,
        structure_trials: 10,
        ..Options::default()
    };
    let r = decompose(&spec, &opts)?;
    println!("|G| = {}, dims {:?}, verdict {:?}", r.group_order, r.dims, r.verdict);
    println!("{}", to_json(&r.residuals));
    Ok(())
}
