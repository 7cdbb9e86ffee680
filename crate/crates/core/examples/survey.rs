//! Verdicts across small cyclic, dihedral and symmetric actions.
//!
//! cargo run --release --example survey

use ginvariant::report::{parse_family_range, survey, survey_csv, ActionKind, Options};

fn main() -> ginvariant::Result<()> {
    let mut specs = Vec::new();
    for (family, action) in [
        ("cyclic:3..8", ActionKind::Natural),
        ("dihedral:3..8", ActionKind::Natural),
        ("symmetric:3..5", ActionKind::Natural),
        ("cyclic:2..6", ActionKind::Regular),
        ("dihedral:3..4", ActionKind::Regular),
        ("symmetric:3..3", ActionKind::Regular),
    ] {
        specs.extend(parse_family_range(family, action)?);
    }
    let report = survey(&specs, &Options::default())?;
    print!("{}", survey_csv(&report));
    Ok(())
}
