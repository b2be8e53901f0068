//! Writing systems to the JSON format and reading them back.

use additive_systems::document::{parse_system, system_to_json};
use additive_systems::{verify_additive, AdditiveSystem, RadixSeq, SetExpr};

fn main() {
    let system = AdditiveSystem::new(
        vec![
            SetExpr::explicit([0, 1]).unwrap(),
            SetExpr::dilated(2u32, SetExpr::explicit([0, 1, 2]).unwrap()).unwrap(),
        ],
        Some(RadixSeq::repeating([2]).unwrap()),
    )
    .unwrap();
    let text = system_to_json(&system);
    println!("{text}");
    let back = parse_system(&text).unwrap();
    println!("round trip exact: {}", back == system);
    println!("additive below 10000: {}", verify_additive(&back, 10_000).is_ok());

    let unknown = r#"{"version": "1", "sets": [{"type": "cone", "apex": 3}]}"#;
    println!("{}", parse_system(unknown).unwrap_err());
}
