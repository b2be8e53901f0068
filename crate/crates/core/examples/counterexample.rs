//! A family that is not additive: 2 = 2 + 0 = 0 + 2.

use additive_systems::{count_representations, verify_additive, AdditiveSystem, Nat, SetExpr};

fn main() {
    let family = AdditiveSystem::from_sets(vec![
        SetExpr::explicit([0, 1, 2]).unwrap(),
        SetExpr::explicit([0, 2, 4]).unwrap(),
        SetExpr::ray(9u32).unwrap(),
    ])
    .unwrap();
    for n in 0u32..6 {
        println!("n = {n}: {} representations", count_representations(&family, &Nat::from(n)));
    }
    match verify_additive(&family, 9) {
        Ok(_) => println!("verified"),
        Err(c) => println!("counterexample: {c}"),
    }
}
