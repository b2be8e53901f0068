//! Direct-sum factorizations of finite sets and systems.

use additive_systems::{
    bns_from_radices, classify_system, decompose_set, interval_decompositions, is_indecomposable_set,
    solve_ax_interval, Classification, DigitSet, Nat, RadixSeq,
};

fn main() {
    for n in [6u64, 8, 9, 12] {
        let ds = interval_decompositions(n);
        println!("[0,{n}) has {} decompositions", ds.len());
        for d in ds {
            println!("  {d}");
        }
    }

    let set = DigitSet::from_u64s([0, 1, 3, 4, 9, 10, 12, 13]).unwrap();
    for d in decompose_set(&set) {
        println!("{set} = {d}");
    }

    let lacunary = DigitSet::from_u64s([0, 1, 2, 4, 8, 16]).unwrap();
    println!("{lacunary} indecomposable: {}", is_indecomposable_set(&lacunary));

    println!("[0,3) + X = [0,12) forces X = {}", solve_ax_interval(&Nat::from(3u32), &Nat::from(4u32)));

    for radices in [[2, 3, 5, 7], [2, 6, 5, 3]] {
        let system = bns_from_radices(&RadixSeq::finite(radices).unwrap(), 4).unwrap();
        match classify_system(&system, 4).unwrap() {
            Classification::Indecomposable => println!("radices {radices:?}: indecomposable"),
            Classification::Decomposable { index, witness } => {
                println!("radices {radices:?}: set {index} splits as {witness}")
            }
        }
    }
}
