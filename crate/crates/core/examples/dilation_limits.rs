//! Repeated dilation g_1 * (g_2 * ... (g_n * A)) and its windowed limit.

use additive_systems::{dilate_by_sequence, dilate_system, stabilized_limit, AdditiveSystem, Nat, RadixSeq};

fn main() {
    let trivial = AdditiveSystem::trivial();
    println!("3 * (N0):\n{}", dilate_system(&trivial, &Nat::from(3u32)).unwrap());

    let twos = vec![Nat::from(2u32); 10];
    println!("(2,2,2) * (N0):\n{}", dilate_by_sequence(&trivial, &twos[..3]).unwrap());

    let family = |n: usize| dilate_by_sequence(&trivial, &twos[..n]).unwrap();
    let limit = stabilized_limit(family, 10, &Nat::from(1024u32));
    println!("limit over n in {:?}, elements below {}:", limit.window, limit.bound);
    for set in &limit.sets {
        let elems: Vec<String> = set.elements.iter().map(Nat::to_string).collect();
        println!("  {{{}}} first seen at n = {}", elems.join(","), set.first_seen);
    }

    let binary = AdditiveSystem::bns(RadixSeq::constant(2).unwrap());
    let threes = vec![Nat::from(3u32); 8];
    let family = |n: usize| dilate_by_sequence(&binary, &threes[..n]).unwrap();
    let limit = stabilized_limit(family, 8, &Nat::from(3u64.pow(8)));
    println!("dilating base 2 by threes keeps every set finite: {}", limit.sets.iter().all(|s| !s.infinite));
}
