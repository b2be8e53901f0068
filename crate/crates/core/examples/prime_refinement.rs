//! Refining radices into primes, and contracting back.

use additive_systems::{bns_from_radices, contract, refine_to_prime_radices, verify_additive, RadixSeq};

fn main() {
    let radices = RadixSeq::finite([12, 2, 9]).unwrap();
    let r = refine_to_prime_radices(&radices);
    println!("refined radices {:?}, grouped as {}", r.refined.prefix(), r.grouping);

    let fine = bns_from_radices(&r.refined, r.refined.prefix().len()).unwrap();
    let coarse = contract(&fine, &r.grouping, 216).unwrap();
    let original = bns_from_radices(&radices, 3).unwrap();
    println!("contracting back gives the original system: {}", coarse == original);
    println!("{coarse}");
    println!("still additive: {}", verify_additive(&coarse, 1000).is_ok());

    let repeating = RadixSeq::repeating([4, 3]).unwrap();
    let r = refine_to_prime_radices(&repeating);
    println!("(4, 3, 3, ...) refines to {:?} repeating, grouped as {}", r.refined.prefix(), r.grouping);
}
