//! Build a mixed-radix system, certify it below its period and round-trip
//! a few integers through their unique representations.

use additive_systems::{bns_from_radices, decode, encode, verify_additive, Nat, RadixSeq};

fn main() {
    let radices = RadixSeq::finite([2, 3, 4]).unwrap();
    let system = bns_from_radices(&radices, 3).unwrap();
    println!("{system}");

    let verified = verify_additive(&system, 1000).expect("mixed radix systems are additive");
    println!("unique representations for every n < {}", verified.claimed_bound());

    for n in [0u32, 5, 23, 24, 999] {
        let parts = encode(&verified, &Nat::from(n)).unwrap();
        let back = decode(&verified, &parts).unwrap();
        println!("{n:>4} = {parts}  (decodes to {back})");
    }
}
