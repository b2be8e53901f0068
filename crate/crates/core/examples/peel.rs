//! Splitting off the interval [0, g) from the set that contains 1.

use additive_systems::{bns_from_radices, contract, peel, verify_additive, Partition, RadixSeq};

fn main() {
    let bns = bns_from_radices(&RadixSeq::finite([2, 3, 2, 5]).unwrap(), 4).unwrap();
    let systems = [
        ("mixed radix (2,3,2,5)", bns.clone()),
        ("parts {1,3},{2},{4}", contract(&bns, &"1 3|2|4".parse::<Partition>().unwrap(), 60).unwrap()),
    ];
    for (label, system) in systems {
        let verified = verify_additive(&system, 600).unwrap();
        let p = peel(&verified, 600).unwrap();
        println!("{label}: set {} contains 1, g = {}, remainder {}", p.i1, p.g, p.head);
        if p.dilation_case {
            println!("  the system is {} times:", p.g);
        } else {
            println!("  the quotient family is:");
        }
        print!("{}", p.peeled);
        println!();
    }
}
