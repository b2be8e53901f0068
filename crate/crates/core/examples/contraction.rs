//! Summing consecutive binary blocks gives base 4; summing non-consecutive
//! blocks gives an additive system that is no longer mixed radix.

use additive_systems::transform::bns_shape;
use additive_systems::{contract, contracted_bns_radices, is_interval_partition, AdditiveSystem, Partition, RadixSeq};

fn main() {
    let binary = AdditiveSystem::bns(RadixSeq::constant(2).unwrap());

    for parts in ["1 2|3 4|5 6", "1 3|2 4", "1 2 3|4 .."] {
        let partition: Partition = parts.parse().unwrap();
        let contracted = contract(&binary, &partition, 1 << 10).unwrap();
        println!("parts {partition} (interval partition: {})", is_interval_partition(&partition));
        print!("{contracted}");
        match bns_shape(&contracted) {
            Some(shape) => println!("  mixed radix with radices {:?}", shape.radices.prefix()),
            None => println!("  not mixed radix"),
        }
        if is_interval_partition(&partition) {
            let predicted = contracted_bns_radices(&RadixSeq::constant(2).unwrap(), &partition).unwrap();
            println!("  predicted radices {:?}", predicted.prefix());
        }
        println!();
    }
}
