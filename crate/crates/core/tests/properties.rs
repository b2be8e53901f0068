use std::collections::BTreeMap;

use additive_systems::decompose::prime_factors;
use additive_systems::document::{parse_system, system_to_json, SystemDocument};
use additive_systems::transform::bns_shape;
use additive_systems::{
    bns_from_radices, contract, contracted_bns_radices, count_representations, decode, decompose_set,
    decompose_set_bruteforce, dilate_set, dilate_system, encode, is_direct_sum, is_interval_partition, peel,
    refine_to_prime_radices, sumset, verify_additive, AdditiveSystem, DigitSet, IndexSet, Nat, Partition, RadixSeq,
    RadixTail, SetExpr,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn n(x: u64) -> Nat {
    Nat::from(x)
}

fn u64s(xs: &[Nat]) -> Vec<u64> {
    xs.iter().map(|x| x.to_u64().unwrap()).collect()
}

fn digit_set(max: u64, extra: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::btree_set(1..max, 1..=extra).prop_map(|s| std::iter::once(0).chain(s).collect())
}

fn radices(len: std::ops::RangeInclusive<usize>, hi: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2..=hi, len)
}

fn set_expr() -> impl Strategy<Value = SetExpr> {
    let leaf = prop_oneof![
        digit_set(30, 5).prop_map(|s| SetExpr::explicit(s).unwrap()),
        (1..12u64).prop_map(|m| SetExpr::Ray(n(m))),
        (radices(1..=3, 4), any::<bool>(), prop::collection::vec(any::<bool>(), 1..=5), any::<bool>()).prop_map(
            |(r, repeat, picks, tail)| {
                let tail_kind = if repeat { RadixTail::RepeatLast } else { RadixTail::Finite };
                let seq = RadixSeq::new(r.into_iter().map(Nat::from).collect(), tail_kind).unwrap();
                let window = picks.len();
                let included: Vec<usize> = (1..=window).filter(|&i| picks[i - 1]).collect();
                SetExpr::BnsSubsum(seq, IndexSet::new(included, window, tail).unwrap())
            }
        ),
    ];
    leaf.prop_recursive(2, 6, 1, |inner| (2..5u64, inner).prop_map(|(g, s)| SetExpr::Dilated(n(g), Box::new(s))))
}

/// A random partition of `1..=k`, as a block index for each element.
fn labels(k: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..k, k)
}

fn blocks_from_labels(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        groups.entry(l).or_default().push(i + 1);
    }
    groups.into_values().collect()
}

fn naive_count(sets: &[Vec<u64>], target: u64) -> u64 {
    match sets.split_first() {
        None => u64::from(target == 0),
        Some((first, rest)) => first.iter().filter(|&&x| x <= target).map(|&x| naive_count(rest, target - x)).sum(),
    }
}

fn finite_bns(r: &[u64]) -> AdditiveSystem {
    bns_from_radices(&RadixSeq::finite(r.to_vec()).unwrap(), r.len()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn membership_matches_enumeration(s in set_expr()) {
        let bound = 120u64;
        let listed = u64s(&s.elements_below(&n(bound)));
        let members: Vec<u64> = (0..bound).filter(|&x| s.contains(&n(x))).collect();
        prop_assert_eq!(&listed, &members);
        prop_assert_eq!(u64s(&s.normalize().elements_below(&n(bound))), listed);
    }

    #[test]
    fn dilation_scales_elements(s in set_expr(), d in 1..6u64) {
        let bound = 150u64;
        let expected: Vec<u64> =
            u64s(&s.elements_below(&n(bound))).into_iter().map(|x| x * d).filter(|&x| x < bound).collect();
        prop_assert_eq!(u64s(&dilate_set(&s, &n(d)).elements_below(&n(bound))), expected);
    }

    #[test]
    fn direct_sum_means_unique_sums(a in digit_set(20, 4), b in digit_set(20, 4)) {
        let da = DigitSet::from_u64s(a.clone()).unwrap();
        let db = DigitSet::from_u64s(b.clone()).unwrap();
        let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
        for x in &a {
            for y in &b {
                *counts.entry(x + y).or_default() += 1;
            }
        }
        prop_assert_eq!(is_direct_sum(&da, &db), counts.values().all(|&c| c == 1));
    }

    #[test]
    fn sumset_commutes_with_identity(a in set_expr(), b in set_expr()) {
        let bound = n(80);
        prop_assert_eq!(sumset(&a, &b, &bound), sumset(&b, &a, &bound));
        let zero = SetExpr::Explicit(DigitSet::zero());
        prop_assert_eq!(sumset(&a, &zero, &bound), a.elements_below(&bound));
    }

    #[test]
    fn counts_match_naive_enumeration(sets in prop::collection::vec(digit_set(25, 4), 1..=4)) {
        let sys = AdditiveSystem::from_sets(sets.iter().map(|s| SetExpr::explicit(s.clone()).unwrap()).collect())
            .unwrap();
        for m in 0..120u64 {
            prop_assert_eq!(count_representations(&sys, &n(m)), n(naive_count(&sets, m)));
        }
        let unique_below = (0..120u64).find(|&m| naive_count(&sets, m) != 1).unwrap_or(120);
        match verify_additive(&sys, 120) {
            Ok(_) => prop_assert_eq!(unique_below, 120),
            Err(c) => prop_assert_eq!(c.n, n(unique_below)),
        }
    }

    #[test]
    fn bns_encode_decode_roundtrip(r in radices(1..=5, 7)) {
        let sys = finite_bns(&r);
        let g: u64 = r.iter().product();
        let verified = verify_additive(&sys, g * 3).unwrap();
        for m in 0..g * 3 {
            let a = encode(&verified, &n(m)).unwrap();
            prop_assert_eq!(decode(&verified, &a).unwrap(), n(m));
        }
    }

    #[test]
    fn contractions_stay_additive(r in radices(2..=5, 5), l in labels(5)) {
        let k = r.len();
        let blocks = blocks_from_labels(&l[..k]);
        let g: u64 = r.iter().product();
        let c = contract(&finite_bns(&r), &Partition::from_blocks(blocks).unwrap(), g).unwrap();
        prop_assert!(verify_additive(&c, 2 * g).is_ok());
    }

    #[test]
    fn interval_criterion(r in radices(2..=5, 5), l in labels(5)) {
        let k = r.len();
        let partition = Partition::from_blocks(blocks_from_labels(&l[..k])).unwrap();
        let g: u64 = r.iter().product();
        let c = contract(&finite_bns(&r), &partition, g).unwrap();
        let progressions = (1..=partition.parts().len()).all(|i| {
            c.set(i).unwrap().to_digit_set().and_then(|s| s.as_progression()).is_some()
        });
        prop_assert_eq!(is_interval_partition(&partition), progressions);
        if is_interval_partition(&partition) {
            let h = RadixSeq::finite(r.clone()).unwrap();
            let predicted = contracted_bns_radices(&h, &partition).unwrap();
            prop_assert_eq!(bns_shape(&c).unwrap().radices, predicted);
        }
    }

    #[test]
    fn dilation_preserves_verification(r in radices(1..=4, 5), g in 2..6u64) {
        let sys = verify_additive(&finite_bns(&r), 200).unwrap();
        let d = dilate_system(&sys, &n(g)).unwrap();
        prop_assert_eq!(d.claimed_bound(), 200 * g);
        prop_assert!(verify_additive(&d, 200 * g).is_ok());
    }

    #[test]
    fn peel_reconstructs(r in radices(2..=5, 5), l in labels(5)) {
        let k = r.len();
        let g_all: u64 = r.iter().product();
        let c = contract(&finite_bns(&r), &Partition::from_blocks(blocks_from_labels(&l[..k])).unwrap(), g_all).unwrap();
        let bound = 3 * g_all;
        let verified = verify_additive(&c, bound).unwrap();
        let p = peel(&verified, bound).unwrap();
        let g = p.g.to_u64().unwrap();
        for i in 1..=verified.len().unwrap() {
            prop_assert_eq!(
                p.reconstructed_below(i, &n(bound)).unwrap(),
                verified.set(i).unwrap().elements_below(&n(bound))
            );
        }
        prop_assert!(verify_additive(&p.peeled, bound / g).is_ok());
    }

    #[test]
    fn refinement_is_prime_and_groups_back(r in radices(1..=5, 40)) {
        let seq = RadixSeq::finite(r.clone()).unwrap();
        let refinement = refine_to_prime_radices(&seq);
        let refined = u64s(refinement.refined.prefix());
        for p in &refined {
            prop_assert_eq!(prime_factors(&n(*p)).len(), 1);
        }
        prop_assert_eq!(refinement.grouping.parts().len(), r.len());
        for (part, g) in refinement.grouping.parts().iter().zip(&r) {
            prop_assert!(part.is_interval());
            let prod: u64 = part.included().iter().map(|&j| refined[j - 1]).product();
            prop_assert_eq!(prod, *g);
        }
    }

    #[test]
    fn decomposer_matches_bruteforce(a in digit_set(30, 11)) {
        let set = DigitSet::from_u64s(a).unwrap();
        let fast = decompose_set(&set);
        for d in &fast {
            prop_assert_eq!(&d.sum(), &set);
        }
        prop_assert_eq!(fast, decompose_set_bruteforce(&set).unwrap());
    }

    #[test]
    fn documents_roundtrip(prefix in prop::collection::vec(set_expr(), 1..4), tail in prop::option::of(radices(1..=3, 5))) {
        let finite_prefix = tail.is_some();
        let sets: Vec<SetExpr> = prefix.into_iter().filter(|s| !finite_prefix || s.is_finite())
            .filter(|s| s.cardinality().is_none_or(|c| c >= n(2)))
            .collect();
        prop_assume!(!sets.is_empty());
        let tail = tail.map(|r| RadixSeq::repeating(r).unwrap());
        let sys = AdditiveSystem::new(sets, tail).unwrap();
        let doc = SystemDocument::from_system(&sys);
        let text = doc.to_json_pretty();
        prop_assert_eq!(SystemDocument::parse(&text).unwrap(), doc);
        prop_assert_eq!(parse_system(&system_to_json(&sys)).unwrap(), sys);
    }
}
