//! Constructions on whole systems: British number systems, contraction,
//! dilation, the interval-partition criterion and windowed limits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::radix::{IndexSet, RadixError, RadixSeq, RadixTail};
use crate::sets::{dilate_set, finite_sumset, DigitSet, SetExpr};
use crate::system::{AdditiveSystem, SystemError};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("depth {depth} exceeds the {available} finite radices")]
    DepthExceedsFiniteRadices { depth: usize, available: usize },
    #[error("index {index} is out of range for a system of {len} sets")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index {index} belongs to more than one part")]
    OverlappingParts { index: usize },
    #[error("partition parts must be nonempty")]
    EmptyPart,
    #[error("only one part may absorb all remaining indices")]
    SeveralTailParts,
    #[error("partition is not a partition into finite intervals")]
    NotIntervalPartition,
    #[error("dilation factor must be at least 2, got {0}")]
    FactorTooSmall(Nat),
    #[error("cannot parse partition: {0}")]
    Parse(String),
    #[error(transparent)]
    Radix(#[from] RadixError),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// A partition of the positive indices into disjoint nonempty parts.
///
/// Indices up to [`Partition::covered`] are assigned explicitly. Every larger
/// index is its own singleton part, unless one part has its tail flag set,
/// in which case that part absorbs all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<IndexSet>,
    covered: usize,
}

impl Partition {
    /// Validates disjointness, fills uncovered indices with singletons and
    /// orders parts by their least index.
    pub fn new(parts: Vec<IndexSet>) -> Result<Self, TransformError> {
        if parts.iter().any(IndexSet::is_empty) {
            return Err(TransformError::EmptyPart);
        }
        if parts.iter().filter(|p| p.tail_included()).count() > 1 {
            return Err(TransformError::SeveralTailParts);
        }
        let covered = parts.iter().map(IndexSet::window).max().unwrap_or(0);
        let mut parts: Vec<IndexSet> = parts
            .into_iter()
            .map(|p| {
                if !p.tail_included() || p.window() == covered {
                    return Ok(p);
                }
                let mut included = p.included().to_vec();
                included.extend(p.window() + 1..=covered);
                IndexSet::new(included, covered, true)
            })
            .collect::<Result<_, _>>()?;
        for j in 1..=covered {
            match parts.iter().filter(|p| p.contains(j)).count() {
                0 => parts.push(IndexSet::finite([j])?),
                1 => {}
                _ => return Err(TransformError::OverlappingParts { index: j }),
            }
        }
        parts.sort_by_key(|p| p.min());
        Ok(Partition { parts, covered })
    }

    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Result<Self, TransformError> {
        Self::new(blocks.into_iter().map(IndexSet::finite).collect::<Result<_, _>>()?)
    }

    /// Every index in its own part.
    pub fn singletons() -> Self {
        Partition { parts: Vec::new(), covered: 0 }
    }

    /// `count` consecutive blocks of `block` indices: `{1, 2}, {3, 4}, ...` for `block = 2`.
    pub fn consecutive(block: usize, count: usize) -> Result<Self, TransformError> {
        Self::from_blocks((0..count).map(|i| (i * block + 1..=(i + 1) * block).collect()).collect())
    }

    pub fn parts(&self) -> &[IndexSet] {
        &self.parts
    }

    /// Largest explicitly assigned index.
    pub fn covered(&self) -> usize {
        self.covered
    }

    pub fn has_tail_part(&self) -> bool {
        self.parts.iter().any(IndexSet::tail_included)
    }
}

impl FromStr for Partition {
    type Err = TransformError;

    /// `"1 2|3 4"`; a trailing `..` in a group makes it absorb every later index.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = Vec::new();
        for group in s.split('|') {
            let mut indices = Vec::new();
            let mut tail = false;
            for token in group.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                if token == ".." {
                    tail = true;
                    continue;
                }
                let j: usize = token.parse().map_err(|_| TransformError::Parse(format!("bad index '{token}'")))?;
                indices.push(j);
            }
            if indices.is_empty() && !tail {
                continue;
            }
            let window = indices.iter().copied().max().unwrap_or(0);
            parts.push(IndexSet::new(indices, window, tail)?);
        }
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let words: Vec<String> = p.included().iter().map(|j| j.to_string()).collect();
            write!(f, "{}", words.join(" "))?;
            if p.tail_included() {
                write!(f, "{}..", if words.is_empty() { "" } else { " " })?;
            }
        }
        Ok(())
    }
}

/// The first `depth` blocks `G_{i-1} * [0, g_i)` followed by the ray `G_depth * N_0`.
pub fn bns_from_radices(radices: &RadixSeq, depth: usize) -> Result<AdditiveSystem, TransformError> {
    if let Some(available) = radices.len() {
        if depth > available {
            return Err(TransformError::DepthExceedsFiniteRadices { depth, available });
        }
    }
    let mut sets = Vec::with_capacity(depth + 1);
    let mut step = Nat::one();
    for i in 1..=depth {
        let g = radices.radix(i).expect("checked depth");
        sets.push(SetExpr::Explicit(DigitSet::progression(&step, g)));
        step *= g;
    }
    sets.push(SetExpr::Ray(step));
    Ok(AdditiveSystem::from_sets(sets)?)
}

/// How a system lines up with a British number system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnsShape {
    /// Radices of the blocks, in index order.
    pub radices: RadixSeq,
    /// Index of the closing ray, for finite shapes.
    pub ray_at: Option<usize>,
}

/// Recognises systems whose sets are, in order, the blocks `G_{i-1} * [0, g_i)`
/// of one radix sequence, closed either by radix tail blocks or by the ray `G_k * N_0`.
pub fn bns_shape(system: &AdditiveSystem) -> Option<BnsShape> {
    let mut radices = Vec::new();
    let mut step = Nat::one();
    let prefix = system.prefix();
    for (k, set) in prefix.iter().enumerate() {
        match set.normalize() {
            SetExpr::Ray(m) if k + 1 == prefix.len() && system.tail().is_none() && m == step => {
                return Some(BnsShape {
                    radices: RadixSeq::new(radices, RadixTail::Finite).ok()?,
                    ray_at: Some(k + 1),
                });
            }
            SetExpr::Explicit(s) => {
                let (m, q) = s.as_progression()?;
                if m != step {
                    return None;
                }
                let q = Nat::from(q);
                step *= &q;
                radices.push(q);
            }
            _ => return None,
        }
    }
    let tail = system.tail()?;
    let k = radices.len();
    radices.extend(tail.prefix().iter().cloned());
    let ray_at = tail.len().map(|t| k + t + 1);
    Some(BnsShape { radices: RadixSeq::new(radices, tail.tail()).ok()?, ray_at })
}

/// Sets `A_i = Σ_{j ∈ J_i} B_j` for the parts `J_i`, ordered by least
/// positive element.
///
/// Sums of finite sets are exact. A part containing infinitely many sets, or
/// an infinite set together with others, is kept symbolic when the system is
/// shaped like a British number system or the sum is a ray; otherwise that
/// part is truncated below `bound` and the result's claimed bound is capped
/// at `bound`.
pub fn contract(system: &AdditiveSystem, partition: &Partition, bound: u64) -> Result<AdditiveSystem, TransformError> {
    if let Some(len) = system.len() {
        let largest = partition.parts.iter().flat_map(|p| p.included().iter().copied()).max().unwrap_or(0);
        if largest > len {
            return Err(TransformError::IndexOutOfRange { index: largest, len });
        }
    }
    let w = partition.covered();
    let shape = bns_shape(system);
    let sys = system.materialized(w);
    let limit = Nat::from(bound);
    let mut truncated = false;

    let mut sets = Vec::new();
    for part in partition.parts() {
        let mut members: Vec<SetExpr> = part.included().iter().map(|&j| sys.set(j).expect("index checked")).collect();
        let mut absorbs_tail = false;
        if part.tail_included() {
            members.extend(sys.prefix().iter().skip(w).cloned());
            if let Some(scale) = sys.tail_scale() {
                // All tail blocks together sum to scale * N_0.
                members.push(SetExpr::Ray(scale));
                absorbs_tail = true;
            }
        }
        if members.is_empty() {
            continue;
        }
        if members.len() == 1 && !absorbs_tail {
            sets.push(members.pop().expect("one member"));
            continue;
        }
        if members.iter().all(SetExpr::is_finite) {
            let mut acc = DigitSet::zero();
            for m in &members {
                acc = finite_sumset(&acc, &m.to_digit_set().expect("finite"));
            }
            sets.push(SetExpr::Explicit(acc));
            continue;
        }
        if let Some(expr) = shape.as_ref().and_then(|s| subsum_for_part(s, part)) {
            sets.push(expr);
            continue;
        }
        if let Some(ray) = sum_as_ray(&members) {
            sets.push(ray);
            continue;
        }
        truncated = true;
        let mut acc = vec![Nat::zero()];
        for m in &members {
            let next: BTreeSet<Nat> = acc
                .iter()
                .flat_map(|x| m.elements_below(&limit).into_iter().map(move |y| x + y))
                .filter(|s| s < &limit)
                .collect();
            acc = next.into_iter().collect();
        }
        sets.push(SetExpr::Explicit(DigitSet::from_naturals(acc).expect("contains 0")));
    }
    if !partition.has_tail_part() {
        sets.extend(sys.prefix().iter().skip(w).cloned());
    }
    sets.sort_by_key(SetExpr::min_positive);

    let tail = if partition.has_tail_part() { None } else { sys.tail().cloned() };
    let claimed = if truncated { system.claimed_bound().min(bound) } else { system.claimed_bound() };
    Ok(AdditiveSystem::new(sets, tail)?.with_claimed_bound(claimed))
}

fn subsum_for_part(shape: &BnsShape, part: &IndexSet) -> Option<SetExpr> {
    let expr = match shape.ray_at {
        None => SetExpr::BnsSubsum(shape.radices.clone(), part.clone()),
        Some(r) => {
            // Any radices past the ray reproduce it; repeat 2.
            let mut radices = shape.radices.prefix().to_vec();
            radices.push(Nat::from(2u32));
            let radices = RadixSeq::new(radices, RadixTail::RepeatLast).ok()?;
            let reaches_ray = part.contains(r);
            let included: Vec<usize> = part.included().iter().copied().filter(|&j| j < r).collect();
            SetExpr::BnsSubsum(radices, IndexSet::new(included, r - 1, reaches_ray).ok()?)
        }
    };
    Some(expr.normalize())
}

/// `F + d*N_0 = m*N_0` exactly when every element of `F` is a multiple of
/// `m = gcd(F, d)` and `F` contains `0, m, ..., d - m`.
fn sum_as_ray(members: &[SetExpr]) -> Option<SetExpr> {
    let mut rays = members.iter().filter(|m| !m.is_finite());
    let d = match rays.next()?.normalize() {
        SetExpr::Ray(d) => d,
        _ => return None,
    };
    if rays.next().is_some() {
        return None;
    }
    let mut f = DigitSet::zero();
    for m in members.iter().filter(|m| m.is_finite()) {
        f = finite_sumset(&f, &m.to_digit_set()?);
    }
    let m = f.elements().iter().fold(d.clone(), |acc, x| acc.gcd(x));
    let mut x = Nat::zero();
    while x < d {
        if !f.contains(&x) {
            return None;
        }
        x += &m;
    }
    Some(SetExpr::Ray(m))
}

/// Prepends `[0, g)` and dilates every set by `g`.
pub fn dilate_system(system: &AdditiveSystem, g: &Nat) -> Result<AdditiveSystem, TransformError> {
    if *g < Nat::from(2u32) {
        return Err(TransformError::FactorTooSmall(g.clone()));
    }
    let mut sets = Vec::with_capacity(system.prefix().len() + 1);
    sets.push(SetExpr::Explicit(DigitSet::progression(&Nat::one(), g)));
    sets.extend(system.prefix().iter().map(|s| dilate_set(s, g)));
    let claimed = g.to_u64().and_then(|g| system.claimed_bound().checked_mul(g)).unwrap_or(u64::MAX);
    Ok(AdditiveSystem::new(sets, system.tail().cloned())?.with_claimed_bound(claimed))
}

/// `(g_1, ..., g_n) * A = g_1 * ((g_2, ..., g_n) * A)`.
pub fn dilate_by_sequence(system: &AdditiveSystem, radices: &[Nat]) -> Result<AdditiveSystem, TransformError> {
    radices.iter().rev().try_fold(system.clone(), |acc, g| dilate_system(&acc, g))
}

/// True iff every part is a finite run of consecutive indices.
pub fn is_interval_partition(partition: &Partition) -> bool {
    partition.parts().iter().all(|p| p.is_finite() && p.is_interval())
}

/// Radices of the contraction of the British number system of `h` by an
/// interval partition: `g_i = H_{u_i} / H_{u_{i-1}}` for parts `[u_{i-1}+1, u_i]`.
pub fn contracted_bns_radices(h: &RadixSeq, partition: &Partition) -> Result<RadixSeq, TransformError> {
    if !is_interval_partition(partition) {
        return Err(TransformError::NotIntervalPartition);
    }
    let w = partition.covered();
    if let Some(len) = h.len() {
        if w > len {
            return Err(TransformError::IndexOutOfRange { index: w, len });
        }
    }
    let products = h.products_upto(w).expect("checked length");
    let mut radices: Vec<Nat> = partition
        .parts()
        .iter()
        .map(|p| {
            let lo = p.included()[0];
            let hi = *p.included().last().expect("nonempty");
            &products[hi] / &products[lo - 1]
        })
        .collect();
    let rest = h.shifted(w);
    radices.extend(rest.prefix().iter().cloned());
    Ok(RadixSeq::new(radices, rest.tail())?)
}

/// One set of a [`WindowLimit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSet {
    /// Elements below the bound.
    pub elements: Vec<Nat>,
    /// First family index in the window at which the set appeared.
    pub first_seen: usize,
    /// Whether the set is infinite in the last family member.
    pub infinite: bool,
}

/// A finite-horizon approximation of the limit of a sequence of systems.
///
/// Contains the sets of `A_{n_max}` that, from their first appearance in the
/// window `[start, n_max]` on, belong to every later `A_n`. Sets are
/// compared by their elements below `bound`; sets with no positive element
/// below `bound` are ignored. This cannot certify the true limit, which
/// quantifies over all sufficiently large `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowLimit {
    pub window: (usize, usize),
    pub bound: Nat,
    pub sets: Vec<LimitSet>,
}

impl WindowLimit {
    pub fn element_lists(&self) -> Vec<Vec<Nat>> {
        self.sets.iter().map(|s| s.elements.clone()).collect()
    }
}

/// Windowed limit over `[max(1, n_max / 2), n_max]`.
pub fn stabilized_limit<F>(family: F, n_max: usize, bound: &Nat) -> WindowLimit
where
    F: Fn(usize) -> AdditiveSystem,
{
    stabilized_limit_in_window(family, (n_max / 2).max(1), n_max, bound)
}

pub fn stabilized_limit_in_window<F>(family: F, start: usize, n_max: usize, bound: &Nat) -> WindowLimit
where
    F: Fn(usize) -> AdditiveSystem,
{
    let start = start.clamp(1, n_max.max(1));
    let members: Vec<BTreeMap<Vec<Nat>, bool>> = (start..=n_max)
        .map(|n| {
            family(n).relevant_sets(bound).into_iter().map(|(_, s)| (s.elements_below(bound), !s.is_finite())).collect()
        })
        .collect();
    let mut sets = Vec::new();
    if let Some(last) = members.last() {
        for (elements, &infinite) in last {
            let first = members.iter().position(|m| m.contains_key(elements)).expect("present in last");
            if members[first..].iter().all(|m| m.contains_key(elements)) {
                sets.push(LimitSet { elements: elements.clone(), first_seen: start + first, infinite });
            }
        }
    }
    sets.sort_by(|a, b| a.elements.get(1).cmp(&b.elements.get(1)));
    WindowLimit { window: (start, n_max), bound: bound.clone(), sets }
}

/// Radices `g_1, ..., g_n` of a sequence, for building dilation families.
pub fn radices_prefix(radices: &RadixSeq, n: usize) -> Option<Vec<Nat>> {
    (1..=n).map(|i| radices.radix(i).cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::to_u64s;
    use crate::verify::verify_additive;

    fn n(x: u64) -> Nat {
        Nat::from(x)
    }

    fn explicit(xs: &[u64]) -> SetExpr {
        SetExpr::explicit(xs.iter().copied()).unwrap()
    }

    fn below(sys: &AdditiveSystem, i: usize, b: u64) -> Vec<u64> {
        to_u64s(&sys.set(i).unwrap().elements_below(&n(b)))
    }

    #[test]
    fn bns_examples() {
        let sys = bns_from_radices(&RadixSeq::constant(2).unwrap(), 3).unwrap();
        assert_eq!(sys.prefix(), &[explicit(&[0, 1]), explicit(&[0, 2]), explicit(&[0, 4]), SetExpr::Ray(n(8))]);
        let sys = bns_from_radices(&RadixSeq::constant(4).unwrap(), 2).unwrap();
        assert_eq!(sys.prefix(), &[explicit(&[0, 1, 2, 3]), explicit(&[0, 4, 8, 12]), SetExpr::Ray(n(16))]);
        let sys = bns_from_radices(&RadixSeq::finite([2, 3, 4]).unwrap(), 3).unwrap();
        assert_eq!(
            sys.prefix(),
            &[explicit(&[0, 1]), explicit(&[0, 2, 4]), explicit(&[0, 6, 12, 18]), SetExpr::Ray(n(24))]
        );
        assert!(verify_additive(&sys, 24).is_ok());
        assert_eq!(
            bns_from_radices(&RadixSeq::finite([2, 3]).unwrap(), 3),
            Err(TransformError::DepthExceedsFiniteRadices { depth: 3, available: 2 })
        );
    }

    #[test]
    fn binary_contracts_to_radix_four() {
        let binary = AdditiveSystem::bns(RadixSeq::constant(2).unwrap());
        let c = contract(&binary, &Partition::consecutive(2, 4).unwrap(), 1 << 10).unwrap();
        assert_eq!(below(&c, 1, 1000), vec![0, 1, 2, 3]);
        assert_eq!(below(&c, 2, 1000), vec![0, 4, 8, 12]);
        assert_eq!(below(&c, 4, 1000), vec![0, 64, 128, 192]);
        assert_eq!(below(&c, 5, 1000), vec![0, 256]);
    }

    #[test]
    fn singleton_contraction_is_identity() {
        let sys = bns_from_radices(&RadixSeq::finite([2, 3, 4]).unwrap(), 3).unwrap();
        assert_eq!(contract(&sys, &Partition::singletons(), 100).unwrap(), sys);
        let sys = bns_from_radices(&RadixSeq::finite([2, 3, 2]).unwrap(), 3).unwrap();
        let c = contract(&sys, &"1 2".parse().unwrap(), 100).unwrap();
        assert_eq!(below(&c, 1, 100), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn contraction_errors() {
        let sys = bns_from_radices(&RadixSeq::finite([2, 3]).unwrap(), 2).unwrap();
        assert_eq!(
            contract(&sys, &"1 4".parse().unwrap(), 10),
            Err(TransformError::IndexOutOfRange { index: 4, len: 3 })
        );
        assert_eq!("1 2|2 3".parse::<Partition>(), Err(TransformError::OverlappingParts { index: 2 }));
    }

    #[test]
    fn infinite_parts_stay_symbolic() {
        let binary = AdditiveSystem::bns(RadixSeq::constant(2).unwrap());
        let c = contract(&binary, &"1|2 ..".parse().unwrap(), 64).unwrap();
        assert_eq!(c.prefix(), &[explicit(&[0, 1]), SetExpr::Ray(n(2))]);
        assert!(verify_additive(&c, 500).is_ok());

        let c = contract(&binary, &"2|1 3 ..".parse().unwrap(), 64).unwrap();
        assert_eq!(below(&c, 1, 14), vec![0, 1, 4, 5, 8, 9, 12, 13]);
        assert!(!c.set(1).unwrap().is_finite());
        assert!(verify_additive(&c, 500).is_ok());

        let finite = bns_from_radices(&RadixSeq::finite([2, 2]).unwrap(), 2).unwrap();
        let c = contract(&finite, &"1 3".parse().unwrap(), 64).unwrap();
        assert_eq!(below(&c, 1, 14), vec![0, 1, 4, 5, 8, 9, 12, 13]);
        let c = contract(&finite, &"2 3".parse().unwrap(), 64).unwrap();
        assert_eq!(c.prefix(), &[explicit(&[0, 1]), SetExpr::Ray(n(2))]);
    }

    #[test]
    fn non_bns_infinite_part_is_truncated() {
        let sys = AdditiveSystem::from_sets(vec![explicit(&[0, 1, 4, 5]), explicit(&[0, 2]), SetExpr::Ray(n(8))])
            .unwrap()
            .with_claimed_bound(1000);
        let c = contract(&sys, &"1 3".parse().unwrap(), 50).unwrap();
        assert_eq!(c.claimed_bound(), 50);
        assert!(verify_additive(&c, 50).is_ok());
        let ray = AdditiveSystem::from_sets(vec![explicit(&[0, 1]), explicit(&[0, 2, 4, 6]), SetExpr::Ray(n(8))])
            .unwrap()
            .with_claimed_bound(1000);
        let c = contract(&ray, &"2 3".parse().unwrap(), 50).unwrap();
        assert_eq!(c.prefix(), &[explicit(&[0, 1]), SetExpr::Ray(n(2))]);
        assert_eq!(c.claimed_bound(), 1000);
    }

    #[test]
    fn dilation_examples() {
        let t = dilate_system(&AdditiveSystem::trivial(), &n(5)).unwrap();
        assert_eq!(t.prefix(), &[explicit(&[0, 1, 2, 3, 4]), SetExpr::Ray(n(5))]);
        let binary = AdditiveSystem::bns(RadixSeq::constant(2).unwrap());
        let d = dilate_system(&binary, &n(3)).unwrap();
        assert_eq!(below(&d, 1, 100), vec![0, 1, 2]);
        assert_eq!(below(&d, 2, 100), vec![0, 3]);
        assert_eq!(below(&d, 4, 100), vec![0, 12]);
        let a4 = AdditiveSystem::bns(RadixSeq::constant(4).unwrap());
        let d = verify_additive(&dilate_system(&a4, &n(2)).unwrap(), 32).unwrap();
        assert_eq!(below(&d, 2, 100), vec![0, 2, 4, 6]);
        assert_eq!(below(&d, 3, 100), vec![0, 8, 16, 24]);
        assert!(dilate_system(&binary, &n(1)).is_err());
    }

    #[test]
    fn sequence_dilation_builds_bns() {
        let seq = [n(2), n(3), n(4)];
        let d = dilate_by_sequence(&AdditiveSystem::trivial(), &seq).unwrap();
        let b = bns_from_radices(&RadixSeq::finite([2, 3, 4]).unwrap(), 3).unwrap();
        assert_eq!(d.prefix(), b.prefix());
        let binary = AdditiveSystem::bns(RadixSeq::constant(2).unwrap());
        assert_eq!(dilate_by_sequence(&binary, &[]).unwrap(), binary);
        assert_eq!(dilate_by_sequence(&binary, &[n(3)]).unwrap(), dilate_system(&binary, &n(3)).unwrap());
    }

    #[test]
    fn interval_partitions() {
        assert!(is_interval_partition(&Partition::consecutive(2, 3).unwrap()));
        assert!(!is_interval_partition(&"1 3|2".parse().unwrap()));
        assert!(is_interval_partition(&Partition::singletons()));
        assert!(!is_interval_partition(&"1|2 ..".parse().unwrap()));
    }

    #[test]
    fn contracted_radices_examples() {
        let h = RadixSeq::constant(2).unwrap();
        let g = contracted_bns_radices(&h, &Partition::consecutive(2, 3).unwrap()).unwrap();
        assert_eq!(g.radix(1), Some(&n(4)));
        assert_eq!(g.radix(3), Some(&n(4)));
        assert_eq!(g.radix(4), Some(&n(2)));
        assert_eq!(contracted_bns_radices(&h, &Partition::singletons()).unwrap(), h);
        let h = RadixSeq::repeating([2, 3, 5]).unwrap();
        let g = contracted_bns_radices(&h, &"1 2|3".parse().unwrap()).unwrap();
        assert_eq!(&g.prefix()[..2], &[n(6), n(5)]);
        assert_eq!(contracted_bns_radices(&h, &"1 3|2".parse().unwrap()), Err(TransformError::NotIntervalPartition));
    }

    #[test]
    fn limit_of_constant_family() {
        let a = bns_from_radices(&RadixSeq::finite([2, 3]).unwrap(), 2).unwrap();
        let lim = stabilized_limit(|_| a.clone(), 6, &n(20));
        let lists: Vec<Vec<u64>> = lim.element_lists().iter().map(|l| to_u64s(l)).collect();
        assert_eq!(lists, vec![vec![0, 1], vec![0, 2, 4], vec![0, 6, 12, 18]]);
        assert!(lim.sets[2].infinite);
        assert_eq!(lim.window, (3, 6));
    }

    #[test]
    fn partition_display_roundtrip() {
        let p: Partition = "3 4|1 2|6 ..".parse().unwrap();
        assert_eq!(p.to_string(), "1 2|3 4|5|6 ..");
        assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }
}
