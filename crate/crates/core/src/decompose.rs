//! Direct-sum decompositions `A = B ⊕ C` of finite digit sets, and what
//! they say about additive systems and radix sequences.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::radix::{IndexSet, RadixSeq, RadixTail};
use crate::sets::{finite_sumset, is_direct_sum, DigitSet, SetExpr};
use crate::system::{AdditiveSystem, SystemError};
use crate::transform::{Partition, TransformError};
use crate::Nat;

/// Largest set [`decompose_set_bruteforce`] accepts by default.
pub const DEFAULT_BRUTEFORCE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("set has {len} elements, more than the brute-force cap of {cap}")]
    SetTooLarge { len: usize, cap: usize },
    #[error("set {index} is infinite")]
    InfiniteSetInPrefix { index: usize },
    #[error("the system has only {len} sets")]
    DepthExceedsSystem { len: usize },
    #[error("not a valid decomposition: {0}")]
    NotAValidDecomposition(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// `left ⊕ right`, both containing 0 and at least one other element.
/// The least positive element of the sum always lies in `left`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    left: DigitSet,
    right: DigitSet,
}

impl Decomposition {
    /// Checks the factors form a proper direct sum and orients them.
    pub fn new(a: DigitSet, b: DigitSet) -> Result<Self, DecomposeError> {
        if a.len() < 2 || b.len() < 2 {
            return Err(DecomposeError::NotAValidDecomposition("both factors need two elements".into()));
        }
        if !is_direct_sum(&a, &b) {
            return Err(DecomposeError::NotAValidDecomposition("sums collide".into()));
        }
        let (left, right) = if a.min_positive() < b.min_positive() { (a, b) } else { (b, a) };
        Ok(Decomposition { left, right })
    }

    pub fn left(&self) -> &DigitSet {
        &self.left
    }

    pub fn right(&self) -> &DigitSet {
        &self.right
    }

    pub fn sum(&self) -> DigitSet {
        finite_sumset(&self.left, &self.right)
    }

    pub fn dilate(&self, d: &Nat) -> Decomposition {
        Decomposition { left: self.left.dilate(d), right: self.right.dilate(d) }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (+) {}", self.left, self.right)
    }
}

/// The unique `X` with `[0, ab) = [0, a) ⊕ X`, namely `a * [0, b)`.
pub fn solve_ax_interval(a: &Nat, b: &Nat) -> DigitSet {
    assert!(!a.is_zero() && !b.is_zero(), "a and b must be positive");
    DigitSet::progression(a, b)
}

/// Compares generating polynomials: true iff `Σ_{b∈B} t^b · Σ_{c∈C} t^c`
/// has every coefficient equal to 1 exactly on the exponents of `a`.
pub fn poly_identity_check(a: &DigitSet, b: &DigitSet, c: &DigitSet) -> bool {
    let mut product: BTreeMap<Nat, u64> = BTreeMap::new();
    for x in b.elements() {
        for y in c.elements() {
            *product.entry(x + y).or_default() += 1;
        }
    }
    product.len() == a.len()
        && product.values().all(|&k| k == 1)
        && product.keys().zip(a.elements()).all(|(p, e)| p == e)
}

/// The unique `C` with `B ⊕ C = a`, if there is one.
///
/// With `0 ∈ B`, the least element of `a` not yet covered by `B ⊕ C` can only
/// be a new element of `C`.
fn cofactor(a: &DigitSet, b: &[&Nat]) -> Option<Vec<Nat>> {
    let mut covered: HashSet<Nat> = HashSet::with_capacity(a.len());
    let mut c = Vec::new();
    for y in a.elements() {
        if covered.contains(y) {
            continue;
        }
        for x in b {
            let s = y + *x;
            if !a.contains(&s) || !covered.insert(s) {
                return None;
            }
        }
        c.push(y.clone());
    }
    Some(c)
}

/// All decompositions of `a`, sorted by left factor.
///
/// The left factor is built element by element in increasing order. After
/// each decision every element of `a` below the frontier must already be
/// covered exactly once by `B ⊕ C`, where `C` is forced greedily; branches
/// that break this are cut.
pub fn decompose_set(a: &DigitSet) -> Vec<Decomposition> {
    let n = a.len();
    if n < 4 || is_prime(n as u64) {
        return Vec::new();
    }
    let mut chosen = vec![0usize, 1];
    let mut out = Vec::new();
    extend_left(a, &mut chosen, 2, &mut out);
    out.sort();
    out
}

fn extend_left(a: &DigitSet, chosen: &mut Vec<usize>, next: usize, out: &mut Vec<Decomposition>) {
    let n = a.len();
    let elems = a.elements();
    if !prefix_consistent(a, chosen, next) {
        return;
    }
    if next == n {
        let k = chosen.len();
        if !n.is_multiple_of(k) || n / k < 2 {
            return;
        }
        let b: Vec<&Nat> = chosen.iter().map(|&i| &elems[i]).collect();
        if let Some(c) = cofactor(a, &b) {
            let left = DigitSet::from_sorted_unchecked(b.into_iter().cloned().collect());
            let right = DigitSet::from_sorted_unchecked(c);
            if right.len() >= 2 && poly_identity_check(a, &left, &right) {
                out.push(Decomposition { left, right });
            }
        }
        return;
    }
    if chosen.len() < n / 2 {
        chosen.push(next);
        extend_left(a, chosen, next + 1, out);
        chosen.pop();
    }
    extend_left(a, chosen, next + 1, out);
}

/// Elements of `a` with position below `frontier` are covered exactly once by
/// the known part of `B` plus the forced part of `C`, and every such sum lies in `a`.
fn prefix_consistent(a: &DigitSet, chosen: &[usize], frontier: usize) -> bool {
    let elems = a.elements();
    let mut covered: HashSet<&Nat> = HashSet::new();
    for y in &elems[..frontier] {
        if covered.contains(y) {
            continue;
        }
        for &i in chosen {
            let s = y + &elems[i];
            match elems.binary_search(&s) {
                Ok(pos) => {
                    if !covered.insert(&elems[pos]) {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

/// Exhaustive oracle for [`decompose_set`]: every subset `B ⊇ {0, min a⁺}`
/// of `a` is tested for a cofactor. Fails above `cap` elements.
pub fn decompose_set_bruteforce_with_cap(a: &DigitSet, cap: usize) -> Result<Vec<Decomposition>, DecomposeError> {
    let n = a.len();
    if n > cap {
        return Err(DecomposeError::SetTooLarge { len: n, cap });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let elems = a.elements();
    let free = n - 2;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free) {
        let mut b: Vec<&Nat> = vec![&elems[0], &elems[1]];
        b.extend((0..free).filter(|bit| mask >> bit & 1 == 1).map(|bit| &elems[bit + 2]));
        if let Some(c) = cofactor(a, &b) {
            if c.len() >= 2 {
                let left = DigitSet::from_sorted_unchecked(b.into_iter().cloned().collect());
                out.push(Decomposition { left, right: DigitSet::from_sorted_unchecked(c) });
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn decompose_set_bruteforce(a: &DigitSet) -> Result<Vec<Decomposition>, DecomposeError> {
    decompose_set_bruteforce_with_cap(a, DEFAULT_BRUTEFORCE_CAP)
}

pub fn is_indecomposable_set(a: &DigitSet) -> bool {
    if is_prime(a.len() as u64) {
        return true;
    }
    decompose_set(a).is_empty()
}

/// All decompositions of `[0, n)`.
pub fn interval_decompositions(n: u64) -> Vec<Decomposition> {
    decompose_set(&DigitSet::interval(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Indecomposable,
    Decomposable { index: usize, witness: Decomposition },
}

/// Looks for a decomposable set among the first `depth` sets.
pub fn classify_system(system: &AdditiveSystem, depth: usize) -> Result<Classification, DecomposeError> {
    if let Some(len) = system.len() {
        if depth > len {
            return Err(DecomposeError::DepthExceedsSystem { len });
        }
    }
    for index in 1..=depth {
        let set = system.set(index).expect("depth checked");
        let finite = set.to_digit_set().ok_or(DecomposeError::InfiniteSetInPrefix { index })?;
        if let Some(witness) = decompose_set(&finite).into_iter().next() {
            return Ok(Classification::Decomposable { index, witness });
        }
    }
    Ok(Classification::Indecomposable)
}

/// Replaces set `index` by the two factors of `d`, right after one another.
pub fn decompose_system(
    system: &AdditiveSystem,
    index: usize,
    d: &Decomposition,
) -> Result<AdditiveSystem, DecomposeError> {
    let sys = system.materialized(index);
    let set =
        sys.set(index).ok_or_else(|| DecomposeError::NotAValidDecomposition(format!("no set with index {index}")))?;
    let target =
        set.to_digit_set().ok_or_else(|| DecomposeError::NotAValidDecomposition(format!("set {index} is infinite")))?;
    if !is_direct_sum(d.left(), d.right()) || d.sum() != target {
        return Err(DecomposeError::NotAValidDecomposition(format!("factors do not sum to set {index}")));
    }
    let mut sets = sys.prefix().to_vec();
    sets[index - 1] = SetExpr::Explicit(d.left().clone());
    sets.insert(index, SetExpr::Explicit(d.right().clone()));
    Ok(AdditiveSystem::new(sets, sys.tail().cloned())?.with_claimed_bound(system.claimed_bound()))
}

/// A radix sequence of primes with the map back to the radices it refines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRefinement {
    pub refined: RadixSeq,
    /// Part `i` holds the refined indices whose radices multiply to `g_i`.
    pub grouping: Partition,
    /// The input repeats a composite radix forever; only its explicit prefix
    /// was refined.
    pub prefix_only: bool,
}

/// Splits every radix into its prime factors, in nondecreasing order.
pub fn refine_to_prime_radices(radices: &RadixSeq) -> PrimeRefinement {
    let mut refined = Vec::new();
    let mut blocks = Vec::new();
    for g in radices.prefix() {
        let factors = prime_factors(g);
        let start = refined.len() + 1;
        refined.extend(factors);
        blocks.push((start..=refined.len()).collect::<Vec<_>>());
    }
    let repeats_prime =
        radices.tail() == RadixTail::RepeatLast && radices.prefix().last().is_some_and(|g| prime_factors(g).len() == 1);
    let (tail, prefix_only) = match radices.tail() {
        RadixTail::Finite => (RadixTail::Finite, false),
        RadixTail::RepeatLast if repeats_prime => (RadixTail::RepeatLast, false),
        RadixTail::RepeatLast => (RadixTail::Finite, true),
    };
    let refined = RadixSeq::new(refined, tail).expect("prime factors are at least 2");
    let grouping = Partition::new(blocks.into_iter().map(|b| IndexSet::finite(b).expect("positive indices")).collect())
        .expect("consecutive disjoint blocks");
    PrimeRefinement { refined, grouping, prefix_only }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors with multiplicity, ascending, by trial division.
pub fn prime_factors(n: &Nat) -> Vec<Nat> {
    let mut out = Vec::new();
    if let Some(mut m) = n.to_u64() {
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            while m % d == 0 {
                out.push(Nat::from(d));
                m /= d;
            }
            d += 1;
        }
        if m > 1 {
            out.push(Nat::from(m));
        }
        return out;
    }
    let mut m = n.clone();
    let mut d = Nat::from(2u32);
    while &d * &d <= m {
        loop {
            let (q, r) = m.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            out.push(d.clone());
            m = q;
        }
        d += 1u32;
    }
    if m > Nat::one() {
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::to_u64s;

    fn set(xs: &[u64]) -> DigitSet {
        DigitSet::from_u64s(xs.iter().copied()).unwrap()
    }

    fn pairs(ds: &[Decomposition]) -> Vec<(Vec<u64>, Vec<u64>)> {
        ds.iter().map(|d| (to_u64s(d.left().elements()), to_u64s(d.right().elements()))).collect()
    }

    #[test]
    fn ax_interval() {
        assert_eq!(solve_ax_interval(&Nat::from(2u32), &Nat::from(3u32)), set(&[0, 2, 4]));
        assert_eq!(solve_ax_interval(&Nat::from(7u32), &Nat::from(1u32)), set(&[0]));
        assert_eq!(solve_ax_interval(&Nat::from(3u32), &Nat::from(3u32)), set(&[0, 3, 6]));
    }

    #[test]
    fn polynomial_check() {
        assert!(poly_identity_check(&DigitSet::interval(6), &set(&[0, 1]), &set(&[0, 2, 4])));
        assert!(!poly_identity_check(&set(&[0, 2]), &set(&[0, 1]), &set(&[0, 1])));
        assert!(poly_identity_check(&DigitSet::interval(9), &set(&[0, 1, 2]), &set(&[0, 3, 6])));
    }

    #[test]
    fn interval_six() {
        let expected = vec![(vec![0, 1], vec![0, 2, 4]), (vec![0, 1, 2], vec![0, 3])];
        assert_eq!(pairs(&decompose_set(&DigitSet::interval(6))), expected);
        assert_eq!(pairs(&decompose_set_bruteforce(&DigitSet::interval(6)).unwrap()), expected);
    }

    #[test]
    fn indecomposable_examples() {
        assert!(decompose_set(&set(&[0, 1, 2, 4])).is_empty());
        assert!(decompose_set_bruteforce(&set(&[0, 1])).unwrap().is_empty());
        assert!(is_indecomposable_set(&set(&[0, 1, 2])));
        assert!(is_indecomposable_set(&set(&[0, 1, 2, 4, 8])));
        assert!(!is_indecomposable_set(&DigitSet::interval(4)));
    }

    #[test]
    fn prime_square_interval() {
        assert_eq!(pairs(&interval_decompositions(9)), vec![(vec![0, 1, 2], vec![0, 3, 6])]);
        assert_eq!(pairs(&interval_decompositions(4)), vec![(vec![0, 1], vec![0, 2])]);
    }

    #[test]
    fn three_factor_set() {
        let a = set(&[0, 1, 3, 4, 9, 10, 12, 13]);
        let expected =
            vec![(vec![0, 1], vec![0, 3, 9, 12]), (vec![0, 1, 3, 4], vec![0, 9]), (vec![0, 1, 9, 10], vec![0, 3])];
        assert_eq!(pairs(&decompose_set_bruteforce(&a).unwrap()), expected);
        assert_eq!(pairs(&decompose_set(&a)), expected);
    }

    #[test]
    fn bruteforce_cap() {
        let big = DigitSet::interval(17);
        assert_eq!(decompose_set_bruteforce(&big), Err(DecomposeError::SetTooLarge { len: 17, cap: 16 }));
        assert!(decompose_set_bruteforce_with_cap(&big, 17).unwrap().is_empty());
    }

    #[test]
    fn orientation() {
        let d = Decomposition::new(set(&[0, 2, 4]), set(&[0, 1])).unwrap();
        assert_eq!(d.left(), &set(&[0, 1]));
        assert!(Decomposition::new(set(&[0, 1]), set(&[0, 1])).is_err());
        assert!(Decomposition::new(set(&[0]), set(&[0, 1])).is_err());
    }

    #[test]
    fn factorization() {
        let f: Vec<u64> = prime_factors(&Nat::from(360u32)).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(f, vec![2, 2, 2, 3, 3, 5]);
        assert!(prime_factors(&Nat::one()).is_empty());
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }

    #[test]
    fn refinement_examples() {
        let r = refine_to_prime_radices(&RadixSeq::finite([4, 4]).unwrap());
        assert_eq!(r.refined, RadixSeq::finite([2, 2, 2, 2]).unwrap());
        assert_eq!(r.grouping, Partition::from_blocks(vec![vec![1, 2], vec![3, 4]]).unwrap());
        let r = refine_to_prime_radices(&RadixSeq::finite([2, 3, 5]).unwrap());
        assert_eq!(r.refined, RadixSeq::finite([2, 3, 5]).unwrap());
        assert_eq!(r.grouping, Partition::from_blocks(vec![vec![1], vec![2], vec![3]]).unwrap());
        let r = refine_to_prime_radices(&RadixSeq::finite([12, 2]).unwrap());
        assert_eq!(r.refined, RadixSeq::finite([2, 2, 3, 2]).unwrap());
        assert_eq!(r.grouping, Partition::from_blocks(vec![vec![1, 2, 3], vec![4]]).unwrap());
        let r = refine_to_prime_radices(&RadixSeq::constant(3).unwrap());
        assert!(!r.prefix_only && !r.refined.is_finite());
        assert!(refine_to_prime_radices(&RadixSeq::constant(6).unwrap()).prefix_only);
    }
}
