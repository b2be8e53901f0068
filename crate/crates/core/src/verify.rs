//! Ground truth for additive systems: representation counting, bounded
//! verification, encoding integers as assignments, and peeling off a
//! leading interval `[0, g)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::sets::{dilate_set, DigitSet, SetExpr};
use crate::system::{AdditiveSystem, Assignment};
use crate::Nat;

/// The least integer below a verification bound without exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterExample {
    pub n: Nat,
    pub count: Nat,
    pub witnesses: Vec<Assignment>,
}

impl fmt::Display for CounterExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {} has {} representations", self.n, self.count)?;
        for w in &self.witnesses {
            write!(f, "; {w}")?;
        }
        Ok(())
    }
}

impl std::error::Error for CounterExample {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("system is verified only below {claimed}, cannot encode {n}")]
    NotVerified { claimed: u64, n: Nat },
    #[error("{n} has no representation")]
    NoRepresentation { n: Nat },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("{element} is not an element of set {index}")]
    ElementNotInSet { index: usize, element: Nat },
    #[error("the system has no set with index {index}")]
    IndexOutOfRange { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("peeling needs at least two sets")]
    TooFewSets,
    #[error("system is verified only below {claimed}, peeling was requested below {bound}")]
    NotVerified { claimed: u64, bound: u64 },
    #[error("structure violation: {0}")]
    StructureViolation(String),
}

/// Exact number of assignments summing to `n`.
pub fn count_representations(system: &AdditiveSystem, n: &Nat) -> Nat {
    let limit = n + 1u32;
    let mut ways: BTreeMap<Nat, Nat> = BTreeMap::new();
    ways.insert(n.clone(), Nat::from(1u32));
    for (_, set) in system.relevant_sets(&limit) {
        let mut next: BTreeMap<Nat, Nat> = BTreeMap::new();
        let top = ways.keys().next_back().cloned().unwrap_or_default() + 1u32;
        let elements = set.elements_below(&top);
        for (rest, w) in &ways {
            for e in elements.iter().take_while(|e| *e <= rest) {
                *next.entry(rest - e).or_default() += w;
            }
        }
        ways = next;
    }
    ways.remove(&Nat::zero()).unwrap_or_default()
}

/// Up to `limit` assignments summing to `n`, found by exhaustive search.
pub fn representations(system: &AdditiveSystem, n: &Nat, limit: usize) -> Vec<Assignment> {
    let sets = system.relevant_sets(&(n + 1u32));
    let mut out = Vec::new();
    let mut current = Assignment::new();
    search(&sets, 0, n, limit, &mut current, &mut out);
    out
}

fn search(
    sets: &[(usize, SetExpr)],
    at: usize,
    rest: &Nat,
    limit: usize,
    current: &mut Assignment,
    out: &mut Vec<Assignment>,
) {
    if out.len() >= limit {
        return;
    }
    if at == sets.len() {
        if rest.is_zero() {
            out.push(current.clone());
        }
        return;
    }
    let (index, set) = &sets[at];
    for e in set.elements_below(&(rest + 1u32)) {
        current.insert(*index, e.clone());
        search(sets, at + 1, &(rest - &e), limit, current, out);
        if out.len() >= limit {
            break;
        }
    }
    current.insert(*index, Nat::zero());
}

fn saturating_add(a: u8, b: u8) -> u8 {
    a.saturating_add(b).min(2)
}

/// Representation counts, saturated at 2, for every `n < bound`.
fn saturated_counts(system: &AdditiveSystem, bound: u64) -> Vec<u8> {
    let size = usize::try_from(bound).expect("verification bound fits in memory");
    let mut counts = vec![0u8; size];
    if size == 0 {
        return counts;
    }
    counts[0] = 1;
    let limit = Nat::from(bound);
    for (_, set) in system.relevant_sets(&limit) {
        match set.normalize() {
            SetExpr::Ray(m) => {
                let m = m.to_usize().expect("ray modulus below bound");
                for x in m..size {
                    counts[x] = saturating_add(counts[x], counts[x - m]);
                }
            }
            other => {
                let offsets: Vec<usize> = other
                    .elements_below(&limit)
                    .iter()
                    .skip(1)
                    .map(|e| e.to_usize().expect("element below bound"))
                    .collect();
                let previous = counts.clone();
                for &e in &offsets {
                    for x in e..size {
                        if previous[x - e] != 0 {
                            counts[x] = saturating_add(counts[x], previous[x - e]);
                        }
                    }
                }
            }
        }
    }
    counts
}

/// Checks that every `n < bound` has exactly one representation. On success
/// the returned system carries `claimed_bound >= bound`; otherwise the least
/// failing `n` is reported.
pub fn verify_additive(system: &AdditiveSystem, bound: u64) -> Result<AdditiveSystem, CounterExample> {
    let counts = saturated_counts(system, bound);
    match counts.iter().position(|&c| c != 1) {
        None => {
            let claimed = system.claimed_bound().max(bound);
            Ok(system.clone().with_claimed_bound(claimed))
        }
        Some(n) => {
            let n = Nat::from(n);
            let count = count_representations(system, &n);
            let witnesses = representations(system, &n, 2);
            Err(CounterExample { n, count, witnesses })
        }
    }
}

/// The unique assignment summing to `n`.
///
/// Sets are tried largest first, each contributing its largest element that
/// fits; if that greedy pass does not reach 0 an exhaustive search is used.
pub fn encode(system: &AdditiveSystem, n: &Nat) -> Result<Assignment, EncodeError> {
    if Nat::from(system.claimed_bound()) <= *n {
        return Err(EncodeError::NotVerified { claimed: system.claimed_bound(), n: n.clone() });
    }
    let limit = n + 1u32;
    let mut sets = system.relevant_sets(&limit);
    sets.sort_by_key(|(_, s)| std::cmp::Reverse(s.min_positive()));

    let mut rest = n.clone();
    let mut greedy = Assignment::new();
    for (index, set) in &sets {
        if let Some(e) = set.elements_below(&(&rest + 1u32)).pop() {
            rest -= &e;
            greedy.insert(*index, e);
        }
    }
    if rest.is_zero() {
        return Ok(greedy);
    }

    let mut dead = HashSet::new();
    let mut current = Assignment::new();
    if backtrack(&sets, 0, n.clone(), &mut current, &mut dead) {
        Ok(current)
    } else {
        Err(EncodeError::NoRepresentation { n: n.clone() })
    }
}

fn backtrack(
    sets: &[(usize, SetExpr)],
    at: usize,
    rest: Nat,
    current: &mut Assignment,
    dead: &mut HashSet<(usize, Nat)>,
) -> bool {
    if at == sets.len() {
        return rest.is_zero();
    }
    if dead.contains(&(at, rest.clone())) {
        return false;
    }
    let (index, set) = &sets[at];
    for e in set.elements_below(&(&rest + 1u32)).into_iter().rev() {
        current.insert(*index, e.clone());
        if backtrack(sets, at + 1, &rest - &e, current, dead) {
            return true;
        }
    }
    current.insert(*index, Nat::zero());
    dead.insert((at, rest));
    false
}

/// Sum of the assigned elements, after checking each belongs to its set.
pub fn decode(system: &AdditiveSystem, assignment: &Assignment) -> Result<Nat, DecodeError> {
    let mut total = Nat::zero();
    for (&index, element) in assignment.parts() {
        let set = system.set(index).ok_or(DecodeError::IndexOutOfRange { index })?;
        if !set.contains(element) {
            return Err(DecodeError::ElementNotInSet { index, element: element.clone() });
        }
        total += element;
    }
    Ok(total)
}

/// Outcome of [`peel`]: `A_{i1} = [0, g) ⊕ g*B_{i1}` and `A_i = g*B_i` for
/// every other `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelResult {
    pub i1: usize,
    pub g: Nat,
    /// `B_{i1}`, possibly `{0}`.
    pub head: SetExpr,
    /// The family `(B_i)`, with `B_{i1}` removed when it is `{0}`.
    pub peeled: AdditiveSystem,
    /// `B_{i1} = {0}`: the system is the dilation of `peeled` by `g`.
    pub dilation_case: bool,
}

impl PeelResult {
    /// Index in `peeled` of the set that came from original set `i`.
    pub fn peeled_index(&self, i: usize) -> Option<usize> {
        if self.dilation_case {
            match i.cmp(&self.i1) {
                std::cmp::Ordering::Less => Some(i),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(i - 1),
            }
        } else {
            Some(i)
        }
    }

    /// Rebuilds original set `i` from the peeled data, below `bound`.
    pub fn reconstructed_below(&self, i: usize, bound: &Nat) -> Option<Vec<Nat>> {
        if i == self.i1 {
            let interval = SetExpr::Explicit(DigitSet::progression(&Nat::from(1u32), &self.g));
            return Some(crate::sets::sumset(&interval, &dilate_set(&self.head, &self.g), bound));
        }
        let b = self.peeled.set(self.peeled_index(i)?)?;
        Some(dilate_set(&b, &self.g).elements_below(bound))
    }
}

/// Splits a verified system into the interval `[0, g)` and a `g`-dilated remainder.
///
/// `i1` is the set containing 1 and `g` the least positive integer missing
/// from it. Every identity is checked below `bound`; any failure means the
/// input was not an additive system and is reported as a structure violation.
pub fn peel(system: &AdditiveSystem, bound: u64) -> Result<PeelResult, PeelError> {
    if system.len().is_some_and(|k| k < 2) {
        return Err(PeelError::TooFewSets);
    }
    if system.claimed_bound() < bound {
        return Err(PeelError::NotVerified { claimed: system.claimed_bound(), bound });
    }
    let one = Nat::from(1u32);
    let two = Nat::from(2u32);
    let i1 = system
        .relevant_sets(&two)
        .into_iter()
        .find(|(_, s)| s.contains(&one))
        .map(|(i, _)| i)
        .ok_or_else(|| PeelError::StructureViolation("no set contains 1".into()))?;
    let system = system.materialized(i1);
    let limit = Nat::from(bound);

    let a1 = system.set(i1).expect("materialized");
    let (g, head) = a1
        .split_initial_interval()
        .ok_or_else(|| PeelError::StructureViolation(format!("set {i1} contains every positive integer")))?;

    let mut peeled_sets = Vec::with_capacity(system.prefix().len());
    for (k, set) in system.prefix().iter().enumerate() {
        let i = k + 1;
        if i == i1 {
            peeled_sets.push(head.clone());
            continue;
        }
        let b = set
            .divide_exact(&g)
            .ok_or_else(|| PeelError::StructureViolation(format!("set {i} has an element not divisible by {g}")))?;
        if dilate_set(&b, &g).elements_below(&limit) != set.elements_below(&limit) {
            return Err(PeelError::StructureViolation(format!("set {i} is not {g} times its quotient")));
        }
        peeled_sets.push(b);
    }

    let interval = SetExpr::Explicit(DigitSet::progression(&one, &g));
    let rebuilt = crate::sets::sumset(&interval, &dilate_set(&head, &g), &limit);
    if rebuilt != a1.elements_below(&limit) {
        return Err(PeelError::StructureViolation(format!("set {i1} is not [0, {g}) + {g}*B")));
    }
    let head_set = head.to_digit_set();
    if let Some(h) = &head_set {
        let expected = a1.cardinality().expect("finite set");
        if Nat::from(h.len()) * &g != expected {
            return Err(PeelError::StructureViolation(format!("set {i1} is not a direct sum [0, {g}) + {g}*B")));
        }
    }
    let dilation_case = head_set.is_some_and(|h| h.is_zero_set());
    if dilation_case {
        peeled_sets.remove(i1 - 1);
    }

    if let Some(scale) = system.tail_scale() {
        if !(scale % &g).is_zero() {
            return Err(PeelError::StructureViolation(format!("tail blocks are not multiples of {g}")));
        }
    }
    let peeled = AdditiveSystem::new(peeled_sets, system.tail().cloned())
        .map_err(|e| PeelError::StructureViolation(e.to_string()))?;
    let reduced = Nat::from(bound) / &g;
    let peeled = peeled.with_claimed_bound(reduced.to_u64().expect("smaller than bound"));

    Ok(PeelResult { i1, g, head, peeled, dilation_case })
}
