use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::radix::RadixSeq;
use crate::sets::{DigitSet, SetExpr};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("set {index} has fewer than two elements")]
    SetTooSmall { index: usize },
    #[error("set {index} is infinite but the system continues with radix blocks")]
    InfiniteBeforeTail { index: usize },
}

/// A family of sets claimed to be an additive system.
///
/// The family is an explicit prefix `A_1, ..., A_k` optionally followed by
/// British-number-system blocks: with `S = |A_1| * ... * |A_k|` and tail
/// radices `r_1, r_2, ...`, set `k + j` is `S * R_{j-1} * [0, r_j)`. A finite
/// tail of length `t` ends with the ray `S * R_t * N_0` at index `k + t + 1`.
///
/// `claimed_bound` records the largest `N` below which the unique
/// representation property has been certified (0 when unverified).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveSystem {
    sets: Vec<SetExpr>,
    tail: Option<RadixSeq>,
    claimed_bound: u64,
}

impl AdditiveSystem {
    pub fn new(sets: Vec<SetExpr>, tail: Option<RadixSeq>) -> Result<Self, SystemError> {
        for (i, s) in sets.iter().enumerate() {
            if s.cardinality().is_some_and(|c| c < Nat::from(2u32)) {
                return Err(SystemError::SetTooSmall { index: i + 1 });
            }
            if tail.is_some() && !s.is_finite() {
                return Err(SystemError::InfiniteBeforeTail { index: i + 1 });
            }
        }
        Ok(AdditiveSystem { sets, tail, claimed_bound: 0 })
    }

    pub fn from_sets(sets: Vec<SetExpr>) -> Result<Self, SystemError> {
        Self::new(sets, None)
    }

    /// The one-set system `(N_0)`.
    pub fn trivial() -> Self {
        AdditiveSystem { sets: vec![SetExpr::naturals()], tail: None, claimed_bound: 0 }
    }

    /// The full British number system of `radices`. A finite radix sequence
    /// ends with a ray.
    pub fn bns(radices: RadixSeq) -> Self {
        AdditiveSystem { sets: Vec::new(), tail: Some(radices), claimed_bound: 0 }
    }

    pub fn prefix(&self) -> &[SetExpr] {
        &self.sets
    }

    pub fn tail(&self) -> Option<&RadixSeq> {
        self.tail.as_ref()
    }

    pub fn claimed_bound(&self) -> u64 {
        self.claimed_bound
    }

    pub fn with_claimed_bound(mut self, bound: u64) -> Self {
        self.claimed_bound = bound;
        self
    }

    /// The factor `S` multiplying the tail blocks.
    pub fn tail_scale(&self) -> Option<Nat> {
        self.tail.as_ref()?;
        let mut s = Nat::one();
        for set in &self.sets {
            s *= set.cardinality().expect("prefix sets are finite when a tail is present");
        }
        Some(s)
    }

    /// Number of sets, `None` for infinitely many.
    pub fn len(&self) -> Option<usize> {
        match &self.tail {
            None => Some(self.sets.len()),
            Some(r) => r.len().map(|t| self.sets.len() + t + 1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn is_infinite(&self) -> bool {
        self.len().is_none()
    }

    /// The set with 1-based index `i`.
    pub fn set(&self, i: usize) -> Option<SetExpr> {
        if i == 0 {
            return None;
        }
        if i <= self.sets.len() {
            return Some(self.sets[i - 1].clone());
        }
        let radices = self.tail.as_ref()?;
        let j = i - self.sets.len();
        let scale = self.tail_scale()?;
        match radices.radix(j) {
            Some(g) => {
                let step = scale * radices.product(j - 1)?;
                Some(SetExpr::Explicit(DigitSet::progression(&step, g)))
            }
            None if radices.len() == Some(j - 1) => Some(SetExpr::Ray(scale * radices.product(j - 1)?)),
            None => None,
        }
    }

    /// Every set whose least positive element is below `limit`, with its index.
    pub fn relevant_sets(&self, limit: &Nat) -> Vec<(usize, SetExpr)> {
        let mut out: Vec<(usize, SetExpr)> = self
            .sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.min_positive().is_some_and(|m| &m < limit))
            .map(|(i, s)| (i + 1, s.clone()))
            .collect();
        if let Some(radices) = &self.tail {
            let scale = self.tail_scale().expect("tail present");
            let k = self.sets.len();
            let mut step = scale;
            let mut j = 1;
            while &step < limit {
                match radices.radix(j) {
                    Some(g) => {
                        out.push((k + j, SetExpr::Explicit(DigitSet::progression(&step, g))));
                        step *= g;
                    }
                    None => {
                        out.push((k + j, SetExpr::Ray(step)));
                        break;
                    }
                }
                j += 1;
            }
        }
        out
    }

    /// The same system with at least `k` sets in the explicit prefix (or all
    /// of them, when there are fewer than `k`).
    pub fn materialized(&self, k: usize) -> AdditiveSystem {
        let Some(radices) = &self.tail else { return self.clone() };
        if self.sets.len() >= k {
            return self.clone();
        }
        let take = k - self.sets.len();
        let mut sets = self.sets.clone();
        for i in self.sets.len() + 1..=k {
            match self.set(i) {
                Some(s) => sets.push(s),
                None => break,
            }
        }
        let tail = match radices.len() {
            Some(t) if take > t => None,
            _ => Some(radices.shifted(take)),
        };
        AdditiveSystem { sets, tail, claimed_bound: self.claimed_bound }
    }

    /// The explicit sets `1..=n`; fails when there are fewer.
    pub fn first_sets(&self, n: usize) -> Option<Vec<SetExpr>> {
        (1..=n).map(|i| self.set(i)).collect()
    }
}

impl fmt::Display for AdditiveSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sets.iter().enumerate() {
            writeln!(f, "A_{} = {}", i + 1, s)?;
        }
        if let Some(r) = &self.tail {
            let scale = self.tail_scale().expect("tail present");
            write!(f, "then blocks {scale} * G_(j-1) * [0, g_j) for radices ")?;
            for (i, g) in r.prefix().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{g}")?;
            }
            if r.is_finite() {
                writeln!(f, " followed by a ray")?;
            } else {
                writeln!(f, ",...")?;
            }
        }
        Ok(())
    }
}

/// The nonzero summands of a representation, keyed by set index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    parts: BTreeMap<usize, Nat>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Zero entries are dropped.
    pub fn from_parts<I: IntoIterator<Item = (usize, Nat)>>(parts: I) -> Self {
        Assignment { parts: parts.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn insert(&mut self, index: usize, value: Nat) {
        if value.is_zero() {
            self.parts.remove(&index);
        } else {
            self.parts.insert(index, value);
        }
    }

    pub fn get(&self, index: usize) -> Option<&Nat> {
        self.parts.get(&index)
    }

    pub fn parts(&self) -> &BTreeMap<usize, Nat> {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> Nat {
        self.parts.values().sum()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k} -> {v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::to_u64s;

    #[test]
    fn tail_blocks_follow_prefix() {
        let sys = AdditiveSystem::new(
            vec![SetExpr::explicit([0, 1]).unwrap(), SetExpr::explicit([0, 2, 4]).unwrap()],
            Some(RadixSeq::constant(2).unwrap()),
        )
        .unwrap();
        assert_eq!(sys.tail_scale(), Some(Nat::from(6u32)));
        assert_eq!(sys.set(3), Some(SetExpr::explicit([0, 6]).unwrap()));
        assert_eq!(sys.set(4), Some(SetExpr::explicit([0, 12]).unwrap()));
        assert!(sys.is_infinite());
        let rel: Vec<usize> = sys.relevant_sets(&Nat::from(13u32)).into_iter().map(|(i, _)| i).collect();
        assert_eq!(rel, vec![1, 2, 3, 4]);
    }

    #[test]
    fn finite_tail_ends_in_ray() {
        let sys = AdditiveSystem::bns(RadixSeq::finite([2, 3]).unwrap());
        assert_eq!(sys.len(), Some(3));
        assert_eq!(sys.set(3), Some(SetExpr::Ray(Nat::from(6u32))));
        assert_eq!(sys.set(4), None);
        let m = sys.materialized(5);
        assert_eq!(m.tail(), None);
        assert_eq!(m.prefix().len(), 3);
    }

    #[test]
    fn materialize_keeps_denotation() {
        let sys = AdditiveSystem::bns(RadixSeq::repeating([2, 3]).unwrap());
        let m = sys.materialized(3);
        assert_eq!(m.prefix().len(), 3);
        for i in 1..8 {
            assert_eq!(sys.set(i), m.set(i));
        }
        assert_eq!(to_u64s(&m.set(4).unwrap().elements_below(&Nat::from(100u32))), vec![0, 18, 36]);
    }

    #[test]
    fn rejects_singletons() {
        let err = AdditiveSystem::from_sets(vec![SetExpr::Explicit(DigitSet::zero())]).unwrap_err();
        assert_eq!(err, SystemError::SetTooSmall { index: 1 });
    }
}
