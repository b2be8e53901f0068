//! Radix sequences and index sets.
//!
//! A [`RadixSeq`] is the sequence `g_1, g_2, ...` (each `g_i >= 2`) that
//! generates a British number system, together with its partial products
//! `G_0 = 1, G_i = g_1 * ... * g_i`. An [`IndexSet`] is a set of positive
//! indices described by a finite window plus a flag saying whether every
//! index past the window belongs to it.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadixError {
    #[error("radix {value} at position {position} is smaller than 2")]
    RadixTooSmall { position: usize, value: Nat },
    #[error("a repeating radix sequence needs at least one radix")]
    EmptyRepeat,
    #[error("index 0 is not a valid index; indices start at 1")]
    ZeroIndex,
    #[error("index {index} lies beyond the window {window}")]
    OutsideWindow { index: usize, window: usize },
}

/// How a radix sequence continues past its explicit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadixTail {
    /// The sequence ends with the prefix.
    Finite,
    /// The last prefix radix repeats forever.
    RepeatLast,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadixSeq {
    prefix: Vec<Nat>,
    tail: RadixTail,
}

impl RadixSeq {
    pub fn new(prefix: Vec<Nat>, tail: RadixTail) -> Result<Self, RadixError> {
        for (i, g) in prefix.iter().enumerate() {
            if *g < BigUint::from(2u32) {
                return Err(RadixError::RadixTooSmall { position: i + 1, value: g.clone() });
            }
        }
        if tail == RadixTail::RepeatLast && prefix.is_empty() {
            return Err(RadixError::EmptyRepeat);
        }
        Ok(RadixSeq { prefix, tail })
    }

    pub fn finite<I: IntoIterator<Item = u64>>(radices: I) -> Result<Self, RadixError> {
        Self::new(radices.into_iter().map(Nat::from).collect(), RadixTail::Finite)
    }

    pub fn repeating<I: IntoIterator<Item = u64>>(radices: I) -> Result<Self, RadixError> {
        Self::new(radices.into_iter().map(Nat::from).collect(), RadixTail::RepeatLast)
    }

    /// The constant sequence `(g, g, g, ...)`.
    pub fn constant(g: u64) -> Result<Self, RadixError> {
        Self::repeating([g])
    }

    pub fn prefix(&self) -> &[Nat] {
        &self.prefix
    }

    pub fn tail(&self) -> RadixTail {
        self.tail
    }

    pub fn is_finite(&self) -> bool {
        self.tail == RadixTail::Finite
    }

    /// Number of radices, `None` when the sequence is infinite.
    pub fn len(&self) -> Option<usize> {
        match self.tail {
            RadixTail::Finite => Some(self.prefix.len()),
            RadixTail::RepeatLast => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The radix `g_i` (1-based).
    pub fn radix(&self, i: usize) -> Option<&Nat> {
        if i == 0 {
            return None;
        }
        match self.prefix.get(i - 1) {
            Some(g) => Some(g),
            None if self.tail == RadixTail::RepeatLast => self.prefix.last(),
            None => None,
        }
    }

    /// The partial product `G_i`, with `G_0 = 1`.
    pub fn product(&self, i: usize) -> Option<Nat> {
        let mut acc = Nat::one();
        for j in 1..=i {
            acc *= self.radix(j)?;
        }
        Some(acc)
    }

    /// `G_0, G_1, ..., G_n`.
    pub fn products_upto(&self, n: usize) -> Option<Vec<Nat>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = Nat::one();
        out.push(acc.clone());
        for j in 1..=n {
            acc *= self.radix(j)?;
            out.push(acc.clone());
        }
        Some(out)
    }

    /// The sequence with its first `k` radices removed.
    pub fn shifted(&self, k: usize) -> RadixSeq {
        if k <= self.prefix.len() {
            let mut prefix = self.prefix[k..].to_vec();
            if prefix.is_empty() && self.tail == RadixTail::RepeatLast {
                prefix.push(self.prefix.last().expect("repeating sequences are nonempty").clone());
            }
            return RadixSeq { prefix, tail: self.tail };
        }
        match self.tail {
            RadixTail::Finite => RadixSeq { prefix: Vec::new(), tail: RadixTail::Finite },
            RadixTail::RepeatLast => RadixSeq {
                prefix: vec![self.prefix.last().expect("repeating sequences are nonempty").clone()],
                tail: RadixTail::RepeatLast,
            },
        }
    }

    /// The first `n` radices as a finite sequence.
    pub fn truncated(&self, n: usize) -> Option<RadixSeq> {
        let prefix = (1..=n).map(|i| self.radix(i).cloned()).collect::<Option<Vec<_>>>()?;
        Some(RadixSeq { prefix, tail: RadixTail::Finite })
    }

    /// Enumerates `(i, G_{i-1}, g_i)` for as long as `G_{i-1} < limit` and the radix exists.
    pub(crate) fn blocks_below(&self, limit: &Nat) -> Vec<(usize, Nat, Nat)> {
        let mut out = Vec::new();
        let mut scale = Nat::one();
        let mut i = 1;
        while &scale < limit {
            let Some(g) = self.radix(i) else { break };
            out.push((i, scale.clone(), g.clone()));
            scale *= g;
            i += 1;
        }
        out
    }
}

/// A set of positive indices: the members of `[1, window]` are listed
/// explicitly and every index above `window` is a member iff `tail_included`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    included: Vec<usize>,
    window: usize,
    tail_included: bool,
}

impl IndexSet {
    pub fn new(mut included: Vec<usize>, window: usize, tail_included: bool) -> Result<Self, RadixError> {
        included.sort_unstable();
        included.dedup();
        if included.first() == Some(&0) {
            return Err(RadixError::ZeroIndex);
        }
        if let Some(&last) = included.last() {
            if last > window {
                return Err(RadixError::OutsideWindow { index: last, window });
            }
        }
        Ok(IndexSet { included, window, tail_included })
    }

    /// A finite index set; the window is its largest member.
    pub fn finite<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self, RadixError> {
        let included: Vec<usize> = indices.into_iter().collect();
        let window = included.iter().copied().max().unwrap_or(0);
        Self::new(included, window, false)
    }

    /// `{start, start + 1, ...}`.
    pub fn from_index(start: usize) -> Result<Self, RadixError> {
        if start == 0 {
            return Err(RadixError::ZeroIndex);
        }
        Ok(IndexSet { included: Vec::new(), window: start - 1, tail_included: true })
    }

    pub fn included(&self) -> &[usize] {
        &self.included
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn tail_included(&self) -> bool {
        self.tail_included
    }

    pub fn contains(&self, index: usize) -> bool {
        if index == 0 {
            false
        } else if index <= self.window {
            self.included.binary_search(&index).is_ok()
        } else {
            self.tail_included
        }
    }

    pub fn is_finite(&self) -> bool {
        !self.tail_included
    }

    pub fn is_empty(&self) -> bool {
        self.included.is_empty() && !self.tail_included
    }

    pub fn min(&self) -> Option<usize> {
        self.included.first().copied().or(if self.tail_included { Some(self.window + 1) } else { None })
    }

    /// The indices `j - k` for members `j > k`.
    pub fn shifted(&self, k: usize) -> IndexSet {
        let included = self.included.iter().filter(|&&j| j > k).map(|&j| j - k).collect();
        IndexSet { included, window: self.window.saturating_sub(k), tail_included: self.tail_included }
    }

    /// Members are consecutive integers.
    pub fn is_interval(&self) -> bool {
        let run = self.included.windows(2).all(|w| w[1] == w[0] + 1);
        if !self.tail_included {
            return run;
        }
        run && self.included.last().is_none_or(|&l| l == self.window)
    }

    /// Moves the window so that the explicit list is minimal.
    pub fn canonical(&self) -> IndexSet {
        let mut included = self.included.clone();
        let mut window = self.window;
        if self.tail_included {
            while included.last() == Some(&window) && window > 0 {
                included.pop();
                window -= 1;
            }
        } else {
            window = included.last().copied().unwrap_or(0);
        }
        IndexSet { included, window, tail_included: self.tail_included }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_follow_radices() {
        let r = RadixSeq::finite([2, 3, 4]).unwrap();
        let g: Vec<u64> = r.products_upto(3).unwrap().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(g, vec![1, 2, 6, 24]);
        assert!(r.product(4).is_none());
    }

    #[test]
    fn repeat_last_extends() {
        let r = RadixSeq::repeating([2, 3]).unwrap();
        assert_eq!(r.radix(5), Some(&Nat::from(3u32)));
        assert_eq!(r.product(4), Some(Nat::from(54u32)));
        assert_eq!(r.shifted(7).prefix(), &[Nat::from(3u32)]);
    }

    #[test]
    fn rejects_small_radix() {
        assert!(matches!(RadixSeq::finite([2, 1]), Err(RadixError::RadixTooSmall { position: 2, .. })));
        assert_eq!(RadixSeq::repeating([]), Err(RadixError::EmptyRepeat));
    }

    #[test]
    fn index_set_membership() {
        let s = IndexSet::new(vec![2, 4], 4, true).unwrap();
        assert!(!s.contains(1));
        assert!(s.contains(2));
        assert!(!s.contains(3));
        assert!(s.contains(9));
        assert!(!s.is_interval());
        assert!(IndexSet::new(vec![3, 4], 4, true).unwrap().is_interval());
        assert_eq!(s.shifted(2), IndexSet::new(vec![2], 2, true).unwrap());
        assert_eq!(IndexSet::new(vec![0], 1, false), Err(RadixError::ZeroIndex));
    }
}
