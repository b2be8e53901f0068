//! Exact set arithmetic on sets of nonnegative integers containing 0.
//!
//! Finite sets are [`DigitSet`]s. Possibly infinite sets are [`SetExpr`]s,
//! which are only ever enumerated below an explicit bound.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::radix::{IndexSet, RadixSeq};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("element {0} is negative")]
    NegativeElement(BigInt),
    #[error("0 is missing from the set")]
    MissingZero,
    #[error("{what} must be positive")]
    ZeroFactor { what: &'static str },
}

/// A finite, strictly increasing set of nonnegative integers whose least element is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitSet {
    elements: Vec<Nat>,
}

/// Sorts and deduplicates `raw`, rejecting negative values and sets without 0.
pub fn normalize_digit_set(raw: &[BigInt]) -> Result<DigitSet, SetError> {
    let mut elements = Vec::with_capacity(raw.len());
    for x in raw {
        match x.sign() {
            Sign::Minus => return Err(SetError::NegativeElement(x.clone())),
            _ => elements.push(x.magnitude().clone()),
        }
    }
    DigitSet::from_naturals(elements)
}

impl DigitSet {
    pub fn from_naturals(mut elements: Vec<Nat>) -> Result<Self, SetError> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first().is_none_or(|e| !e.is_zero()) {
            return Err(SetError::MissingZero);
        }
        Ok(DigitSet { elements })
    }

    pub fn from_u64s<I: IntoIterator<Item = u64>>(raw: I) -> Result<Self, SetError> {
        Self::from_naturals(raw.into_iter().map(Nat::from).collect())
    }

    /// Caller guarantees the elements are sorted, distinct and start with 0.
    pub(crate) fn from_sorted_unchecked(elements: Vec<Nat>) -> Self {
        debug_assert!(elements.first().is_some_and(|e| e.is_zero()));
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        DigitSet { elements }
    }

    /// `{0}`.
    pub fn zero() -> Self {
        DigitSet { elements: vec![Nat::zero()] }
    }

    /// The interval `[0, n)`; `n = 0` yields `{0}`.
    pub fn interval(n: u64) -> Self {
        DigitSet { elements: (0..n.max(1)).map(Nat::from).collect() }
    }

    /// `step * [0, count)`.
    pub fn progression(step: &Nat, count: &Nat) -> Self {
        let mut elements = Vec::new();
        let mut i = Nat::zero();
        while &i < count || elements.is_empty() {
            elements.push(&i * step);
            i += 1u32;
        }
        DigitSet { elements }
    }

    pub fn elements(&self) -> &[Nat] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Nat> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: a digit set contains at least 0.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max(&self) -> &Nat {
        self.elements.last().expect("digit sets are nonempty")
    }

    pub fn contains(&self, x: &Nat) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn min_positive(&self) -> Option<&Nat> {
        self.elements.get(1)
    }

    pub fn is_zero_set(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn dilate(&self, d: &Nat) -> DigitSet {
        if d.is_zero() {
            return DigitSet::zero();
        }
        DigitSet { elements: self.elements.iter().map(|x| x * d).collect() }
    }

    /// If the set is `m * [0, q)` with `q >= 2`, returns `(m, q)`.
    pub fn as_progression(&self) -> Option<(Nat, usize)> {
        let m = self.min_positive()?.clone();
        let mut expected = Nat::zero();
        for e in &self.elements {
            if *e != expected {
                return None;
            }
            expected += &m;
        }
        Some((m, self.elements.len()))
    }

    /// The largest `t` with `[0, t) ⊆ self`.
    pub fn initial_run(&self) -> Nat {
        let mut t = Nat::zero();
        for e in &self.elements {
            if *e != t {
                break;
            }
            t += 1u32;
        }
        t
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A possibly infinite set of nonnegative integers containing 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Explicit(DigitSet),
    /// `modulus * N_0`.
    Ray(Nat),
    /// `factor * inner`.
    Dilated(Nat, Box<SetExpr>),
    /// The integers whose mixed-radix digits (for `radices`) vanish outside `indices`.
    BnsSubsum(RadixSeq, IndexSet),
}

impl From<DigitSet> for SetExpr {
    fn from(s: DigitSet) -> Self {
        SetExpr::Explicit(s)
    }
}

impl SetExpr {
    pub fn explicit<I: IntoIterator<Item = u64>>(raw: I) -> Result<Self, SetError> {
        Ok(SetExpr::Explicit(DigitSet::from_u64s(raw)?))
    }

    pub fn ray(modulus: impl Into<Nat>) -> Result<Self, SetError> {
        let m = modulus.into();
        if m.is_zero() {
            return Err(SetError::ZeroFactor { what: "ray modulus" });
        }
        Ok(SetExpr::Ray(m))
    }

    pub fn dilated(factor: impl Into<Nat>, inner: SetExpr) -> Result<Self, SetError> {
        let f = factor.into();
        if f.is_zero() {
            return Err(SetError::ZeroFactor { what: "dilation factor" });
        }
        Ok(SetExpr::Dilated(f, Box::new(inner)))
    }

    /// `N_0` itself.
    pub fn naturals() -> Self {
        SetExpr::Ray(Nat::one())
    }

    pub fn is_finite(&self) -> bool {
        match self {
            SetExpr::Explicit(_) => true,
            SetExpr::Ray(_) => false,
            SetExpr::Dilated(_, inner) => inner.is_finite(),
            SetExpr::BnsSubsum(radices, indices) => radices.is_finite() || indices.is_finite(),
        }
    }

    /// Cardinality of a finite set.
    pub fn cardinality(&self) -> Option<Nat> {
        match self {
            SetExpr::Explicit(s) => Some(Nat::from(s.len())),
            SetExpr::Ray(_) => None,
            SetExpr::Dilated(_, inner) => inner.cardinality(),
            SetExpr::BnsSubsum(radices, indices) => {
                if !self.is_finite() {
                    return None;
                }
                let last = match radices.len() {
                    Some(n) => n.min(if indices.tail_included() { n } else { indices.window() }),
                    None => indices.window(),
                };
                let mut c = Nat::one();
                for i in 1..=last {
                    if indices.contains(i) {
                        c *= radices.radix(i)?;
                    }
                }
                Some(c)
            }
        }
    }

    pub fn min_positive(&self) -> Option<Nat> {
        match self {
            SetExpr::Explicit(s) => s.min_positive().cloned(),
            SetExpr::Ray(m) => Some(m.clone()),
            SetExpr::Dilated(f, inner) => inner.min_positive().map(|x| x * f),
            SetExpr::BnsSubsum(radices, indices) => {
                let j = indices.min()?;
                radices.radix(j)?;
                radices.product(j - 1)
            }
        }
    }

    pub fn contains(&self, x: &Nat) -> bool {
        match self {
            SetExpr::Explicit(s) => s.contains(x),
            SetExpr::Ray(m) => (x % m).is_zero(),
            SetExpr::Dilated(f, inner) => {
                let (q, r) = x.div_rem(f);
                r.is_zero() && inner.contains(&q)
            }
            SetExpr::BnsSubsum(radices, indices) => {
                let mut rest = x.clone();
                let mut i = 1;
                while !rest.is_zero() {
                    let Some(g) = radices.radix(i) else { return false };
                    let (q, digit) = rest.div_rem(g);
                    if !digit.is_zero() && !indices.contains(i) {
                        return false;
                    }
                    rest = q;
                    i += 1;
                }
                true
            }
        }
    }

    /// All elements strictly below `bound`, ascending.
    pub fn elements_below(&self, bound: &Nat) -> Vec<Nat> {
        match self {
            SetExpr::Explicit(s) => s.elements().iter().take_while(|e| *e < bound).cloned().collect(),
            SetExpr::Ray(m) => {
                let mut out = Vec::new();
                let mut x = Nat::zero();
                while &x < bound {
                    out.push(x.clone());
                    x += m;
                }
                out
            }
            SetExpr::Dilated(f, inner) => {
                let inner_bound = (bound + f - 1u32) / f;
                inner.elements_below(&inner_bound).into_iter().map(|x| x * f).collect()
            }
            SetExpr::BnsSubsum(radices, indices) => {
                if bound.is_zero() {
                    return Vec::new();
                }
                let mut current = vec![Nat::zero()];
                for (i, scale, g) in radices.blocks_below(bound) {
                    if !indices.contains(i) {
                        continue;
                    }
                    // Lower digits sum to less than `scale`, so extending digit by digit stays sorted.
                    let mut next = Vec::new();
                    let mut d = Nat::zero();
                    let mut offset = Nat::zero();
                    while d < g && &offset < bound {
                        for x in &current {
                            let y = x + &offset;
                            if &y >= bound {
                                break;
                            }
                            next.push(y);
                        }
                        d += 1u32;
                        offset += &scale;
                    }
                    current = next;
                }
                current
            }
        }
    }

    /// The finite set this expression denotes, if it is finite.
    pub fn to_digit_set(&self) -> Option<DigitSet> {
        match self.normalize() {
            SetExpr::Explicit(s) => Some(s),
            _ => None,
        }
    }

    /// Canonical form. Finite expressions become `Explicit`; a dilation of a
    /// ray becomes a ray; nested dilations merge; a sub-sum that skips its
    /// first blocks becomes a dilation of a sub-sum containing index 1; a
    /// sub-sum of every block from some index on becomes a ray.
    pub fn normalize(&self) -> SetExpr {
        match self {
            SetExpr::Explicit(_) | SetExpr::Ray(_) => self.clone(),
            SetExpr::Dilated(f, inner) => {
                let inner = inner.normalize();
                if f.is_one() {
                    return inner;
                }
                match inner {
                    SetExpr::Explicit(s) => SetExpr::Explicit(s.dilate(f)),
                    SetExpr::Ray(m) => SetExpr::Ray(m * f),
                    SetExpr::Dilated(h, y) => SetExpr::Dilated(h * f, y),
                    other => SetExpr::Dilated(f.clone(), Box::new(other)),
                }
            }
            SetExpr::BnsSubsum(radices, indices) => {
                if self.is_finite() {
                    let top = match radices.len() {
                        Some(n) if indices.tail_included() => n,
                        Some(n) => n.min(indices.window()),
                        None => indices.window(),
                    };
                    let bound = radices.product(top).expect("radices exist up to top");
                    let elements = self.elements_below(&bound);
                    return SetExpr::Explicit(DigitSet::from_sorted_unchecked(elements));
                }
                let start = indices.min().expect("infinite index sets are nonempty");
                if start > 1 {
                    let scale = radices.product(start - 1).expect("repeating radices");
                    let rest = SetExpr::BnsSubsum(radices.shifted(start - 1), indices.shifted(start - 1));
                    return SetExpr::Dilated(scale, Box::new(rest)).normalize();
                }
                let indices = indices.canonical();
                if indices.included().is_empty() {
                    return SetExpr::Ray(radices.product(indices.window()).expect("repeating radices"));
                }
                SetExpr::BnsSubsum(radices.canonical(), indices)
            }
        }
    }

    /// `X / g`, when every element of the set is divisible by `g`.
    pub fn divide_exact(&self, g: &Nat) -> Option<SetExpr> {
        if g.is_one() {
            return Some(self.normalize());
        }
        match self.normalize() {
            SetExpr::Explicit(s) => {
                let mut out = Vec::with_capacity(s.len());
                for e in s.elements() {
                    let (q, r) = e.div_rem(g);
                    if !r.is_zero() {
                        return None;
                    }
                    out.push(q);
                }
                Some(SetExpr::Explicit(DigitSet::from_sorted_unchecked(out)))
            }
            SetExpr::Ray(m) => {
                let (q, r) = m.div_rem(g);
                r.is_zero().then_some(SetExpr::Ray(q))
            }
            SetExpr::Dilated(f, inner) => {
                let h = f.gcd(g);
                let inner = inner.divide_exact(&(g / &h))?;
                Some(SetExpr::Dilated(&f / &h, Box::new(inner)).normalize())
            }
            // A normalized sub-sum contains 1.
            SetExpr::BnsSubsum(..) => None,
        }
    }

    /// For a set containing 1, finds `g` = the least positive integer not in
    /// the set together with `B = (X ∩ gZ) / g`. Whether `X = [0, g) ⊕ g*B`
    /// actually holds is left to the caller.
    pub fn split_initial_interval(&self) -> Option<(Nat, SetExpr)> {
        match self.normalize() {
            SetExpr::Explicit(s) => {
                let g = s.initial_run();
                if g < Nat::from(2u32) {
                    return None;
                }
                let rest = s.elements().iter().filter(|e| (*e % &g).is_zero()).map(|e| e / &g).collect();
                Some((g, SetExpr::Explicit(DigitSet::from_sorted_unchecked(rest))))
            }
            SetExpr::BnsSubsum(radices, indices) => {
                let mut t = 0;
                while indices.contains(t + 1) {
                    t += 1;
                }
                let g = radices.product(t)?;
                let rest = SetExpr::BnsSubsum(radices.shifted(t), indices.shifted(t)).normalize();
                Some((g, rest))
            }
            _ => None,
        }
    }
}

impl RadixSeq {
    /// Drops trailing repeats of a repeating last radix.
    pub fn canonical(&self) -> RadixSeq {
        let mut prefix = self.prefix().to_vec();
        if !self.is_finite() {
            while prefix.len() >= 2 && prefix[prefix.len() - 1] == prefix[prefix.len() - 2] {
                prefix.pop();
            }
        }
        RadixSeq::new(prefix, self.tail()).expect("canonical form of a valid sequence")
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Explicit(s) => write!(f, "{s}"),
            SetExpr::Ray(m) => write!(f, "{m}*N0"),
            SetExpr::Dilated(d, inner) => write!(f, "{d}*({inner})"),
            SetExpr::BnsSubsum(radices, indices) => {
                write!(f, "subsum[radices ")?;
                for (i, g) in radices.prefix().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                if !radices.is_finite() {
                    write!(f, ",...")?;
                }
                write!(f, "; indices ")?;
                for (i, j) in indices.included().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{j}")?;
                }
                if indices.tail_included() {
                    write!(f, " and all > {}", indices.window())?;
                }
                write!(f, "]")
            }
        }
    }
}

/// `{e ∈ x : e < bound}`, ascending.
pub fn elements_below(x: &SetExpr, bound: &Nat) -> Vec<Nat> {
    x.elements_below(bound)
}

/// All sums `a + b` below `bound`, deduplicated and ascending.
pub fn sumset(a: &SetExpr, b: &SetExpr, bound: &Nat) -> Vec<Nat> {
    let left = a.elements_below(bound);
    let right = b.elements_below(bound);
    let mut out = BTreeSet::new();
    for x in &left {
        for y in &right {
            let s = x + y;
            if &s >= bound {
                break;
            }
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

/// Exact sumset of finite sets.
pub fn finite_sumset(a: &DigitSet, b: &DigitSet) -> DigitSet {
    let mut out = BTreeSet::new();
    for x in a.elements() {
        for y in b.elements() {
            out.insert(x + y);
        }
    }
    DigitSet::from_sorted_unchecked(out.into_iter().collect())
}

/// True iff the `|a|·|b|` sums `x + y` are pairwise distinct.
pub fn is_direct_sum(a: &DigitSet, b: &DigitSet) -> bool {
    let mut seen = HashSet::with_capacity(a.len() * b.len());
    a.elements().iter().all(|x| b.elements().iter().all(|y| seen.insert(x + y)))
}

/// `d * x`. Finite sets stay explicit and rays stay rays.
pub fn dilate_set(x: &SetExpr, d: &Nat) -> SetExpr {
    assert!(!d.is_zero(), "dilation factor must be positive");
    if d.is_one() {
        return x.clone();
    }
    match x {
        SetExpr::Explicit(s) => SetExpr::Explicit(s.dilate(d)),
        SetExpr::Ray(m) => SetExpr::Ray(m * d),
        _ => SetExpr::Dilated(d.clone(), Box::new(x.clone())).normalize(),
    }
}

/// Convenience: `BigUint` values to `u64`, panicking on overflow. Test and example helper.
pub fn to_u64s(xs: &[Nat]) -> Vec<u64> {
    xs.iter().map(|x| u64::try_from(x).expect("value fits in u64")).collect()
}
