//! Finitely supported sequences of nonnegative integers indexed from 1.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Sparse map `index -> count` with zero entries removed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq(BTreeMap<u32, u32>);

impl Seq {
    pub fn new() -> Self {
        Self::default()
    }

    /// Dense form, first entry is index 1.
    pub fn from_dense(entries: &[u32]) -> Self {
        let mut s = Self::new();
        for (i, &c) in entries.iter().enumerate() {
            s.set(i as u32 + 1, c);
        }
        s
    }

    /// Digit-string notation: `"0001"` has a single 1 at index 4, `"0"` is zero.
    pub fn from_digits(digits: &str) -> Option<Self> {
        let mut dense = Vec::new();
        for ch in digits.chars() {
            dense.push(ch.to_digit(10)?);
        }
        Some(Self::from_dense(&dense))
    }

    /// Counting sequence of a list of positive values.
    pub fn counting<I: IntoIterator<Item = u32>>(values: I) -> Self {
        let mut s = Self::new();
        for v in values {
            assert!(v >= 1, "sequence indices start at 1");
            *s.0.entry(v).or_insert(0) += 1;
        }
        s
    }

    pub fn get(&self, i: u32) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: u32, count: u32) {
        assert!(i >= 1, "sequence indices start at 1");
        if count == 0 {
            self.0.remove(&i);
        } else {
            self.0.insert(i, count);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `|s| = Σ s_i`.
    pub fn norm(&self) -> u32 {
        self.0.values().sum()
    }

    /// `Σ i·s_i`.
    pub fn weighted(&self) -> i64 {
        self.0.iter().map(|(&i, &c)| i as i64 * c as i64).sum()
    }

    /// Nonzero entries in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&i, &c)| (i, c))
    }

    pub fn max_index(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Values repeated by multiplicity, ascending.
    pub fn expand(&self) -> Vec<u32> {
        self.iter()
            .flat_map(|(i, c)| std::iter::repeat(i).take(c as usize))
            .collect()
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.combine(other, |a, b| Some(a + b)).expect("addition cannot fail")
    }

    pub fn scaled(&self, k: u32) -> Self {
        let mut s = Self::new();
        for (i, c) in self.iter() {
            s.set(i, c * k);
        }
        s
    }

    /// `None` if some entry would become negative.
    pub fn minus(&self, other: &Self) -> Option<Self> {
        self.combine(other, |a, b| a.checked_sub(b))
    }

    fn combine(&self, other: &Self, f: impl Fn(u32, u32) -> Option<u32>) -> Option<Self> {
        let mut s = Self::new();
        let top = self.max_index().max(other.max_index());
        for i in 1..=top {
            s.set(i, f(self.get(i), other.get(i))?);
        }
        Some(s)
    }

    /// Product of `s_i!`.
    pub fn factorial_product(&self) -> u128 {
        self.iter()
            .map(|(_, c)| (1..=c as u128).product::<u128>())
            .product()
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dense digit notation when all entries are single digits, else `{i:c,...}`.
impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.0.values().all(|&c| c < 10) {
            for i in 1..=self.max_index() {
                write!(f, "{}", self.get(i))?;
            }
            return Ok(());
        }
        write!(f, "{{")?;
        for (n, (i, c)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}:{c}")?;
        }
        write!(f, "}}")
    }
}
