use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Result};

/// Largest supported ground set.
pub const MAX_N: u32 = 256;

const WORDS: usize = (MAX_N as usize) / 64;

/// A subset of `[n]` stored as a bit word; element `i` (1-based) is bit `i - 1`.
///
/// Ordering is colex: the set whose largest differing element is larger
/// compares greater, which coincides with comparing the bit words as
/// unsigned integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetCode {
    words: [u64; WORDS],
}

impl SubsetCode {
    pub const EMPTY: SubsetCode = SubsetCode { words: [0; WORDS] };

    /// Build from 1-based elements. Rejects repeats and elements outside `[n]`.
    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        if n > MAX_N {
            return Err(invalid(format!("ground set size {n} exceeds {MAX_N}")));
        }
        let mut code = SubsetCode::EMPTY;
        for &e in elements {
            if e == 0 || e > n {
                return Err(invalid(format!("element {e} outside [1, {n}]")));
            }
            if code.contains(e) {
                return Err(invalid(format!("element {e} repeated")));
            }
            code.insert(e);
        }
        Ok(code)
    }

    /// Build from a single machine word (bits `0..64`).
    #[inline]
    pub fn from_low_word(bits: u64) -> Self {
        let mut words = [0; WORDS];
        words[0] = bits;
        SubsetCode { words }
    }

    /// `{1, ..., t}`
    pub fn prefix(t: u32) -> Self {
        let mut code = SubsetCode::EMPTY;
        for e in 1..=t {
            code.insert(e);
        }
        code
    }

    /// The low 64 bits. Only meaningful when the ground set has at most 64 elements.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    /// True when every element lies in `[n]`.
    pub fn fits(&self, n: u32) -> bool {
        self.max_element().is_none_or(|m| m <= n)
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, element: u32) -> bool {
        let b = (element - 1) as usize;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, element: u32) {
        let b = (element - 1) as usize;
        self.words[b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub fn remove(&mut self, element: u32) {
        let b = (element - 1) as usize;
        self.words[b / 64] &= !(1 << (b % 64));
    }

    #[inline]
    pub fn is_disjoint(&self, other: &SubsetCode) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &SubsetCode) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersection(&self, other: &SubsetCode) -> SubsetCode {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        SubsetCode { words }
    }

    #[inline]
    pub fn union(&self, other: &SubsetCode) -> SubsetCode {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        SubsetCode { words }
    }

    #[inline]
    pub fn difference(&self, other: &SubsetCode) -> SubsetCode {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        SubsetCode { words }
    }

    /// Complement inside `[n]`.
    pub fn complement(&self, n: u32) -> SubsetCode {
        SubsetCode::prefix(n).difference(self)
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b + 1)
            })
        })
    }

    pub fn max_element(&self) -> Option<u32> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i as u32 * 64 + 64 - w.leading_zeros())
    }

    pub fn min_element(&self) -> Option<u32> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i as u32 * 64 + w.trailing_zeros() + 1)
    }

    /// Apply a relabelling of the ground set; `map[e - 1]` is the new label of `e`.
    pub fn relabel(&self, map: &[u32]) -> SubsetCode {
        let mut out = SubsetCode::EMPTY;
        for e in self.iter() {
            out.insert(map[(e - 1) as usize]);
        }
        out
    }
}

impl Ord for SubsetCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for SubsetCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for SubsetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All `k`-subsets of `[n]` in colex order.
#[derive(Clone, Debug)]
pub struct ColexCombinations {
    n: u32,
    idx: Vec<u32>,
    done: bool,
}

impl ColexCombinations {
    pub fn new(n: u32, k: u32) -> Self {
        ColexCombinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for ColexCombinations {
    type Item = SubsetCode;

    fn next(&mut self) -> Option<SubsetCode> {
        if self.done {
            return None;
        }
        let mut code = SubsetCode::EMPTY;
        for &i in &self.idx {
            code.insert(i + 1);
        }
        // colex successor: bump the lowest index that has room, reset those below it
        let k = self.idx.len();
        let mut j = 0;
        loop {
            if j == k {
                self.done = true;
                break;
            }
            let limit = if j + 1 < k { self.idx[j + 1] } else { self.n };
            if self.idx[j] + 1 < limit {
                self.idx[j] += 1;
                for (t, slot) in self.idx[..j].iter_mut().enumerate() {
                    *slot = t as u32;
                }
                break;
            }
            j += 1;
        }
        Some(code)
    }
}
