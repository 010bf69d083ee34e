//! Duplicate-free families of subsets over a shared ground set.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{check_ground, full_mask, SubsetWord};

/// A family of subsets of `[n]`, kept in canonical order (ascending word value).
///
/// Members are stored as raw words so that a family of `m` sets costs `8m` bytes.
/// The derived ordering compares ground size first, then the member lists
/// lexicographically; search uses it to break ties deterministically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    ground_n: u32,
    words: Vec<u64>,
}

/// Bytes needed to hold `members` sets.
pub const fn bytes_for_members(members: u128) -> u128 {
    members * std::mem::size_of::<u64>() as u128
}

impl Family {
    pub fn empty(n: u32) -> Result<Self> {
        check_ground(n)?;
        Ok(Family {
            ground_n: n,
            words: Vec::new(),
        })
    }

    /// Collects `members`, sorting and dropping duplicates.
    pub fn new(n: u32, members: impl IntoIterator<Item = SubsetWord>) -> Result<Self> {
        check_ground(n)?;
        let mut words = Vec::new();
        for m in members {
            if m.ground_n() != n {
                return Err(Error::GroundMismatch {
                    left: n,
                    right: m.ground_n(),
                });
            }
            words.push(m.bits());
        }
        Ok(Self::from_words_unsorted(n, words))
    }

    /// Builds from raw words, validating each against `n`.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        check_ground(n)?;
        for &w in &words {
            SubsetWord::from_bits(w, n)?;
        }
        Ok(Self::from_words_unsorted(n, words))
    }

    pub(crate) fn from_words_unsorted(n: u32, mut words: Vec<u64>) -> Self {
        words.sort_unstable();
        words.dedup();
        Family { ground_n: n, words }
    }

    /// Words must already be strictly ascending and fit in `n` bits.
    pub(crate) fn from_sorted_words(n: u32, words: Vec<u64>) -> Self {
        debug_assert!(words.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(words.iter().all(|&w| w & !full_mask(n) == 0));
        Family { ground_n: n, words }
    }

    #[inline]
    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Raw member words in canonical order.
    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, index: usize) -> Option<SubsetWord> {
        self.words
            .get(index)
            .map(|&w| SubsetWord::from_bits_unchecked(w, self.ground_n))
    }

    pub fn members(&self) -> impl ExactSizeIterator<Item = SubsetWord> + '_ {
        let n = self.ground_n;
        self.words
            .iter()
            .map(move |&w| SubsetWord::from_bits_unchecked(w, n))
    }

    pub fn contains(&self, set: SubsetWord) -> bool {
        set.ground_n() == self.ground_n && self.contains_word(set.bits())
    }

    #[inline]
    pub(crate) fn contains_word(&self, word: u64) -> bool {
        self.words.binary_search(&word).is_ok()
    }

    pub fn into_words(self) -> Vec<u64> {
        self.words
    }

    /// `{ [n] \ A : A ∈ F }`, re-sorted.
    pub fn complement_family(&self) -> Family {
        let mask = full_mask(self.ground_n);
        let mut words: Vec<u64> = self.words.iter().map(|&w| !w & mask).collect();
        words.reverse();
        Family::from_sorted_words(self.ground_n, words)
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.same_ground(other)?;
        let mut out = Vec::with_capacity(self.words.len() + other.words.len());
        let (mut i, mut j) = (0, 0);
        while i < self.words.len() && j < other.words.len() {
            match self.words[i].cmp(&other.words[j]) {
                Ordering::Less => {
                    out.push(self.words[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.words[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(self.words[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.words[i..]);
        out.extend_from_slice(&other.words[j..]);
        Ok(Family::from_sorted_words(self.ground_n, out))
    }

    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.same_ground(other)?;
        let mut out = Vec::with_capacity(self.words.len());
        let mut j = 0;
        for &w in &self.words {
            while j < other.words.len() && other.words[j] < w {
                j += 1;
            }
            if j < other.words.len() && other.words[j] == w {
                continue;
            }
            out.push(w);
        }
        Ok(Family::from_sorted_words(self.ground_n, out))
    }

    /// True when every member of `self` belongs to `other`.
    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.ground_n == other.ground_n && self.words.iter().all(|&w| other.contains_word(w))
    }

    /// Image under the relabeling `i -> perm[i - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Family> {
        let n = self.ground_n as usize;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::Precondition(format!(
                "permutation has length {}, expected {n}",
                perm.len()
            )));
        }
        for &p in perm {
            if p == 0 || p as usize > n || std::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::Precondition("not a permutation of [n]".into()));
            }
        }
        let words = self.members().map(|m| m.relabel(perm).bits()).collect();
        Ok(Family::from_words_unsorted(self.ground_n, words))
    }

    fn same_ground(&self, other: &Family) -> Result<()> {
        if self.ground_n == other.ground_n {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                left: self.ground_n,
                right: other.ground_n,
            })
        }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, ", self.ground_n)?;
        f.debug_list().entries(self.members()).finish()?;
        f.write_str(")")
    }
}
