//! Subsets of the ground set `[n] = {1, ..., n}` packed into one machine word.
//!
//! Element `i` is stored at bit `i - 1`, so the unsigned value of the word
//! orders subsets exactly like the 1-based bit vector does.

use std::fmt;

use crate::error::{Error, Result};

pub const MIN_GROUND: u32 = 3;
pub const MAX_GROUND: u32 = 63;

/// Mask with the low `n` bits set.
#[inline]
pub const fn full_mask(n: u32) -> u64 {
    (1u64 << n) - 1
}

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if (MIN_GROUND..=MAX_GROUND).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSize(n))
    }
}

/// One subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetWord {
    bits: u64,
    ground_n: u32,
}

impl SubsetWord {
    pub fn from_elements(elements: &[i64], n: u32) -> Result<Self> {
        check_ground(n)?;
        let mut bits = 0u64;
        for &e in elements {
            if e < 1 || e > n as i64 {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(Error::DuplicateElement(e as u32));
            }
            bits |= bit;
        }
        Ok(SubsetWord { bits, ground_n: n })
    }

    pub fn from_bits(bits: u64, n: u32) -> Result<Self> {
        check_ground(n)?;
        if bits & !full_mask(n) != 0 {
            let element = 64 - bits.leading_zeros() as i64;
            return Err(Error::ElementOutOfRange { element, n });
        }
        Ok(SubsetWord { bits, ground_n: n })
    }

    /// Caller guarantees `3 <= n <= 63` and no bit at or above `n`.
    #[inline]
    pub(crate) const fn from_bits_unchecked(bits: u64, n: u32) -> Self {
        SubsetWord { bits, ground_n: n }
    }

    pub fn empty(n: u32) -> Result<Self> {
        Self::from_bits(0, n)
    }

    pub fn full(n: u32) -> Result<Self> {
        check_ground(n)?;
        Ok(SubsetWord {
            bits: full_mask(n),
            ground_n: n,
        })
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub const fn ground_n(self) -> u32 {
        self.ground_n
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, element: u32) -> bool {
        element >= 1 && element <= self.ground_n && self.bits & (1u64 << (element - 1)) != 0
    }

    #[inline]
    pub fn intersects(self, other: SubsetWord) -> bool {
        self.bits & other.bits != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetWord) -> bool {
        self.bits & !other.bits == 0
    }

    /// `[n] \ A`.
    #[inline]
    pub fn complement(self) -> SubsetWord {
        SubsetWord {
            bits: !self.bits & full_mask(self.ground_n),
            ground_n: self.ground_n,
        }
    }

    /// `A ∪ {x}`; `x` must lie in `1..=n`.
    #[inline]
    pub fn with(self, element: u32) -> SubsetWord {
        debug_assert!(element >= 1 && element <= self.ground_n);
        SubsetWord {
            bits: self.bits | (1u64 << (element - 1)),
            ground_n: self.ground_n,
        }
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let tz = rest.trailing_zeros();
                rest &= rest - 1;
                Some(tz + 1)
            }
        })
    }

    /// Relabel through `perm`, where `perm[i - 1]` is the image of element `i`.
    pub fn relabel(self, perm: &[u32]) -> SubsetWord {
        debug_assert_eq!(perm.len(), self.ground_n as usize);
        let bits = self
            .elements()
            .fold(0u64, |acc, e| acc | (1u64 << (perm[(e - 1) as usize] - 1)));
        SubsetWord {
            bits,
            ground_n: self.ground_n,
        }
    }
}

impl fmt::Display for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, e) in self.elements().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.ground_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elements: &[i64], n: u32) -> SubsetWord {
        SubsetWord::from_elements(elements, n).unwrap()
    }

    #[test]
    fn from_elements_seed_l3() {
        let a = set(&[1, 2, 4], 7);
        assert_eq!(a.bits(), 0b1011);
        assert_eq!(a.elements().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(a.to_string(), "{1,2,4}");
    }

    #[test]
    fn from_elements_empty_and_full() {
        let e = set(&[], 7);
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "{}");
        let f = set(&[1, 2, 3, 4, 5, 6, 7], 7);
        assert_eq!(f.len(), 7);
        assert_eq!(f, SubsetWord::full(7).unwrap());
    }

    #[test]
    fn from_elements_errors() {
        assert_eq!(
            SubsetWord::from_elements(&[0], 7),
            Err(Error::ElementOutOfRange { element: 0, n: 7 })
        );
        assert_eq!(
            SubsetWord::from_elements(&[8], 7),
            Err(Error::ElementOutOfRange { element: 8, n: 7 })
        );
        assert_eq!(
            SubsetWord::from_elements(&[2, 2], 7),
            Err(Error::DuplicateElement(2))
        );
        assert_eq!(SubsetWord::from_elements(&[1], 2), Err(Error::GroundSize(2)));
        assert_eq!(SubsetWord::from_elements(&[1], 64), Err(Error::GroundSize(64)));
        assert!(SubsetWord::from_bits(1 << 7, 7).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(set(&[1, 2, 4], 7).complement(), set(&[3, 5, 6, 7], 7));
        assert_eq!(set(&[], 7).complement(), SubsetWord::full(7).unwrap());
        for k in 1..=31i64 {
            let n = (2 * k + 1) as u32;
            let low: Vec<i64> = (1..=k).collect();
            let high: Vec<i64> = (k + 1..=2 * k + 1).collect();
            let c = set(&low, n).complement();
            assert_eq!(c, set(&high, n));
            assert_eq!(c.len() as i64, k + 1);
        }
    }

    #[test]
    fn max_ground_complement() {
        let a = set(&[63], 63);
        assert_eq!(a.complement().len(), 62);
        assert_eq!(a.complement().complement(), a);
    }
}
