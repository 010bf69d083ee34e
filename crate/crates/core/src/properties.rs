//! Exact family properties: intersecting, degrees, regularity, diversity, upsets.
//!
//! Every scan is deterministic under any rayon pool size: sums are integer and
//! witnesses are always the first hit in canonical member order.
//!
//! Note on notation: the regular common degree is often written `σ(F)`, the same
//! letter used for the circular shift. Here the shift is
//! [`circular_shift`](crate::constructions::circular_shift) and the common
//! degree is the value carried by [`Regularity::Regular`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::subset::{full_mask, SubsetWord};

/// Largest ground size for which the subset-closure route is used.
pub const CLOSURE_MAX_GROUND: u32 = 26;

const CHUNK: usize = 1 << 14;

/// Outcome of an intersecting check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intersection {
    /// Every pair of members meets.
    Intersecting,
    /// The family is empty; true by convention.
    Vacuous,
    /// The first disjoint pair in canonical scan order. An empty member is
    /// reported paired with the next member (or itself if it is alone).
    Disjoint { first: SubsetWord, second: SubsetWord },
}

impl Intersection {
    pub fn holds(&self) -> bool {
        !matches!(self, Intersection::Disjoint { .. })
    }

    pub fn witness(&self) -> Option<(SubsetWord, SubsetWord)> {
        match *self {
            Intersection::Disjoint { first, second } => Some((first, second)),
            _ => None,
        }
    }
}

/// Which algorithm [`is_intersecting`] should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectMethod {
    /// Pick by cost.
    Auto,
    /// Every unordered pair, `m(m-1)/2` word ANDs.
    Pairwise,
    /// Down-closure over all `2^n` subsets, `n 2^n` steps.
    Closure,
}

pub fn is_intersecting(family: &Family) -> Intersection {
    is_intersecting_with(family, IntersectMethod::Auto)
}

pub fn is_intersecting_with(family: &Family, method: IntersectMethod) -> Intersection {
    if let Some(early) = degenerate_intersection(family) {
        return early;
    }
    let method = match method {
        IntersectMethod::Auto => {
            let m = family.len() as u128;
            let n = family.ground_n();
            let pairs = m * (m - 1) / 2;
            if n <= CLOSURE_MAX_GROUND && pairs > (n as u128) << n {
                IntersectMethod::Closure
            } else {
                IntersectMethod::Pairwise
            }
        }
        other => other,
    };
    match method {
        IntersectMethod::Closure if family.ground_n() <= CLOSURE_MAX_GROUND => closure_scan(family),
        _ => pairwise_scan(family),
    }
}

fn degenerate_intersection(family: &Family) -> Option<Intersection> {
    let Some(first) = family.get(0) else {
        return Some(Intersection::Vacuous);
    };
    if first.is_empty() {
        let second = family.get(1).unwrap_or(first);
        return Some(Intersection::Disjoint { first, second });
    }
    if family.len() == 1 {
        return Some(Intersection::Intersecting);
    }
    None
}

fn disjoint_pair(family: &Family, i: usize, j: usize) -> Intersection {
    Intersection::Disjoint {
        first: family.get(i).expect("index in range"),
        second: family.get(j).expect("index in range"),
    }
}

fn pairwise_scan(family: &Family) -> Intersection {
    let words = family.words();
    let hit = (0..words.len()).into_par_iter().find_map_first(|i| {
        let a = words[i];
        words[i + 1..]
            .iter()
            .position(|&b| a & b == 0)
            .map(|off| (i, i + 1 + off))
    });
    match hit {
        Some((i, j)) => disjoint_pair(family, i, j),
        None => Intersection::Intersecting,
    }
}

/// For each member `A` looks up the smallest-index member contained in `[n] \ A`.
///
/// The first `i` owning a disjoint partner has all its partners above `i`, so
/// the result is the lexicographically first disjoint pair, as in the pairwise
/// scan.
fn closure_scan(family: &Family) -> Intersection {
    let n = family.ground_n();
    let words = family.words();
    let mut down = vec![u32::MAX; 1usize << n];
    for (idx, &w) in words.iter().enumerate() {
        down[w as usize] = idx as u32;
    }
    subset_min_closure(&mut down, n);
    let mask = full_mask(n);
    let hit = words.par_iter().enumerate().find_map_first(|(i, &w)| {
        let j = down[(!w & mask) as usize];
        (j != u32::MAX).then_some((i, j as usize))
    });
    match hit {
        Some((i, j)) => disjoint_pair(family, i, j),
        None => Intersection::Intersecting,
    }
}

/// In place: `table[s] = min { table[t] : t ⊆ s }`.
pub(crate) fn subset_min_closure(table: &mut [u32], n: u32) {
    debug_assert_eq!(table.len(), 1usize << n);
    for bit in 0..n as usize {
        let half = 1usize << bit;
        let block = (half << 1).max(1 << 16).min(table.len());
        table.par_chunks_mut(block).for_each(|chunk| {
            for pair in chunk.chunks_mut(half << 1) {
                let (lo, hi) = pair.split_at_mut(half);
                for (h, &l) in hi.iter_mut().zip(lo.iter()) {
                    if l < *h {
                        *h = l;
                    }
                }
            }
        });
    }
}

/// Per-element membership counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    ground_n: u32,
    counts: Vec<u64>,
    total: u64,
}

impl DegreeProfile {
    pub(crate) fn from_counts(ground_n: u32, counts: Vec<u64>, total: u64) -> Self {
        debug_assert_eq!(counts.len(), ground_n as usize);
        DegreeProfile {
            ground_n,
            counts,
            total,
        }
    }

    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    /// `δ(x)` for `x` in `1..=n`.
    pub fn degree(&self, element: u32) -> u64 {
        self.counts[(element - 1) as usize]
    }

    /// Counts indexed from element 1.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `|F|`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest element attaining the maximum degree, with that degree.
    pub fn max(&self) -> (u32, u64) {
        let mut best = (1u32, self.counts[0]);
        for (idx, &c) in self.counts.iter().enumerate().skip(1) {
            if c > best.1 {
                best = (idx as u32 + 1, c);
            }
        }
        best
    }

    pub fn regularity(&self) -> Regularity {
        let first = self.counts[0];
        match self.counts.iter().position(|&c| c != first) {
            None => Regularity::Regular { degree: first },
            Some(idx) => Regularity::Irregular {
                element: 1,
                degree: first,
                other_element: idx as u32 + 1,
                other_degree: self.counts[idx],
            },
        }
    }
}

pub fn degree_profile(family: &Family) -> DegreeProfile {
    let n = family.ground_n() as usize;
    let counts = family
        .words()
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut local = [0u64; 64];
            for &w in chunk {
                let mut rest = w;
                while rest != 0 {
                    local[rest.trailing_zeros() as usize] += 1;
                    rest &= rest - 1;
                }
            }
            local
        })
        .reduce(
            || [0u64; 64],
            |mut a, b| {
                a.iter_mut().zip(b.iter()).for_each(|(x, y)| *x += y);
                a
            },
        );
    DegreeProfile::from_counts(family.ground_n(), counts[..n].to_vec(), family.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiversityResult {
    /// `|F| - max_x δ(x)`.
    pub diversity: u64,
    /// Smallest element of maximum degree.
    pub argmax_element: u32,
    pub max_degree: u64,
}

impl DiversityResult {
    pub fn from_profile(profile: &DegreeProfile) -> Result<Self> {
        if profile.total() == 0 {
            return Err(Error::EmptyFamily);
        }
        let (argmax_element, max_degree) = profile.max();
        Ok(DiversityResult {
            diversity: profile.total() - max_degree,
            argmax_element,
            max_degree,
        })
    }
}

pub fn diversity(family: &Family) -> Result<DiversityResult> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    DiversityResult::from_profile(&degree_profile(family))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    /// All elements share this degree.
    Regular { degree: u64 },
    /// Element 1 and the first element whose degree differs from it.
    Irregular {
        element: u32,
        degree: u64,
        other_element: u32,
        other_degree: u64,
    },
}

impl Regularity {
    pub fn degree(&self) -> Option<u64> {
        match *self {
            Regularity::Regular { degree } => Some(degree),
            Regularity::Irregular { .. } => None,
        }
    }
}

pub fn is_regular(family: &Family) -> Result<Regularity> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(degree_profile(family).regularity())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Upset {
    Upset,
    /// `member ∪ {element}` is missing; first member in canonical order, smallest element.
    Violation { member: SubsetWord, element: u32 },
}

impl Upset {
    pub fn holds(&self) -> bool {
        matches!(self, Upset::Upset)
    }
}

pub fn is_upset(family: &Family) -> Upset {
    let n = family.ground_n();
    let mask = full_mask(n);
    let hit = family.words().par_iter().find_map_first(|&w| {
        let mut missing = !w & mask;
        while missing != 0 {
            let bit = missing.trailing_zeros();
            missing &= missing - 1;
            if !family.contains_word(w | (1u64 << bit)) {
                return Some((w, bit + 1));
            }
        }
        None
    });
    match hit {
        Some((w, element)) => Upset::Violation {
            member: SubsetWord::from_bits_unchecked(w, n),
            element,
        },
        None => Upset::Upset,
    }
}

/// True when the family holds exactly one set from every complementary pair.
pub fn is_pair_complete(family: &Family) -> bool {
    let n = family.ground_n();
    if family.len() as u64 != 1u64 << (n - 1) {
        return false;
    }
    let mask = full_mask(n);
    family
        .words()
        .par_iter()
        .all(|&w| !family.contains_word(!w & mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, sets: &[&[i64]]) -> Family {
        Family::new(
            n,
            sets.iter().map(|s| SubsetWord::from_elements(s, n).unwrap()),
        )
        .unwrap()
    }

    fn all_with_min_size(n: u32, min: u32) -> Family {
        let words = (0..1u64 << n).filter(|w| w.count_ones() >= min).collect();
        Family::from_words(n, words).unwrap()
    }

    fn fano() -> Family {
        fam(
            7,
            &[
                &[1, 2, 4],
                &[2, 3, 5],
                &[3, 4, 6],
                &[4, 5, 7],
                &[5, 6, 1],
                &[6, 7, 2],
                &[7, 1, 3],
            ],
        )
    }

    #[test]
    fn intersecting_examples() {
        assert_eq!(is_intersecting(&fano()), Intersection::Intersecting);
        let q3 = all_with_min_size(7, 4);
        assert_eq!(q3.len(), 64);
        for method in [IntersectMethod::Pairwise, IntersectMethod::Closure] {
            assert!(is_intersecting_with(&q3, method).holds());
        }
        let two = fam(3, &[&[1], &[2]]);
        let w = is_intersecting(&two).witness().unwrap();
        assert_eq!((w.0.to_string(), w.1.to_string()), ("{1}".into(), "{2}".into()));
        assert_eq!(is_intersecting(&Family::empty(5).unwrap()), Intersection::Vacuous);
    }

    #[test]
    fn empty_member_is_witness() {
        let f = fam(5, &[&[], &[1, 2]]);
        let (a, b) = is_intersecting(&f).witness().unwrap();
        assert!(a.is_empty());
        assert_eq!(b.to_string(), "{1,2}");
        let lone = fam(5, &[&[]]);
        let (a, b) = is_intersecting(&lone).witness().unwrap();
        assert!(a.is_empty() && b.is_empty());
    }

    #[test]
    fn routes_agree_on_witness() {
        let f = fam(6, &[&[1, 2], &[2, 3], &[4, 5], &[1, 6], &[3, 6], &[5]]);
        let a = is_intersecting_with(&f, IntersectMethod::Pairwise);
        let b = is_intersecting_with(&f, IntersectMethod::Closure);
        assert_eq!(a, b);
        assert!(!a.holds());
    }

    #[test]
    fn degree_examples() {
        let p = degree_profile(&fano());
        assert!(p.counts().iter().all(|&c| c == 3));
        let e = degree_profile(&Family::empty(7).unwrap());
        assert!(e.counts().iter().all(|&c| c == 0));
        assert_eq!(e.total(), 0);
        let q3 = degree_profile(&all_with_min_size(7, 4));
        assert!(q3.counts().iter().all(|&c| c == 42));
    }

    #[test]
    fn diversity_examples() {
        let q3 = all_with_min_size(7, 4);
        let d = diversity(&q3).unwrap();
        assert_eq!(d.diversity, 22);
        assert_eq!(d.argmax_element, 1);
        let star = Family::from_words(7, (0..128u64).filter(|w| w & 1 == 1).collect()).unwrap();
        assert_eq!(diversity(&star).unwrap().diversity, 0);
        assert_eq!(diversity(&Family::empty(7).unwrap()), Err(Error::EmptyFamily));
    }

    #[test]
    fn regular_examples() {
        assert_eq!(is_regular(&fano()).unwrap(), Regularity::Regular { degree: 3 });
        let single = fam(3, &[&[1, 2]]);
        assert_eq!(
            is_regular(&single).unwrap(),
            Regularity::Irregular {
                element: 1,
                degree: 1,
                other_element: 3,
                other_degree: 0
            }
        );
        assert_eq!(is_regular(&Family::empty(3).unwrap()), Err(Error::EmptyFamily));
    }

    #[test]
    fn upset_examples() {
        assert!(is_upset(&all_with_min_size(7, 4)).holds());
        match is_upset(&fano()) {
            Upset::Violation { member, element } => {
                assert_eq!(member.to_string(), "{1,2,4}");
                assert_eq!(element, 3);
            }
            Upset::Upset => panic!("lines are not an upset"),
        }
        assert!(is_upset(&Family::empty(4).unwrap()).holds());
    }

    #[test]
    fn pair_completeness() {
        assert!(is_pair_complete(&all_with_min_size(7, 4)));
        assert!(!is_pair_complete(&fano()));
    }
}
