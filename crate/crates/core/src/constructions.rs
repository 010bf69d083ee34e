//! Circular-shift orbits, the seed sets `L_k`, and the families `F_k`, `Q_k`, `P_k`.
//!
//! `P_k` and the projective family `R_k` are both instances of one operation:
//! take a maximal intersecting base (normally `Q_k`) and, for every set `S` in a
//! chosen small side, replace `[n] \ S` by `S`. That is [`apply_swap`].

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result, SwapPlanError};
use crate::family::{bytes_for_members, Family};
use crate::properties::{degree_profile, is_intersecting, Intersection, Regularity};
use crate::subset::{full_mask, SubsetWord, MAX_GROUND};

/// `i -> i + 1`, with `n -> 1`.
pub fn circular_shift(set: SubsetWord) -> SubsetWord {
    let n = set.ground_n();
    let bits = set.bits();
    let rotated = ((bits << 1) | (bits >> (n - 1))) & full_mask(n);
    SubsetWord::from_bits_unchecked(rotated, n)
}

/// All distinct iterates of the circular shift applied to a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftOrbit {
    pub seed: SubsetWord,
    pub orbit: Family,
}

impl ShiftOrbit {
    pub fn ground_n(&self) -> u32 {
        self.seed.ground_n()
    }
}

pub fn shift_orbit(seed: SubsetWord) -> ShiftOrbit {
    let n = seed.ground_n();
    let mut words = Vec::with_capacity(n as usize);
    let mut current = seed;
    for _ in 0..n {
        words.push(current.bits());
        current = circular_shift(current);
    }
    debug_assert_eq!(current, seed);
    ShiftOrbit {
        seed,
        orbit: Family::from_words_unsorted(n, words),
    }
}

fn ground_for_k(k: u32, min_k: u32) -> Result<u32> {
    if k < min_k {
        return Err(Error::param("k", k as i64, format!("must be at least {min_k}")));
    }
    let n = 2 * k as u64 + 1;
    if n > MAX_GROUND as u64 {
        return Err(Error::param("k", k as i64, "2k+1 must not exceed 63"));
    }
    Ok(n as u32)
}

/// `L_3 = {1,2,4}`, and `L_k = {1,2,4} ∪ {7,9,...,2k-1}` for `k >= 4`, over `[2k+1]`.
pub fn seed_lk(k: u32) -> Result<SubsetWord> {
    let n = ground_for_k(k, 3)?;
    let mut elements: Vec<i64> = vec![1, 2, 4];
    elements.extend((7..=2 * k as i64 - 1).step_by(2));
    SubsetWord::from_elements(&elements, n)
}

fn invariant(construction: String, detail: String) -> Error {
    Error::Invariant {
        construction,
        detail,
    }
}

/// The shift orbit of `L_k`, checked to be `2k+1` sets of size `k` that pairwise
/// meet and cover every element exactly `k` times.
pub fn build_fk(k: u32) -> Result<Family> {
    let seed = seed_lk(k)?;
    let n = seed.ground_n();
    let name = || format!("F_{k}");
    if seed.len() != k {
        return Err(invariant(name(), format!("seed {seed} has size {}", seed.len())));
    }
    let family = shift_orbit(seed).orbit;
    if family.len() != n as usize {
        return Err(invariant(
            name(),
            format!("orbit has {} members, expected {n}", family.len()),
        ));
    }
    if let Intersection::Disjoint { first, second } = is_intersecting(&family) {
        return Err(invariant(name(), format!("members {first} and {second} are disjoint")));
    }
    match degree_profile(&family).regularity() {
        Regularity::Regular { degree } if degree == k as u64 => Ok(family),
        Regularity::Regular { degree } => Err(invariant(
            name(),
            format!("common degree {degree}, expected {k}"),
        )),
        Regularity::Irregular {
            element,
            degree,
            other_element,
            other_degree,
        } => Err(invariant(
            name(),
            format!("degree of {element} is {degree} but degree of {other_element} is {other_degree}"),
        )),
    }
}

/// Every subset of `[2k+1]` with at least `k+1` elements; `2^{2k}` members.
pub fn build_qk(k: u32, budget: &Budget) -> Result<Family> {
    let n = ground_for_k(k, 1)?;
    budget.check(|| format!("Q_{k}"), bytes_for_members(1u128 << (2 * k)))?;
    let words: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .filter(|w| w.count_ones() > k)
        .collect();
    debug_assert_eq!(words.len() as u128, 1u128 << (2 * k));
    Ok(Family::from_sorted_words(n, words))
}

/// `F_k ∪ (Q_k \ complement(F_k))`.
pub fn build_pk(k: u32, budget: &Budget) -> Result<Family> {
    ground_for_k(k, 3)?;
    let fk = build_fk(k)?;
    let qk = build_qk(k, budget)?;
    let complements = fk.complement_family();
    if let Some(missing) = complements.members().find(|c| !qk.contains(*c)) {
        return Err(invariant(
            format!("P_{k}"),
            format!("complement {missing} of a member of F_{k} is not in Q_{k}"),
        ));
    }
    let plan = SwapPlan::new(qk, fk)?;
    Ok(apply_swap(&plan))
}

/// A set of complement-pair swaps against a base family.
///
/// Invariants: small-side members are distinct (guaranteed by [`Family`]); every
/// complement of a small set is in the base; no small set is in the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapPlan {
    base: Family,
    small_side: Family,
}

impl SwapPlan {
    pub fn new(base: Family, small_side: Family) -> Result<Self> {
        if base.ground_n() != small_side.ground_n() {
            return Err(Error::SwapPlan(SwapPlanError::GroundMismatch {
                base: base.ground_n(),
                small: small_side.ground_n(),
            }));
        }
        for s in small_side.members() {
            if base.contains(s) {
                return Err(Error::SwapPlan(SwapPlanError::AlreadyInBase(s)));
            }
            if !base.contains(s.complement()) {
                return Err(Error::SwapPlan(SwapPlanError::ComplementMissing(s)));
            }
        }
        Ok(SwapPlan { base, small_side })
    }

    /// Same checks as [`SwapPlan::new`], for a small side given as a list that may repeat.
    pub fn from_sets(base: Family, small: &[SubsetWord]) -> Result<Self> {
        let mut sorted = small.to_vec();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::SwapPlan(SwapPlanError::DuplicateSmallSet(w[0])));
        }
        let n = base.ground_n();
        let small_side = Family::new(n, sorted).map_err(|e| match e {
            Error::GroundMismatch { right, .. } => Error::SwapPlan(SwapPlanError::GroundMismatch {
                base: n,
                small: right,
            }),
            other => other,
        })?;
        Self::new(base, small_side)
    }

    pub fn base(&self) -> &Family {
        &self.base
    }

    pub fn small_side(&self) -> &Family {
        &self.small_side
    }

    /// Intersecting check on the swapped family without materializing it: the
    /// small side must be intersecting, and no kept base member may miss a small set.
    pub fn verify_intersecting(&self) -> Intersection {
        let small = is_intersecting(&self.small_side);
        if !small.holds() {
            return small;
        }
        let removed = self.small_side.complement_family();
        let kept = self
            .base
            .difference(&removed)
            .expect("plan families share a ground size");
        if let Some(kept_first) = kept.get(0) {
            if kept_first.is_empty() {
                return Intersection::Disjoint {
                    first: kept_first,
                    second: kept.get(1).or(self.small_side.get(0)).unwrap_or(kept_first),
                };
            }
        }
        let small_words = self.small_side.words();
        let n = self.base.ground_n();
        let hit = kept.words().par_iter().find_map_first(|&b| {
            small_words
                .iter()
                .find(|&&s| s & b == 0)
                .map(|&s| (b, s))
        });
        match hit {
            Some((b, s)) => {
                let (b, s) = (
                    SubsetWord::from_bits_unchecked(b, n),
                    SubsetWord::from_bits_unchecked(s, n),
                );
                let (first, second) = if b < s { (b, s) } else { (s, b) };
                Intersection::Disjoint { first, second }
            }
            None if kept.is_empty() && self.small_side.is_empty() => Intersection::Vacuous,
            None => Intersection::Intersecting,
        }
    }
}

/// `(base \ complements(small_side)) ∪ small_side`; same size as the base.
pub fn apply_swap(plan: &SwapPlan) -> Family {
    let removed = plan.small_side.complement_family();
    let kept = plan
        .base
        .difference(&removed)
        .expect("plan families share a ground size");
    let out = kept
        .union(&plan.small_side)
        .expect("plan families share a ground size");
    debug_assert_eq!(out.len(), plan.base.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::{diversity, is_regular};

    fn set(elements: &[i64], n: u32) -> SubsetWord {
        SubsetWord::from_elements(elements, n).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(circular_shift(set(&[1, 2, 4], 7)), set(&[2, 3, 5], 7));
        assert_eq!(circular_shift(set(&[7], 7)), set(&[1], 7));
        let a = set(&[1, 3, 4, 9, 11], 13);
        let mut x = a;
        for _ in 0..13 {
            x = circular_shift(x);
        }
        assert_eq!(x, a);
    }

    #[test]
    fn fano_orbit() {
        let orbit = shift_orbit(set(&[1, 2, 4], 7)).orbit;
        let expected: Vec<SubsetWord> = [
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 7],
            [5, 6, 1],
            [6, 7, 2],
            [7, 1, 3],
        ]
        .iter()
        .map(|s| {
            let mut v = s.to_vec();
            v.sort();
            set(&v, 7)
        })
        .collect();
        assert_eq!(orbit, Family::new(7, expected).unwrap());
        assert_eq!(shift_orbit(set(&[1], 3)).orbit.len(), 3);
        let l4 = shift_orbit(seed_lk(4).unwrap()).orbit;
        assert_eq!(l4.len(), 9);
        assert!(l4.members().all(|m| m.len() == 4));
    }

    #[test]
    fn orbit_of_periodic_seed_is_short() {
        let periodic = set(&[1, 4, 7], 9);
        let orbit = shift_orbit(periodic).orbit;
        assert_eq!(orbit.len(), 3);
        assert_eq!(9 % orbit.len(), 0);
    }

    #[test]
    fn seeds() {
        assert_eq!(seed_lk(3).unwrap(), set(&[1, 2, 4], 7));
        assert_eq!(seed_lk(4).unwrap(), set(&[1, 2, 4, 7], 9));
        let l6 = seed_lk(6).unwrap();
        assert_eq!(l6, set(&[1, 2, 4, 7, 9, 11], 13));
        assert_eq!(l6.len(), 6);
        assert!(matches!(seed_lk(2), Err(Error::InvalidParameter { name: "k", .. })));
        assert!(seed_lk(32).is_err());
    }

    #[test]
    fn fk_examples() {
        for (k, n) in [(3u32, 7usize), (4, 9), (12, 25)] {
            let f = build_fk(k).unwrap();
            assert_eq!(f.len(), n);
            assert!(is_intersecting(&f).holds());
            assert_eq!(is_regular(&f).unwrap(), Regularity::Regular { degree: k as u64 });
        }
    }

    #[test]
    fn qk_examples() {
        let budget = Budget::default();
        let q1 = build_qk(1, &budget).unwrap();
        assert_eq!(
            q1,
            Family::new(3, [set(&[1, 2], 3), set(&[1, 3], 3), set(&[2, 3], 3), set(&[1, 2, 3], 3)])
                .unwrap()
        );
        let q3 = build_qk(3, &budget).unwrap();
        assert_eq!(q3.len(), 64);
        assert_eq!(diversity(&q3).unwrap().diversity, 22);
        assert!(matches!(
            build_qk(10, &Budget::new(1 << 20)),
            Err(Error::Budget { .. })
        ));
        assert!(matches!(
            build_qk(15, &Budget::default()),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn pk_examples() {
        let budget = Budget::default();
        let p3 = build_pk(3, &budget).unwrap();
        assert_eq!(p3.len(), 64);
        assert_eq!(diversity(&p3).unwrap().diversity, 23);
        assert_eq!(is_regular(&p3).unwrap(), Regularity::Regular { degree: 41 });
        let p5 = build_pk(5, &budget).unwrap();
        assert_eq!(p5.len(), 1024);
        assert!(is_intersecting(&p5).holds());
        assert!(is_regular(&p5).unwrap().degree().is_some());
    }

    #[test]
    fn q3_minus_fano_complements() {
        let budget = Budget::default();
        let q3 = build_qk(3, &budget).unwrap();
        let f3 = build_fk(3).unwrap();
        assert_eq!(q3.difference(&f3.complement_family()).unwrap().len(), 57);
    }

    #[test]
    fn swap_examples() {
        let budget = Budget::default();
        let q3 = build_qk(3, &budget).unwrap();
        let f3 = build_fk(3).unwrap();
        let p3 = apply_swap(&SwapPlan::new(q3.clone(), f3.clone()).unwrap());
        assert_eq!(p3, build_pk(3, &budget).unwrap());
        let empty = Family::empty(7).unwrap();
        assert_eq!(apply_swap(&SwapPlan::new(q3.clone(), empty).unwrap()), q3);
    }

    #[test]
    fn swap_plan_errors() {
        let q3 = build_qk(3, &Budget::default()).unwrap();
        let line = set(&[1, 2, 4], 7);
        assert_eq!(
            SwapPlan::from_sets(q3.clone(), &[line, line]),
            Err(Error::SwapPlan(SwapPlanError::DuplicateSmallSet(line)))
        );
        let big = set(&[1, 2, 3, 4], 7);
        assert_eq!(
            SwapPlan::from_sets(q3.clone(), &[big]),
            Err(Error::SwapPlan(SwapPlanError::AlreadyInBase(big)))
        );
        let mut without = q3.words().to_vec();
        without.retain(|&w| w != line.complement().bits());
        let base = Family::from_words(7, without).unwrap();
        assert_eq!(
            SwapPlan::from_sets(base, &[line]),
            Err(Error::SwapPlan(SwapPlanError::ComplementMissing(line)))
        );
        assert!(matches!(
            SwapPlan::from_sets(q3, &[set(&[1], 9)]),
            Err(Error::SwapPlan(SwapPlanError::GroundMismatch { .. }))
        ));
    }

    #[test]
    fn swap_verification_matches_full_scan() {
        let q3 = build_qk(3, &Budget::default()).unwrap();
        // A single extra 3-set that misses a line is rejected.
        let line = set(&[1, 2, 4], 7);
        let bad = set(&[3, 5, 6], 7);
        let plan = SwapPlan::from_sets(q3.clone(), &[line, bad]).unwrap();
        let quick = plan.verify_intersecting();
        assert!(!quick.holds());
        assert!(!is_intersecting(&apply_swap(&plan)).holds());
        let plan = SwapPlan::new(q3, build_fk(3).unwrap()).unwrap();
        assert!(plan.verify_intersecting().holds());
    }
}
