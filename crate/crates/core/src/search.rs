//! Maximum-diversity search over maximal intersecting families.
//!
//! A maximal intersecting family over `[n]`, `n` odd, holds exactly one set of
//! every complementary pair `{A, [n] \ A}`: it cannot hold both (they are
//! disjoint), and if it held neither, `A` (or its complement) would meet every
//! member and could be added. Such a family is also an upset. Both searches
//! move only between families of this kind.
//!
//! Moves replace a member `[n] \ A` by `A`. For a maximal family `F` this keeps
//! `F` intersecting iff `[n] \ A` is a minimal member of `F`: a member disjoint
//! from `A` is a subset of `[n] \ A`, and because `F` is an upset it suffices to
//! test the one-smaller subsets. A block of such swaps applied at once is valid
//! iff each swap is valid on its own and the incoming sets pairwise meet.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::shift_orbit;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::properties::{diversity, is_intersecting, is_pair_complete, Intersection};
use crate::subset::{full_mask, SubsetWord};

pub const EXHAUSTIVE_MAX_GROUND: u32 = 5;
pub const HILLCLIMB_MIN_GROUND: u32 = 7;
pub const HILLCLIMB_MAX_GROUND: u32 = 25;
pub const DEFAULT_PATIENCE: u64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Exhaustive,
    Hillclimb,
}

impl SearchMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::Hillclimb => "hillclimb",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub ground_n: u32,
    pub best_diversity: u64,
    pub best_family: Family,
    /// Candidates (exhaustive) or proposals (hill-climb) examined.
    pub visited: u64,
    /// Intersecting candidates (exhaustive) or accepted moves (hill-climb).
    pub accepted: u64,
    pub method: SearchMethod,
    pub rng_seed: Option<u64>,
}

fn odd_ground(n: u32, lo: u32, hi: u32, hint: &str) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::param("n", n as i64, "must be odd"));
    }
    if n < lo || n > hi {
        return Err(Error::param("n", n as i64, format!("must lie in {lo}..={hi}{hint}")));
    }
    Ok(())
}

/// Tries every choice of one set per complementary pair and keeps the
/// intersecting choice of largest diversity (ties: smallest family).
pub fn exhaustive_max_diversity(n: u32) -> Result<SearchReport> {
    odd_ground(n, 3, EXHAUSTIVE_MAX_GROUND, "; larger n needs the hill-climber")?;
    let mask = full_mask(n);
    let pair_count = 1u32 << (n - 1);
    // Representative of pair p is the set p (never contains element n).
    let choices = 1u64 << pair_count;
    let evaluate = |choice: u64| -> Option<(u64, Family)> {
        let mut words: Vec<u64> = (0..pair_count as u64)
            .map(|p| if choice >> p & 1 == 1 { !p & mask } else { p })
            .collect();
        if words.contains(&0) {
            return None;
        }
        for (i, &a) in words.iter().enumerate() {
            if words[i + 1..].iter().any(|&b| a & b == 0) {
                return None;
            }
        }
        words.sort_unstable();
        let family = Family::from_sorted_words(n, words);
        let div = diversity(&family).ok()?.diversity;
        Some((div, family))
    };
    let (intersecting, best) = (0..choices)
        .into_par_iter()
        .filter_map(evaluate)
        .map(|found| (1u64, Some(found)))
        .reduce(
            || (0, None),
            |(ca, a), (cb, b)| {
                let best = match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => Some(better(a, b)),
                };
                (ca + cb, best)
            },
        );
    let (best_diversity, best_family) =
        best.ok_or_else(|| Error::Precondition("no intersecting choice exists".into()))?;
    debug_assert!(is_pair_complete(&best_family));
    Ok(SearchReport {
        ground_n: n,
        best_diversity,
        best_family,
        visited: choices,
        accepted: intersecting,
        method: SearchMethod::Exhaustive,
        rng_seed: None,
    })
}

fn better(a: (u64, Family), b: (u64, Family)) -> (u64, Family) {
    use std::cmp::Ordering::*;
    match a.0.cmp(&b.0) {
        Greater => a,
        Less => b,
        Equal if a.1 <= b.1 => a,
        Equal => b,
    }
}

/// Effect of swapping one or more small sets into the current family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSwapMove {
    pub small_set: SubsetWord,
    pub delta_diversity: i64,
}

/// A maximal family held as a membership bitmap plus its degree profile.
#[derive(Debug, Clone)]
pub struct SwapState {
    n: u32,
    bitmap: Vec<u64>,
    degrees: Vec<i64>,
    size: u64,
}

impl SwapState {
    pub fn new(family: &Family) -> Result<Self> {
        let n = family.ground_n();
        if n > HILLCLIMB_MAX_GROUND {
            return Err(Error::param(
                "n",
                n as i64,
                format!("swap state supports n <= {HILLCLIMB_MAX_GROUND}"),
            ));
        }
        let mut bitmap = vec![0u64; (1usize << n).div_ceil(64)];
        let mut degrees = vec![0i64; n as usize];
        for &w in family.words() {
            bitmap[(w >> 6) as usize] |= 1u64 << (w & 63);
            for e in SubsetWord::from_bits_unchecked(w, n).elements() {
                degrees[(e - 1) as usize] += 1;
            }
        }
        Ok(SwapState {
            n,
            bitmap,
            degrees,
            size: family.len() as u64,
        })
    }

    pub fn ground_n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn contains_word(&self, w: u64) -> bool {
        self.bitmap[(w >> 6) as usize] >> (w & 63) & 1 == 1
    }

    fn flip(&mut self, w: u64) {
        self.bitmap[(w >> 6) as usize] ^= 1u64 << (w & 63);
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn diversity(&self) -> u64 {
        self.size - *self.degrees.iter().max().expect("n >= 3") as u64
    }

    pub fn to_family(&self) -> Family {
        let mut words = Vec::with_capacity(self.size as usize);
        for (block, &bits) in self.bitmap.iter().enumerate() {
            let mut rest = bits;
            while rest != 0 {
                words.push(((block as u64) << 6) | rest.trailing_zeros() as u64);
                rest &= rest - 1;
            }
        }
        Family::from_sorted_words(self.n, words)
    }

    fn check_swap_pre(&self, a: SubsetWord) -> Result<()> {
        if a.ground_n() != self.n {
            return Err(Error::GroundMismatch {
                left: self.n,
                right: a.ground_n(),
            });
        }
        if self.contains_word(a.bits()) {
            return Err(Error::Precondition(format!("{a} is already a member")));
        }
        if !self.contains_word(a.complement().bits()) {
            return Err(Error::Precondition(format!(
                "complement of {a} is not a member"
            )));
        }
        Ok(())
    }

    /// Diversity change from replacing `[n] \ a` by `a`, computed from the
    /// degree profile alone. Does not check that the result stays intersecting.
    pub fn pair_swap_delta(&self, a: SubsetWord) -> Result<PairSwapMove> {
        self.check_swap_pre(a)?;
        Ok(PairSwapMove {
            small_set: a,
            delta_diversity: self.block_delta(&[a.bits()]),
        })
    }

    fn block_delta(&self, incoming: &[u64]) -> i64 {
        let mut shift = vec![0i64; self.n as usize];
        let mask = full_mask(self.n);
        for &w in incoming {
            for bit in 0..self.n as usize {
                if w >> bit & 1 == 1 {
                    shift[bit] += 1;
                } else if (!w & mask) >> bit & 1 == 1 {
                    shift[bit] -= 1;
                }
            }
        }
        let old_max = *self.degrees.iter().max().expect("n >= 3");
        let new_max = self
            .degrees
            .iter()
            .zip(&shift)
            .map(|(d, s)| d + s)
            .max()
            .expect("n >= 3");
        old_max - new_max
    }

    /// Whether `[n] \ a` is a minimal member, so that swapping in `a` keeps the
    /// family intersecting.
    pub fn swap_keeps_intersecting(&self, a: SubsetWord) -> bool {
        if a.is_empty() || self.contains_word(a.bits()) {
            return false;
        }
        let out = a.complement().bits();
        if !self.contains_word(out) {
            return false;
        }
        let mut rest = out;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            rest ^= low;
            if self.contains_word(out ^ low) {
                return false;
            }
        }
        true
    }

    /// Sets of `block` not yet present, if the whole block can be swapped in.
    fn valid_block(&self, block: &[u64]) -> Option<Vec<u64>> {
        let incoming: Vec<u64> = block
            .iter()
            .copied()
            .filter(|&w| !self.contains_word(w))
            .collect();
        if incoming.is_empty() {
            return None;
        }
        let n = self.n;
        if !incoming
            .iter()
            .all(|&w| self.swap_keeps_intersecting(SubsetWord::from_bits_unchecked(w, n)))
        {
            return None;
        }
        for (i, &a) in incoming.iter().enumerate() {
            if incoming[i + 1..].iter().any(|&b| a & b == 0) {
                return None;
            }
        }
        Some(incoming)
    }

    /// Replaces `[n] \ a` by `a`; errors if the precondition fails.
    pub fn apply_swap(&mut self, a: SubsetWord) -> Result<()> {
        self.check_swap_pre(a)?;
        self.apply_unchecked(&[a.bits()]);
        Ok(())
    }

    fn apply_unchecked(&mut self, incoming: &[u64]) {
        let mask = full_mask(self.n);
        for &w in incoming {
            let out = !w & mask;
            self.flip(w);
            self.flip(out);
            for bit in 0..self.n as usize {
                if w >> bit & 1 == 1 {
                    self.degrees[bit] += 1;
                } else {
                    self.degrees[bit] -= 1;
                }
            }
        }
    }
}

/// Hill-climb settings.
#[derive(Debug, Clone)]
pub struct HillclimbConfig {
    pub max_steps: u64,
    /// Consecutive equal-diversity moves accepted before plateau moves are refused.
    pub patience: u64,
    /// Propose swapping a whole circular-shift orbit of small sets at once.
    pub orbit_moves: bool,
    /// Extra blocks of small sets, each proposed as one atomic move.
    pub blocks: Vec<Family>,
}

impl Default for HillclimbConfig {
    fn default() -> Self {
        HillclimbConfig {
            max_steps: 10_000,
            patience: DEFAULT_PATIENCE,
            orbit_moves: true,
            blocks: Vec::new(),
        }
    }
}

/// Local search from a maximal intersecting `start`.
///
/// Each step draws a uniformly random set `A` with `|A| <= (n-1)/2` and
/// proposes one of: the single swap of `A`, the swap of its whole shift orbit,
/// or (when configured) a random extra block. Valid proposals are accepted on a
/// strict diversity gain, or on no change while plateau patience lasts.
/// Diversity never decreases, so the final family is a best-seen family.
///
/// The random stream is ChaCha8 seeded from `rng_seed`, identical on every platform.
pub fn hillclimb_diversity(
    n: u32,
    start: &Family,
    rng_seed: u64,
    config: &HillclimbConfig,
) -> Result<SearchReport> {
    odd_ground(n, HILLCLIMB_MIN_GROUND, HILLCLIMB_MAX_GROUND, "")?;
    if start.ground_n() != n {
        return Err(Error::GroundMismatch {
            left: n,
            right: start.ground_n(),
        });
    }
    if let Intersection::Disjoint { first, second } = is_intersecting(start) {
        return Err(Error::Precondition(format!(
            "start family is not intersecting: {first} and {second} are disjoint"
        )));
    }
    if !is_pair_complete(start) {
        return Err(Error::Precondition(
            "start family is not maximal: some complementary pair is absent".into(),
        ));
    }
    let blocks: Vec<Vec<u64>> = config
        .blocks
        .iter()
        .map(|b| {
            if b.ground_n() == n {
                Ok(b.words().to_vec())
            } else {
                Err(Error::GroundMismatch {
                    left: n,
                    right: b.ground_n(),
                })
            }
        })
        .collect::<Result<_>>()?;

    let k = (n - 1) / 2;
    let mask = full_mask(n);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut state = SwapState::new(start)?;
    let mut plateau = 0u64;
    let mut accepted = 0u64;
    let kinds = 1 + config.orbit_moves as u32 + !blocks.is_empty() as u32;

    for _ in 0..config.max_steps {
        let mut w = rng.gen::<u64>() & mask;
        if w.count_ones() > k {
            w = !w & mask;
        }
        let kind = rng.gen_range(0..kinds);
        let proposal: Vec<u64> = match kind {
            0 => vec![w],
            1 if config.orbit_moves => {
                if w == 0 {
                    continue;
                }
                shift_orbit(SubsetWord::from_bits_unchecked(w, n)).orbit.into_words()
            }
            _ => blocks[rng.gen_range(0..blocks.len())].clone(),
        };
        let Some(incoming) = state.valid_block(&proposal) else {
            continue;
        };
        let delta = state.block_delta(&incoming);
        let take = match delta {
            d if d > 0 => {
                plateau = 0;
                true
            }
            0 if plateau < config.patience => {
                plateau += 1;
                true
            }
            _ => false,
        };
        if take {
            state.apply_unchecked(&incoming);
            accepted += 1;
            if cfg!(debug_assertions) && n <= 13 || accepted % 1024 == 0 && n <= 20 {
                let family = state.to_family();
                assert!(is_pair_complete(&family), "move broke maximality");
                assert!(is_intersecting(&family).holds(), "move broke intersecting");
            }
        }
    }

    let best_family = state.to_family();
    Ok(SearchReport {
        ground_n: n,
        best_diversity: state.diversity(),
        best_family,
        visited: config.max_steps,
        accepted,
        method: SearchMethod::Hillclimb,
        rng_seed: Some(rng_seed),
    })
}
