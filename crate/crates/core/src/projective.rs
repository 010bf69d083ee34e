//! The projective plane `PG(2,q)` over a prime field and the line-containing
//! families built on it.
//!
//! Points are normalized homogeneous triples (first nonzero coordinate 1),
//! numbered `1..=n` in lexicographic coordinate order. Lines are the dual
//! triples in the same order; a point lies on a line when the dot product is 0.

use rayon::prelude::*;

use crate::bounds::LayerStat;
use crate::budget::Budget;
use crate::constructions::{apply_swap, build_qk, SwapPlan};
use crate::error::{Error, Result};
use crate::family::{bytes_for_members, Family};
use crate::field::{FieldArithmetic, FiniteField};
use crate::properties::degree_profile;
use crate::subset::{SubsetWord, MAX_GROUND};

pub type Point = [u32; 3];

#[derive(Debug, Clone)]
pub struct PlaneGeometry {
    field: FiniteField,
    points: Vec<Point>,
    line_coords: Vec<Point>,
    /// Line `j` (0-based, in dual-coordinate order) as a point set.
    line_sets: Vec<SubsetWord>,
    lines: Family,
}

fn normalized_triples(field: &FiniteField) -> Vec<Point> {
    let q = field.order();
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let first_nonzero = [x, y, z].into_iter().find(|&c| c != 0);
                if first_nonzero == Some(1) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

impl PlaneGeometry {
    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// `q^2 + q + 1`.
    pub fn n(&self) -> u32 {
        self.points.len() as u32
    }

    /// `(q^2 + q) / 2`, the top layer and the `k` of `Q_k` over `[n]`.
    pub fn half(&self) -> u32 {
        let q = self.q();
        (q * q + q) / 2
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Coordinates of point `p` (1-based).
    pub fn point(&self, p: u32) -> Point {
        self.points[(p - 1) as usize]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn line_coords(&self) -> &[Point] {
        &self.line_coords
    }

    /// Lines in dual-coordinate order.
    pub fn line_sets(&self) -> &[SubsetWord] {
        &self.line_sets
    }

    /// Lines as a canonical family.
    pub fn lines(&self) -> &Family {
        &self.lines
    }

    pub fn contains_line(&self, set: u64) -> bool {
        self.line_sets
            .iter()
            .any(|l| set & l.bits() == l.bits())
    }

    /// Incidence axioms of a projective plane of order `q`.
    pub fn verify_axioms(&self) -> Result<()> {
        let q = self.q() as usize;
        let n = q * q + q + 1;
        let fail = |detail: String| Error::Invariant {
            construction: format!("PG(2,{q})"),
            detail,
        };
        if self.points.len() != n || self.line_sets.len() != n || self.lines.len() != n {
            return Err(fail(format!(
                "{} points, {} lines, expected {n}",
                self.points.len(),
                self.lines.len()
            )));
        }
        if let Some(l) = self.line_sets.iter().find(|l| l.len() as usize != q + 1) {
            return Err(fail(format!("line {l} has {} points", l.len())));
        }
        let profile = degree_profile(&self.lines);
        if let Some(idx) = profile.counts().iter().position(|&c| c as usize != q + 1) {
            return Err(fail(format!(
                "point {} lies on {} lines",
                idx + 1,
                profile.counts()[idx]
            )));
        }
        for a in 1..=n as u32 {
            for b in a + 1..=n as u32 {
                let joining = self
                    .line_sets
                    .iter()
                    .filter(|l| l.contains(a) && l.contains(b))
                    .count();
                if joining != 1 {
                    return Err(fail(format!("points {a},{b} lie on {joining} common lines")));
                }
            }
        }
        for (i, l) in self.line_sets.iter().enumerate() {
            for m in &self.line_sets[i + 1..] {
                let meet = (l.bits() & m.bits()).count_ones();
                if meet != 1 {
                    return Err(fail(format!("lines {l} and {m} share {meet} points")));
                }
            }
        }
        Ok(())
    }
}

pub fn build_plane(q: i64) -> Result<PlaneGeometry> {
    let field = FiniteField::new(q)?;
    let order = field.order() as u64;
    let n = order * order + order + 1;
    if n > MAX_GROUND as u64 {
        return Err(Error::param(
            "q",
            q,
            format!("q^2+q+1 = {n} points exceed the {MAX_GROUND}-element ground set"),
        ));
    }
    let n = n as u32;
    let points = normalized_triples(&field);
    let line_coords = points.clone();
    let line_sets: Vec<SubsetWord> = line_coords
        .iter()
        .map(|l| {
            let bits = points.iter().enumerate().fold(0u64, |acc, (idx, p)| {
                let dot = field.add(
                    field.add(field.mul(p[0], l[0]), field.mul(p[1], l[1])),
                    field.mul(p[2], l[2]),
                );
                if dot == 0 {
                    acc | (1u64 << idx)
                } else {
                    acc
                }
            });
            SubsetWord::from_bits_unchecked(bits, n)
        })
        .collect();
    let lines = Family::new(n, line_sets.iter().copied())?;
    let plane = PlaneGeometry {
        field,
        points,
        line_coords,
        line_sets,
        lines,
    };
    plane.verify_axioms()?;
    Ok(plane)
}

pub(crate) fn binomial_u128(a: u32, b: u32) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, j| acc * (a - j) as u128 / (j + 1) as u128)
}

/// Ascending `r`-subsets of the low `width` bits.
fn for_each_combination(width: u32, r: u32, mut f: impl FnMut(u64)) {
    if r > width {
        return;
    }
    if r == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << width;
    let mut c = (1u64 << r) - 1;
    while c < limit {
        f(c);
        let lowest = c & c.wrapping_neg();
        let ripple = c + lowest;
        c = (((ripple ^ c) >> 2) / lowest) | ripple;
    }
}

/// All `i`-subsets of the points containing at least one line.
pub fn enumerate_ai(plane: &PlaneGeometry, i: u32, budget: &Budget) -> Result<Family> {
    let q = plane.q();
    let n = plane.n();
    if i < q + 1 || i > plane.half() {
        return Err(Error::param(
            "i",
            i as i64,
            format!("layer index must lie in {}..={}", q + 1, plane.half()),
        ));
    }
    let candidates = binomial_u128(n, i);
    budget.check(
        || format!("A_{i} over PG(2,{q}) ({candidates} candidate subsets; use the counting bounds instead)"),
        bytes_for_members(candidates),
    )?;
    // Split by largest element; each block is a contiguous ascending range of words.
    let blocks: Vec<Vec<u64>> = (i - 1..n)
        .into_par_iter()
        .map(|top| {
            let high = 1u64 << top;
            let mut out = Vec::new();
            for_each_combination(top, i - 1, |low| {
                let w = high | low;
                if plane.contains_line(w) {
                    out.push(w);
                }
            });
            out
        })
        .collect();
    Ok(Family::from_sorted_words(n, blocks.concat()))
}

/// All layers `A_i` for `i = q+1 ..= (q^2+q)/2`.
pub fn enumerate_layers(plane: &PlaneGeometry, budget: &Budget) -> Result<Vec<Family>> {
    (plane.q() + 1..=plane.half())
        .map(|i| enumerate_ai(plane, i, budget))
        .collect()
}

/// Size and (if regular) common degree of each layer.
pub fn layer_stats(plane: &PlaneGeometry, layers: &[Family]) -> Vec<LayerStat> {
    layers
        .iter()
        .zip(plane.q() + 1..)
        .map(|(layer, i)| LayerStat {
            i,
            size: layer.len() as u64,
            degree: if layer.is_empty() {
                None
            } else {
                degree_profile(layer).regularity().degree()
            },
        })
        .collect()
}

/// Union of all layers.
pub fn build_a(plane: &PlaneGeometry, budget: &Budget) -> Result<Family> {
    let layers = enumerate_layers(plane, budget)?;
    Ok(union_layers(plane.n(), layers))
}

pub(crate) fn union_layers(n: u32, layers: Vec<Family>) -> Family {
    let words: Vec<u64> = layers.into_iter().flat_map(Family::into_words).collect();
    Family::from_words_unsorted(n, words)
}

/// `A ∪ (Q_k \ complements(A))` with `k = (q^2+q)/2`.
pub fn build_rk(plane: &PlaneGeometry, budget: &Budget) -> Result<Family> {
    let k = plane.half();
    // Fail on the larger allocation before enumerating anything.
    budget.check(|| format!("Q_{k}"), bytes_for_members(1u128 << (2 * k)))?;
    let a = build_a(plane, budget)?;
    let qk = build_qk(k, budget)?;
    Ok(apply_swap(&SwapPlan::new(qk, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::{is_intersecting, is_regular, Regularity};

    #[test]
    fn plane_q3() {
        let p = build_plane(3).unwrap();
        assert_eq!(p.n(), 13);
        assert_eq!(p.lines().len(), 13);
        assert!(p.lines().members().all(|l| l.len() == 4));
        assert_eq!(p.point(1), [0, 0, 1]);
        assert_eq!(p.point(13), [1, 2, 2]);
        assert!(is_intersecting(p.lines()).holds());
        assert_eq!(is_regular(p.lines()).unwrap(), Regularity::Regular { degree: 4 });
    }

    #[test]
    fn plane_q5_q7() {
        let p5 = build_plane(5).unwrap();
        assert_eq!(p5.n(), 31);
        assert!(p5.lines().members().all(|l| l.len() == 6));
        let p7 = build_plane(7).unwrap();
        assert_eq!(p7.n(), 57);
        assert!(build_plane(11).is_err());
        assert!(build_plane(4).is_err());
    }

    #[test]
    fn combinations_ascending() {
        let mut seen = Vec::new();
        for_each_combination(5, 2, |w| seen.push(w));
        assert_eq!(seen.len(), 10);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        let mut zero = Vec::new();
        for_each_combination(4, 0, |w| zero.push(w));
        assert_eq!(zero, vec![0]);
    }

    #[test]
    fn first_layer_is_lines() {
        let p = build_plane(3).unwrap();
        let a4 = enumerate_ai(&p, 4, &Budget::default()).unwrap();
        assert_eq!(&a4, p.lines());
    }

    #[test]
    fn layer_range_and_budget() {
        let p = build_plane(3).unwrap();
        assert!(matches!(
            enumerate_ai(&p, 3, &Budget::default()),
            Err(Error::InvalidParameter { name: "i", .. })
        ));
        assert!(enumerate_ai(&p, 7, &Budget::default()).is_err());
        assert!(matches!(
            enumerate_ai(&p, 6, &Budget::new(100)),
            Err(Error::Budget { .. })
        ));
        let p5 = build_plane(5).unwrap();
        assert!(matches!(
            build_rk(&p5, &Budget::default()),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial_u128(13, 5), 1287);
        assert_eq!(binomial_u128(13, 6), 1716);
        assert_eq!(binomial_u128(3, 5), 0);
    }
}
