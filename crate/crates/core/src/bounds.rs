//! Closed-form counts and bounds, evaluated exactly.
//!
//! Everything here is generic over an [`ExactInt`] scalar. Fixed-width types
//! (`i64`, `i128`) report [`Error::Overflow`] instead of wrapping;
//! [`BigCount`](crate::BigCount) never overflows and is what callers normally use.
//! Rational quantities are `Ratio<T>`, see [`Rational`](crate::Rational).

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};

use crate::error::{Error, Result};
use crate::field::check_odd_prime;

/// Exact signed integer scalar.
pub trait ExactInt:
    Clone + Integer + Signed + FromPrimitive + CheckedAdd + CheckedSub + CheckedMul + Display + Debug
{
}

impl<T> ExactInt for T where
    T: Clone
        + Integer
        + Signed
        + FromPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Display
        + Debug
{
}

fn lift<T: ExactInt>(v: i64) -> T {
    T::from_i64(v).expect("every exact scalar holds an i64")
}

fn mul<T: ExactInt>(a: &T, b: &T, what: &'static str) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn add<T: ExactInt>(a: &T, b: &T, what: &'static str) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

fn sub<T: ExactInt>(a: &T, b: &T, what: &'static str) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial<T: ExactInt>(a: i64, b: i64) -> Result<T> {
    if a < 0 {
        return Err(Error::param("a", a, "binomial top must be nonnegative"));
    }
    if b < 0 || b > a {
        return Ok(T::zero());
    }
    let b = b.min(a - b);
    let mut acc = T::one();
    for j in 0..b {
        // acc = C(a, j) here, so acc * (a - j) is divisible by j + 1.
        acc = mul(&acc, &lift(a - j), "binomial")? / lift(j + 1);
    }
    Ok(acc)
}

/// `Σ_{i=k+1}^{2k} C(2k, i)`, the diversity of `Q_k`.
pub fn div_qk_formula<T: ExactInt>(k: u32) -> Result<T> {
    if k < 1 {
        return Err(Error::param("k", k as i64, "must be at least 1"));
    }
    let top = 2 * k as i64;
    (k as i64 + 1..=top).try_fold(T::zero(), |acc, i| add(&acc, &binomial(top, i)?, "div_qk"))
}

/// `Σ_{i=k}^{2k} C(2k, i)`, the common degree of `Q_k`.
pub fn degree_qk_formula<T: ExactInt>(k: u32) -> Result<T> {
    if k < 1 {
        return Err(Error::param("k", k as i64, "must be at least 1"));
    }
    let top = 2 * k as i64;
    (k as i64..=top).try_fold(T::zero(), |acc, i| add(&acc, &binomial(top, i)?, "degree_qk"))
}

/// `|Q_k| = 2^{2k}`.
pub fn size_qk<T: ExactInt>(k: u32) -> Result<T> {
    (0..2 * k).try_fold(T::one(), |acc, _| mul(&acc, &lift(2), "size_qk"))
}

/// Plane parameters `(n, k) = (q^2+q+1, (q^2+q)/2)` for an odd prime `q`.
pub fn plane_params(q: i64) -> Result<(i64, i64)> {
    let q = check_odd_prime(q)? as i64;
    Ok((q * q + q + 1, (q * q + q) / 2))
}

/// The two-term inclusion-exclusion lower bound on the number of `i`-sets
/// containing a line of `PG(2,q)`, and its halved simplification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BonferroniBound<T: ExactInt> {
    pub q: i64,
    pub i: i64,
    pub n: i64,
    /// `n C(n-q-1, i-q-1) - C(n,2) C(n-2q-1, i-2q-1)`.
    pub middle: T,
    /// `(n/2) C(n-q-1, i-q-1)`.
    pub final_bound: Ratio<T>,
    /// Whether `middle >= final_bound` for this instance.
    pub chain_holds: bool,
}

pub fn bonferroni_lower<T: ExactInt>(q: i64, i: i64) -> Result<BonferroniBound<T>> {
    let (n, _) = plane_params(q)?;
    if i < 1 || i > n {
        return Err(Error::param("i", i, format!("must lie in 1..={n}")));
    }
    let single = binomial::<T>(n - q - 1, i - q - 1)?;
    let first = mul(&lift(n), &single, "bonferroni")?;
    let pairs = mul(
        &binomial::<T>(n, 2)?,
        &binomial::<T>(n - 2 * q - 1, i - 2 * q - 1)?,
        "bonferroni",
    )?;
    let middle = sub(&first, &pairs, "bonferroni")?;
    let final_bound = Ratio::new(first, lift(2));
    let chain_holds = Ratio::from_integer(middle.clone()) >= final_bound;
    Ok(BonferroniBound {
        q,
        i,
        n,
        middle,
        final_bound,
        chain_holds,
    })
}

/// `Σ_{i=q+1}^{k} ((n-2i)/2) C(n-q-1, i-q-1)`.
pub fn theorem_rhs<T: ExactInt>(q: i64) -> Result<Ratio<T>> {
    let (n, k) = plane_params(q)?;
    let mut total = Ratio::from_integer(T::zero());
    for i in q + 1..=k {
        let c = binomial::<T>(n - q - 1, i - q - 1)?;
        let numer = mul(&lift(n - 2 * i), &c, "theorem_rhs")?;
        total = total + Ratio::new(numer, lift(2));
    }
    Ok(total)
}

/// Exact size and common degree of one layer `A_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerStat {
    pub i: u32,
    pub size: u64,
    /// `None` when the layer is not regular.
    pub degree: Option<u64>,
}

/// `Σ_i (|A_i| - 2 σ(A_i))`; undefined if any layer is irregular.
pub fn ledger_delta<T: ExactInt>(layers: &[LayerStat]) -> Result<T> {
    layers.iter().try_fold(T::zero(), |acc, layer| {
        let degree = layer.degree.ok_or(Error::NonRegularLayer(layer.i))?;
        let size = T::from_u64(layer.size).ok_or(Error::Overflow("ledger"))?;
        let twice = T::from_u64(degree)
            .and_then(|d| d.checked_mul(&lift(2)))
            .ok_or(Error::Overflow("ledger"))?;
        add(&acc, &sub(&size, &twice, "ledger")?, "ledger")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BigCount, Rational};

    fn big(v: i64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial::<BigCount>(6, 4).unwrap(), big(15));
        assert_eq!(binomial::<BigCount>(6, -2).unwrap(), big(0));
        assert_eq!(binomial::<BigCount>(12, 7).unwrap(), big(792));
        assert_eq!(binomial::<i64>(12, 7).unwrap(), 792);
        assert_eq!(binomial::<i64>(3, 5).unwrap(), 0);
        assert!(binomial::<i64>(-1, 0).is_err());
    }

    #[test]
    fn fixed_width_overflow_is_reported() {
        assert_eq!(binomial::<i64>(70, 35), Err(Error::Overflow("binomial")));
        assert!(binomial::<i128>(70, 35).is_ok());
        assert_eq!(
            binomial::<BigCount>(70, 35).unwrap().to_string(),
            binomial::<i128>(70, 35).unwrap().to_string()
        );
    }

    #[test]
    fn div_qk_examples() {
        assert_eq!(div_qk_formula::<BigCount>(3).unwrap(), big(22));
        assert_eq!(div_qk_formula::<BigCount>(6).unwrap(), big(1586));
        assert_eq!(div_qk_formula::<BigCount>(1).unwrap(), big(1));
        assert!(div_qk_formula::<i64>(0).is_err());
        assert_eq!(degree_qk_formula::<i64>(3).unwrap(), 42);
        assert_eq!(degree_qk_formula::<i64>(6).unwrap(), 2510);
        assert_eq!(size_qk::<i64>(6).unwrap(), 4096);
    }

    #[test]
    fn bonferroni_examples() {
        let b = bonferroni_lower::<BigCount>(3, 5).unwrap();
        assert_eq!(b.middle, big(117));
        assert_eq!(b.final_bound, Rational::new(big(117), big(2)));
        assert!(b.chain_holds);
        let b = bonferroni_lower::<BigCount>(3, 6).unwrap();
        assert_eq!(b.middle, big(468));
        assert_eq!(b.final_bound, Rational::from_integer(big(234)));
        let b = bonferroni_lower::<BigCount>(5, 15).unwrap();
        let expected = big(31) * binomial::<BigCount>(25, 9).unwrap()
            - big(465) * binomial::<BigCount>(20, 4).unwrap();
        assert_eq!(b.middle, expected);
        assert!(b.chain_holds);
        assert!(bonferroni_lower::<BigCount>(3, 14).is_err());
        assert!(bonferroni_lower::<BigCount>(4, 5).is_err());
    }

    #[test]
    fn theorem_rhs_examples() {
        assert_eq!(theorem_rhs::<BigCount>(3).unwrap(), Rational::from_integer(big(34)));
        let r5 = theorem_rhs::<BigCount>(5).unwrap();
        assert!(r5 > Rational::from_integer(big(0)));
        assert_eq!(theorem_rhs::<i64>(3).unwrap(), Ratio::from_integer(34));
    }

    #[test]
    fn ledger_examples() {
        let layers = [
            LayerStat { i: 4, size: 13, degree: Some(4) },
            LayerStat { i: 5, size: 117, degree: Some(45) },
            LayerStat { i: 6, size: 468, degree: Some(216) },
        ];
        assert_eq!(ledger_delta::<BigCount>(&layers).unwrap(), big(68));
        let single = [LayerStat { i: 4, size: 13, degree: Some(4) }];
        assert_eq!(ledger_delta::<i64>(&single).unwrap(), 13 - 2 * 4);
        assert_eq!(ledger_delta::<i64>(&[]).unwrap(), 0);
        let bad = [LayerStat { i: 5, size: 10, degree: None }];
        assert_eq!(ledger_delta::<i64>(&bad), Err(Error::NonRegularLayer(5)));
    }
}
