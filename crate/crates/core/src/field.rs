//! Prime fields `GF(q)` for odd primes `q`.

use crate::error::{Error, Result};

/// Fields up to this order are checked against the axioms exhaustively on construction.
pub const EXHAUSTIVE_AXIOM_LIMIT: u32 = 9;

/// Largest accepted order.
pub const MAX_ORDER: u32 = 65_521;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(p)` when `q = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
    }
    (rest == 1).then_some(p)
}

/// Rejects anything but an odd prime, naming prime powers explicitly.
pub fn check_odd_prime(q: i64) -> Result<u32> {
    if q == 2 {
        return Err(Error::param("q", q, "q = 2 is excluded, q must be an odd prime"));
    }
    if q < 3 || q > MAX_ORDER as i64 {
        return Err(Error::param("q", q, format!("q must be an odd prime in 3..={MAX_ORDER}")));
    }
    if is_prime(q as u64) {
        return Ok(q as u32);
    }
    match prime_power_base(q as u64) {
        Some(p) if p != 2 => Err(Error::param(
            "q",
            q,
            format!(
                "{q} is a power of {p}; only prime fields are implemented, extension fields \
                 GF(p^e) need an irreducible polynomial supplied through the FieldArithmetic trait"
            ),
        )),
        _ => Err(Error::param("q", q, "not an odd prime")),
    }
}

/// Arithmetic on canonical labels `0..q`. Prime fields implement it by reduction
/// mod `q`; an extension field would implement it from an irreducible polynomial.
pub trait FieldArithmetic {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    /// `None` for zero.
    fn inv(&self, a: u32) -> Option<u32>;
}

/// `GF(q)` for an odd prime `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    q: u32,
    inverses: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: i64) -> Result<Self> {
        let q = check_odd_prime(q)?;
        let mut inverses = vec![0u32; q as usize];
        for a in 1..q {
            let inv = (1..q)
                .find(|&b| (a as u64 * b as u64) % q as u64 == 1)
                .expect("nonzero elements of a prime field are invertible");
            inverses[a as usize] = inv;
        }
        let field = FiniteField { q, inverses };
        if q <= EXHAUSTIVE_AXIOM_LIMIT {
            field.verify_axioms()?;
        }
        Ok(field)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    /// Exhaustive check of the field axioms over all pairs and triples.
    pub fn verify_axioms(&self) -> Result<()> {
        let fail = |detail: String| Error::Invariant {
            construction: format!("GF({})", self.q),
            detail,
        };
        for a in self.elements() {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(fail(format!("identity fails at {a}")));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(fail(format!("additive inverse fails at {a}")));
            }
            if a != 0 && self.inv(a).map(|b| self.mul(a, b)) != Some(1) {
                return Err(fail(format!("multiplicative inverse fails at {a}")));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(fail(format!("commutativity fails at ({a},{b})")));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return Err(fail(format!("associativity fails at ({a},{b},{c})")));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(fail(format!("distributivity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

impl FieldArithmetic for FiniteField {
    fn order(&self) -> u32 {
        self.q
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    fn inv(&self, a: u32) -> Option<u32> {
        (a % self.q != 0).then(|| self.inverses[(a % self.q) as usize])
    }
}
