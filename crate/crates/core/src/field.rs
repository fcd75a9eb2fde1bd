//! Exact coefficient fields: the rationals and prime fields F_p.
//!
//! All polynomial and matrix code is generic over [`Field`]. A field is a
//! small value object (the prime `p` is runtime data, not a type parameter),
//! so the same code path serves `Q` and every `F_p`.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Q => Ok(()),
            FieldSpec::Fp { p } => {
                if *p < 2 || *p >= (1 << 31) {
                    return Err(Error::input(format!(
                        "prime field characteristic must satisfy 2 <= p < 2^31, got {p}"
                    )));
                }
                if !is_prime(*p) {
                    return Err(Error::input(format!("{p} is not prime")));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp { p } => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact field arithmetic over a runtime-chosen field.
pub trait Field: Clone + Eq + fmt::Debug {
    type Elem: Clone + Eq + Ord + fmt::Debug;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; errors on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Parses a coefficient token: an integer, or `a/b` over the rationals.
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Splits a coefficient into (is_negative, magnitude) for printing.
    /// Prime-field residues are canonical in `0..p` and never report a sign.
    fn signed_magnitude(&self, a: &Self::Elem) -> (bool, Self::Elem);
    /// Deterministic pseudo-random scalar for sampling-based checks.
    fn sample_elem<R: Rng>(&self, rng: &mut R) -> Self::Elem;
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Q
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::input("division by zero in Q"));
        }
        Ok(a.recip())
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let numer: BigInt = num_str
            .parse()
            .map_err(|_| Error::input(format!("bad rational numerator '{num_str}'")))?;
        let denom: BigInt = match den_str {
            Some(d) => d
                .parse()
                .map_err(|_| Error::input(format!("bad rational denominator '{d}'")))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(Error::input("zero denominator in rational literal"));
        }
        Ok(BigRational::new(numer, denom))
    }

    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn signed_magnitude(&self, a: &BigRational) -> (bool, BigRational) {
        (a.is_negative(), a.abs())
    }

    fn sample_elem<R: Rng>(&self, rng: &mut R) -> BigRational {
        let numer: i64 = rng.gen_range(-100..=100);
        let denom: i64 = rng.gen_range(1..=10);
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

/// The prime field F_p for a prime 2 <= p < 2^31.
///
/// Elements are canonical residues in `0..p`, so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::Fp { p }.validate()?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Fp { p: self.p }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::input(format!("division by zero in F_{}", self.p)));
        }
        Ok(self.pow(*a, self.p - 2))
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let v: i128 = s
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad integer literal '{s}'")))?;
        Ok(v.rem_euclid(self.p as i128) as u64)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn signed_magnitude(&self, a: &u64) -> (bool, u64) {
        (false, *a)
    }

    fn sample_elem<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_guard() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.neg(&3), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3).unwrap(), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert!(f.inv(&0).is_err());
    }

    #[test]
    fn rational_parse_format() {
        let q = Rationals;
        let half = q.parse_elem("1/2").unwrap();
        assert_eq!(q.format_elem(&half), "1/2");
        let three = q.parse_elem("3").unwrap();
        assert_eq!(q.format_elem(&three), "3");
        assert_eq!(q.format_elem(&q.add(&half, &half)), "1");
        assert!(q.parse_elem("1/0").is_err());
    }
}
