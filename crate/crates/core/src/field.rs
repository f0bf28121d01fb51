//! Coefficient fields: the rationals and prime fields `GF(p)`.
//!
//! A [`Field`] is a small runtime value (it carries `p` for prime fields) that
//! performs arithmetic on its associated element type. All algebra in this
//! crate is generic over it.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
}

/// Exact arithmetic over a field.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn name(&self) -> String;
    fn format(&self, a: &Self::Elem) -> String;
    /// A pseudo-random element; over `QQ` a small integer.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// `a - c * b`, the elimination workhorse.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `num / den` as a field element, `None` when `den` vanishes in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem> {
        let d = self.inv(&self.from_i64(den))?;
        Some(self.mul(&self.from_i64(num), &d))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
}

/// The prime field `GF(p)` with canonical representatives in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
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

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    #[inline]
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let prod = c * b % self.p;
        self.sub(a, &prod)
    }
}

/// Round-trips a rational to a machine integer when it is one.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(PrimeField::new(100), Err(FieldError::NotPrime(100)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn inverses_in_gf101() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u64 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 100);
    }

    #[test]
    fn rational_division() {
        let q = Rationals;
        let half = q.from_ratio(1, 2).unwrap();
        assert_eq!(q.mul(&half, &q.from_i64(2)), q.one());
        assert_eq!(q.format(&half), "1/2");
        assert_eq!(q.from_ratio(1, 0), None);
    }

    proptest! {
        #[test]
        fn rational_add_sub_roundtrip(a in -1000i64..1000, b in -1000i64..1000, c in 1i64..50) {
            let q = Rationals;
            let x = q.from_ratio(a, c).unwrap();
            let y = q.from_i64(b);
            prop_assert_eq!(q.sub(&q.add(&x, &y), &y), x.clone());
            if !q.is_zero(&x) {
                prop_assert_eq!(q.mul(&x, &q.inv(&x).unwrap()), q.one());
            }
        }

        #[test]
        fn gf_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            prop_assert_eq!(f.sub_mul(&a, &b, &c), f.sub(&a, &f.mul(&b, &c)));
        }
    }
}
