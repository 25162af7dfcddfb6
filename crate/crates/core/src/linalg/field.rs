//! Scalars: the rationals and the prime fields F_p.
//!
//! A [`Field`] is a small context object carrying whatever is needed to do
//! arithmetic (nothing for `Q`, the modulus for `F_p`). Elements are plain
//! values; all arithmetic goes through the context so that one generic code
//! path serves every characteristic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// The characteristic of the ground field: `0` for the rationals, or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    /// Largest supported prime. Products of two residues must fit in a `u64`.
    pub const MAX_PRIME: u64 = u32::MAX as u64;

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (is_prime(characteristic) && characteristic <= Self::MAX_PRIME) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::BadCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// An integer is invertible in the field iff the characteristic does not divide it.
    pub fn is_invertible(&self, n: u64) -> bool {
        match self.characteristic {
            0 => n != 0,
            p => n % p != 0,
        }
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;
    fn try_from(c: u64) -> Result<Self> {
        FieldSpec::new(c)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for a field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `acc -= a * b`, the inner step of elimination.
    fn sub_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.sub(acc, &prod);
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.add(acc, &prod);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Representative in `0..p` over a prime field; `None` in characteristic 0.
    fn residue(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    fn to_json(&self, a: &Self::Elem) -> Value;
    fn from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
}

/// The field of rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
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
    fn sub_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc -= a * b;
    }
    fn add_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc += a * b;
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn to_json(&self, a: &BigRational) -> Value {
        if a.is_integer() {
            if let Some(n) = a.numer().to_i64() {
                return Value::from(n);
            }
        }
        Value::String(self.format(a))
    }

    fn from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.from_i64(n))
                .ok_or_else(|| Error::Parse(format!("non-integer scalar {n}"))),
            Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("bad scalar {other}"))),
        }
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// The prime field F_p, elements stored as canonical residues `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::BadCharacteristic(0));
        }
        FieldSpec::new(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
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
        FieldSpec { characteristic: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
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
    fn sub_mul_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        let prod = a * b % self.p;
        *acc = self.sub(acc, &prod);
    }
    fn add_mul_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = (*acc + a * b) % self.p;
    }

    fn residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }

    fn to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }

    fn from_json(&self, v: &Value) -> Result<u64> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.from_i64(n))
                .ok_or_else(|| Error::Parse(format!("non-integer scalar {n}"))),
            Value::String(s) => {
                let q = parse_rational(s)?;
                let num = q.numer().mod_floor_u64(self.p);
                let den = q.denom().mod_floor_u64(self.p);
                let inv = self
                    .inv(&den)
                    .ok_or_else(|| Error::Parse(format!("denominator of {s:?} vanishes mod {}", self.p)))?;
                Ok(self.mul(&num, &inv))
            }
            other => Err(Error::Parse(format!("bad scalar {other}"))),
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        debug_assert!(!r.is_negative());
        r.to_u64().expect("residue fits")
    }
}

/// Run `$body` with `$f` bound to the concrete field of `$spec`.
///
/// Both arms must evaluate to the same (non-generic) type.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {{
        let __spec: $crate::linalg::FieldSpec = $spec;
        match __spec.characteristic() {
            0 => {
                let $f = $crate::linalg::Rationals;
                $body
            }
            p => {
                let $f = $crate::linalg::PrimeField::new(p).expect("validated characteristic");
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_rejects_composites() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(7).is_ok());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(15).is_err());
    }

    #[test]
    fn invertibility_depends_on_characteristic_only() {
        let q = FieldSpec::new(0).unwrap();
        let f2 = FieldSpec::new(2).unwrap();
        let f3 = FieldSpec::new(3).unwrap();
        assert!(q.is_invertible(6));
        assert!(!f2.is_invertible(6));
        assert!(!f3.is_invertible(6));
        assert!(f3.is_invertible(2));
        assert!(!q.is_invertible(0));
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn scalar_json() {
        let q = Rationals;
        let half = q.from_json(&Value::String("1/2".into())).unwrap();
        assert_eq!(q.mul(&half, &q.from_i64(2)), q.one());
        assert_eq!(q.to_json(&q.from_i64(3)), Value::from(3));
        assert_eq!(q.to_json(&half), Value::String("1/2".into()));
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_json(&Value::String("1/2".into())).unwrap(), 3);
        assert_eq!(f.from_json(&Value::from(-2)).unwrap(), 3);
    }
}
