use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// The ground field `k`: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
}

impl FieldDescriptor {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p >= (1u64 << 62) || !is_prime(p) {
            return Err(Error::domain(format!("{p} is not a supported prime")));
        }
        Ok(FieldDescriptor::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldDescriptor::Rational => 0,
            FieldDescriptor::Prime(p) => p,
        }
    }

    /// Cardinality for finite fields.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldDescriptor::Rational => None,
            FieldDescriptor::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDescriptor::Rational);
        }
        let Some(rest) = s.strip_prefix("Fp:") else {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("field descriptor must be \"Q\" or \"Fp:<prime>\", got {s:?}"),
            });
        };
        let p: u64 = rest.parse().map_err(|_| Error::Parse {
            pos: 3,
            msg: format!("invalid prime {rest:?}"),
        })?;
        FieldDescriptor::prime(p)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of `Q` or of `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    /// Always reduced with positive denominator (maintained by `BigRational`).
    Rational(BigRational),
    /// Canonical representative `0 <= value < modulus`.
    Modular { value: u64, modulus: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

impl FieldScalar {
    pub fn from_bigint(n: &BigInt, field: FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rational => FieldScalar::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldScalar::Modular {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        FieldScalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn modular(value: i64, p: u64) -> Self {
        FieldScalar::Modular {
            value: value.rem_euclid(p as i64) as u64,
            modulus: p,
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldScalar::Rational(_) => FieldDescriptor::Rational,
            FieldScalar::Modular { modulus, .. } => FieldDescriptor::Prime(*modulus),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.descriptor() != other.descriptor() {
            return Err(Error::MixedField(
                self.descriptor().to_string(),
                other.descriptor().to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Field::add(self, other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Field::sub(self, other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Field::mul(self, other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Field::div(self, other).ok_or(Error::DivisionByZero)
    }

    /// The value as a rational number, if it lives in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rational(r) => Some(r),
            FieldScalar::Modular { .. } => None,
        }
    }

    /// Canonical representative of an `F_p` element.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            FieldScalar::Modular { value, .. } => Some(*value),
            FieldScalar::Rational(_) => None,
        }
    }

    /// Raises to a non-negative integer power given as an unsigned exponent.
    pub fn pow_u64(&self, e: u64) -> Self {
        match self {
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: powmod(*value, e, *modulus),
                modulus: *modulus,
            },
            FieldScalar::Rational(r) => {
                let e = i32::try_from(e).expect("exponent too large for Q");
                FieldScalar::Rational(num_traits::Pow::pow(r, e))
            }
        }
    }
}

impl Field for FieldScalar {
    type Ctx = FieldDescriptor;

    fn ctx(&self) -> FieldDescriptor {
        self.descriptor()
    }

    fn zero(ctx: &FieldDescriptor) -> Self {
        Self::from_int(0, ctx)
    }

    fn one(ctx: &FieldDescriptor) -> Self {
        Self::from_int(1, ctx)
    }

    fn from_int(n: i64, ctx: &FieldDescriptor) -> Self {
        match *ctx {
            FieldDescriptor::Rational => FieldScalar::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::Prime(p) => FieldScalar::modular(n, p),
        }
    }

    fn characteristic(ctx: &FieldDescriptor) -> u64 {
        ctx.characteristic()
    }

    fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Modular { value, .. } => *value == 0,
        }
    }

    fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_one(),
            FieldScalar::Modular { value, .. } => *value == 1,
        }
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            (FieldScalar::Modular { value: a, modulus: p }, FieldScalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                FieldScalar::Modular {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed field arithmetic: {self:?} + {other:?}"),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            (FieldScalar::Modular { value: a, modulus: p }, FieldScalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                FieldScalar::Modular {
                    value: mulmod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => panic!("mixed field arithmetic: {self:?} * {other:?}"),
        }
    }

    fn neg(&self) -> Self {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(a.recip()),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: powmod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic sorting: by descriptor, then by
/// rational value or canonical residue.
impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => a.cmp(b),
            (FieldScalar::Modular { value: a, modulus: p }, FieldScalar::Modular { value: b, modulus: q }) => {
                (p, a).cmp(&(q, b))
            }
            _ => self.descriptor().cmp(&other.descriptor()),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldScalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_grammar() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rational);
        assert_eq!("Fp:5".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Prime(5));
        assert!("Fp:6".parse::<FieldDescriptor>().is_err());
        assert!("F5".parse::<FieldDescriptor>().is_err());
        assert_eq!(FieldDescriptor::Prime(101).to_string(), "Fp:101");
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = FieldScalar::rational(6, -4);
        let FieldScalar::Rational(r) = &a else { unreachable!() };
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(a.to_string(), "-3/2");
    }

    #[test]
    fn modular_canonical_and_inverse() {
        let a = FieldScalar::modular(-1, 5);
        assert_eq!(a.as_residue(), Some(4));
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(FieldScalar::modular(2, 5).inv().unwrap().as_residue(), Some(3));
        assert!(FieldScalar::modular(0, 7).inv().is_none());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldScalar::modular(1, 5);
        let b = FieldScalar::modular(1, 7);
        assert!(matches!(a.checked_add(&b), Err(Error::MixedField(..))));
        let q = FieldScalar::rational(1, 2);
        assert!(a.checked_mul(&q).is_err());
    }

    #[test]
    fn negative_powers() {
        let three = FieldScalar::modular(3, 7);
        assert_eq!(three.pow(-1).unwrap().as_residue(), Some(5));
        let half = FieldScalar::rational(1, 2);
        assert_eq!(half.pow(-3).unwrap(), FieldScalar::rational(8, 1));
    }
}
