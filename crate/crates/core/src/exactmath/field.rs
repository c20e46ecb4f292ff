//! Ground fields: the rationals and prime fields GF(p).
//!
//! Values do not carry their field; every arithmetic operation goes through
//! a [`Field`] handle, which is cheap to copy.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field an instance is computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime { p: u32 },
}

/// A field element. Fractions are kept in lowest terms with a positive
/// denominator; residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u32),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod(r) => *r == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod(r) => write!(f, "{r}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p); `p` must be a prime below 2^31.
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime { p })
    }

    pub fn check(self) -> Result<Field> {
        match self {
            Field::Rational => Ok(self),
            Field::Prime { p } => Field::prime(p),
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime { .. } => Scalar::Mod(0),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Mod(n.rem_euclid(p as i64) as u32),
        }
    }

    /// Maps an exact fraction into this field. Fails in GF(p) when `p`
    /// divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            Field::Prime { p } => {
                let pb = BigInt::from(p);
                let reduce = |n: &BigInt| -> u32 {
                    let r = ((n % &pb) + &pb) % &pb;
                    r.to_u32().expect("residue fits in u32")
                };
                let num = Scalar::Mod(reduce(q.numer()));
                let den = Scalar::Mod(reduce(q.denom()));
                let inv = self
                    .inv(&den)
                    .ok_or_else(|| Error::InvalidScalar(format!("{q} has denominator divisible by {p}")))?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    /// Parses `"3"`, `"-2"`, or `"3/4"`.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidScalar(s.to_string());
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime { p }, Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Field::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match (self, a) {
            (Field::Rational, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            (Field::Prime { p }, Scalar::Mod(x)) => {
                // Fermat: x^(p-2)
                let (mut base, mut exp, mut acc) = (*x as u64, p as u64 - 2, 1u64);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p as u64;
                    }
                    base = base * base % p as u64;
                    exp >>= 1;
                }
                Some(Scalar::Mod(acc as u32))
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// True when `a` is the image of a negative rational (only meaningful over Q).
    pub fn is_negative(self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rat(q) if q.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_are_reduced() {
        let q = Field::Rational;
        assert_eq!(q.parse("6/-8").unwrap().to_string(), "-3/4");
        assert_eq!(q.parse("4/2").unwrap().to_string(), "2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn residues_stay_in_range() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_int(-1), Scalar::Mod(4));
        assert_eq!(f.parse("1/2").unwrap(), Scalar::Mod(3));
        assert!(f.parse("1/5").is_err());
        let three = f.from_int(3);
        assert_eq!(f.mul(&three, &f.inv(&three).unwrap()), f.one());
        assert_eq!(f.neg(&f.zero()), Scalar::Mod(0));
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2_147_483_647).is_ok());
        assert!(Field::prime(2_147_483_646).is_err());
    }

    #[test]
    fn large_prime_arithmetic_does_not_overflow() {
        let f = Field::prime(2_147_483_647).unwrap();
        let a = f.from_int(2_147_483_646);
        assert_eq!(f.mul(&a, &a), f.one());
        assert_eq!(f.add(&a, &f.one()), f.zero());
    }
}
