//! Coefficient arithmetic: arbitrary-precision rationals and prime fields.
//!
//! A [`CoefField`] is the arithmetic context; a [`Coef`] is a value.  Values
//! do not carry their field, so all binary operations go through the field,
//! which keeps a single source of truth for the modulus and avoids per-value
//! bloat.  Polynomials guarantee that only coefficients of the same field
//! meet.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a polynomial ring: exact rationals or Z/p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefField {
    Rationals,
    /// Integers modulo a prime `p`, with values kept in `0..p`.
    Prime(u64),
}

/// A coefficient value.  `Rat` is a gcd-reduced fraction with the sign on
/// the numerator; `Mod` is a canonical representative in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coef {
    Rat(BigRational),
    Mod(u64),
}

impl Coef {
    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Rat(r) => r.is_zero(),
            Coef::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coef::Rat(r) => r.is_one(),
            Coef::Mod(v) => *v == 1,
        }
    }
}

impl std::fmt::Display for Coef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coef::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coef::Mod(v) => write!(f, "{v}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefField {
    /// A prime field Z/p; rejects composite or trivial moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefField::Prime(p))
        } else {
            Err(Error::InvalidArgument(format!("modulus {p} is not prime")))
        }
    }

    pub fn zero(&self) -> Coef {
        match self {
            CoefField::Rationals => Coef::Rat(BigRational::zero()),
            CoefField::Prime(_) => Coef::Mod(0),
        }
    }

    pub fn one(&self) -> Coef {
        match self {
            CoefField::Rationals => Coef::Rat(BigRational::one()),
            CoefField::Prime(_) => Coef::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coef {
        match self {
            CoefField::Rationals => Coef::Rat(BigRational::from_integer(BigInt::from(v))),
            CoefField::Prime(p) => Coef::Mod((v.rem_euclid(*p as i64)) as u64),
        }
    }

    /// Builds a coefficient from a signed integer numerator and an unsigned
    /// denominator, as produced by the parser.  Prime fields accept only
    /// denominator 1.
    pub fn from_ratio(&self, numer: BigInt, denom: BigInt) -> Result<Coef> {
        if denom.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        match self {
            CoefField::Rationals => Ok(Coef::Rat(BigRational::new(numer, denom))),
            CoefField::Prime(p) => {
                if !denom.is_one() {
                    return Err(Error::InvalidArgument(
                        "rational coefficient in a prime field".into(),
                    ));
                }
                let p_big = BigInt::from(*p);
                let mut r = &numer % &p_big;
                if r.is_negative() {
                    r += &p_big;
                }
                let digits = r.to_u64_digits().1;
                Ok(Coef::Mod(digits.first().copied().unwrap_or(0)))
            }
        }
    }

    fn modulus(&self) -> u64 {
        match self {
            CoefField::Prime(p) => *p,
            CoefField::Rationals => unreachable!("modulus requested over the rationals"),
        }
    }

    pub fn add(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x + y),
            (Coef::Mod(x), Coef::Mod(y)) => {
                let p = self.modulus() as u128;
                Coef::Mod(((*x as u128 + *y as u128) % p) as u64)
            }
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    pub fn sub(&self, a: &Coef, b: &Coef) -> Coef {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coef) -> Coef {
        match a {
            Coef::Rat(x) => Coef::Rat(-x),
            Coef::Mod(x) => {
                let p = self.modulus();
                Coef::Mod(if *x == 0 { 0 } else { p - *x })
            }
        }
    }

    pub fn mul(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x * y),
            (Coef::Mod(x), Coef::Mod(y)) => {
                let p = self.modulus() as u128;
                Coef::Mod(((*x as u128 * *y as u128) % p) as u64)
            }
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Coef) -> Option<Coef> {
        if a.is_zero() {
            return None;
        }
        match a {
            Coef::Rat(x) => Some(Coef::Rat(x.recip())),
            Coef::Mod(x) => {
                let p = self.modulus();
                // Fermat: x^(p-2) mod p.
                let mut base = *x as u128;
                let modulus = p as u128;
                let mut exp = p - 2;
                let mut acc: u128 = 1;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % modulus;
                    }
                    base = base * base % modulus;
                    exp >>= 1;
                }
                Some(Coef::Mod(acc as u64))
            }
        }
    }

    pub fn div(&self, a: &Coef, b: &Coef) -> Option<Coef> {
        self.inv(b).map(|binv| self.mul(a, &binv))
    }
}
