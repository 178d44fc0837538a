//! Exact scalars over the rationals and over prime fields `Z_p`.
//!
//! Every [`Scalar`] is kept in canonical form at construction: rationals are
//! reduced fractions with a positive denominator, residues lie in `[0, p)`.
//! Equality of scalars is therefore structural.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, VestError};

/// Largest admissible prime modulus (exclusive). Residue products then fit in `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Which field a scalar, matrix or instance lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldTagRepr", into = "FieldTagRepr")]
pub struct FieldTag(Kind);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Rational,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FieldTagRepr {
    Rational,
    Prime { p: u64 },
}

impl TryFrom<FieldTagRepr> for FieldTag {
    type Error = VestError;

    fn try_from(repr: FieldTagRepr) -> Result<Self> {
        match repr {
            FieldTagRepr::Rational => Ok(FieldTag::RATIONAL),
            FieldTagRepr::Prime { p } => FieldTag::prime(p),
        }
    }
}

impl From<FieldTag> for FieldTagRepr {
    fn from(tag: FieldTag) -> Self {
        match tag.0 {
            Kind::Rational => FieldTagRepr::Rational,
            Kind::Prime(p) => FieldTagRepr::Prime { p },
        }
    }
}

impl FieldTag {
    pub const RATIONAL: FieldTag = FieldTag(Kind::Rational);

    /// `Z_p`. Fails unless `p` is a prime below [`MAX_MODULUS`].
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(VestError::malformed(format!(
                "prime modulus {p} exceeds the supported bound 2^32"
            )));
        }
        if !is_prime_u64(p) {
            return Err(VestError::NotPrime(p));
        }
        Ok(FieldTag(Kind::Prime(p)))
    }

    /// The modulus for a prime field, `None` for the rationals.
    pub fn modulus(self) -> Option<u64> {
        match self.0 {
            Kind::Rational => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self.0, Kind::Rational)
    }

    pub(crate) fn write_canonical(self, out: &mut Vec<u8>) {
        match self.0 {
            Kind::Rational => out.push(0),
            Kind::Prime(p) => {
                out.push(1);
                out.extend_from_slice(&p.to_be_bytes());
            }
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rational => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "Z_{p}"),
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(tag: FieldTag) -> Self {
        Scalar::from_i64(tag, 0)
    }

    pub fn one(tag: FieldTag) -> Self {
        Scalar::from_i64(tag, 1)
    }

    pub fn from_i64(tag: FieldTag, value: i64) -> Self {
        match tag.0 {
            Kind::Rational => Scalar(Repr::Rational(BigRational::from_integer(value.into()))),
            Kind::Prime(p) => Scalar(Repr::Residue {
                value: value.rem_euclid(p as i64) as u64,
                p,
            }),
        }
    }

    /// An integer mapped into the field (reduced mod `p` for prime fields).
    pub fn from_bigint(tag: FieldTag, value: &BigInt) -> Self {
        match tag.0 {
            Kind::Rational => Scalar(Repr::Rational(BigRational::from_integer(value.clone()))),
            Kind::Prime(p) => {
                let r = value.mod_floor(&BigInt::from(p));
                Scalar(Repr::Residue {
                    value: r.to_u64().expect("residue below modulus"),
                    p,
                })
            }
        }
    }

    /// The rational `numer / denom`, normalized.
    pub fn rational(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(VestError::DivisionByZero);
        }
        Ok(Scalar(Repr::Rational(BigRational::new(
            numer.into(),
            denom,
        ))))
    }

    pub fn from_ratio(value: BigRational) -> Self {
        Scalar(Repr::Rational(value))
    }

    pub fn tag(&self) -> FieldTag {
        match self.0 {
            Repr::Rational(_) => FieldTag::RATIONAL,
            Repr::Residue { p, .. } => FieldTag(Kind::Prime(p)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// Numerator and denominator of a rational scalar.
    pub fn as_ratio(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    /// The residue of a prime-field scalar.
    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(value),
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.tag() != other.tag() {
            return Err(VestError::MixedField(self.tag(), other.tag()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_same(other))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_same(&other.neg()))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_same(other))
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(-r)),
            Repr::Residue { value, p } => Scalar(Repr::Residue {
                value: (p - value) % p,
                p: *p,
            }),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(VestError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(r.recip())),
            Repr::Residue { value, p } => Scalar(Repr::Residue {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            }),
        })
    }

    /// Addition for operands already known to share a field.
    pub(crate) fn add_same(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, .. }) => {
                Scalar(Repr::Residue {
                    value: (a + b) % p,
                    p: *p,
                })
            }
            _ => unreachable!("field tags checked by caller"),
        }
    }

    pub(crate) fn mul_same(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => {
                if a.is_zero() || b.is_zero() {
                    return Scalar(Repr::Rational(BigRational::zero()));
                }
                Scalar(Repr::Rational(a * b))
            }
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, .. }) => {
                Scalar(Repr::Residue {
                    value: a * b % p,
                    p: *p,
                })
            }
            _ => unreachable!("field tags checked by caller"),
        }
    }

    /// Parse the textual form: `"a/b"` or `"a"` for rationals, a decimal
    /// integer (reduced mod `p`) for prime fields.
    pub fn parse(tag: FieldTag, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || VestError::malformed(format!("cannot parse scalar {text:?} over {tag}"));
        match tag.0 {
            Kind::Rational => match text.split_once('/') {
                Some((n, d)) => {
                    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                    Scalar::rational(n, d)
                }
                None => Ok(Scalar::from_bigint(
                    tag,
                    &BigInt::from_str(text).map_err(|_| bad())?,
                )),
            },
            Kind::Prime(_) => Ok(Scalar::from_bigint(
                tag,
                &BigInt::from_str(text).map_err(|_| bad())?,
            )),
        }
    }

    pub(crate) fn write_canonical(&self, out: &mut Vec<u8>) {
        match &self.0 {
            Repr::Rational(r) => {
                out.push(match r.numer().sign() {
                    Sign::Minus => 0,
                    Sign::NoSign => 1,
                    Sign::Plus => 2,
                });
                for part in [r.numer().magnitude(), r.denom().magnitude()] {
                    let bytes = part.to_bytes_be();
                    out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
                    out.extend_from_slice(&bytes);
                }
            }
            Repr::Residue { value, .. } => out.extend_from_slice(&value.to_be_bytes()),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rationals print as `a/b` (denominator always present); residues as decimals.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(_) => write!(f, "{self}"),
            Repr::Residue { value, p } => write!(f, "{value} mod {p}"),
        }
    }
}

/// `Z_p` has exactly `p` elements, returned in order `0, 1, …, p-1`.
pub fn enumerate_field(tag: FieldTag) -> Result<Vec<Scalar>> {
    match tag.0 {
        Kind::Rational => Err(VestError::InfiniteField(tag)),
        Kind::Prime(p) => Ok((0..p)
            .map(|value| Scalar(Repr::Residue { value, p }))
            .collect()),
    }
}

pub fn scalar_add(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.add(b)
}

pub fn scalar_mul(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.mul(b)
}

pub fn scalar_neg(a: &Scalar) -> Scalar {
    a.neg()
}

pub fn scalar_inv(a: &Scalar) -> Result<Scalar> {
    a.inv()
}
