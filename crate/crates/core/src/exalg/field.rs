//! Ground fields and their scalars.
//!
//! Two fields are supported: the rationals (arbitrary precision) and prime
//! fields GF(p) with p < 2^31. A [`Scalar`] always knows which field it lives
//! in; mixing fields in one arithmetic operation is a programming error and
//! panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field: either ℚ or GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    modulus: Option<u32>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub const fn rational() -> Self {
        FieldSpec { modulus: None }
    }

    /// GF(p). Fails unless `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(FieldSpec {
            modulus: Some(p as u32),
        })
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    pub fn is_finite(&self) -> bool {
        self.modulus.is_some()
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        self.modulus.map(u64::from)
    }

    pub fn zero(&self) -> Scalar {
        match self.modulus {
            None => Scalar::Rational(BigRational::zero()),
            Some(p) => Scalar::Residue {
                value: 0,
                modulus: p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.modulus {
            None => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Some(p) => Scalar::Residue {
                value: n.rem_euclid(i64::from(p)) as u32,
                modulus: p,
            },
        }
    }

    /// The residue `k mod p`; for ℚ the integer `k`.
    pub fn element(&self, k: u32) -> Scalar {
        self.from_i64(i64::from(k))
    }

    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// Standard basis vector `e_i` of length `n`.
    pub fn unit(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    /// Parse `"a"` or `"a/b"`. Over GF(p) the value is reduced mod p.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Parse(format!("malformed scalar {s:?}"));
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match self.modulus {
            None => Ok(Scalar::Rational(BigRational::new(num, den))),
            Some(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u32().unwrap();
                let d = den.mod_floor(&pb).to_u32().unwrap();
                if d == 0 {
                    return Err(Error::Parse(format!(
                        "denominator of {s:?} vanishes mod {p}"
                    )));
                }
                let n = Scalar::Residue {
                    value: n,
                    modulus: p,
                };
                let d = Scalar::Residue {
                    value: d,
                    modulus: p,
                };
                Ok(&n * &d.inv().unwrap())
            }
        }
    }

    pub fn describe(&self) -> String {
        match self.modulus {
            None => "Q".to_string(),
            Some(p) => format!("GF({p})"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// `Q`, `rational`, `gf5`, `GF(5)` or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" || t == "rationals" {
            return Ok(FieldSpec::rational());
        }
        let digits = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("gf"))
            .unwrap_or(&t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("cannot read a field from {s:?}")))?;
        FieldSpec::prime(p)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// An exact field element.
///
/// Rationals are kept reduced with a positive denominator (guaranteed by
/// `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32
}

fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1u32 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::rational(),
            Scalar::Residue { modulus, .. } => FieldSpec {
                modulus: Some(*modulus),
            },
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, u64::from(*modulus) - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// The residue as an integer in `[0, p)`; `None` over ℚ.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// `self += a * b` without intermediate clones on the residue path.
    #[inline]
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, .. },
                Scalar::Residue { value: y, .. },
            ) => {
                let p = u64::from(*modulus);
                *value = ((u64::from(*value) + u64::from(*x) * u64::from(*y)) % p) as u32;
            }
            _ => {
                let prod = a * b;
                *self = &*self + &prod;
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let s = u64::from(*a) + u64::from(*b);
                Scalar::Residue {
                    value: (s % u64::from(*p)) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let s = u64::from(*a) + u64::from(*p) - u64::from(*b);
                Scalar::Residue {
                    value: (s % u64::from(*p)) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Residue {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// Sign of a rational (always non-negative for residues).
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_is_checked() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn rational_strings_are_canonical() {
        let q = FieldSpec::rational();
        assert_eq!(q.parse("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse("-7/2").unwrap().to_string(), "-7/2");
        assert_eq!(q.parse("3").unwrap().to_string(), "3");
        assert_eq!(q.parse("0/5").unwrap().to_string(), "0");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn residues_reduce() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.parse("-2").unwrap().to_string(), "3");
        assert_eq!(f.parse("1/2").unwrap().to_string(), "3");
        assert_eq!(f.parse("12").unwrap().to_string(), "2");
        assert!(f.parse("1/5").is_err());
        let three = f.element(3);
        assert_eq!(three.inv().unwrap().to_string(), "2");
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn add_mul_matches_separate_ops() {
        for f in [FieldSpec::rational(), FieldSpec::prime(7).unwrap()] {
            let mut acc = f.from_i64(3);
            acc.add_mul(&f.from_i64(4), &f.from_i64(-5));
            assert_eq!(acc, f.from_i64(-17));
        }
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let a = FieldSpec::prime(3).unwrap().one();
        let b = FieldSpec::rational().one();
        let _ = &a + &b;
    }
}
