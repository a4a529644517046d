use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The prime used when no field is requested explicitly.
pub const DEFAULT_PRIME: u64 = 32003;

/// The ground field `k`: a prime field GF(p) or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

/// A field element. The variant always matches the [`FieldSpec`] that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
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

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Mod(0),
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u64),
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Parses `"3"`, `"-2"` or `"1/2"`. Fractions over GF(p) are interpreted as a·b⁻¹.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::ScalarParse(s.to_string());
        let (num, den) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.iter_u64_digits().next().unwrap_or(0)
                };
                let d = reduce(&den);
                if d == 0 {
                    return Err(bad());
                }
                Ok(Scalar::Mod(mul_mod(reduce(&num), inv_mod(d, *p), *p)))
            }
            FieldSpec::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + p - y) % p),
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => mixed(),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(mul_mod(*x, *y, *p)),
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => mixed(),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Scalar::Mod(inv_mod(*x, *p)),
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => mixed(),
        })
    }

    /// Renders an element; GF(p) elements above p/2 are shown as negatives.
    pub fn format(&self, a: &Scalar) -> String {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => {
                if *x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    x.to_string()
                }
            }
            (_, Scalar::Rat(x)) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            _ => mixed(),
        }
    }
}

#[inline]
pub(crate) fn mul_mod(x: u64, y: u64, p: u64) -> u64 {
    x * y % p
}

#[cold]
fn mixed() -> ! {
    panic!("scalar does not belong to the field it is combined in")
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
            FieldSpec::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let p = s
            .strip_prefix("p:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::FieldParse(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl Scalar {
    /// Sign used when rendering: GF(p) elements above p/2 count as negative.
    pub(crate) fn is_negative_in(&self, field: FieldSpec) -> bool {
        match (self, field) {
            (Scalar::Mod(x), FieldSpec::Prime(p)) => *x > p / 2,
            (Scalar::Rat(x), _) => x.is_negative(),
            _ => false,
        }
    }

    pub(crate) fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("p:32003".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(32003));
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("p:2".parse::<FieldSpec>().unwrap().to_string(), "p:2");
        assert_eq!("p:4".parse::<FieldSpec>(), Err(Error::NotPrime(4)));
        assert_eq!("p:1".parse::<FieldSpec>(), Err(Error::NotPrime(1)));
        assert!(matches!("r".parse::<FieldSpec>(), Err(Error::FieldParse(_))));
        assert!(matches!("p:x".parse::<FieldSpec>(), Err(Error::FieldParse(_))));
        assert_eq!(FieldSpec::default(), FieldSpec::Prime(32003));
    }

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Mod(6));
        assert_eq!(f.mul(&a, &a), f.one());
        for x in 1..7 {
            let s = f.from_i64(x);
            assert_eq!(f.mul(&s, &f.inv(&s).unwrap()), f.one());
        }
        assert_eq!(f.inv(&f.zero()), None);
        assert_eq!(f.parse_scalar("1/2").unwrap(), Scalar::Mod(4));
        assert_eq!(f.format(&Scalar::Mod(6)), "-1");
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Rational;
        let h = f.parse_scalar("-2/4").unwrap();
        assert_eq!(f.format(&h), "-1/2");
        assert_eq!(f.add(&h, &h), f.from_i64(-1));
        assert!(f.parse_scalar("1/0").is_err());
        assert!(f.parse_scalar("abc").is_err());
    }
}
