use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    /// `numer / denom`, reduced. Fails on a zero denominator.
    pub fn from_ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    /// Combined bit length of numerator and denominator; used as the pivot
    /// preference in elimination.
    pub fn bit_size(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }

    /// Nearest-value conversion, only for reporting.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p` or `p/q` with optional sign on `p`; `q` must be nonzero.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Scalar::from_integer(parse_int(s)?)),
            Some((p, q)) => {
                if q.starts_with(['-', '+']) {
                    return Err(bad());
                }
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(Error::ParseRational(String::from(s)));
                }
                Scalar::from_ratio(parse_int(p)?, q)
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_integer(n)
    }
}

impl PartialEq<i64> for Scalar {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Scalar {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $amethod(&mut self, rhs: Scalar) {
                self.0.$amethod(rhs.0);
            }
        }
        impl<'a> $atr<&'a Scalar> for Scalar {
            fn $amethod(&mut self, rhs: &'a Scalar) {
                self.0.$amethod(&rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = Scalar::from_ratio(4, -6).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
        assert_eq!(format!("{x}"), "-2/3");
        assert_eq!(format!("{}", q("10/5")), "2");
    }

    #[test]
    fn parse_and_reject() {
        assert_eq!(q("1/2") + q("1/2"), Scalar::one());
        assert_eq!(q("-3"), Scalar::from(-3));
        assert_eq!(q("+7/14"), q("1/2"));
        for bad in ["1/0", "", "/3", "1/", "1/-2", "a", "1.5", "1 /2", "--1"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert!(Scalar::zero().recip().is_err());
        assert!(Scalar::from_ratio(1, 0).is_err());
    }
}
