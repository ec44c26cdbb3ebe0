use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Point;
use crate::arith::{make_primitive, primitive_integer, Scalar, Vector};
use crate::{Error, Result};

/// The closed affine halfspace `a0 + a·x >= 0`.
///
/// Coefficients are kept as a primitive integer vector `(a0, a1, .., ad)`:
/// any positive rescaling describes the same halfspace, and dividing out the
/// content makes the representative unique. Equality, ordering and hashing
/// therefore compare halfspaces, not representatives.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    coeffs: Vec<BigInt>,
}

impl Halfspace {
    pub fn new(offset: Scalar, normal: Vector) -> Result<Self> {
        let mut all = Vec::with_capacity(normal.len() + 1);
        all.push(offset);
        all.extend(normal.into_inner());
        Halfspace::from_coefficients(&all)
    }

    /// From `(a0, a1, .., ad)`.
    pub fn from_coefficients(coeffs: &[Scalar]) -> Result<Self> {
        Halfspace::from_integers(primitive_integer(coeffs))
    }

    pub fn from_integers(mut coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 || coeffs[1..].iter().all(Zero::is_zero) {
            return Err(Error::ZeroNormal);
        }
        make_primitive(&mut coeffs);
        Ok(Halfspace { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Halfspace::from_integers(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn offset(&self) -> Scalar {
        Scalar::from_integer(self.coeffs[0].clone())
    }

    pub fn normal(&self) -> Vector {
        self.coeffs[1..].iter().cloned().map(Scalar::from_integer).collect()
    }

    /// The complementary closed halfspace `-(a0 + a·x) >= 0`.
    pub fn flipped(&self) -> Halfspace {
        Halfspace { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Representative for a hyperplane used as an equation: the sign is
    /// chosen so that the first nonzero normal coefficient is positive.
    pub fn as_equation(&self) -> Halfspace {
        let first = self.coeffs[1..].iter().find(|c| !c.is_zero()).expect("nonzero normal");
        if first.is_negative() {
            self.flipped()
        } else {
            self.clone()
        }
    }

    /// `a0 + a·p`.
    pub fn evaluate(&self, p: &Point) -> Result<Scalar> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.dim() });
        }
        let mut acc = self.offset();
        for (a, x) in self.coeffs[1..].iter().zip(p.coords().iter()) {
            if !a.is_zero() {
                acc += Scalar::from_integer(a.clone()) * x;
            }
        }
        Ok(acc)
    }

    /// Sign of the evaluation at a point given in homogeneous integer
    /// coordinates `(D, D·x)` with `D > 0`.
    pub fn sign_homogeneous(&self, hom: &[BigInt]) -> i8 {
        debug_assert_eq!(hom.len(), self.coeffs.len());
        let mut acc = BigInt::zero();
        for (a, x) in self.coeffs.iter().zip(hom) {
            if !a.is_zero() && !x.is_zero() {
                acc += a * x;
            }
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Halfspace[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_unique() {
        let a = Halfspace::from_coefficients(&[
            "3/2".parse().unwrap(),
            Scalar::from(-1),
            Scalar::from(-1),
        ])
        .unwrap();
        let b = Halfspace::from_ints(&[6, -4, -4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(alloc::format!("{a}"), "3 -2 -2");
        assert_ne!(a, a.flipped());
        assert_eq!(a.flipped().as_equation(), a.as_equation());
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(Halfspace::from_ints(&[1, 0, 0]), Err(Error::ZeroNormal));
        assert_eq!(Halfspace::from_ints(&[1]), Err(Error::ZeroNormal));
    }

    #[test]
    fn evaluate_examples() {
        let h = Halfspace::from_ints(&[1, -1, -1]).unwrap();
        assert_eq!(h.evaluate(&Point::from_ints(&[0, 0])).unwrap(), Scalar::one());
        let half: Scalar = "1/2".parse().unwrap();
        assert!(h.evaluate(&Point::new(alloc::vec![half.clone(), half])).unwrap().is_zero());
        assert_eq!(h.evaluate(&Point::from_ints(&[1, 1])).unwrap(), Scalar::from(-1));
        assert!(h.evaluate(&Point::from_ints(&[1, 1, 1])).is_err());
    }
}
