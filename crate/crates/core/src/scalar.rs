//! Exact scalar types: trait aliases over num-traits and Gaussian rationals.
//!
//! Everything downstream is exact. Matrices are generic over [`Ring`] (or
//! [`Field`] where division is needed); the concrete instantiations used by
//! the rest of the crate are `BigInt`, `BigRational` and
//! `Gaussian<BigRational>`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring scalar usable as a matrix entry.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + fmt::Debug
    + fmt::Display
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + fmt::Debug
        + fmt::Display
{
}

/// Ring with exact division by nonzero elements.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Gaussian scalar `re + im·i` over an exact base ring.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T: Ring> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }

    pub fn from_re(re: T) -> Self {
        Gaussian { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Gaussian { re: T::zero(), im: T::one() }
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl<T: Ring> Add for Gaussian<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        // exact-rational adds renormalize, so skipping zeros is a real win
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        Gaussian { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Ring> Sub for Gaussian<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Ring> Neg for Gaussian<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl<T: Ring> Mul for Gaussian<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Gaussian { re: T::zero(), im: T::zero() };
        }
        // purely real and purely imaginary factors are the common case
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gaussian { re: self.re * rhs.re, im: T::zero() };
        }
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Gaussian { re, im }
    }
}

impl<T: Field> Div for Gaussian<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // (a+bi)/(c+di) = (a+bi)(c-di) / (c²+d²)
        let norm = rhs.re.clone() * rhs.re.clone() + rhs.im.clone() * rhs.im.clone();
        assert!(!norm.is_zero(), "division by zero Gaussian scalar");
        let num = self * rhs.conj();
        Gaussian { re: num.re / norm.clone(), im: num.im / norm }
    }
}

impl<T: Ring> Zero for Gaussian<T> {
    fn zero() -> Self {
        Gaussian { re: T::zero(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: Ring> One for Gaussian<T> {
    fn one() -> Self {
        Gaussian { re: T::one(), im: T::zero() }
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl<T: Ring + Signed> fmt::Display for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Gaussian rational, the scalar field for all algebra-side computations.
pub type GaussRat = Gaussian<BigRational>;

impl GaussRat {
    /// Parse from the serialization pair `(re, im)` of rational strings.
    pub fn from_rat_strs(re: &str, im: &str) -> Option<GaussRat> {
        let parse = |s: &str| -> Option<BigRational> { s.parse().ok() };
        Some(Gaussian::new(parse(re)?, parse(im)?))
    }

    pub fn from_int(n: i64) -> GaussRat {
        Gaussian::from_re(BigRational::from_integer(n.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRat {
        Gaussian::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = g(1, 2);
        let b = g(3, -1);
        assert_eq!(a.clone() * b.clone(), g(5, 5));
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert_eq!(a.clone() - a.clone(), Gaussian::zero());
        assert_eq!(GaussRat::i() * GaussRat::i(), -GaussRat::one());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let a = g(2, 3);
        let b = g(-1, 5);
        assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
    }
}
