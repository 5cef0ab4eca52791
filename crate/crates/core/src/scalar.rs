//! Exact scalar fields with a conjugation involution.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// Rationals, the Euclidean scalar field. Conjugation is the identity.
pub type Rational = BigRational;

/// An exact field with conjugation.
///
/// Every kernel operation is generic over this trait. Equality is exact.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The field automorphism `x -> conj(x)`; an involution.
    fn conj(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// True when the conjugation is the identity on the whole field.
    fn is_real_field() -> bool;

    /// `|x|^2 = conj(x) x`, which lies in the real subfield.
    fn norm_sqr(&self) -> Self {
        self.conj() * self.clone()
    }
}

impl Scalar for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_real_field() -> bool {
        true
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Gaussian rationals `re + im i`, the Hermitian scalar field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian::new(Rational::from_i64(re), Rational::from_i64(im))
    }

    pub fn i() -> Self {
        Gaussian::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl From<Rational> for Gaussian {
    fn from(re: Rational) -> Self {
        Gaussian::new(re, Rational::zero())
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "({}-{}i)", self.re, -self.im.clone())
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    /// Panics on division by zero, like the rational field.
    fn div(self, rhs: Gaussian) -> Gaussian {
        let d = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num = self * rhs.conj();
        Gaussian::new(num.re / d.clone(), num.im / d)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::new(Rational::one(), Rational::zero())
    }
}

impl Scalar for Gaussian {
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    fn from_i64(v: i64) -> Self {
        Gaussian::from_ints(v, 0)
    }

    fn is_real_field() -> bool {
        false
    }
}
