use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// The coefficient rings a [`Poly`](super::Poly) may live over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    Integers,
    F2,
    Z4,
    Rationals,
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoeffRing::Integers => "Z",
            CoeffRing::F2 => "F2",
            CoeffRing::Z4 => "Z4",
            CoeffRing::Rationals => "Q",
        })
    }
}

/// An exact coefficient ring element.
pub trait Coeff:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const RING: CoeffRing;

    /// Image of an integer under the canonical map `Z -> R`.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
}

/// Coefficient rings that are fields, so polynomial division is available.
pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Option<Self>;
}

/// The prime field with two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2(u8);

impl F2 {
    pub const ZERO: F2 = F2(0);
    pub const ONE: F2 = F2(1);

    pub fn new(v: i64) -> Self {
        F2(v.rem_euclid(2) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Sub for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2(1)
    }
}

impl Coeff for F2 {
    const RING: CoeffRing = CoeffRing::F2;
    fn from_bigint(n: &BigInt) -> Self {
        F2(n.mod_floor(&BigInt::from(2)).to_u8().unwrap_or(0))
    }
}

impl FieldCoeff for F2 {
    fn inv(&self) -> Option<Self> {
        (self.0 == 1).then_some(*self)
    }
}

/// Integers modulo four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Z4(u8);

impl Z4 {
    pub fn new(v: i64) -> Self {
        Z4(v.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Reduction mod 2.
    pub fn to_f2(self) -> F2 {
        F2(self.0 & 1)
    }

    /// The element `2 * x` for `x` in F2, i.e. the embedding F2 -> 2Z4.
    pub fn double_of(x: F2) -> Self {
        Z4(2 * x.0)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Z4 {
    type Output = Z4;
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) & 3)
    }
}

impl Sub for Z4 {
    type Output = Z4;
    fn sub(self, rhs: Z4) -> Z4 {
        Z4((self.0 + 4 - rhs.0) & 3)
    }
}

impl Mul for Z4 {
    type Output = Z4;
    fn mul(self, rhs: Z4) -> Z4 {
        Z4((self.0 * rhs.0) & 3)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    fn neg(self) -> Z4 {
        Z4((4 - self.0) & 3)
    }
}

impl Zero for Z4 {
    fn zero() -> Self {
        Z4(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Z4 {
    fn one() -> Self {
        Z4(1)
    }
}

impl Coeff for Z4 {
    const RING: CoeffRing = CoeffRing::Z4;
    fn from_bigint(n: &BigInt) -> Self {
        Z4(n.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0))
    }
}

impl Coeff for BigInt {
    const RING: CoeffRing = CoeffRing::Integers;
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Coeff for BigRational {
    const RING: CoeffRing = CoeffRing::Rationals;
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}
