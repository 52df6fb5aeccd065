use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ZPoly;

/// The symmetry sign `ε ∈ {+1, -1}` of a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::parse(0, format!("sign must be +1 or -1, got {v}"))),
        }
    }

    /// `(-1)^n`.
    pub fn of_parity(n: i64) -> Self {
        if n.is_even() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(Error::parse(0, format!("invalid sign '{other}'"))),
        }
    }
}

/// A ring with involution whose elements can be compared modulo the
/// quadratic indeterminacy `{v - ε v̄}`.
pub trait InvolutiveRing:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn parse(src: &str) -> Result<Self>;

    fn conj(&self) -> Self;

    /// Whether `self - other` lies in the additive subgroup `{v - ε v̄}`.
    fn quad_equal(&self, other: &Self, eps: Sign) -> bool;

    /// The inverse of `self` when it is a unit of the form `±g`.
    fn unit_inverse(&self) -> Option<Self>;

    /// `self / 2` when every coefficient is even.
    fn halve(&self) -> Option<Self>;
}

/// `Z[t]` with the trivial involution.
impl InvolutiveRing for ZPoly {
    fn from_i64(n: i64) -> Self {
        ZPoly::constant(BigInt::from(n))
    }

    fn parse(src: &str) -> Result<Self> {
        ZPoly::parse(src)
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn quad_equal(&self, other: &Self, eps: Sign) -> bool {
        let diff = self - other;
        match eps {
            // v - v̄ = 0
            Sign::Plus => diff.is_zero(),
            // v + v̄ = 2v
            Sign::Minus => diff.coeffs().iter().all(|c| c.is_even()),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        let c = self.constant_term();
        (self.degree() == Some(0) && c.abs().is_one()).then(|| self.clone())
    }

    fn halve(&self) -> Option<Self> {
        let two = BigInt::from(2);
        self.coeffs()
            .iter()
            .all(|c| c.is_even())
            .then(|| self.map(|c| c / &two))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_polynomial_indeterminacy() {
        let x = ZPoly::from_ints(&[1, 3]);
        let y = ZPoly::from_ints(&[3, 1]);
        assert!(x.quad_equal(&y, Sign::Minus));
        assert!(!x.quad_equal(&y, Sign::Plus));
        assert!(x.quad_equal(&x, Sign::Plus));
    }

    #[test]
    fn integer_units() {
        assert_eq!(
            ZPoly::from_i64(-1).unit_inverse(),
            Some(ZPoly::from_i64(-1))
        );
        assert_eq!(ZPoly::from_i64(2).unit_inverse(), None);
        assert_eq!(ZPoly::t().unit_inverse(), None);
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("-1".parse::<Sign>().unwrap(), Sign::Minus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::of_parity(5), Sign::Minus);
    }
}
