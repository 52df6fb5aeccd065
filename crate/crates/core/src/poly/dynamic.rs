use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CoeffRing, Poly, F2, Z4};
use crate::error::{Error, Result};

/// A polynomial whose coefficient ring is only known at runtime, as when
/// it comes from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynPoly {
    Integers(Poly<BigInt>),
    F2(Poly<F2>),
    Z4(Poly<Z4>),
    Rationals(Poly<BigRational>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    /// Replace `t` in the left operand by the right operand.
    Substitute,
}

impl DynPoly {
    pub fn parse(ring: CoeffRing, src: &str) -> Result<Self> {
        Ok(match ring {
            CoeffRing::Integers => DynPoly::Integers(Poly::parse(src)?),
            CoeffRing::F2 => DynPoly::F2(Poly::parse(src)?),
            CoeffRing::Z4 => DynPoly::Z4(Poly::parse(src)?),
            CoeffRing::Rationals => DynPoly::Rationals(Poly::parse(src)?),
        })
    }

    pub fn ring(&self) -> CoeffRing {
        match self {
            DynPoly::Integers(_) => CoeffRing::Integers,
            DynPoly::F2(_) => CoeffRing::F2,
            DynPoly::Z4(_) => CoeffRing::Z4,
            DynPoly::Rationals(_) => CoeffRing::Rationals,
        }
    }
}

fn apply<C: super::Coeff>(lhs: &Poly<C>, rhs: &Poly<C>, op: PolyOp) -> Poly<C> {
    match op {
        PolyOp::Add => lhs + rhs,
        PolyOp::Sub => lhs - rhs,
        PolyOp::Mul => lhs * rhs,
        PolyOp::Substitute => lhs.substitute(rhs),
    }
}

/// Exact arithmetic on runtime-typed polynomials; operands over different
/// coefficient rings are rejected.
pub fn poly_arith(lhs: &DynPoly, rhs: &DynPoly, op: PolyOp) -> Result<DynPoly> {
    Ok(match (lhs, rhs) {
        (DynPoly::Integers(a), DynPoly::Integers(b)) => DynPoly::Integers(apply(a, b, op)),
        (DynPoly::F2(a), DynPoly::F2(b)) => DynPoly::F2(apply(a, b, op)),
        (DynPoly::Z4(a), DynPoly::Z4(b)) => DynPoly::Z4(apply(a, b, op)),
        (DynPoly::Rationals(a), DynPoly::Rationals(b)) => DynPoly::Rationals(apply(a, b, op)),
        _ => {
            return Err(Error::RingMismatch {
                lhs: lhs.ring().to_string(),
                rhs: rhs.ring().to_string(),
            })
        }
    })
}

impl fmt::Display for DynPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynPoly::Integers(p) => p.fmt(f),
            DynPoly::F2(p) => p.fmt(f),
            DynPoly::Z4(p) => p.fmt(f),
            DynPoly::Rationals(p) => p.fmt(f),
        }
    }
}
