use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{F2Poly, Poly, Z4Poly, F2, Z4};
use crate::error::{Error, Result};

/// Class in `F2[t] / {f^2 - f}`. The representative is supported on
/// exponent 0 and odd exponents only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IdemClass {
    rep: F2Poly,
}

/// Class in `t Z4[t] / {2p(t^2) - 2p(t)}`. The representative has zero
/// constant term and coefficients in {0, 1} at every even exponent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VerschClass {
    rep: Z4Poly,
}

/// Canonical representative of `raw` modulo `{f^2 - f : f in F2[t]}`:
/// every `t^(2k)`, `k >= 1`, is rewritten as `t^k` until none remain.
pub fn idem_reduce(raw: &F2Poly) -> IdemClass {
    let mut c: Vec<F2> = raw.coeffs().to_vec();
    // Descending sweep: t^(2k) moves to t^k < 2k, which the sweep visits later.
    for e in (2..c.len()).rev() {
        if e % 2 == 0 && c[e] == F2::ONE {
            c[e] = F2::ZERO;
            c[e / 2] = c[e / 2] + F2::ONE;
        }
    }
    IdemClass { rep: Poly::new(c) }
}

/// Canonical representative of `raw` modulo `{2p(t^2) - 2p(t)}`: at every
/// even exponent `2k` whose coefficient is 2 or 3, subtract `2t^(2k) - 2t^k`.
pub fn versch_reduce(raw: &Z4Poly) -> Result<VerschClass> {
    if !raw.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm(raw.to_string()));
    }
    let mut c: Vec<Z4> = raw.coeffs().to_vec();
    let two = Z4::new(2);
    for e in (2..c.len()).rev() {
        if e % 2 == 0 && c[e].value() >= 2 {
            c[e] = c[e] - two;
            c[e / 2] = c[e / 2] + two;
        }
    }
    Ok(VerschClass { rep: Poly::new(c) })
}

/// Splits `p = p_ev^2 + t * p_od^2` over F2.
pub fn even_odd_decompose(p: &F2Poly) -> (F2Poly, F2Poly) {
    let c = p.coeffs();
    let ev = c.iter().step_by(2).copied().collect();
    let od = c.iter().skip(1).step_by(2).copied().collect();
    (Poly::new(ev), Poly::new(od))
}

impl IdemClass {
    pub fn zero() -> Self {
        IdemClass {
            rep: F2Poly::zero(),
        }
    }

    pub fn representative(&self) -> &F2Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(idem_reduce(&F2Poly::parse(src)?))
    }
}

impl VerschClass {
    pub fn zero() -> Self {
        VerschClass {
            rep: Z4Poly::zero(),
        }
    }

    pub fn representative(&self) -> &Z4Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn parse(src: &str) -> Result<Self> {
        versch_reduce(&Z4Poly::parse(src)?)
    }

    /// `n * self` for an integer `n`.
    pub fn times(&self, n: i64) -> Self {
        versch_reduce(&self.rep.scale(&Z4::new(n))).expect("constant term stays zero")
    }
}

impl Add for &IdemClass {
    type Output = IdemClass;
    fn add(self, rhs: &IdemClass) -> IdemClass {
        idem_reduce(&(&self.rep + &rhs.rep))
    }
}

impl Add for &VerschClass {
    type Output = VerschClass;
    fn add(self, rhs: &VerschClass) -> VerschClass {
        versch_reduce(&(&self.rep + &rhs.rep)).expect("constant term stays zero")
    }
}

impl Sub for &VerschClass {
    type Output = VerschClass;
    fn sub(self, rhs: &VerschClass) -> VerschClass {
        versch_reduce(&(&self.rep - &rhs.rep)).expect("constant term stays zero")
    }
}

impl Neg for &VerschClass {
    type Output = VerschClass;
    fn neg(self) -> VerschClass {
        versch_reduce(&-&self.rep).expect("constant term stays zero")
    }
}

impl fmt::Display for IdemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl fmt::Debug for IdemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdemClass({})", self.rep)
    }
}

impl fmt::Display for VerschClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl fmt::Debug for VerschClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VerschClass({})", self.rep)
    }
}

impl TryFrom<String> for IdemClass {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        IdemClass::parse(&s)
    }
}

impl From<IdemClass> for String {
    fn from(c: IdemClass) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for VerschClass {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        VerschClass::parse(&s)
    }
}

impl From<VerschClass> for String {
    fn from(c: VerschClass) -> String {
        c.to_string()
    }
}
