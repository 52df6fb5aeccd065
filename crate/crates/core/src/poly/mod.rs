//! Exact univariate polynomials over Z, F2, Z4 and Q, and the quotient
//! normal forms that carry UNil coordinates.

mod coeff;
mod dynamic;
mod quotient;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use coeff::{Coeff, CoeffRing, FieldCoeff, F2, Z4};
pub use dynamic::{poly_arith, DynPoly, PolyOp};
pub use quotient::{even_odd_decompose, idem_reduce, versch_reduce, IdemClass, VerschClass};
pub use rational::{artin_schreier_reduce, RationalFunction, RationalFunctionClass};

use crate::error::{Error, Result};
use crate::text::{parse_terms, Factor};

/// Polynomial over Z.
pub type ZPoly = Poly<BigInt>;
/// Polynomial over F2.
pub type F2Poly = Poly<F2>;
/// Polynomial over Z4.
pub type Z4Poly = Poly<Z4>;

/// A univariate polynomial in `t`, stored densely in ascending exponent
/// order with no trailing zero coefficients. The zero polynomial has an
/// empty coefficient vector and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); exp + 1];
        coeffs[exp] = c;
        Poly { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending exponent order.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> C {
        self.coeffs.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    /// Iterates over `(exponent, coefficient)` for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Replaces `t` by `sub` (Horner evaluation in the polynomial ring).
    pub fn substitute(&self, sub: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * sub) + &Self::constant(c.clone());
        }
        acc
    }

    /// Coefficientwise image under a ring map.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Image under the canonical ring map from Z (through `from_bigint`).
    pub fn reduce_from(p: &ZPoly) -> Self {
        p.map(C::from_bigint)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    /// The exponent `k` when `self = t^k`.
    pub fn as_t_power(&self) -> Option<usize> {
        let d = self.degree()?;
        (self.coeffs[d].is_one() && self.coeffs[..d].iter().all(Zero::is_zero)).then_some(d)
    }

    /// Parses the shared polynomial syntax: `3*t^2+2*t^1+1*t^0`, with
    /// shorthand `t`, `t^k` and bare integers. Coefficients are reduced into
    /// the ring.
    pub fn parse(src: &str) -> Result<Self> {
        let mut acc: Vec<C> = Vec::new();
        for term in parse_terms(src)? {
            let mut coeff = BigInt::one();
            let mut exp: i64 = 0;
            for (f, pos) in &term.factors {
                match f {
                    Factor::Int(n) => coeff *= n,
                    Factor::TPow(k) => exp += k,
                    Factor::A | Factor::B => {
                        return Err(Error::parse(
                            *pos,
                            "group elements a, b are not allowed here",
                        ))
                    }
                }
            }
            if exp < 0 {
                return Err(Error::parse(term.pos, "negative exponent in polynomial"));
            }
            if term.negative {
                coeff = -coeff;
            }
            let exp = exp as usize;
            if acc.len() <= exp {
                acc.resize(exp + 1, C::zero());
            }
            acc[exp] = acc[exp].clone() + C::from_bigint(&coeff);
        }
        Ok(Self::new(acc))
    }

    /// Short human form used inside element literals: `t^3 + 2*t`.
    pub fn to_short_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let s = match (c.is_one(), mono.is_empty()) {
                (_, true) => c.to_string(),
                (true, false) => mono,
                (false, false) => format!("{c}*{mono}"),
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl<C: FieldCoeff> Poly<C> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd]
            .inv()
            .expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].clone() - c.clone() * dc.clone();
            }
            quot[i - dd] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn is_divisible_by(&self, divisor: &Self) -> bool {
        self.rem(divisor).is_zero()
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero field element")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g = gcd(self, other)`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let u2 = &u0 - &(&q * &u1);
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, u0),
            Some(l) => {
                let li = l.inv().expect("nonzero field element");
                (r0.scale(&li), s0.scale(&li), u0.scale(&li))
            }
        }
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inv_mod(&self, modulus: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(modulus).ext_gcd(modulus);
        g.is_one().then(|| s.rem(modulus))
    }
}

impl F2Poly {
    /// Enumerates every polynomial of degree at most `max_degree`,
    /// in increasing order of the coefficient bit pattern.
    pub fn all_up_to_degree(max_degree: usize) -> impl Iterator<Item = F2Poly> {
        (0u64..(1u64 << (max_degree + 1))).map(Self::from_bits)
    }

    /// Polynomial whose coefficient of `t^i` is bit `i` of `bits`.
    pub fn from_bits(bits: u64) -> Self {
        Self::new((0..64).map(|i| F2::new(((bits >> i) & 1) as i64)).collect())
    }

    pub fn to_bits(&self) -> Option<u64> {
        if self.coeffs.len() > 64 {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, c)| acc | ((c.value() as u64) << i)),
        )
    }

    /// The Frobenius square `p(t)^2 = p(t^2)`.
    pub fn frobenius(&self) -> Self {
        let mut coeffs = vec![F2::ZERO; self.coeffs.len() * 2];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = *c;
        }
        Self::new(coeffs)
    }

    /// Lift to Z with coefficients in {0, 1}.
    pub fn lift(&self) -> ZPoly {
        self.map(|c| BigInt::from(c.value()))
    }

    /// Lift to Z4 with coefficients in {0, 1}.
    pub fn lift_z4(&self) -> Z4Poly {
        self.map(|c| Z4::new(c.value() as i64))
    }

    /// `2 * self` inside Z4[t].
    pub fn double_z4(&self) -> Z4Poly {
        self.map(|c| Z4::double_of(*c))
    }
}

impl Z4Poly {
    pub fn to_f2(&self) -> F2Poly {
        self.map(|c| c.to_f2())
    }

    /// For a polynomial with all coefficients in {0, 2}, returns `self / 2`
    /// as an F2 polynomial.
    pub fn halve(&self) -> Option<F2Poly> {
        if self.coeffs.iter().any(|c| c.value() & 1 == 1) {
            return None;
        }
        Some(self.map(|c| F2::new((c.value() / 2) as i64)))
    }
}

/// Orders polynomials by their ascending coefficient vectors.
impl<C: Coeff + Ord> PartialOrd for Poly<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Coeff + Ord> Ord for Poly<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

/// Canonical long form: `3*t^2+2*t^1+1*t^0`, descending exponents, `0` for
/// the zero polynomial.
impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            write!(f, "{c}*t^{e}")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", C::RING, self)
    }
}
