//! Rational functions over F2 and their classes modulo `{g^2 - g}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{idem_reduce, F2Poly, IdemClass};
use crate::error::{Error, Result};

/// An element of `F2(t)` in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: F2Poly,
    den: F2Poly,
}

impl RationalFunction {
    pub fn new(num: F2Poly, den: F2Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: F2Poly, den: F2Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        RationalFunction {
            num: num.div_rem(&g).0,
            den: den.div_rem(&g).0,
        }
    }

    pub fn from_poly(p: F2Poly) -> Self {
        RationalFunction {
            num: p,
            den: F2Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(F2Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(F2Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &F2Poly {
        &self.num
    }

    pub fn denominator(&self) -> &F2Poly {
        &self.den
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| RationalFunction {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Parses `num` or `num / den` in the polynomial syntax.
    pub fn parse(src: &str) -> Result<Self> {
        match src.split_once('/') {
            None => Ok(Self::from_poly(F2Poly::parse(src)?)),
            Some((n, d)) => {
                let n = n.trim().trim_start_matches('(').trim_end_matches(')');
                let d = d.trim().trim_start_matches('(').trim_end_matches(')');
                Self::new(F2Poly::parse(n)?, F2Poly::parse(d)?)
            }
        }
    }

    /// The Artin–Schreier class of `self`.
    pub fn as_class(&self) -> RationalFunctionClass {
        reduce_fraction(&self.num, &self.den)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        // characteristic two
        self + rhs
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// Canonical class of a rational function in `F2(t) / {g^2 - g}`.
///
/// The polynomial part is idempotent-reduced; each principal part at a
/// monic irreducible `P` is written as `sum a_j / P^j` with `deg a_j <
/// deg P` and only odd orders `j` present.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionClass {
    polynomial_part: IdemClass,
    pole_parts: BTreeMap<(F2Poly, usize), F2Poly>,
}

impl RationalFunctionClass {
    pub fn zero() -> Self {
        RationalFunctionClass {
            polynomial_part: IdemClass::zero(),
            pole_parts: BTreeMap::new(),
        }
    }

    pub fn from_polynomial_class(c: IdemClass) -> Self {
        RationalFunctionClass {
            polynomial_part: c,
            pole_parts: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.polynomial_part.is_zero() && self.pole_parts.is_empty()
    }

    pub fn polynomial_part(&self) -> &IdemClass {
        &self.polynomial_part
    }

    /// Principal parts keyed by `(place, order)`.
    pub fn pole_parts(&self) -> &BTreeMap<(F2Poly, usize), F2Poly> {
        &self.pole_parts
    }

    pub fn is_polynomial(&self) -> bool {
        self.pole_parts.is_empty()
    }

    /// The canonical representative as a rational function.
    pub fn to_rational_function(&self) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(self.polynomial_part.representative().clone());
        for ((place, order), a) in &self.pole_parts {
            let mut den = F2Poly::one();
            for _ in 0..*order {
                den = &den * place;
            }
            acc = &acc + &RationalFunction::normalized(a.clone(), den);
        }
        acc
    }
}

impl Add for &RationalFunctionClass {
    type Output = RationalFunctionClass;
    fn add(self, rhs: &RationalFunctionClass) -> RationalFunctionClass {
        (&self.to_rational_function() + &rhs.to_rational_function()).as_class()
    }
}

impl fmt::Display for RationalFunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.polynomial_part.is_zero() || self.pole_parts.is_empty() {
            parts.push(self.polynomial_part.to_string());
        }
        for ((place, order), a) in &self.pole_parts {
            parts.push(format!("({a})/({place})^{order}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for RationalFunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionClass({self})")
    }
}

/// Canonical representative of `num / den` in `F2(t) / {g^2 - g}`.
pub fn artin_schreier_reduce(num: &F2Poly, den: &F2Poly) -> Result<RationalFunctionClass> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(reduce_fraction(num, den))
}

fn reduce_fraction(num: &F2Poly, den: &F2Poly) -> RationalFunctionClass {
    let f = RationalFunction::normalized(num.clone(), den.clone());
    let (quot, rem) = f.num.div_rem(&f.den);
    let mut pole_parts = BTreeMap::new();
    for (place, mult) in factor(&f.den) {
        let mut coeffs = principal_part(&rem, &f.den, &place, mult);
        reduce_principal_part(&place, &mut coeffs);
        for (j, a) in coeffs.into_iter().enumerate() {
            if !a.is_zero() {
                pole_parts.insert((place.clone(), j), a);
            }
        }
    }
    RationalFunctionClass {
        polynomial_part: idem_reduce(&quot),
        pole_parts,
    }
}

/// Factorization into monic irreducibles by trial division, in increasing
/// order of the divisor's bit pattern.
pub(crate) fn factor(p: &F2Poly) -> Vec<(F2Poly, usize)> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().is_some_and(|deg| 2 * d <= deg) {
        for bits in (1u64 << d)..(1u64 << (d + 1)) {
            let cand = F2Poly::from_bits(bits);
            let mut mult = 0;
            while rest.is_divisible_by(&cand) {
                rest = rest.div_rem(&cand).0;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
        }
        d += 1;
    }
    if rest.degree().is_some_and(|deg| deg > 0) {
        match out.iter_mut().find(|(q, _)| *q == rest) {
            Some(entry) => entry.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort();
    out
}

/// Coefficients `a_1..a_e` (index 0 unused) of the principal part of
/// `rem / den` at `place`, where `place^e` exactly divides `den`.
fn principal_part(rem: &F2Poly, den: &F2Poly, place: &F2Poly, mult: usize) -> Vec<F2Poly> {
    let mut pe = F2Poly::one();
    for _ in 0..mult {
        pe = &pe * place;
    }
    let cofactor = den.div_rem(&pe).0;
    let inv = cofactor.inv_mod(&pe).expect("coprime cofactor");
    let mut r = (rem * &inv).rem(&pe);
    // place-adic digits: r = sum_{j<e} d_j place^j, so r / place^e has
    // coefficient d_j at order e - j.
    let mut coeffs = vec![F2Poly::zero(); mult + 1];
    for j in 0..mult {
        let (q, d) = r.div_rem(place);
        coeffs[mult - j] = d;
        r = q;
    }
    coeffs
}

/// Removes every even-order term by subtracting `g^2 - g` with
/// `g = c / place^m`, from the top order down.
fn reduce_principal_part(place: &F2Poly, coeffs: &mut [F2Poly]) {
    let deg = place.degree().expect("nonconstant place");
    for j in (2..coeffs.len()).rev() {
        if j % 2 == 1 || coeffs[j].is_zero() {
            continue;
        }
        let c = sqrt_mod(&coeffs[j], place, deg);
        let (v, u) = (&c * &c).div_rem(place);
        debug_assert_eq!(u, coeffs[j]);
        coeffs[j] = F2Poly::zero();
        coeffs[j - 1] = &coeffs[j - 1] + &v;
        let m = j / 2;
        coeffs[m] = &coeffs[m] + &c;
    }
}

/// Square root in the field `F2[t]/(place)` of order `2^deg`: `a^(2^(deg-1))`.
fn sqrt_mod(a: &F2Poly, place: &F2Poly, deg: usize) -> F2Poly {
    let mut x = a.rem(place);
    for _ in 0..deg.saturating_sub(1) {
        x = (&x * &x).rem(place);
    }
    x
}
