//! The integral group ring `Z[D_∞]` of `D_∞ = <a, b | a² = b² = 1>`, with
//! `t = ba`. Every group element is written uniquely as `t^k a^ε`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::ZPoly;
use crate::ring::{InvolutiveRing, Sign};
use crate::text::{parse_terms, Factor};

/// The orientation character `w : D_∞ → {±1}`, fixed per ring.
pub trait Character: Copy + Eq + Ord + fmt::Debug + Default + Send + Sync + 'static {
    const W_A: Sign;
    const W_B: Sign;
}

/// `w ≡ +1`: the ring `Z[Z_2 * Z_2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Untwisted;

/// `w(a) = w(b) = -1`: the ring `Z[Z_2^- * Z_2^-]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Twisted;

impl Character for Untwisted {
    const W_A: Sign = Sign::Plus;
    const W_B: Sign = Sign::Plus;
}

impl Character for Twisted {
    const W_A: Sign = Sign::Minus;
    const W_B: Sign = Sign::Minus;
}

/// `t^power a^(flip as u8)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub power: i64,
    pub flip: bool,
}

impl GroupElement {
    pub const ONE: GroupElement = GroupElement {
        power: 0,
        flip: false,
    };
    pub const A: GroupElement = GroupElement {
        power: 0,
        flip: true,
    };
    pub const B: GroupElement = GroupElement {
        power: 1,
        flip: true,
    };
    pub const T: GroupElement = GroupElement {
        power: 1,
        flip: false,
    };

    pub fn t_pow(k: i64) -> Self {
        GroupElement {
            power: k,
            flip: false,
        }
    }

    pub fn t_pow_a(k: i64) -> Self {
        GroupElement {
            power: k,
            flip: true,
        }
    }

    /// `(t^j a^δ)(t^k a^ε) = t^(j + (-1)^δ k) a^(δ ⊕ ε)`.
    pub fn compose(self, rhs: GroupElement) -> GroupElement {
        let k = if self.flip { -rhs.power } else { rhs.power };
        GroupElement {
            power: self
                .power
                .checked_add(k)
                .expect("dihedral exponent overflow"),
            flip: self.flip ^ rhs.flip,
        }
    }

    pub fn inverse(self) -> GroupElement {
        if self.flip {
            self
        } else {
            GroupElement::t_pow(-self.power)
        }
    }

    /// `w(t^k a^ε) = (w(a) w(b))^k w(a)^ε`.
    pub fn character<W: Character>(self) -> Sign {
        let wt = W::W_A * W::W_B;
        let mut s = if self.power.is_even() { Sign::Plus } else { wt };
        if self.flip {
            s = s * W::W_A;
        }
        s
    }

    /// Image under `a ↔ b`: `t^k ↦ t^(-k)` and `t^k a ↦ t^(1-k) a`.
    pub fn switch(self) -> GroupElement {
        let power = if self.flip {
            1i64.checked_sub(self.power)
                .expect("dihedral exponent overflow")
        } else {
            -self.power
        };
        GroupElement {
            power,
            flip: self.flip,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}", self.power)?;
        if self.flip {
            f.write_str("*a")?;
        }
        Ok(())
    }
}

/// An element of `Z[D_∞]` with orientation character `W`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DihedralElement<W: Character = Untwisted> {
    terms: BTreeMap<GroupElement, BigInt>,
    _character: PhantomData<W>,
}

impl<W: Character> DihedralElement<W> {
    fn from_map(mut terms: BTreeMap<GroupElement, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        DihedralElement {
            terms,
            _character: PhantomData,
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GroupElement, BigInt)>) -> Self {
        let mut map: BTreeMap<GroupElement, BigInt> = BTreeMap::new();
        for (g, c) in terms {
            *map.entry(g).or_default() += c;
        }
        Self::from_map(map)
    }

    pub fn group(g: GroupElement) -> Self {
        Self::from_terms([(g, BigInt::one())])
    }

    pub fn a() -> Self {
        Self::group(GroupElement::A)
    }

    pub fn b() -> Self {
        Self::group(GroupElement::B)
    }

    pub fn t_pow(k: i64) -> Self {
        Self::group(GroupElement::t_pow(k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: GroupElement) -> BigInt {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_map(self.terms.iter().map(|(g, x)| (*g, x * c)).collect())
    }

    /// `q(t) ↦ q(ba)`, the coefficient extension along `Z[t] → Z[D_∞]`.
    pub fn from_t_poly(q: &ZPoly) -> Self {
        Self::from_terms(
            q.terms()
                .map(|(e, c)| (GroupElement::t_pow(e as i64), c.clone())),
        )
    }

    /// Linear extension of `g ↦ w(g) g^(-1)`.
    pub fn involution(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| {
            let c = match g.character::<W>() {
                Sign::Plus => c.clone(),
                Sign::Minus => -c,
            };
            (g.inverse(), c)
        }))
    }

    /// The ring automorphism exchanging `a` and `b`.
    pub fn switch(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (g.switch(), c.clone())))
    }

    /// Canonical representative modulo `{v - ε v̄}`. Each involution orbit
    /// `{g, g^(-1)}` of size two collapses onto its smaller member; a fixed
    /// `g` keeps its coefficient exactly when `ε w(g) = 1` and modulo 2
    /// otherwise.
    pub fn quad_reduce(&self, eps: Sign) -> Self {
        let mut out: BTreeMap<GroupElement, BigInt> = BTreeMap::new();
        for (g, c) in &self.terms {
            let h = g.inverse();
            let s = eps * g.character::<W>();
            match g.cmp(&h) {
                Ordering::Equal => {
                    let c = match s {
                        Sign::Plus => c.clone(),
                        Sign::Minus => c.mod_floor(&BigInt::from(2)),
                    };
                    *out.entry(*g).or_default() += c;
                }
                Ordering::Less => *out.entry(*g).or_default() += c,
                // g ≡ ε w(g) g^(-1)
                Ordering::Greater => {
                    let c = match s {
                        Sign::Plus => c.clone(),
                        Sign::Minus => -c,
                    };
                    *out.entry(h).or_default() += c;
                }
            }
        }
        Self::from_map(out)
    }

    pub fn parse_element(src: &str) -> Result<Self> {
        let mut acc: BTreeMap<GroupElement, BigInt> = BTreeMap::new();
        for term in parse_terms(src)? {
            let mut coeff = BigInt::one();
            let mut g = GroupElement::ONE;
            for (f, _) in &term.factors {
                let h = match f {
                    Factor::Int(n) => {
                        coeff *= n;
                        continue;
                    }
                    Factor::TPow(k) => GroupElement::t_pow(*k),
                    Factor::A => GroupElement::A,
                    Factor::B => GroupElement::B,
                };
                g = g.compose(h);
            }
            if term.negative {
                coeff = -coeff;
            }
            *acc.entry(g).or_default() += coeff;
        }
        Ok(Self::from_map(acc))
    }
}

impl<W: Character> Zero for DihedralElement<W> {
    fn zero() -> Self {
        Self::from_map(BTreeMap::new())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<W: Character> One for DihedralElement<W> {
    fn one() -> Self {
        Self::group(GroupElement::ONE)
    }
}

impl<W: Character> Add for &DihedralElement<W> {
    type Output = DihedralElement<W>;
    fn add(self, rhs: &DihedralElement<W>) -> DihedralElement<W> {
        let mut terms = self.terms.clone();
        for (g, c) in &rhs.terms {
            *terms.entry(*g).or_default() += c;
        }
        DihedralElement::from_map(terms)
    }
}

impl<W: Character> Neg for &DihedralElement<W> {
    type Output = DihedralElement<W>;
    fn neg(self) -> DihedralElement<W> {
        DihedralElement::from_map(self.terms.iter().map(|(g, c)| (*g, -c)).collect())
    }
}

impl<W: Character> Sub for &DihedralElement<W> {
    type Output = DihedralElement<W>;
    fn sub(self, rhs: &DihedralElement<W>) -> DihedralElement<W> {
        self + &-rhs
    }
}

impl<W: Character> Mul for &DihedralElement<W> {
    type Output = DihedralElement<W>;
    fn mul(self, rhs: &DihedralElement<W>) -> DihedralElement<W> {
        let mut terms: BTreeMap<GroupElement, BigInt> = BTreeMap::new();
        for (g, c) in &self.terms {
            for (h, d) in &rhs.terms {
                *terms.entry(g.compose(*h)).or_default() += c * d;
            }
        }
        DihedralElement::from_map(terms)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<W: Character> $tr for DihedralElement<W> {
            type Output = DihedralElement<W>;
            fn $m(self, rhs: DihedralElement<W>) -> DihedralElement<W> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<W: Character> Neg for DihedralElement<W> {
    type Output = DihedralElement<W>;
    fn neg(self) -> DihedralElement<W> {
        -&self
    }
}

impl<W: Character> InvolutiveRing for DihedralElement<W> {
    fn from_i64(n: i64) -> Self {
        Self::from_terms([(GroupElement::ONE, BigInt::from(n))])
    }

    fn parse(src: &str) -> Result<Self> {
        Self::parse_element(src)
    }

    fn conj(&self) -> Self {
        self.involution()
    }

    fn quad_equal(&self, other: &Self, eps: Sign) -> bool {
        (self - other).quad_reduce(eps).is_zero()
    }

    fn unit_inverse(&self) -> Option<Self> {
        let mut it = self.terms.iter();
        let (g, c) = it.next()?;
        if it.next().is_some() || !c.abs().is_one() {
            return None;
        }
        Some(Self::from_terms([(g.inverse(), c.clone())]))
    }

    fn halve(&self) -> Option<Self> {
        self.terms
            .values()
            .all(|c| c.is_even())
            .then(|| Self::from_map(self.terms.iter().map(|(g, c)| (*g, c / 2)).collect()))
    }
}

impl<W: Character> fmt::Display for DihedralElement<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{c}*{g}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<W: Character> fmt::Debug for DihedralElement<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[{self}]")
    }
}

impl<W: Character> std::str::FromStr for DihedralElement<W> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_element(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = DihedralElement;

    fn d(s: &str) -> D {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&D::a() * &D::a(), D::one());
        assert_eq!(&D::a() * &D::t_pow(1), d("t^-1*a"));
        assert_eq!(&D::b() * &D::a(), D::t_pow(1));
        assert_eq!(&D::b() * &D::b(), D::one());
        assert_eq!(D::b(), d("t*a"));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(d("t^3").involution(), d("t^-3"));
        assert_eq!(d("t^2*a").involution(), d("t^2*a"));
        let x: DihedralElement<Twisted> = "t^2*a + t".parse().unwrap();
        assert_eq!(x.involution(), "-1*t^2*a + t^-1".parse().unwrap());
    }

    #[test]
    fn switch_examples() {
        assert_eq!(d("t").switch(), d("t^-1"));
        assert_eq!(d("a").switch(), d("b"));
        assert_eq!(d("b").switch(), d("a"));
        assert_eq!(d("t^3*a").switch(), d("t^-2*a"));
    }

    #[test]
    fn indeterminacy_examples() {
        assert!(d("b").quad_equal(&d("t*a"), Sign::Minus));
        assert!(d("t").quad_equal(&d("t^-1"), Sign::Plus));
        assert!(!d("1").quad_equal(&D::zero(), Sign::Plus));
        assert!(d("2").quad_equal(&D::zero(), Sign::Minus));
        assert!(d("t + t^-1").quad_equal(&D::zero(), Sign::Minus));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let x = d("2*t^-1*a + 3*t^0 - b");
        assert_eq!(x.to_string(), "2*t^-1*a + 3*t^0 + -1*t^1*a");
        assert_eq!(d(&x.to_string()), x);
        assert!(D::parse_element("t^").is_err());
    }

    #[test]
    fn units() {
        assert_eq!(d("-1*t^2").unit_inverse(), Some(d("-1*t^-2")));
        assert_eq!(d("b").unit_inverse(), Some(d("b")));
        assert_eq!(d("1 + a").unit_inverse(), None);
    }
}
