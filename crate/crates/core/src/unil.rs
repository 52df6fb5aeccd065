//! `UNil_2(Z; Z, Z)` and `UNil_3(Z; Z, Z)` in explicit coordinates.
//!
//! `UNil_3 = t Z4[t]/{2p(t^2) - 2p(t)} ⊕ t F2[t]` through `(j1, j2)`, and
//! `UNil_2 = t F2[t]/{f^2 - f}` through the Arf invariant.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    idem_reduce, versch_reduce, F2Poly, IdemClass, VerschClass, Z4Poly, ZPoly, F2, Z4,
};

/// Largest truncation `enumerate_*` will build.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Unil3Json", into = "Unil3Json")]
pub struct UNil3Element {
    x: VerschClass,
    y: F2Poly,
}

#[derive(Serialize, Deserialize)]
struct Unil3Json {
    x: String,
    y: String,
}

impl UNil3Element {
    pub fn zero() -> Self {
        UNil3Element {
            x: VerschClass::zero(),
            y: F2Poly::zero(),
        }
    }

    pub fn new(x: VerschClass, y: F2Poly) -> Result<Self> {
        if !y.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm(y.to_string()));
        }
        Ok(UNil3Element { x, y })
    }

    /// `j1[tp]` for `tp` over `Z`, read mod 4.
    pub fn j1(tp: &ZPoly) -> Result<Self> {
        Self::new(versch_reduce(&Z4Poly::reduce_from(tp))?, F2Poly::zero())
    }

    pub fn j1_z4(tp: &Z4Poly) -> Result<Self> {
        Self::new(versch_reduce(tp)?, F2Poly::zero())
    }

    /// `j2[tp]` for `tp` over `F2`.
    pub fn j2(tp: &F2Poly) -> Result<Self> {
        Self::new(VerschClass::zero(), tp.clone())
    }

    pub fn x(&self) -> &VerschClass {
        &self.x
    }

    pub fn y(&self) -> &F2Poly {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn times(&self, n: i64) -> Self {
        UNil3Element {
            x: self.x.times(n),
            y: if n % 2 == 0 {
                F2Poly::zero()
            } else {
                self.y.clone()
            },
        }
    }

    /// Additive order: 1, 2 or 4.
    pub fn order(&self) -> u32 {
        if self.is_zero() {
            1
        } else if self.times(2).is_zero() {
            2
        } else {
            4
        }
    }

    /// `(x, y) ↦ (x, π(x) + y)`.
    pub fn switch(&self) -> Self {
        UNil3Element {
            x: self.x.clone(),
            y: &pi_map(&self.x) + &self.y,
        }
    }

    /// `(B1, B2) = (π(x), y)`.
    pub fn b_coords(&self) -> (F2Poly, F2Poly) {
        (pi_map(&self.x), self.y.clone())
    }

    /// Parses `j1[<poly over Z4>] + j2[<poly over F2>]`; either term may be
    /// repeated or absent, and `0` is the zero element.
    pub fn parse(src: &str) -> Result<Self> {
        let mut acc = UNil3Element::zero();
        let mut any = false;
        for (pos, term) in split_terms(src)? {
            any = true;
            let t = term.trim();
            if t == "0" {
                continue;
            }
            let body = |prefix: &str| -> Option<&str> {
                t.strip_prefix(prefix)?
                    .trim_start()
                    .strip_prefix('[')?
                    .strip_suffix(']')
            };
            let located = |b: &str, e: Error| match e {
                Error::Parse { pos: p, message } => Error::Parse {
                    pos: b.as_ptr() as usize - src.as_ptr() as usize + p,
                    message,
                },
                other => other,
            };
            let part = if let Some(b) = body("j1") {
                Self::j1_z4(&Z4Poly::parse(b).map_err(|e| located(b, e))?)
            } else if let Some(b) = body("j2") {
                Self::j2(&F2Poly::parse(b).map_err(|e| located(b, e))?)
            } else {
                return Err(Error::Parse {
                    pos,
                    message: format!("expected j1[..], j2[..] or 0, found '{t}'"),
                });
            }?;
            acc = &acc + &part;
        }
        if !any {
            return Err(Error::Parse {
                pos: 0,
                message: "empty element".into(),
            });
        }
        Ok(acc)
    }
}

/// Splits on `+` outside brackets, keeping byte offsets.
fn split_terms(src: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse {
                        pos: i,
                        message: "unbalanced ']'".into(),
                    });
                }
            }
            '+' if depth == 0 => {
                out.push((start, &src[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse {
            pos: src.len(),
            message: "unclosed '['".into(),
        });
    }
    out.push((start, &src[start..]));
    if out.iter().any(|(_, t)| t.trim().is_empty()) && src.trim() != "" {
        let (pos, _) = out.iter().find(|(_, t)| t.trim().is_empty()).unwrap();
        return Err(Error::Parse {
            pos: *pos,
            message: "empty term".into(),
        });
    }
    Ok(out
        .into_iter()
        .filter(|(_, t)| !t.trim().is_empty())
        .collect())
}

/// Coefficientwise reduction mod 2.
pub fn pi_map(x: &VerschClass) -> F2Poly {
    x.representative().to_f2()
}

impl Add for &UNil3Element {
    type Output = UNil3Element;
    fn add(self, rhs: &UNil3Element) -> UNil3Element {
        UNil3Element {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &UNil3Element {
    type Output = UNil3Element;
    fn sub(self, rhs: &UNil3Element) -> UNil3Element {
        UNil3Element {
            x: &self.x - &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Neg for &UNil3Element {
    type Output = UNil3Element;
    fn neg(self) -> UNil3Element {
        UNil3Element {
            x: -&self.x,
            y: self.y.clone(),
        }
    }
}

impl fmt::Display for UNil3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.x.is_zero() {
            parts.push(format!("j1[{}]", self.x.representative().to_short_string()));
        }
        if !self.y.is_zero() {
            parts.push(format!("j2[{}]", self.y.to_short_string()));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for UNil3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UNil3({self})")
    }
}

impl std::str::FromStr for UNil3Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl TryFrom<Unil3Json> for UNil3Element {
    type Error = Error;
    fn try_from(j: Unil3Json) -> Result<Self> {
        Self::new(VerschClass::parse(&j.x)?, F2Poly::parse(&j.y)?)
    }
}

impl From<UNil3Element> for Unil3Json {
    fn from(e: UNil3Element) -> Self {
        Unil3Json {
            x: e.x.to_string(),
            y: e.y.to_string(),
        }
    }
}

/// An element of `UNil_2`, held as its Arf class in `t F2[t]/{f^2 - f}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UNil2Element {
    arf_class: IdemClass,
}

impl UNil2Element {
    pub fn zero() -> Self {
        UNil2Element {
            arf_class: IdemClass::zero(),
        }
    }

    pub fn new(arf_class: IdemClass) -> Result<Self> {
        if !arf_class.representative().constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm(arf_class.to_string()));
        }
        Ok(UNil2Element { arf_class })
    }

    pub fn from_poly(tp: &F2Poly) -> Result<Self> {
        if !tp.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm(tp.to_string()));
        }
        Self::new(idem_reduce(tp))
    }

    pub fn arf_class(&self) -> &IdemClass {
        &self.arf_class
    }

    pub fn is_zero(&self) -> bool {
        self.arf_class.is_zero()
    }

    /// The identity.
    pub fn switch(&self) -> Self {
        self.clone()
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_poly(&F2Poly::parse(src)?)
    }
}

impl Add for &UNil2Element {
    type Output = UNil2Element;
    fn add(self, rhs: &UNil2Element) -> UNil2Element {
        UNil2Element {
            arf_class: &self.arf_class + &rhs.arf_class,
        }
    }
}

impl fmt::Display for UNil2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.arf_class.representative().to_short_string())
    }
}

impl fmt::Debug for UNil2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UNil2({self})")
    }
}

/// UNil_3 class of `[N_{p,g}]` for a generator shape the dictionary knows:
/// `(P, t^k)` with `P(0) = 0` when `k = 0`.
pub fn n_class_of_generator(p: &ZPoly, g: &ZPoly) -> Result<UNil3Element> {
    n_class_of_sum(&[(1, p.clone(), g.clone())])
}

/// UNil_3 class of `Σ c [N_{p,g}]`.
///
/// Terms of shape `(P, t^k)` become `sw^k(j1[t^k P])`. The remaining terms
/// must be `(1, tq)` and `(t, q)` occurring in the combinations
/// `c([N_{1,tq}] - [N_{t,q}]) = c j2[tq]`.
pub fn n_class_of_sum(terms: &[(i64, ZPoly, ZPoly)]) -> Result<UNil3Element> {
    let mut acc = UNil3Element::zero();
    let mut pending: Vec<(ZPoly, i64, i64)> = Vec::new();
    for (c, p, g) in terms {
        if !p.constant_term().is_zero() && !g.constant_term().is_zero() {
            return Err(Error::GeneratorPrecondition {
                p: p.to_string(),
                g: g.to_string(),
            });
        }
        if let Some(k) = g.as_t_power() {
            if k > 0 || p.constant_term().is_zero() {
                let mut e = UNil3Element::j1(&p.shift(k))?;
                for _ in 0..k {
                    e = e.switch();
                }
                acc = &acc + &e.times(*c);
                continue;
            }
        }
        let t = ZPoly::t();
        let slot = if p.as_t_power() == Some(0) && g.constant_term().is_zero() {
            // (1, tq)
            Some((g.clone(), *c, 0))
        } else if p == &t {
            // (t, q)
            Some((g.shift(1), 0, *c))
        } else {
            None
        };
        let Some((tq, a, b)) = slot else {
            return Err(Error::UnsupportedShape(format!("N_{{{p}, {g}}}")));
        };
        match pending.iter_mut().find(|(q, _, _)| q == &tq) {
            Some(entry) => {
                entry.1 += a;
                entry.2 += b;
            }
            None => pending.push((tq, a, b)),
        }
    }
    for (tq, ones, ts) in pending {
        if ones + ts != 0 {
            return Err(Error::UnsupportedShape(format!(
                "{ones} N_{{1, tq}} + {ts} N_{{t, q}} with tq = {tq}: only multiples of N_{{1, tq}} - N_{{t, q}} are known"
            )));
        }
        acc = &acc + &UNil3Element::j2(&F2Poly::reduce_from(&tq))?.times(ones);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncation<E> {
    pub degree_cutoff: usize,
    pub elements: Vec<E>,
    /// Least element of each orbit `{e, sw(e)}`, in increasing order.
    pub representatives: Vec<E>,
    pub total: u64,
    pub fixed: u64,
    pub orbits: u64,
}

impl<E> Truncation<E> {
    /// `orbits = (total + fixed) / 2`.
    pub fn burnside_holds(&self) -> bool {
        (self.total + self.fixed).is_multiple_of(2) && self.orbits == (self.total + self.fixed) / 2
    }
}

fn truncate<E, F, S>(degree_cutoff: usize, total: u64, decode: F, sw: S) -> Truncation<E>
where
    E: Clone + Ord + Send + Sync,
    F: Fn(u64) -> E + Sync,
    S: Fn(&E) -> E + Sync,
{
    let mut elements: Vec<E> = (0..total).into_par_iter().map(&decode).collect();
    elements.par_sort();
    let flags: Vec<(bool, bool)> = elements
        .par_iter()
        .map(|e| {
            let s = sw(e);
            (&s == e, e <= &s)
        })
        .collect();
    let fixed = flags.iter().filter(|f| f.0).count() as u64;
    let representatives: Vec<E> = elements
        .iter()
        .zip(&flags)
        .filter(|(_, f)| f.1)
        .map(|(e, _)| e.clone())
        .collect();
    Truncation {
        degree_cutoff,
        total,
        fixed,
        orbits: representatives.len() as u64,
        representatives,
        elements,
    }
}

/// Number of canonical UNil_3 elements supported on exponents `1..=d`.
pub fn unil3_count(d: usize) -> Option<u64> {
    let odd = d.div_ceil(2) as u32;
    let even = (d / 2) as u32;
    4u64.checked_pow(odd)?
        .checked_mul(2u64.checked_pow(even)?)?
        .checked_mul(2u64.checked_pow(d as u32)?)
}

/// All UNil_3 elements with `x` and `y` supported on exponents `1..=d`.
pub fn enumerate_unil3(d: usize) -> Result<Truncation<UNil3Element>> {
    let total = unil3_count(d)
        .filter(|&n| n <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("UNil_3 truncation at degree {d}")))?;
    let decode = |mut code: u64| {
        let mut xc = vec![Z4::new(0); d + 1];
        for (e, c) in xc.iter_mut().enumerate().skip(1) {
            let base = if e % 2 == 1 { 4 } else { 2 };
            *c = Z4::new((code % base) as i64);
            code /= base;
        }
        let mut yc = vec![F2::ZERO; d + 1];
        for c in yc.iter_mut().skip(1) {
            *c = F2::new((code % 2) as i64);
            code /= 2;
        }
        UNil3Element {
            x: versch_reduce(&Z4Poly::new(xc)).expect("zero constant term"),
            y: F2Poly::new(yc),
        }
    };
    Ok(truncate(d, total, decode, UNil3Element::switch))
}

/// All UNil_2 classes with representatives on odd exponents `≤ d`.
pub fn enumerate_unil2(d: usize) -> Result<Truncation<UNil2Element>> {
    let odd = d.div_ceil(2);
    let total = 1u64
        .checked_shl(odd as u32)
        .filter(|&n| n <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("UNil_2 truncation at degree {d}")))?;
    let decode = |code: u64| {
        let mut c = vec![F2::ZERO; d + 1];
        for i in 0..odd {
            c[2 * i + 1] = F2::new(((code >> i) & 1) as i64);
        }
        UNil2Element::new(idem_reduce(&F2Poly::new(c))).expect("zero constant term")
    };
    Ok(truncate(d, total, decode, UNil2Element::switch))
}
