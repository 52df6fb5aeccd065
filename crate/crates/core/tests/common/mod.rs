//! Brute-force relation-subgroup oracle for the quotient normal forms,
//! shared by the oracle tests and the acceptance run.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use unil_core::poly::{idem_reduce, versch_reduce, F2Poly, Z4Poly, F2, Z4};

pub const WINDOW: usize = 6;

/// Closure of the subgroup generated by `gens` in `(Z/m)^(WINDOW+1)`.
pub fn closure(gens: &[Vec<u8>], modulus: u8) -> HashSet<Vec<u8>> {
    let zero = vec![0u8; WINDOW + 1];
    let mut seen: HashSet<Vec<u8>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<u8> = v.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

pub fn sub(a: &[u8], b: &[u8], modulus: u8) -> Vec<u8> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x + modulus - y) % modulus)
        .collect()
}

pub fn digits(mut n: u32, base: u32) -> Vec<u8> {
    (0..=WINDOW)
        .map(|_| {
            let d = (n % base) as u8;
            n /= base;
            d
        })
        .collect()
}

pub fn pad(coeffs: impl Iterator<Item = u8>) -> Vec<u8> {
    let mut v: Vec<u8> = coeffs.collect();
    assert!(v.len() <= WINDOW + 1, "reduction left the window");
    v.resize(WINDOW + 1, 0);
    v
}

/// `c·t^(2k) + c·t^k` for `2k <= WINDOW`. The top term of any relation
/// survives, so these span the relations supported in the window.
pub fn relation_generators(c: u8) -> Vec<Vec<u8>> {
    (1..=WINDOW / 2)
        .map(|k| {
            let mut g = vec![0u8; WINDOW + 1];
            g[2 * k] = c;
            g[k] = c;
            g
        })
        .collect()
}

/// Every element of the window, with its reduction.
pub struct Transversal {
    pub relations: HashSet<Vec<u8>>,
    pub elements: Vec<(Vec<u8>, Vec<u8>)>,
    pub canonical: BTreeSet<Vec<u8>>,
    pub cosets: usize,
}

impl Transversal {
    /// Each reduction is congruent to its input, canonical forms are fixed by
    /// the reduction, and there is exactly one canonical form per coset.
    pub fn check(&self, modulus: u8, reduce: impl Fn(&[u8]) -> Vec<u8>) -> Result<(), String> {
        for (x, r) in &self.elements {
            if !self.relations.contains(&sub(r, x, modulus)) {
                return Err(format!("{x:?} reduces to the non-congruent {r:?}"));
            }
            if reduce(r) != *r {
                return Err(format!("canonical form {r:?} is not fixed"));
            }
        }
        if self.canonical.len() != self.cosets {
            return Err(format!(
                "{} canonical forms for {} cosets",
                self.canonical.len(),
                self.cosets
            ));
        }
        Ok(())
    }
}

fn z4_of(x: &[u8]) -> Z4Poly {
    Z4Poly::new(x.iter().map(|&c| Z4::new(c as i64)).collect())
}

fn f2_of(x: &[u8]) -> F2Poly {
    F2Poly::new(x.iter().map(|&c| F2::new(c as i64)).collect())
}

pub fn versch_window(x: &[u8]) -> Vec<u8> {
    let r = versch_reduce(&z4_of(x)).expect("zero constant term");
    pad(r.representative().coeffs().iter().map(|c| c.value()))
}

pub fn idem_window(x: &[u8]) -> Vec<u8> {
    pad(idem_reduce(&f2_of(x))
        .representative()
        .coeffs()
        .iter()
        .map(|c| c.value()))
}

/// `tZ4[t]` truncated to exponents `1..=WINDOW`.
pub fn versch_transversal() -> Transversal {
    let relations = closure(&relation_generators(2), 4);
    let elements: Vec<(Vec<u8>, Vec<u8>)> = (0..4u32.pow(WINDOW as u32))
        .map(|n| {
            let mut x = vec![0u8];
            x.extend(digits(n, 4).into_iter().take(WINDOW));
            let r = versch_window(&x);
            (x, r)
        })
        .collect();
    let canonical = elements.iter().map(|(_, r)| r.clone()).collect();
    let cosets = 4usize.pow(WINDOW as u32) / relations.len();
    Transversal {
        relations,
        elements,
        canonical,
        cosets,
    }
}

/// `F2[t]` truncated to exponents `0..=WINDOW`.
pub fn idem_transversal() -> Transversal {
    let relations = closure(&relation_generators(1), 2);
    let elements: Vec<(Vec<u8>, Vec<u8>)> = (0..2u32.pow(WINDOW as u32 + 1))
        .map(|n| {
            let x = digits(n, 2);
            let r = idem_window(&x);
            (x, r)
        })
        .collect();
    let canonical = elements.iter().map(|(_, r)| r.clone()).collect();
    let cosets = 2usize.pow(WINDOW as u32 + 1) / relations.len();
    Transversal {
        relations,
        elements,
        canonical,
        cosets,
    }
}
