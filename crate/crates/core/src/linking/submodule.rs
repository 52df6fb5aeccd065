use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::f2mat::{self, Rows};
use super::LinkingForm;
use crate::error::{Error, Result};
use crate::poly::F2Poly;

/// A submodule of `F2[t]^k`, held as the nonzero rows of its Hermite normal
/// form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SubmoduleJson", into = "SubmoduleJson")]
pub struct Submodule {
    ambient: usize,
    basis: Rows,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubmoduleJson {
    ambient: usize,
    generators: Vec<Vec<String>>,
}

fn show(v: &[F2Poly]) -> String {
    let parts: Vec<String> = v.iter().map(F2Poly::to_short_string).collect();
    format!("({})", parts.join(", "))
}

impl Submodule {
    pub fn new(ambient: usize, generators: Rows) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in F2[t]^{ambient}",
                bad.len()
            )));
        }
        let mut basis = generators;
        let (pivots, _) = f2mat::hermite(&mut basis, ambient, false);
        basis.truncate(pivots.len());
        Ok(Submodule {
            ambient,
            basis,
            pivots,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Submodule {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Submodule {
            ambient,
            basis: f2mat::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Rows {
        &self.basis
    }

    /// Coordinates of `x` in the basis, or `None` when `x` is not a member.
    pub fn coordinates(&self, x: &[F2Poly]) -> Option<Vec<F2Poly>> {
        if x.len() != self.ambient {
            return None;
        }
        let mut rest = x.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if rest[..c].iter().any(|e| !e.is_zero()) {
                return None;
            }
            let (q, r) = rest[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            for (e, b) in rest.iter_mut().zip(row) {
                *e = &*e + &(&q * b);
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, x: &[F2Poly]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// `F2[t]^k = S ⊕ C` for some `C`, i.e. all elementary divisors are 1.
    pub fn is_direct_summand(&self) -> bool {
        f2mat::column_pivots(&self.basis, self.ambient)
            .iter()
            .all(One::is_one)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }
}

/// `{x : b(x, s) = 0 for all s ∈ S}`, the kernel of `S · B`.
pub fn orthogonal_complement(form: &LinkingForm, s: &Submodule) -> Result<Submodule> {
    let k = form.rank();
    if s.ambient != k {
        return Err(Error::DimensionMismatch(format!(
            "submodule of F2[t]^{} for a form of rank {k}",
            s.ambient
        )));
    }
    if s.rank() == 0 {
        return Ok(Submodule::full(k));
    }
    let sb = f2mat::mat_mul(&s.basis, form.b_num(), k, k);
    let (rank, u, _) = f2mat::column_reduce(&sb, k);
    let kernel: Rows = (rank..k)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect();
    Submodule::new(k, kernel)
}

/// Checks that `S` is a sublagrangian, on its basis.
fn check_sublagrangian(form: &LinkingForm, s: &Submodule) -> Result<()> {
    for (i, x) in s.basis.iter().enumerate() {
        let q = form.q(x)?;
        if !q.is_zero() {
            return Err(Error::NotSublagrangian {
                vector: show(x),
                reason: format!("q = {} / 2", q.to_short_string()),
            });
        }
        for y in &s.basis[i + 1..] {
            let b = form.b(x, y)?;
            if !b.is_zero() {
                return Err(Error::NotSublagrangian {
                    vector: show(x),
                    reason: format!("b with {} = {} / 2", show(y), b.to_short_string()),
                });
            }
        }
    }
    Ok(())
}

/// The induced form on `S^⊥ / S`, together with the vectors of `S^⊥` whose
/// classes form the basis used.
pub fn sublagrangian_reduce(form: &LinkingForm, s: &Submodule) -> Result<(LinkingForm, Rows)> {
    check_sublagrangian(form, s)?;
    let perp = orthogonal_complement(form, s)?;
    let m = perp.rank();
    let coords: Rows = s
        .basis
        .iter()
        .map(|v| {
            perp.coordinates(v)
                .expect("S lies in its orthogonal complement")
        })
        .collect();
    let r = s.rank();
    let (quotient_rows, u_inv) = if r == 0 {
        (perp.basis.clone(), f2mat::identity(m))
    } else {
        let (rank, u, u_inv) = f2mat::column_reduce(&coords, m);
        debug_assert_eq!(rank, r);
        let h = f2mat::mat_mul(&coords, &u, m, r);
        if (0..r).any(|i| !h[i][i].is_one()) {
            return Err(Error::NotDirectSummand(
                "S is not a direct summand of its orthogonal complement".into(),
            ));
        }
        let rows = f2mat::mat_mul(&u_inv, &perp.basis, m, form.rank());
        (rows, u_inv)
    };
    debug_assert_eq!(u_inv.len(), m);
    let w: Rows = quotient_rows[r..].to_vec();
    let b_num = w
        .iter()
        .map(|x| w.iter().map(|y| form.b(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Rows>>()?;
    let q_num = w.iter().map(|x| form.q(x)).collect::<Result<Vec<_>>>()?;
    let reduced = LinkingForm::new(b_num, q_num)?;
    Ok((reduced, w))
}

impl TryFrom<SubmoduleJson> for Submodule {
    type Error = Error;
    fn try_from(j: SubmoduleJson) -> Result<Self> {
        let gens = j
            .generators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| F2Poly::parse(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Rows>>()?;
        Submodule::new(j.ambient, gens)
    }
}

impl From<Submodule> for SubmoduleJson {
    fn from(s: Submodule) -> Self {
        SubmoduleJson {
            ambient: s.ambient,
            generators: s
                .basis
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}
