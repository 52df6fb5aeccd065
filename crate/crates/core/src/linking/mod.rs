//! Quadratic linking forms of exponent 2 over `(Z[t], <2>)`.
//!
//! The module is `M = F2[t]^k`. A value `b(x, y) ∈ ½Z[t]/Z[t]` is stored as
//! its numerator in `F2[t]`, and `q(x) ∈ ½Z[t]/2Z[t]` as its numerator in
//! `Z4[t]`.

mod arf;
pub(crate) mod f2mat;
mod lagrangian;
mod submodule;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{F2Poly, Z4Poly, ZPoly};
use crate::quad_forms::QuadResolution;
use crate::ring::InvolutiveRing;

use f2mat::{bilinear, Rows};

pub use arf::{arf_even, arf_even_randomized};
pub use lagrangian::find_lagrangian;
pub use submodule::{orthogonal_complement, sublagrangian_reduce, Submodule};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LinkingFormJson", into = "LinkingFormJson")]
pub struct LinkingForm {
    b_num: Rows,
    q_num: Vec<Z4Poly>,
}

#[derive(Serialize, Deserialize)]
struct LinkingFormJson {
    rank: usize,
    b_num: Vec<Vec<String>>,
    q_num: Vec<String>,
}

impl LinkingForm {
    /// Validates symmetry, nonsingularity of `b` and `q(e_i) ≡ b(e_i, e_i)`.
    pub fn new(b_num: Rows, q_num: Vec<Z4Poly>) -> Result<Self> {
        let k = q_num.len();
        if b_num.len() != k || b_num.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch(format!(
                "b_num must be {k}x{k} to match q_num"
            )));
        }
        for i in 0..k {
            for j in 0..i {
                if b_num[i][j] != b_num[j][i] {
                    return Err(Error::InvalidForm(format!(
                        "b is not symmetric at ({i},{j})"
                    )));
                }
            }
            if q_num[i].to_f2() != b_num[i][i] {
                return Err(Error::InvalidForm(format!(
                    "q(e{i}) = {} does not reduce to b(e{i},e{i}) = {}",
                    q_num[i], b_num[i][i]
                )));
            }
        }
        let pivots = f2mat::column_pivots(&b_num, k);
        if pivots.len() < k || pivots.iter().any(|p| p.degree() != Some(0)) {
            return Err(Error::SingularForm(format!("{b_num:?}")));
        }
        Ok(LinkingForm { b_num, q_num })
    }

    pub fn zero() -> Self {
        LinkingForm {
            b_num: Vec::new(),
            q_num: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.q_num.len()
    }

    pub fn b_num(&self) -> &Rows {
        &self.b_num
    }

    pub fn q_num(&self) -> &[Z4Poly] {
        &self.q_num
    }

    fn check_rank(&self, x: &[F2Poly]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a form of rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Numerator of `b(x, y)`.
    pub fn b(&self, x: &[F2Poly], y: &[F2Poly]) -> Result<F2Poly> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        Ok(bilinear(&self.b_num, x, y))
    }

    /// Numerator of `q(x)`: `Σ f_i² q_i + 2 Σ_{i<j} f_i f_j b_ij` over
    /// `Z4[t]`, with each `f_i` and `b_ij` lifted to 0/1 coefficients.
    pub fn q(&self, x: &[F2Poly]) -> Result<Z4Poly> {
        self.check_rank(x)?;
        let mut acc = Z4Poly::zero();
        let lifts: Vec<Z4Poly> = x.iter().map(F2Poly::lift_z4).collect();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            acc = &acc + &(&(&lifts[i] * &lifts[i]) * &self.q_num[i]);
            for j in i + 1..x.len() {
                if x[j].is_zero() || self.b_num[i][j].is_zero() {
                    continue;
                }
                let cross = &(&x[i] * &x[j]) * &self.b_num[i][j];
                acc = &acc + &cross.double_z4();
            }
        }
        Ok(acc)
    }

    pub fn eval_bq(&self, x: &[F2Poly], y: &[F2Poly]) -> Result<(F2Poly, Z4Poly)> {
        Ok((self.b(x, y)?, self.q(x)?))
    }

    pub fn direct_sum(forms: &[LinkingForm]) -> LinkingForm {
        let k: usize = forms.iter().map(LinkingForm::rank).sum();
        let mut b_num = f2mat::zero_rows(k, k);
        let mut q_num = Vec::with_capacity(k);
        let mut off = 0;
        for f in forms {
            for i in 0..f.rank() {
                for j in 0..f.rank() {
                    b_num[off + i][off + j] = f.b_num[i][j].clone();
                }
            }
            q_num.extend(f.q_num.iter().cloned());
            off += f.rank();
        }
        LinkingForm { b_num, q_num }
    }

    /// `(M, -b, -q)`; over `F2` only `q` changes.
    pub fn negate(&self) -> LinkingForm {
        LinkingForm {
            b_num: self.b_num.clone(),
            q_num: self.q_num.iter().map(|q| -q).collect(),
        }
    }

    /// `b(x, x)` integral for all `x`, i.e. `b(e_i, e_i) ≡ 0`: the cross terms
    /// of `b(x, x)` cancel in characteristic 2.
    pub fn is_even(&self) -> bool {
        self.b_num.iter().enumerate().all(|(i, r)| r[i].is_zero())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F2Poly> {
        let mut v = vec![F2Poly::zero(); self.rank()];
        v[i] = F2Poly::one();
        v
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }
}

/// `N_{p,g} = (F2[t]^2, [[p/2, 1/2], [1/2, 0]], (p/2, g))`.
pub fn make_n(p: &ZPoly, g: &ZPoly) -> Result<LinkingForm> {
    if !p.constant_term().is_zero() && !g.constant_term().is_zero() {
        return Err(Error::GeneratorPrecondition {
            p: p.to_string(),
            g: g.to_string(),
        });
    }
    let one = F2Poly::one();
    let b_num = vec![
        vec![F2Poly::reduce_from(p), one.clone()],
        vec![one, F2Poly::zero()],
    ];
    let q_num = vec![
        Z4Poly::reduce_from(p),
        Z4Poly::reduce_from(&g.scale(&2.into())),
    ];
    LinkingForm::new(b_num, q_num)
}

/// `(N_{t,p} ⊕ N_{p,t}) - (N_{1,tp} ⊕ N_{tp,1})` with the sublagrangian
/// spanned by
/// `v0 = p_ev e4 + e6 + t p_od e8` and `v1 = e2 + p_od e4 + p_ev e8`
/// (1-indexed), where `p = p_ev² + t p_od²`.
pub fn relation_form(p: &F2Poly) -> Result<(LinkingForm, Submodule)> {
    let t = ZPoly::t();
    let one = ZPoly::from_i64(1);
    let pz = p.lift();
    let tp = &t * &pz;
    let lhs = LinkingForm::direct_sum(&[make_n(&t, &pz)?, make_n(&pz, &t)?]);
    let rhs = LinkingForm::direct_sum(&[make_n(&one, &tp)?, make_n(&tp, &one)?]);
    let form = LinkingForm::direct_sum(&[lhs, rhs.negate()]);
    let (ev, od) = crate::poly::even_odd_decompose(p);
    let zero = F2Poly::zero();
    let mut v0 = vec![zero.clone(); 8];
    v0[3] = ev.clone();
    v0[5] = F2Poly::one();
    v0[7] = &F2Poly::t() * &od;
    let mut v1 = vec![zero; 8];
    v1[1] = F2Poly::one();
    v1[3] = od;
    v1[7] = ev;
    let s = Submodule::new(8, vec![v0, v1])?;
    Ok((form, s))
}

/// The linking form on `Cok(d*)` of a resolution with `d = 2`:
/// `b = ψ₀ mod 2` and `q(e_i) = -ψ₁(i, i) mod 4`. The sign on `q` is the
/// one under which `[[tp, 1], [1, 2g]]` gives `N_{tp,g}`.
pub fn resolution_to_linking(c: &QuadResolution<ZPoly>) -> Result<LinkingForm> {
    let k = c.rank();
    for i in 0..k {
        for j in 0..k {
            let expected = if i == j {
                ZPoly::from_i64(2)
            } else {
                ZPoly::zero()
            };
            if c.d().get(i, j) != &expected {
                return Err(Error::UnsupportedDifferential);
            }
        }
    }
    let b_num = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| F2Poly::reduce_from(c.psi0().get(i, j)))
                .collect()
        })
        .collect();
    let q_num = (0..k)
        .map(|i| Z4Poly::reduce_from(&-c.psi1().get(i, i).clone()))
        .collect();
    LinkingForm::new(b_num, q_num)
}

impl TryFrom<LinkingFormJson> for LinkingForm {
    type Error = Error;
    fn try_from(j: LinkingFormJson) -> Result<Self> {
        if j.rank != j.q_num.len() {
            return Err(Error::DimensionMismatch(format!(
                "rank {} but {} q values",
                j.rank,
                j.q_num.len()
            )));
        }
        let b_num = j
            .b_num
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| F2Poly::parse(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let q_num = j
            .q_num
            .iter()
            .map(|s| Z4Poly::parse(s))
            .collect::<Result<Vec<_>>>()?;
        LinkingForm::new(b_num, q_num)
    }
}

impl From<LinkingForm> for LinkingFormJson {
    fn from(f: LinkingForm) -> Self {
        LinkingFormJson {
            rank: f.rank(),
            b_num: f
                .b_num
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            q_num: f.q_num.iter().map(ToString::to_string).collect(),
        }
    }
}

impl fmt::Debug for LinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<Vec<String>> = self
            .b_num
            .iter()
            .map(|r| r.iter().map(F2Poly::to_short_string).collect())
            .collect();
        let q: Vec<String> = self.q_num.iter().map(Z4Poly::to_short_string).collect();
        write!(f, "LinkingForm {{ b_num: {b:?}, q_num: {q:?} }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> ZPoly {
        ZPoly::parse(s).unwrap()
    }
    fn f2(s: &str) -> F2Poly {
        F2Poly::parse(s).unwrap()
    }
    fn z4(s: &str) -> Z4Poly {
        Z4Poly::parse(s).unwrap()
    }

    #[test]
    fn generator_examples() {
        let n = make_n(&z("t"), &z("1")).unwrap();
        assert_eq!(
            n.b_num(),
            &vec![vec![f2("t"), f2("1")], vec![f2("1"), f2("0")]]
        );
        assert_eq!(n.q_num(), &[z4("t"), z4("2")]);
        let n = make_n(&z("1"), &z("t")).unwrap();
        assert_eq!(
            n.b_num(),
            &vec![vec![f2("1"), f2("1")], vec![f2("1"), f2("0")]]
        );
        assert_eq!(n.q_num(), &[z4("1"), z4("2*t")]);
        assert!(matches!(
            make_n(&z("1"), &z("t + 1")),
            Err(Error::GeneratorPrecondition { .. })
        ));
        // b = [[0, 1], [1, 0]] has determinant 1
        assert!(make_n(&z("0"), &z("0")).is_ok());
    }

    #[test]
    fn singular_and_incompatible_forms_rejected() {
        let b = vec![vec![f2("t"), f2("0")], vec![f2("0"), f2("0")]];
        assert!(matches!(
            LinkingForm::new(b, vec![z4("t"), z4("0")]),
            Err(Error::SingularForm(_))
        ));
        let b = vec![vec![f2("0"), f2("t")], vec![f2("t"), f2("0")]];
        assert!(matches!(
            LinkingForm::new(b, vec![z4("0"), z4("0")]),
            Err(Error::SingularForm(_))
        ));
        let b = vec![vec![f2("t"), f2("1")], vec![f2("1"), f2("0")]];
        assert!(matches!(
            LinkingForm::new(b, vec![z4("2*t"), z4("0")]),
            Err(Error::InvalidForm(_))
        ));
    }

    #[test]
    fn evaluation_examples() {
        let n = make_n(&z("t"), &z("1")).unwrap();
        let e1 = vec![f2("1"), f2("0")];
        let e2 = vec![f2("0"), f2("1")];
        let zero = vec![f2("0"), f2("0")];
        assert_eq!(n.q(&e1).unwrap(), z4("t"));
        assert_eq!(n.q(&e2).unwrap(), z4("2"));
        assert_eq!(n.b(&e1, &e2).unwrap(), f2("1"));
        assert!(n.q(&zero).unwrap().is_zero());
        assert!(n.b(&zero, &e2).unwrap().is_zero());
        // t + 2 + 2·1 = t
        assert_eq!(n.q(&[f2("1"), f2("1")]).unwrap(), z4("t"));
        assert!(n.q(&[f2("1")]).is_err());
    }

    #[test]
    fn evenness() {
        assert!(!make_n(&z("t"), &z("1")).unwrap().is_even());
        assert!(LinkingForm::zero().is_even());
        assert!(make_n(&z("0"), &z("t")).unwrap().is_even());
    }

    #[test]
    fn negation_and_sums() {
        let n = make_n(&z("t"), &z("1")).unwrap();
        assert_eq!(n.negate().negate(), n);
        assert_eq!(n.negate().q_num(), &[z4("3*t"), z4("2")]);
        assert_eq!(
            LinkingForm::direct_sum(&[LinkingForm::zero(), LinkingForm::zero()]).rank(),
            0
        );
        let s = LinkingForm::direct_sum(&[n.clone(), make_n(&z("1"), &z("t")).unwrap()]);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.b_num()[2][2], f2("1"));
        assert!(s.b_num()[0][2].is_zero());
    }

    #[test]
    fn n_complex_gives_generator() {
        let c = QuadResolution::n_complex(&z("t^2 + t"), &z("t"));
        assert_eq!(
            resolution_to_linking(&c).unwrap(),
            make_n(&z("t^2 + t"), &z("t")).unwrap()
        );
        assert_eq!(
            resolution_to_linking(&QuadResolution::zero(crate::ring::Sign::Minus)).unwrap(),
            LinkingForm::zero()
        );
    }

    #[test]
    fn json_round_trip() {
        let n = make_n(&z("3*t"), &z("t^2")).unwrap();
        let js = n.to_json().unwrap();
        assert_eq!(
            js,
            r#"{"rank":2,"b_num":[["1*t^1","1*t^0"],["1*t^0","0"]],"q_num":["3*t^1","2*t^2"]}"#
        );
        assert_eq!(LinkingForm::from_json(&js).unwrap(), n);
        assert!(LinkingForm::from_json(r#"{"rank":1,"b_num":[["t"]],"q_num":["t","1"]}"#).is_err());
    }
}
