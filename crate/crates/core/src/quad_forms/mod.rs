//! Quadratic forms presented by θ-matrices, quadratic Poincaré resolutions,
//! the induction map `F : Z[t] → Z[D_∞]` and the switch action on both.

mod chain;
mod resolution;

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::dihedral::{Character, DihedralElement};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::ZPoly;
use crate::ring::{InvolutiveRing, Sign};

pub use chain::{verify_chain, ChainReport, ChainScript, ChainStep, ChainValue, StepRecord};
pub use resolution::{induce_f_resolution, QuadResolution};

/// A `(±1)`-quadratic form `(R^k, λ, μ)` held as a θ-matrix with
/// `λ = θ + ε θ*` and `μ = diag θ` modulo `{v - ε v̄}`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm<R> {
    theta: Matrix<R>,
    eps: Sign,
}

/// First entry at which two forms or resolutions disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub component: String,
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{},{}]: {} != {}",
            self.component, self.row, self.col, self.lhs, self.rhs
        )
    }
}

impl Divergence {
    fn shape(what: &str, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Divergence {
            component: what.to_string(),
            row: 0,
            col: 0,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Row-major first index where `lhs` and `rhs` differ exactly.
pub(crate) fn matrix_divergence<R: InvolutiveRing>(
    component: &str,
    lhs: &Matrix<R>,
    rhs: &Matrix<R>,
) -> Option<Divergence> {
    if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
        return Some(Divergence::shape(
            component,
            format!("{}x{}", lhs.rows(), lhs.cols()),
            format!("{}x{}", rhs.rows(), rhs.cols()),
        ));
    }
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Some(Divergence {
                    component: component.to_string(),
                    row: i,
                    col: j,
                    lhs: lhs.get(i, j).to_string(),
                    rhs: rhs.get(i, j).to_string(),
                });
            }
        }
    }
    None
}

/// Compares two θ-type matrices as forms: `θ + ε θ*` exactly, then the
/// diagonals modulo the indeterminacy.
pub(crate) fn theta_divergence<R: InvolutiveRing>(
    name: &str,
    lhs: &Matrix<R>,
    rhs: &Matrix<R>,
    eps: Sign,
) -> Option<Divergence> {
    let sym = |m: &Matrix<R>| {
        let twisted = m.star().map(|x| R::from_i64(eps.value()) * x.clone());
        m.add(&twisted).expect("square matrix")
    };
    if let Some(d) = matrix_divergence(&format!("{name}.lambda"), &sym(lhs), &sym(rhs)) {
        return Some(d);
    }
    (0..lhs.rows()).find_map(|i| {
        let (x, y) = (lhs.get(i, i), rhs.get(i, i));
        (!x.quad_equal(y, eps)).then(|| Divergence {
            component: format!("{name}.mu"),
            row: i,
            col: i,
            lhs: x.to_string(),
            rhs: y.to_string(),
        })
    })
}

impl<R: InvolutiveRing> QuadraticForm<R> {
    pub fn new(theta: Matrix<R>, eps: Sign) -> Result<Self> {
        if !theta.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "theta must be square, got {}x{}",
                theta.rows(),
                theta.cols()
            )));
        }
        Ok(QuadraticForm { theta, eps })
    }

    pub fn zero(eps: Sign) -> Self {
        QuadraticForm {
            theta: Matrix::zeros(0, 0),
            eps,
        }
    }

    pub fn rank(&self) -> usize {
        self.theta.rows()
    }

    pub fn theta(&self) -> &Matrix<R> {
        &self.theta
    }

    pub fn epsilon(&self) -> Sign {
        self.eps
    }

    /// `λ = θ + ε θ*`.
    pub fn lambda(&self) -> Matrix<R> {
        let twisted = self
            .theta
            .star()
            .map(|x| R::from_i64(self.eps.value()) * x.clone());
        self.theta.add(&twisted).expect("square matrix")
    }

    /// Diagonal of θ; meaningful modulo `{v - ε v̄}` only.
    pub fn mu(&self) -> Vec<R> {
        (0..self.rank())
            .map(|i| self.theta.get(i, i).clone())
            .collect()
    }

    /// Pulls the form back along `P`, with `P` certified invertible by its
    /// monomial inverse: `θ' = P* θ P`.
    pub fn base_change(&self, p: &Matrix<R>) -> Result<Self> {
        let inv = p
            .monomial_inverse()
            .ok_or_else(|| Error::NotInvertible(p.to_string()))?;
        self.base_change_with_inverse(p, &inv)
    }

    /// As [`base_change`](Self::base_change), with the inverse supplied and
    /// checked.
    pub fn base_change_with_inverse(&self, p: &Matrix<R>, inv: &Matrix<R>) -> Result<Self> {
        let n = self.rank();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "base change of size {}x{} on rank {n}",
                p.rows(),
                p.cols()
            )));
        }
        let id = Matrix::identity(n);
        if p.mul(inv)? != id || inv.mul(p)? != id {
            return Err(Error::NotInvertible(p.to_string()));
        }
        let theta = p.star().mul(&self.theta)?.mul(p)?;
        Ok(QuadraticForm {
            theta,
            eps: self.eps,
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.eps != other.eps {
            return Err(Error::DimensionMismatch(
                "direct sum of forms with different ε".into(),
            ));
        }
        Ok(QuadraticForm {
            theta: Matrix::block_diagonal(&[self.theta.clone(), other.theta.clone()]),
            eps: self.eps,
        })
    }

    /// First place where `self` and `other` differ as forms.
    pub fn divergence(&self, other: &Self) -> Option<Divergence> {
        if self.eps != other.eps {
            return Some(Divergence::shape("epsilon", self.eps, other.eps));
        }
        if self.rank() != other.rank() {
            return Some(Divergence::shape("rank", self.rank(), other.rank()));
        }
        theta_divergence("form", &self.theta, &other.theta, self.eps)
    }

    /// Equality of `(λ, μ)`; θ itself need not agree.
    pub fn forms_equal(&self, other: &Self) -> bool {
        self.divergence(other).is_none()
    }
}

impl<W: Character> QuadraticForm<DihedralElement<W>> {
    /// Entrywise `a ↔ b`.
    pub fn switch(&self) -> Self {
        QuadraticForm {
            theta: self.theta.map(DihedralElement::switch),
            eps: self.eps,
        }
    }
}

/// `q(t) ↦ q(ba)·a`, the image of a θ-entry under `F`.
pub fn induce_entry<W: Character>(q: &ZPoly) -> DihedralElement<W> {
    &DihedralElement::from_t_poly(q) * &DihedralElement::a()
}

/// The induction `F` from forms over `Z[t]` to forms over `Z[D_∞]`, with
/// `a` acting by right multiplication.
pub fn induce_f_form<W: Character>(e: &QuadraticForm<ZPoly>) -> QuadraticForm<DihedralElement<W>> {
    QuadraticForm {
        theta: e.theta.map_into(induce_entry),
        eps: e.eps,
    }
}

/// The `Z[t]`-form `P_{p,g}` with `λ = [[0,1],[-1,0]]` and `μ = (p, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorP {
    pub p: ZPoly,
    pub g: ZPoly,
}

impl GeneratorP {
    pub fn new(p: ZPoly, g: ZPoly) -> Self {
        GeneratorP { p, g }
    }

    /// θ = [[p, 1], [0, g]], ε = -1.
    pub fn to_form(&self) -> QuadraticForm<ZPoly> {
        let theta = Matrix::from_rows(vec![
            vec![self.p.clone(), ZPoly::from_i64(1)],
            vec![ZPoly::zero(), self.g.clone()],
        ])
        .expect("2x2");
        QuadraticForm {
            theta,
            eps: Sign::Minus,
        }
    }
}

impl<R: InvolutiveRing> fmt::Display for QuadraticForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form eps={} theta={}", self.eps, self.theta)
    }
}

impl<R: InvolutiveRing> fmt::Debug for QuadraticForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
