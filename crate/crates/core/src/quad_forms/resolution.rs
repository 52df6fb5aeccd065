use std::fmt;

use crate::dihedral::{Character, DihedralElement};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::ZPoly;
use crate::ring::{InvolutiveRing, Sign};

use super::{induce_entry, matrix_divergence, theta_divergence, Divergence};

/// A 1-dimensional quadratic Poincaré complex `C_1 --d--> C_0` with
/// structure maps `ψ₀`, `ψ₁` satisfying `ψ₁ + ψ₁* = -d ψ₀`.
///
/// Only differentials of the form `d = 2U` with `U` a monomial unit
/// matrix are accepted; these are injective and invertible once 2 is.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadResolution<R> {
    d: Matrix<R>,
    psi0: Matrix<R>,
    psi1: Matrix<R>,
    eps: Sign,
}

impl<R: InvolutiveRing> QuadResolution<R> {
    pub fn new(d: Matrix<R>, psi0: Matrix<R>, psi1: Matrix<R>, eps: Sign) -> Result<Self> {
        let k = d.rows();
        for (name, m) in [("d", &d), ("psi0", &psi0), ("psi1", &psi1)] {
            if m.rows() != k || m.cols() != k {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {k}x{k}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let halved = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| d.get(i, j).halve())
            .collect::<Option<Vec<R>>>();
        let unit = halved.map(|entries| {
            let rows = entries.chunks(k.max(1)).map(<[R]>::to_vec).collect();
            Matrix::from_rows(rows).expect("square")
        });
        match unit {
            Some(u) if k == 0 || u.monomial_inverse().is_some() => {}
            _ => return Err(Error::UnsupportedDifferential),
        }
        let lhs = psi1.add(&psi1.star())?;
        let rhs = d.mul(&psi0)?.neg();
        if let Some(div) = matrix_divergence("psi1 + psi1*", &lhs, &rhs) {
            return Err(Error::InvalidResolution(format!(
                "psi1 + psi1* != -d psi0 at {div}"
            )));
        }
        Ok(QuadResolution { d, psi0, psi1, eps })
    }

    pub fn zero(eps: Sign) -> Self {
        let z = Matrix::zeros(0, 0);
        QuadResolution {
            d: z.clone(),
            psi0: z.clone(),
            psi1: z,
            eps,
        }
    }

    pub fn rank(&self) -> usize {
        self.d.rows()
    }

    pub fn d(&self) -> &Matrix<R> {
        &self.d
    }

    pub fn psi0(&self) -> &Matrix<R> {
        &self.psi0
    }

    pub fn psi1(&self) -> &Matrix<R> {
        &self.psi1
    }

    pub fn epsilon(&self) -> Sign {
        self.eps
    }

    /// `d' = P⁻¹ d P`, `ψᵢ' = P* ψᵢ P`, re-validated.
    pub fn base_change(&self, p: &Matrix<R>) -> Result<Self> {
        let inv = p
            .monomial_inverse()
            .ok_or_else(|| Error::NotInvertible(p.to_string()))?;
        if p.rows() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "base change of size {} on rank {}",
                p.rows(),
                self.rank()
            )));
        }
        let ps = p.star();
        Self::new(
            inv.mul(&self.d)?.mul(p)?,
            ps.mul(&self.psi0)?.mul(p)?,
            ps.mul(&self.psi1)?.mul(p)?,
            self.eps,
        )
    }

    /// `d` and `ψ₀` exactly; `ψ₁` as a θ-matrix, i.e. `ψ₁ + ε ψ₁*` exactly
    /// and its diagonal modulo `{v - ε v̄}`.
    pub fn divergence(&self, other: &Self) -> Option<Divergence> {
        if self.eps != other.eps {
            return Some(Divergence::shape("epsilon", self.eps, other.eps));
        }
        matrix_divergence("d", &self.d, &other.d)
            .or_else(|| matrix_divergence("psi0", &self.psi0, &other.psi0))
            .or_else(|| theta_divergence("psi1", &self.psi1, &other.psi1, self.eps))
    }

    pub fn resolutions_equal(&self, other: &Self) -> bool {
        self.divergence(other).is_none()
    }
}

impl QuadResolution<ZPoly> {
    /// The `(-1)`-quadratic complex with `d = 2`, `ψ₀ = [[p, 1], [1, 2g]]`
    /// and `ψ₁ = -ψ₀`; for `p = t p'` it represents `N_{tp', g}`.
    pub fn n_complex(p: &ZPoly, g: &ZPoly) -> Self {
        let two_g = g.scale(&2.into());
        let psi0 = Matrix::from_rows(vec![
            vec![p.clone(), ZPoly::from_i64(1)],
            vec![ZPoly::from_i64(1), two_g],
        ])
        .expect("2x2");
        Self::new(Matrix::scalar(2, 2), psi0.clone(), psi0.neg(), Sign::Minus)
            .expect("symmetric psi0 satisfies the resolution identity")
    }
}

impl<W: Character> QuadResolution<DihedralElement<W>> {
    /// Entrywise `a ↔ b`.
    pub fn switch(&self) -> Self {
        QuadResolution {
            d: self.d.map(DihedralElement::switch),
            psi0: self.psi0.map(DihedralElement::switch),
            psi1: self.psi1.map(DihedralElement::switch),
            eps: self.eps,
        }
    }
}

/// The induction `F` on complexes: `d` by coefficient extension, `ψ`
/// entries by `q(t) ↦ q(ba)·a`.
pub fn induce_f_resolution<W: Character>(
    c: &QuadResolution<ZPoly>,
) -> Result<QuadResolution<DihedralElement<W>>> {
    QuadResolution::new(
        c.d.map_into(DihedralElement::from_t_poly),
        c.psi0.map_into(induce_entry),
        c.psi1.map_into(induce_entry),
        c.eps,
    )
    .map_err(|e| Error::InvalidResolution(format!("induced complex is not a resolution: {e}")))
}

impl<R: InvolutiveRing> fmt::Display for QuadResolution<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "resolution eps={} d={} psi0={} psi1={}",
            self.eps, self.d, self.psi0, self.psi1
        )
    }
}

impl<R: InvolutiveRing> fmt::Debug for QuadResolution<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::Untwisted;

    type D = DihedralElement<Untwisted>;

    fn z(s: &str) -> ZPoly {
        ZPoly::parse(s).unwrap()
    }

    fn dm(s: &str) -> Matrix<D> {
        Matrix::parse(s).unwrap()
    }

    #[test]
    fn induced_n_complex() {
        // p = t + 1, g = t
        let c = QuadResolution::n_complex(&z("t^2 + t"), &z("t"));
        let f: QuadResolution<D> = induce_f_resolution(&c).unwrap();
        assert_eq!(f.d(), &Matrix::scalar(2, 2));
        assert_eq!(f.psi0(), &dm("[[b + t*b, a], [a, 2*t*a]]"));
        assert_eq!(f.psi1(), &f.psi0().neg());
    }

    #[test]
    fn resolution_identity_enforced() {
        let d = Matrix::<ZPoly>::scalar(2, 2);
        let psi0 = Matrix::parse("[[t, 1], [1, 2]]").unwrap();
        let bad = Matrix::parse("[[t, 1], [1, 2]]").unwrap();
        assert!(matches!(
            QuadResolution::new(d.clone(), psi0.clone(), bad, Sign::Minus),
            Err(Error::InvalidResolution(_))
        ));
        assert!(matches!(
            QuadResolution::new(Matrix::scalar(2, 3), psi0.clone(), psi0.neg(), Sign::Minus),
            Err(Error::UnsupportedDifferential)
        ));
        assert!(QuadResolution::new(d, psi0.clone(), psi0.neg(), Sign::Minus).is_ok());
    }

    #[test]
    fn switch_of_induced_n_matrix() {
        // the base-changed complex [[b p, b], [b, 2 a g]] for p = t, g = 1 + t
        let psi0 = dm("[[b*t, b], [b, 2*a + 2*a*t]]");
        let c = QuadResolution::new(Matrix::scalar(2, 2), psi0.clone(), psi0.neg(), Sign::Minus)
            .unwrap();
        let s = c.switch();
        assert_eq!(s.psi0(), &dm("[[a*t^-1, a], [a, 2*b + 2*b*t^-1]]"));
        assert_eq!(s.switch(), c);
    }

    #[test]
    fn zero_rank() {
        let c = QuadResolution::<ZPoly>::zero(Sign::Minus);
        let f: QuadResolution<D> = induce_f_resolution(&c).unwrap();
        assert_eq!(f.rank(), 0);
    }
}
