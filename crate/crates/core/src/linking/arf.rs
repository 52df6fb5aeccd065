use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::f2mat::{self, Rows};
use super::LinkingForm;
use crate::error::{Error, Result};
use crate::poly::{artin_schreier_reduce, F2Poly, RationalFunction, RationalFunctionClass};

type Vector = Vec<RationalFunction>;

struct Field<'a> {
    b: Vec<Vec<RationalFunction>>,
    qbar: Vec<RationalFunction>,
    form: &'a LinkingForm,
}

impl Field<'_> {
    fn b(&self, x: &Vector, y: &Vector) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.b[i][j].is_zero() {
                    acc = &acc + &(&(xi * &self.b[i][j]) * yj);
                }
            }
        }
        acc
    }

    /// `Σ x_i² q̄_i + Σ_{i<j} x_i x_j B_ij`.
    fn q(&self, x: &Vector) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            acc = &acc + &(&x[i].square() * &self.qbar[i]);
            for j in i + 1..x.len() {
                if !x[j].is_zero() && !self.b[i][j].is_zero() {
                    acc = &acc + &(&(&x[i] * &x[j]) * &self.b[i][j]);
                }
            }
        }
        acc
    }
}

fn scale(v: &Vector, c: &RationalFunction) -> Vector {
    v.iter().map(|x| x * c).collect()
}

fn axpy(v: &mut Vector, c: &RationalFunction, x: &Vector) {
    if c.is_zero() {
        return;
    }
    for (vi, xi) in v.iter_mut().zip(x) {
        *vi = &*vi + &(c * xi);
    }
}

/// Arf invariant of an even form: `2b` is a nonsingular alternating pairing
/// over `F2(t)` refined by `q/2`, and the result is the Artin–Schreier class
/// of `Σ q(x_i) q(y_i)` over a symplectic basis.
pub fn arf_even(form: &LinkingForm) -> Result<RationalFunctionClass> {
    let k = form.rank();
    if let Some(i) = (0..k).find(|&i| !form.b_num()[i][i].is_zero()) {
        return Err(Error::OddForm(i));
    }
    let qbar = form
        .q_num()
        .iter()
        .map(|q| q.halve().map(RationalFunction::from_poly))
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::OddForm(0))?;
    let field = Field {
        b: form
            .b_num()
            .iter()
            .map(|r| r.iter().cloned().map(RationalFunction::from_poly).collect())
            .collect(),
        qbar,
        form,
    };
    let mut pool: Vec<Vector> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut total = RationalFunction::zero();
    while let Some(x) = pool.pop() {
        let partner = pool.iter().position(|y| !field.b(&x, y).is_zero());
        let Some(pos) = partner else {
            return Err(Error::SingularForm(format!("{:?}", field.form)));
        };
        let y0 = pool.remove(pos);
        let inv = field.b(&x, &y0).inv().expect("nonzero pairing");
        let y = scale(&y0, &inv);
        total = &total + &(&field.q(&x) * &field.q(&y));
        for v in pool.iter_mut() {
            let bx = field.b(v, &x);
            let by = field.b(v, &y);
            axpy(v, &by, &x);
            axpy(v, &bx, &y);
        }
    }
    artin_schreier_reduce(total.numerator(), total.denominator())
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> F2Poly {
    F2Poly::from_bits(rng.random_range(0..1u64 << (max_degree + 1)))
}

/// The form in the basis given by the rows of `v`.
pub(crate) fn change_basis(form: &LinkingForm, v: &Rows) -> Result<LinkingForm> {
    let b_num = v
        .iter()
        .map(|x| v.iter().map(|y| form.b(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Rows>>()?;
    let q_num = v.iter().map(|x| form.q(x)).collect::<Result<Vec<_>>>()?;
    LinkingForm::new(b_num, q_num)
}

/// `arf_even` after a seeded random unimodular change of basis, for checking
/// independence of the symplectic basis found.
pub fn arf_even_randomized(form: &LinkingForm, seed: u64) -> Result<RationalFunctionClass> {
    let k = form.rank();
    if k < 2 {
        return arf_even(form);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = f2mat::identity(k);
    for _ in 0..3 * k {
        let i = rng.random_range(0..k);
        let j = rng.random_range(0..k - 1);
        let j = if j >= i { j + 1 } else { j };
        let f = random_poly(&mut rng, 2);
        let src = v[j].clone();
        for (a, b) in v[i].iter_mut().zip(&src) {
            *a = &*a + &(&f * b);
        }
        if rng.random_bool(0.3) {
            v.swap(i, j);
        }
    }
    debug_assert!(f2mat::column_pivots(&v, k).iter().all(One::is_one));
    arf_even(&change_basis(form, &v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{idem_reduce, Z4Poly};

    fn hyperbolic(q1: &str, q2: &str) -> LinkingForm {
        let one = F2Poly::one();
        let zero = F2Poly::zero();
        LinkingForm::new(
            vec![vec![zero.clone(), one.clone()], vec![one, zero]],
            vec![Z4Poly::parse(q1).unwrap(), Z4Poly::parse(q2).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn hyperbolic_examples() {
        assert!(arf_even(&hyperbolic("0", "0")).unwrap().is_zero());
        let a = arf_even(&hyperbolic("2*t", "2")).unwrap();
        assert_eq!(
            a,
            RationalFunctionClass::from_polynomial_class(idem_reduce(&F2Poly::t()))
        );
        assert!(arf_even(&hyperbolic("2*t^2", "2")).unwrap() == a);
    }

    #[test]
    fn odd_form_rejected() {
        let n = super::super::make_n(
            &crate::poly::ZPoly::parse("t").unwrap(),
            &crate::poly::ZPoly::one(),
        )
        .unwrap();
        assert!(matches!(arf_even(&n), Err(Error::OddForm(0))));
    }

    #[test]
    fn randomized_runs_agree() {
        let f = LinkingForm::direct_sum(&[hyperbolic("2*t", "2"), hyperbolic("2*t^3", "2")]);
        let base = arf_even(&f).unwrap();
        for seed in 0..10 {
            assert_eq!(arf_even_randomized(&f, seed).unwrap(), base);
        }
    }
}
