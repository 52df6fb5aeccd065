use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use unil_core::linking::{
    arf_even, arf_even_randomized, find_lagrangian, make_n, orthogonal_complement, relation_form,
    resolution_to_linking, sublagrangian_reduce, LinkingForm, Submodule,
};
use unil_core::poly::{even_odd_decompose, F2Poly, Z4Poly, ZPoly, Z4};
use unil_core::quad_forms::QuadResolution;

fn f2(bits: u64) -> F2Poly {
    F2Poly::from_bits(bits)
}

fn hyperbolic(q1: &F2Poly, q2: &F2Poly) -> LinkingForm {
    let one = F2Poly::one();
    let zero = F2Poly::zero();
    LinkingForm::new(
        vec![vec![zero.clone(), one.clone()], vec![one, zero]],
        vec![q1.double_z4(), q2.double_z4()],
    )
    .unwrap()
}

/// `q` through integer arithmetic on arbitrary lifts, read mod 4.
fn q_by_lifts(x: &[ZPoly], q_lifts: &[ZPoly], b_lifts: &[Vec<ZPoly>]) -> Z4Poly {
    let mut acc = ZPoly::zero();
    for i in 0..x.len() {
        acc = &acc + &(&(&x[i] * &x[i]) * &q_lifts[i]);
        for j in i + 1..x.len() {
            let cross = &(&x[i] * &x[j]) * &b_lifts[i][j];
            acc = &acc + &cross.scale(&BigInt::from(2));
        }
    }
    Z4Poly::reduce_from(&acc)
}

fn lift_with(p: &F2Poly, noise: &ZPoly) -> ZPoly {
    &p.lift() + &noise.scale(&BigInt::from(2))
}

fn zpoly(max_deg: usize) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-3i64..=3, 0..=max_deg + 1).prop_map(|v| ZPoly::from_ints(&v))
}

fn random_generator() -> impl Strategy<Value = LinkingForm> {
    (0u64..16, 0u64..16, any::<bool>()).prop_map(|(p, g, swap)| {
        let (p, g) = (f2(p).lift(), f2(g).lift());
        let (p, g) = if swap {
            (&ZPoly::t() * &p, g)
        } else {
            (p, &ZPoly::t() * &g)
        };
        make_n(&p, &g).unwrap()
    })
}

/// Rows of a unimodular matrix built from elementary operations.
fn unimodular(k: usize) -> impl Strategy<Value = Vec<Vec<F2Poly>>> {
    prop::collection::vec((0..k, 0..k, 0u64..8), 0..3 * k).prop_map(move |ops| {
        let mut v: Vec<Vec<F2Poly>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            F2Poly::one()
                        } else {
                            F2Poly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for (i, j, f) in ops {
            if i == j {
                continue;
            }
            let src = v[j].clone();
            for (a, b) in v[i].iter_mut().zip(&src) {
                *a = &*a + &(&f2(f) * b);
            }
        }
        v
    })
}

fn change_basis(form: &LinkingForm, v: &[Vec<F2Poly>]) -> LinkingForm {
    let b = v
        .iter()
        .map(|x| v.iter().map(|y| form.b(x, y).unwrap()).collect())
        .collect();
    let q = v.iter().map(|x| form.q(x).unwrap()).collect();
    LinkingForm::new(b, q).unwrap()
}

fn random_even_form() -> impl Strategy<Value = LinkingForm> {
    prop::collection::vec((0u64..16, 0u64..16), 1..=2)
        .prop_flat_map(|qs| {
            let k = 2 * qs.len();
            (Just(qs), unimodular(k))
        })
        .prop_map(|(qs, v)| {
            let parts: Vec<LinkingForm> = qs
                .iter()
                .map(|&(a, b)| hyperbolic(&f2(a), &f2(b)))
                .collect();
            change_basis(&LinkingForm::direct_sum(&parts), &v)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_is_independent_of_lifts(
        form in random_generator(),
        x in prop::collection::vec(0u64..8, 2),
        noise in prop::collection::vec(zpoly(2), 2),
        q_noise in prop::collection::vec(zpoly(2), 2),
        b_noise in zpoly(2),
    ) {
        let xs: Vec<F2Poly> = x.iter().map(|&b| f2(b)).collect();
        let lifts: Vec<ZPoly> = xs.iter().zip(&noise).map(|(p, n)| lift_with(p, n)).collect();
        let q_lifts: Vec<ZPoly> = form.q_num().iter().zip(&q_noise).map(|(q, n)| {
            &q.map(|c| BigInt::from(c.value())) + &n.scale(&BigInt::from(4))
        }).collect();
        let off = lift_with(&form.b_num()[0][1], &b_noise);
        let b_lifts = vec![vec![ZPoly::zero(), off.clone()], vec![off, ZPoly::zero()]];
        prop_assert_eq!(q_by_lifts(&lifts, &q_lifts, &b_lifts), form.q(&xs).unwrap());
    }

    #[test]
    fn quadratic_law(form in random_generator(), x in prop::collection::vec(0u64..16, 2), y in prop::collection::vec(0u64..16, 2), f in 0u64..8) {
        let x: Vec<F2Poly> = x.into_iter().map(f2).collect();
        let y: Vec<F2Poly> = y.into_iter().map(f2).collect();
        let sum: Vec<F2Poly> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let rhs = &(&form.q(&x).unwrap() + &form.q(&y).unwrap()) + &form.b(&x, &y).unwrap().double_z4();
        prop_assert_eq!(form.q(&sum).unwrap(), rhs);
        let fx: Vec<F2Poly> = x.iter().map(|a| &f2(f) * a).collect();
        let lf = f2(f).lift_z4();
        let ff = &lf * &lf;
        prop_assert_eq!(form.q(&fx).unwrap(), &ff * &form.q(&x).unwrap());
        let b = form.b(&x, &x).unwrap();
        prop_assert_eq!(form.q(&x).unwrap().to_f2(), b);
    }

    #[test]
    fn evenness_holds_for_all_vectors(form in random_generator(), x in prop::collection::vec(0u64..64, 4)) {
        let sum = LinkingForm::direct_sum(&[form.clone(), hyperbolic(&f2(1), &f2(2))]);
        let x: Vec<F2Poly> = x.into_iter().map(f2).collect();
        let diag = sum.b(&x, &x).unwrap();
        if sum.is_even() {
            prop_assert!(diag.is_zero());
        }
        let h = hyperbolic(&f2(3), &f2(0));
        prop_assert!(h.is_even());
        prop_assert!(h.b(&x[..2], &x[..2]).unwrap().is_zero());
    }

    #[test]
    fn arf_is_basis_independent(form in random_even_form(), seed in any::<u64>()) {
        let a = arf_even(&form).unwrap();
        prop_assert_eq!(arf_even_randomized(&form, seed).unwrap(), a.clone());
        prop_assert_eq!(arf_even_randomized(&form, seed ^ 0x5a5a).unwrap(), a);
    }

    #[test]
    fn arf_is_additive(a in (0u64..32, 0u64..32), b in (0u64..32, 0u64..32)) {
        let x = hyperbolic(&f2(a.0), &f2(a.1));
        let y = hyperbolic(&f2(b.0), &f2(b.1));
        let lhs = arf_even(&LinkingForm::direct_sum(&[x.clone(), y.clone()])).unwrap();
        prop_assert_eq!(lhs, &arf_even(&x).unwrap() + &arf_even(&y).unwrap());
    }
}

#[test]
fn arf_vanishes_where_lagrangian_found() {
    let mut found = 0;
    for a in 0..8u64 {
        for b in 0..8u64 {
            let h = hyperbolic(&f2(a), &f2(b));
            if find_lagrangian(&h, 2).unwrap().is_some() {
                found += 1;
                assert!(arf_even(&h).unwrap().is_zero(), "q = ({a:b}, {b:b})");
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn hyperbolic_with_arf_t_has_no_lagrangian() {
    let h = hyperbolic(&F2Poly::t(), &F2Poly::one());
    assert!(!arf_even(&h).unwrap().is_zero());
    assert!(find_lagrangian(&h, 3).unwrap().is_none());
}

#[test]
fn complement_matches_displayed_span() {
    for bits in 0..64u64 {
        let p = f2(bits);
        let (form, s) = relation_form(&p).unwrap();
        let (ev, od) = even_odd_decompose(&p);
        let e = |i: usize, c: &F2Poly| {
            let mut v = vec![F2Poly::zero(); 8];
            v[i - 1] = c.clone();
            v
        };
        let add = |x: Vec<F2Poly>, y: Vec<F2Poly>| -> Vec<F2Poly> {
            x.iter().zip(&y).map(|(a, b)| a + b).collect()
        };
        let one = F2Poly::one();
        let w1 = add(add(e(1, &od), e(3, &one)), e(5, &ev));
        let w3 = add(add(e(1, &ev), e(5, &(&F2Poly::t() * &od))), e(7, &one));
        let mut gens = vec![w1, e(4, &one), w3, e(8, &one)];
        gens.extend(s.basis().iter().cloned());
        let expected = Submodule::new(8, gens).unwrap();
        assert_eq!(
            orthogonal_complement(&form, &s).unwrap(),
            expected,
            "p = {p}"
        );
    }
}

/// `p_od e1 + e3 + p_ev e5`, `e4`, `p_ev e1 + t p_od e5 + e7`, `e8`.
fn displayed_quotient_basis(p: &F2Poly) -> Vec<Vec<F2Poly>> {
    let (ev, od) = even_odd_decompose(p);
    let mut w = vec![vec![F2Poly::zero(); 8]; 4];
    w[0][0] = od.clone();
    w[0][2] = F2Poly::one();
    w[0][4] = ev.clone();
    w[1][3] = F2Poly::one();
    w[2][0] = ev;
    w[2][4] = &F2Poly::t() * &od;
    w[2][6] = F2Poly::one();
    w[3][7] = F2Poly::one();
    w
}

#[test]
fn relation_reduces_to_even_form_with_trivial_arf() {
    for bits in 0..64u64 {
        let p = f2(bits);
        let (form, s) = relation_form(&p).unwrap();
        let (red, w) = sublagrangian_reduce(&form, &s).unwrap();
        assert_eq!((red.rank(), w.len()), (4, 4));
        assert!(red.is_even(), "p = {p}");
        assert!(arf_even(&red).unwrap().is_zero(), "p = {p}");

        let shown = change_basis(&form, &displayed_quotient_basis(&p));
        let b = shown.b_num();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b[i][j].is_one(), i ^ j == 1, "p = {p}");
                assert_eq!(b[i][j].is_zero(), i ^ j != 1, "p = {p}");
            }
        }
        assert_eq!(shown.q_num()[1], F2Poly::t().double_z4());
        assert_eq!(shown.q_num()[3], Z4Poly::constant(Z4::new(2)));
        assert!(arf_even(&shown).unwrap().is_zero(), "p = {p}");
    }
}

#[test]
fn relation_reduction_admits_lagrangian_for_small_p() {
    for bits in 0..8u64 {
        let (form, s) = relation_form(&f2(bits)).unwrap();
        let (red, _) = sublagrangian_reduce(&form, &s).unwrap();
        let l = find_lagrangian(&red, 3).unwrap();
        assert!(l.is_some(), "p = {}", f2(bits));
        let l = l.unwrap();
        assert!(l.is_direct_summand());
        assert_eq!(orthogonal_complement(&red, &l).unwrap(), l);
    }
}

#[test]
fn resolution_dictionary_round_trip() {
    for pb in 0..16u64 {
        for gb in 0..16u64 {
            let p = f2(pb).lift();
            let g = f2(gb).lift();
            let tp = &ZPoly::t() * &p;
            let c = QuadResolution::n_complex(&tp, &g);
            assert_eq!(resolution_to_linking(&c).unwrap(), make_n(&tp, &g).unwrap());
        }
    }
}

#[test]
fn displayed_block_sum() {
    let p = f2(0b110);
    let (form, _) = relation_form(&p).unwrap();
    let b = form.b_num();
    let expected_diag = [F2Poly::t(), F2Poly::zero(), p.clone(), F2Poly::zero()];
    for (i, d) in expected_diag.iter().enumerate() {
        assert_eq!(&b[i][i], d);
    }
    let q = form.q_num();
    assert_eq!(q[0], F2Poly::t().lift_z4());
    assert_eq!(q[1], p.double_z4());
    assert_eq!(q[2], p.lift_z4());
    assert_eq!(q[3], F2Poly::t().double_z4());
    // negated block: -(1/2, tp, tp/2, 1)
    assert_eq!(q[4], Z4Poly::constant(Z4::new(3)));
    assert_eq!(q[7], Z4Poly::constant(Z4::new(2)));
}
