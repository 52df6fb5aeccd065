use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;
use unil_core::linking::{arf_even, relation_form, sublagrangian_reduce};
use unil_core::poly::{F2Poly, Z4Poly, ZPoly};
use unil_core::unil::{
    enumerate_unil2, enumerate_unil3, n_class_of_sum, pi_map, unil3_count, UNil3Element,
};

fn element() -> impl Strategy<Value = UNil3Element> {
    (
        prop::collection::vec(0i64..4, 0..8),
        prop::collection::vec(0u8..2, 0..8),
    )
        .prop_map(|(x, y)| {
            let mut xc = vec![0];
            xc.extend(x);
            let mut yc = vec![0u64];
            yc.extend(y.into_iter().map(u64::from));
            let bits = yc
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, b)| acc | (b << i));
            UNil3Element::j1_z4(&Z4Poly::from_ints(&xc))
                .unwrap()
                .add_j2(&F2Poly::from_bits(bits))
        })
}

trait AddJ2 {
    fn add_j2(&self, y: &F2Poly) -> UNil3Element;
}

impl AddJ2 for UNil3Element {
    fn add_j2(&self, y: &F2Poly) -> UNil3Element {
        self + &UNil3Element::j2(y).unwrap()
    }
}

#[test]
fn switch_laws_exhaustive_at_cutoff_3() {
    let all = enumerate_unil3(3).unwrap().elements;
    assert_eq!(all.len() as u64, unil3_count(3).unwrap());
    let mut moved_order_two = 0;
    for e in &all {
        assert_eq!(&e.switch().switch(), e);
        let two = e.times(2);
        assert_eq!(two.switch(), two);
        assert_eq!(e.switch() == *e, pi_map(e.x()).is_zero(), "{e}");
        if e.order() == 2 && e.switch() != *e {
            moved_order_two += 1;
        }
        for f in &all {
            assert_eq!((e + f).switch(), &e.switch() + &f.switch());
        }
    }
    assert!(moved_order_two > 0);
}

#[test]
fn b_intertwines_switch_exhaustive() {
    for e in enumerate_unil3(3).unwrap().elements {
        let (b1, b2) = e.b_coords();
        let (s1, s2) = e.switch().b_coords();
        assert_eq!(s1, b1);
        assert_eq!(s2, &b1 + &b2);
    }
}

#[test]
fn b_is_onto_with_kernel_twice_j1() {
    let all = enumerate_unil3(3).unwrap().elements;
    let images: BTreeSet<(u64, u64)> = all
        .iter()
        .map(|e| {
            let (a, b) = e.b_coords();
            (a.to_bits().unwrap(), b.to_bits().unwrap())
        })
        .collect();
    // pairs of polynomials in t F2[t] of degree ≤ 3
    assert_eq!(images.len(), 8 * 8);
    let kernel: BTreeSet<UNil3Element> = all
        .iter()
        .filter(|e| {
            let (a, b) = e.b_coords();
            a.is_zero() && b.is_zero()
        })
        .cloned()
        .collect();
    let doubles: BTreeSet<UNil3Element> = all
        .iter()
        .map(|e| {
            UNil3Element::new(e.x().clone(), F2Poly::zero())
                .unwrap()
                .times(2)
        })
        .collect();
    assert_eq!(kernel, doubles);
}

#[test]
fn burnside_and_direct_orbit_count() {
    for d in 0..=4 {
        let t3 = enumerate_unil3(d).unwrap();
        assert!(t3.burnside_holds(), "d = {d}");
        let orbits: BTreeSet<(UNil3Element, UNil3Element)> = t3
            .elements
            .iter()
            .map(|e| {
                let s = e.switch();
                if &s < e {
                    (s, e.clone())
                } else {
                    (e.clone(), s)
                }
            })
            .collect();
        assert_eq!(orbits.len() as u64, t3.orbits);
        assert_eq!(t3.total, unil3_count(d).unwrap());
        let t2 = enumerate_unil2(d).unwrap();
        assert!(t2.burnside_holds());
        assert_eq!(t2.orbits, t2.total);
        assert_eq!(t2.total, 1 << d.div_ceil(2));
    }
}

#[test]
fn truncation_is_canonical() {
    let t = enumerate_unil3(3).unwrap();
    let set: BTreeSet<&UNil3Element> = t.elements.iter().collect();
    assert_eq!(set.len(), t.elements.len());
    for e in &t.elements {
        assert_eq!(&UNil3Element::parse(&e.to_string()).unwrap(), e);
    }
}

#[test]
fn generator_relation_matches_linking_certificate() {
    for bits in 0..64u64 {
        let p2 = F2Poly::from_bits(bits);
        let p = p2.lift();
        let t = ZPoly::t();
        let one = ZPoly::from_ints(&[1]);
        let tp = &t * &p;
        let lhs = n_class_of_sum(&[(1, t.clone(), p.clone()), (1, p.clone(), t.clone())]);
        let rhs = n_class_of_sum(&[(1, one.clone(), tp.clone()), (1, tp.clone(), one.clone())]);
        let diff = n_class_of_sum(&[
            (1, t.clone(), p.clone()),
            (1, p.clone(), t.clone()),
            (-1, one.clone(), tp.clone()),
            (-1, tp.clone(), one),
        ])
        .unwrap();
        assert!(diff.is_zero(), "p = {p}");
        if let (Ok(l), Ok(r)) = (lhs, rhs) {
            assert_eq!(l, r, "p = {p}");
        }
        let (form, s) = relation_form(&p2).unwrap();
        let (red, _) = sublagrangian_reduce(&form, &s).unwrap();
        assert!(red.is_even() && arf_even(&red).unwrap().is_zero());
    }
}

proptest! {
    #[test]
    fn switch_is_additive_involution(e in element(), f in element()) {
        prop_assert_eq!((&e + &f).switch(), &e.switch() + &f.switch());
        prop_assert_eq!(e.switch().switch(), e.clone());
        prop_assert_eq!(e.times(2).switch(), e.times(2));
        prop_assert!(e.times(4).is_zero());
    }

    #[test]
    fn b_law_on_random_elements(e in element()) {
        let (b1, b2) = e.b_coords();
        prop_assert_eq!(e.switch().b_coords(), (b1.clone(), &b1 + &b2));
    }

    #[test]
    fn group_axioms(e in element(), f in element(), g in element()) {
        prop_assert_eq!(&(&e + &f) + &g, &e + &(&f + &g));
        prop_assert_eq!(&e + &f, &f + &e);
        prop_assert!((&e + &(-&e)).is_zero());
        prop_assert_eq!(&(&e - &f) + &f, e.clone());
    }

    #[test]
    fn literal_and_json_round_trip(e in element()) {
        prop_assert_eq!(UNil3Element::parse(&e.to_string()).unwrap(), e.clone());
        let js = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::from_str::<UNil3Element>(&js).unwrap(), e);
    }
}
