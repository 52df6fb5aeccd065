use std::collections::{BTreeMap, BTreeSet};

use unil_core::classify::{bar_i, bar_j, enumerate_j, relevant_unil, Coordinate, StructureSet};

fn binomial2(k: u64) -> u64 {
    k * (k + 1) / 2
}

#[test]
fn structure_set_counts() {
    let size = |n| StructureSet::new(n).unwrap().count(0);
    assert_eq!([size(4), size(5), size(6), size(8)], [2, 4, 4, 8]);
    for n in 4..30 {
        let s = StructureSet::new(n).unwrap();
        assert!(s.z2_count >= 1);
        assert_eq!(s.has_z, n % 4 == 3);
        assert_eq!(4 * s.m + s.l, n);
        assert!(0 < s.l && s.l <= 4);
        assert_eq!(relevant_unil(n).unwrap(), relevant_unil(n + 4).unwrap());
    }
}

#[test]
fn table_counts_follow_product_formula() {
    for n in 4..=11 {
        for d in 0..=3 {
            for zb in 0..=1 {
                let t = enumerate_j(n, d, zb).unwrap();
                let i_n = StructureSet::new(n).unwrap().count(zb);
                assert_eq!(t.pairs, binomial2(i_n));
                assert_eq!(t.rows.len() as u64, t.pairs * t.orbits, "n={n} d={d}");
                assert_eq!(t.flagged() as u64, t.pairs * (t.orbits - 1));
                let keys: BTreeSet<_> = t.rows.iter().map(|r| (&r.pair, &r.theta)).collect();
                assert_eq!(keys.len(), t.rows.len());
            }
        }
    }
}

#[test]
fn bar_j_matches_direct_orbit_enumeration() {
    let t = enumerate_j(7, 0, 1).unwrap();
    let bar = bar_j(&t);
    let norm = |a: Coordinate, b: Coordinate| if a <= b { (a, b) } else { (b, a) };
    let orbits: BTreeSet<BTreeSet<(Coordinate, Coordinate)>> = t
        .rows
        .iter()
        .map(|r| {
            let (a, b) = r.pair.clone();
            BTreeSet::from([norm(a.clone(), b.clone()), norm(a.negate(), b.negate())])
        })
        .collect();
    assert_eq!(bar.classes, orbits.len());

    let mut fibre: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, r) in bar.rows.iter().enumerate() {
        let root = r.identified_with.unwrap_or(i);
        assert!(bar.rows[root].identified_with.is_none());
        *fibre.entry(root).or_default() += 1;
        let (a, b) = &r.class.pair;
        if norm(a.negate(), b.negate()) == (a.clone(), b.clone()) {
            assert!(r.identified_with.is_none());
            assert_eq!(
                bar.rows
                    .iter()
                    .filter(|o| o.identified_with == Some(i))
                    .count(),
                0
            );
        }
    }
    assert!(fibre.values().all(|&n| n <= 2));
    assert!(fibre.values().any(|&n| n == 2));
}

#[test]
fn bar_j_is_identity_off_three_mod_four() {
    for n in [4, 5, 6, 8] {
        let t = enumerate_j(n, 1, 2).unwrap();
        let bar = bar_j(&t);
        assert_eq!(bar.classes, t.rows.len());
        assert_eq!(
            bar_i(n, 2).unwrap().len() as u64,
            StructureSet::new(n).unwrap().count(2)
        );
    }
}
