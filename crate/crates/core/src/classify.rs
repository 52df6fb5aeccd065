//! Structure sets of `P^n` and the classification table of manifolds
//! homotopy equivalent to `P^n # P^n`, truncated to finite size.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::unil::{enumerate_unil2, enumerate_unil3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelevantUnil {
    Zero,
    UNil2,
    UNil3,
}

impl fmt::Display for RelevantUnil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelevantUnil::Zero => "0",
            RelevantUnil::UNil2 => "UNil_2",
            RelevantUnil::UNil3 => "UNil_3",
        })
    }
}

fn check_dimension(n: i64) -> Result<()> {
    if n <= 3 {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

/// `UNil_{n+1}(Z; Z^ε, Z^ε)` with `ε = (-1)^(n+1)`, reduced by periodicity.
pub fn relevant_unil(n: i64) -> Result<RelevantUnil> {
    check_dimension(n)?;
    Ok(match n.rem_euclid(4) {
        0 => RelevantUnil::UNil3,
        1 => RelevantUnil::UNil2,
        _ => RelevantUnil::Zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureSet {
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub z2_count: usize,
    pub has_z: bool,
}

impl StructureSet {
    pub fn new(n: i64) -> Result<Self> {
        check_dimension(n)?;
        let l = (n - 1).rem_euclid(4) + 1;
        let m = (n - l) / 4;
        Ok(StructureSet {
            n,
            m,
            l,
            z2_count: (2 * m + l / 4) as usize,
            has_z: l == 3,
        })
    }

    /// `|I_n|`, with the `Z` coordinate limited to `|z| ≤ z_bound`.
    pub fn count(&self, z_bound: u32) -> u64 {
        let base = 1u64 << self.z2_count;
        if self.has_z {
            base * (2 * u64::from(z_bound) + 1)
        } else {
            base
        }
    }

    pub fn coordinates(&self, z_bound: u32) -> Vec<Coordinate> {
        let zs: Vec<Option<i64>> = if self.has_z {
            let b = i64::from(z_bound);
            (-b..=b).map(Some).collect()
        } else {
            vec![None]
        };
        let mut out = Vec::new();
        for bits in 0..1u64 << self.z2_count {
            let z2: Vec<u8> = (0..self.z2_count)
                .map(|i| ((bits >> (self.z2_count - 1 - i)) & 1) as u8)
                .collect();
            for z in &zs {
                out.push(Coordinate {
                    z2: z2.clone(),
                    z: *z,
                });
            }
        }
        out.sort();
        out
    }
}

/// A point of `⊕ Z2 (⊕ Z)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub z2: Vec<u8>,
    pub z: Option<i64>,
}

impl Coordinate {
    /// `-c`, which only moves the `Z` coordinate.
    pub fn negate(&self) -> Coordinate {
        Coordinate {
            z2: self.z2.clone(),
            z: self.z.map(|z| -z),
        }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.z2 {
            write!(f, "{b}")?;
        }
        if let Some(z) = self.z {
            write!(f, ":{z}")?;
        }
        Ok(())
    }
}

impl Serialize for Coordinate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Representatives of `Ī_n`: coordinates with `z ≥ 0`.
pub fn bar_i(n: i64, z_bound: u32) -> Result<Vec<Coordinate>> {
    let s = StructureSet::new(n)?;
    Ok(s.coordinates(z_bound)
        .into_iter()
        .filter(|c| c.z.is_none_or(|z| z >= 0))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldClass {
    pub pair: (Coordinate, Coordinate),
    pub theta: String,
    pub not_connected_sum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationTable {
    pub n: i64,
    pub epsilon: i8,
    pub degree_cutoff: usize,
    pub z_bound: u32,
    pub unil: RelevantUnil,
    pub structure_set: StructureSet,
    pub pairs: u64,
    pub orbits: u64,
    pub rows: Vec<ManifoldClass>,
}

impl ClassificationTable {
    pub fn flagged(&self) -> usize {
        self.rows.iter().filter(|r| r.not_connected_sum).count()
    }
}

/// Orbit representatives of `sw` on the relevant UNil group, zero first.
fn theta_orbits(unil: RelevantUnil, degree_cutoff: usize) -> Result<Vec<String>> {
    Ok(match unil {
        RelevantUnil::Zero => vec!["0".to_string()],
        RelevantUnil::UNil2 => enumerate_unil2(degree_cutoff)?
            .representatives
            .iter()
            .map(ToString::to_string)
            .collect(),
        RelevantUnil::UNil3 => enumerate_unil3(degree_cutoff)?
            .representatives
            .iter()
            .map(ToString::to_string)
            .collect(),
    })
}

/// `J_n`: unordered pairs from `I_n` times `sw`-orbits of the relevant UNil
/// group, truncated by `degree_cutoff` and `z_bound`.
pub fn enumerate_j(n: i64, degree_cutoff: usize, z_bound: u32) -> Result<ClassificationTable> {
    let unil = relevant_unil(n)?;
    let structure_set = StructureSet::new(n)?;
    let coords = structure_set.coordinates(z_bound);
    let thetas = theta_orbits(unil, degree_cutoff)?;
    debug_assert_eq!(thetas.first().map(String::as_str), Some("0"));
    let pairs: Vec<(usize, usize)> = (0..coords.len())
        .flat_map(|i| (i..coords.len()).map(move |j| (i, j)))
        .collect();
    let rows: Vec<ManifoldClass> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let coords = &coords;
            thetas.iter().map(move |th| ManifoldClass {
                pair: (coords[i].clone(), coords[j].clone()),
                theta: th.clone(),
                not_connected_sum: th != "0",
            })
        })
        .collect();
    Ok(ClassificationTable {
        n,
        epsilon: if n % 2 == 0 { -1 } else { 1 },
        degree_cutoff,
        z_bound,
        unil,
        structure_set,
        pairs: pairs.len() as u64,
        orbits: thetas.len() as u64,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarJRow {
    #[serde(flatten)]
    pub class: ManifoldClass,
    /// Index of the row this one is identified with, when it is not its own
    /// representative.
    pub identified_with: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarJTable {
    pub n: i64,
    pub classes: usize,
    pub rows: Vec<BarJRow>,
}

fn sorted_pair(a: Coordinate, b: Coordinate) -> (Coordinate, Coordinate) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// `J̄_n`: for `n ≡ 3 mod 4` the pair `{y, z}` is identified with `{-y, -z}`
/// at the same `ϑ`; otherwise nothing changes.
pub fn bar_j(table: &ClassificationTable) -> BarJTable {
    let index: std::collections::HashMap<(&(Coordinate, Coordinate), &str), usize> = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| ((&r.pair, r.theta.as_str()), i))
        .collect();
    let negate = table.n.rem_euclid(4) == 3;
    let rows: Vec<BarJRow> = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let identified_with = negate
                .then(|| sorted_pair(r.pair.0.negate(), r.pair.1.negate()))
                .and_then(|p| index.get(&(&p, r.theta.as_str())).copied())
                .filter(|&j| j < i);
            BarJRow {
                class: r.clone(),
                identified_with,
            }
        })
        .collect();
    BarJTable {
        n: table.n,
        classes: rows.iter().filter(|r| r.identified_with.is_none()).count(),
        rows,
    }
}

const CSV_HEADER: &str = "n,pair_coord_1,pair_coord_2,theta,not_connected_sum,identified_with";

/// CSV with the `identified_with` column filled from `J̄_n`.
pub fn to_csv(table: &ClassificationTable) -> String {
    let bar = bar_j(table);
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &bar.rows {
        let c = &r.class;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            table.n,
            c.pair.0,
            c.pair.1,
            c.theta,
            c.not_connected_sum,
            r.identified_with.map_or(String::new(), |i| i.to_string())
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonTable<'a> {
    #[serde(flatten)]
    table: &'a ClassificationTable,
    bar_j: BarJTable,
}

pub fn to_json(table: &ClassificationTable) -> Result<String> {
    Ok(serde_json::to_string_pretty(&JsonTable {
        table,
        bar_j: bar_j(table),
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relevant_group() {
        assert_eq!(relevant_unil(4).unwrap(), RelevantUnil::UNil3);
        assert_eq!(relevant_unil(5).unwrap(), RelevantUnil::UNil2);
        assert_eq!(relevant_unil(6).unwrap(), RelevantUnil::Zero);
        assert_eq!(relevant_unil(7).unwrap(), RelevantUnil::Zero);
        assert!(matches!(relevant_unil(3), Err(Error::InvalidDimension(3))));
        for n in 4..40 {
            assert_eq!(relevant_unil(n).unwrap(), relevant_unil(n + 4).unwrap());
        }
    }

    #[test]
    fn structure_set_sizes() {
        let s = |n| StructureSet::new(n).unwrap();
        assert_eq!((s(4).z2_count, s(4).has_z, s(4).count(0)), (1, false, 2));
        assert_eq!((s(5).z2_count, s(5).count(0)), (2, 4));
        assert_eq!((s(7).z2_count, s(7).has_z), (2, true));
        assert_eq!(s(7).count(2), 20);
        assert_eq!(s(8).count(0), 8);
        assert_eq!(bar_i(4, 5).unwrap().len(), 2);
        assert_eq!(bar_i(7, 2).unwrap().len(), 12);
        assert!(bar_i(7, 0).unwrap().iter().all(|c| c.z == Some(0)));
    }

    #[test]
    fn table_examples() {
        let t = enumerate_j(4, 1, 0).unwrap();
        assert_eq!((t.rows.len(), t.flagged()), (18, 15));
        let t = enumerate_j(6, 3, 0).unwrap();
        assert_eq!((t.rows.len(), t.flagged()), (10, 0));
        let t = enumerate_j(4, 0, 0).unwrap();
        assert_eq!((t.rows.len(), t.flagged()), (3, 0));
        assert_eq!(bar_j(&t).classes, 3);
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&enumerate_j(7, 0, 1).unwrap());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("7,00:-1,00:-1,0,false,"));
        assert!(csv.lines().any(|l| l.starts_with("7,00:1,00:1,0,false,")));
    }
}
