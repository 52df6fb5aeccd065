use num_traits::Zero;
use rayon::prelude::*;

use super::f2mat::Rows;
use super::{orthogonal_complement, LinkingForm, Submodule};
use crate::error::{Error, Result};
use crate::poly::F2Poly;

/// Largest number of candidate vectors the search will generate.
pub const SEARCH_LIMIT: u64 = 1 << 22;

#[derive(Clone)]
struct Candidate {
    pivot: usize,
    vector: Vec<F2Poly>,
}

fn candidate_count(k: usize, bound: usize) -> Option<u64> {
    let per_entry = 1u64.checked_shl(bound as u32 + 1)?;
    let mut total = 0u64;
    for c in 0..k {
        let rest = per_entry.checked_pow((k - 1 - c) as u32)?;
        total = total.checked_add((per_entry - 1).checked_mul(rest)?)?;
    }
    Some(total)
}

/// All `q`-singular vectors with leading nonzero entry at `pivot` and entries
/// of degree at most `bound`.
fn singular_vectors(form: &LinkingForm, pivot: usize, bound: usize) -> Vec<Candidate> {
    let k = form.rank();
    let per_entry = 1u64 << (bound + 1);
    let tail = k - 1 - pivot;
    let tails = per_entry.pow(tail as u32);
    (1..per_entry)
        .into_par_iter()
        .flat_map_iter(|lead| {
            (0..tails).filter_map(move |mut code| {
                let mut v = vec![F2Poly::zero(); k];
                v[pivot] = F2Poly::from_bits(lead);
                for e in v.iter_mut().skip(pivot + 1) {
                    *e = F2Poly::from_bits(code % per_entry);
                    code /= per_entry;
                }
                form.q(&v)
                    .ok()?
                    .is_zero()
                    .then_some(Candidate { pivot, vector: v })
            })
        })
        .collect()
}

fn compatible(form: &LinkingForm, upper: &Candidate, chosen: &[Candidate]) -> bool {
    chosen.iter().all(|lower| {
        upper.pivot < lower.pivot
            && upper.vector[lower.pivot].degree() < lower.vector[lower.pivot].degree()
            && form
                .b(&upper.vector, &lower.vector)
                .is_ok_and(|b| b.is_zero())
    })
}

fn extend(
    form: &LinkingForm,
    pool: &[Candidate],
    chosen: &mut Vec<Candidate>,
    need: usize,
) -> Option<Submodule> {
    if chosen.len() == need {
        let rows: Rows = chosen.iter().rev().map(|c| c.vector.clone()).collect();
        let l = Submodule::new(form.rank(), rows).ok()?;
        let perp = orthogonal_complement(form, &l).ok()?;
        return (l.rank() == need && perp == l).then_some(l);
    }
    for c in pool {
        if compatible(form, c, chosen) {
            chosen.push(c.clone());
            if let Some(l) = extend(form, pool, chosen, need) {
                return Some(l);
            }
            chosen.pop();
        }
    }
    None
}

/// Searches for a lagrangian `L = L^⊥` with `q|_L = 0`, generated by the rows
/// of a Hermite normal form whose entries have degree at most
/// `degree_bound`. `None` means no lagrangian within the bound. The witness
/// returned is the first in candidate order, independent of thread count.
pub fn find_lagrangian(form: &LinkingForm, degree_bound: usize) -> Result<Option<Submodule>> {
    let k = form.rank();
    if k == 0 {
        return Ok(Some(Submodule::zero(0)));
    }
    if k % 2 == 1 {
        return Ok(None);
    }
    match candidate_count(k, degree_bound) {
        Some(n) if n <= SEARCH_LIMIT => {}
        _ => {
            return Err(Error::TooLarge(format!(
                "lagrangian search at rank {k} with degree bound {degree_bound}"
            )))
        }
    }
    let pool: Vec<Candidate> = (0..k)
        .flat_map(|c| singular_vectors(form, c, degree_bound))
        .collect();
    let need = k / 2;
    Ok(pool.par_iter().find_map_first(|bottom| {
        let mut chosen = vec![bottom.clone()];
        extend(form, &pool, &mut chosen, need)
    }))
}
