//! Row and column reduction of matrices over the Euclidean domain `F2[t]`.

use num_traits::{One, Zero};

use crate::poly::F2Poly;

pub(crate) type Rows = Vec<Vec<F2Poly>>;

pub(crate) fn zero_rows(r: usize, c: usize) -> Rows {
    vec![vec![F2Poly::zero(); c]; r]
}

pub(crate) fn identity(n: usize) -> Rows {
    let mut m = zero_rows(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F2Poly::one();
    }
    m
}

pub(crate) fn transpose(m: &Rows, cols: usize) -> Rows {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub(crate) fn mat_mul(a: &Rows, b: &Rows, inner: usize, cols: usize) -> Rows {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = F2Poly::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `x^T M y`.
pub(crate) fn bilinear(m: &Rows, x: &[F2Poly], y: &[F2Poly]) -> F2Poly {
    let mut acc = F2Poly::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !m[i][j].is_zero() {
                acc = &acc + &(&(xi * &m[i][j]) * yj);
            }
        }
    }
    acc
}

/// `row_i += f * row_j` on the working rows, mirrored on `V` and `V^(-1)`.
struct Tracked<'a> {
    rows: &'a mut Rows,
    v: Option<(Rows, Rows)>,
}

impl Tracked<'_> {
    fn add_multiple(&mut self, i: usize, j: usize, f: &F2Poly) {
        if f.is_zero() {
            return;
        }
        let src = self.rows[j].clone();
        for (x, y) in self.rows[i].iter_mut().zip(&src) {
            *x = &*x + &(f * y);
        }
        if let Some((v, v_inv)) = &mut self.v {
            let src = v[j].clone();
            for (x, y) in v[i].iter_mut().zip(&src) {
                *x = &*x + &(f * y);
            }
            // (I + f e_ij)^(-1) = I + f e_ij in characteristic 2
            for row in v_inv.iter_mut() {
                let add = f * &row[i];
                row[j] = &row[j] + &add;
            }
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
        if let Some((v, v_inv)) = &mut self.v {
            v.swap(i, j);
            for row in v_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }
}

/// Reduces `rows` in place to Hermite normal form: row echelon, each pivot
/// the first nonzero entry of its row, entries above a pivot of smaller
/// degree than it. Returns the pivot columns; rows past their count are
/// zero. When `track` is set, also returns `V` and `V^(-1)` with
/// `V · original = reduced`.
pub(crate) fn hermite(
    rows: &mut Rows,
    cols: usize,
    track: bool,
) -> (Vec<usize>, Option<(Rows, Rows)>) {
    let n = rows.len();
    let mut t = Tracked {
        rows,
        v: track.then(|| (identity(n), identity(n))),
    };
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == n {
            break;
        }
        loop {
            let best = (top..n)
                .filter(|&r| !t.rows[r][col].is_zero())
                .min_by_key(|&r| t.rows[r][col].degree());
            let Some(best) = best else { break };
            t.swap(top, best);
            let mut clean = true;
            for r in top + 1..n {
                if t.rows[r][col].is_zero() {
                    continue;
                }
                let (q, rem) = t.rows[r][col].div_rem(&t.rows[top][col]);
                t.add_multiple(r, top, &q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if top < n && !t.rows[top][col].is_zero() {
            for r in 0..top {
                let q = t.rows[r][col].div_rem(&t.rows[top][col]).0;
                t.add_multiple(r, top, &q);
            }
            pivots.push(col);
            top += 1;
        }
    }
    let v = t.v;
    (pivots, v)
}

/// Column reduction `A U = [H | 0]` with `H` lower triangular of size equal
/// to the rank. Returns `(rank, U, U^(-1))`, found by row reducing `A^T`.
pub(crate) fn column_reduce(a: &Rows, cols: usize) -> (usize, Rows, Rows) {
    let mut at = transpose(a, cols);
    let (pivots, v) = hermite(&mut at, a.len(), true);
    let (v, v_inv) = v.expect("tracked");
    // V A^T = E  ⇒  A V^T = E^T
    (pivots.len(), transpose(&v, cols), transpose(&v_inv, cols))
}

/// The diagonal entries of `H` in `A U = [H | 0]`, i.e. the pivots of the
/// row echelon form of `A^T`.
pub(crate) fn column_pivots(a: &Rows, cols: usize) -> Vec<F2Poly> {
    let mut at = transpose(a, cols);
    let (pivots, _) = hermite(&mut at, a.len(), false);
    pivots
        .iter()
        .enumerate()
        .map(|(r, &c)| at[r][c].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> F2Poly {
        F2Poly::parse(s).unwrap()
    }

    fn m(rows: &[&[&str]]) -> Rows {
        rows.iter()
            .map(|r| r.iter().map(|s| p(s)).collect())
            .collect()
    }

    #[test]
    fn hermite_tracks_transform() {
        let orig = m(&[
            &["t", "t^2 + 1", "1"],
            &["t^2", "t", "t + 1"],
            &["t + 1", "1", "t"],
        ]);
        let mut work = orig.clone();
        let (pivots, v) = hermite(&mut work, 3, true);
        let (v, v_inv) = v.unwrap();
        assert_eq!(mat_mul(&v, &orig, 3, 3), work);
        assert_eq!(mat_mul(&v, &v_inv, 3, 3), identity(3));
        for (r, &c) in pivots.iter().enumerate() {
            for above in 0..r {
                assert!(work[above][c].degree() < work[r][c].degree() || work[above][c].is_zero());
            }
        }
    }

    #[test]
    fn column_reduction_kernel() {
        let a = m(&[&["t", "1", "t + 1"]]);
        let (rank, u, u_inv) = column_reduce(&a, 3);
        assert_eq!(rank, 1);
        assert_eq!(mat_mul(&u, &u_inv, 3, 3), identity(3));
        let au = mat_mul(&a, &u, 3, 3);
        assert!(au[0][1].is_zero() && au[0][2].is_zero());
        assert_eq!(column_pivots(&a, 3), vec![p("1")]);
        assert_eq!(column_pivots(&m(&[&["t", "t^2"]]), 2), vec![p("t")]);
    }
}
