//! Exact ranks over `ℚ(q)`.

use std::collections::BTreeMap;

use crate::alphabet::Word;
use crate::poly::NCPoly;
use crate::scalar::Scalar;

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].recip().expect("nonzero pivot");
        let (top, below) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, p) in row.iter_mut().zip(pivot_row).skip(c) {
                *x -= &(&f * p);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Rank of the span of `polys` in the word basis.
pub fn span_rank(polys: &[NCPoly]) -> usize {
    let mut columns: BTreeMap<&Word, usize> = BTreeMap::new();
    for p in polys {
        for (w, _) in p.terms() {
            let n = columns.len();
            columns.entry(w).or_insert(n);
        }
    }
    let rows: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![Scalar::zero(); columns.len()];
            for (w, c) in p.terms() {
                row[columns[w]] = c.clone();
            }
            row
        })
        .collect();
    rank(&rows)
}

/// `dim(span A ∩ span B) = rank A + rank B − rank(A ∪ B)`.
pub fn intersection_dim(a: &[NCPoly], b: &[NCPoly]) -> usize {
    let joined: Vec<NCPoly> = a.iter().chain(b).cloned().collect();
    span_rank(a) + span_rank(b) - span_rank(&joined)
}
