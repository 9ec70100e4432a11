//! Invariant factors by Smith reduction over ℤ.
//!
//! Unit entries are eliminated first on a sparse copy, choosing the unit
//! with the least fill-in; graph presentation matrices are mostly unit
//! columns, so the dense stage usually sees a tiny remainder. The dense stage
//! always pivots on the entry of least absolute value.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `d₁ | d₂ | … | d_ρ`, all positive, `ρ` the rank over ℚ.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let (units, rest) = eliminate_units(m);
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_diagonal(rest));
    factors
}

struct Sparse {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl Sparse {
    fn from_dense(m: &IntMatrix) -> Sparse {
        let mut rows = vec![BTreeMap::new(); m.rows()];
        let mut cols = vec![BTreeSet::new(); m.cols()];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    row.insert(j, v.clone());
                    cols[j].insert(i);
                }
            }
        }
        Sparse { rows, cols }
    }

    fn best_unit(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, (usize, usize))> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                if v.abs().is_one() {
                    let cost = (row.len() - 1) * (self.cols[j].len() - 1);
                    if best.is_none_or(|(c, _)| cost < c) {
                        best = Some((cost, (i, j)));
                        if cost == 0 {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        best.map(|(_, p)| p)
    }

    /// Clears column `c` with the unit at `(r, c)`, then drops row `r` and
    /// column `c`. Column operations would clear the rest of row `r` without
    /// touching anything else, so the invariant factors only gain a 1.
    fn pivot(&mut self, r: usize, c: usize) {
        let unit = self.rows[r][&c].clone();
        let pivot_row: Vec<(usize, BigInt)> = self.rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
        let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let factor = &self.rows[i][&c] * &unit;
            for (j, v) in &pivot_row {
                let entry = self.rows[i].remove(j).unwrap_or_default() - &factor * v;
                if entry.is_zero() {
                    self.cols[*j].remove(&i);
                } else {
                    self.rows[i].insert(*j, entry);
                    self.cols[*j].insert(i);
                }
            }
        }
        for (j, _) in pivot_row {
            self.cols[j].remove(&r);
        }
        self.rows[r].clear();
    }
}

/// Returns the number of unit pivots and the remaining nonzero block.
fn eliminate_units(m: &IntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut s = Sparse::from_dense(m);
    let mut units = 0;
    while let Some((r, c)) = s.best_unit() {
        s.pivot(r, c);
        units += 1;
    }
    let live_cols: Vec<usize> = (0..s.cols.len()).filter(|&j| !s.cols[j].is_empty()).collect();
    let rest = s
        .rows
        .iter()
        .filter(|row| !row.is_empty())
        .map(|row| {
            live_cols
                .iter()
                .map(|j| row.get(j).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    (units, rest)
}

fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (top, rest) = a.split_at_mut(i);
                    for (x, p) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= &q * p;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                // A remainder smaller than the pivot survives in row or column t.
                let (pi, pj) = smallest_in_cross(&a, t, rows, cols);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            let p = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| a[i][t + 1..cols].iter().any(|x| !x.is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn smallest_nonzero(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, (usize, usize))> = None;
    for i in rows {
        for j in cols.clone() {
            let v = a[i][j].abs();
            if !v.is_zero() && best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, (i, j)));
            }
        }
    }
    best.map(|(_, p)| p)
}

fn smallest_in_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let col = smallest_nonzero(a, t, t..rows, t..t + 1);
    let row = smallest_nonzero(a, t, t..t + 1, t..cols);
    match (col, row) {
        (Some(c), Some(r)) => {
            if a[r.0][r.1].abs() < a[c.0][c.1].abs() {
                r
            } else {
                c
            }
        }
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => unreachable!("pivot is nonzero"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_rows(rows))
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), [1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![1], vec![-1]]), [1]);
        assert_eq!(factors(&[vec![-1]]), [1]);
        assert_eq!(factors(&[vec![0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), [2, 6, 12]);
        assert_eq!(factors(&[vec![4, 6]]), [2]);
        assert!(smith_normal_form(&IntMatrix::zeros(0, 0)).is_empty());
        assert!(smith_normal_form(&IntMatrix::zeros(3, 0)).is_empty());
    }

    #[test]
    fn long_cycle_is_fast() {
        // I − Aᵗ of a 2000-cycle: one relation is dependent.
        let n = 2000;
        let mut m = IntMatrix::zeros(n, n);
        for v in 0..n {
            m.set(v, v, BigInt::one());
            let w = (v + 1) % n;
            let cur = m.get(w, v).clone();
            m.set(w, v, cur - 1);
        }
        let f = smith_normal_form(&m);
        assert_eq!(f.len(), n - 1);
        assert!(f.iter().all(One::is_one));
    }
}
