//! Smith normal form over the integers.
//!
//! The dense routine tracks both unimodular transforms. The sparse routine
//! only produces invariant factors: it strips unit pivots in machine
//! integers and hands whatever is left to the dense routine. Any overflow in
//! the machine-integer phase restarts the whole computation in big integers,
//! so the result never depends on which path ran.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntegerMatrix;

/// `U * A * V = S` with `S` diagonal, `d1 | d2 | ... | dr > 0` then zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `S`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i))
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Dense {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt, from: usize) {
        if q.is_zero() {
            return;
        }
        let (ri, rj) = two_mut(&mut self.a, i, j);
        for k in from..ri.len() {
            if !rj[k].is_zero() {
                ri[k] -= q * &rj[k];
            }
        }
        if let Some(u) = &mut self.u {
            let (ui, uj) = two_mut(u, i, j);
            for k in 0..ui.len() {
                if !uj[k].is_zero() {
                    ui[k] -= q * &uj[k];
                }
            }
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt, from: usize) {
        if q.is_zero() {
            return;
        }
        for row in self.a[from..].iter_mut() {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] -= t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn row_add(&mut self, i: usize, j: usize, from: usize) {
        self.row_sub(i, j, &BigInt::from(-1), from);
    }

    fn run(&mut self) {
        let (m, n) = (self.rows(), self.cols());
        let mut t = 0;
        while t < m.min(n) {
            // pivot: least nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !self.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                        if self.a[i][j].abs().is_one() {
                            break;
                        }
                    }
                }
                if best.is_some_and(|(bi, bj)| self.a[bi][bj].abs().is_one()) {
                    break;
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                self.swap_rows(pi, t);
            }
            if pj != t {
                self.swap_cols(pj, t);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let q = nearest_quotient(&self.a[i][t], &self.a[t][t]);
                        self.row_sub(i, t, &q, t);
                        if !self.a[i][t].is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let q = nearest_quotient(&self.a[t][j], &self.a[t][t]);
                        self.col_sub(j, t, &q, t);
                        if !self.a[t][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    // column fallback: bring the smallest leftover in row/column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..m {
                        if !self.a[i][t].is_zero()
                            && self.a[i][t].abs() < self.a[best.0][best.1].abs()
                        {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..n {
                        if !self.a[t][j].is_zero()
                            && self.a[t][j].abs() < self.a[best.0][best.1].abs()
                        {
                            best = (t, j);
                        }
                    }
                    if best.0 != t {
                        self.swap_rows(best.0, t);
                    }
                    if best.1 != t {
                        self.swap_cols(best.1, t);
                    }
                    continue;
                }
                // divisibility: pull a violating row into row t
                let p = self.a[t][t].clone();
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a[i][j].is_zero() && !self.a[i][j].is_multiple_of(&p))
                });
                match bad {
                    Some(i) => self.row_add(t, i, t),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

fn two_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

/// Quotient rounded to nearest, which keeps remainders at most |b|/2.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let twice = &r * 2;
    if b.is_positive() {
        if twice > *b {
            q + 1
        } else {
            q
        }
    } else if twice < *b {
        q + 1
    } else {
        q
    }
}

fn identity_dense(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Full Smith decomposition with transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = Dense {
        a: a.to_dense(),
        u: Some(identity_dense(m)),
        v: Some(identity_dense(n)),
    };
    if m > 0 && n > 0 {
        d.run();
    }
    SmithDecomposition {
        s: IntegerMatrix::from_dense(m, n, &d.a),
        u: IntegerMatrix::from_dense(m, m, &d.u.unwrap()),
        v: IntegerMatrix::from_dense(n, n, &d.v.unwrap()),
    }
}

fn dense_invariant_factors(rows: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut d = Dense {
        a: rows,
        u: None,
        v: None,
    };
    if d.rows() == 0 || d.cols() == 0 {
        return Vec::new();
    }
    d.run();
    (0..d.rows().min(d.cols()))
        .map(|i| d.a[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

/// Invariant factors `d1 | d2 | ... | dr` (all positive) of `a`.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    if let Some(rows) = a.to_i64_rows() {
        if let Some((units, rest)) = strip_unit_pivots(rows, a.cols()) {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_invariant_factors(rest));
            return out;
        }
    }
    dense_invariant_factors(a.to_dense())
}

pub fn rank(a: &IntegerMatrix) -> usize {
    invariant_factors(a).len()
}

/// Sparse elimination on unit pivots. Returns the number of unit pivots and the
/// leftover block (dense, big-integer), or `None` on `i64` overflow.
fn strip_unit_pivots(
    rows: Vec<Vec<(usize, i64)>>,
    ncols: usize,
) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<Option<Vec<(usize, i64)>>> = rows.into_iter().map(Some).collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r.as_ref().unwrap() {
            col_rows[*j].push(i);
        }
    }
    let mut col_alive = vec![true; ncols];
    let mut units = 0usize;

    // rows bucketed by current length, processed shortest first
    let mut order: Vec<usize> = (0..rows.len()).collect();
    loop {
        order.retain(|&i| rows[i].as_ref().is_some_and(|r| !r.is_empty()));
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&i| rows[i].as_ref().unwrap().len());
        let mut progressed = false;
        let mut k = 0;
        while k < order.len() {
            let p = order[k];
            k += 1;
            let Some(prow) = rows[p].as_ref() else { continue };
            if prow.is_empty() {
                continue;
            }
            // unit entry whose column is shortest
            let mut best: Option<(usize, i64, usize)> = None;
            for &(j, v) in prow {
                if v == 1 || v == -1 {
                    let c = col_rows[j].len();
                    if best.is_none_or(|(_, _, bc)| c < bc) {
                        best = Some((j, v, c));
                    }
                }
            }
            let Some((pc, pv, _)) = best else { continue };
            let prow = rows[p].take().unwrap();
            let targets = std::mem::take(&mut col_rows[pc]);
            for r in targets {
                if r == p {
                    continue;
                }
                let Some(row) = rows[r].as_mut() else { continue };
                let Ok(pos) = row.binary_search_by_key(&pc, |(c, _)| *c) else {
                    continue;
                };
                let f = row[pos].1.checked_mul(pv)?;
                let merged = sub_scaled(row, &prow, f)?;
                for &(j, _) in &merged {
                    if row.binary_search_by_key(&j, |(c, _)| *c).is_err() {
                        col_rows[j].push(r);
                    }
                }
                *row = merged;
            }
            col_alive[pc] = false;
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    let live_rows: Vec<Vec<(usize, i64)>> = rows
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .collect();
    let mut live_cols: Vec<usize> = live_rows.iter().flat_map(|r| r.iter().map(|(j, _)| *j)).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let index: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let rest = live_rows
        .iter()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (j, v) in r {
                dense[index[j]] = BigInt::from(*v);
            }
            dense
        })
        .collect();
    Some((units, rest))
}

/// `row - f * pivot_row`, sorted sparse, `None` on overflow.
fn sub_scaled(row: &[(usize, i64)], prow: &[(usize, i64)], f: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(row.len() + prow.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < prow.len() {
        if j >= prow.len() || (i < row.len() && row[i].0 < prow[j].0) {
            out.push(row[i]);
            i += 1;
        } else if i >= row.len() || prow[j].0 < row[i].0 {
            out.push((prow[j].0, prow[j].1.checked_mul(f)?.checked_neg()?));
            j += 1;
        } else {
            let v = row[i].1.checked_sub(prow[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, e: &[i64]) -> IntegerMatrix {
        IntegerMatrix::from_i64(r, c, e).unwrap()
    }

    fn check(a: &IntegerMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(&(&d.u * a) * &d.v, d.s);
        assert!(d.u.is_unimodular() && d.v.is_unimodular());
        let f = d.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        assert_eq!(f, invariant_factors(a));
        d
    }

    #[test]
    fn identity_is_fixed() {
        let d = check(&IntegerMatrix::identity(2));
        assert_eq!(d.s, IntegerMatrix::identity(2));
        assert_eq!(d.u, IntegerMatrix::identity(2));
        assert_eq!(d.v, IntegerMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so diag(2, 4)
        let d = check(&m(2, 2, &[2, 4, 6, 8]));
        assert_eq!(d.s, m(2, 2, &[2, 0, 0, 4]));
    }

    #[test]
    fn zero_matrix() {
        let d = check(&IntegerMatrix::zeros(3, 2));
        assert!(d.s.is_zero());
    }

    #[test]
    fn empty_shapes() {
        check(&IntegerMatrix::zeros(0, 3));
        check(&IntegerMatrix::zeros(3, 0));
        assert!(invariant_factors(&IntegerMatrix::zeros(0, 0)).is_empty());
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) has Smith form diag(1, 6)
        let d = check(&m(2, 2, &[2, 0, 0, 3]));
        assert_eq!(d.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn sparse_path_overflow_falls_back() {
        let big = i64::MAX / 2;
        let a = m(2, 2, &[1, big, big, 1]);
        let f = invariant_factors(&a);
        let d = smith_normal_form(&a);
        assert_eq!(f, d.invariant_factors());
    }
}
