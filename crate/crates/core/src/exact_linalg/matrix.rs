//! Arbitrary-precision integer matrices.
//!
//! Storage is row-sparse (sorted `(column, value)` pairs with no explicit
//! zeros) so that the large, mostly-zero coboundary matrices of bar
//! resolutions stay cheap. The public surface is that of a dense matrix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, BigInt::one()));
        }
        m
    }

    /// Builds a matrix from row-major entries; fails if the count is not `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let mut m = Self::zeros(rows, cols);
        for (k, v) in entries.into_iter().enumerate() {
            if !v.is_zero() {
                m.data[k / cols.max(1)].push((k % cols.max(1), v));
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Builds from nested rows. Every row must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows"));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        Self::new(r, c, entries)
    }

    /// Builds from sparse rows of `(column, value)` pairs; duplicate columns are summed.
    pub fn from_sparse_rows(rows: usize, cols: usize, sparse: Vec<Vec<(usize, BigInt)>>) -> Self {
        assert_eq!(sparse.len(), rows);
        let data = sparse
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|(c, _)| *c);
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    assert!(c < cols, "column {c} out of range {cols}");
                    match out.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        IntegerMatrix { rows, cols, data }
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            if !d.is_zero() {
                m.data[i].push((i, d.clone()));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols);
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols);
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if v.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (j, v));
                }
            }
        }
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row_entries(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries, zeros included.
    pub fn entries(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows * self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i * self.cols + j] = v.clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        let data = dense
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        IntegerMatrix { rows, cols, data }
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.cols];
        for (j, v) in &self.data[i] {
            out[*j] = v.clone();
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                t.data[*j].push((i, v.clone()));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().map(|(j, a)| a * &v[*j]).sum())
            .collect()
    }

    pub fn checked_mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.cols];
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    if !mark[*j] {
                        mark[*j] = true;
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            let mut r = Vec::with_capacity(touched.len());
            for &j in &touched {
                mark[j] = false;
                let v = std::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    r.push((j, v));
                }
            }
            touched.clear();
            out.push(r);
        }
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, v * s)).collect())
                .collect(),
        }
    }

    fn combine(&self, other: &IntegerMatrix, sign: i32) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
                    let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
                    if take_a {
                        out.push(a[i].clone());
                        i += 1;
                    } else if take_b {
                        let v = if sign > 0 { b[j].1.clone() } else { -&b[j].1 };
                        out.push((b[j].0, v));
                        j += 1;
                    } else {
                        let v = if sign > 0 { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|(j, v)| (j + self.cols, v.clone())))
                    .collect()
            })
            .collect();
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntegerMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[IntegerMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (i, row) in b.data.iter().enumerate() {
                m.data[r0 + i] = row.iter().map(|(j, v)| (c0 + j, v.clone())).collect();
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &IntegerMatrix) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, arow) in self.data.iter().enumerate() {
            for (k, brow) in other.data.iter().enumerate() {
                let r = &mut m.data[i * other.rows + k];
                for (j, a) in arow {
                    for (l, b) in brow {
                        r.push((j * other.cols + l, a * b));
                    }
                }
            }
        }
        m
    }

    /// Copies the block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self {
        let data = self.data[r0..r0 + nr]
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| *j >= c0 && *j < c0 + nc)
                    .map(|(j, v)| (j - c0, v.clone()))
                    .collect()
            })
            .collect();
        IntegerMatrix {
            rows: nr,
            cols: nc,
            data,
        }
    }

    /// Adds `block` into position `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &IntegerMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (i, row) in block.data.iter().enumerate() {
            for (j, v) in row {
                let cur = self.get(r0 + i, c0 + j);
                self.set(r0 + i, c0 + j, cur + v);
            }
        }
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .flat_map(|r| r.iter().map(|(_, v)| v.abs()))
            .max()
            .unwrap_or_default()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::invalid("determinant of non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }

    /// Inverse of a unimodular matrix (exact over the integers).
    pub fn inverse_unimodular(&self) -> Result<IntegerMatrix> {
        if !self.is_square() {
            return Err(Error::invalid("inverse of non-square matrix"));
        }
        let n = self.rows;
        let snf = super::smith::smith_normal_form(self);
        // U A V = S with S diagonal of units; A^{-1} = V S^{-1} U, and S^{-1} = S.
        for i in 0..n {
            if !snf.s.get(i, i).abs().is_one() {
                return Err(Error::invalid("matrix is not invertible over the integers"));
            }
        }
        snf.v.checked_mul(&snf.s)?.checked_mul(&snf.u)
    }

    /// Converts to `i64` entries if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(j, v)| v.to_i64().map(|x| (*j, x)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }
}

impl Add for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn add(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        self.combine(rhs, 1)
    }
}

impl Sub for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn sub(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        self.combine(rhs, -1)
    }
}

impl Neg for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn neg(self) -> IntegerMatrix {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix({}x{}) ", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Serializes a big integer as a JSON number when it fits in `i64`, else as a string.
pub(crate) fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::String(v.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("non-integer entry {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<serde_json::Value>,
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries().iter().map(bigint_to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let entries = repr
            .entries
            .iter()
            .map(bigint_from_json)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        IntegerMatrix::new(repr.rows, repr.cols, entries).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_count_is_checked() {
        assert!(IntegerMatrix::from_i64(2, 2, &[1, 2, 3]).is_err());
    }

    #[test]
    fn multiply_and_transpose() {
        let a = IntegerMatrix::from_i64(2, 3, &[1, 2, 0, 0, -1, 4]).unwrap();
        let b = a.transpose();
        let c = &a * &b;
        assert_eq!(c, IntegerMatrix::from_i64(2, 2, &[5, -2, -2, 17]).unwrap());
    }

    #[test]
    fn determinant_and_inverse() {
        let a = IntegerMatrix::from_i64(3, 3, &[2, 1, 0, 1, 1, 0, 0, 0, -1]).unwrap();
        assert_eq!(a.determinant().unwrap(), BigInt::from(-1));
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(&a * &inv, IntegerMatrix::identity(3));
        let b = IntegerMatrix::from_i64(2, 2, &[2, 0, 0, 1]).unwrap();
        assert!(b.inverse_unimodular().is_err());
    }

    #[test]
    fn json_roundtrip_with_huge_entry() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = IntegerMatrix::new(1, 2, vec![big, BigInt::from(-3)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"rows":1,"cols":2,"entries":["123456789012345678901234567890",-3]}"#
        );
        let back: IntegerMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn kronecker_shape() {
        let a = IntegerMatrix::from_i64(1, 2, &[1, 2]).unwrap();
        let b = IntegerMatrix::identity(2);
        let k = a.kronecker(&b);
        assert_eq!(k, IntegerMatrix::from_i64(2, 4, &[1, 0, 2, 0, 0, 1, 0, 2]).unwrap());
    }
}
