//! Sublattices of `Z^n` given by spanning columns: kernels, spans, preimages,
//! integer linear solving, and explicit subquotients `Z / B` with coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::{cokernel, FgAbelianGroup};
use super::matrix::IntegerMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Row-style Hermite normal form of the row span; only nonzero rows are returned.
/// Two matrices have the same row span iff their results are equal.
pub fn row_hermite_form(m: &IntegerMatrix) -> IntegerMatrix {
    let ncols = m.cols();
    let mut a = m.to_dense();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pivot_row = a[r].clone();
                    for (x, p) in a[i][c..].iter_mut().zip(&pivot_row[c..]) {
                        if !p.is_zero() {
                            *x -= &q * p;
                        }
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in &mut a[r] {
                *x = -std::mem::take(x);
            }
        }
        let pivot_row = a[r].clone();
        for row in a.iter_mut().take(r) {
            if !row[c].is_zero() {
                let q = row[c].div_floor(&pivot_row[c]);
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *x -= &q * p;
                    }
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    IntegerMatrix::from_dense(r, ncols, &a)
}

/// Canonical basis (as columns) of the column span of `m`.
pub fn column_span_basis(m: &IntegerMatrix) -> IntegerMatrix {
    row_hermite_form(&m.transpose()).transpose()
}

pub fn same_column_span(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    a.rows() == b.rows() && column_span_basis(a) == column_span_basis(b)
}

/// Basis (as columns) of the integer kernel of `m`; the kernel is saturated.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let d = smith_normal_form(m);
    let r = d.rank();
    let n = m.cols();
    d.v.submatrix(0, n, r, n - r)
}

/// Reusable integer solver for `A x = b`.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    u: IntegerMatrix,
    v: IntegerMatrix,
    diag: Vec<BigInt>,
    rows: usize,
}

impl IntegerSolver {
    pub fn new(a: &IntegerMatrix) -> Self {
        let d = smith_normal_form(a);
        let diag = d.invariant_factors();
        IntegerSolver {
            u: d.u,
            v: d.v,
            diag,
            rows: a.rows(),
        }
    }

    /// Some integer solution (free coordinates in Smith basis set to zero), or `None`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let ub = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.v.rows()];
        for (i, x) in ub.iter().enumerate() {
            if i < self.diag.len() {
                let (q, rem) = x.div_rem(&self.diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

pub fn solve(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    IntegerSolver::new(a).solve(b)
}

/// Solves `A X = B` column by column.
pub fn solve_matrix(a: &IntegerMatrix, b: &IntegerMatrix) -> Option<IntegerMatrix> {
    let s = IntegerSolver::new(a);
    let cols = (0..b.cols())
        .map(|j| s.solve(&b.col(j)))
        .collect::<Option<Vec<_>>>()?;
    Some(IntegerMatrix::from_cols(a.cols(), &cols))
}

/// Is every column of `b` in the column span of `a`?
pub fn span_contains(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    if b.cols() == 0 || b.is_zero() {
        return true;
    }
    solve_matrix(a, b).is_some()
}

/// Basis of `{x : d x ∈ span(target)}`.
pub fn preimage(d: &IntegerMatrix, target: &IntegerMatrix) -> IntegerMatrix {
    let n = d.cols();
    let joined = d.hstack(&(-target));
    let k = kernel_basis(&joined);
    column_span_basis(&k.submatrix(0, n, 0, k.cols()))
}

/// `span(z) / span(b)` for `span(b) ⊆ span(z)`.
pub fn quotient(z: &IntegerMatrix, b: &IntegerMatrix) -> Result<FgAbelianGroup> {
    Ok(Subquotient::new(z, b)?.group().clone())
}

/// An explicit subquotient `Z / B` of `Z^n` with canonical coordinates.
///
/// Classes are written in coordinates `c_1..c_g`, where `c_k` is read modulo
/// `moduli[k]` (zero for a free coordinate).
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    basis: IntegerMatrix,
    basis_solver: IntegerSolver,
    u: IntegerMatrix,
    keep: Vec<usize>,
    moduli: Vec<BigInt>,
    representatives: Vec<Vec<BigInt>>,
    group: FgAbelianGroup,
}

impl Subquotient {
    /// `cycles` and `boundaries` are spanning columns in `Z^n`; boundaries must lie in the cycle span.
    pub fn new(cycles: &IntegerMatrix, boundaries: &IntegerMatrix) -> Result<Self> {
        let n = cycles.rows();
        if boundaries.rows() != n {
            return Err(Error::invalid("subquotient ambient dimensions differ"));
        }
        let basis = column_span_basis(cycles);
        let k = basis.cols();
        let basis_solver = IntegerSolver::new(&basis);
        let mut coords = Vec::with_capacity(boundaries.cols());
        for j in 0..boundaries.cols() {
            let c = basis_solver
                .solve(&boundaries.col(j))
                .ok_or_else(|| Error::invalid("boundary lattice not contained in cycle lattice"))?;
            coords.push(c);
        }
        let c = IntegerMatrix::from_cols(k, &coords);
        let snf = smith_normal_form(&c);
        let factors = snf.invariant_factors();
        let u_inv = snf.u.inverse_unimodular()?;
        let mut keep = Vec::new();
        let mut moduli = Vec::new();
        let mut representatives = Vec::new();
        for i in 0..k {
            let d = factors.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            keep.push(i);
            representatives.push(basis.mul_vec(&u_inv.col(i)));
            moduli.push(d);
        }
        let group = cokernel(&c);
        Ok(Subquotient {
            ambient: n,
            basis,
            basis_solver,
            u: snf.u,
            keep,
            moduli,
            representatives,
            group,
        })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Number of presentation coordinates.
    pub fn generator_count(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// Cycle representatives of the presentation generators.
    pub fn representatives(&self) -> &[Vec<BigInt>] {
        &self.representatives
    }

    pub fn cycle_basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    /// Reduced coordinates of the class of the cycle `v`; `None` if `v` is not a cycle.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let zc = self.basis_solver.solve(v)?;
        let c = self.u.mul_vec(&zc);
        Some(
            self.keep
                .iter()
                .zip(&self.moduli)
                .map(|(&i, m)| if m.is_zero() { c[i].clone() } else { c[i].mod_floor(m) })
                .collect(),
        )
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> Option<bool> {
        self.coordinates(v).map(|c| c.iter().all(Zero::is_zero))
    }

    /// Matrix of the map induced by the cochain-level map `f` from `self` to `target`.
    pub fn induced_map(&self, f: &IntegerMatrix, target: &Subquotient) -> Result<AbelianMap> {
        if f.cols() != self.ambient || f.rows() != target.ambient {
            return Err(Error::invalid("induced map has the wrong shape"));
        }
        let mut cols = Vec::with_capacity(self.representatives.len());
        for rep in &self.representatives {
            let image = f.mul_vec(rep);
            let c = target
                .coordinates(&image)
                .ok_or_else(|| Error::invalid("cochain map does not send cycles to cycles"))?;
            cols.push(c);
        }
        Ok(AbelianMap {
            matrix: IntegerMatrix::from_cols(target.generator_count(), &cols),
            source_moduli: self.moduli.clone(),
            target_moduli: target.moduli.clone(),
        })
    }
}

/// A homomorphism `⊕ Z/a_j -> ⊕ Z/b_i` given by an integer matrix (modulus zero means `Z`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianMap {
    pub matrix: IntegerMatrix,
    pub source_moduli: Vec<BigInt>,
    pub target_moduli: Vec<BigInt>,
}

fn relation_columns(moduli: &[BigInt]) -> IntegerMatrix {
    let n = moduli.len();
    let cols: Vec<Vec<BigInt>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| {
            let mut c = vec![BigInt::zero(); n];
            c[i] = m.clone();
            c
        })
        .collect();
    IntegerMatrix::from_cols(n, &cols)
}

impl AbelianMap {
    /// Checks that the matrix respects the relations of source and target.
    pub fn is_well_defined(&self) -> bool {
        let rel_s = relation_columns(&self.source_moduli);
        let rel_t = relation_columns(&self.target_moduli);
        span_contains(&rel_t, &(&self.matrix * &rel_s))
    }

    pub fn compose(&self, then: &AbelianMap) -> AbelianMap {
        AbelianMap {
            matrix: &then.matrix * &self.matrix,
            source_moduli: self.source_moduli.clone(),
            target_moduli: then.target_moduli.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        span_contains(&relation_columns(&self.target_moduli), &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        let zero = AbelianMap {
            matrix: IntegerMatrix::zeros(self.source_moduli.len(), 0),
            source_moduli: Vec::new(),
            target_moduli: self.source_moduli.clone(),
        };
        exact_at(&zero, self)
    }

    pub fn is_surjective(&self) -> bool {
        let n = self.target_moduli.len();
        let span = self.matrix.hstack(&relation_columns(&self.target_moduli));
        same_column_span(&span, &IntegerMatrix::identity(n))
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`: `im f = ker g` as subgroups of `B`.
pub fn exact_at(f: &AbelianMap, g: &AbelianMap) -> bool {
    let rel_b = relation_columns(&g.source_moduli);
    let rel_c = relation_columns(&g.target_moduli);
    let ker = preimage(&g.matrix, &rel_c);
    let im = column_span_basis(&f.matrix.hstack(&rel_b));
    let ker_full = column_span_basis(&ker.hstack(&rel_b));
    ker_full == im
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, e: &[i64]) -> IntegerMatrix {
        IntegerMatrix::from_i64(r, c, e).unwrap()
    }

    fn v(e: &[i64]) -> Vec<BigInt> {
        e.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = m(2, 2, &[2, 4, 6, 8]);
        let b = m(2, 2, &[2, 0, 0, 4]);
        let ua = &m(2, 2, &[1, 1, 0, 1]) * &a;
        assert_eq!(row_hermite_form(&a), row_hermite_form(&ua));
        assert_eq!(row_hermite_form(&b), m(2, 2, &[2, 0, 0, 4]));
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(2, 4, &[1, 2, 3, 4, 2, 4, 6, 9]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn solving() {
        let a = m(2, 2, &[2, 0, 0, 3]);
        assert_eq!(solve(&a, &v(&[4, 9])), Some(v(&[2, 3])));
        assert_eq!(solve(&a, &v(&[1, 0])), None);
    }

    #[test]
    fn subquotient_coordinates() {
        // Z^2 / <(2, 0)> = Z/2 + Z
        let sq = Subquotient::new(&IntegerMatrix::identity(2), &m(2, 1, &[2, 0])).unwrap();
        assert_eq!(sq.group().to_string(), "Z + Z/2");
        assert_eq!(sq.is_zero_class(&v(&[4, 0])), Some(true));
        assert_eq!(sq.is_zero_class(&v(&[1, 0])), Some(false));
    }

    #[test]
    fn exactness_of_short_sequence() {
        // 0 -> Z --2--> Z -> Z/2 -> 0
        let two = AbelianMap {
            matrix: m(1, 1, &[2]),
            source_moduli: v(&[0]),
            target_moduli: v(&[0]),
        };
        let proj = AbelianMap {
            matrix: m(1, 1, &[1]),
            source_moduli: v(&[0]),
            target_moduli: v(&[2]),
        };
        assert!(proj.is_well_defined());
        assert!(two.is_injective());
        assert!(exact_at(&two, &proj));
        assert!(proj.is_surjective());
        assert!(two.compose(&proj).is_zero());
    }
}
