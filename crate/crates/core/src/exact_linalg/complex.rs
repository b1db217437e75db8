//! Cochain complexes of finitely generated abelian groups.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::abelian::FgAbelianGroup;
use super::lattice::{column_span_basis, kernel_basis, preimage, span_contains, Subquotient};
use super::matrix::IntegerMatrix;
use super::smith::invariant_factors;
use crate::error::{Error, Result};

/// `C^0 -> C^1 -> ... -> C^n` of free abelian groups; `differentials[i]` is
/// `d^i : C^i -> C^{i+1}` as a `ranks[i+1] x ranks[i]` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct CochainComplex {
    ranks: Vec<usize>,
    differentials: Vec<IntegerMatrix>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    ranks: Vec<usize>,
    differentials: Vec<IntegerMatrix>,
}

impl TryFrom<ComplexRepr> for CochainComplex {
    type Error = Error;
    fn try_from(r: ComplexRepr) -> Result<Self> {
        CochainComplex::new(r.ranks, r.differentials)
    }
}

impl From<CochainComplex> for ComplexRepr {
    fn from(c: CochainComplex) -> Self {
        ComplexRepr {
            ranks: c.ranks,
            differentials: c.differentials,
        }
    }
}

impl CochainComplex {
    /// Checks shapes and `d^{i+1} d^i = 0`.
    pub fn new(ranks: Vec<usize>, differentials: Vec<IntegerMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(ranks, differentials)?;
        for i in 1..c.differentials.len() {
            if !(&c.differentials[i] * &c.differentials[i - 1]).is_zero() {
                return Err(Error::invalid(format!("d^{} d^{} is not zero", i, i - 1)));
            }
        }
        Ok(c)
    }

    /// Checks shapes only.
    pub fn new_unchecked(ranks: Vec<usize>, differentials: Vec<IntegerMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::invalid("complex needs at least one degree"));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::invalid(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(Error::invalid(format!(
                    "d^{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        Ok(CochainComplex {
            ranks,
            differentials,
        })
    }

    /// Complex with all differentials zero.
    pub fn with_zero_differentials(ranks: Vec<usize>) -> Self {
        let differentials = ranks
            .windows(2)
            .map(|w| IntegerMatrix::zeros(w[1], w[0]))
            .collect();
        CochainComplex {
            ranks,
            differentials,
        }
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, i: usize) -> Option<&IntegerMatrix> {
        self.differentials.get(i)
    }

    pub fn differentials(&self) -> &[IntegerMatrix] {
        &self.differentials
    }

    fn check_degree(&self, i: usize) -> Result<()> {
        if i > self.top_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.top_degree(),
            });
        }
        Ok(())
    }

    /// `H^i = ker d^i / im d^{i-1}`; the top degree has `d^n = 0`.
    pub fn cohomology_at(&self, i: usize) -> Result<FgAbelianGroup> {
        self.check_degree(i)?;
        let rank_out = self
            .differentials
            .get(i)
            .map_or(0, |d| invariant_factors(d).len());
        let (rank_in, torsion) = if i == 0 {
            (0, Vec::new())
        } else {
            let f = invariant_factors(&self.differentials[i - 1]);
            let n = f.len();
            (n, f.into_iter().filter(|d| !d.is_one()).collect::<Vec<BigInt>>())
        };
        FgAbelianGroup::new(self.ranks[i] - rank_out - rank_in, torsion)
    }

    pub fn cohomology(&self) -> Result<Vec<FgAbelianGroup>> {
        (0..=self.top_degree()).map(|i| self.cohomology_at(i)).collect()
    }

    /// Cycles and boundaries at degree `i` with explicit class coordinates.
    pub fn subquotient_at(&self, i: usize) -> Result<Subquotient> {
        self.check_degree(i)?;
        let n = self.ranks[i];
        let cycles = match self.differentials.get(i) {
            Some(d) => kernel_basis(d),
            None => IntegerMatrix::identity(n),
        };
        let boundaries = if i == 0 {
            IntegerMatrix::zeros(n, 0)
        } else {
            self.differentials[i - 1].clone()
        };
        Subquotient::new(&cycles, &boundaries)
    }

    /// Truncation to degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.top_degree());
        CochainComplex {
            ranks: self.ranks[..=n].to_vec(),
            differentials: self.differentials[..n].to_vec(),
        }
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// Cochain complex whose terms are `Z^{n_i} / span(R_i)`; differentials must
/// carry relations into relations.
#[derive(Clone, Debug)]
pub struct PresentedCochainComplex {
    ranks: Vec<usize>,
    relations: Vec<IntegerMatrix>,
    differentials: Vec<IntegerMatrix>,
}

impl PresentedCochainComplex {
    pub fn new(
        ranks: Vec<usize>,
        relations: Vec<IntegerMatrix>,
        differentials: Vec<IntegerMatrix>,
    ) -> Result<Self> {
        CochainComplex::new_unchecked(ranks.clone(), differentials.clone())?;
        if relations.len() != ranks.len() {
            return Err(Error::invalid("one relation matrix per degree required"));
        }
        for (i, r) in relations.iter().enumerate() {
            if r.rows() != ranks[i] {
                return Err(Error::invalid(format!("relations at degree {i} have wrong height")));
            }
        }
        for (i, d) in differentials.iter().enumerate() {
            if !span_contains(&relations[i + 1], &(d * &relations[i])) {
                return Err(Error::invalid(format!("d^{i} does not respect relations")));
            }
            if i > 0 && !span_contains(&relations[i + 1], &(d * &differentials[i - 1])) {
                return Err(Error::invalid(format!("d^{} d^{} is not zero", i, i - 1)));
            }
        }
        Ok(PresentedCochainComplex {
            ranks,
            relations,
            differentials,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn cohomology_at(&self, i: usize) -> Result<FgAbelianGroup> {
        if i > self.top_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.top_degree(),
            });
        }
        let n = self.ranks[i];
        let cycles = match self.differentials.get(i) {
            Some(d) => preimage(d, &self.relations[i + 1]),
            None => IntegerMatrix::identity(n),
        };
        let mut boundaries = self.relations[i].clone();
        if i > 0 {
            boundaries = self.differentials[i - 1].hstack(&boundaries);
        }
        let boundaries = column_span_basis(&boundaries);
        Ok(Subquotient::new(&cycles, &boundaries)?.group().clone())
    }

    pub fn cohomology(&self) -> Result<Vec<FgAbelianGroup>> {
        (0..=self.top_degree()).map(|i| self.cohomology_at(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, e: &[i64]) -> IntegerMatrix {
        IntegerMatrix::from_i64(r, c, e).unwrap()
    }

    #[test]
    fn circle() {
        let c = CochainComplex::with_zero_differentials(vec![1, 1]);
        assert_eq!(c.cohomology_at(1).unwrap(), FgAbelianGroup::free(1));
        assert!(matches!(
            c.cohomology_at(2),
            Err(Error::DegreeOutOfRange { degree: 2, max: 1 })
        ));
    }

    #[test]
    fn periodic_c2_cochains() {
        // Hom of the periodic resolution into trivial Z: differentials 0, 2, 0, 2
        let d: Vec<IntegerMatrix> = [0, 2, 0, 2]
            .iter()
            .map(|&x| m(1, 1, &[x]))
            .collect();
        let c = CochainComplex::new(vec![1; 5], d).unwrap();
        assert_eq!(c.cohomology_at(2).unwrap(), FgAbelianGroup::cyclic(2));
        assert!(c.cohomology_at(1).unwrap().is_zero());
        assert_eq!(c.cohomology_at(0).unwrap(), FgAbelianGroup::free(1));
        assert_eq!(c.subquotient_at(2).unwrap().group(), &FgAbelianGroup::cyclic(2));
    }

    #[test]
    fn d_squared_is_checked() {
        let d = vec![m(1, 1, &[1]), m(1, 1, &[1])];
        assert!(CochainComplex::new(vec![1, 1, 1], d).is_err());
    }

    #[test]
    fn presented_complex_with_torsion_terms() {
        // Z/2 --0--> Z/2 has H^0 = Z/2, H^1 = Z/2; Z --1--> Z/2 has H^0 = 2Z, H^1 = 0
        let rel = m(1, 1, &[2]);
        let c = PresentedCochainComplex::new(vec![1, 1], vec![rel.clone(), rel.clone()], vec![m(1, 1, &[0])])
            .unwrap();
        assert_eq!(c.cohomology().unwrap(), vec![FgAbelianGroup::cyclic(2); 2]);
        let c = PresentedCochainComplex::new(
            vec![1, 1],
            vec![IntegerMatrix::zeros(1, 0), rel],
            vec![m(1, 1, &[1])],
        )
        .unwrap();
        assert_eq!(c.cohomology().unwrap(), vec![FgAbelianGroup::free(1), FgAbelianGroup::zero()]);
    }
}
