//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{bigint_from_json, bigint_to_json, IntegerMatrix};
use super::smith::invariant_factors;
use crate::error::{Error, Result};

/// `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `2 <= t1 | t2 | ... | tk`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return Self::free(1);
        }
        Self::from_parts(0, vec![BigInt::from(n)]).expect("cyclic group")
    }

    /// Validating constructor: torsion must already be a chain of factors `>= 2`.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for t in &torsion {
            if *t < BigInt::from(2) {
                return Err(Error::invalid(format!("torsion factor {t} is below 2")));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::invalid(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    /// Canonicalizes an arbitrary list of cyclic orders (zero meaning `Z`, one dropped).
    pub fn from_parts(free_rank: usize, cyclic_orders: Vec<BigInt>) -> Result<Self> {
        let mut free = free_rank;
        let mut diag = Vec::new();
        for c in cyclic_orders {
            let c = c.abs();
            if c.is_zero() {
                free += 1;
            } else if !c.is_one() {
                diag.push(c);
            }
        }
        let n = diag.len();
        let m = IntegerMatrix::diagonal(n, n, &diag);
        let torsion = invariant_factors(&m)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Ok(FgAbelianGroup {
            free_rank: free,
            torsion,
        })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut parts = self.torsion.clone();
        parts.extend(other.torsion.iter().cloned());
        Self::from_parts(self.free_rank + other.free_rank, parts).expect("direct sum")
    }

    /// Number of invariant factors divisible by `p`, i.e. the `Z/p`-dimension of the torsion part mod p.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|t| t.is_multiple_of(&p)).count()
    }
}

/// `Z^rows / im(A)`.
pub fn cokernel(a: &IntegerMatrix) -> FgAbelianGroup {
    let f = invariant_factors(a);
    let free = a.rows() - f.len();
    FgAbelianGroup {
        free_rank: free,
        torsion: f.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    free_rank: usize,
    torsion: Vec<serde_json::Value>,
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(bigint_to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        let torsion = r
            .torsion
            .iter()
            .map(bigint_from_json)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        FgAbelianGroup::new(r.free_rank, torsion).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, e: &[i64]) -> IntegerMatrix {
        IntegerMatrix::from_i64(r, c, e).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&m(1, 1, &[2])), FgAbelianGroup::cyclic(2));
        assert_eq!(cokernel(&m(2, 2, &[1, 0, 0, 6])), FgAbelianGroup::cyclic(6));
        let g = cokernel(&m(2, 2, &[2, 4, 6, 8]));
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(4)]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn cokernel_of_tall_matrix_has_free_part() {
        let g = cokernel(&m(3, 1, &[0, 3, 0]));
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.to_string(), "Z^2 + Z/3");
    }

    #[test]
    fn canonical_form_merges_coprime_parts() {
        let g = FgAbelianGroup::from_parts(0, vec![BigInt::from(2), BigInt::from(3)]).unwrap();
        assert_eq!(g, FgAbelianGroup::cyclic(6));
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(3), BigInt::from(2)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = FgAbelianGroup::new(1, vec![BigInt::from(2), BigInt::from(4)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":1,"torsion":[2,4]}"#);
        let back: FgAbelianGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
