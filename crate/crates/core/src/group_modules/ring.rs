//! Integral group ring elements and matrices over the group ring.

use std::collections::BTreeMap;

use super::group::{Elem, Group};
use crate::error::{Error, Result};

/// A finite formal sum `Σ c_g g` with group elements in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    terms: BTreeMap<Elem, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(g: Elem, c: i64) -> Self {
        let mut r = Self::zero();
        r.add_term(g, c);
        r
    }

    pub fn one(group: &Group) -> Self {
        Self::monomial(group.identity(), 1)
    }

    /// `g - 1`.
    pub fn minus_one(group: &Group, g: Elem) -> Self {
        let mut r = Self::monomial(g, 1);
        r.add_term(group.identity(), -1);
        r
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Elem, i64)>) -> Self {
        let mut r = Self::zero();
        for (g, c) in terms {
            r.add_term(g, c);
        }
        r
    }

    pub fn add_term(&mut self, g: Elem, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(g.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Elem, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients (the augmentation).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (g, c) in &other.terms {
            r.add_term(g.clone(), *c);
        }
        r
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (g.clone(), c * k)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self, group: &Group) -> Self {
        let mut r = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                r.add_term(group.mul(g, h), a * b);
            }
        }
        r
    }

    /// Image under a map on group elements.
    pub fn map(&self, f: impl Fn(&[i64]) -> Elem) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (f(g), *c)))
    }

    /// Largest absolute coefficient.
    pub fn max_coefficient(&self) -> i64 {
        self.terms.values().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn to_json(&self, group: &Group) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(g, c)| {
                    let w = group.word_of(g);
                    let s = match group {
                        Group::Presented(p) => p.format_word(&w),
                        Group::Finite(_) => group.format_elem(g),
                    };
                    serde_json::json!([s, c])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value, group: &Group) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::invalid("group ring entry must be a list of [word, coeff]"))?;
        let mut r = Self::zero();
        for t in arr {
            let pair = t
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::invalid("term must be [word, coeff]"))?;
            let w = pair[0].as_str().ok_or_else(|| Error::invalid("word must be a string"))?;
            let c = pair[1].as_i64().ok_or_else(|| Error::invalid("coefficient must be an integer"))?;
            r.add_term(group.parse_elem(w)?, c);
        }
        Ok(r)
    }
}

/// Matrix over the group ring; column `j` holds the image of basis element `j`:
/// `d(e_j) = Σ_i entries[i][j] e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<GroupRingElement>>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: vec![vec![GroupRingElement::zero(); cols]; rows],
        }
    }

    pub fn from_entries(entries: Vec<Vec<GroupRingElement>>, cols: usize) -> Result<Self> {
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged group ring matrix"));
        }
        Ok(GroupRingMatrix {
            rows: entries.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElement) {
        self.entries[i][j] = v;
    }

    /// The composite `self ∘ first` of module maps (apply `first`, then `self`):
    /// entry `(i, k)` is `Σ_j first[j][k] · self[i][j]`.
    pub fn after(&self, first: &GroupRingMatrix, group: &Group) -> Result<GroupRingMatrix> {
        if self.cols != first.rows {
            return Err(Error::invalid("group ring matrix shapes do not compose"));
        }
        let mut out = GroupRingMatrix::zeros(self.rows, first.cols);
        for i in 0..self.rows {
            for k in 0..first.cols {
                let mut acc = GroupRingElement::zero();
                for j in 0..self.cols {
                    if first.entries[j][k].is_zero() || self.entries[i][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&first.entries[j][k].mul(&self.entries[i][j], group));
                }
                out.entries[i][k] = acc;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(GroupRingElement::is_zero)
    }

    pub fn map_entries(&self, f: impl Fn(&GroupRingElement) -> GroupRingElement) -> Self {
        GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn to_json(&self, group: &Group) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|r| r.iter().map(|e| e.to_json(group)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value, group: &Group) -> Result<Self> {
        let cols = v["cols"].as_u64().ok_or_else(|| Error::invalid("missing cols"))? as usize;
        let rows = v["entries"]
            .as_array()
            .ok_or_else(|| Error::invalid("missing entries"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::invalid("row must be a list"))?
                    .iter()
                    .map(|e| GroupRingElement::from_json(e, group))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(rows, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::super::group::PresentedGroup;
    use super::*;

    #[test]
    fn ring_arithmetic() {
        let g = Group::Presented(PresentedGroup::integers());
        let t = GroupRingElement::minus_one(&g, vec![1]);
        let s = GroupRingElement::from_terms([(vec![1], 1), (vec![0], 1)]);
        // (t - 1)(t + 1) = t^2 - 1
        let p = t.mul(&s, &g);
        assert_eq!(p, GroupRingElement::from_terms([(vec![2], 1), (vec![0], -1)]));
        assert_eq!(p.augmentation(), 0);
        assert!(t.add(&t.neg()).is_zero());
    }

    #[test]
    fn json_words() {
        let g = Group::Presented(PresentedGroup::klein());
        let v = serde_json::json!([["a b-", 2], ["", -1]]);
        let e = GroupRingElement::from_json(&v, &g).unwrap();
        let back = GroupRingElement::from_json(&e.to_json(&g), &g).unwrap();
        assert_eq!(e, back);
    }
}
