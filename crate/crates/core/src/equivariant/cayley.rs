use std::collections::HashMap;

use serde::Serialize;

use super::gamma_set::GammaSet;
use crate::error::{Error, Result};

pub const MAX_CAYLEY_RADIUS: usize = 4;

/// A reduced word in a free basis: letter `k > 0` is basis element `k - 1`,
/// letter `-k` its inverse.
pub type Word = Vec<i32>;

pub fn reduce_product(a: &[i32], b: &[i32]) -> Word {
    let mut out = a.to_vec();
    for &x in b {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn invert(a: &[i32]) -> Word {
    a.iter().rev().map(|&x| -x).collect()
}

fn letter(s: usize) -> i32 {
    s as i32 + 1
}

/// Applies the basis permutation of `g` letterwise.
pub fn act_on_word(basis: &GammaSet, g: usize, w: &[i32]) -> Word {
    w.iter()
        .map(|&x| {
            let image = letter(basis.act(g, x.unsigned_abs() as usize - 1));
            if x > 0 {
                image
            } else {
                -image
            }
        })
        .collect()
}

pub fn format_word(basis: &GammaSet, w: &[i32]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    w.iter()
        .map(|&x| {
            let name = basis.label(x.unsigned_abs() as usize - 1);
            if x > 0 {
                name.to_string()
            } else {
                format!("{name}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// An oriented edge `(g, g s)` of the Cayley graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CayleyEdge {
    pub source: usize,
    pub target: usize,
    pub label: usize,
}

/// An edge whose stabilizer in `G⋊Γ` is nontrivial, with the stabilizer listed
/// as pairs `(h, γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeStabilizerWitness {
    pub source: String,
    pub target: String,
    pub label: String,
    pub stabilizer: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyBallReport {
    pub radius: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub is_tree: bool,
    pub gamma_invariant: bool,
    pub identity_stabilizer_order: usize,
    pub gamma_order: usize,
    pub max_edge_stabilizer_order: usize,
    pub zero_unfree: bool,
    pub basis_is_free: bool,
    pub witness: Option<EdgeStabilizerWitness>,
}

impl CayleyBallReport {
    /// Edge stabilizers are trivial exactly when the basis is a free Γ-set,
    /// and the identity vertex has stabilizer Γ.
    pub fn consistent(&self) -> bool {
        self.is_tree
            && self.gamma_invariant
            && self.identity_stabilizer_order == self.gamma_order
            && self.zero_unfree == self.basis_is_free
            && (self.zero_unfree || self.witness.is_some())
    }
}

/// The ball of radius `r` in the Cayley tree of the free group on a Γ-set,
/// with vertex set the reduced words of length at most `r` and edges `(g, g s)`.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    basis: GammaSet,
    radius: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    edges: Vec<CayleyEdge>,
}

impl CayleyBall {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn edges(&self) -> &[CayleyEdge] {
        &self.edges
    }

    pub fn vertex(&self, w: &[i32]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// The image of a vertex under `(h, γ)`: `g ↦ h·γ(g)`, when it stays in the ball.
    pub fn act(&self, h: &[i32], gamma: usize, vertex: usize) -> Option<usize> {
        self.vertex(&reduce_product(h, &act_on_word(&self.basis, gamma, &self.words[vertex])))
    }

    fn is_tree(&self) -> bool {
        let n = self.words.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    fn gamma_invariant(&self) -> bool {
        let edge_set: std::collections::HashSet<CayleyEdge> = self.edges.iter().copied().collect();
        self.basis.group().elements().all(|g| {
            self.words.iter().all(|w| self.vertex(&act_on_word(&self.basis, g, w)).is_some())
                && self.edges.iter().all(|e| {
                    let image = CayleyEdge {
                        source: self.act(&[], g, e.source).unwrap(),
                        target: self.act(&[], g, e.target).unwrap(),
                        label: self.basis.act(g, e.label),
                    };
                    edge_set.contains(&image)
                })
        })
    }

    /// Elements `(h, γ)` fixing the edge. The first endpoint forces `h = g·γ(g)⁻¹`.
    fn edge_stabilizer(&self, e: &CayleyEdge) -> Vec<(Word, usize)> {
        let g = &self.words[e.source];
        let gs = &self.words[e.target];
        self.basis
            .group()
            .elements()
            .filter_map(|gamma| {
                let gg = act_on_word(&self.basis, gamma, g);
                let h = reduce_product(g, &invert(&gg));
                let source_fixed = reduce_product(&h, &gg) == *g;
                let target_image = reduce_product(&h, &act_on_word(&self.basis, gamma, gs));
                (source_fixed && target_image == *gs).then_some((h, gamma))
            })
            .collect()
    }

    pub fn report(&self) -> CayleyBallReport {
        let group = self.basis.group();
        let identity = self.vertex(&[]).expect("ball contains the identity");
        let identity_stabilizer_order = self
            .words
            .iter()
            .flat_map(|h| group.elements().map(move |gamma| (h, gamma)))
            .filter(|(h, gamma)| self.act(h, *gamma, identity) == Some(identity))
            .count();
        let mut max_order = 1;
        let mut witness = None;
        for e in &self.edges {
            let stab = self.edge_stabilizer(e);
            if stab.len() > max_order {
                max_order = stab.len();
            }
            if stab.len() > 1 && witness.is_none() {
                witness = Some(EdgeStabilizerWitness {
                    source: format_word(&self.basis, &self.words[e.source]),
                    target: format_word(&self.basis, &self.words[e.target]),
                    label: self.basis.label(e.label).to_string(),
                    stabilizer: stab
                        .iter()
                        .map(|(h, gamma)| (format_word(&self.basis, h), group.label(*gamma)))
                        .collect(),
                });
            }
        }
        CayleyBallReport {
            radius: self.radius,
            vertex_count: self.words.len(),
            edge_count: self.edges.len(),
            is_tree: self.is_tree(),
            gamma_invariant: self.gamma_invariant(),
            identity_stabilizer_order,
            gamma_order: group.order(),
            max_edge_stabilizer_order: max_order,
            zero_unfree: max_order == 1,
            basis_is_free: self.basis.is_free(),
            witness,
        }
    }
}

/// Builds the radius-`r` ball of the Cayley tree of the free group on `basis`.
pub fn cayley_ball(basis: &GammaSet, radius: usize) -> Result<CayleyBall> {
    if radius > MAX_CAYLEY_RADIUS {
        return Err(Error::bound("Cayley ball radius", MAX_CAYLEY_RADIUS, radius));
    }
    let k = basis.len() as i32;
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for x in (1..=k).chain((1..=k).map(|x| -x)) {
                if w.last() != Some(&-x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for s in 0..basis.len() {
            if let Some(&j) = index.get(&reduce_product(w, &[letter(s)])) {
                edges.push(CayleyEdge {
                    source: i,
                    target: j,
                    label: s,
                });
            }
        }
    }
    Ok(CayleyBall {
        basis: basis.clone(),
        radius,
        words,
        index,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::{cyclic, trivial};

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("s{i}")).collect()
    }

    #[test]
    fn swapped_pair() {
        let c2 = cyclic(2);
        let basis = GammaSet::new(&c2, names(2), &[(1, vec![1, 0])]).unwrap();
        let r = cayley_ball(&basis, 1).unwrap().report();
        assert_eq!(r.vertex_count, 5);
        assert_eq!(r.edge_count, 4);
        assert!(r.zero_unfree && r.consistent());
        assert_eq!(r.identity_stabilizer_order, 2);
        let r3 = cayley_ball(&basis, 3).unwrap().report();
        assert_eq!(r3.vertex_count, 1 + 4 + 12 + 36);
        assert!(r3.consistent());
    }

    #[test]
    fn fixed_basis_element() {
        let c2 = cyclic(2);
        let basis = GammaSet::new(&c2, names(1), &[(1, vec![0])]).unwrap();
        let r = cayley_ball(&basis, 1).unwrap().report();
        assert!(!r.zero_unfree);
        assert_eq!(r.max_edge_stabilizer_order, 2);
        let w = r.witness.as_ref().unwrap();
        assert_eq!((w.source.as_str(), w.target.as_str()), ("e", "s1"));
        assert!(r.consistent());
    }

    #[test]
    fn trivial_group_tree() {
        let basis = GammaSet::trivial(&trivial(), names(3));
        let r = cayley_ball(&basis, 2).unwrap().report();
        assert_eq!(r.vertex_count, 1 + 6 + 30);
        assert!(r.zero_unfree && r.consistent());
        assert!(cayley_ball(&basis, 5).is_err());
    }
}
