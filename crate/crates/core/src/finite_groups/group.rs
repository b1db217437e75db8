use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted by the enumeration routines unless overridden.
pub const DEFAULT_ORDER_BOUND: usize = 120;

/// A finite group stored as its multiplication table; `table[a][b] = a * b`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<GroupRepr> for FiniteGroup {
    type Error = Error;
    fn try_from(r: GroupRepr) -> Result<Self> {
        if r.table.len() != r.order {
            return Err(Error::invalid("table height differs from order"));
        }
        FiniteGroup::from_table(r.table, r.labels)
    }
}

impl From<FiniteGroup> for GroupRepr {
    fn from(g: FiniteGroup) -> Self {
        GroupRepr {
            order: g.order(),
            table: g.table,
            labels: g.labels,
        }
    }
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("empty group table"));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("table is not an n x n array of element indices"));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::invalid("label count differs from order"));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::invalid("no identity element"))?;
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity)
                .ok_or_else(|| Error::invalid(format!("element {a} has no inverse")))?;
            if table[inverses[a]][a] != identity {
                return Err(Error::invalid(format!("inverse of {a} is one-sided")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
            labels,
        })
    }

    /// Builds the table from an associative product known to be a group law.
    pub(crate) fn from_trusted_law(
        n: usize,
        mul: impl Fn(usize, usize) -> usize,
        labels: Option<Vec<String>>,
    ) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a))
            .expect("group law has an identity");
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("inverse"))
            .collect();
        FiniteGroup {
            table,
            identity,
            inverses,
            labels,
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = self.identity;
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements reachable from the identity by right multiplication with `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A small generating set, chosen greedily from the elements in index order
    /// of decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().filter(|&a| a != self.identity).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in by_order {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Extends `gens[i] -> images[i]` to a homomorphism into `target` given as
    /// a multiplication function; `None` if inconsistent or if `gens` do not generate.
    pub fn extend_homomorphism(
        &self,
        gens: &[usize],
        images: &[usize],
        target_identity: usize,
        target_mul: impl Fn(usize, usize) -> usize,
    ) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = target_identity;
        let mut queue = VecDeque::from([self.identity]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = self.mul(x, s);
                let fy = target_mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    reached += 1;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        (reached == n).then_some(map)
    }

    pub fn is_homomorphism_to(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }

    /// Searches for an isomorphism onto `other`.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order() != other.order() {
            return None;
        }
        let mut orders_a: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        let mut orders_b: Vec<usize> = other.elements().map(|b| other.element_order(b)).collect();
        let gens = self.generators();
        let gen_orders: Vec<usize> = gens.iter().map(|&g| orders_a[g]).collect();
        orders_a.sort_unstable();
        orders_b.sort_unstable();
        if orders_a != orders_b {
            return None;
        }
        let candidates: Vec<Vec<usize>> = gen_orders
            .iter()
            .map(|&o| other.elements().filter(|&b| other.element_order(b) == o).collect())
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, v)| v[c]).collect();
            if let Some(map) =
                self.extend_homomorphism(&gens, &images, other.identity(), |a, b| other.mul(a, b))
            {
                let mut hit = vec![false; other.order()];
                if map.iter().all(|&x| !std::mem::replace(&mut hit[x], true)) {
                    return Some(map);
                }
            }
            // odometer over candidate images
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return None;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

/// Prime factors of `n` in increasing order, without repetition.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && prime_factors(n) == [n]
}
