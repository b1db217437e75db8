use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_KLEIN_EXPONENT: i64 = 20;
pub const MAX_KLEIN_SYLLABLES: usize = 6;

/// An element `x^i y^j` of the Klein bottle group `<x, y | x y x⁻¹ = y⁻¹>`,
/// which is `<a, b | a² = b²>` under `a = x`, `b = x y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KleinElement {
    pub i: i64,
    pub j: i64,
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl KleinElement {
    pub const IDENTITY: KleinElement = KleinElement { i: 0, j: 0 };
    pub const A: KleinElement = KleinElement { i: 1, j: 0 };
    pub const B: KleinElement = KleinElement { i: 1, j: 1 };
    /// `c = a² = b²`.
    pub const C: KleinElement = KleinElement { i: 2, j: 0 };

    /// Uses `y^j x^k = x^k y^{(-1)^k j}`.
    pub fn mul(self, o: KleinElement) -> KleinElement {
        KleinElement {
            i: self.i + o.i,
            j: sign(o.i) * self.j + o.j,
        }
    }

    pub fn inv(self) -> KleinElement {
        KleinElement {
            i: -self.i,
            j: -sign(self.i) * self.j,
        }
    }

    pub fn pow(self, m: i64) -> KleinElement {
        let base = if m >= 0 { self } else { self.inv() };
        (0..m.unsigned_abs()).fold(Self::IDENTITY, |acc, _| acc.mul(base))
    }

    pub fn conj(self, by: KleinElement) -> KleinElement {
        by.mul(self).mul(by.inv())
    }
}

type Pair = (KleinElement, KleinElement);

/// Product in `G ⋊_Ad G`: `(g, h)(g', h') = (g·h g' h⁻¹, h h')`.
fn semidirect_mul(p: Pair, q: Pair) -> Pair {
    (p.0.mul(q.0.conj(p.1)), p.1.mul(q.1))
}

fn direct_mul(p: Pair, q: Pair) -> Pair {
    (p.0.mul(q.0), p.1.mul(q.1))
}

/// `(g, h) ↦ (g h, h)`.
fn pair_iso(p: Pair) -> Pair {
    (p.0.mul(p.1), p.1)
}

/// `(u, v) ↦ (u v⁻¹, v)`.
fn pair_iso_inverse(p: Pair) -> Pair {
    (p.0.mul(p.1.inv()), p.1)
}

/// Alternating products of syllables `a^{±1}`, `b^{±1}` with at most `len` syllables.
fn conjugators(len: usize) -> Vec<(KleinElement, String)> {
    let syllables = [
        (KleinElement::A, "a", 0),
        (KleinElement::A.inv(), "a^-1", 0),
        (KleinElement::B, "b", 1),
        (KleinElement::B.inv(), "b^-1", 1),
    ];
    let mut out = vec![(KleinElement::IDENTITY, "e".to_string())];
    let mut layer: Vec<(KleinElement, String, usize)> = vec![(KleinElement::IDENTITY, String::new(), 2)];
    for _ in 0..len {
        let mut next = Vec::new();
        for (w, name, last) in &layer {
            for &(s, sname, kind) in &syllables {
                if kind != *last {
                    let n = if name.is_empty() { sname.to_string() } else { format!("{name} {sname}") };
                    next.push((w.mul(s), n, kind));
                }
            }
        }
        out.extend(next.iter().map(|(w, n, _)| (*w, n.clone())));
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugatePower {
    pub m: i64,
    pub n: i64,
    pub conjugator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KleinReport {
    pub exponent_bound: i64,
    pub syllable_bound: usize,
    /// Images of the generators of `G ⋊_Ad G` satisfy its defining relations in `G × G`.
    pub relations_hold: bool,
    /// The inverse map composes to the identity on generators of both sides.
    pub inverse_on_generators: bool,
    /// The conjugation-semidirect copy `{(1, h)}` lands on the diagonal.
    pub diagonal_image: bool,
    /// Multiplicativity on every pair of pairs with exponents in `[-2, 2]`.
    pub sampled_homomorphism: bool,
    pub c_is_central: bool,
    pub conjugators_tried: usize,
    /// First conjugator found for each conjugate pair `a^m ~ b^n`.
    pub conjugate_powers: Vec<ConjugatePower>,
    /// Every conjugate pair has `m = n` even and `a^m = c^{m/2}`.
    pub only_even_diagonal: bool,
    /// Exponents `m` with `(a^m, b^m)` found in a conjugate of the diagonal.
    pub delta_in_family: Vec<i64>,
    /// Bounded search: evidence, not a proof.
    pub bounded_evidence: bool,
}

impl KleinReport {
    pub fn passed(&self) -> bool {
        self.relations_hold
            && self.inverse_on_generators
            && self.diagonal_image
            && self.sampled_homomorphism
            && self.c_is_central
            && self.only_even_diagonal
    }
}

fn box_elements(r: i64) -> Vec<KleinElement> {
    (-r..=r).flat_map(|i| (-r..=r).map(move |j| KleinElement { i, j })).collect()
}

/// Checks the pair isomorphism `(G ⋊_Ad G, G) ≅ (G × G, Δ(G))` and searches
/// for conjugate powers `a^m ~ b^n` within the given bounds.
pub fn klein_pair(exponent_bound: i64, syllable_bound: usize) -> Result<KleinReport> {
    if !(0..=MAX_KLEIN_EXPONENT).contains(&exponent_bound) {
        return Err(Error::bound("Klein exponent bound", MAX_KLEIN_EXPONENT as usize, exponent_bound.unsigned_abs() as usize));
    }
    if syllable_bound > MAX_KLEIN_SYLLABLES {
        return Err(Error::bound("Klein syllable bound", MAX_KLEIN_SYLLABLES, syllable_bound));
    }
    use KleinElement as K;
    let one = K::IDENTITY;
    let (a, b) = (K::A, K::B);

    // generators of G ⋊_Ad G and their images
    let left = |g: K| pair_iso((g, one));
    let right = |h: K| pair_iso((one, h));
    let sq = |p: Pair| direct_mul(p, p);
    let mut relations_hold = sq(left(a)) == sq(left(b)) && sq(right(a)) == sq(right(b));
    for t in [a, b] {
        for s in [a, b] {
            // (1,t)(s,1)(1,t)⁻¹ = (t s t⁻¹, 1)
            let lhs = direct_mul(direct_mul(right(t), left(s)), right(t.inv()));
            relations_hold &= lhs == left(s.conj(t));
        }
    }

    let gens_semidirect = [(a, one), (b, one), (one, a), (one, b)];
    let gens_direct = [(a, one), (b, one), (one, a), (one, b)];
    let inverse_on_generators = gens_semidirect.iter().all(|&p| pair_iso_inverse(pair_iso(p)) == p)
        && gens_direct.iter().all(|&q| pair_iso(pair_iso_inverse(q)) == q);
    let diagonal_image = [a, b].iter().all(|&h| {
        let (u, v) = pair_iso((one, h));
        u == v && u == h
    });

    let sample = box_elements(2);
    let pairs: Vec<Pair> = sample.iter().flat_map(|&g| sample.iter().map(move |&h| (g, h))).collect();
    let sampled_homomorphism = pairs.iter().all(|&p| {
        pairs
            .iter()
            .all(|&q| pair_iso(semidirect_mul(p, q)) == direct_mul(pair_iso(p), pair_iso(q)))
    });
    let c_is_central = sample.iter().all(|&g| g.mul(K::C) == K::C.mul(g));

    let ws = conjugators(syllable_bound);
    let mut conjugate_powers = Vec::new();
    for m in -exponent_bound..=exponent_bound {
        let am = a.pow(m);
        for n in -exponent_bound..=exponent_bound {
            let bn = b.pow(n);
            if let Some((_, name)) = ws.iter().find(|(w, _)| am.conj(*w) == bn) {
                conjugate_powers.push(ConjugatePower {
                    m,
                    n,
                    conjugator: name.clone(),
                });
            }
        }
    }
    let only_even_diagonal = conjugate_powers
        .iter()
        .all(|c| c.m == c.n && c.m % 2 == 0 && a.pow(c.m) == K::C.pow(c.m / 2));
    let delta_in_family = conjugate_powers.iter().filter(|c| c.m == c.n).map(|c| c.m).collect();

    Ok(KleinReport {
        exponent_bound,
        syllable_bound,
        relations_hold,
        inverse_on_generators,
        diagonal_image,
        sampled_homomorphism,
        c_is_central,
        conjugators_tried: ws.len(),
        conjugate_powers,
        only_even_diagonal,
        delta_in_family,
        bounded_evidence: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_arithmetic() {
        use KleinElement as K;
        assert_eq!(K::A.pow(2), K::C);
        assert_eq!(K::B.pow(2), K::C);
        let x = K { i: 1, j: 0 };
        let y = K { i: 0, j: 1 };
        assert_eq!(y.conj(x), y.inv());
        for g in box_elements(3) {
            assert_eq!(g.mul(g.inv()), K::IDENTITY);
            for h in box_elements(2) {
                for k in box_elements(1) {
                    assert_eq!(g.mul(h).mul(k), g.mul(h.mul(k)));
                }
            }
        }
    }

    #[test]
    fn small_bounds() {
        let r = klein_pair(4, 3).unwrap();
        assert!(r.passed());
        assert!(r.conjugate_powers.iter().any(|c| c.m == 2 && c.n == 2 && c.conjugator == "e"));
        assert!(!r.conjugate_powers.iter().any(|c| c.m == 1 && c.n == 1));
        assert_eq!(r.delta_in_family, vec![-4, -2, 0, 2, 4]);
        assert!(klein_pair(21, 1).is_err());
    }
}
