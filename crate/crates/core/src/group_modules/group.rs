//! Groups that modules and resolutions live over: finite multiplication-table
//! groups, and a small set of infinite groups with solved normal forms.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_groups::{self, FiniteGroup, Subgroup};

/// A group element in normal form. Finite groups use `[index]`; the infinite
/// fixtures use exponent vectors described on [`Fixture`].
pub type Elem = Vec<i64>;

/// A word over generator letters; `(g, 1)` is the generator and `(g, -1)` its inverse.
pub type Word = Vec<(usize, i8)>;

/// Infinite (and cyclic) groups with a built-in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fixture {
    /// `<t>`, normal form `[n]` for `t^n`.
    Integers,
    /// `<x, y | x y x^-1 y^-1>`, normal form `[i, j]` for `x^i y^j`.
    IntegersSquared,
    /// `<a, b | a^2 b^-2>`. With `x = a`, `y = a^-1 b` the group is
    /// `<x, y | x y x^-1 = y^-1>`; normal form `[i, j]` for `x^i y^j`.
    Klein,
    /// `<g | g^m>`, normal form `[k]`, `0 <= k < m`.
    Cyclic(u32),
    /// Direct product; normal forms are concatenated.
    Product(Box<PresentedGroup>, Box<PresentedGroup>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedGroup {
    name: String,
    kind: Fixture,
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl PresentedGroup {
    pub fn integers() -> Self {
        Self::integers_named("Z")
    }

    fn integers_named(name: &str) -> Self {
        PresentedGroup {
            name: name.into(),
            kind: Fixture::Integers,
            generators: vec!["t".into()],
            relators: Vec::new(),
        }
    }

    /// The index-two subgroup `2Z`, as an abstract copy of `Z` (see [`FixtureInclusion::doubling`]).
    pub fn even_integers() -> Self {
        Self::integers_named("2Z")
    }

    pub fn integers_squared() -> Self {
        PresentedGroup {
            name: "ZxZ".into(),
            kind: Fixture::IntegersSquared,
            generators: vec!["x".into(), "y".into()],
            relators: vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]],
        }
    }

    /// Fundamental group of the Klein bottle, `<a, b | a^2 = b^2>`.
    pub fn klein() -> Self {
        PresentedGroup {
            name: "Klein".into(),
            kind: Fixture::Klein,
            generators: vec!["a".into(), "b".into()],
            relators: vec![vec![(0, 1), (0, 1), (1, -1), (1, -1)]],
        }
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("cyclic fixture needs m >= 1"));
        }
        Ok(PresentedGroup {
            name: format!("C{m}"),
            kind: Fixture::Cyclic(m),
            generators: vec!["g".into()],
            relators: vec![vec![(0, 1); m as usize]],
        })
    }

    /// `A x B`; generator names get suffixes `1` and `2`, and commutators join the relators.
    pub fn product(a: &PresentedGroup, b: &PresentedGroup) -> Self {
        let na = a.generators.len();
        let mut generators: Vec<String> = a.generators.iter().map(|g| format!("{g}1")).collect();
        generators.extend(b.generators.iter().map(|g| format!("{g}2")));
        let mut relators = a.relators.clone();
        relators.extend(
            b.relators
                .iter()
                .map(|w| w.iter().map(|&(g, e)| (g + na, e)).collect()),
        );
        for i in 0..na {
            for j in 0..b.generators.len() {
                relators.push(vec![(i, 1), (na + j, 1), (i, -1), (na + j, -1)]);
            }
        }
        PresentedGroup {
            name: format!("{}x{}", a.name, b.name),
            kind: Fixture::Product(Box::new(a.clone()), Box::new(b.clone())),
            generators,
            relators,
        }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "Z" => Ok(Self::integers()),
            "2Z" => Ok(Self::even_integers()),
            "ZxZ" | "Z^2" => Ok(Self::integers_squared()),
            "Klein" => Ok(Self::klein()),
            "KleinxKlein" => Ok(Self::product(&Self::klein(), &Self::klein())),
            _ => {
                if let Some((a, b)) = name.split_once('x') {
                    if let (Ok(a), Ok(b)) = (Self::builtin(a), Self::builtin(b)) {
                        return Ok(Self::product(&a, &b));
                    }
                }
                Err(Error::UnknownName(format!("presented group {name:?}")))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &Fixture {
        &self.kind
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn dim(&self) -> usize {
        match &self.kind {
            Fixture::Integers | Fixture::Cyclic(_) => 1,
            Fixture::IntegersSquared | Fixture::Klein => 2,
            Fixture::Product(a, b) => a.dim() + b.dim(),
        }
    }

    pub fn identity(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> Elem {
        match &self.kind {
            Fixture::Integers => vec![x[0] + y[0]],
            Fixture::IntegersSquared => vec![x[0] + y[0], x[1] + y[1]],
            Fixture::Klein => {
                let sign = if y[0].rem_euclid(2) == 0 { 1 } else { -1 };
                vec![x[0] + y[0], sign * x[1] + y[1]]
            }
            Fixture::Cyclic(m) => vec![(x[0] + y[0]).rem_euclid(*m as i64)],
            Fixture::Product(a, b) => {
                let d = a.dim();
                let mut out = a.mul(&x[..d], &y[..d]);
                out.extend(b.mul(&x[d..], &y[d..]));
                out
            }
        }
    }

    pub fn inv(&self, x: &[i64]) -> Elem {
        match &self.kind {
            Fixture::Integers => vec![-x[0]],
            Fixture::IntegersSquared => vec![-x[0], -x[1]],
            Fixture::Klein => {
                let sign = if x[0].rem_euclid(2) == 0 { 1 } else { -1 };
                vec![-x[0], -sign * x[1]]
            }
            Fixture::Cyclic(m) => vec![(-x[0]).rem_euclid(*m as i64)],
            Fixture::Product(a, b) => {
                let d = a.dim();
                let mut out = a.inv(&x[..d]);
                out.extend(b.inv(&x[d..]));
                out
            }
        }
    }

    pub fn generator(&self, g: usize) -> Elem {
        match &self.kind {
            Fixture::Integers | Fixture::Cyclic(_) => vec![1],
            Fixture::IntegersSquared => {
                let mut e = vec![0, 0];
                e[g] = 1;
                e
            }
            Fixture::Klein => {
                if g == 0 {
                    vec![1, 0]
                } else {
                    vec![1, 1]
                }
            }
            Fixture::Product(a, b) => {
                let na = a.generators.len();
                if g < na {
                    let mut e = a.generator(g);
                    e.extend(b.identity());
                    e
                } else {
                    let mut e = a.identity();
                    e.extend(b.generator(g - na));
                    e
                }
            }
        }
    }

    /// A word representing `x`.
    pub fn word_of(&self, x: &[i64]) -> Word {
        fn power(g: usize, n: i64) -> Word {
            let e = if n < 0 { -1 } else { 1 };
            vec![(g, e); n.unsigned_abs() as usize]
        }
        let w = match &self.kind {
            Fixture::Integers | Fixture::Cyclic(_) => power(0, x[0]),
            Fixture::IntegersSquared => {
                let mut w = power(0, x[0]);
                w.extend(power(1, x[1]));
                w
            }
            Fixture::Klein => {
                // x^i y^j with x = a and y = a^-1 b
                let mut w = power(0, x[0]);
                let y: Word = if x[1] >= 0 {
                    vec![(0, -1), (1, 1)]
                } else {
                    vec![(1, -1), (0, 1)]
                };
                for _ in 0..x[1].unsigned_abs() {
                    w.extend(y.iter().copied());
                }
                w
            }
            Fixture::Product(a, b) => {
                let d = a.dim();
                let na = a.generators.len();
                let mut w = a.word_of(&x[..d]);
                w.extend(b.word_of(&x[d..]).into_iter().map(|(g, e)| (g + na, e)));
                w
            }
        };
        free_reduce(w)
    }

    pub fn eval_word(&self, w: &[(usize, i8)]) -> Elem {
        let mut out = self.identity();
        for &(g, e) in w {
            let s = self.generator(g);
            let s = if e < 0 { self.inv(&s) } else { s };
            out = self.mul(&out, &s);
        }
        out
    }

    pub fn format_word(&self, w: &[(usize, i8)]) -> String {
        w.iter()
            .map(|&(g, e)| {
                if e < 0 {
                    format!("{}-", self.generators[g])
                } else {
                    self.generators[g].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace()
            .map(|tok| {
                let (name, e) = match tok.strip_suffix('-') {
                    Some(n) => (n, -1),
                    None => (tok, 1),
                };
                self.generators
                    .iter()
                    .position(|g| g == name)
                    .map(|g| (g, e))
                    .ok_or_else(|| Error::invalid(format!("unknown generator {name:?}")))
            })
            .collect()
    }
}

/// Cancels adjacent inverse letters.
pub fn free_reduce(w: Word) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for l in w {
        if let Some(&last) = out.last() {
            if last.0 == l.0 && last.1 == -l.1 {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

/// Either kind of group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Finite(FiniteGroup),
    Presented(PresentedGroup),
}

impl Group {
    pub fn finite(g: FiniteGroup) -> Arc<Group> {
        Arc::new(Group::Finite(g))
    }

    pub fn presented(g: PresentedGroup) -> Arc<Group> {
        Arc::new(Group::Presented(g))
    }

    /// Finite builtin names (`C6`, `S3`, ...) or presented fixtures (`Z`, `ZxZ`, `Klein`, ...).
    pub fn builtin(name: &str) -> Result<Arc<Group>> {
        match PresentedGroup::builtin(name) {
            Ok(p) => Ok(Self::presented(p)),
            Err(_) => Ok(Self::finite(finite_groups::builtin(name)?)),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match self {
            Group::Finite(g) => Some(g),
            Group::Presented(_) => None,
        }
    }

    pub fn as_presented(&self) -> Option<&PresentedGroup> {
        match self {
            Group::Finite(_) => None,
            Group::Presented(p) => Some(p),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Group::Finite(g) => format!("finite group of order {}", g.order()),
            Group::Presented(p) => p.name.clone(),
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            Group::Finite(g) => vec![g.identity() as i64],
            Group::Presented(p) => p.identity(),
        }
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> Elem {
        match self {
            Group::Finite(g) => vec![g.mul(x[0] as usize, y[0] as usize) as i64],
            Group::Presented(p) => p.mul(x, y),
        }
    }

    pub fn inv(&self, x: &[i64]) -> Elem {
        match self {
            Group::Finite(g) => vec![g.inv(x[0] as usize) as i64],
            Group::Presented(p) => p.inv(x),
        }
    }

    /// Number of letters modules store an action for: every element for finite
    /// groups, the presentation generators otherwise.
    pub fn letter_count(&self) -> usize {
        match self {
            Group::Finite(g) => g.order(),
            Group::Presented(p) => p.generators.len(),
        }
    }

    pub fn letter(&self, k: usize) -> Elem {
        match self {
            Group::Finite(_) => vec![k as i64],
            Group::Presented(p) => p.generator(k),
        }
    }

    pub fn word_of(&self, x: &[i64]) -> Word {
        match self {
            Group::Finite(g) => {
                if x[0] as usize == g.identity() {
                    Vec::new()
                } else {
                    vec![(x[0] as usize, 1)]
                }
            }
            Group::Presented(p) => p.word_of(x),
        }
    }

    pub fn format_elem(&self, x: &[i64]) -> String {
        match self {
            Group::Finite(g) => g.label(x[0] as usize),
            Group::Presented(p) => {
                let w = p.word_of(x);
                if w.is_empty() {
                    "1".into()
                } else {
                    p.format_word(&w)
                }
            }
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        match self {
            Group::Finite(g) => {
                let s = s.trim();
                if s == "1" || s.is_empty() {
                    return Ok(self.identity());
                }
                if let Some(l) = g.labels() {
                    if let Some(k) = l.iter().position(|x| x == s) {
                        return Ok(vec![k as i64]);
                    }
                }
                s.parse::<usize>()
                    .ok()
                    .filter(|&k| k < g.order())
                    .map(|k| vec![k as i64])
                    .ok_or_else(|| Error::invalid(format!("unknown element {s:?}")))
            }
            Group::Presented(p) => Ok(p.eval_word(&p.parse_word(s)?)),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Finite(g) => Some(g.order()),
            Group::Presented(p) => match p.kind {
                Fixture::Cyclic(m) => Some(m as usize),
                _ => None,
            },
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Inclusion of a subgroup, either a subgroup of a finite group or an injective
/// homomorphism between fixtures given on generators.
#[derive(Clone, Debug)]
pub enum Inclusion {
    Finite {
        parent: Arc<Group>,
        subgroup: Subgroup,
        sub: Arc<Group>,
        embedding: Vec<usize>,
    },
    Fixture(FixtureInclusion),
}

#[derive(Clone, Debug)]
pub struct FixtureInclusion {
    pub sub: Arc<Group>,
    pub parent: Arc<Group>,
    pub generator_images: Vec<Elem>,
}

impl FixtureInclusion {
    /// `2Z -> Z`, `t -> t^2`.
    pub fn doubling() -> Self {
        FixtureInclusion {
            sub: Group::presented(PresentedGroup::even_integers()),
            parent: Group::presented(PresentedGroup::integers()),
            generator_images: vec![vec![2]],
        }
    }

    /// `Z -> Z x Z` onto the second factor.
    pub fn second_factor() -> Self {
        FixtureInclusion {
            sub: Group::presented(PresentedGroup::integers()),
            parent: Group::presented(PresentedGroup::integers_squared()),
            generator_images: vec![vec![0, 1]],
        }
    }

    /// `Z -> Z x Z` onto the first factor.
    pub fn first_factor() -> Self {
        FixtureInclusion {
            sub: Group::presented(PresentedGroup::integers()),
            parent: Group::presented(PresentedGroup::integers_squared()),
            generator_images: vec![vec![1, 0]],
        }
    }
}

impl Inclusion {
    pub fn finite(parent: &FiniteGroup, subgroup: &Subgroup) -> Self {
        let (sub, embedding) = subgroup.to_group(parent);
        Inclusion::Finite {
            parent: Group::finite(parent.clone()),
            subgroup: subgroup.clone(),
            sub: Group::finite(sub),
            embedding,
        }
    }

    pub fn sub(&self) -> &Arc<Group> {
        match self {
            Inclusion::Finite { sub, .. } => sub,
            Inclusion::Fixture(f) => &f.sub,
        }
    }

    pub fn parent(&self) -> &Arc<Group> {
        match self {
            Inclusion::Finite { parent, .. } => parent,
            Inclusion::Fixture(f) => &f.parent,
        }
    }

    /// Image in the parent of an element of the subgroup.
    pub fn map(&self, x: &[i64]) -> Elem {
        match self {
            Inclusion::Finite { embedding, .. } => vec![embedding[x[0] as usize] as i64],
            Inclusion::Fixture(f) => {
                let Group::Presented(p) = f.sub.as_ref() else {
                    unreachable!("fixture inclusions have presented sources")
                };
                let mut out = f.parent.identity();
                for (g, e) in p.word_of(x) {
                    let s = &f.generator_images[g];
                    let s = if e < 0 { f.parent.inv(s) } else { s.clone() };
                    out = f.parent.mul(&out, &s);
                }
                out
            }
        }
    }

    /// Checks the generator images satisfy the source relators.
    pub fn validate(&self) -> Result<()> {
        if let Inclusion::Fixture(f) = self {
            let Group::Presented(p) = f.sub.as_ref() else {
                return Err(Error::invalid("fixture inclusion needs a presented source"));
            };
            if f.generator_images.len() != p.generators.len() {
                return Err(Error::invalid("one image per generator required"));
            }
            for r in &p.relators {
                let mut out = f.parent.identity();
                for &(g, e) in r {
                    let s = &f.generator_images[g];
                    let s = if e < 0 { f.parent.inv(s) } else { s.clone() };
                    out = f.parent.mul(&out, &s);
                }
                if out != f.parent.identity() {
                    return Err(Error::invalid("generator images violate a relator"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_normal_form() {
        let k = PresentedGroup::klein();
        let a = k.generator(0);
        let b = k.generator(1);
        assert_eq!(k.mul(&a, &a), k.mul(&b, &b));
        for r in k.relators() {
            assert_eq!(k.eval_word(r), k.identity());
        }
        for i in -3..=3 {
            for j in -3..=3 {
                let x = vec![i, j];
                assert_eq!(k.eval_word(&k.word_of(&x)), x);
                assert_eq!(k.mul(&x, &k.inv(&x)), k.identity());
            }
        }
    }

    #[test]
    fn klein_is_not_abelian() {
        let k = PresentedGroup::klein();
        let (a, b) = (k.generator(0), k.generator(1));
        assert_ne!(k.mul(&a, &b), k.mul(&b, &a));
    }

    #[test]
    fn product_relators_hold() {
        let g = PresentedGroup::product(&PresentedGroup::klein(), &PresentedGroup::klein());
        assert_eq!(g.generator_names(), &["a1", "b1", "a2", "b2"]);
        for r in g.relators() {
            assert_eq!(g.eval_word(r), g.identity());
        }
    }

    #[test]
    fn word_parsing() {
        let k = PresentedGroup::klein();
        let w = k.parse_word("a b-").unwrap();
        assert_eq!(w, vec![(0, 1), (1, -1)]);
        assert_eq!(k.format_word(&w), "a b-");
        assert!(k.parse_word("c").is_err());
    }

    #[test]
    fn inclusions() {
        let d = Inclusion::Fixture(FixtureInclusion::doubling());
        d.validate().unwrap();
        assert_eq!(d.map(&[3]), vec![6]);
        let s = Inclusion::Fixture(FixtureInclusion::second_factor());
        assert_eq!(s.map(&[-2]), vec![0, -2]);
    }
}
