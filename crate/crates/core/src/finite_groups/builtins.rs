//! Named constructors.

use super::group::FiniteGroup;
use crate::error::{Error, Result};

pub fn trivial() -> FiniteGroup {
    cyclic(1)
}

/// `C_n = <g>`, element `k` is `g^k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order zero");
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    FiniteGroup::from_trusted_law(n, |a, b| (a + b) % n, Some(labels))
}

/// Dihedral group of order `2n`; element `i + n j` is `r^i s^j`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let labels = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (0, 1) => "s".to_string(),
                (i, 0) => format!("r^{i}"),
                (i, _) => format!("r^{i}s"),
            }
        })
        .collect();
    FiniteGroup::from_trusted_law(
        2 * n,
        |a, b| {
            let (i, s) = (a % n, a / n);
            let (k, t) = (b % n, b / n);
            let k = if s == 1 { (n - k) % n } else { k };
            (i + k) % n + n * ((s + t) % 2)
        },
        Some(labels),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Group of the given permutations (closed under composition), with
/// `(p q)(i) = p(q(i))`.
pub fn permutation_group(perms: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    let n = perms.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
            table[a][b] = *index
                .get(&prod)
                .ok_or_else(|| Error::invalid("permutations are not closed under composition"))?;
        }
    }
    let labels = perms.iter().map(|p| format!("{p:?}")).collect();
    FiniteGroup::from_table(table, Some(labels))
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if !(1..=5).contains(&n) {
        return Err(Error::invalid(format!("symmetric group S{n} outside 1..=5")));
    }
    permutation_group(permutations(n))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if !(1..=5).contains(&n) {
        return Err(Error::invalid(format!("alternating group A{n} outside 1..=5")));
    }
    permutation_group(permutations(n).into_iter().filter(|p| is_even(p)).collect())
}

/// `A x B`; element `(a, b)` has index `a |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let m = b.order();
    let labels = (0..a.order() * m)
        .map(|x| format!("({},{})", a.label(x / m), b.label(x % m)))
        .collect();
    FiniteGroup::from_trusted_law(
        a.order() * m,
        |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m),
        Some(labels),
    )
}

/// Parses names such as `C6`, `D4` (order 8), `S3`, `A5`, `trivial`, `C2xC2`.
pub fn builtin(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    if name.contains('x') {
        let mut parts = name.split('x');
        let mut g = builtin(parts.next().unwrap())?;
        for p in parts {
            g = direct_product(&g, &builtin(p)?);
        }
        return Ok(g);
    }
    if name == "trivial" || name == "1" {
        return Ok(trivial());
    }
    if name == "V4" || name == "Klein4" {
        return Ok(direct_product(&cyclic(2), &cyclic(2)));
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
    let n: usize = tail
        .parse()
        .map_err(|_| Error::UnknownName(format!("group {name:?}")))?;
    match head {
        "C" | "Z/" if (1..=1000).contains(&n) => Ok(cyclic(n)),
        "D" if (1..=500).contains(&n) => Ok(dihedral(n)),
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => Err(Error::UnknownName(format!("group {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(6).order(), 6);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert!(symmetric(6).is_err());
    }

    #[test]
    fn dihedral_three_is_s3() {
        assert!(dihedral(3).is_isomorphic(&symmetric(3).unwrap()));
        assert!(!dihedral(3).is_isomorphic(&cyclic(6)));
        assert!(!dihedral(3).is_abelian());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("C2xC2").unwrap().order(), 4);
        assert!(builtin("C2xC3").unwrap().is_isomorphic(&cyclic(6)));
        assert!(builtin("Q8").is_err());
        assert_eq!(builtin("A4").unwrap().order(), 12);
    }

    #[test]
    fn tables_validate() {
        for g in [cyclic(5), dihedral(5), alternating(4).unwrap()] {
            let back = FiniteGroup::from_table(g.table().to_vec(), None).unwrap();
            assert_eq!(back.order(), g.order());
        }
    }
}
