use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimKind {
    /// Ordinary cohomological dimension `cd(K)`.
    Cd,
    /// Relative dimension `cd(K, L)` of a group pair.
    Takasu,
    /// `cd([K : F])`, relative to a family.
    Adamson,
    /// `cd_F(K)` over the orbit category.
    Bredon,
}

impl DimKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cd" => Ok(DimKind::Cd),
            "takasu" | "cco" => Ok(DimKind::Takasu),
            "adamson" | "inassaridze" => Ok(DimKind::Adamson),
            "bredon" => Ok(DimKind::Bredon),
            _ => Err(Error::UnknownName(format!("dimension kind {s:?}"))),
        }
    }
}

/// A dimension of a group, a group pair, or a group with a family. Subjects are
/// canonical descriptor strings; `relative_to` is the subgroup for a pair and the
/// family for Adamson and Bredon dimensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DimQuantity {
    pub kind: DimKind,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_to: Option<String>,
}

impl DimQuantity {
    pub fn cd(group: impl Into<String>) -> Self {
        DimQuantity {
            kind: DimKind::Cd,
            group: group.into(),
            relative_to: None,
        }
    }

    pub fn takasu(group: impl Into<String>, sub: impl Into<String>) -> Self {
        DimQuantity {
            kind: DimKind::Takasu,
            group: group.into(),
            relative_to: Some(sub.into()),
        }
    }

    pub fn adamson(group: impl Into<String>, family: impl Into<String>) -> Self {
        DimQuantity {
            kind: DimKind::Adamson,
            group: group.into(),
            relative_to: Some(family.into()),
        }
    }

    pub fn bredon(group: impl Into<String>, family: impl Into<String>) -> Self {
        DimQuantity {
            kind: DimKind::Bredon,
            group: group.into(),
            relative_to: Some(family.into()),
        }
    }

    /// Parses the display forms `cd(K)`, `cd(K, L)`, `cd([K : F])` and `cd_F(K)`,
    /// or `kind:group[:relative]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse dimension quantity {s:?}"));
        if let Some((kind, rest)) = s.split_once(':') {
            if !rest.starts_with(' ') && !kind.contains('(') {
                let kind = DimKind::parse(kind)?;
                let (group, rel) = match rest.split_once(':') {
                    Some((g, r)) => (g.to_string(), Some(r.to_string())),
                    None => (rest.to_string(), None),
                };
                if (kind == DimKind::Cd) != rel.is_none() || group.is_empty() {
                    return Err(bad());
                }
                return Ok(DimQuantity {
                    kind,
                    group,
                    relative_to: rel,
                });
            }
        }
        if let Some(rest) = s.strip_prefix("cd_") {
            let body = rest.strip_suffix(')').ok_or_else(bad)?;
            let open = matching_open(body).ok_or_else(bad)?;
            let (family, group) = (&body[..open], &body[open + 1..]);
            if family.is_empty() {
                return Err(bad());
            }
            return Ok(Self::bredon(group.trim(), family.trim()));
        }
        let inner = s
            .strip_prefix("cd(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        if let Some(body) = inner.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (g, f) = body.split_once(':').ok_or_else(bad)?;
            return Ok(Self::adamson(g.trim(), f.trim()));
        }
        match split_top_level_comma(inner) {
            Some((g, l)) => Ok(Self::takasu(g.trim(), l.trim())),
            None => Ok(Self::cd(inner.trim())),
        }
    }
}

/// Byte position of the `(` matching a `)` just past the end of `s`.
fn matching_open(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices().rev() {
        match c {
            ')' => depth += 1,
            '(' if depth == 0 => return Some(i),
            '(' => depth -= 1,
            _ => {}
        }
    }
    None
}

/// Splits at a comma outside parentheses and brackets.
fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '⟨' => depth += 1,
            ')' | ']' | '⟩' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl fmt::Display for DimQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = self.relative_to.as_deref().unwrap_or("");
        match self.kind {
            DimKind::Cd => write!(f, "cd({})", self.group),
            DimKind::Takasu => write!(f, "cd({}, {rel})", self.group),
            DimKind::Adamson => write!(f, "cd([{} : {rel}])", self.group),
            DimKind::Bredon => write!(f, "cd_{rel}({})", self.group),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trip() {
        for q in [
            DimQuantity::cd("ZxZ"),
            DimQuantity::takasu("ZxZ", "Z"),
            DimQuantity::adamson("G⋊G", "⟨G⟩"),
            DimQuantity::bredon("H_L⋊C6", "G"),
            DimQuantity::bredon("δ", "⟨(c,c)⟩"),
            DimQuantity::takasu("(Z, 2Z)x(Z)", "Z"),
        ] {
            assert_eq!(DimQuantity::parse(&q.to_string()).unwrap(), q);
        }
        assert_eq!(DimQuantity::parse("takasu:ZxZ:Z").unwrap(), DimQuantity::takasu("ZxZ", "Z"));
        assert!(DimQuantity::parse("cd:ZxZ:Z").is_err());
        assert!(DimQuantity::parse("dim(Z)").is_err());
    }
}
