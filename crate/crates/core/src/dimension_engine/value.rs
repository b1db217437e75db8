use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(u32),
    Infinite,
}

impl Extended {
    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Extended::Finite(n) => Some(n),
            Extended::Infinite => None,
        }
    }

    /// Saturating addition with `∞ + n = ∞`.
    pub fn add(self, other: Extended) -> Extended {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.saturating_add(b)),
            _ => Extended::Infinite,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(n) => write!(f, "{n}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(n) => s.serialize_u32(*n),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExtendedRepr {
    Number(u32),
    Text(String),
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ExtendedRepr::deserialize(d)? {
            ExtendedRepr::Number(n) => Ok(Extended::Finite(n)),
            ExtendedRepr::Text(t) if t == "inf" => Ok(Extended::Infinite),
            ExtendedRepr::Text(t) => Err(de::Error::custom(format!("expected a number or \"inf\", got {t:?}"))),
        }
    }
}

/// Closed bounds `lo <= d <= hi` on a dimension. Serializes as a single value
/// when exact and as `[lo, hi]` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DimBounds {
    pub lo: Extended,
    pub hi: Extended,
}

impl DimBounds {
    pub const UNKNOWN: DimBounds = DimBounds {
        lo: Extended::Finite(0),
        hi: Extended::Infinite,
    };

    pub fn exact(n: u32) -> Self {
        DimBounds {
            lo: Extended::Finite(n),
            hi: Extended::Finite(n),
        }
    }

    pub fn infinite() -> Self {
        DimBounds {
            lo: Extended::Infinite,
            hi: Extended::Infinite,
        }
    }

    pub fn at_least(n: u32) -> Self {
        DimBounds {
            lo: Extended::Finite(n),
            hi: Extended::Infinite,
        }
    }

    pub fn at_most(n: u32) -> Self {
        DimBounds {
            lo: Extended::Finite(0),
            hi: Extended::Finite(n),
        }
    }

    pub fn between(lo: u32, hi: u32) -> Self {
        DimBounds {
            lo: Extended::Finite(lo),
            hi: Extended::Finite(hi),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_unknown(&self) -> bool {
        *self == Self::UNKNOWN
    }

    pub fn is_consistent(&self) -> bool {
        self.lo <= self.hi
    }

    pub fn exact_value(&self) -> Option<Extended> {
        self.is_exact().then_some(self.lo)
    }

    /// Intersection of two bound sets; may be inconsistent.
    pub fn meet(&self, other: &DimBounds) -> DimBounds {
        DimBounds {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    /// True when `other` is strictly tighter on at least one side and no looser on either.
    pub fn tightened_by(&self, other: &DimBounds) -> bool {
        let m = self.meet(other);
        m != *self
    }

    pub fn contains(&self, v: Extended) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl fmt::Display for DimBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl Serialize for DimBounds {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_exact() {
            self.lo.serialize(s)
        } else {
            [self.lo, self.hi].serialize(s)
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BoundsRepr {
    Single(Extended),
    Pair([Extended; 2]),
}

impl<'de> Deserialize<'de> for DimBounds {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match BoundsRepr::deserialize(d)? {
            BoundsRepr::Single(v) => DimBounds { lo: v, hi: v },
            BoundsRepr::Pair([lo, hi]) => DimBounds { lo, hi },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_meet() {
        assert!(Extended::Finite(7) < Extended::Infinite);
        let a = DimBounds::at_least(2);
        let b = DimBounds::at_most(3);
        assert_eq!(a.meet(&b), DimBounds::between(2, 3));
        assert!(!DimBounds::at_least(5).meet(&b).is_consistent());
        assert!(DimBounds::UNKNOWN.tightened_by(&a));
        assert!(!a.tightened_by(&DimBounds::UNKNOWN));
    }

    #[test]
    fn json_shapes() {
        let cases = [
            (DimBounds::exact(2), "2"),
            (DimBounds::infinite(), "\"inf\""),
            (DimBounds::between(2, 3), "[2,3]"),
            (DimBounds::at_least(2), "[2,\"inf\"]"),
        ];
        for (b, text) in cases {
            assert_eq!(serde_json::to_string(&b).unwrap(), text);
            assert_eq!(serde_json::from_str::<DimBounds>(text).unwrap(), b);
        }
    }
}
