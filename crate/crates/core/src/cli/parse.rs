//! Parsers for the compact group, subgroup, family and module descriptors
//! accepted on the command line.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::dimension_engine::leaf::{coefficient_module, presented};
use crate::dimension_engine::Coefficients;
use crate::error::{Error, Result};
use crate::exact_linalg::{bigint_from_json, IntegerMatrix};
use crate::finite_groups::{
    all_subgroups, family_generated_by_all, proper_subgroups_family, trivial_family, all_subgroups_family,
    FiniteGroup, Subgroup, SubgroupFamily,
};
use crate::group_modules::battery::battery;
use crate::group_modules::{augmentation_ideal, permutation_module, sign_characters, Group, GroupModule, PresentedGroup};

/// Resource ceilings from `--limits key=value,...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub resolution_rank: Option<usize>,
    pub orbit_group: Option<usize>,
    pub bredon_rank: Option<usize>,
    pub cocycles: Option<usize>,
    pub edge_orbits: Option<usize>,
    pub radius: Option<usize>,
}

pub const LIMIT_KEYS: &[&str] = &["resolution-rank", "orbit-group", "bredon-rank", "cocycles", "edge-orbits", "radius"];

impl Limits {
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Limits::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("limit {item:?} is not key=value")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("limit {k} needs a nonnegative integer")))?;
            let slot = match k.trim() {
                "resolution-rank" => &mut out.resolution_rank,
                "orbit-group" => &mut out.orbit_group,
                "bredon-rank" => &mut out.bredon_rank,
                "cocycles" => &mut out.cocycles,
                "edge-orbits" => &mut out.edge_orbits,
                "radius" => &mut out.radius,
                other => {
                    return Err(Error::invalid(format!(
                        "unknown limit {other:?}; expected one of {}",
                        LIMIT_KEYS.join(", ")
                    )))
                }
            };
            *slot = Some(v);
        }
        Ok(out)
    }
}

/// A group named on the command line: a finite builtin or an infinite fixture.
pub enum NamedGroup {
    Finite(FiniteGroup),
    Fixture(PresentedGroup),
}

const FIXTURES: &[&str] = &["Z", "2Z", "ZxZ", "Z^2", "Klein", "KleinxKlein"];

/// A builtin name, a product of `Z` and `Klein` factors, or a path to a JSON
/// multiplication-table fixture ending in `.json`.
pub fn named_group(name: &str) -> Result<NamedGroup> {
    if name.ends_with(".json") {
        return Ok(NamedGroup::Finite(super::input::read_json(name)?));
    }
    let is_fixture = FIXTURES.contains(&name) || name.split('x').all(|f| f == "Z" || f == "Klein");
    if is_fixture {
        return Ok(NamedGroup::Fixture(presented(name)?));
    }
    Ok(NamedGroup::Finite(crate::finite_groups::builtin(name)?))
}

pub fn finite_group(name: &str) -> Result<FiniteGroup> {
    match named_group(name)? {
        NamedGroup::Finite(g) => Ok(g),
        NamedGroup::Fixture(_) => Err(Error::invalid(format!("{name} is infinite; a finite group is required"))),
    }
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad element index {x:?}")))
        })
        .collect()
}

/// `whole`, `trivial`, `order=N` or `order=N#i` (the `i`-th class of that
/// order), or `gens=a,b` (generated by element indices).
pub fn subgroup(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    let spec = spec.trim();
    match spec {
        "whole" => return Ok(Subgroup::whole(g)),
        "trivial" | "1" => return Ok(Subgroup::trivial(g)),
        _ => {}
    }
    if let Some(gens) = spec.strip_prefix("gens=") {
        let gens = parse_indices(gens)?;
        if let Some(&x) = gens.iter().find(|&&x| x >= g.order()) {
            return Err(Error::invalid(format!("element {x} outside a group of order {}", g.order())));
        }
        return Ok(Subgroup::generated_by(g, &gens));
    }
    if let Some(rest) = spec.strip_prefix("order=") {
        let (n, i) = match rest.split_once('#') {
            Some((n, i)) => (n, i.parse::<usize>().map_err(|_| Error::invalid(format!("bad class index {i:?}")))?),
            None => (rest, 0),
        };
        let n: usize = n.parse().map_err(|_| Error::invalid(format!("bad order {n:?}")))?;
        return all_subgroups(g)?
            .into_iter()
            .map(|c| c.representative)
            .filter(|h| h.order() == n)
            .nth(i)
            .ok_or_else(|| Error::NotFound(format!("subgroup class {i} of order {n}")));
    }
    Err(Error::invalid(format!(
        "subgroup {spec:?}: expected whole, trivial, order=N[#i] or gens=a,b"
    )))
}

/// `proper`, `trivial`, `all`, or `gen:<subgroup>;<subgroup>...` for the
/// family of subconjugates of the listed subgroups.
pub fn family(g: &FiniteGroup, spec: &str) -> Result<(SubgroupFamily, Vec<Subgroup>)> {
    let spec = spec.trim();
    let family = match spec {
        "proper" => proper_subgroups_family(g)?,
        "trivial" | "{1}" => trivial_family(g),
        "all" => all_subgroups_family(g)?,
        _ => {
            let list = spec
                .strip_prefix("gen:")
                .ok_or_else(|| Error::invalid(format!("family {spec:?}: expected proper, trivial, all or gen:<subgroups>")))?;
            let gens = list.split(';').map(|s| subgroup(g, s)).collect::<Result<Vec<_>>>()?;
            family_generated_by_all(g, &gens)?
        }
    };
    let generators = family.maximal_class_representatives(g);
    Ok((family, generators))
}

/// A coefficient module over a finite group: `trivial`, `sign` or `sign:i`,
/// `perm:<subgroup>` for `Z(K/H)`, `ideal:<subgroup>` for `I(K/H)`, or
/// `battery:<name>`.
pub fn finite_module(g: &FiniteGroup, spec: &str, battery_id: &str, seed: u64) -> Result<GroupModule> {
    let spec = spec.trim();
    let group = Group::finite(g.clone());
    if spec == "trivial" {
        return Ok(GroupModule::trivial(group, 1));
    }
    if spec == "sign" || spec.starts_with("sign:") {
        let i: usize = match spec.strip_prefix("sign:") {
            Some(i) => i.parse().map_err(|_| Error::invalid(format!("bad sign index {i:?}")))?,
            None => 1,
        };
        let chars = sign_characters(g);
        let signs = chars
            .get(i)
            .ok_or_else(|| Error::NotFound(format!("sign character {i} ({} available)", chars.len())))?;
        return GroupModule::character(group, signs);
    }
    if let Some(h) = spec.strip_prefix("perm:") {
        return permutation_module(g, &subgroup(g, h)?);
    }
    if let Some(h) = spec.strip_prefix("ideal:") {
        return Ok(augmentation_ideal(g, &subgroup(g, h)?)?.0);
    }
    if let Some(name) = spec.strip_prefix("battery:") {
        return battery(battery_id, g, seed)?
            .into_iter()
            .find(|m| m.name == name)
            .map(|m| m.module)
            .ok_or_else(|| Error::UnknownName(format!("battery module {name:?}")));
    }
    Err(Error::invalid(format!(
        "module {spec:?}: expected trivial, sign[:i], perm:<subgroup>, ideal:<subgroup> or battery:<name>"
    )))
}

/// Named coefficient modules, expanding `battery` to the whole battery.
pub fn finite_modules(
    g: &FiniteGroup,
    spec: &str,
    battery_id: &str,
    seed: u64,
) -> Result<Vec<(String, GroupModule)>> {
    if spec.trim() == "battery" {
        return Ok(battery(battery_id, g, seed)?
            .into_iter()
            .map(|m| (m.name, m.module))
            .collect());
    }
    Ok(vec![(spec.trim().to_string(), finite_module(g, spec, battery_id, seed)?)])
}

pub fn fixture_coefficients(spec: &str) -> Result<Coefficients> {
    match spec.trim() {
        "trivial" => Ok(Coefficients::Trivial),
        "sign" => Ok(Coefficients::Sign),
        "orientation" => Ok(Coefficients::Orientation),
        "orientation-squared" => Ok(Coefficients::OrientationSquared),
        other => Err(Error::invalid(format!(
            "module {other:?} over a fixture group: expected trivial, sign, orientation or orientation-squared"
        ))),
    }
}

pub fn fixture_module(p: &PresentedGroup, spec: &str) -> Result<GroupModule> {
    coefficient_module(p, fixture_coefficients(spec)?)
}

/// An integer matrix as a JSON array of rows; entries are numbers or decimal strings.
pub fn matrix(text: &str) -> Result<IntegerMatrix> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("matrix is not JSON: {e}")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| Error::invalid("matrix must be an array of rows"))?;
    let parsed: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::invalid("each matrix row must be an array"))?
                .iter()
                .map(|x| bigint_from_json(x).map_err(Error::invalid))
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(Error::invalid("matrix rows have different lengths"));
    }
    Ok(IntegerMatrix::from_dense(parsed.len(), cols, &parsed))
}

/// `key=value` pairs for diagnostics.
pub fn describe_limits(l: &Limits) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for (k, v) in [
        ("resolution-rank", l.resolution_rank),
        ("orbit-group", l.orbit_group),
        ("bredon-rank", l.bredon_rank),
        ("cocycles", l.cocycles),
        ("edge-orbits", l.edge_orbits),
        ("radius", l.radius),
    ] {
        if let Some(v) = v {
            m.insert(k, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::cyclic;

    #[test]
    fn limits_round_trip() {
        let l = Limits::parse("cocycles=10, radius=2").unwrap();
        assert_eq!(l.cocycles, Some(10));
        assert_eq!(describe_limits(&l).len(), 2);
        assert!(Limits::parse("speed=3").is_err());
        assert!(Limits::parse("radius").is_err());
    }

    #[test]
    fn subgroup_and_family_specs() {
        let c6 = cyclic(6);
        assert_eq!(subgroup(&c6, "order=3").unwrap().order(), 3);
        assert_eq!(subgroup(&c6, "gens=2").unwrap().order(), 3);
        assert!(subgroup(&c6, "order=4").is_err());
        let (f, gens) = family(&c6, "proper").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(gens.len(), 2);
        let (f, _) = family(&c6, "gen:order=2").unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn modules_and_matrices() {
        let c2 = cyclic(2);
        assert_eq!(finite_module(&c2, "perm:trivial", "paper-v1", 1).unwrap().rank(), 2);
        assert!(finite_module(&c2, "sign:5", "paper-v1", 1).is_err());
        assert!(finite_modules(&c2, "battery", "paper-v1", 1).unwrap().len() >= 3);
        let m = matrix("[[2,4],[6,\"8\"]]").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(matrix("[[1],[2,3]]").is_err());
        assert!(matches!(named_group("ZxZxZ").unwrap(), NamedGroup::Fixture(_)));
        assert!(matches!(named_group("S3").unwrap(), NamedGroup::Finite(_)));
    }
}
