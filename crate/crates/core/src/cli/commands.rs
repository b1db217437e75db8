use std::fmt::Write as _;

use serde_json::{json, Value};

use super::input::{
    builtin_gamma_group, builtin_gamma_set, builtin_graph, read_json, GammaGroupInput, GammaSetInput, GraphInput,
    BUILTIN_GAMMA_GROUPS, BUILTIN_GAMMA_SETS, BUILTIN_GRAPHS,
};
use super::parse::{self, NamedGroup};
use super::{CohomologyCommand, Command, Context, Output, RouteArg};
use crate::bredon::{
    atomic_module, bredon_cohomology_with, coinduction_fixed_points, constant_module, free_resolution_constant_bounded,
    yoneda_module, BredonModule, OrbitCategory, DEFAULT_BREDON_RANK_BOUND, DEFAULT_ORBIT_GROUP_BOUND,
};
use crate::dimension_engine::{derive, reproduce_example, Axiom, DimQuantity, EXAMPLE_IDS};
use crate::equivariant::{
    cayley_ball, classify_gamma_group, equivariant_spanning_tree_bounded, fixed_subcomplex, subgroup_label,
    verify_spanning_tree, BestvinaBradyInput, ClassificationReport, GammaGroupSpec, DEFAULT_EDGE_ORBIT_BOUND,
    MAX_CAYLEY_RADIUS,
};
use crate::error::{Error, Result};
use crate::exact_linalg::{bigint_to_json, smith_normal_form, FgAbelianGroup};
use crate::finite_groups::{all_subgroups, cyclic, power_automorphism, semidirect_product, FiniteGroup, GroupAction};
use crate::group_modules::{
    cohomology_with, fixture_resolution, free_resolution_finite_bounded, FixtureInclusion, Inclusion,
    DEFAULT_TERM_DIMENSION_BOUND,
};
use crate::nonabelian::{bijection_check, complement_classes, builtin_suite, h1_bruteforce_bounded, NamedAction};
use crate::relative_adamson::adamson_cohomology;
use crate::relative_takasu::{les_verify, takasu_cone_route, takasu_ext_route, TakasuResult};

pub(super) fn dispatch(cmd: &Command, ctx: &Context) -> Result<Output> {
    match cmd {
        Command::Snf { matrix, transforms } => snf(matrix, *transforms),
        Command::Cohomology(c) => cohomology(c, ctx),
        Command::Classify { builtin, input, list } => classify(builtin.as_deref(), input.as_deref(), *list),
        Command::H1 {
            action,
            gamma,
            on,
            power,
            all,
            list,
        } => h1(action.as_deref(), gamma.as_deref().zip(on.as_deref()).zip(*power), *all, *list, ctx),
        Command::Reproduce { id, param } => reproduce(id, *param),
        Command::Derive { target, axioms } => derive_cmd(target, axioms.as_deref()),
        Command::SpanningTree { builtin, input } => spanning_tree(builtin.as_deref(), input.as_deref(), ctx),
        Command::CayleyBall { builtin, input, radius } => cayley(builtin.as_deref(), input.as_deref(), *radius, ctx),
    }
}

fn listing(what: &str, names: &[&str]) -> Output {
    Output {
        json: json!({ what: names }),
        text: names.iter().map(|n| format!("{n}\n")).collect(),
    }
}

fn groups_line(gs: &[FgAbelianGroup]) -> String {
    let parts: Vec<String> = gs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn groups_json(gs: &[FgAbelianGroup]) -> Value {
    Value::from(gs.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn snf(text: &str, transforms: bool) -> Result<Output> {
    let a = parse::matrix(text)?;
    let d = smith_normal_form(&a);
    let diag: Vec<_> = (0..a.rows().min(a.cols())).map(|i| d.s.get(i, i)).collect();
    let mut j = json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "rank": d.rank(),
        "diagonal": diag.iter().map(bigint_to_json).collect::<Vec<_>>(),
        "invariant_factors": d.invariant_factors().iter().map(bigint_to_json).collect::<Vec<_>>(),
    });
    let shown: Vec<String> = diag.iter().map(ToString::to_string).collect();
    let mut text = format!("diag({})\n", shown.join(", "));
    if transforms {
        let ok = &(&d.u * &a) * &d.v == d.s;
        j["u"] = serde_json::to_value(&d.u).expect("matrices serialize");
        j["v"] = serde_json::to_value(&d.v).expect("matrices serialize");
        j["verified"] = Value::from(ok);
        let _ = writeln!(text, "U = {}\nV = {}\nU A V = S: {ok}", d.u, d.v);
    }
    Ok(Output { json: j, text })
}

fn cohomology(c: &CohomologyCommand, ctx: &Context) -> Result<Output> {
    let n = ctx.max_degree;
    match c {
        CohomologyCommand::Group { group, module } => match parse::named_group(group)? {
            NamedGroup::Fixture(p) => {
                let m = parse::fixture_module(&p, module)?;
                let res = fixture_resolution(&p, n + 1)?;
                let h = cohomology_with(&res, &m, n)?;
                Ok(Output {
                    json: json!({ "group": group, "module": module, "cohomology": groups_json(&h) }),
                    text: format!("{}\n", groups_line(&h)),
                })
            }
            NamedGroup::Finite(k) => {
                let limit = ctx.limits.resolution_rank.unwrap_or(DEFAULT_TERM_DIMENSION_BOUND);
                let res = free_resolution_finite_bounded(&k, n + 1, limit)?;
                let mut rows = Vec::new();
                let mut text = String::new();
                let modules = parse::finite_modules(&k, module, &ctx.battery, ctx.seed)?;
                let many = modules.len() > 1;
                for (name, m) in modules {
                    let h = cohomology_with(&res, &m, n)?;
                    if many {
                        let _ = writeln!(text, "{name}: {}", groups_line(&h));
                    } else {
                        let _ = writeln!(text, "{}", groups_line(&h));
                    }
                    rows.push(json!({ "module": name, "cohomology": groups_json(&h) }));
                }
                let j = if many {
                    json!({ "group": group, "modules": rows })
                } else {
                    json!({ "group": group, "module": module, "cohomology": rows[0]["cohomology"] })
                };
                Ok(Output { json: j, text })
            }
        },
        CohomologyCommand::Takasu {
            group,
            subgroup,
            module,
            route,
        } => takasu(group, subgroup, module, *route, ctx),
        CohomologyCommand::Adamson { group, family, module } => {
            let k = parse::finite_group(group)?;
            let (_, gens) = parse::family(&k, family)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for (name, m) in parse::finite_modules(&k, module, &ctx.battery, ctx.seed)? {
                let h = adamson_cohomology(&k, &gens, &m, n)?;
                let _ = writeln!(text, "{name}: {}", groups_line(&h));
                rows.push(json!({ "module": name, "cohomology": groups_json(&h) }));
            }
            Ok(Output {
                json: json!({ "group": group, "family": family, "modules": rows }),
                text,
            })
        }
        CohomologyCommand::Bredon { group, family, module } => {
            let k = parse::finite_group(group)?;
            let (fam, _) = parse::family(&k, family)?;
            let cat = OrbitCategory::with_bound(&k, &fam, ctx.limits.orbit_group.unwrap_or(DEFAULT_ORBIT_GROUP_BOUND))?;
            let limit = ctx.limits.bredon_rank.unwrap_or(DEFAULT_BREDON_RANK_BOUND);
            let res = free_resolution_constant_bounded(&cat, n + 1, limit)?;
            let m = bredon_module(&cat, &k, module, ctx)?;
            let h = bredon_cohomology_with(&cat, &res, &m, n)?;
            let objects: Vec<String> = (0..cat.object_count()).map(|i| cat.object_label(i)).collect();
            Ok(Output {
                json: json!({
                    "group": group,
                    "family": family,
                    "module": module,
                    "objects": objects,
                    "resolution_ranks": res.ranks(),
                    "resolution_exact": res.verify_exact(&cat),
                    "cohomology": groups_json(&h),
                }),
                text: format!("{}\n", groups_line(&h)),
            })
        }
    }
}

fn bredon_module(cat: &OrbitCategory, k: &FiniteGroup, spec: &str, ctx: &Context) -> Result<BredonModule> {
    let object = |s: &str| -> Result<usize> {
        let i: usize = s.parse().map_err(|_| Error::invalid(format!("bad object index {s:?}")))?;
        if i >= cat.object_count() {
            return Err(Error::invalid(format!("object {i} out of range 0..{}", cat.object_count())));
        }
        Ok(i)
    };
    if spec == "constant" {
        return Ok(constant_module(cat));
    }
    if let Some(m) = spec.strip_prefix("coinduced:") {
        return coinduction_fixed_points(cat, &parse::finite_module(k, m, &ctx.battery, ctx.seed)?);
    }
    if let Some(b) = spec.strip_prefix("yoneda:") {
        return yoneda_module(cat, object(b)?);
    }
    if let Some(rest) = spec.strip_prefix("atomic:") {
        let mut parts = rest.splitn(3, ':');
        let b = object(parts.next().unwrap_or(""))?;
        let m = parts
            .next()
            .ok_or_else(|| Error::invalid("atomic module needs atomic:<object>:<module>"))?;
        let modulus = match parts.next() {
            Some(x) => x.parse().map_err(|_| Error::invalid(format!("bad modulus {x:?}")))?,
            None => 0,
        };
        return atomic_module(cat, b, &parse::finite_module(k, m, &ctx.battery, ctx.seed)?, modulus);
    }
    Err(Error::invalid(format!(
        "Bredon module {spec:?}: expected constant, coinduced:<module>, yoneda:<object> or atomic:<object>:<module>[:<modulus>]"
    )))
}

fn takasu_json(r: &TakasuResult) -> Value {
    json!({ "route": r.route, "cohomology": groups_json(&r.groups) })
}

fn takasu(group: &str, sub: &str, module: &str, route: RouteArg, ctx: &Context) -> Result<Output> {
    let n = ctx.max_degree;
    match parse::named_group(group)? {
        NamedGroup::Fixture(p) => {
            let inc = match (p.name(), sub) {
                ("ZxZ", "Z") => FixtureInclusion::second_factor(),
                ("Z", "2Z") => FixtureInclusion::doubling(),
                _ => {
                    return Err(Error::invalid(format!(
                        "fixture pairs are (ZxZ, Z) and (Z, 2Z), not ({group}, {sub})"
                    )))
                }
            };
            if matches!(route, RouteArg::Ext | RouteArg::Both) {
                return Err(Error::invalid("fixture pairs use the mapping-cone route"));
            }
            let inc = Inclusion::Fixture(inc);
            let m = parse::fixture_module(&p, module)?;
            let r = takasu_cone_route(&inc, &m, n)?;
            let les = les_verify(&inc, &m, n)?;
            let les_ok = les.composites_zero && les.exact;
            Ok(Output {
                json: json!({
                    "group": group,
                    "subgroup": sub,
                    "module": module,
                    "routes": [takasu_json(&r)],
                    "les_exact": les_ok,
                    "cohomology": groups_json(&r.groups),
                }),
                text: format!("{}\nlong exact sequence verified: {les_ok}\n", groups_line(&r.groups)),
            })
        }
        NamedGroup::Finite(k) => {
            let l = parse::subgroup(&k, sub)?;
            let m = parse::finite_module(&k, module, &ctx.battery, ctx.seed)?;
            let inc = Inclusion::finite(&k, &l);
            let mut results = Vec::new();
            if matches!(route, RouteArg::Auto | RouteArg::Ext | RouteArg::Both) {
                results.push(takasu_ext_route(&k, &l, &m, n)?);
            }
            if matches!(route, RouteArg::Cone | RouteArg::Both) {
                results.push(takasu_cone_route(&inc, &m, n)?);
            }
            if results.windows(2).any(|w| w[0].groups != w[1].groups) {
                return Err(Error::precondition("Ext and mapping-cone routes disagree"));
            }
            let h = &results[0].groups;
            Ok(Output {
                json: json!({
                    "group": group,
                    "subgroup": sub,
                    "module": module,
                    "routes": results.iter().map(takasu_json).collect::<Vec<_>>(),
                    "cohomology": groups_json(h),
                }),
                text: format!("{}\n", groups_line(h)),
            })
        }
    }
}

fn render_report(r: &ClassificationReport) -> String {
    fn tri(v: Option<bool>) -> &'static str {
        match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "undetermined",
        }
    }
    let mut s = String::new();
    let _ = writeln!(s, "Γ-free: {}", tri(r.gamma_free.value));
    let _ = writeln!(s, "strongly Γ-free: {}", tri(r.strongly_gamma_free.value));
    let _ = writeln!(s, "Inassaridze dimension: {}", r.inassaridze_dim.value);
    let _ = writeln!(s, "Bredon dimension <= 1: {}", tri(r.bredon_dim_le_1.value));
    let _ = writeln!(s, "relative (Takasu) dimension <= 1: {}", tri(r.cco_dim_le_1.value));
    if let Some(h1) = &r.h1 {
        for v in &h1.verdicts {
            let _ = writeln!(
                s,
                "  class {} ({}, order {}): fixed set {}, H¹ {}",
                v.class_id,
                v.label,
                v.order,
                if v.fixed_set_nonempty { "nonempty" } else { "empty" },
                if v.h1_trivial { "trivial" } else { "nontrivial" }
            );
        }
    }
    s
}

fn classify(builtin: Option<&str>, input: Option<&str>, list: bool) -> Result<Output> {
    if list {
        return Ok(listing("builtins", BUILTIN_GAMMA_GROUPS));
    }
    let spec = match (builtin, input) {
        (Some(b), _) => builtin_gamma_group(b)?,
        (None, Some(path)) => read_json::<GammaGroupInput>(path)?.build()?,
        (None, None) => return Err(Error::invalid("classify needs --builtin or --input")),
    };
    let report = classify_gamma_group(&spec)?;
    let mut j = serde_json::to_value(&report).map_err(|e| Error::invalid(e.to_string()))?;
    j["consistent"] = Value::from(report.is_consistent());
    let mut text = render_report(&report);
    if let GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Complex(action)) = &spec {
        let g = action.group();
        let mut fixed = serde_json::Map::new();
        for c in all_subgroups(g)? {
            let h = &c.representative;
            let sub = fixed_subcomplex(action, h);
            let label = subgroup_label(g, h);
            let _ = writeln!(text, "  fixed set of {label}: {{{}}}", sub.labels().join(","));
            fixed.insert(label, Value::from(sub.labels().to_vec()));
        }
        j["fixed_sets"] = Value::Object(fixed);
    }
    Ok(Output { json: j, text })
}

fn h1_one(a: &NamedAction, ctx: &Context) -> Result<(Value, String)> {
    let bound = ctx.limits.cocycles.unwrap_or(usize::MAX);
    let h = h1_bruteforce_bounded(&a.gamma, &a.g, &a.action, bound)?;
    let report = bijection_check(&a.gamma, &a.g, &a.action)?;
    let sizes: Vec<usize> = complement_classes(&semidirect_product(&a.g, &a.gamma, &a.action))?
        .iter()
        .map(Vec::len)
        .collect();
    let j = json!({
        "action": a.name,
        "semidirect_order": a.semidirect_order(),
        "h1_classes": h.len(),
        "cocycles": h.cocycle_count,
        "h1_class_sizes": h.class_sizes,
        "complement_classes": report.complement_classes,
        "complement_class_sizes": sizes,
        "matching": report.matching,
        "bijective": report.bijective,
    });
    let text = format!(
        "{}: |H¹| = {}, complement classes {} (sizes {:?}), bijective: {}\n",
        a.name,
        h.len(),
        report.complement_classes,
        sizes,
        report.bijective
    );
    Ok((j, text))
}

fn h1(
    action: Option<&str>,
    custom: Option<((&str, &str), i64)>,
    all: bool,
    list: bool,
    ctx: &Context,
) -> Result<Output> {
    let suite = builtin_suite()?;
    if list {
        let names: Vec<&str> = suite.iter().map(|a| a.name.as_str()).collect();
        return Ok(listing("actions", &names));
    }
    let chosen: Vec<NamedAction> = if all {
        suite
    } else if let Some(name) = action {
        vec![suite
            .into_iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::UnknownName(format!("action {name:?}; see h1 --list")))?]
    } else if let Some(((gamma, on), k)) = custom {
        vec![cyclic_power_action(gamma, on, k)?]
    } else {
        return Err(Error::invalid("h1 needs --action, --gamma/--on/--power, --all or --list"));
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    for a in &chosen {
        let (j, t) = h1_one(a, ctx)?;
        rows.push(j);
        text.push_str(&t);
    }
    Ok(Output {
        json: json!({ "results": rows }),
        text,
    })
}

fn cyclic_order(name: &str) -> Result<usize> {
    name.strip_prefix('C')
        .and_then(|m| m.parse().ok())
        .filter(|&m: &usize| m >= 1)
        .ok_or_else(|| Error::invalid(format!("{name:?} is not a cyclic group C<m>")))
}

fn cyclic_power_action(gamma: &str, on: &str, k: i64) -> Result<NamedAction> {
    let (m, n) = (cyclic_order(gamma)?, cyclic_order(on)?);
    let (gamma_g, g) = (cyclic(m), cyclic(n));
    let action = if m == 1 {
        GroupAction::trivial(&gamma_g, &g)
    } else {
        GroupAction::from_generator_images(&gamma_g, &g, &[(1, power_automorphism(&g, k)?)])?
    };
    Ok(NamedAction {
        name: format!("C{m} on C{n} by x^{k}"),
        gamma: gamma_g,
        g,
        action,
    })
}

fn reproduce(id: &str, param: Option<u32>) -> Result<Output> {
    if id == "list" {
        return Ok(listing("examples", EXAMPLE_IDS));
    }
    let b = reproduce_example(id, param)?;
    Ok(Output {
        json: serde_json::to_value(&b).map_err(|e| Error::invalid(e.to_string()))?,
        text: b.render_text(),
    })
}

fn derive_cmd(target: &str, axioms: Option<&str>) -> Result<Output> {
    let q = DimQuantity::parse(target)?;
    let axioms: Vec<Axiom> = match axioms {
        Some(path) => read_json(path)?,
        None => Vec::new(),
    };
    let f = derive(&q, &axioms)?;
    Ok(Output {
        json: serde_json::to_value(&f).map_err(|e| Error::invalid(e.to_string()))?,
        text: f.render_text(),
    })
}

fn spanning_tree(builtin: Option<&str>, input: Option<&str>, ctx: &Context) -> Result<Output> {
    let graph = match (builtin, input) {
        (Some("list"), _) => return Ok(listing("builtins", BUILTIN_GRAPHS)),
        (Some(b), _) => builtin_graph(b)?,
        (None, Some(path)) => read_json::<GraphInput>(path)?.build()?,
        (None, None) => return Err(Error::invalid("spanning-tree needs --builtin or --input")),
    };
    let r = equivariant_spanning_tree_bounded(&graph, ctx.limits.edge_orbits.unwrap_or(DEFAULT_EDGE_ORBIT_BOUND))?;
    let verified = r.tree.as_ref().map(|t| verify_spanning_tree(&graph, t));
    let mut j = serde_json::to_value(&r).map_err(|e| Error::invalid(e.to_string()))?;
    j["verified"] = json!(verified);
    let mut text = match &r.tree {
        Some(t) => format!("invariant spanning tree: {t:?} (verified: {})\n", verified == Some(true)),
        None => "no invariant spanning tree\n".to_string(),
    };
    let _ = writeln!(
        text,
        "fixed subgraphs of vertex stabilizers connected: {}",
        r.stabilizer_fixed_sets_connected
    );
    if r.discrepancy {
        text.push_str("discrepancy: the connectivity condition holds but no invariant spanning tree exists\n");
    }
    Ok(Output { json: j, text })
}

fn cayley(builtin: Option<&str>, input: Option<&str>, radius: usize, ctx: &Context) -> Result<Output> {
    let basis = match (builtin, input) {
        (Some("list"), _) => return Ok(listing("builtins", BUILTIN_GAMMA_SETS)),
        (Some(b), _) => builtin_gamma_set(b)?,
        (None, Some(path)) => read_json::<GammaSetInput>(path)?.build()?.1,
        (None, None) => return Err(Error::invalid("cayley-ball needs --builtin or --input")),
    };
    let cap = ctx.limits.radius.unwrap_or(MAX_CAYLEY_RADIUS);
    if radius > cap {
        return Err(Error::bound("Cayley ball radius", cap, radius));
    }
    let report = cayley_ball(&basis, radius)?.report();
    let mut j = serde_json::to_value(&report).map_err(|e| Error::invalid(e.to_string()))?;
    j["consistent"] = Value::from(report.consistent());
    let mut text = format!(
        "radius {}: {} vertices, {} edges, tree: {}, Γ-invariant: {}\n0-unfree (trivial edge stabilizers): {}\n",
        report.radius,
        report.vertex_count,
        report.edge_count,
        report.is_tree,
        report.gamma_invariant,
        report.zero_unfree
    );
    if let Some(w) = &report.witness {
        let pairs: Vec<String> = w.stabilizer.iter().map(|(h, g)| format!("({h}, {g})")).collect();
        let _ = writeln!(
            text,
            "edge {} -> {} (label {}) has stabilizer {{{}}}",
            w.source,
            w.target,
            w.label,
            pairs.join(", ")
        );
    }
    Ok(Output { json: j, text })
}
