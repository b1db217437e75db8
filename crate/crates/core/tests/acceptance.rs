//! The acceptance gate: thirteen criteria, each printed as one pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};

use relcohom::bredon::{
    atomic_module, bredon_cohomology_with, coinduction_fixed_points, free_resolution_constant, restricted_category,
    shapiro_bredon_check, shapiro_relative_check, OrbitCategory,
};
use relcohom::cli::parse::{fixture_module, named_group, NamedGroup};
use relcohom::cli::run;
use relcohom::dimension_engine::{
    derive, reproduce_example, Claim, DimBounds, DimQuantity, Extended, ExampleBundle, LeafSpec, Source,
};
use relcohom::equivariant::{
    cayley_ball, classify_gamma_group, fixed_subcomplex, subgroup_label, BestvinaBradyInput, GammaGroupSpec,
    GammaSet,
};
use relcohom::exact_linalg::FgAbelianGroup;
use relcohom::finite_groups::{
    all_subgroups, cyclic, direct_product, family_generated_by, proper_subgroups_family, subgroup_list, sylow,
    symmetric, FiniteGroup, Subgroup,
};
use relcohom::group_modules::battery::{battery, DEFAULT_BATTERY, DEFAULT_SEED};
use relcohom::group_modules::{
    cohomology_with, fixture_resolution, group_cohomology, permutation_module, sign_characters,
    tensor_product_resolution, FixtureInclusion, Group, GroupModule, Inclusion, PresentedGroup,
};
use relcohom::nonabelian::{bijection_check, builtin_suite, complement_classes, h1_bruteforce};
use relcohom::relative_adamson::{
    adamson_cohomology, augmentation_test_epimorphism, average_splitting, mod_p_euler_obstruction,
    relative_projectivity_test,
};
use relcohom::relative_takasu::{les_verify, takasu_cone_route};

fn z() -> FgAbelianGroup {
    FgAbelianGroup::free(1)
}

fn zn(n: u64) -> FgAbelianGroup {
    FgAbelianGroup::cyclic(n)
}

fn fixture(name: &str) -> Result<PresentedGroup> {
    match named_group(name)? {
        NamedGroup::Fixture(p) => Ok(p),
        NamedGroup::Finite(_) => bail!("{name} is not a fixture"),
    }
}

fn derived(q: DimQuantity) -> Result<DimBounds> {
    Ok(derive(&q, &[])?.value)
}

fn golden(name: &str) -> Result<String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    std::fs::read_to_string(&path).with_context(|| path.display().to_string())
}

fn reproduce_json(args: &[&str]) -> Result<String> {
    let mut argv = vec!["relcohom", "reproduce"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let (code, out, err) = run(argv);
    ensure!(code == 0, "reproduce {args:?} exited {code}: {err}");
    Ok(out)
}

fn leaves(bundle: &ExampleBundle) -> Vec<&LeafSpec> {
    bundle
        .facts
        .iter()
        .flat_map(|f| f.trace.computations.iter().map(|l| &l.spec))
        .collect()
}

fn criterion_1() -> Result<String> {
    let p = fixture("ZxZ")?;
    let inc = Inclusion::Fixture(FixtureInclusion::second_factor());
    let m = fixture_module(&p, "trivial")?;
    let h = takasu_cone_route(&inc, &m, 3)?.groups;
    ensure!(h[1] == z() && h[2] == z() && h[3].is_zero(), "H^1..3 = {}, {}, {}", h[1], h[2], h[3]);
    let cd = derived(DimQuantity::takasu("ZxZ", "Z"))?;
    ensure!(cd == DimBounds::exact(2), "engine gives {cd}");
    Ok(format!("H^1 = {}, H^2 = {}, H^3 = {}; cd = {cd}", h[1], h[2], h[3]))
}

fn criterion_2() -> Result<String> {
    let p = fixture("Z")?;
    let inc = Inclusion::Fixture(FixtureInclusion::doubling());
    let m = fixture_module(&p, "sign")?;
    let h = takasu_cone_route(&inc, &m, 3)?.groups;
    ensure!(h[2] == z(), "H^2 = {}", h[2]);
    let les = les_verify(&inc, &m, 3)?;
    ensure!(les.composites_zero && les.exact, "long exact sequence not verified");
    let cd = derived(DimQuantity::takasu("Z", "2Z"))?;
    ensure!(cd == DimBounds::exact(2), "engine gives {cd}");
    let c2 = Group::finite(cyclic(2));
    let hc2 = group_cohomology(&GroupModule::trivial(c2, 1), 10)?;
    for k in 1..=5 {
        ensure!(hc2[2 * k] == zn(2), "H^{}(Z/2; Z) = {}", 2 * k, hc2[2 * k]);
    }
    let b = reproduce_example("ex-5.2", None)?;
    let inf = DimBounds::infinite();
    ensure!(b.values["adamson"] == inf && b.values["bredon"] == inf, "Adamson/Bredon side not infinite");
    let periodic = leaves(&b)
        .iter()
        .any(|l| matches!(l, LeafSpec::CyclicPeriodicity { order: 2, degrees, .. } if *degrees >= 10));
    ensure!(periodic, "no Z/2 periodicity leaf through degree 10");
    Ok(format!("H^2 = {}, LES exact, cd = {cd}, H^even(Z/2) = Z/2 to degree 10", h[2]))
}

fn criterion_3() -> Result<String> {
    let spec = relcohom::cli::input::builtin_gamma_group("c6-five-point-kernel")?;
    let GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Complex(action)) = &spec else {
        bail!("builtin is not a complex")
    };
    let g = action.group();
    let mut seen = Vec::new();
    for class in all_subgroups(g)? {
        let h = &class.representative;
        let labels: Vec<String> = fixed_subcomplex(action, h).labels().to_vec();
        let want: &[&str] = match h.order() {
            1 => &["a", "b", "c", "d", "e"],
            2 => &["a", "b", "c"],
            3 => &["d", "e"],
            6 => &[],
            o => bail!("unexpected subgroup order {o}"),
        };
        ensure!(labels == want, "fixed set of {} is {labels:?}", subgroup_label(g, h));
        seen.push(format!("{}:{{{}}}", subgroup_label(g, h), labels.join(",")));
    }
    let report = classify_gamma_group(&spec)?;
    ensure!(report.inassaridze_dim.value == DimBounds::exact(1), "Inassaridze = {}", report.inassaridze_dim.value);
    let b = reproduce_example("ex-4.10", None)?;
    ensure!(b.values["inassaridze"] == DimBounds::exact(1), "bundle Inassaridze differs");
    ensure!(b.values["bredon"] == DimBounds::infinite(), "Bredon = {}", b.values["bredon"]);
    let bredon = b
        .facts
        .iter()
        .find(|f| f.value == DimBounds::infinite() && f.quantity.kind == relcohom::dimension_engine::DimKind::Bredon)
        .context("no Bredon fact")?;
    let leaf = bredon
        .trace
        .computations
        .iter()
        .find(|l| matches!(l.spec, LeafSpec::CyclicPeriodicity { order: 2, degrees, .. } if degrees >= 10))
        .context("Bredon trace lacks the H^even(C2; Z) leaf")?;
    let h: Vec<String> = serde_json::from_value(leaf.result["cohomology"].clone())?;
    ensure!((2..=10).step_by(2).all(|i| h[i] == "Z/2"), "H^even(C2) = {h:?}");
    Ok(format!("{}; Inassaridze = 1, Bredon = inf", seen.join(" ")))
}

fn criterion_4() -> Result<String> {
    let k = cyclic(6);
    let gens = proper_subgroups_family(&k)?.maximal_class_representatives(&k);
    let modules = battery(DEFAULT_BATTERY, &k, DEFAULT_SEED)?;
    ensure!(modules.len() >= 10, "battery has {} modules", modules.len());
    for b in &modules {
        let h = adamson_cohomology(&k, &gens, &b.module, 4)?;
        ensure!(h[1..=4].iter().all(FgAbelianGroup::is_zero), "{}: {:?}", b.name, h);
    }
    let c2 = sylow(&k, 2)?;
    let c3 = sylow(&k, 3)?;
    let (src, tgt, pi, secs) = augmentation_test_epimorphism(&k, &[c2, c3])?;
    let avg = average_splitting(&src, &tgt, &pi, &secs)?;
    ensure!(avg.coefficients == vec![-1, 2], "Bézout pair {:?}", avg.coefficients);
    ensure!(avg.witness.verify_against(&src, &tgt), "averaged section fails verification");
    Ok(format!("{} modules vanish in degrees 1-4; section verified with Bézout pair (-1, 2)", modules.len()))
}

fn criterion_5() -> Result<String> {
    let k = cyclic(6);
    let cat = OrbitCategory::new(&k, &proper_subgroups_family(&k)?)?;
    let res = free_resolution_constant(&cat, 4)?;
    ensure!(res.verify_exact(&cat), "Bredon resolution is not exact");
    let signs: Vec<i64> = k.elements().map(|g| if g % 2 == 0 { 1 } else { -1 }).collect();
    let sign = GroupModule::character(Group::finite(k.clone()), &signs)?;
    let witness = atomic_module(&cat, 2, &sign, 0)?;
    let h = bredon_cohomology_with(&cat, &res, &witness, 3)?;
    ensure!(!h[2].is_zero(), "H^2_F = 0");
    Ok(format!("H^2_F(C6; witness at {}) = {}", cat.object_label(2), h[2]))
}

fn criterion_6() -> Result<String> {
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C6", cyclic(6)),
        ("S3", symmetric(3)?),
        ("C2xC2", direct_product(&cyclic(2), &cyclic(2))),
    ];
    let mut checked = 0;
    for (name, k) in &groups {
        let modules = battery(DEFAULT_BATTERY, k, DEFAULT_SEED)?;
        for class in all_subgroups(k)? {
            let l = &class.representative;
            let cat = OrbitCategory::new(k, &family_generated_by(k, l)?)?;
            let res = free_resolution_constant(&cat, 4)?;
            for b in &modules {
                let adamson = adamson_cohomology(k, std::slice::from_ref(l), &b.module, 3)?;
                let co = coinduction_fixed_points(&cat, &b.module)?;
                let bredon = bredon_cohomology_with(&cat, &res, &co, 3)?;
                ensure!(
                    adamson == bredon,
                    "{name}, <{}>, {}: Adamson {adamson:?} vs Bredon {bredon:?}",
                    subgroup_label(k, l),
                    b.name
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (group, family, module) triples agree in degrees 0-3"))
}

fn criterion_7() -> Result<String> {
    let cases: Vec<(&str, FiniteGroup, relcohom::finite_groups::SubgroupFamily, Subgroup)> = {
        let c6 = cyclic(6);
        let s3 = symmetric(3)?;
        let c3 = sylow(&s3, 3)?;
        vec![
            ("(C6, proper, C2)", c6.clone(), proper_subgroups_family(&c6)?, sylow(&c6, 2)?),
            ("(S3, <C3>, C3)", s3.clone(), family_generated_by(&s3, &c3)?, c3),
        ]
    };
    let mut n = 0;
    for (name, k, fam, p) in &cases {
        let cat = OrbitCategory::new(k, fam)?;
        let (cat_p, _) = restricted_category(&cat, p)?;
        let pg = cat_p.group().clone();
        for signs in sign_characters(&pg) {
            let m = GroupModule::character(Group::finite(pg.clone()), &signs)?;
            let bm = coinduction_fixed_points(&cat_p, &m)?;
            let r = shapiro_bredon_check(&cat, p, &bm, 3)?;
            ensure!(r.agree, "{name}: Bredon Shapiro fails: {r:?}");
            let r = shapiro_relative_check(k, fam, p, &m, 3)?;
            ensure!(r.agree, "{name}: relative Shapiro fails: {r:?}");
            n += 2;
        }
    }
    Ok(format!("{n} Shapiro comparisons agree through degree 3"))
}

fn criterion_8() -> Result<String> {
    let suite = builtin_suite()?;
    let mut n = 0;
    for a in suite.iter().filter(|a| a.semidirect_order() <= 72) {
        let r = bijection_check(&a.gamma, &a.g, &a.action)?;
        ensure!(r.bijective, "{}: H^1 and complement classes do not match", a.name);
        n += 1;
    }
    let s3 = suite.iter().find(|a| a.name == "C2 on C3 by x^-1").context("no inversion action")?;
    let h = h1_bruteforce(&s3.gamma, &s3.g, &s3.action)?;
    let sd = relcohom::finite_groups::semidirect_product(&s3.g, &s3.gamma, &s3.action);
    let classes = complement_classes(&sd)?;
    ensure!(h.len() == 1, "|H^1| = {}", h.len());
    ensure!(classes.len() == 1 && classes[0].len() == 3, "complement classes {:?}", classes.iter().map(Vec::len).collect::<Vec<_>>());
    Ok(format!("{n} semidirect products bijective; C2 on C3: 1 class, 3 conjugate complements"))
}

fn criterion_9() -> Result<String> {
    let mut summary = Vec::new();
    for order in [2usize, 3, 4] {
        let p = cyclic(order);
        let prime = relcohom::finite_groups::prime_factors(order)[0];
        let gens = proper_subgroups_family(&p)?.maximal_class_representatives(&p);
        let proper: Vec<Subgroup> = subgroup_list(&p)?.into_iter().filter(|h| h.order() < order).collect();
        let basic: Vec<GroupModule> =
            proper.iter().map(|h| permutation_module(&p, h)).collect::<relcohom::Result<_>>()?;
        // Direct sums and tensor products of permutation modules on proper subgroups.
        let mut generated = basic.clone();
        for a in &basic {
            for b in &basic {
                generated.push(a.direct_sum(b)?);
                generated.push(a.tensor(b)?);
            }
        }
        for m in &generated {
            ensure!(relative_projectivity_test(m, &gens)?.is_projective(), "C{order}: module not projective");
            ensure!(m.rank() % prime == 0, "C{order}: rank {} not divisible by {prime}", m.rank());
        }
        for len in 1..=4 {
            let candidate: Vec<GroupModule> = (0..len).map(|i| generated[(i * 7 + len) % generated.len()].clone()).collect();
            let o = mod_p_euler_obstruction(&p, &gens, &candidate)?;
            ensure!(o.obstruction_holds, "C{order}: no contradiction for {:?}", o.dimensions);
        }
        summary.push(format!("C{order}: {} modules", generated.len()));
    }
    Ok(format!("{}; every candidate resolution contradicted", summary.join(", ")))
}

fn c2_set(labels: &[&str], perm: Vec<usize>) -> Result<GammaSet> {
    Ok(GammaSet::new(&cyclic(2), labels.iter().map(|s| s.to_string()).collect(), &[(1, perm)])?)
}

fn criterion_10() -> Result<String> {
    let free = cayley_ball(&c2_set(&["x", "y"], vec![1, 0])?, 3)?.report();
    ensure!(free.consistent() && free.zero_unfree, "free basis: {free:?}");
    let fixed = cayley_ball(&c2_set(&["x", "y", "z"], vec![1, 0, 2])?, 3)?.report();
    ensure!(fixed.consistent() && !fixed.zero_unfree, "fixed-point basis: {fixed:?}");
    let w = fixed.witness.context("no witness edge")?;
    ensure!(w.stabilizer.len() > 1, "witness stabilizer trivial");
    Ok(format!(
        "free basis 0-unfree; fixed point gives edge {} -> {} with stabilizer of order {}",
        w.source,
        w.target,
        w.stabilizer.len()
    ))
}

fn criterion_11() -> Result<String> {
    let start = Instant::now();
    let b = reproduce_example("ex-5.9", None)?;
    let inf = DimBounds::infinite();
    ensure!(b.values["takasu"] == DimBounds::exact(4), "Takasu = {}", b.values["takasu"]);
    ensure!(b.values["adamson"] == inf && b.values["bredon"] == inf, "Adamson/Bredon not infinite");
    let klein = fixture("Klein")?;
    let r = fixture_resolution(&klein, 5)?;
    let t = tensor_product_resolution(&r, &r)?;
    ensure!(t.ranks()[..5] == [1, 4, 6, 4, 1], "tensor resolution ranks {:?}", t.ranks());
    let pp = fixture("KleinxKlein")?;
    let h = cohomology_with(&t, &fixture_module(&pp, "orientation-squared")?, 4)?;
    ensure!(h[4] == z(), "H^4(G×G; twisted) = {}", h[4]);
    let ls = leaves(&b);
    ensure!(
        ls.iter().any(|l| matches!(l, LeafSpec::KleinPair { exponent_bound: 20, syllable_bound: 6, .. })),
        "no Klein pair leaf at bounds (20, 6)"
    );
    ensure!(
        ls.iter().any(|l| matches!(l, LeafSpec::CyclicPeriodicity { order: 2, .. })),
        "no Z/2 periodicity leaf"
    );
    ensure!(b.replays()?, "a stored leaf does not replay");
    Ok(format!("Takasu 4, Adamson = Bredon = inf; H^4 = Z with ranks (1,4,6,4,1) in {:.1?}", start.elapsed()))
}

fn criterion_12() -> Result<String> {
    let mut names: Vec<(String, Vec<String>)> =
        ["ex-4.11", "ex-4.15", "ex-5.6", "ex-5.10"].iter().map(|s| (s.to_string(), vec![s.to_string()])).collect();
    for n in 1..=5 {
        names.push((format!("ex-4.16-n{n}"), vec!["ex-4.16".into(), "-n".into(), n.to_string()]));
    }
    for (name, args) in &names {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        ensure!(reproduce_json(&args)? == golden(name)?, "{name} differs from its golden file");
        let b: ExampleBundle = serde_json::from_str(&golden(name)?)?;
        for f in &b.facts {
            ensure!(f.trace.axioms.iter().all(|a| !a.citation.trim().is_empty()), "{name}: uncited axiom");
        }
    }
    let v = |id: &str, n: Option<u32>| reproduce_example(id, n).map(|b| b.values);
    let a5 = v("ex-4.11", None)?;
    ensure!(a5["bredon"] == DimBounds::between(2, 3), "A5 Bredon = {}", a5["bredon"]);
    let cp = v("ex-4.15", None)?;
    ensure!(cp["adamson"] == DimBounds::exact(3) && cp["bredon"] == DimBounds::exact(4), "ex-4.15 values");
    for n in 1..=5 {
        let prod = v("ex-4.16", Some(n))?;
        ensure!(
            prod["adamson"] == DimBounds::exact(3 * n) && prod["bredon"] == DimBounds::exact(4 * n),
            "ex-4.16 at n = {n}"
        );
    }
    let free = v("ex-5.6", None)?;
    ensure!(free["bredon"] == DimBounds::exact(1) && free["takasu"] == DimBounds::infinite(), "ex-5.6 values");
    let amalgam = v("ex-5.10", None)?;
    ensure!(
        amalgam["bredon"].lo == Extended::Finite(5) && amalgam["takasu"].hi == Extended::Finite(4),
        "ex-5.10 chain: Bredon {} vs relative {}",
        amalgam["bredon"],
        amalgam["takasu"]
    );
    Ok("golden traces match: [2,3]; 3 < 4; 3n < 4n for n <= 5; Bredon 1 with relative inf; 5 > 4".into())
}

fn leaf_has_infinity(claims: &[Claim]) -> bool {
    claims.iter().any(|c| match c {
        Claim::Bound { value, .. } => value.lo == Extended::Infinite,
        Claim::Property { .. } => false,
    })
}

fn criterion_13() -> Result<String> {
    let mut leaves_run = 0;
    let mut infinite_facts = 0;
    for id in relcohom::dimension_engine::EXAMPLE_IDS {
        let b = reproduce_example(id, None)?;
        for f in &b.facts {
            for l in &f.trace.computations {
                let out = l.spec.run()?;
                ensure!(!leaf_has_infinity(&out.claims), "{id}: leaf {} concludes inf", l.id);
                leaves_run += 1;
            }
            for node in &f.trace.steps {
                if let (Claim::Bound { value, .. }, Source::Computation { leaf }) = (&node.claim, &node.source) {
                    ensure!(value.lo != Extended::Infinite, "{id}: computation {leaf} asserts inf");
                }
            }
            if f.value.lo == Extended::Infinite {
                infinite_facts += 1;
                let root_is_rule = f
                    .trace
                    .steps
                    .iter()
                    .filter(|n| matches!(&n.claim, Claim::Bound { value, .. } if value.lo == Extended::Infinite))
                    .all(|n| matches!(n.source, Source::Rule { .. } | Source::Axiom { .. }));
                ensure!(root_is_rule, "{id}: an infinite bound comes from a computation");
            }
        }
    }
    Ok(format!(
        "{leaves_run} leaves rerun, none concludes inf; {infinite_facts} infinite values all from rules; cd_P(A5) = 2 by orbit-category resolution is out of scope"
    ))
}

type Check = fn() -> Result<String>;

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Check); 13] = [
        ("Takasu (ZxZ, Z)", criterion_1),
        ("Takasu (Z, 2Z) with sign coefficients", criterion_2),
        ("C6 Bestvina–Brady classification", criterion_3),
        ("Adamson vanishing and averaging at C6", criterion_4),
        ("Bredon witness for C6 with proper subgroups", criterion_5),
        ("Adamson equals Bredon with coinduced coefficients", criterion_6),
        ("Shapiro comparisons", criterion_7),
        ("non-abelian H^1 and complements", criterion_8),
        ("mod-p Euler obstruction", criterion_9),
        ("Cayley ball edge stabilizers", criterion_10),
        ("Klein bottle bundle", criterion_11),
        ("golden example traces", criterion_12),
        ("bounded computations never conclude inf", criterion_13),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS ({secs:.1}s) {name}: {detail}", i + 1),
            Err(e) => {
                println!("criterion {:>2} FAIL ({secs:.1}s) {name}: {e:#}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
