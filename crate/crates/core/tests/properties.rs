use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use relcohom::dimension_engine::{
    derive, reproduce_example, Claim, Coefficients, DimBounds, DimQuantity, Extended, LeafSpec,
};
use relcohom::equivariant::{
    classify_gamma_group, equivariant_spanning_tree, verify_spanning_tree, BestvinaBradyInput, FixedPointPattern,
    GammaGroupSpec, GammaSet, GraphAction,
};
use relcohom::exact_linalg::{smith_normal_form, IntegerMatrix};
use relcohom::finite_groups::{all_subgroups, builtin, FiniteGroup};
use relcohom::group_modules::right_cosets;

const GROUPS: &[&str] = &["C2", "C3", "C4", "C6", "S3"];

/// The disjoint union of coset spaces `K/H` for the chosen subgroup classes.
fn coset_union(k: &FiniteGroup, class_ids: &[usize]) -> GammaSet {
    let classes = all_subgroups(k).unwrap();
    let mut points: Vec<Vec<usize>> = Vec::new();
    for &i in class_ids {
        points.extend(right_cosets(k, &classes[i % classes.len()].representative));
    }
    let locate = |x: usize, offset: usize, len: usize| (offset..offset + len).find(|&j| points[j].contains(&x));
    let mut blocks = Vec::new();
    let mut offset = 0;
    for &i in class_ids {
        let len = k.order() / classes[i % classes.len()].representative.order();
        blocks.push((offset, len));
        offset += len;
    }
    let perms: Vec<Vec<usize>> = k
        .elements()
        .map(|a| {
            let mut p = vec![0; points.len()];
            for &(off, len) in &blocks {
                for j in off..off + len {
                    p[j] = locate(k.mul(points[j][0], k.inv(a)), off, len).unwrap();
                }
            }
            p
        })
        .collect();
    let labels = (0..points.len()).map(|i| format!("x{i}")).collect();
    GammaSet::from_element_perms(k, labels, perms).unwrap()
}

fn orbit_closure(set: &GammaSet, seeds: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in seeds {
        let (a, b) = (a % set.len(), b % set.len());
        if a == b {
            continue;
        }
        for g in set.group().elements() {
            let (x, y) = (set.act(g, a), set.act(g, b));
            let e = (x.min(y), x.max(y));
            if x != y && !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    edges.sort_unstable();
    edges
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_is_a_valid_decomposition(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-9i64..10, 16)) {
        let a = IntegerMatrix::from_i64(rows, cols, &seed[..rows * cols]).unwrap();
        let d = smith_normal_form(&a);
        prop_assert_eq!(&(&d.u * &a) * &d.v, d.s.clone());
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| d.s.get(i, i)).collect();
        for i in 0..rows {
            for j in 0..cols {
                prop_assert!(i == j || d.s.get(i, j).is_zero());
            }
        }
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn leaves_never_conclude_infinity(
        group in prop::sample::select(vec!["Z", "ZxZ", "ZxZxZ", "Klein"]),
        order in 2u32..9,
        degrees in 1usize..8,
        primes in prop::collection::vec(2usize..20, 1..4),
    ) {
        let specs = vec![
            LeafSpec::FixtureCohomology {
                group: group.to_string(),
                coefficients: Coefficients::Trivial,
                degrees,
                quantity: DimQuantity::cd(group),
            },
            LeafSpec::CyclicPeriodicity { order, degrees: degrees + 4, quantity: DimQuantity::cd(format!("C{order}")) },
            LeafSpec::ProperFamily { group: format!("C{order}") },
            LeafSpec::FiniteOrder { group: format!("C{order}") },
            LeafSpec::DistinctPrimes { primes, subject: "X".into() },
        ];
        for spec in specs {
            let out = spec.run().unwrap();
            for c in &out.claims {
                if let Claim::Bound { value, .. } = c {
                    prop_assert!(value.lo != Extended::Infinite, "{spec:?} concluded {value}");
                    prop_assert!(value.is_consistent());
                }
            }
        }
    }

    #[test]
    fn parametrised_examples_keep_adamson_below_bredon(n in 1u32..8) {
        for id in ["ex-4.16", "ex-5.10"] {
            let n = if id == "ex-5.10" { n + 1 } else { n };
            let b = reproduce_example(id, Some(n)).unwrap();
            if let (Some(a), Some(br)) = (b.values.get("adamson"), b.values.get("bredon")) {
                prop_assert!(a.lo <= br.hi);
            }
            for f in &b.facts {
                prop_assert!(f.value.is_consistent());
            }
        }
    }

    #[test]
    fn free_basis_classification_is_consistent(g in prop::sample::select(GROUPS.to_vec()), classes in prop::collection::vec(0usize..6, 1..4)) {
        let k = builtin(g).unwrap();
        let set = coset_union(&k, &classes);
        let report = classify_gamma_group(&GammaGroupSpec::FreeWithBasis(set.clone())).unwrap();
        prop_assert!(report.is_consistent());
        prop_assert_eq!(report.gamma_free.value, Some(true));
        prop_assert_eq!(report.strongly_gamma_free.value, Some(set.is_free()));
    }

    #[test]
    fn pattern_classification_is_consistent(g in prop::sample::select(GROUPS.to_vec()), ids in prop::collection::btree_set(0usize..6, 0..5)) {
        let k = builtin(g).unwrap();
        let n = all_subgroups(&k).unwrap().len();
        let ids: Vec<usize> = ids.into_iter().filter(|&i| i < n).collect();
        if let Ok(p) = FixedPointPattern::from_nonempty_classes(&k, &ids) {
            if let Ok(report) = classify_gamma_group(&GammaGroupSpec::BestvinaBrady(BestvinaBradyInput::Pattern(p))) {
                prop_assert!(report.is_consistent());
            }
        }
    }

    #[test]
    fn spanning_trees_verify(
        g in prop::sample::select(vec!["C2", "C3", "C4"]),
        classes in prop::collection::vec(0usize..4, 1..3),
        seeds in prop::collection::vec((0usize..12, 0usize..12), 1..5),
    ) {
        let k = builtin(g).unwrap();
        let set = coset_union(&k, &classes);
        let edges = orbit_closure(&set, &seeds);
        let graph = GraphAction::new(set, &edges).unwrap();
        let Ok(r) = equivariant_spanning_tree(&graph) else {
            prop_assert!(!graph.is_connected());
            return Ok(());
        };
        prop_assert!(graph.is_connected());
        if let Some(tree) = &r.tree {
            prop_assert!(verify_spanning_tree(&graph, tree));
            prop_assert!(r.stabilizer_fixed_sets_connected);
        }
        prop_assert_eq!(r.discrepancy, r.tree.is_none() && r.stabilizer_fixed_sets_connected);
    }
}

#[test]
fn derive_answers_are_consistent_and_never_computed_infinite() {
    for target in ["cd(ZxZ, Z)", "cd(Z, 2Z)", "cd(ZxZxZ)", "cd([C4 : proper])", "bredon:C6:proper", "cd(C3)"] {
        let f = derive(&DimQuantity::parse(target).unwrap(), &[]).unwrap();
        assert!(f.value.is_consistent(), "{target}");
        assert!(f.trace.replays().unwrap(), "{target}");
        if f.value.lo == Extended::Infinite {
            assert!(f.trace.computations.iter().all(|l| l
                .spec
                .run()
                .unwrap()
                .claims
                .iter()
                .all(|c| !matches!(c, Claim::Bound { value, .. } if value.lo == Extended::Infinite))));
        }
    }
    assert_eq!(derive(&DimQuantity::parse("cd(ZxZ, Z)").unwrap(), &[]).unwrap().value, DimBounds::exact(2));
}
