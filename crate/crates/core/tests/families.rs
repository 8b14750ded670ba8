use edgereg::family::{build_family_capped, validate_or_recover};
use edgereg::formulas::{predict_family1, predict_family3, predict_special, SpecialShape};
use edgereg::harness::{compare, CompareOptions, Verdict};
use edgereg::{
    build_family, polarize, resolve, validate, Family, FamilyInstance, OracleConfig, Vertex, VertexWeightedDigraph,
};
use proptest::prelude::*;

fn oracle_reg_pd(inst: &FamilyInstance) -> (i64, i64) {
    let (_, s) = resolve(&inst.graph().edge_ideal().unwrap(), &OracleConfig::default()).unwrap();
    (s.reg, s.pd)
}

/// Sizes and weights of an arbitrary family member, weights in `2..=4`
/// except where a source forces 1.
fn member() -> impl Strategy<Value = (Family, Vec<usize>, Vec<Vec<u32>>)> {
    (0usize..3, 2usize..=4)
        .prop_flat_map(|(f, m)| {
            let family = Family::ALL[f];
            let m = m.max(family.min_parts());
            (Just(family), prop::collection::vec(1usize..=3, m))
        })
        .prop_flat_map(|(family, mut sizes)| {
            if family == Family::WhiskerLayered {
                if sizes[0] > sizes[1] {
                    sizes.swap(0, 1);
                }
                if sizes.len() == 2 {
                    sizes[1] = sizes[0];
                }
            }
            let weights: Vec<_> = sizes.iter().map(|&t| prop::collection::vec(2u32..=4, t)).collect();
            (Just(family), Just(sizes), weights)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn built_instances_validate((family, sizes, weights) in member()) {
        let inst = build_family(family, &sizes, &weights).unwrap();
        prop_assert!(validate(inst.graph(), family).unwrap().passes());
        prop_assert_eq!(inst.part_sizes(), &sizes[..]);
        let ideal = inst.graph().edge_ideal().unwrap();
        prop_assert_eq!(ideal.num_gens(), inst.graph().edges().len());
    }

    #[test]
    fn partition_recovery((family, sizes, weights) in member()) {
        let inst = build_family(family, &sizes, &weights).unwrap();
        let g = inst.graph();
        let bare = VertexWeightedDigraph::new(g.vertices().to_vec(), g.edges().to_vec(), None).unwrap();
        let (report, with) = validate_or_recover(&bare, family).unwrap();
        prop_assert!(report.passes(), "{:?}", report.violations);
        prop_assert!(with.is_some());
    }

    #[test]
    fn source_normalization_keeps_the_ideal((family, sizes, weights) in member(), bump in 2u32..=7) {
        let inst = build_family(family, &sizes, &weights).unwrap();
        let g = inst.graph();
        let heavy: Vec<Vertex> = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, x)| Vertex { id: x.id.clone(), weight: if g.is_source(v) { bump } else { x.weight } })
            .collect();
        let heavy = VertexWeightedDigraph::new(heavy, g.edges().to_vec(), None).unwrap();
        prop_assert_eq!(heavy.edge_ideal().unwrap(), g.edge_ideal().unwrap());
        let once = heavy.normalize_sources();
        prop_assert_eq!(once.normalize_sources(), once.clone());
        prop_assert_eq!(once.total_weight(), g.total_weight());
    }
}

#[test]
fn complete_bipartite_examples() {
    let k11 = build_family(Family::PathLayered, &[1, 1], &[vec![1], vec![3]]).unwrap();
    assert_eq!(oracle_reg_pd(&k11), (4, 0));
    let k22 = build_family(Family::PathLayered, &[2, 2], &[vec![1, 1], vec![2, 2]]).unwrap();
    assert_eq!(oracle_reg_pd(&k22), (4, 2));
    let k23 = build_family(Family::PathLayered, &[2, 3], &[vec![1, 1], vec![2, 2, 2]]).unwrap();
    assert_eq!(k23.graph().polarized_num_vars(), 8);
    assert_eq!(oracle_reg_pd(&k23), (5, 3));
    let p = predict_special(SpecialShape::CompleteBipartite, &k23).unwrap();
    assert_eq!((p.reg, p.pd), (5, 3));
    assert_eq!(predict_family1(&k22).unwrap().reg, 4);
}

#[test]
fn oriented_triangle() {
    let c3 = build_family(Family::CyclicLayered, &[1, 1, 1], &[vec![2], vec![2], vec![2]]).unwrap();
    assert_eq!(c3.graph().polarized_num_vars(), 6);
    assert_eq!(oracle_reg_pd(&c3), (4, 2));
    let p = predict_family3(&c3).unwrap();
    assert_eq!((p.reg, p.pd, p.depth), (4, 2, 1));
}

#[test]
fn weighted_bipartite_polarization_example() {
    let graph = VertexWeightedDigraph::from_json(
        r#"{"vertices":[{"id":"x1","weight":2},{"id":"x2","weight":2},{"id":"x3","weight":1},
                        {"id":"x4","weight":1},{"id":"x5","weight":2},{"id":"x6","weight":2}],
            "edges":[["x3","x1"],["x4","x2"],["x3","x5"],["x3","x6"],["x4","x5"],["x4","x6"]]}"#,
    )
    .unwrap();
    let ideal = graph.edge_ideal().unwrap();
    let (p, map) = polarize(&ideal).unwrap();
    assert_eq!(map.target().num_vars(), 10);
    assert_eq!(
        p.to_string(),
        "(x1_1*x1_2*x3_1, x2_1*x2_2*x4_1, x3_1*x5_1*x5_2, x3_1*x6_1*x6_2, x4_1*x5_1*x5_2, x4_1*x6_1*x6_2)"
    );
    let (table, summary) = resolve(&ideal, &OracleConfig::default()).unwrap();
    assert_eq!(table.num_generators(), 6);
    assert_eq!(summary.n, 6);
    assert_eq!(summary.depth, 6 - summary.pd);
}

#[test]
fn compare_path_layered_member() {
    let inst = build_family(Family::PathLayered, &[1, 2, 1], &[vec![1], vec![2, 3], vec![2]]).unwrap();
    assert!(inst.graph().polarized_num_vars() <= 16);
    let rec = compare(inst.graph(), Some(Family::PathLayered), &CompareOptions::default()).unwrap();
    assert_eq!(rec.verdict, Verdict::Match);
}

#[test]
fn interior_weight_one_breaks_the_formula() {
    // same shape as a valid member but with an interior weight of 1
    let inst = build_family_capped(Family::PathLayered, &[1, 2, 1], &[vec![1], vec![2, 2], vec![2]], 9).unwrap();
    let g = inst.graph();
    let mut vs = g.vertices().to_vec();
    vs[1].weight = 1;
    vs[2].weight = 1;
    let light = VertexWeightedDigraph::new(vs, g.edges().to_vec(), g.parts().map(<[_]>::to_vec)).unwrap();
    assert!(!validate(&light, Family::PathLayered).unwrap().passes());
    let opts = CompareOptions { formal: true, ..CompareOptions::default() };
    let rec = compare(&light, Some(Family::PathLayered), &opts).unwrap();
    assert!(rec.prediction.hypotheses_violated);
    assert_ne!(rec.verdict, Verdict::Mismatch);
}
