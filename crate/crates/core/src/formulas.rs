//! Closed-form predictions of reg, pd and depth for the layered families.
//!
//! With `W = Σ w(x)` (sources normalized to 1), `n = |V|` and `t_i = |V_i|`:
//!
//! | family          | reg               | pd                                        |
//! |-----------------|-------------------|-------------------------------------------|
//! | path-layered    | `W - n + 2`       | `n - 2`                                   |
//! | whisker-layered | `W - (n - t1) + 1`| `n - t1 - 2` if `t1 < t2`, else `n - t2 - 1` |
//! | cyclic-layered  | `W - n + 1`       | `n - 1`                                   |
//!
//! Depth is always `n - pd`.

use serde::Serialize;

use crate::digraph::VertexWeightedDigraph;
use crate::error::{Error, Result};
use crate::family::{validate_or_recover, Family, FamilyInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaPrediction {
    pub reg: i64,
    pub pd: i64,
    pub depth: i64,
    /// Which closed form produced the numbers.
    pub source: String,
    /// Set when the formula was applied to a graph outside its family.
    pub hypotheses_violated: bool,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpecialShape {
    CompleteBipartite,
    OrientedCycle,
    CompleteTripartite,
}

/// Alternative whisker-layered depth `t1 - 2` (if `t1 < t2`) or `t2 - 1`.
/// It disagrees with `n - pd` and is only ever reported next to it.
pub fn whisker_alternative_depth(part_sizes: &[usize]) -> i64 {
    let (t1, t2) = (part_sizes[0] as i64, part_sizes[1] as i64);
    if t1 < t2 {
        t1 - 2
    } else {
        t2 - 1
    }
}

/// The warning attached to every whisker-layered prediction.
pub fn whisker_depth_warning(depth: i64, part_sizes: &[usize]) -> String {
    let (t1, t2) = (part_sizes[0], part_sizes[1]);
    let alt = whisker_alternative_depth(part_sizes);
    let alt_expr = if t1 < t2 { "|V_1| - 2" } else { "|V_2| - 1" };
    format!(
        "depth reported as |V| - pd = {depth} (Auslander-Buchsbaum); \
         the alternative closed form {alt_expr} = {alt} disagrees and is not used"
    )
}

fn evaluate(family: Family, sizes: &[usize], total_weight: u64) -> FormulaPrediction {
    let n = sizes.iter().sum::<usize>() as i64;
    let w = total_weight as i64;
    let (reg, pd, source) = match family {
        Family::PathLayered => (w - n + 2, n - 2, "path-layered"),
        Family::WhiskerLayered => {
            let (t1, t2) = (sizes[0] as i64, sizes[1] as i64);
            let pd = if t1 < t2 { n - t1 - 2 } else { n - t2 - 1 };
            (w - (n - t1) + 1, pd, "whisker-layered")
        }
        Family::CyclicLayered => (w - n + 1, n - 1, "cyclic-layered"),
    };
    let depth = n - pd;
    let warnings = match family {
        Family::WhiskerLayered => vec![whisker_depth_warning(depth, sizes)],
        _ => Vec::new(),
    };
    FormulaPrediction {
        reg,
        pd,
        depth,
        source: source.to_string(),
        hypotheses_violated: false,
        violations: Vec::new(),
        warnings,
    }
}

fn predict_validated(inst: &FamilyInstance, family: Family) -> Result<FormulaPrediction> {
    if inst.family() != family {
        return Err(Error::Shape(format!("instance is {}, not {family}", inst.family())));
    }
    Ok(evaluate(family, inst.part_sizes(), inst.graph().total_weight()))
}

pub fn predict_family1(inst: &FamilyInstance) -> Result<FormulaPrediction> {
    predict_validated(inst, Family::PathLayered)
}

pub fn predict_family2(inst: &FamilyInstance) -> Result<FormulaPrediction> {
    predict_validated(inst, Family::WhiskerLayered)
}

pub fn predict_family3(inst: &FamilyInstance) -> Result<FormulaPrediction> {
    predict_validated(inst, Family::CyclicLayered)
}

/// Applies the `family` formula to any partitioned graph (recovering a
/// partition if none is given). Failed hypotheses are recorded on the
/// prediction instead of causing an error.
pub fn predict(family: Family, graph: &VertexWeightedDigraph) -> Result<FormulaPrediction> {
    let (report, partitioned) = validate_or_recover(graph, family)?;
    let graph = partitioned.ok_or(Error::MissingPartition)?.normalize_sources();
    let parts = graph.parts().expect("partitioned");
    if parts.len() < family.min_parts() {
        return Err(Error::Shape(format!(
            "{family} formulas need at least {} parts, got {}",
            family.min_parts(),
            parts.len()
        )));
    }
    let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    let mut prediction = evaluate(family, &sizes, graph.total_weight());
    prediction.hypotheses_violated = !report.passes();
    prediction.violations = report.messages();
    Ok(prediction)
}

pub fn predict_special(kind: SpecialShape, inst: &FamilyInstance) -> Result<FormulaPrediction> {
    let sizes = inst.part_sizes();
    let (fits, label) = match kind {
        SpecialShape::CompleteBipartite => {
            (inst.family() == Family::PathLayered && sizes.len() == 2, "complete bipartite")
        }
        SpecialShape::OrientedCycle => {
            (inst.family() == Family::CyclicLayered && sizes.iter().all(|&t| t == 1), "oriented cycle")
        }
        SpecialShape::CompleteTripartite => {
            (inst.family() == Family::CyclicLayered && sizes.len() == 3, "complete tripartite")
        }
    };
    if !fits {
        return Err(Error::Shape(format!("{} instance with parts {sizes:?} is not {label}", inst.family())));
    }
    let mut prediction = evaluate(inst.family(), sizes, inst.graph().total_weight());
    prediction.source = label.to_string();
    Ok(prediction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;

    fn rp(p: &FormulaPrediction) -> (i64, i64, i64) {
        (p.reg, p.pd, p.depth)
    }

    #[test]
    fn path_layered_examples() {
        let k11 = build_family(Family::PathLayered, &[1, 1], &[vec![1], vec![3]]).unwrap();
        assert_eq!(rp(&predict_family1(&k11).unwrap()), (4, 0, 2));
        let k22 = build_family(Family::PathLayered, &[2, 2], &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(rp(&predict_family1(&k22).unwrap()), (4, 2, 2));
    }

    #[test]
    fn whisker_single_edge() {
        for w in 1..=5 {
            let inst = build_family(Family::WhiskerLayered, &[1, 1], &[vec![w], vec![1]]).unwrap();
            let p = predict_family2(&inst).unwrap();
            assert_eq!((p.reg, p.pd), (w as i64 + 1, 0));
        }
    }

    #[test]
    fn whisker_pd_boundary() {
        // t2 = t1 + 1 takes the first branch, t1 = t2 the second
        let lt = build_family(Family::WhiskerLayered, &[1, 2, 1], &[vec![2], vec![1, 1], vec![2]]).unwrap();
        assert_eq!(predict_family2(&lt).unwrap().pd, 4 - 1 - 2);
        let eq = build_family(Family::WhiskerLayered, &[2, 2, 1], &[vec![2, 2], vec![1, 1], vec![2]]).unwrap();
        assert_eq!(predict_family2(&eq).unwrap().pd, 5 - 2 - 1);
    }

    #[test]
    fn whisker_depth_warning_cites_both_values() {
        let inst = build_family(Family::WhiskerLayered, &[1, 2, 1], &[vec![2], vec![1, 1], vec![2]]).unwrap();
        let p = predict_family2(&inst).unwrap();
        assert_eq!(p.depth, 4 - 1);
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].contains("= 3"), "{}", p.warnings[0]);
        assert!(p.warnings[0].contains("|V_1| - 2 = -1"), "{}", p.warnings[0]);
        assert_ne!(p.depth, whisker_alternative_depth(inst.part_sizes()));
    }

    #[test]
    fn cyclic_examples() {
        let c3 = build_family(Family::CyclicLayered, &[1, 1, 1], &[vec![2], vec![2], vec![2]]).unwrap();
        assert_eq!(rp(&predict_family3(&c3).unwrap()), (4, 2, 1));
        let cyc = predict_special(SpecialShape::OrientedCycle, &c3).unwrap();
        let tri = predict_special(SpecialShape::CompleteTripartite, &c3).unwrap();
        assert_eq!(rp(&cyc), rp(&tri));
        assert_eq!(cyc.source, "oriented cycle");
    }

    #[test]
    fn bipartite_special_shape() {
        let k23 = build_family(Family::PathLayered, &[2, 3], &[vec![1, 1], vec![2, 2, 2]]).unwrap();
        let p = predict_special(SpecialShape::CompleteBipartite, &k23).unwrap();
        assert_eq!((p.reg, p.pd), (5, 3));
        assert_eq!(rp(&p), rp(&predict_family1(&k23).unwrap()));
        assert!(predict_special(SpecialShape::OrientedCycle, &k23).is_err());
    }

    #[test]
    fn wrong_family_is_an_error() {
        let k11 = build_family(Family::PathLayered, &[1, 1], &[vec![1], vec![3]]).unwrap();
        assert!(matches!(predict_family3(&k11), Err(Error::Shape(_))));
    }

    #[test]
    fn reg_grows_with_each_weight() {
        let base = build_family(Family::PathLayered, &[1, 2, 2], &[vec![1], vec![2, 2], vec![1, 3]]).unwrap();
        let r0 = predict_family1(&base).unwrap().reg;
        let bumped = build_family(Family::PathLayered, &[1, 2, 2], &[vec![1], vec![2, 3], vec![1, 3]]).unwrap();
        assert_eq!(predict_family1(&bumped).unwrap().reg, r0 + 1);
        let swapped = build_family(Family::PathLayered, &[1, 2, 2], &[vec![1], vec![2, 2], vec![3, 1]]).unwrap();
        assert_eq!(predict_family1(&swapped).unwrap().reg, r0);
    }

    #[test]
    fn formal_mode_tags_violations() {
        let inst = build_family(Family::PathLayered, &[1, 1, 1], &[vec![1], vec![2], vec![2]]).unwrap();
        let p = predict(Family::CyclicLayered, inst.graph()).unwrap_or_else(|e| panic!("{e}"));
        assert!(p.hypotheses_violated);
        assert!(!p.violations.is_empty());
        let ok = predict(Family::PathLayered, inst.graph()).unwrap();
        assert!(!ok.hypotheses_violated);
        assert_eq!(rp(&ok), rp(&predict_family1(&inst).unwrap()));
    }
}
