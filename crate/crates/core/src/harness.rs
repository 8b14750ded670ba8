//! Formula-versus-oracle comparisons, exhaustive family sweeps and the
//! bundled counterexample fixtures.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::digraph::{GraphJson, VertexWeightedDigraph};
use crate::error::{Error, Result};
use crate::family::{build_family_capped, instance_key, validate_or_recover, Family, DEFAULT_MAX_WEIGHT};
use crate::formulas::{predict, FormulaPrediction};
use crate::oracle::{hochster_betti, summarize, BettiEntry, BettiReport, OracleConfig, ResolutionSummary};
use crate::parse::parse_ideal_in;
use crate::polarize::{polarize, polarized_num_vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    Mismatch,
    HypothesesViolated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::HypothesesViolated => "HYPOTHESES_VIOLATED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceDescriptor {
    pub family: Family,
    /// `family:sizes:weights`, see [`crate::FamilyInstance::key`].
    pub key: String,
    pub part_sizes: Vec<usize>,
    pub weights: Vec<Vec<u32>>,
    /// SHA-256 of the graph's canonical JSON.
    pub graph_hash: String,
}

/// Wall-clock milliseconds per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timing {
    pub classify_ms: f64,
    pub formulas_ms: f64,
    pub polarize_ms: f64,
    pub hochster_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRecord {
    pub instance: InstanceDescriptor,
    pub ideal: String,
    pub prediction: FormulaPrediction,
    pub oracle: ResolutionSummary,
    pub betti: Vec<BettiEntry>,
    pub verdict: Verdict,
    /// Depth is compared separately from the verdict.
    pub depth_agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompareOptions {
    pub oracle: OracleConfig,
    /// Apply the formula even when the family hypotheses fail.
    pub formal: bool,
    pub timing: bool,
}

pub fn graph_hash(graph: &VertexWeightedDigraph) -> String {
    let json = serde_json::to_string(&graph.to_json_value()).expect("graph JSON serializes");
    Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Runs the oracle and the closed form of `family` on `graph`. With no
/// family given, the first family whose hypotheses hold is used.
///
/// Fails with [`Error::Unclassifiable`] when no family fits, or when the
/// chosen one does not fit and `opts.formal` is off.
pub fn compare(
    graph: &VertexWeightedDigraph,
    family: Option<Family>,
    opts: &CompareOptions,
) -> Result<ComparisonRecord> {
    let start = Instant::now();
    let (family, report, partitioned) = match family {
        Some(f) => {
            let (report, with) = validate_or_recover(graph, f)?;
            (f, report, with)
        }
        None => {
            let mut found = None;
            for f in Family::ALL {
                let (report, with) = validate_or_recover(graph, f)?;
                if report.passes() {
                    found = Some((f, report, with));
                    break;
                }
            }
            found.ok_or_else(|| Error::Unclassifiable("no family's hypotheses hold".into()))?
        }
    };
    if !report.passes() && !opts.formal {
        return Err(Error::Unclassifiable(format!("{family}: {}", report.messages().join("; "))));
    }
    let partitioned = partitioned
        .ok_or_else(|| Error::Unclassifiable(format!("{family}: no partition given and none recovered")))?
        .normalize_sources();
    let classify_ms = ms(start);

    let start = Instant::now();
    let prediction = predict(family, &partitioned)?;
    let formulas_ms = ms(start);

    let ideal = graph.edge_ideal()?;
    let needed = polarized_num_vars(&ideal);
    if needed > opts.oracle.budget {
        return Err(Error::Budget { needed, budget: opts.oracle.budget });
    }
    let start = Instant::now();
    let (polarized, _) = polarize(&ideal)?;
    let polarize_ms = ms(start);
    let start = Instant::now();
    let table = hochster_betti(&polarized, &opts.oracle)?;
    let hochster_ms = ms(start);
    let oracle = summarize(&table, ideal.ring().num_vars())?;

    let verdict = if (prediction.reg, prediction.pd) == (oracle.reg, oracle.pd) {
        Verdict::Match
    } else if prediction.hypotheses_violated {
        Verdict::HypothesesViolated
    } else {
        Verdict::Mismatch
    };
    let parts = partitioned.parts().expect("partitioned");
    let part_sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    let weights: Vec<Vec<u32>> =
        parts.iter().map(|p| p.iter().map(|&v| partitioned.weight(v)).collect()).collect();
    Ok(ComparisonRecord {
        instance: InstanceDescriptor {
            family,
            key: instance_key(family, &part_sizes, &weights),
            part_sizes,
            weights,
            graph_hash: graph_hash(graph),
        },
        ideal: ideal.to_string(),
        depth_agrees: prediction.depth == oracle.depth,
        prediction,
        betti: BettiReport::new(&table, &oracle).entries,
        oracle,
        verdict,
        timing: opts.timing.then_some(Timing { classify_ms, formulas_ms, polarize_ms, hochster_ms }),
    })
}

/// The box of instances a sweep enumerates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepBounds {
    pub family: Family,
    pub parts: RangeInclusive<usize>,
    pub max_part_size: usize,
    /// Allowed weights for vertices that are not sources.
    pub weights: Vec<u32>,
    /// Largest polarized variable count accepted.
    pub budget: usize,
}

impl SweepBounds {
    fn source_part(&self) -> Option<usize> {
        match self.family {
            Family::PathLayered => Some(0),
            Family::WhiskerLayered => Some(1),
            Family::CyclicLayered => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub hypotheses_violated: usize,
}

impl Tally {
    pub fn of<'a>(records: impl IntoIterator<Item = &'a ComparisonRecord>) -> Self {
        let mut t = Tally::default();
        for r in records {
            t.total += 1;
            match r.verdict {
                Verdict::Match => t.matched += 1,
                Verdict::Mismatch => t.mismatched += 1,
                Verdict::HypothesesViolated => t.hypotheses_violated += 1,
            }
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub records: Vec<ComparisonRecord>,
    pub tally: Tally,
    /// Candidates in the box that fail the family hypotheses.
    pub skipped_invalid: usize,
    /// Valid candidates over the polarization budget.
    pub skipped_budget: usize,
}

/// All non-decreasing sequences of length `len` over `values` (sorted).
fn multisets(values: &[u32], len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        for mut tail in multisets(&values[k..], len - 1) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut next = prefix.clone();
                    next.push(o.clone());
                    next
                })
            })
            .collect()
    })
}

/// Candidate `(sizes, weights)` pairs of the bound box, one per
/// isomorphism class under permutations inside a part. Source parts only
/// get weight 1.
pub fn sweep_candidates(bounds: &SweepBounds) -> Vec<(Vec<usize>, Vec<Vec<u32>>)> {
    let values: Vec<u32> = bounds.weights.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = Vec::new();
    for m in bounds.parts.clone() {
        let size_choices = vec![(1..=bounds.max_part_size).collect::<Vec<_>>(); m];
        for sizes in cartesian(&size_choices) {
            let per_part: Vec<Vec<Vec<u32>>> = sizes
                .iter()
                .enumerate()
                .map(|(p, &t)| {
                    if Some(p) == bounds.source_part() {
                        vec![vec![1; t]]
                    } else {
                        multisets(&values, t)
                    }
                })
                .collect();
            for weights in cartesian(&per_part) {
                out.push((sizes.clone(), weights));
            }
        }
    }
    out
}

/// Compares every valid instance of the bound box, in parallel, and
/// returns the records sorted by instance key.
pub fn run_sweep(bounds: &SweepBounds, cfg: &OracleConfig) -> Result<SweepReport> {
    run_sweep_timed(bounds, cfg, false)
}

/// [`run_sweep`] with optional per-record timing.
pub fn run_sweep_timed(bounds: &SweepBounds, cfg: &OracleConfig, timing: bool) -> Result<SweepReport> {
    let cap = bounds.weights.iter().copied().max().unwrap_or(1).max(DEFAULT_MAX_WEIGHT);
    let mut instances = Vec::new();
    let (mut skipped_invalid, mut skipped_budget) = (0, 0);
    for (sizes, weights) in sweep_candidates(bounds) {
        match build_family_capped(bounds.family, &sizes, &weights, cap) {
            Ok(inst) if inst.graph().polarized_num_vars() > bounds.budget => skipped_budget += 1,
            Ok(inst) => instances.push(inst),
            Err(Error::Hypotheses(_)) => skipped_invalid += 1,
            Err(e) => return Err(e),
        }
    }
    let opts = CompareOptions { oracle: OracleConfig { budget: bounds.budget, ..*cfg }, formal: false, timing };
    let mut records = instances
        .par_iter()
        .map(|inst| compare(inst.graph(), Some(inst.family()), &opts))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.instance.key.cmp(&b.instance.key));
    Ok(SweepReport { tally: Tally::of(&records), records, skipped_invalid, skipped_budget })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegPd {
    pub reg: i64,
    pub pd: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureExpectation {
    pub oracle: RegPd,
    pub formula: RegPd,
}

/// A graph outside its family whose oracle and formula values are known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub family: Family,
    /// The edge ideal as written by hand, checked against the graph.
    pub ideal: String,
    #[serde(flatten)]
    pub graph: GraphJson,
    pub expected: FixtureExpectation,
}

const FIXTURE_SOURCES: [&str; 6] = [
    include_str!("../fixtures/family1_orientation.json"),
    include_str!("../fixtures/family1_weight.json"),
    include_str!("../fixtures/family2_orientation.json"),
    include_str!("../fixtures/family2_weight.json"),
    include_str!("../fixtures/family3_orientation.json"),
    include_str!("../fixtures/family3_weight.json"),
];

pub fn fixtures() -> Vec<Fixture> {
    FIXTURE_SOURCES.iter().map(|src| serde_json::from_str(src).expect("bundled fixture parses")).collect()
}

impl Fixture {
    pub fn digraph(&self) -> Result<VertexWeightedDigraph> {
        VertexWeightedDigraph::from_json_value(&self.graph)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub family: Family,
    pub ideal_ok: bool,
    pub oracle: RegPd,
    pub formula: RegPd,
    pub expected: FixtureExpectation,
    pub verdict: Verdict,
    pub violations: Vec<String>,
}

impl FixtureOutcome {
    pub fn oracle_ok(&self) -> bool {
        self.oracle == self.expected.oracle
    }

    pub fn formula_ok(&self) -> bool {
        self.formula == self.expected.formula
    }

    pub fn verdict_ok(&self) -> bool {
        self.verdict == Verdict::HypothesesViolated
    }

    pub fn passes(&self) -> bool {
        self.ideal_ok && self.oracle_ok() && self.formula_ok() && self.verdict_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureSuiteReport {
    pub outcomes: Vec<FixtureOutcome>,
    pub oracle_matches: usize,
    pub formula_matches: usize,
    pub expected_verdicts: usize,
}

impl FixtureSuiteReport {
    pub fn passes(&self) -> bool {
        self.outcomes.iter().all(FixtureOutcome::passes)
    }
}

pub fn run_fixture(fixture: &Fixture, cfg: &OracleConfig) -> Result<FixtureOutcome> {
    let graph = fixture.digraph()?;
    let ideal = graph.edge_ideal()?;
    let ideal_ok = parse_ideal_in(&fixture.ideal, ideal.ring().clone()).is_ok_and(|i| i == ideal);
    let opts = CompareOptions { oracle: *cfg, formal: true, timing: false };
    let record = compare(&graph, Some(fixture.family), &opts)?;
    Ok(FixtureOutcome {
        name: fixture.name.clone(),
        family: fixture.family,
        ideal_ok,
        oracle: RegPd { reg: record.oracle.reg, pd: record.oracle.pd },
        formula: RegPd { reg: record.prediction.reg, pd: record.prediction.pd },
        expected: fixture.expected,
        verdict: record.verdict,
        violations: record.prediction.violations,
    })
}

/// Runs every bundled fixture through the oracle and the formal formulas.
pub fn verify_fixtures(cfg: &OracleConfig) -> Result<FixtureSuiteReport> {
    let outcomes = fixtures().iter().map(|f| run_fixture(f, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(FixtureSuiteReport {
        oracle_matches: outcomes.iter().filter(|o| o.oracle_ok()).count(),
        formula_matches: outcomes.iter().filter(|o| o.formula_ok()).count(),
        expected_verdicts: outcomes.iter().filter(|o| o.verdict_ok()).count(),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(&[1, 2, 3], 2).len(), 6);
        assert_eq!(multisets(&[2, 3], 1), vec![vec![2], vec![3]]);
        assert_eq!(multisets(&[1], 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn candidates_cover_the_box_without_duplicates() {
        let bounds = SweepBounds {
            family: Family::PathLayered,
            parts: 2..=3,
            max_part_size: 2,
            weights: vec![1, 2, 3],
            budget: 16,
        };
        let cands = sweep_candidates(&bounds);
        let keys: BTreeSet<String> =
            cands.iter().map(|(s, w)| instance_key(Family::PathLayered, s, w)).collect();
        assert_eq!(keys.len(), cands.len());
        // m = 2: V_1 fixed, V_2 has 3 or 6 multisets; m = 3 multiplies
        let per = |t: usize| if t == 1 { 3 } else { 6 };
        let expected: usize = (1..=2).map(|_| (1..=2).map(per).sum::<usize>()).sum::<usize>()
            + (1..=2).map(|_| (1..=2).map(per).sum::<usize>().pow(2)).sum::<usize>();
        assert_eq!(cands.len(), expected);
    }

    #[test]
    fn cyclic_triangle_sweep() {
        let bounds = SweepBounds {
            family: Family::CyclicLayered,
            parts: 3..=3,
            max_part_size: 1,
            weights: vec![2, 3],
            budget: 22,
        };
        let report = run_sweep(&bounds, &OracleConfig::default()).unwrap();
        assert_eq!(report.tally.total, 8);
        assert_eq!(report.tally.matched, 8);
        let keys: Vec<&str> = report.records.iter().map(|r| r.instance.key.as_str()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn compare_valid_instance() {
        let inst = build_family(Family::PathLayered, &[1, 2, 1], &[vec![1], vec![2, 3], vec![2]]).unwrap();
        let rec = compare(inst.graph(), None, &CompareOptions::default()).unwrap();
        assert_eq!(rec.verdict, Verdict::Match);
        assert_eq!(rec.instance.family, Family::PathLayered);
        assert!(rec.timing.is_none());
        assert!(rec.depth_agrees);
    }

    #[test]
    fn compare_refuses_invalid_without_formal() {
        let inst = build_family(Family::PathLayered, &[1, 1, 1], &[vec![1], vec![2], vec![2]]).unwrap();
        let err = compare(inst.graph(), Some(Family::CyclicLayered), &CompareOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Unclassifiable(_)));
    }

    #[test]
    fn fixtures_load_and_ideals_agree() {
        for f in fixtures() {
            let g = f.digraph().unwrap();
            let ideal = g.edge_ideal().unwrap();
            assert_eq!(parse_ideal_in(&f.ideal, ideal.ring().clone()).unwrap(), ideal, "{}", f.name);
            assert_eq!(ideal.num_gens(), g.edges().len());
        }
    }

    #[test]
    fn graph_hash_is_stable() {
        let inst = build_family(Family::PathLayered, &[1, 1], &[vec![1], vec![2]]).unwrap();
        assert_eq!(graph_hash(inst.graph()), graph_hash(&inst.graph().clone()));
        assert_eq!(graph_hash(inst.graph()).len(), 64);
    }
}
