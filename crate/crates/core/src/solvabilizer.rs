//! Solvabilizers and the count of distinct ones.
//!
//! Two routes are implemented: the naive pass over every element (the
//! oracle, capped by group order), and the scalable route that iterates
//! over rational-class representatives, sums orbit sizes of their
//! solvabilizers under conjugation, and deduplicates conjugate
//! solvabilizers across classes.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::rational_classes;
use crate::error::{Error, Result};
use crate::lattice::MaxSolvReps;
use crate::perm_core::ops::{
    normalizer_of_set, span_bfs, transversal_unchecked, SpanOutcome,
};
use crate::perm_core::{cyclic_span, ElemId, ElementSet, Group};
use crate::solvability::is_solvable;

/// Version stamp for every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest group order the naive method will attempt by default.
pub const DEFAULT_NAIVE_CAP: usize = 700;

#[derive(Clone, Debug)]
pub struct CountOptions {
    /// Worker count; 1 means fully sequential. Results do not depend on it.
    pub jobs: usize,
    pub naive_cap: usize,
    /// Cooperative timeout, checked between per-class work items.
    pub deadline: Option<Instant>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { jobs: 1, naive_cap: DEFAULT_NAIVE_CAP, deadline: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Rational,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Naive => write!(f, "naive"),
            Method::Rational => write!(f, "rational"),
        }
    }
}

/// Fate of one rational class in the cross-class deduplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Dedup {
    Kept,
    /// This class's solvabilizer orbit was already counted by the class
    /// whose representative id is given.
    Merged { into: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassRecord {
    pub rep: u32,
    pub element_order: u32,
    pub sol_size: u64,
    pub normalizer_order: u64,
    /// Orbit size of this solvabilizer under conjugation: the index of
    /// its normalizer.
    pub contribution: u64,
    pub dedup: Dedup,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolvReport {
    pub schema_version: u32,
    pub spec: String,
    pub order: u64,
    pub method: Method,
    /// Per-rational-class records; empty for the naive method.
    pub classes: Vec<ClassRecord>,
    pub total: u64,
    pub upper_bound: u64,
    pub millis: u64,
}

fn check_deadline(opts: &CountOptions) -> Result<()> {
    match opts.deadline {
        Some(deadline) if Instant::now() > deadline => Err(Error::Timeout),
        _ => Ok(()),
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Inconsistency(format!("worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Span of two elements, with the whole group short-circuited: a partial
/// closure beyond half the order forces the span to be everything.
fn pair_span(g: &Group, x: ElemId, y: ElemId) -> ElementSet {
    match span_bfs(g, &[x, y], g.order() / 2) {
        SpanOutcome::Complete(set) => set,
        SpanOutcome::Exceeded => ElementSet::full(g),
    }
}

/// The solvabilizer of `x`: all `y` whose span with `x` is solvable.
pub fn sol(g: &Group, x: ElemId) -> Result<ElementSet> {
    g.check_id(x)?;
    Ok(sol_unchecked(g, x))
}

fn sol_unchecked(g: &Group, x: ElemId) -> ElementSet {
    let full = ElementSet::full(g);
    if is_solvable(g, &full) {
        return full;
    }
    let mut out = ElementSet::empty(g);
    for y in 0..g.order() as u32 {
        let span = pair_span(g, x, ElemId(y));
        if is_solvable(g, &span) {
            out.insert(ElemId(y));
        }
    }
    out
}

/// Normalizer of the cyclic subgroup of `x`, seeded by that subgroup.
fn cyclic_normalizer(g: &Group, x: ElemId) -> ElementSet {
    let cyc = cyclic_span(g, x);
    normalizer_of_set(g, &cyc, Some(&cyc)).expect("a cyclic subgroup normalizes itself")
}

/// Upper bound on the number of distinct solvabilizers: the sum over
/// rational-class representatives of the index of the normalizer of
/// their cyclic subgroup.
pub fn upper_bound_cor63(g: &Group) -> u64 {
    rational_classes(g)
        .iter()
        .map(|rc| (g.order() / cyclic_normalizer(g, rc.rep).len()) as u64)
        .sum()
}

/// The naive count: every element's solvabilizer, deduplicated by exact
/// set equality. This is the oracle the rational route is checked
/// against, so it stays deliberately simple.
pub fn solv_count_naive(g: &Group, spec: &str, opts: &CountOptions) -> Result<SolvReport> {
    let start = Instant::now();
    if g.order() > opts.naive_cap {
        return Err(Error::CapExceeded {
            what: "naive count (use the rational method)",
            cap: opts.naive_cap,
        });
    }
    let rows: Vec<ElementSet> = with_pool(opts.jobs, || {
        (0..g.order() as u32)
            .into_par_iter()
            .map(|x| {
                check_deadline(opts)?;
                Ok(sol_unchecked(g, ElemId(x)))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let distinct: HashSet<&[u64]> = rows.iter().map(|set| set.words()).collect();
    let total = distinct.len() as u64;
    let upper_bound = upper_bound_cor63(g);
    if total > upper_bound {
        return Err(Error::Inconsistency(format!(
            "naive count {total} exceeds its upper bound {upper_bound}"
        )));
    }
    Ok(SolvReport {
        schema_version: SCHEMA_VERSION,
        spec: spec.to_string(),
        order: g.order() as u64,
        method: Method::Naive,
        classes: Vec::new(),
        total,
        upper_bound,
        millis: start.elapsed().as_millis() as u64,
    })
}

struct ClassWork {
    sol: ElementSet,
    normalizer: ElementSet,
    cyclic_normalizer_order: usize,
}

/// The rational-class count.
///
/// For each non-identity rational-class representative `x`, the
/// solvabilizer and its normalizer (seeded by the normalizer of `<x>`)
/// are computed in parallel; a sequential pass then drops classes whose
/// solvabilizer is conjugate to an earlier one, and the final count is
/// one (identity) plus the surviving normalizer indices.
pub fn solv_count_rational(g: &Group, spec: &str, opts: &CountOptions) -> Result<SolvReport> {
    let start = Instant::now();
    let classes = rational_classes(g);
    debug_assert_eq!(classes[0].rep, g.identity());
    let full = ElementSet::full(g);

    // Largest classes first for parallel balance; results keyed by index.
    let mut schedule: Vec<usize> = (0..classes.len()).collect();
    schedule.sort_by_key(|&i| std::cmp::Reverse(classes[i].members.len()));

    let work_items: Vec<(usize, ClassWork)> = with_pool(opts.jobs, || {
        schedule
            .par_iter()
            .map(|&i| {
                check_deadline(opts)?;
                let x = classes[i].rep;
                let n_cyc = cyclic_normalizer(g, x);
                let sol_x = if x == g.identity() {
                    full.clone()
                } else {
                    sol_unchecked(g, x)
                };
                let n_sol = if sol_x == full {
                    full.clone()
                } else {
                    normalizer_of_set(g, &sol_x, Some(&n_cyc))?
                };
                Ok((
                    i,
                    ClassWork {
                        sol: sol_x,
                        normalizer: n_sol,
                        cyclic_normalizer_order: n_cyc.len(),
                    },
                ))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut work: Vec<Option<ClassWork>> = (0..classes.len()).map(|_| None).collect();
    for (i, item) in work_items {
        work[i] = Some(item);
    }
    let work: Vec<ClassWork> = work.into_iter().map(|w| w.expect("all classes done")).collect();

    let mut records: Vec<ClassRecord> = classes
        .iter()
        .zip(&work)
        .map(|(rc, w)| ClassRecord {
            rep: rc.rep.0,
            element_order: rc.element_order,
            sol_size: w.sol.len() as u64,
            normalizer_order: w.normalizer.len() as u64,
            contribution: (g.order() / w.normalizer.len()) as u64,
            dedup: Dedup::Kept,
        })
        .collect();

    // Cross-class dedup: ascending representative order, so the smaller
    // representative of a merged pair is the one kept.
    let mut kept: Vec<usize> = vec![0];
    for i in 1..classes.len() {
        check_deadline(opts)?;
        let mut merged = false;
        for &j in &kept {
            if work[j].sol.len() != work[i].sol.len() {
                continue;
            }
            if conjugate_search(g, &work[i].sol, &work[j].sol, &work[j].normalizer).is_some() {
                records[i].dedup = Dedup::Merged { into: classes[j].rep.0 };
                merged = true;
                break;
            }
        }
        if !merged {
            kept.push(i);
        }
    }

    let total: u64 = kept.iter().map(|&i| records[i].contribution).sum();
    let upper_bound: u64 = records
        .iter()
        .zip(&work)
        .map(|(_, w)| (g.order() / w.cyclic_normalizer_order) as u64)
        .sum();
    if total > upper_bound {
        return Err(Error::Inconsistency(format!(
            "rational count {total} exceeds its upper bound {upper_bound}"
        )));
    }
    Ok(SolvReport {
        schema_version: SCHEMA_VERSION,
        spec: spec.to_string(),
        order: g.order() as u64,
        method: Method::Rational,
        classes: records,
        total,
        upper_bound,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// Searches for `g0` with `source^g0 == target`. Conjugates of `source`
/// are in bijection with cosets of its normalizer, so scanning one
/// transversal is exhaustive.
fn conjugate_search(
    g: &Group,
    target: &ElementSet,
    source: &ElementSet,
    source_normalizer: &ElementSet,
) -> Option<ElemId> {
    let transversal = transversal_unchecked(g, source_normalizer);
    transversal
        .reps()
        .iter()
        .copied()
        .find(|&rep| source.conjugate_equals(rep, target))
}

/// The solvabilizer of `x` assembled as the union of the conjugates,
/// over each maximal-solvable class representative `H`, that contain
/// `x`; conjugates are enumerated along a transversal of the normalizer
/// of `H`. The result is checked against the direct computation.
pub fn sol_via_max_solvables(g: &Group, x: ElemId, reps: &MaxSolvReps) -> Result<ElementSet> {
    g.check_id(x)?;
    let x_order = g.element_order(x) as usize;
    let mut union = ElementSet::empty(g);
    for class in &reps.classes {
        if class.rep.len() % x_order != 0 {
            continue;
        }
        for &t in class.transversal.reps() {
            // H^t contains x  iff  x^(t^-1) = t x t^-1 lies in H.
            let pulled_back = g.mul(g.mul(t, x), g.inv(t));
            if class.rep.contains(pulled_back) {
                union.union_with(&class.rep.conjugate(t));
            }
        }
    }
    let direct = sol(g, x)?;
    if union != direct {
        return Err(Error::Inconsistency(format!(
            "union over maximal solvable conjugates has {} elements, direct solvabilizer has {}",
            union.len(),
            direct.len()
        )));
    }
    Ok(union)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, build_group, cyclic, dihedral, psl2, symmetric, GroupSpec};

    fn opts() -> CountOptions {
        CountOptions::default()
    }

    #[test]
    fn sol_of_identity_is_everything() {
        let g = alternating(5, None).unwrap();
        assert_eq!(sol(&g, g.identity()).unwrap().len(), 60);
    }

    #[test]
    fn sol_sizes_in_a5() {
        let g = alternating(5, None).unwrap();
        let involution = (0..60u32)
            .map(ElemId)
            .find(|&x| g.element_order(x) == 2)
            .unwrap();
        assert_eq!(sol(&g, involution).unwrap().len(), 36);
        let five = (0..60u32)
            .map(ElemId)
            .find(|&x| g.element_order(x) == 5)
            .unwrap();
        assert_eq!(sol(&g, five).unwrap().len(), 10);
    }

    #[test]
    fn sol_always_contains_the_cyclic_span() {
        let g = symmetric(5, None).unwrap();
        for x in (0..g.order() as u32).step_by(7) {
            let x = ElemId(x);
            let s = sol(&g, x).unwrap();
            assert!(cyclic_span(&g, x).is_subset(&s));
            assert!(s.contains(g.identity()));
        }
    }

    #[test]
    fn normalizer_of_involution_solvabilizer_in_a5() {
        let g = alternating(5, None).unwrap();
        let involution = (0..60u32)
            .map(ElemId)
            .find(|&x| g.element_order(x) == 2)
            .unwrap();
        let s = sol(&g, involution).unwrap();
        let n = normalizer_of_set(&g, &s, None).unwrap();
        assert_eq!(n.len(), 4);
    }

    #[test]
    fn solvable_groups_have_one_solvabilizer() {
        for g in [
            symmetric(4, None).unwrap(),
            dihedral(10, None).unwrap(),
            cyclic(6, None).unwrap(),
        ] {
            let naive = solv_count_naive(&g, "t", &opts()).unwrap();
            assert_eq!(naive.total, 1);
            let rational = solv_count_rational(&g, "t", &opts()).unwrap();
            assert_eq!(rational.total, 1);
        }
    }

    #[test]
    fn a5_has_32_solvabilizers_both_ways() {
        let g = alternating(5, None).unwrap();
        let naive = solv_count_naive(&g, "a:5", &opts()).unwrap();
        assert_eq!(naive.total, 32);
        let rational = solv_count_rational(&g, "a:5", &opts()).unwrap();
        assert_eq!(rational.total, 32);
        assert_eq!(rational.upper_bound, 32);
        // Contributions: identity 1, involutions 15, order 3 gives 10,
        // order 5 gives 6.
        let mut contributions: Vec<u64> = rational
            .classes
            .iter()
            .filter(|r| r.dedup == Dedup::Kept)
            .map(|r| r.contribution)
            .collect();
        contributions.sort_unstable();
        assert_eq!(contributions, vec![1, 6, 10, 15]);
    }

    #[test]
    fn upper_bound_is_tight_for_a5() {
        let g = alternating(5, None).unwrap();
        assert_eq!(upper_bound_cor63(&g), 32);
    }

    #[test]
    fn naive_cap_is_enforced() {
        let g = psl2(11, None).unwrap();
        let err = solv_count_naive(&g, "psl2:11", &opts()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn trivial_group_counts_one() {
        let g = cyclic(1, None).unwrap();
        assert_eq!(solv_count_naive(&g, "c:1", &opts()).unwrap().total, 1);
        assert_eq!(solv_count_rational(&g, "c:1", &opts()).unwrap().total, 1);
    }

    #[test]
    fn jobs_do_not_change_results() {
        let g = alternating(5, None).unwrap();
        let seq = solv_count_rational(&g, "a:5", &opts()).unwrap();
        let par = solv_count_rational(
            &g,
            "a:5",
            &CountOptions { jobs: 4, ..CountOptions::default() },
        )
        .unwrap();
        assert_eq!(seq.total, par.total);
        assert_eq!(
            serde_json::to_value(&seq.classes).unwrap(),
            serde_json::to_value(&par.classes).unwrap()
        );
    }

    #[test]
    fn radical_quotient_count_matches_direct_count() {
        // direct(a:5,c:6) has the c:6 factor as radical and counts 32.
        let spec = GroupSpec::parse("direct(a:5,c:6)").unwrap();
        let g = build_group(&spec, None).unwrap();
        let report = solv_count_rational(&g, "direct(a:5,c:6)", &opts()).unwrap();
        assert_eq!(report.total, 32);
        // Classes inside the radical merge into the identity class.
        assert!(report
            .classes
            .iter()
            .any(|r| matches!(r.dedup, Dedup::Merged { into: 0 })));
    }

    #[test]
    fn timeout_fires() {
        let g = psl2(11, None).unwrap();
        let options = CountOptions {
            deadline: Some(Instant::now() - std::time::Duration::from_millis(1)),
            ..CountOptions::default()
        };
        assert!(matches!(
            solv_count_rational(&g, "psl2:11", &options),
            Err(Error::Timeout)
        ));
    }
}
