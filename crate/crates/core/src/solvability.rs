//! Solvability testing via derived series, and the solvable radical.

use crate::classes::conjugacy_classes;
use crate::error::{Error, Result};
use crate::perm_core::ops::{greedy_generators, is_subgroup_set, span_bfs, SpanOutcome};
use crate::perm_core::{ElemId, ElementSet, Group};

/// The derived series of a subgroup, descending until it stabilizes.
pub struct DerivedSeries {
    /// `chain[0]` is the subgroup itself; each later term is the
    /// commutator subgroup of its predecessor; the last term equals its
    /// own commutator subgroup.
    pub chain: Vec<ElementSet>,
}

impl DerivedSeries {
    pub fn is_solvable(&self) -> bool {
        self.chain.last().map(|t| t.len() == 1).unwrap_or(false)
    }
}

/// Span of a generating list known to stay inside `ambient`; a strict
/// majority of `ambient` forces equality by Lagrange.
fn span_within(g: &Group, gens: &[ElemId], ambient: &ElementSet) -> ElementSet {
    match span_bfs(g, gens, ambient.len() / 2) {
        SpanOutcome::Complete(set) => set,
        SpanOutcome::Exceeded => ambient.clone(),
    }
}

/// The commutator subgroup of `h`: the span of commutators of a
/// generating list, closed under conjugation by `h` (normal closure).
pub fn commutator_subgroup(g: &Group, h: &ElementSet) -> ElementSet {
    let h_gens = greedy_generators(g, h);
    let mut k_gens: Vec<ElemId> = Vec::new();
    for (i, &a) in h_gens.iter().enumerate() {
        for &b in &h_gens[i + 1..] {
            // [a, b] = a^-1 b^-1 a b
            let c = g.mul(g.mul(g.mul(g.inv(a), g.inv(b)), a), b);
            if c != g.identity() && !k_gens.contains(&c) {
                k_gens.push(c);
            }
        }
    }
    if k_gens.is_empty() {
        return ElementSet::from_ids(g, [g.identity()]);
    }
    let mut k = span_within(g, &k_gens, h);
    loop {
        let mut grew = false;
        for &hg in &h_gens {
            for kg in k_gens.clone() {
                let c = g.conj(kg, hg);
                if !k.contains(c) {
                    k_gens.push(c);
                    k = span_within(g, &k_gens, h);
                    grew = true;
                }
            }
        }
        if !grew {
            return k;
        }
    }
}

pub fn derived_series(g: &Group, h: &ElementSet) -> DerivedSeries {
    let mut chain = vec![h.clone()];
    // A strictly descending chain of subgroup orders halves at every step,
    // so this bound cannot be hit for a genuine subgroup.
    let max_steps = (usize::BITS - g.order().leading_zeros()) as usize + 2;
    for _ in 0..max_steps {
        let current = chain.last().unwrap();
        if current.len() == 1 {
            return DerivedSeries { chain };
        }
        let next = commutator_subgroup(g, current);
        if next.len() == current.len() {
            return DerivedSeries { chain };
        }
        chain.push(next);
    }
    unreachable!("derived series failed to stabilize");
}

/// Whether the subgroup `h` is solvable. Results are memoized per group,
/// keyed by the exact member bitset, because the naive solvabilizer pass
/// re-derives the same two-generated subgroups many times over.
pub fn is_solvable(g: &Group, h: &ElementSet) -> bool {
    if h.len() == 1 {
        return true;
    }
    let key: Box<[u64]> = h.words().into();
    if let Some(&cached) = g.caches.solvable.lock().unwrap().get(&key) {
        return cached;
    }
    let result = derived_series(g, h).is_solvable();
    g.caches.solvable.lock().unwrap().insert(key, result);
    result
}

/// The solvable radical, computed from its elementwise characterization:
/// the set of `x` whose solvabilizer is all of `G`, i.e. `<x, y>` is
/// solvable for every `y`. Membership is constant on conjugacy classes,
/// so one representative per class is tested.
///
/// The result is post-checked to be a normal solvable subgroup; any
/// failure is an internal error.
pub fn solvable_radical(g: &Group) -> Result<ElementSet> {
    let full = ElementSet::full(g);
    if is_solvable(g, &full) {
        return Ok(full);
    }
    let mut radical = ElementSet::empty(g);
    for class in conjugacy_classes(g) {
        let rep = class.min_id().expect("nonempty class");
        if pairs_with_everything(g, rep) {
            radical.union_with(&class);
        }
    }

    if !is_subgroup_set(g, &radical) {
        return Err(Error::Inconsistency("radical is not a subgroup".into()));
    }
    for gen in g.generator_ids() {
        if !radical.fixed_under_conjugation(gen) {
            return Err(Error::Inconsistency("radical is not normal".into()));
        }
    }
    if !is_solvable(g, &radical) {
        return Err(Error::Inconsistency("radical is not solvable".into()));
    }
    Ok(radical)
}

/// Whether `<x, y>` is solvable for every `y` in the group.
fn pairs_with_everything(g: &Group, x: ElemId) -> bool {
    let full = ElementSet::full(g);
    (0..g.order() as u32).all(|y| {
        let span = match span_bfs(g, &[x, ElemId(y)], g.order() / 2) {
            SpanOutcome::Complete(set) => set,
            SpanOutcome::Exceeded => full.clone(),
        };
        is_solvable(g, &span)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_core::ops::{direct_product, quotient_group, subgroup_span};
    use crate::perm_core::perm::parse_permutation;
    use crate::perm_core::table::GroupTable;

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens = gens
            .iter()
            .map(|s| parse_permutation(degree, s).unwrap())
            .collect();
        GroupTable::closure(gens, None).unwrap()
    }

    fn a5() -> Group {
        group(5, &["(0 1 2 3 4)", "(0 1 2)"])
    }

    #[test]
    fn commutator_of_abelian_is_trivial() {
        let c6 = group(6, &["(0 1 2 3 4 5)"]);
        let full = ElementSet::full(&c6);
        assert_eq!(commutator_subgroup(&c6, &full).len(), 1);
    }

    #[test]
    fn a5_is_perfect() {
        let g = a5();
        let full = ElementSet::full(&g);
        assert_eq!(commutator_subgroup(&g, &full).len(), 60);
        assert!(!is_solvable(&g, &full));
    }

    #[test]
    fn commutator_of_s3_is_c3() {
        let g = group(3, &["(0 1 2)", "(0 1)"]);
        let full = ElementSet::full(&g);
        let derived = commutator_subgroup(&g, &full);
        assert_eq!(derived.len(), 3);
        assert!(is_solvable(&g, &full));
    }

    #[test]
    fn small_subgroups_of_a5_are_solvable() {
        // Everything below order 60 is solvable; check all cyclic spans
        // and a dihedral.
        let g = a5();
        for x in 0..60u32 {
            let h = subgroup_span(&g, &[ElemId(x)]).unwrap();
            assert!(is_solvable(&g, &h));
        }
    }

    #[test]
    fn a5_inside_s5_is_not_solvable() {
        let s5 = group(5, &["(0 1 2 3 4)", "(0 1)"]);
        let evens: Vec<ElemId> = (0..s5.order() as u32)
            .map(ElemId)
            .filter(|&x| s5.element(x).cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0)
            .collect();
        let a5 = ElementSet::from_ids(&s5, evens);
        assert_eq!(a5.len(), 60);
        assert!(!is_solvable(&s5, &a5));
        assert!(!is_solvable(&s5, &ElementSet::full(&s5)));
    }

    #[test]
    fn dihedral_is_solvable() {
        let d10 = group(5, &["(0 1 2 3 4)", "(1 4)(2 3)"]);
        assert_eq!(d10.order(), 10);
        assert!(is_solvable(&d10, &ElementSet::full(&d10)));
    }

    #[test]
    fn radical_of_solvable_group_is_everything() {
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        assert_eq!(solvable_radical(&s4).unwrap().len(), 24);
    }

    #[test]
    fn radical_of_a5_is_trivial() {
        let g = a5();
        assert_eq!(solvable_radical(&g).unwrap().len(), 1);
    }

    #[test]
    fn radical_of_a5_times_c6_is_the_c6() {
        let g = direct_product(&a5(), &group(6, &["(0 1 2 3 4 5)"]), None).unwrap();
        let r = solvable_radical(&g).unwrap();
        assert_eq!(r.len(), 6);
        // Radical members act trivially on the A5 block.
        for id in r.iter() {
            let p = g.element(id);
            assert!((0..5).all(|i| p.apply(i) == i));
        }
        // The quotient by the radical has trivial radical.
        let q = quotient_group(&g, &r).unwrap();
        assert_eq!(q.order(), 60);
        assert_eq!(solvable_radical(&q).unwrap().len(), 1);
    }

    #[test]
    fn thompson_criterion_matches_pairwise_spans() {
        // G solvable iff every two-generated subgroup is solvable.
        for (degree, gens, solvable) in [
            (4usize, vec!["(0 1 2 3)", "(0 1)"], true),
            (5, vec!["(0 1 2 3 4)", "(1 4)(2 3)"], true),
            (5, vec!["(0 1 2 3 4)", "(0 1 2)"], false),
        ] {
            let g = group(degree, &gens);
            let full = ElementSet::full(&g);
            let all_pairs_solvable = (0..g.order() as u32).all(|x| {
                (x..g.order() as u32).all(|y| {
                    let span = subgroup_span(&g, &[ElemId(x), ElemId(y)]).unwrap();
                    is_solvable(&g, &span)
                })
            });
            assert_eq!(is_solvable(&g, &full), all_pairs_solvable);
            assert_eq!(is_solvable(&g, &full), solvable);
        }
    }
}
