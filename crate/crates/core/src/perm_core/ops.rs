//! Group-level operations over enumerated tables: spans, cosets,
//! normalizers, quotients, direct products.

use crate::error::{Error, Result};
use crate::perm_core::perm::Permutation;
use crate::perm_core::set::ElementSet;
use crate::perm_core::table::{ElemId, Group, GroupTable};

/// Outcome of a bounded span computation.
pub(crate) enum SpanOutcome {
    Complete(ElementSet),
    /// The partial closure exceeded the given population cutoff. With a
    /// cutoff of `|H|/2` this forces the span to be all of `H` by Lagrange.
    Exceeded,
}

/// Breadth-first closure of `gens` inside the id space, abandoning the
/// walk once more than `cutoff` elements have been reached.
pub(crate) fn span_bfs(g: &Group, gens: &[ElemId], cutoff: usize) -> SpanOutcome {
    let mut visited = ElementSet::empty(g);
    let mut queue: Vec<ElemId> = Vec::new();
    visited.insert(g.identity());
    queue.push(g.identity());
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head];
        head += 1;
        for &gen in gens {
            let product = g.mul(current, gen);
            if visited.insert(product) {
                if visited.len() > cutoff {
                    return SpanOutcome::Exceeded;
                }
                queue.push(product);
            }
        }
    }
    SpanOutcome::Complete(visited)
}

/// The subgroup generated by the named elements, as a bitset.
pub fn subgroup_span(g: &Group, ids: &[ElemId]) -> Result<ElementSet> {
    for &id in ids {
        g.check_id(id)?;
    }
    Ok(span_unchecked(g, ids))
}

pub(crate) fn span_unchecked(g: &Group, ids: &[ElemId]) -> ElementSet {
    match span_bfs(g, ids, g.order() / 2) {
        SpanOutcome::Complete(set) => set,
        // A subgroup of more than half the order is the whole group.
        SpanOutcome::Exceeded => ElementSet::full(g),
    }
}

/// The cyclic subgroup of one element.
pub fn cyclic_span(g: &Group, x: ElemId) -> ElementSet {
    let mut set = ElementSet::empty(g);
    let mut current = g.identity();
    loop {
        set.insert(current);
        current = g.mul(current, x);
        if current == g.identity() {
            return set;
        }
    }
}

/// A small generating list for a subgroup given as a bitset, built by
/// greedily absorbing the first member outside the running span.
pub fn greedy_generators(g: &Group, set: &ElementSet) -> Vec<ElemId> {
    let mut gens: Vec<ElemId> = Vec::new();
    let mut span = ElementSet::from_ids(g, [g.identity()]);
    for id in set.iter() {
        if !span.contains(id) {
            gens.push(id);
            span = span_unchecked(g, &gens);
            if span.len() >= set.len() {
                break;
            }
        }
    }
    gens
}

/// Whether the set is a subgroup: nonempty, and equal to the span of a
/// generating list extracted from it.
pub fn is_subgroup_set(g: &Group, set: &ElementSet) -> bool {
    if !set.contains(g.identity()) {
        return false;
    }
    if set.len() == 1 {
        return true;
    }
    let gens = greedy_generators(g, set);
    span_unchecked(g, &gens) == *set
}

/// One representative per right coset `Hg`, each chosen as the minimal
/// element id in its coset.
pub struct CosetTransversal {
    subgroup: ElementSet,
    reps: Vec<ElemId>,
    coset_index: Vec<u32>,
}

impl CosetTransversal {
    pub fn subgroup(&self) -> &ElementSet {
        &self.subgroup
    }

    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset containing the given element.
    pub fn coset_of(&self, id: ElemId) -> usize {
        self.coset_index[id.index()] as usize
    }
}

pub fn right_transversal(g: &Group, h: &ElementSet) -> Result<CosetTransversal> {
    if !is_subgroup_set(g, h) {
        return Err(Error::NotASubgroup);
    }
    Ok(transversal_unchecked(g, h))
}

pub(crate) fn transversal_unchecked(g: &Group, h: &ElementSet) -> CosetTransversal {
    let order = g.order();
    let mut coset_index = vec![u32::MAX; order];
    let mut reps = Vec::with_capacity(order / h.len());
    for raw in 0..order as u32 {
        if coset_index[raw as usize] != u32::MAX {
            continue;
        }
        let rep = ElemId(raw);
        let k = reps.len() as u32;
        reps.push(rep);
        for m in h.iter() {
            let member = g.mul(m, rep);
            debug_assert_eq!(coset_index[member.index()], u32::MAX);
            coset_index[member.index()] = k;
        }
    }
    debug_assert_eq!(reps.len() * h.len(), order);
    CosetTransversal { subgroup: h.clone(), reps, coset_index }
}

/// The full normalizer `N_G(X) = {g : X^g = X}`.
///
/// With a seed subgroup `H <= N_G(X)` the search only visits one
/// representative per coset `Hg`, since membership is constant on cosets
/// of any subgroup of the normalizer. The seed condition is enforced: a
/// seed that moves `X` is an error.
pub fn normalizer_of_set(
    g: &Group,
    x: &ElementSet,
    seed: Option<&ElementSet>,
) -> Result<ElementSet> {
    let base = match seed {
        Some(h) => {
            if !is_subgroup_set(g, h) {
                return Err(Error::NotASubgroup);
            }
            // Every seed element must fix X; checking a generating list
            // is equivalent since conjugation composes.
            let gens = greedy_generators(g, h);
            if !gens.iter().all(|&s| x.fixed_under_conjugation(s)) {
                return Err(Error::SeedNotNormalizing);
            }
            h.clone()
        }
        None => ElementSet::from_ids(g, [g.identity()]),
    };
    let transversal = transversal_unchecked(g, &base);
    let mut normalizer = ElementSet::empty(g);
    for &rep in transversal.reps() {
        if x.fixed_under_conjugation(rep) {
            for m in base.iter() {
                normalizer.insert(g.mul(m, rep));
            }
        }
    }
    Ok(normalizer)
}

/// The quotient group `G/N` as a permutation group on the right cosets
/// of `N`, acting by right multiplication.
pub fn quotient_group(g: &Group, n: &ElementSet) -> Result<Group> {
    if !is_subgroup_set(g, n) {
        return Err(Error::NotASubgroup);
    }
    for gen in g.generator_ids() {
        if !n.fixed_under_conjugation(gen) {
            return Err(Error::NotNormal);
        }
    }
    let transversal = transversal_unchecked(g, n);
    let k = transversal.coset_count();
    if k > u16::MAX as usize {
        return Err(Error::Unsupported(format!(
            "quotient degree {k} exceeds the supported point range"
        )));
    }
    let mut quotient_gens = Vec::new();
    for gen in g.generator_ids() {
        let images: Vec<u16> = transversal
            .reps()
            .iter()
            .map(|&rep| transversal.coset_of(g.mul(rep, gen)) as u16)
            .collect();
        quotient_gens.push(Permutation::from_images(images)?);
    }
    let quotient = GroupTable::closure(quotient_gens, Some(k))?;
    if quotient.order() != k {
        return Err(Error::Inconsistency(format!(
            "quotient order {} != index {k}",
            quotient.order()
        )));
    }
    Ok(quotient)
}

/// The direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &Group, b: &Group, cap: Option<usize>) -> Result<Group> {
    let degree = a.degree() + b.degree();
    if degree > u16::MAX as usize {
        return Err(Error::Unsupported(format!(
            "product degree {degree} exceeds the supported point range"
        )));
    }
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u16> = g.images().to_vec();
        images.extend((a.degree()..degree).map(|i| i as u16));
        gens.push(Permutation::from_images(images)?);
    }
    for h in b.generators() {
        let mut images: Vec<u16> = (0..a.degree() as u16).collect();
        images.extend(h.images().iter().map(|&i| i + a.degree() as u16));
        gens.push(Permutation::from_images(images)?);
    }
    let product = GroupTable::closure(gens, cap)?;
    if product.order() != a.order() * b.order() {
        return Err(Error::Inconsistency(format!(
            "direct product order {} != {} * {}",
            product.order(),
            a.order(),
            b.order()
        )));
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_core::perm::parse_permutation;

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

    /// Independent span oracle: product closure over raw permutations.
    fn span_oracle(g: &Group, ids: &[ElemId]) -> Vec<ElemId> {
        let perms: Vec<Permutation> = ids.iter().map(|&i| g.element(i).clone()).collect();
        let sub = GroupTable::closure(perms, None).unwrap();
        let mut members: Vec<ElemId> = sub
            .elements()
            .iter()
            .map(|p| g.id_of(p).expect("member of G"))
            .collect();
        members.sort_unstable();
        members
    }

    #[test]
    fn span_of_identity_is_trivial() {
        let g = a5();
        let s = subgroup_span(&g, &[g.identity()]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(g.identity()));
    }

    #[test]
    fn span_matches_permutation_closure_oracle() {
        let g = a5();
        for ids in [
            vec![ElemId(1)],
            vec![ElemId(1), ElemId(2)],
            vec![ElemId(5), ElemId(40)],
            vec![ElemId(13), ElemId(59)],
        ] {
            let s = subgroup_span(&g, &ids).unwrap();
            let mut got: Vec<ElemId> = s.iter().collect();
            got.sort_unstable();
            assert_eq!(got, span_oracle(&g, &ids));
        }
    }

    #[test]
    fn span_of_commuting_involutions_in_a5_is_klein() {
        let g = a5();
        let involutions: Vec<ElemId> = (0..g.order() as u32)
            .map(ElemId)
            .filter(|&x| g.element_order(x) == 2)
            .collect();
        let (a, b) = involutions
            .iter()
            .flat_map(|&a| involutions.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a != b && g.mul(a, b) == g.mul(b, a))
            .expect("commuting involutions exist in A5");
        assert_eq!(subgroup_span(&g, &[a, b]).unwrap().len(), 4);
    }

    #[test]
    fn span_of_five_cycle_and_inverting_involution_is_dihedral() {
        let g = a5();
        let c5 = (0..g.order() as u32)
            .map(ElemId)
            .find(|&x| g.element_order(x) == 5)
            .unwrap();
        let s = (0..g.order() as u32)
            .map(ElemId)
            .find(|&s| g.element_order(s) == 2 && g.conj(c5, s) == g.inv(c5))
            .expect("inverting involution exists");
        assert_eq!(subgroup_span(&g, &[c5, s]).unwrap().len(), 10);
    }

    #[test]
    fn span_rejects_bad_ids() {
        let g = a5();
        assert!(subgroup_span(&g, &[ElemId(60)]).is_err());
    }

    #[test]
    fn cyclic_span_has_element_order() {
        let g = a5();
        for x in 0..g.order() as u32 {
            let x = ElemId(x);
            assert_eq!(cyclic_span(&g, x).len(), g.element_order(x) as usize);
        }
    }

    #[test]
    fn transversal_partitions_the_group() {
        let g = a5();
        let h = subgroup_span(&g, &[ElemId(1), ElemId(2)]).unwrap();
        let t = right_transversal(&g, &h).unwrap();
        assert_eq!(t.coset_count() * h.len(), g.order());
        // Every element is in exactly one coset, and reps are minimal.
        let mut seen = vec![false; g.order()];
        for (k, &rep) in t.reps().iter().enumerate() {
            let mut min = u32::MAX;
            for m in h.iter() {
                let e = g.mul(m, rep);
                assert!(!seen[e.index()]);
                seen[e.index()] = true;
                assert_eq!(t.coset_of(e), k);
                min = min.min(e.0);
            }
            assert_eq!(min, rep.0);
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn transversal_edge_cases() {
        let g = a5();
        let whole = ElementSet::full(&g);
        let t = right_transversal(&g, &whole).unwrap();
        assert_eq!(t.reps(), &[g.identity()]);
        let trivial = ElementSet::from_ids(&g, [g.identity()]);
        assert_eq!(right_transversal(&g, &trivial).unwrap().coset_count(), 60);
    }

    #[test]
    fn transversal_of_a4_in_a5_has_five_cosets() {
        let g = a5();
        // A4 = stabilizer of a point; find it as the span of two elements
        // fixing point 4.
        let fixing: Vec<ElemId> = (0..g.order() as u32)
            .map(ElemId)
            .filter(|&x| g.element(x).apply(4) == 4)
            .collect();
        let h = subgroup_span(&g, &fixing).unwrap();
        assert_eq!(h.len(), 12);
        assert_eq!(right_transversal(&g, &h).unwrap().coset_count(), 5);
    }

    #[test]
    fn transversal_rejects_non_subgroup() {
        let g = a5();
        let bad = ElementSet::from_ids(&g, [g.identity(), ElemId(1)]);
        assert!(matches!(right_transversal(&g, &bad), Err(Error::NotASubgroup)));
    }

    #[test]
    fn normalizer_brute_force_equals_seeded() {
        let g = a5();
        let c5 = (0..g.order() as u32)
            .map(ElemId)
            .find(|&x| g.element_order(x) == 5)
            .unwrap();
        let x = cyclic_span(&g, c5);
        let plain = normalizer_of_set(&g, &x, None).unwrap();
        assert_eq!(plain.len(), 10);
        let seeded = normalizer_of_set(&g, &x, Some(&x)).unwrap();
        assert_eq!(plain, seeded);
    }

    #[test]
    fn normalizer_of_whole_group_is_whole_group() {
        let g = a5();
        let whole = ElementSet::full(&g);
        let n = normalizer_of_set(&g, &whole, None).unwrap();
        assert_eq!(n.len(), 60);
    }

    #[test]
    fn normalizer_rejects_non_normalizing_seed() {
        let g = a5();
        let c5 = (0..g.order() as u32)
            .map(ElemId)
            .find(|&x| g.element_order(x) == 5)
            .unwrap();
        let x = cyclic_span(&g, c5);
        // Seed with a subgroup that moves X: some C3.
        let c3 = (0..g.order() as u32)
            .map(ElemId)
            .find(|&y| g.element_order(y) == 3)
            .unwrap();
        let seed = cyclic_span(&g, c3);
        assert!(matches!(
            normalizer_of_set(&g, &x, Some(&seed)),
            Err(Error::SeedNotNormalizing)
        ));
    }

    #[test]
    fn quotient_by_trivial_preserves_order() {
        let g = group(4, &["(0 1 2 3)", "(0 1)"]);
        let trivial = ElementSet::from_ids(&g, [g.identity()]);
        let q = quotient_group(&g, &trivial).unwrap();
        assert_eq!(q.order(), 24);
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = a5();
        let q = quotient_group(&g, &ElementSet::full(&g)).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = group(4, &["(0 1 2 3)", "(0 1)"]);
        // A point stabilizer in S4 is S3, which is not normal.
        let fixing: Vec<ElemId> = (0..g.order() as u32)
            .map(ElemId)
            .filter(|&x| g.element(x).apply(3) == 3)
            .collect();
        let s3 = subgroup_span(&g, &fixing).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(matches!(quotient_group(&g, &s3), Err(Error::NotNormal)));
    }

    #[test]
    fn quotient_s4_by_klein_is_s3() {
        let g = group(4, &["(0 1 2 3)", "(0 1)"]);
        let double_transpositions: Vec<ElemId> = (0..g.order() as u32)
            .map(ElemId)
            .filter(|&x| {
                g.element_order(x) == 2 && g.element(x).cycles().len() == 2
            })
            .collect();
        let mut v4 = ElementSet::from_ids(&g, double_transpositions);
        v4.insert(g.identity());
        assert_eq!(v4.len(), 4);
        let q = quotient_group(&g, &v4).unwrap();
        assert_eq!(q.order(), 6);
        // The coset action is a homomorphism: acting by a*b equals acting
        // by a then by b, for every coset and every generator pair.
        let t = transversal_unchecked(&g, &v4);
        let gens = g.generator_ids();
        for &a in &gens {
            for &b in &gens {
                let ab = g.mul(a, b);
                for i in 0..t.coset_count() {
                    let direct = t.coset_of(g.mul(t.reps()[i], ab));
                    let step = t.coset_of(g.mul(t.reps()[i], a));
                    let stepped = t.coset_of(g.mul(t.reps()[step], b));
                    assert_eq!(direct, stepped);
                }
            }
        }
    }

    #[test]
    fn direct_product_orders_multiply() {
        let a = a5();
        let c6 = group(6, &["(0 1 2 3 4 5)"]);
        let p = direct_product(&a, &c6, None).unwrap();
        assert_eq!(p.order(), 360);
        assert_eq!(p.degree(), 11);
        let trivial = group(1, &["0"]);
        assert_eq!(direct_product(&a, &trivial, None).unwrap().order(), 60);
        let c2 = group(2, &["(0 1)"]);
        assert_eq!(direct_product(&c2, &c2, None).unwrap().order(), 4);
    }

    #[test]
    fn conjugation_preserves_containment() {
        let g = a5();
        let x = subgroup_span(&g, &[ElemId(1)]).unwrap();
        let y = subgroup_span(&g, &[ElemId(1), ElemId(2)]).unwrap();
        assert!(x.is_subset(&y));
        for gid in [ElemId(3), ElemId(17), ElemId(44)] {
            let xg = x.conjugate(gid);
            let yg = y.conjugate(gid);
            assert!(xg.is_subset(&yg));
            assert_eq!(xg.len(), x.len());
        }
    }
}
