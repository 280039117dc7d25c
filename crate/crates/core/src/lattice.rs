//! Full subgroup enumeration for small groups, maximal subgroups,
//! conjugacy-class representatives of maximal solvable subgroups, and a
//! coarse structure classifier for them.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::arith::{divisors, prime_power};
use crate::error::{Error, Result};
use crate::perm_core::ops::{
    greedy_generators, normalizer_of_set, span_bfs, transversal_unchecked, SpanOutcome,
};
use crate::perm_core::{cyclic_span, CosetTransversal, ElemId, ElementSet, Group};
use crate::solvability::{commutator_subgroup, is_solvable};

/// Default ceiling on group order for full lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 1200;

/// Every subgroup of a group, with its conjugacy-class partition.
pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<ElementSet>,
    gens: Vec<Vec<ElemId>>,
    by_words: HashMap<Box<[u64]>, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl SubgroupLattice {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subgroup(&self, i: usize) -> &ElementSet {
        &self.subgroups[i]
    }

    pub fn subgroups(&self) -> &[ElementSet] {
        &self.subgroups
    }

    pub fn position_of(&self, set: &ElementSet) -> Option<usize> {
        self.by_words.get(set.words()).copied()
    }

    /// Conjugacy classes of subgroups, each a list of subgroup indices.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    fn full_index(&self) -> usize {
        self.len() - 1
    }

    /// Indices of the maximal proper subgroups of the subgroup at `h`.
    pub fn maximal_under(&self, h: usize) -> Vec<usize> {
        let ambient = &self.subgroups[h];
        let inside: Vec<usize> = (0..self.len())
            .filter(|&i| i != h && self.subgroups[i].is_subset(ambient))
            .collect();
        inside
            .iter()
            .copied()
            .filter(|&i| {
                !inside.iter().any(|&j| {
                    j != i
                        && self.subgroups[i].len() < self.subgroups[j].len()
                        && self.subgroups[i].is_subset(&self.subgroups[j])
                })
            })
            .collect()
    }
}

/// Enumerates every subgroup by join-closure from the cyclic subgroups.
pub fn all_subgroups(g: &Group, cap: usize) -> Result<SubgroupLattice> {
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "lattice", cap });
    }
    let order = g.order();
    let group_divisors = divisors(order as u64);

    let mut subgroups: Vec<ElementSet> = Vec::new();
    let mut gens: Vec<Vec<ElemId>> = Vec::new();
    let mut by_words: HashMap<Box<[u64]>, usize> = HashMap::new();
    let mut push = |set: ElementSet,
                    set_gens: Vec<ElemId>,
                    subgroups: &mut Vec<ElementSet>,
                    gens: &mut Vec<Vec<ElemId>>,
                    by_words: &mut HashMap<Box<[u64]>, usize>|
     -> bool {
        if by_words.contains_key(set.words()) {
            return false;
        }
        by_words.insert(set.words().into(), subgroups.len());
        subgroups.push(set);
        gens.push(set_gens);
        true
    };

    push(
        ElementSet::from_ids(g, [g.identity()]),
        Vec::new(),
        &mut subgroups,
        &mut gens,
        &mut by_words,
    );
    push(
        ElementSet::full(g),
        g.generator_ids(),
        &mut subgroups,
        &mut gens,
        &mut by_words,
    );
    for x in 1..order as u32 {
        let x = ElemId(x);
        push(cyclic_span(g, x), vec![x], &mut subgroups, &mut gens, &mut by_words);
    }

    // Join every pair once; new subgroups join against everything older.
    let mut i = 0;
    while i < subgroups.len() {
        for j in 0..i {
            let (a, b) = (&subgroups[i], &subgroups[j]);
            if a.is_subset(b) || b.is_subset(a) {
                continue;
            }
            // |AB| = |A||B|/|A∩B| bounds the join order from below; if no
            // proper divisor of |G| is that large, the join is G.
            let lower = (a.len() * b.len() / a.intersection_len(b)) as u64;
            let join_is_whole = group_divisors
                .iter()
                .find(|&&d| d >= lower)
                .map(|&d| d == order as u64)
                .unwrap_or(true);
            if join_is_whole {
                continue;
            }
            let mut joined_gens = gens[i].clone();
            for &e in &gens[j] {
                if !joined_gens.contains(&e) {
                    joined_gens.push(e);
                }
            }
            match span_bfs(g, &joined_gens, order / 2) {
                SpanOutcome::Exceeded => {}
                SpanOutcome::Complete(set) => {
                    push(set, joined_gens, &mut subgroups, &mut gens, &mut by_words);
                }
            }
        }
        i += 1;
    }

    // Canonical order: by size, then by bit pattern.
    let mut perm: Vec<usize> = (0..subgroups.len()).collect();
    perm.sort_by(|&a, &b| {
        (subgroups[a].len(), subgroups[a].words()).cmp(&(subgroups[b].len(), subgroups[b].words()))
    });
    let subgroups: Vec<ElementSet> = perm.iter().map(|&i| subgroups[i].clone()).collect();
    let gens: Vec<Vec<ElemId>> = perm.iter().map(|&i| gens[i].clone()).collect();
    let by_words: HashMap<Box<[u64]>, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.words().into(), i))
        .collect();

    // Conjugacy classes of subgroups: orbits under the group generators.
    let generator_ids = g.generator_ids();
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let mut orbit = vec![start];
        class_of[start] = k;
        let mut queue = vec![start];
        while let Some(idx) = queue.pop() {
            for &gen in &generator_ids {
                let image = subgroups[idx].conjugate(gen);
                let image_idx = *by_words.get(image.words()).ok_or_else(|| {
                    Error::Inconsistency("conjugate of a subgroup missing from lattice".into())
                })?;
                if class_of[image_idx] == usize::MAX {
                    class_of[image_idx] = k;
                    orbit.push(image_idx);
                    queue.push(image_idx);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }

    Ok(SubgroupLattice {
        group: g.clone(),
        subgroups,
        gens,
        by_words,
        classes,
        class_of,
    })
}

/// The maximal proper subgroups of the whole group.
pub fn maximal_subgroups(lattice: &SubgroupLattice) -> Vec<ElementSet> {
    lattice
        .maximal_under(lattice.full_index())
        .into_iter()
        .map(|i| lattice.subgroup(i).clone())
        .collect()
}

/// One conjugacy-class representative of the maximal solvable subgroups,
/// together with its normalizer and a transversal of that normalizer.
pub struct MaxSolvClass {
    pub rep: ElementSet,
    pub normalizer: ElementSet,
    pub transversal: CosetTransversal,
}

pub struct MaxSolvReps {
    pub classes: Vec<MaxSolvClass>,
}

/// Conjugacy-class representatives of the maximal solvable subgroups.
///
/// Recursion over maximal subgroup class representatives: solvable ones
/// are kept, nonsolvable ones are descended into. Afterwards two
/// redundancy rules apply: conjugate candidates collapse to one class,
/// and a candidate contained in a conjugate of another is dropped.
pub fn max_solv_reps(g: &Group, lattice: &SubgroupLattice) -> Result<MaxSolvReps> {
    let full = ElementSet::full(g);
    let mut candidate_classes: BTreeSet<usize> = BTreeSet::new();

    if is_solvable(g, &full) {
        let transversal = transversal_unchecked(g, &full);
        return Ok(MaxSolvReps {
            classes: vec![MaxSolvClass { rep: full.clone(), normalizer: full, transversal }],
        });
    }

    let mut visited: HashSet<usize> = HashSet::new();
    let mut stack = vec![lattice.full_index()];
    while let Some(h_idx) = stack.pop() {
        let h_gens = &lattice.gens[h_idx];
        let maximals = lattice.maximal_under(h_idx);
        for &m_idx in &class_reps_under(lattice, &maximals, h_gens)? {
            if is_solvable(g, lattice.subgroup(m_idx)) {
                candidate_classes.insert(lattice.class_of(m_idx));
            } else if visited.insert(lattice.class_of(m_idx)) {
                stack.push(m_idx);
            }
        }
    }

    // Drop any class whose representative lies inside a member of another
    // candidate class.
    let survivors: Vec<usize> = candidate_classes
        .iter()
        .copied()
        .filter(|&a| {
            let rep_a = lattice.subgroup(lattice.classes()[a][0]);
            !candidate_classes.iter().any(|&b| {
                b != a
                    && lattice
                        .classes()[b]
                        .iter()
                        .any(|&t| rep_a.len() < lattice.subgroup(t).len()
                            && rep_a.is_subset(lattice.subgroup(t)))
            })
        })
        .collect();

    let mut classes = Vec::new();
    for class_id in survivors {
        let rep = lattice.subgroup(lattice.classes()[class_id][0]).clone();
        let normalizer = normalizer_of_set(g, &rep, Some(&rep))?;
        let transversal = transversal_unchecked(g, &normalizer);
        classes.push(MaxSolvClass { rep, normalizer, transversal });
    }
    classes.sort_by_key(|c| (c.rep.len(), c.rep.min_id()));
    Ok(MaxSolvReps { classes })
}

/// Representatives (minimal index) of the orbits of the given subgroup
/// indices under conjugation by `gens`.
fn class_reps_under(
    lattice: &SubgroupLattice,
    indices: &[usize],
    gens: &[ElemId],
) -> Result<Vec<usize>> {
    let member: HashSet<usize> = indices.iter().copied().collect();
    let mut assigned: HashSet<usize> = HashSet::new();
    let mut reps = Vec::new();
    for &start in indices {
        if assigned.contains(&start) {
            continue;
        }
        reps.push(start);
        let mut queue = vec![start];
        assigned.insert(start);
        while let Some(idx) = queue.pop() {
            for &gen in gens {
                let image = lattice.subgroup(idx).conjugate(gen);
                let image_idx = lattice.position_of(&image).ok_or_else(|| {
                    Error::Inconsistency("conjugate of a subgroup missing from lattice".into())
                })?;
                debug_assert!(member.contains(&image_idx));
                if assigned.insert(image_idx) {
                    queue.push(image_idx);
                }
            }
        }
    }
    Ok(reps)
}

/// Coarse isomorphism-type tags, just fine enough to name the shapes of
/// maximal solvable subgroups that occur in the projective families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum StructureTag {
    Trivial,
    Cyclic(u64),
    /// Dihedral group of the given order (at least 6).
    Dihedral(u64),
    ElementaryAbelian { p: u64, k: u32 },
    A4,
    S4,
    /// Normal elementary-abelian Sylow p-subgroup of order p^k with a
    /// cyclic complement of order m.
    ElemAbelianByCyclic { p: u64, k: u32, m: u64 },
    Other(u64),
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::Trivial => write!(f, "1"),
            StructureTag::Cyclic(n) => write!(f, "C{n}"),
            StructureTag::Dihedral(n) => write!(f, "D{n}"),
            StructureTag::ElementaryAbelian { p, k } => write!(f, "C{p}^{k}"),
            StructureTag::A4 => write!(f, "A4"),
            StructureTag::S4 => write!(f, "S4"),
            StructureTag::ElemAbelianByCyclic { p, k, m } => {
                if *k == 1 {
                    write!(f, "C{p}:C{m}")
                } else {
                    write!(f, "C{p}^{k}:C{m}")
                }
            }
            StructureTag::Other(n) => write!(f, "other({n})"),
        }
    }
}

/// Deterministic classification by the first matching predicate.
///
/// A4 and S4 are recognized by derived-series signature before the
/// split-extension shape is tried, since A4 is itself an elementary
/// abelian group extended by a cyclic one.
pub fn classify_structure(g: &Group, h: &ElementSet) -> StructureTag {
    let n = h.len() as u64;
    if n == 1 {
        return StructureTag::Trivial;
    }
    if h.iter().any(|x| g.element_order(x) as u64 == n) {
        return StructureTag::Cyclic(n);
    }
    if n % 2 == 0 && n >= 6 && is_dihedral(g, h, n / 2) {
        return StructureTag::Dihedral(n);
    }
    if let Some((p, k)) = prime_power(n) {
        if h.iter().all(|x| x == g.identity() || g.element_order(x) as u64 == p)
            && generators_commute(g, h)
        {
            return StructureTag::ElementaryAbelian { p, k };
        }
    }
    if n == 12 && commutator_subgroup(g, h).len() == 4 {
        return StructureTag::A4;
    }
    if n == 24 {
        let derived = commutator_subgroup(g, h);
        if derived.len() == 12 && commutator_subgroup(g, &derived).len() == 4 {
            return StructureTag::S4;
        }
    }
    if let Some(tag) = split_elementary_by_cyclic(g, h, n) {
        return tag;
    }
    StructureTag::Other(n)
}

fn is_dihedral(g: &Group, h: &ElementSet, m: u64) -> bool {
    for r in h.iter().filter(|&r| g.element_order(r) as u64 == m) {
        let rotations = cyclic_span(g, r);
        let inverted = h.iter().any(|s| {
            !rotations.contains(s) && g.element_order(s) == 2 && g.conj(r, s) == g.inv(r)
        });
        if inverted {
            return true;
        }
    }
    false
}

fn generators_commute(g: &Group, h: &ElementSet) -> bool {
    let gens = greedy_generators(g, h);
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

fn split_elementary_by_cyclic(g: &Group, h: &ElementSet, n: u64) -> Option<StructureTag> {
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            let mut p_part = 1u64;
            while rest % p == 0 {
                rest /= p;
                p_part *= p;
            }
            if let Some(tag) = try_split_at(g, h, n, p, p_part) {
                return Some(tag);
            }
        }
        p += 1;
    }
    None
}

fn try_split_at(g: &Group, h: &ElementSet, n: u64, p: u64, p_part: u64) -> Option<StructureTag> {
    let m = n / p_part;
    let p_elements = ElementSet::from_ids(
        g,
        h.iter().filter(|&x| {
            let o = g.element_order(x) as u64;
            o == 1 || (o % p == 0 && prime_power(o).map(|(q, _)| q == p).unwrap_or(false))
        }),
    );
    // All p-elements forming exactly one Sylow's worth means the Sylow is
    // unique, hence normal, and is that very set.
    if p_elements.len() as u64 != p_part {
        return None;
    }
    if !p_elements
        .iter()
        .all(|x| x == g.identity() || g.element_order(x) as u64 == p)
    {
        return None;
    }
    if !generators_commute(g, &p_elements) {
        return None;
    }
    if !h.iter().any(|x| g.element_order(x) as u64 == m) {
        return None;
    }
    let k = p_part.ilog(p);
    Some(StructureTag::ElemAbelianByCyclic { p, k, m })
}
