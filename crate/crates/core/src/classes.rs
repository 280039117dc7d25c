//! Conjugacy classes, power maps, and rational classes: the iteration
//! skeleton of the rational-class counting method.

use crate::arith::gcd;
use crate::perm_core::{ElemId, ElementSet, Group};

/// A rational class: the union of the conjugacy classes of `x^i` over all
/// `i` coprime to the order of `x`.
pub struct RationalClass {
    /// Minimal element id in the class.
    pub rep: ElemId,
    pub members: ElementSet,
    /// Common element order of every member.
    pub element_order: u32,
}

/// Orbit partition of the group under conjugation, ordered by minimal
/// member id (so the identity class comes first).
pub fn conjugacy_classes(g: &Group) -> Vec<ElementSet> {
    let order = g.order();
    let mut assigned = vec![false; order];
    let gens = g.generator_ids();
    let mut classes = Vec::new();
    for start in 0..order as u32 {
        if assigned[start as usize] {
            continue;
        }
        let mut class = ElementSet::empty(g);
        let mut queue = vec![ElemId(start)];
        assigned[start as usize] = true;
        class.insert(ElemId(start));
        while let Some(x) = queue.pop() {
            for &gen in &gens {
                let y = g.conj(x, gen);
                if !assigned[y.index()] {
                    assigned[y.index()] = true;
                    class.insert(y);
                    queue.push(y);
                }
            }
        }
        classes.push(class);
    }
    classes
}

/// Fuses conjugacy classes along coprime power maps, via union-find over
/// class indices.
pub fn rational_classes(g: &Group) -> Vec<RationalClass> {
    let classes = conjugacy_classes(g);
    let mut class_of = vec![usize::MAX; g.order()];
    for (k, class) in classes.iter().enumerate() {
        for id in class.iter() {
            class_of[id.index()] = k;
        }
    }

    let mut uf = UnionFind::new(classes.len());
    for (k, class) in classes.iter().enumerate() {
        let rep = class.min_id().expect("nonempty class");
        let m = g.element_order(rep) as u64;
        for i in 2..m {
            if gcd(i, m) == 1 {
                let power = g.pow(rep, i as i64);
                uf.union(k, class_of[power.index()]);
            }
        }
    }

    let mut fused: Vec<Option<RationalClass>> = (0..classes.len()).map(|_| None).collect();
    for (k, class) in classes.iter().enumerate() {
        let root = uf.find(k);
        match &mut fused[root] {
            Some(rc) => {
                debug_assert_eq!(rc.element_order, g.element_order(class.min_id().unwrap()));
                rc.members.union_with(class);
                rc.rep = rc.rep.min(class.min_id().unwrap());
            }
            slot @ None => {
                let rep = class.min_id().unwrap();
                *slot = Some(RationalClass {
                    rep,
                    members: class.clone(),
                    element_order: g.element_order(rep),
                });
            }
        }
    }
    let mut result: Vec<RationalClass> = fused.into_iter().flatten().collect();
    result.sort_by_key(|rc| rc.rep);
    result
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Smaller root wins, keeping representatives minimal.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
