//! Fully enumerated groups: the element table every other structure
//! references by integer id.

use std::borrow::Borrow;
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm_core::perm::{parse_permutation, Permutation};

/// Default ceiling on enumerated group size.
pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

/// Index of an element in its owning [`GroupTable`].
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ElemId(pub u32);

impl ElemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to an enumerated group. Tables are immutable after
/// construction, so handles can be passed freely across threads.
pub type Group = Arc<GroupTable>;

/// A fully enumerated permutation group.
///
/// Elements are stored in lexicographic image-list order, which puts the
/// identity at id 0 and makes every derived artifact (transversal reps,
/// class representatives, reports) reproducible.
pub struct GroupTable {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    pub(crate) caches: GroupCaches,
}

// Lookup key adapter so products can be resolved from a scratch buffer
// without allocating a Permutation per multiplication.
impl Borrow<[u16]> for Permutation {
    fn borrow(&self) -> &[u16] {
        self.images()
    }
}

thread_local! {
    static MUL_SCRATCH: RefCell<Vec<u16>> = const { RefCell::new(Vec::new()) };
}

impl GroupTable {
    /// Breadth-first product closure of the generators. Errors if the group
    /// would exceed `cap` elements (no silent truncation).
    pub fn closure(generators: Vec<Permutation>, cap: Option<usize>) -> Result<Group> {
        let cap = cap.unwrap_or(DEFAULT_CLOSURE_CAP);
        let degree = match generators.first() {
            Some(g) => g.degree(),
            None => {
                return Err(Error::InvalidPermutation("empty generator list".into()));
            }
        };
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }

        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let mut queue: Vec<Permutation> = Vec::new();
        let identity = Permutation::identity(degree);
        seen.insert(identity.clone(), ());
        queue.push(identity);
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for g in &generators {
                let product = current.compose(g).expect("equal degrees");
                if !seen.contains_key(&product) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { what: "closure", cap });
                    }
                    seen.insert(product.clone(), ());
                    queue.push(product);
                }
            }
        }

        let mut elements: Vec<Permutation> = seen.into_keys().collect();
        elements.sort_unstable();
        Self::from_sorted_elements(degree, generators, elements)
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Result<Group> {
        debug_assert!(elements[0].is_identity());
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverses = elements
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let order = elements.len();
        Ok(Arc::new(GroupTable {
            degree,
            generators,
            elements,
            index,
            inverses,
            orders,
            caches: GroupCaches::new(order),
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        ElemId(0)
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> Vec<ElemId> {
        self.generators
            .iter()
            .map(|g| ElemId(self.index[g.images()]))
            .collect()
    }

    pub fn element(&self, id: ElemId) -> &Permutation {
        &self.elements[id.index()]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        self.index.get(p.images()).copied().map(ElemId)
    }

    pub fn check_id(&self, id: ElemId) -> Result<()> {
        if id.index() < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidElementId { id: id.0, order: self.order() })
        }
    }

    /// Product `a * b` (apply `b` first).
    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        MUL_SCRATCH.with(|scratch| {
            let mut buf = scratch.borrow_mut();
            buf.clear();
            let pa = self.elements[a.index()].images();
            let pb = self.elements[b.index()].images();
            buf.extend(pb.iter().map(|&i| pa[i as usize]));
            ElemId(self.index[&buf[..]])
        })
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        ElemId(self.inverses[a.index()])
    }

    /// Conjugate `x^g = g^-1 * x * g`.
    #[inline]
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: ElemId, k: i64) -> ElemId {
        let order = self.orders[x.index()] as i64;
        let mut e = k.rem_euclid(order) as u64;
        let mut result = self.identity();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn element_order(&self, id: ElemId) -> u32 {
        self.orders[id.index()]
    }

    /// Conjugation as a permutation of element ids: `table[x] = x^g`.
    /// Tables are cached with a bounded LRU since the same conjugator is
    /// often replayed thousands of times during set conjugation.
    pub fn conj_table(&self, g: ElemId) -> Arc<Vec<u32>> {
        if let Some(t) = self.caches.conj.lock().unwrap().get(g.0) {
            return t;
        }
        let gi = self.inv(g);
        let n = self.order();
        let mut table = Vec::with_capacity(n);
        for x in 0..n {
            let left = self.mul(gi, ElemId(x as u32));
            table.push(self.mul(left, g).0);
        }
        let table = Arc::new(table);
        self.caches.conj.lock().unwrap().put(g.0, table.clone());
        table
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

pub(crate) struct GroupCaches {
    conj: Mutex<ConjTableCache>,
    pub(crate) solvable: Mutex<HashMap<Box<[u64]>, bool>>,
}

impl GroupCaches {
    fn new(order: usize) -> Self {
        // Keep the resident conjugation tables around 8 MB total.
        let cap = (2_000_000 / order.max(1)).clamp(8, 4096);
        GroupCaches {
            conj: Mutex::new(ConjTableCache::new(cap)),
            solvable: Mutex::new(HashMap::new()),
        }
    }
}

struct ConjTableCache {
    cap: usize,
    stamp: u64,
    entries: HashMap<u32, (Arc<Vec<u32>>, u64)>,
}

impl ConjTableCache {
    fn new(cap: usize) -> Self {
        ConjTableCache { cap, stamp: 0, entries: HashMap::new() }
    }

    fn get(&mut self, key: u32) -> Option<Arc<Vec<u32>>> {
        self.stamp += 1;
        let stamp = self.stamp;
        self.entries.get_mut(&key).map(|entry| {
            entry.1 = stamp;
            entry.0.clone()
        })
    }

    fn put(&mut self, key: u32, table: Arc<Vec<u32>>) {
        if self.entries.len() >= self.cap {
            if let Some((&oldest, _)) = self.entries.iter().min_by_key(|(_, (_, s))| *s) {
                self.entries.remove(&oldest);
            }
        }
        self.stamp += 1;
        self.entries.insert(key, (table, self.stamp));
    }
}

/// Parses the group text format: a `degree <n>` header followed by one
/// generator per line, either as an image list (`g 1 0 2`) or in cycle
/// notation (`g (0 1)(2 3)`). Blank lines and `#` comments are skipped.
pub fn parse_group_text(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let rest = line.strip_prefix("degree").ok_or_else(|| {
                    Error::parse(lineno + 1, "expected 'degree <n>' header")
                })?;
                let n: usize = rest.trim().parse().map_err(|_| {
                    Error::parse(lineno + 1, format!("bad degree {:?}", rest.trim()))
                })?;
                if n == 0 || n > u16::MAX as usize {
                    return Err(Error::parse(lineno + 1, format!("degree {n} unsupported")));
                }
                degree = Some(n);
            }
            Some(n) => {
                let rest = line.strip_prefix('g').ok_or_else(|| {
                    Error::parse(lineno + 1, "expected generator line starting with 'g'")
                })?;
                generators.push(parse_permutation(n, rest)?);
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(0, "missing 'degree <n>' header"))?;
    if generators.is_empty() {
        return Err(Error::parse(0, "no generators given"));
    }
    Ok((degree, generators))
}

/// Writes the group text format; generators are emitted as image lists.
pub fn write_group_text(degree: usize, generators: &[Permutation]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in generators {
        out.push('g');
        for &img in g.images() {
            out.push(' ');
            out.push_str(&img.to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, text: &str) -> Permutation {
        parse_permutation(degree, text).unwrap()
    }

    #[test]
    fn closure_of_a5_generators_has_order_60() {
        let g = GroupTable::closure(vec![cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1 2)")], None)
            .unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(g.degree(), 5);
        assert!(g.element(g.identity()).is_identity());
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = GroupTable::closure(vec![Permutation::identity(3)], None).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_of_two_disjoint_transpositions_is_klein() {
        let g = GroupTable::closure(vec![cyc(4, "(0 1)"), cyc(4, "(2 3)")], None).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let gens = vec![cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1 2)")];
        let err = GroupTable::closure(gens, Some(30)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { what: "closure", .. }));
    }

    #[test]
    fn closure_is_idempotent() {
        let g = GroupTable::closure(vec![cyc(4, "(0 1 2 3)"), cyc(4, "(0 1)")], None).unwrap();
        assert_eq!(g.order(), 24);
        let again = GroupTable::closure(g.elements().to_vec(), None).unwrap();
        assert_eq!(again.order(), 24);
    }

    #[test]
    fn mul_inv_conj_are_consistent() {
        let g = GroupTable::closure(vec![cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1 2)")], None)
            .unwrap();
        let e = g.identity();
        for a in 0..g.order() as u32 {
            let a = ElemId(a);
            assert_eq!(g.mul(a, g.inv(a)), e);
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.conj(a, e), a);
        }
        // mul agrees with permutation composition
        let x = ElemId(7);
        let y = ElemId(23);
        let via_perm = g.element(x).compose(g.element(y)).unwrap();
        assert_eq!(g.element(g.mul(x, y)), &via_perm);
    }

    #[test]
    fn conj_table_matches_pointwise_conjugation() {
        let g = GroupTable::closure(vec![cyc(4, "(0 1 2 3)"), cyc(4, "(0 1)")], None).unwrap();
        for gid in [ElemId(0), ElemId(3), ElemId(10)] {
            let table = g.conj_table(gid);
            for x in 0..g.order() as u32 {
                assert_eq!(table[x as usize], g.conj(ElemId(x), gid).0);
            }
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        let g = GroupTable::closure(vec![cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1 2)")], None)
            .unwrap();
        for x in 0..g.order() as u32 {
            let o = g.element_order(ElemId(x)) as usize;
            assert_eq!(g.order() % o, 0);
            assert_eq!(g.pow(ElemId(x), o as i64), g.identity());
        }
    }

    #[test]
    fn group_text_round_trip() {
        let text = "# sample\ndegree 5\ng (0 1 2 3 4)\ng 1 0 2 3 4\n";
        let (degree, gens) = parse_group_text(text).unwrap();
        assert_eq!(degree, 5);
        assert_eq!(gens.len(), 2);
        let written = write_group_text(degree, &gens);
        let (d2, g2) = parse_group_text(&written).unwrap();
        assert_eq!(d2, degree);
        assert_eq!(g2, gens);
    }

    #[test]
    fn group_text_rejects_garbage() {
        assert!(parse_group_text("").is_err());
        assert!(parse_group_text("degree 0\ng 0").is_err());
        assert!(parse_group_text("degree 3\nh (0 1)").is_err());
        assert!(parse_group_text("g (0 1)\ndegree 3").is_err());
    }
}
