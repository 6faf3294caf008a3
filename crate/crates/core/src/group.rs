//! Finite permutation groups stored by full element enumeration.
//!
//! Every group keeps its elements sorted lexicographically by image vector,
//! so the identity is always element `0` and subgroups inherit the order of
//! their parent. Element arithmetic goes through a dense Cayley table.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// Default element cap for closures.
pub const DEFAULT_ELEMENT_CAP: usize = 4096;

#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    locator: Locator,
}

/// Finds an element from the images of a few base points.
#[derive(Clone)]
struct Locator {
    base: Vec<u32>,
    direct: Option<Vec<u32>>,
    keyed: HashMap<Vec<u32>, u32>,
}

const NONE: u32 = u32::MAX;

impl Locator {
    fn build(elements: &[Permutation], degree: usize) -> Locator {
        let mut base = Vec::new();
        // classes[i] = id of the block element i sits in under the current base
        let mut classes = vec![0u32; elements.len()];
        let mut distinct = elements.len() <= 1;
        for point in 0..degree as u32 {
            if distinct {
                break;
            }
            let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
            let refined: Vec<u32> = elements
                .iter()
                .zip(&classes)
                .map(|(e, &c)| {
                    let next = ids.len() as u32;
                    *ids.entry((c, e.apply(point))).or_insert(next)
                })
                .collect();
            let before = classes.iter().collect::<HashSet<_>>().len();
            if ids.len() > before {
                base.push(point);
                classes = refined;
                distinct = ids.len() == elements.len();
            }
        }
        if base.len() == 1 {
            let mut direct = vec![NONE; degree];
            for (i, e) in elements.iter().enumerate() {
                direct[e.apply(base[0]) as usize] = i as u32;
            }
            return Locator {
                base,
                direct: Some(direct),
                keyed: HashMap::new(),
            };
        }
        let keyed = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (base.iter().map(|&b| e.apply(b)).collect(), i as u32))
            .collect();
        Locator {
            base,
            direct: None,
            keyed,
        }
    }

    fn find_by(&self, image: impl Fn(u32) -> u32, buf: &mut Vec<u32>) -> Option<u32> {
        if let Some(direct) = &self.direct {
            let v = direct[image(self.base[0]) as usize];
            return (v != NONE).then_some(v);
        }
        if self.base.is_empty() {
            return Some(0);
        }
        buf.clear();
        buf.extend(self.base.iter().map(|&b| image(b)));
        self.keyed.get(buf.as_slice()).copied()
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Breadth-first closure of `generators`, failing once more than `cap` elements appear.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.compose_unchecked(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::TooLarge { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted_elements(degree, generators, elements))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted_elements(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    /// `elements` must be a sorted, closed list; the Cayley table is built through the locator.
    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let n = elements.len();
        let locator = Locator::build(&elements, degree);
        let mut table = vec![0u32; n * n];
        let mut buf = Vec::new();
        for i in 0..n {
            let a = &elements[i];
            for j in 0..n {
                let b = &elements[j];
                table[i * n + j] = locator
                    .find_by(|p| a.apply(b.apply(p)), &mut buf)
                    .expect("element list is closed");
            }
        }
        Self::finish(degree, generators, elements, table, locator)
    }

    fn finish(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        table: Vec<u32>,
        locator: Locator,
    ) -> Self {
        let n = elements.len();
        let mut inverses = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inverses[i] = j as u32;
                    break;
                }
            }
        }
        let mut orders = vec![1u32; n];
        for (i, o) in orders.iter_mut().enumerate() {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + i] as usize;
                k += 1;
            }
            *o = k;
        }
        FiniteGroup {
            degree,
            generators,
            elements,
            table,
            inverses,
            orders,
            locator,
        }
    }

    /// Subgroup spanned by a sorted, closed list of element indices of `self`.
    pub(crate) fn subgroup_from_indices(&self, indices: &[usize]) -> FiniteGroup {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let n = self.order();
        let m = indices.len();
        let mut pos = vec![NONE; n];
        for (k, &i) in indices.iter().enumerate() {
            pos[i] = k as u32;
        }
        let mut table = vec![0u32; m * m];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                let p = pos[self.table[i * n + j] as usize];
                debug_assert!(p != NONE, "index list is not closed");
                table[a * m + b] = p;
            }
        }
        let elements: Vec<Permutation> = indices.iter().map(|&i| self.elements[i].clone()).collect();
        let gens = self.generating_set_within(indices);
        let generators = gens.into_iter().map(|i| self.elements[i].clone()).collect();
        let locator = Locator::build(&elements, self.degree);
        Self::finish(self.degree, generators, elements, table, locator)
    }

    /// Regular representation of an abstract group given by its Cayley table
    /// (`table[i * n + j]` = product of `i` and `j`, identity at index 0).
    pub fn from_cayley_table(n: usize, table: &[u32]) -> Result<FiniteGroup> {
        if table.len() != n * n || n == 0 {
            return Err(GroupError::Invalid("Cayley table has wrong size".into()));
        }
        let perms: Vec<Permutation> = (0..n)
            .map(|i| Permutation::from_images((0..n).map(|x| table[i * n + x]).collect()))
            .collect::<Result<_>>()?;
        let mut sorted = perms.clone();
        sorted.sort();
        let g = Self::from_sorted_elements(n, Vec::new(), sorted);
        let gens = g.small_generating_set();
        let generators = gens.iter().map(|&i| g.elements[i].clone()).collect();
        Ok(FiniteGroup { generators, ..g })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k % self.element_order(a).max(1) {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Right conjugate `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(a, g))
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        let mut buf = Vec::new();
        let i = self.locator.find_by(|x| p.apply(x), &mut buf)? as usize;
        (self.elements[i] == *p).then_some(i)
    }

    pub fn require_index(&self, p: &Permutation) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| GroupError::NotAnElement(p.to_string()))
    }

    /// Positions of the elements of `sub` inside `self`.
    pub fn indices_of(&self, sub: &FiniteGroup) -> Result<Vec<usize>> {
        sub.elements.iter().map(|p| self.require_index(p)).collect()
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index_of(g).expect("generators are elements"))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o as usize).or_insert(0) += 1;
        }
        h
    }

    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut list = vec![0usize];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Closure of `gens` together with all their conjugates.
    pub fn normal_closure_of(&self, gens: &[usize]) -> Vec<usize> {
        let ggens = self.generator_indices();
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut list = vec![0usize];
        let mut pending: Vec<usize> = gens.to_vec();
        let mut subgens: Vec<usize> = Vec::new();
        while let Some(x) = pending.pop() {
            if member[x] {
                continue;
            }
            subgens.push(x);
            // rebuild closure incrementally from the current list
            let mut head = 0;
            while head < list.len() {
                let y = list[head];
                head += 1;
                for &s in &subgens {
                    let z = self.mul(y, s);
                    if !member[z] {
                        member[z] = true;
                        list.push(z);
                    }
                }
            }
            for &g in &ggens {
                let c = self.conj(x, g);
                if !member[c] {
                    pending.push(c);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Greedy generating set of the subgroup on `indices`, preferring elements of large order.
    pub fn generating_set_within(&self, indices: &[usize]) -> Vec<usize> {
        let mut cands: Vec<usize> = indices.iter().copied().filter(|&i| i != 0).collect();
        cands.sort_by_key(|&i| (std::cmp::Reverse(self.element_order(i)), i));
        let mut gens = Vec::new();
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut count = 1;
        for c in cands {
            if count == indices.len() {
                break;
            }
            if member[c] {
                continue;
            }
            gens.push(c);
            let cl = self.closure(&gens);
            count = cl.len();
            for i in cl {
                member[i] = true;
            }
        }
        gens
    }

    /// A small generating set of the whole group (deterministic).
    pub fn small_generating_set(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.generating_set_within(&all)
    }

    pub fn is_subgroup_indices(&self, indices: &[usize]) -> bool {
        let n = self.order();
        let mut member = vec![false; n];
        for &i in indices {
            member[i] = true;
        }
        member[0]
            && indices
                .iter()
                .all(|&a| indices.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn is_normal_indices(&self, indices: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &i in indices {
            member[i] = true;
        }
        let gens = self.generator_indices();
        indices
            .iter()
            .all(|&h| gens.iter().all(|&g| member[self.conj(h, g)]))
    }

    pub fn center_indices(&self) -> Vec<usize> {
        let gens = self.generator_indices();
        (0..self.order())
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer_indices(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| set.iter().all(|&s| self.mul(x, s) == self.mul(s, x)))
            .collect()
    }

    pub fn normalizer_indices(&self, sub: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        for &i in sub {
            member[i] = true;
        }
        (0..self.order())
            .filter(|&g| sub.iter().all(|&h| member[self.conj(h, g)]))
            .collect()
    }

    /// Subgroup generated by all `a^-1 b^-1 a b`, `a` in `a_set`, `b` in `b_set`.
    pub fn commutator_indices(&self, a_set: &[usize], b_set: &[usize]) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order()];
        for &a in a_set {
            for &b in b_set {
                let c = self.commutator(a, b);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    pub fn derived_indices(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.commutator_indices(&all, &all)
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let gens = self.generator_indices();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut cls = vec![x];
            class_of[x] = id;
            let mut head = 0;
            while head < cls.len() {
                let y = cls[head];
                head += 1;
                for &g in &gens {
                    let z = self.conj(y, g);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        cls.push(z);
                    }
                }
            }
            cls.sort_unstable();
            classes.push(cls);
        }
        classes
    }

    pub fn into_arc(self) -> Arc<FiniteGroup> {
        Arc::new(self)
    }
}

/// Result of embedding two groups on disjoint point sets.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Arc<FiniteGroup>,
    left_order: usize,
    right_order: usize,
    pair_to_index: Vec<u32>,
    index_to_pair: Vec<(u32, u32)>,
}

impl DirectProduct {
    pub fn new(g: &FiniteGroup, h: &FiniteGroup) -> Result<DirectProduct> {
        let total = g.degree() + h.degree();
        let mut gens: Vec<Permutation> = g.generators().iter().map(|p| p.shifted(0, total)).collect();
        gens.extend(h.generators().iter().map(|p| p.shifted(g.degree(), total)));
        let cap = (g.order() * h.order()).max(1);
        let group = FiniteGroup::generate(total, gens, cap)?;
        let mut pair_to_index = vec![0u32; g.order() * h.order()];
        let mut index_to_pair = vec![(0u32, 0u32); group.order()];
        for (i, a) in g.elements().iter().enumerate() {
            for (j, b) in h.elements().iter().enumerate() {
                let mut images: Vec<u32> = a.images().to_vec();
                images.extend(b.images().iter().map(|&x| x + g.degree() as u32));
                let p = Permutation::from_images_unchecked(images);
                let k = group.index_of(&p).expect("pair lies in the product");
                pair_to_index[i * h.order() + j] = k as u32;
                index_to_pair[k] = (i as u32, j as u32);
            }
        }
        Ok(DirectProduct {
            group: Arc::new(group),
            left_order: g.order(),
            right_order: h.order(),
            pair_to_index,
            index_to_pair,
        })
    }

    pub fn pair(&self, left: usize, right: usize) -> usize {
        debug_assert!(left < self.left_order);
        self.pair_to_index[left * self.right_order + right] as usize
    }

    pub fn components(&self, k: usize) -> (usize, usize) {
        let (a, b) = self.index_to_pair[k];
        (a as usize, b as usize)
    }
}

/// Subgroup of `g` generated by the given permutations.
pub fn subgroup_generated(g: &FiniteGroup, gens: &[Permutation]) -> Result<FiniteGroup> {
    let idx: Vec<usize> = gens.iter().map(|p| g.require_index(p)).collect::<Result<_>>()?;
    Ok(g.subgroup_from_indices(&g.closure(&idx)))
}

pub fn normal_closure(g: &FiniteGroup, gens: &[Permutation]) -> Result<FiniteGroup> {
    let idx: Vec<usize> = gens.iter().map(|p| g.require_index(p)).collect::<Result<_>>()?;
    Ok(g.subgroup_from_indices(&g.normal_closure_of(&idx)))
}

fn subgroup_indices(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<usize>> {
    let idx = g.indices_of(h)?;
    if !g.is_subgroup_indices(&idx) {
        return Err(GroupError::NotASubgroup("element list is not closed".into()));
    }
    Ok(idx)
}

pub fn is_normal(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    Ok(g.is_normal_indices(&subgroup_indices(g, h)?))
}

/// `[A, B]` inside `g`; both arguments must be subgroups of `g`.
pub fn commutator_subgroup_rel(g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let ai = subgroup_indices(g, a)?;
    let bi = subgroup_indices(g, b)?;
    Ok(g.subgroup_from_indices(&g.commutator_indices(&ai, &bi)))
}

pub fn derived_subgroup(g: &FiniteGroup) -> FiniteGroup {
    g.subgroup_from_indices(&g.derived_indices())
}

pub fn center(g: &FiniteGroup) -> FiniteGroup {
    g.subgroup_from_indices(&g.center_indices())
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    Ok((*DirectProduct::new(g, h)?.group).clone())
}

/// The intersection of two subgroups of `g`.
pub fn intersection(g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let ai = subgroup_indices(g, a)?;
    let mut member = vec![false; g.order()];
    for i in subgroup_indices(g, b)? {
        member[i] = true;
    }
    let both: Vec<usize> = ai.into_iter().filter(|&i| member[i]).collect();
    Ok(g.subgroup_from_indices(&both))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    pub fn s3() -> FiniteGroup {
        FiniteGroup::generate(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[1, 2]])], 100).unwrap()
    }

    pub fn d4() -> FiniteGroup {
        FiniteGroup::generate(4, vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])], 100).unwrap()
    }

    #[test]
    fn closure_sizes() {
        let c2 = FiniteGroup::generate(2, vec![perm(2, &[&[0, 1]])], 10).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(s3().order(), 6);
        assert_eq!(FiniteGroup::generate(5, vec![], 10).unwrap().order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::generate(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[1, 2]])], 5);
        assert!(matches!(err, Err(GroupError::TooLarge { cap: 5 })));
    }

    #[test]
    fn identity_is_first_and_table_is_consistent() {
        let g = d4();
        assert!(g.element(0).is_identity());
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..g.order() {
                let p = g.element(a).compose(g.element(b)).unwrap();
                assert_eq!(g.element(g.mul(a, b)), &p);
            }
        }
    }

    #[test]
    fn enumeration_ignores_generator_order() {
        let a = FiniteGroup::generate(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[1, 2]])], 10).unwrap();
        let b = FiniteGroup::generate(3, vec![perm(3, &[&[1, 2]]), perm(3, &[&[0, 1]])], 10).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn subgroups_of_s3() {
        let g = s3();
        let c3 = subgroup_generated(&g, &[perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(is_normal(&g, &c3).unwrap());
        let nc = normal_closure(&g, &[perm(3, &[&[0, 1]])]).unwrap();
        assert_eq!(nc.order(), 6);
        let t = subgroup_generated(&g, &[perm(3, &[&[0, 1]])]).unwrap();
        assert!(!is_normal(&g, &t).unwrap());
    }

    #[test]
    fn foreign_generator_is_rejected() {
        let g = s3();
        assert!(subgroup_generated(&g, &[perm(3, &[&[0, 1, 2]]), perm(3, &[])]).is_ok());
        let c3 = subgroup_generated(&g, &[perm(3, &[&[0, 1, 2]])]).unwrap();
        assert!(subgroup_generated(&c3, &[perm(3, &[&[0, 1]])]).is_err());
    }

    #[test]
    fn commutator_subgroups() {
        let g = s3();
        let a3 = subgroup_generated(&g, &[perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(commutator_subgroup_rel(&g, &a3, &g).unwrap(), a3);
        let d = d4();
        let dd = commutator_subgroup_rel(&d, &d, &d).unwrap();
        assert_eq!(dd.order(), 2);
        assert_eq!(dd, center(&d));
        let c4 = FiniteGroup::generate(4, vec![perm(4, &[&[0, 1, 2, 3]])], 10).unwrap();
        assert_eq!(derived_subgroup(&c4).order(), 1);
    }

    #[test]
    fn commutator_orientation_does_not_matter() {
        let g = d4();
        let all: Vec<usize> = (0..g.order()).collect();
        let sub = g.closure(&[g.require_index(&perm(4, &[&[0, 2]])).unwrap()]);
        let ab = g.commutator_indices(&sub, &all);
        let ba = g.commutator_indices(&all, &sub);
        assert_eq!(ab, ba);
    }

    #[test]
    fn direct_product_orders() {
        let c2 = FiniteGroup::generate(2, vec![perm(2, &[&[0, 1]])], 10).unwrap();
        let c3 = FiniteGroup::generate(3, vec![perm(3, &[&[0, 1, 2]])], 10).unwrap();
        let p = DirectProduct::new(&c2, &c3).unwrap();
        assert_eq!(p.group.order(), 6);
        assert!(p.group.is_abelian());
        for k in 0..6 {
            let (a, b) = p.components(k);
            assert_eq!(p.pair(a, b), k);
        }
    }

    #[test]
    fn regular_representation_from_table() {
        let g = d4();
        let n = g.order();
        let table: Vec<u32> = (0..n * n).map(|k| g.mul(k / n, k % n) as u32).collect();
        let r = FiniteGroup::from_cayley_table(n, &table).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(r.order_histogram(), g.order_histogram());
    }
}
