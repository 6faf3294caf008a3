//! Homomorphisms stored as total element tables, with backtracking search
//! over generator images.

use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// Default order cap for isomorphism and automorphism searches.
pub const DEFAULT_ISO_CAP: usize = 64;

#[derive(Clone)]
pub struct GroupHom {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    map: Vec<u32>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHom")
            .field("domain_order", &self.domain.order())
            .field("codomain_order", &self.codomain.order())
            .field("map", &self.map)
            .finish()
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.domain == other.domain && self.codomain == other.codomain
    }
}

impl GroupHom {
    /// Validates the homomorphism property over all pairs.
    pub fn new(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, map: Vec<u32>) -> Result<Self> {
        if map.len() != domain.order() || map.iter().any(|&m| m as usize >= codomain.order()) {
            return Err(GroupError::NotAHomomorphism("map table has wrong shape".into()));
        }
        for x in 0..domain.order() {
            for y in 0..domain.order() {
                let lhs = map[domain.mul(x, y)] as usize;
                let rhs = codomain.mul(map[x] as usize, map[y] as usize);
                if lhs != rhs {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "image of {} * {} differs from product of images",
                        domain.element(x),
                        domain.element(y)
                    )));
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            map,
        })
    }

    pub(crate) fn new_unchecked(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, map: Vec<u32>) -> Self {
        debug_assert_eq!(map.len(), domain.order());
        GroupHom {
            domain,
            codomain,
            map,
        }
    }

    /// Extends images of selected domain elements (which must generate the domain).
    pub fn from_images(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        sources: &[usize],
        images: &[usize],
    ) -> Result<Self> {
        let map = extend_map(&domain, &codomain, sources, images).ok_or_else(|| {
            GroupError::NotAHomomorphism("generator images do not extend to a homomorphism".into())
        })?;
        Ok(GroupHom {
            domain,
            codomain,
            map,
        })
    }

    /// Homomorphism determined by the images of the domain's stored generators.
    pub fn from_generator_permutations(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: &[Permutation],
    ) -> Result<Self> {
        let sources = domain.generator_indices();
        if sources.len() != images.len() {
            return Err(GroupError::NotAHomomorphism(format!(
                "expected {} generator images, got {}",
                sources.len(),
                images.len()
            )));
        }
        let targets: Vec<usize> = images
            .iter()
            .map(|p| codomain.require_index(p))
            .collect::<Result<_>>()?;
        Self::from_images(domain, codomain, &sources, &targets)
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = (0..g.order() as u32).collect();
        GroupHom {
            domain: g.clone(),
            codomain: g,
            map,
        }
    }

    /// Inclusion of a subgroup given as its own group object.
    pub fn inclusion(sub: Arc<FiniteGroup>, parent: Arc<FiniteGroup>) -> Result<Self> {
        let map = parent.indices_of(&sub)?.into_iter().map(|i| i as u32).collect();
        Ok(GroupHom {
            domain: sub,
            codomain: parent,
            map,
        })
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    pub fn table(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn apply_perm(&self, p: &Permutation) -> Result<Permutation> {
        let i = self.domain.require_index(p)?;
        Ok(self.codomain.element(self.apply(i)).clone())
    }

    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.domain.order()).filter(|&x| self.map[x] == 0).collect()
    }

    pub fn image_indices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.codomain.order()];
        for &m in &self.map {
            seen[m as usize] = true;
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    pub fn kernel(&self) -> FiniteGroup {
        self.domain.subgroup_from_indices(&self.kernel_indices())
    }

    pub fn image(&self) -> FiniteGroup {
        self.codomain.subgroup_from_indices(&self.image_indices())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_indices().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_indices().len() == self.codomain.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if *self.codomain != *other.domain {
            return Err(GroupError::NotAHomomorphism("composition of mismatched maps".into()));
        }
        let map = self.map.iter().map(|&x| other.map[x as usize]).collect();
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            map,
        })
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_isomorphism() {
            return Err(GroupError::NotAHomomorphism("map is not bijective".into()));
        }
        let mut inv = vec![0u32; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Ok(GroupHom {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            map: inv,
        })
    }
}

/// Extends `sources[i] -> images[i]` along the Cayley graph; `None` if inconsistent
/// or if the sources do not generate the domain.
pub(crate) fn extend_map(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    sources: &[usize],
    images: &[usize],
) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; dom.order()];
    map[0] = 0;
    let mut list = vec![0usize];
    if !extend_partial(dom, cod, sources, images, &mut map, &mut list) {
        return None;
    }
    (list.len() == dom.order()).then_some(map)
}

/// Grows a partial map defined on `list` (a subgroup) by closing under `sources`.
/// Returns false on the first inconsistency. On success `list` is the closure.
fn extend_partial(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    sources: &[usize],
    images: &[usize],
    map: &mut [u32],
    list: &mut Vec<usize>,
) -> bool {
    let mut head = 0;
    while head < list.len() {
        let x = list[head];
        head += 1;
        let fx = map[x] as usize;
        for (&s, &t) in sources.iter().zip(images) {
            let y = dom.mul(x, s);
            let fy = cod.mul(fx, t) as u32;
            if map[y] == u32::MAX {
                map[y] = fy;
                list.push(y);
            } else if map[y] != fy {
                return false;
            }
        }
    }
    true
}

/// Backtracking enumeration of homomorphisms determined by images of `gens`.
///
/// `candidates[i]` lists the allowed images of `gens[i]`, tried in order.
/// With `injective`, every partial map must stay injective.
/// `visit` receives each full map table and returns false to stop.
pub(crate) fn for_each_hom(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    injective: bool,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) {
    let mut map = vec![u32::MAX; dom.order()];
    map[0] = 0;
    let mut chosen = Vec::with_capacity(gens.len());
    let mut hit = vec![false; if injective { cod.order() } else { 0 }];
    if injective {
        hit[0] = true;
    }
    recurse(dom, cod, gens, candidates, injective, &mut map, &[0], &mut chosen, &mut hit, visit);
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    injective: bool,
    map: &mut Vec<u32>,
    list: &[usize],
    chosen: &mut Vec<usize>,
    hit: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    let depth = chosen.len();
    if depth == gens.len() {
        if list.len() != dom.order() {
            return true;
        }
        return visit(map);
    }
    for &c in &candidates[depth] {
        chosen.push(c);
        let mut next = list.to_vec();
        let mut ok = extend_partial(dom, cod, &gens[..=depth], chosen, map, &mut next);
        let mut marked = Vec::new();
        if ok && injective {
            for &x in &next[list.len()..] {
                let y = map[x] as usize;
                if hit[y] {
                    ok = false;
                    break;
                }
                hit[y] = true;
                marked.push(y);
            }
        }
        if ok && !recurse(dom, cod, gens, candidates, injective, map, &next, chosen, hit, visit) {
            return false;
        }
        for y in marked {
            hit[y] = false;
        }
        for &x in &next[list.len()..] {
            map[x] = u32::MAX;
        }
        chosen.pop();
    }
    true
}

/// Candidate images ordered by element index, filtered by an order predicate.
fn candidates_by_order(cod: &FiniteGroup, order: usize, exact: bool) -> Vec<usize> {
    (0..cod.order())
        .filter(|&y| {
            let o = cod.element_order(y);
            if exact {
                o == order
            } else {
                order.is_multiple_of(o)
            }
        })
        .collect()
}

fn check_cap(g: &FiniteGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded {
            what: "isomorphism search order",
            cap,
        });
    }
    Ok(())
}

/// All homomorphisms `dom -> cod` (deterministic order).
pub fn all_homomorphisms(dom: &Arc<FiniteGroup>, cod: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<GroupHom>> {
    check_cap(dom, cap)?;
    check_cap(cod, cap)?;
    let gens = dom.small_generating_set();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| candidates_by_order(cod, dom.element_order(g), false))
        .collect();
    let mut out = Vec::new();
    for_each_hom(dom, cod, &gens, &cands, false, &mut |m| {
        out.push(GroupHom::new_unchecked(dom.clone(), cod.clone(), m.to_vec()));
        true
    });
    Ok(out)
}

/// A witness isomorphism `g -> h`, or `None` when the groups are not isomorphic.
pub fn isomorphism_with_cap(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>, cap: usize) -> Result<Option<GroupHom>> {
    if g.order() != h.order() || g.order_histogram() != h.order_histogram() {
        return Ok(None);
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    check_cap(g, cap)?;
    let gens = g.small_generating_set();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| candidates_by_order(h, g.element_order(x), true))
        .collect();
    let mut found = None;
    for_each_hom(g, h, &gens, &cands, true, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    Ok(found.map(|m| GroupHom::new_unchecked(g.clone(), h.clone(), m)))
}

pub fn isomorphism(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Result<Option<GroupHom>> {
    isomorphism_with_cap(g, h, DEFAULT_ISO_CAP)
}

pub fn are_isomorphic(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Result<bool> {
    isomorphism(g, h).map(|w| w.is_some())
}

/// All automorphisms of `g`, ordered by their images of a fixed generating set.
pub fn automorphism_group_with_cap(g: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<GroupHom>> {
    check_cap(g, cap)?;
    let gens = g.small_generating_set();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| candidates_by_order(g, g.element_order(x), true))
        .collect();
    let mut out = Vec::new();
    for_each_hom(g, g, &gens, &cands, true, &mut |m| {
        out.push(GroupHom::new_unchecked(g.clone(), g.clone(), m.to_vec()));
        true
    });
    Ok(out)
}

pub fn automorphism_group(g: &Arc<FiniteGroup>) -> Result<Vec<GroupHom>> {
    automorphism_group_with_cap(g, DEFAULT_ISO_CAP)
}

/// Quotient by a normal subgroup, realized as the regular representation on cosets.
pub fn quotient(g: &Arc<FiniteGroup>, n: &FiniteGroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    let idx = g.indices_of(n)?;
    if !g.is_subgroup_indices(&idx) {
        return Err(GroupError::NotASubgroup("quotient by a non-subgroup".into()));
    }
    if let Some((h, x)) = first_non_normal(g, &idx) {
        let c = g.conj(h, x);
        return Err(GroupError::NotNormal {
            element: g.element(h).to_string(),
            by: g.element(x).to_string(),
            conjugate: g.element(c).to_string(),
        });
    }
    quotient_by_indices(g, &idx)
}

pub(crate) fn first_non_normal(g: &FiniteGroup, idx: &[usize]) -> Option<(usize, usize)> {
    let mut member = vec![false; g.order()];
    for &i in idx {
        member[i] = true;
    }
    let gens = g.generator_indices();
    for &h in idx {
        for &x in &gens {
            if !member[g.conj(h, x)] {
                return Some((h, x));
            }
        }
    }
    None
}

pub(crate) fn quotient_by_indices(g: &Arc<FiniteGroup>, idx: &[usize]) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &k in idx {
            coset[g.mul(x, k)] = c;
        }
    }
    let q = reps.len();
    let mut table = vec![0u32; q * q];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            table[a * q + b] = coset[g.mul(ra, rb)] as u32;
        }
    }
    let quot = Arc::new(FiniteGroup::from_cayley_table(q, &table)?);
    // coset c corresponds to left multiplication by c on the coset labels
    let position: Vec<u32> = (0..q)
        .map(|c| {
            let p = Permutation::from_images_unchecked((0..q).map(|x| table[c * q + x]).collect());
            quot.index_of(&p).expect("left translation lies in the quotient") as u32
        })
        .collect();
    let map = coset.iter().map(|&c| position[c]).collect();
    Ok((quot.clone(), GroupHom::new_unchecked(g.clone(), quot, map)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{d4, perm, s3};
    use crate::group::{center, direct_product};

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let c: Vec<u32> = (0..n as u32).collect();
        Arc::new(FiniteGroup::generate(n, vec![perm(n, &[&c])], 100).unwrap())
    }

    fn v4() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::generate(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])], 10).unwrap())
    }

    #[test]
    fn c4_is_not_v4() {
        assert!(isomorphism(&cyclic(4), &v4()).unwrap().is_none());
    }

    #[test]
    fn automorphisms_of_klein_four() {
        let auts = automorphism_group(&v4()).unwrap();
        assert_eq!(auts.len(), 6);
        for a in &auts {
            for b in &auts {
                let c = a.then(b).unwrap();
                assert!(auts.contains(&c));
            }
        }
    }

    #[test]
    fn quotient_of_d4_by_center_is_klein() {
        let g = Arc::new(d4());
        let z = center(&g);
        let (q, proj) = quotient(&g, &z).unwrap();
        assert_eq!(q.order(), 4);
        assert!((1..4).all(|i| q.element_order(i) == 2));
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel(), z);
        GroupHom::new(proj.domain().clone(), q.clone(), proj.table().to_vec()).unwrap();
    }

    #[test]
    fn quotient_by_non_normal_is_rejected() {
        let g = Arc::new(s3());
        let t = FiniteGroup::generate(3, vec![perm(3, &[&[0, 1]])], 10).unwrap();
        assert!(matches!(quotient(&g, &t), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = Arc::new(s3());
        let (q, _) = quotient(&g, &g).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn s3_matches_d6_mod_center() {
        let d6 = Arc::new(
            FiniteGroup::generate(6, vec![perm(6, &[&[0, 1, 2, 3, 4, 5]]), perm(6, &[&[1, 5], &[2, 4]])], 100)
                .unwrap(),
        );
        assert_eq!(d6.order(), 12);
        let (q, _) = quotient(&d6, &center(&d6)).unwrap();
        let iso = isomorphism(&Arc::new(s3()), &q).unwrap().unwrap();
        assert!(iso.is_isomorphism());
        GroupHom::new(iso.domain().clone(), iso.codomain().clone(), iso.table().to_vec()).unwrap();
    }

    #[test]
    fn homomorphism_count_c4_to_c2() {
        assert_eq!(all_homomorphisms(&cyclic(4), &cyclic(2), 64).unwrap().len(), 2);
        let v = v4();
        assert_eq!(all_homomorphisms(&v, &v, 64).unwrap().len(), 16);
    }

    #[test]
    fn invalid_table_is_rejected() {
        let c = cyclic(4);
        let bad = vec![0, 1, 1, 1];
        assert!(GroupHom::new(c.clone(), c, bad).is_err());
    }

    #[test]
    fn cap_is_reported() {
        let big = Arc::new(direct_product(&s3(), &d4()).unwrap());
        assert!(matches!(
            isomorphism_with_cap(&big, &big, 20),
            Err(GroupError::CapExceeded { .. })
        ));
    }
}
