//! Pairs of groups, actions, and relative central extensions.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::hom::{first_non_normal, for_each_hom, GroupHom};
use crate::perm::Permutation;

/// A group together with a normal subgroup.
#[derive(Clone, Debug)]
pub struct GroupPair {
    g: Arc<FiniteGroup>,
    n: Arc<FiniteGroup>,
    n_in_g: Vec<usize>,
    g_to_n: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl GroupPair {
    pub fn new(g: Arc<FiniteGroup>, n: Arc<FiniteGroup>) -> Result<Self> {
        let n_in_g = g.indices_of(&n)?;
        if !g.is_subgroup_indices(&n_in_g) {
            return Err(GroupError::NotASubgroup("N is not closed inside G".into()));
        }
        if let Some((h, x)) = first_non_normal(&g, &n_in_g) {
            return Err(GroupError::NotNormal {
                element: g.element(h).to_string(),
                by: g.element(x).to_string(),
                conjugate: g.element(g.conj(h, x)).to_string(),
            });
        }
        let mut g_to_n = vec![NONE; g.order()];
        for (k, &i) in n_in_g.iter().enumerate() {
            g_to_n[i] = k as u32;
        }
        Ok(GroupPair { g, n, n_in_g, g_to_n })
    }

    /// Pair whose normal subgroup is given by sorted element indices of `g`.
    pub fn from_indices(g: Arc<FiniteGroup>, n_indices: &[usize]) -> Result<Self> {
        let n = Arc::new(g.subgroup_from_indices(n_indices));
        Self::new(g, n)
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn n(&self) -> &Arc<FiniteGroup> {
        &self.n
    }

    /// Positions in `G` of the elements of `N`, in `N`'s element order.
    pub fn n_in_g(&self) -> &[usize] {
        &self.n_in_g
    }

    /// Position in `N` of an element of `G`, if it lies in `N`.
    pub fn n_index(&self, g: usize) -> Option<usize> {
        let k = self.g_to_n[g];
        (k != NONE).then_some(k as usize)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.g_to_n[g] != NONE
    }

    /// `[N, G]` as element indices of `G`.
    pub fn commutator_indices(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.g.order()).collect();
        self.g.commutator_indices(&self.n_in_g, &all)
    }

    pub fn commutator(&self) -> FiniteGroup {
        self.g.subgroup_from_indices(&self.commutator_indices())
    }

    pub fn is_perfect(&self) -> bool {
        self.commutator_indices().len() == self.n.order()
    }

    pub fn is_absolute(&self) -> bool {
        self.n.order() == self.g.order()
    }
}

pub fn make_pair(g: &Arc<FiniteGroup>, n: &Arc<FiniteGroup>) -> Result<GroupPair> {
    GroupPair::new(g.clone(), n.clone())
}

pub fn is_perfect_pair(p: &GroupPair) -> bool {
    p.is_perfect()
}

/// A right action `(m, g) ↦ m^g` of `G` on `M` by automorphisms, stored as a full table.
#[derive(Clone, Debug)]
pub struct GroupAction {
    m: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    table: Vec<u32>,
}

impl GroupAction {
    /// Validates identity, compatibility and the automorphism property.
    pub fn new(m: Arc<FiniteGroup>, g: Arc<FiniteGroup>, table: Vec<u32>) -> Result<Self> {
        let a = GroupAction { m, g, table };
        a.validate()?;
        Ok(a)
    }

    /// Action determined by the permutation of `M`'s element indices induced
    /// by each stored generator of `G`.
    pub fn from_generator_images(m: Arc<FiniteGroup>, g: Arc<FiniteGroup>, images: &[Vec<u32>]) -> Result<Self> {
        let gens = g.generator_indices();
        if images.len() != gens.len() {
            return Err(GroupError::InvalidAction(format!(
                "expected {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        let table = extend_action(&m, &g, &gens, images)?;
        Self::new(m, g, table)
    }

    pub fn trivial(m: Arc<FiniteGroup>, g: Arc<FiniteGroup>) -> Self {
        let table = (0..m.order() as u32)
            .flat_map(|x| std::iter::repeat_n(x, g.order()))
            .collect();
        GroupAction { m, g, table }
    }

    /// Conjugation `n^g = g^-1 n g` of `G` on its normal subgroup `N`.
    pub fn conjugation(pair: &GroupPair) -> Self {
        let (g, n) = (pair.g(), pair.n());
        let mut table = vec![0u32; n.order() * g.order()];
        for (k, &x) in pair.n_in_g().iter().enumerate() {
            for y in 0..g.order() {
                table[k * g.order() + y] = pair.n_index(g.conj(x, y)).expect("N is normal") as u32;
            }
        }
        GroupAction {
            m: n.clone(),
            g: g.clone(),
            table,
        }
    }

    pub fn m(&self) -> &Arc<FiniteGroup> {
        &self.m
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    #[inline]
    pub fn act(&self, m: usize, g: usize) -> usize {
        self.table[m * self.g.order() + g] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// The permutation of `M`'s element indices induced by `g`.
    pub fn permutation_of(&self, g: usize) -> Vec<u32> {
        (0..self.m.order()).map(|m| self.act(m, g) as u32).collect()
    }

    fn validate(&self) -> Result<()> {
        let (m, g) = (&self.m, &self.g);
        if self.table.len() != m.order() * g.order() || self.table.iter().any(|&x| x as usize >= m.order()) {
            return Err(GroupError::InvalidAction("action table has wrong shape".into()));
        }
        for x in 0..m.order() {
            if self.act(x, 0) != x {
                return Err(GroupError::InvalidAction(format!(
                    "identity of G moves {}",
                    m.element(x)
                )));
            }
        }
        let ggens = g.generator_indices();
        for y in 0..g.order() {
            for &s in &ggens {
                for x in 0..m.order() {
                    if self.act(self.act(x, y), s) != self.act(x, g.mul(y, s)) {
                        return Err(GroupError::InvalidAction(format!(
                            "(m^g)^h differs from m^(gh) at m = {}, g = {}, h = {}",
                            m.element(x),
                            g.element(y),
                            g.element(s)
                        )));
                    }
                }
            }
        }
        let mgens = m.generator_indices();
        for y in 0..g.order() {
            let mut seen = vec![false; m.order()];
            for x in 0..m.order() {
                let t = self.act(x, y);
                if seen[t] {
                    return Err(GroupError::InvalidAction(format!(
                        "{} does not act bijectively",
                        g.element(y)
                    )));
                }
                seen[t] = true;
                for &s in &mgens {
                    if self.act(m.mul(x, s), y) != m.mul(t, self.act(s, y)) {
                        return Err(GroupError::InvalidAction(format!(
                            "{} does not act by an automorphism",
                            g.element(y)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Extends generator actions along the Cayley graph of `G`.
pub(crate) fn extend_action(
    m: &FiniteGroup,
    g: &FiniteGroup,
    gens: &[usize],
    images: &[Vec<u32>],
) -> Result<Vec<u32>> {
    let (mo, go) = (m.order(), g.order());
    if images.iter().any(|p| p.len() != mo || p.iter().any(|&x| x as usize >= mo)) {
        return Err(GroupError::InvalidAction("generator image is not a map on M".into()));
    }
    let mut table = vec![NONE; mo * go];
    for x in 0..mo {
        table[x * go] = x as u32;
    }
    let mut defined = vec![false; go];
    defined[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for (&s, img) in gens.iter().zip(images) {
            let ys = g.mul(y, s);
            if !defined[ys] {
                defined[ys] = true;
                for x in 0..mo {
                    table[x * go + ys] = img[table[x * go + y] as usize];
                }
                queue.push(ys);
            } else {
                for x in 0..mo {
                    if table[x * go + ys] != img[table[x * go + y] as usize] {
                        return Err(GroupError::InvalidAction(
                            "generator images do not define an action of G".into(),
                        ));
                    }
                }
            }
        }
    }
    if queue.len() != go {
        return Err(GroupError::InvalidAction("images given for a non-generating set".into()));
    }
    Ok(table)
}

/// Subgroup of `M` generated by the `G`-commutators `m^g m^-1`.
pub fn g_commutator_indices(a: &GroupAction) -> Vec<usize> {
    let m = &a.m;
    let mut comms = Vec::new();
    let mut seen = vec![false; m.order()];
    for x in 0..m.order() {
        for y in 0..a.g.order() {
            let c = m.mul(a.act(x, y), m.inv(x));
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    m.closure(&comms)
}

pub fn g_commutator_subgroup(a: &GroupAction) -> FiniteGroup {
    a.m.subgroup_from_indices(&g_commutator_indices(a))
}

/// Elements of `M` fixed by every element of `G`.
pub fn g_center_indices(a: &GroupAction) -> Vec<usize> {
    let ggens = a.g.generator_indices();
    (0..a.m.order())
        .filter(|&x| ggens.iter().all(|&s| a.act(x, s) == x))
        .collect()
}

pub fn g_center(a: &GroupAction) -> FiniteGroup {
    a.m.subgroup_from_indices(&g_center_indices(a))
}

/// A counterexample to one of the extension axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub m: Option<Permutation>,
    pub m_prime: Option<Permutation>,
    pub g: Option<Permutation>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: &'static str,
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RceReport {
    pub axioms: Vec<AxiomVerdict>,
}

impl RceReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }

    pub fn first_failure(&self) -> Option<&AxiomVerdict> {
        self.axioms.iter().find(|a| !a.holds)
    }
}

/// Exhaustively checks the four extension axioms for `σ: M → G` and an action of `G` on `M`.
pub fn check_rce(sigma: &GroupHom, action: &GroupAction, pair: &GroupPair) -> RceReport {
    let m = sigma.domain();
    let g = pair.g();
    let shape_ok = **sigma.codomain() == **g && *action.m == **m && *action.g == **g;
    if !shape_ok {
        let bad = AxiomVerdict {
            axiom: "shape",
            holds: false,
            witness: Some(AxiomWitness {
                m: None,
                m_prime: None,
                g: None,
                detail: "sigma and action do not share M and G with the pair".into(),
            }),
        };
        return RceReport { axioms: vec![bad] };
    }
    let elem = |grp: &FiniteGroup, i: usize| Some(grp.element(i).clone());

    // (i) image of sigma is N
    let image = sigma.image_indices();
    let i_holds = image == pair.n_in_g();
    let i_witness = (!i_holds).then(|| {
        let outside = (0..m.order()).find(|&x| !pair.contains(sigma.apply(x)));
        let missing = pair.n_in_g().iter().find(|y| !image.contains(y));
        AxiomWitness {
            m: outside.and_then(|x| elem(m, x)),
            m_prime: None,
            g: missing.and_then(|&y| elem(g, y)),
            detail: match outside {
                Some(_) => "sigma(m) lies outside N".into(),
                None => "an element g of N is not in the image".into(),
            },
        }
    });

    // (ii) sigma(m^g) = g^-1 sigma(m) g
    let mut ii = None;
    'outer2: for x in 0..m.order() {
        for y in 0..g.order() {
            if sigma.apply(action.act(x, y)) != g.conj(sigma.apply(x), y) {
                ii = Some(AxiomWitness {
                    m: elem(m, x),
                    m_prime: None,
                    g: elem(g, y),
                    detail: "sigma(m^g) differs from g^-1 sigma(m) g".into(),
                });
                break 'outer2;
            }
        }
    }

    // (iii) m'^sigma(m) = m^-1 m' m
    let mut iii = None;
    'outer3: for x in 0..m.order() {
        let s = sigma.apply(x);
        for xp in 0..m.order() {
            if action.act(xp, s) != m.conj(xp, x) {
                iii = Some(AxiomWitness {
                    m: elem(m, x),
                    m_prime: elem(m, xp),
                    g: elem(g, s),
                    detail: "m'^sigma(m) differs from m^-1 m' m".into(),
                });
                break 'outer3;
            }
        }
    }

    // (iv) kernel fixed by G
    let mut iv = None;
    'outer4: for k in sigma.kernel_indices() {
        for y in 0..g.order() {
            if action.act(k, y) != k {
                iv = Some(AxiomWitness {
                    m: elem(m, k),
                    m_prime: None,
                    g: elem(g, y),
                    detail: "kernel element moved by the action".into(),
                });
                break 'outer4;
            }
        }
    }

    let verdict = |axiom, w: Option<AxiomWitness>| AxiomVerdict {
        axiom,
        holds: w.is_none(),
        witness: w,
    };
    RceReport {
        axioms: vec![
            verdict("i", i_witness),
            verdict("ii", ii),
            verdict("iii", iii),
            verdict("iv", iv),
        ],
    }
}

/// A validated relative central extension of a pair.
#[derive(Clone, Debug)]
pub struct RelCentralExt {
    pair: GroupPair,
    sigma: GroupHom,
    action: GroupAction,
}

impl RelCentralExt {
    pub fn new(pair: GroupPair, sigma: GroupHom, action: GroupAction) -> Result<Self> {
        let report = check_rce(&sigma, &action, &pair);
        if let Some(f) = report.first_failure() {
            return Err(GroupError::Hypothesis(format!(
                "axiom ({}) fails: {}",
                f.axiom,
                f.witness.as_ref().map_or("", |w| w.detail.as_str())
            )));
        }
        Ok(RelCentralExt { pair, sigma, action })
    }

    pub(crate) fn new_unchecked(pair: GroupPair, sigma: GroupHom, action: GroupAction) -> Self {
        debug_assert!(check_rce(&sigma, &action, &pair).all_pass());
        RelCentralExt { pair, sigma, action }
    }

    pub fn pair(&self) -> &GroupPair {
        &self.pair
    }

    pub fn sigma(&self) -> &GroupHom {
        &self.sigma
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn m(&self) -> &Arc<FiniteGroup> {
        self.sigma.domain()
    }

    pub fn report(&self) -> RceReport {
        check_rce(&self.sigma, &self.action, &self.pair)
    }
}

/// Inclusion `N → G` with the conjugation action.
pub fn conjugation_rce(pair: &GroupPair) -> RelCentralExt {
    let sigma = GroupHom::new_unchecked(
        pair.n().clone(),
        pair.g().clone(),
        pair.n_in_g().iter().map(|&i| i as u32).collect(),
    );
    let action = GroupAction::conjugation(pair);
    RelCentralExt::new_unchecked(pair.clone(), sigma, action)
}

/// `m^g = x^-1 m x` for any `x` with `σ(x) = g`, for a surjection `σ` with central kernel.
pub fn conjugation_lift_action(sigma: &GroupHom) -> Result<GroupAction> {
    let (m, g) = (sigma.domain(), sigma.codomain());
    if !sigma.is_surjective() {
        return Err(GroupError::Hypothesis("sigma is not surjective".into()));
    }
    let kernel = sigma.kernel_indices();
    let central = kernel
        .iter()
        .all(|&k| (0..m.order()).all(|x| m.mul(k, x) == m.mul(x, k)));
    if !central {
        return Err(GroupError::Hypothesis("kernel of sigma is not central".into()));
    }
    let mut lift = vec![usize::MAX; g.order()];
    for x in 0..m.order() {
        let y = sigma.apply(x);
        if lift[y] == usize::MAX {
            lift[y] = x;
        }
    }
    let mut table = vec![0u32; m.order() * g.order()];
    for x in 0..m.order() {
        for y in 0..g.order() {
            table[x * g.order() + y] = m.conj(x, lift[y]) as u32;
        }
    }
    // independence of the chosen lift, checked directly
    for z in 0..m.order() {
        let y = sigma.apply(z);
        for x in 0..m.order() {
            if m.conj(x, z) as u32 != table[x * g.order() + y] {
                return Err(GroupError::InvalidAction("conjugation depends on the lift".into()));
            }
        }
    }
    GroupAction::new(m.clone(), g.clone(), table)
}

/// Failure witness for a morphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    Shape(String),
    Sigma { m: Permutation },
    Equivariance { m: Permutation, g: Permutation },
}

/// Checks `σ'φ = σ` and `φ(m^g) = φ(m)^g` for all `m`, `g`.
pub fn rce_morphism_check(phi: &GroupHom, r: &RelCentralExt, r2: &RelCentralExt) -> std::result::Result<(), MorphismFailure> {
    if **phi.domain() != **r.m() || **phi.codomain() != **r2.m() || **r.pair.g() != **r2.pair.g() {
        return Err(MorphismFailure::Shape("map does not connect the two extensions".into()));
    }
    let g = r.pair.g();
    for x in 0..r.m().order() {
        if r2.sigma.apply(phi.apply(x)) != r.sigma.apply(x) {
            return Err(MorphismFailure::Sigma {
                m: r.m().element(x).clone(),
            });
        }
        for y in 0..g.order() {
            if phi.apply(r.action.act(x, y)) != r2.action.act(phi.apply(x), y) {
                return Err(MorphismFailure::Equivariance {
                    m: r.m().element(x).clone(),
                    g: g.element(y).clone(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MorphismSearch {
    pub witness: Option<GroupHom>,
    /// True when exactly one morphism exists.
    pub unique: bool,
    /// Number of morphisms found, stopping at 2.
    pub count: usize,
}

/// Backtracking search for morphisms `r → r2` in the category of extensions of the pair.
pub fn find_rce_morphism(r: &RelCentralExt, r2: &RelCentralExt) -> Result<MorphismSearch> {
    Ok(search_morphisms(r, r2, 2))
}

fn search_morphisms(r: &RelCentralExt, r2: &RelCentralExt, limit: usize) -> MorphismSearch {
    let (m, m2) = (r.m(), r2.m());
    let g = r.pair.g();
    let gens = m.small_generating_set();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let target = r.sigma.apply(x);
            let o = m.element_order(x);
            (0..m2.order())
                .filter(|&y| r2.sigma.apply(y) == target && o % m2.element_order(y) == 0)
                .collect()
        })
        .collect();
    let ggens = g.generator_indices();
    let mut found: Vec<Vec<u32>> = Vec::new();
    for_each_hom(m, m2, &gens, &cands, false, &mut |map| {
        let equivariant = gens.iter().all(|&x| {
            ggens
                .iter()
                .all(|&s| map[r.action.act(x, s)] as usize == r2.action.act(map[x] as usize, s))
        });
        if equivariant {
            found.push(map.to_vec());
        }
        found.len() < limit
    });
    let count = found.len();
    let witness = found
        .into_iter()
        .next()
        .map(|map| GroupHom::new_unchecked(m.clone(), m2.clone(), map));
    if let Some(w) = &witness {
        debug_assert!(rce_morphism_check(w, r, r2).is_ok());
    }
    MorphismSearch {
        witness,
        unique: count == 1,
        count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{d4, perm, s3};
    use crate::group::center;
    use crate::hom::quotient;

    fn s3_a3() -> GroupPair {
        let g = Arc::new(s3());
        let a3 = Arc::new(crate::group::subgroup_generated(&g, &[perm(3, &[&[0, 1, 2]])]).unwrap());
        make_pair(&g, &a3).unwrap()
    }

    fn d4_over_v4() -> (GroupPair, GroupHom) {
        let d = Arc::new(d4());
        let (q, proj) = quotient(&d, &center(&d)).unwrap();
        (make_pair(&q, &q).unwrap(), proj)
    }

    #[test]
    fn pair_validation() {
        s3_a3();
        let g = Arc::new(s3());
        let t = Arc::new(crate::group::subgroup_generated(&g, &[perm(3, &[&[0, 1]])]).unwrap());
        assert!(matches!(make_pair(&g, &t), Err(GroupError::NotNormal { .. })));
        let one = Arc::new(FiniteGroup::trivial(3));
        make_pair(&g, &one).unwrap();
    }

    #[test]
    fn perfect_pairs() {
        assert!(is_perfect_pair(&s3_a3()));
        let g = Arc::new(s3());
        assert!(!is_perfect_pair(&make_pair(&g, &g).unwrap()));
        let one = Arc::new(FiniteGroup::trivial(3));
        assert!(is_perfect_pair(&make_pair(&g, &one).unwrap()));
    }

    #[test]
    fn g_commutators_and_centers() {
        let p = s3_a3();
        let conj = GroupAction::conjugation(&p);
        assert_eq!(g_commutator_subgroup(&conj).order(), 3);
        assert_eq!(g_center(&conj).order(), 1);
        let triv = GroupAction::trivial(p.n().clone(), p.g().clone());
        assert_eq!(g_commutator_subgroup(&triv).order(), 1);
        assert_eq!(g_center(&triv).order(), 3);
        let d = Arc::new(d4());
        let dp = make_pair(&d, &d).unwrap();
        let dc = GroupAction::conjugation(&dp);
        assert_eq!(g_commutator_subgroup(&dc).order(), 2);
        assert_eq!(g_center(&dc), center(&d));
    }

    #[test]
    fn conjugation_extensions_pass() {
        let r = conjugation_rce(&s3_a3());
        assert!(r.report().all_pass());
        let g = Arc::new(s3());
        assert!(conjugation_rce(&make_pair(&g, &g).unwrap()).report().all_pass());
    }

    #[test]
    fn lifted_action_and_corruption() {
        let (pair, proj) = d4_over_v4();
        let action = conjugation_lift_action(&proj).unwrap();
        let sigma = GroupHom::new(proj.domain().clone(), pair.g().clone(), proj.table().to_vec()).unwrap();
        let report = check_rce(&sigma, &action, &pair);
        assert!(report.all_pass());
        let triv = GroupAction::trivial(sigma.domain().clone(), pair.g().clone());
        let bad = check_rce(&sigma, &triv, &pair);
        let f = bad.first_failure().unwrap();
        assert_eq!(f.axiom, "iii");
        let w = f.witness.as_ref().unwrap();
        assert!(w.m.is_some() && w.m_prime.is_some());
    }

    #[test]
    fn lifted_action_rejects_bad_input() {
        let g = Arc::new(s3());
        let p = s3_a3();
        let incl = GroupHom::inclusion(p.n().clone(), g).unwrap();
        assert!(conjugation_lift_action(&incl).is_err());
    }

    #[test]
    fn morphisms_between_extensions() {
        let (pair, proj) = d4_over_v4();
        let action = conjugation_lift_action(&proj).unwrap();
        let cover = RelCentralExt::new(pair.clone(), proj.clone(), action).unwrap();
        let base = conjugation_rce(&pair);
        let identity = GroupHom::identity(cover.m().clone());
        assert!(rce_morphism_check(&identity, &cover, &cover).is_ok());
        let s = find_rce_morphism(&cover, &base).unwrap();
        let w = s.witness.unwrap();
        assert!(rce_morphism_check(&w, &cover, &base).is_ok());
        let trivial_map = GroupHom::new(cover.m().clone(), base.m().clone(), vec![0; 8]).unwrap();
        assert!(matches!(
            rce_morphism_check(&trivial_map, &cover, &base),
            Err(MorphismFailure::Sigma { .. })
        ));
    }

    #[test]
    fn self_morphism_search() {
        let r = conjugation_rce(&s3_a3());
        let s = find_rce_morphism(&r, &r).unwrap();
        assert!(s.unique);
        assert_eq!(s.witness.unwrap().table(), GroupHom::identity(r.m().clone()).table());
    }

    #[test]
    fn action_from_generator_images() {
        let p = s3_a3();
        let conj = GroupAction::conjugation(&p);
        let imgs: Vec<Vec<u32>> = p.g().generator_indices().iter().map(|&s| conj.permutation_of(s)).collect();
        let rebuilt = GroupAction::from_generator_images(p.n().clone(), p.g().clone(), &imgs).unwrap();
        assert_eq!(rebuilt.table(), conj.table());
        let bad = vec![vec![1, 0, 2]; imgs.len()];
        assert!(GroupAction::from_generator_images(p.n().clone(), p.g().clone(), &bad).is_err());
    }
}
