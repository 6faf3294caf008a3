//! Isoclinism of pairs: search, construction from epimorphisms, and the
//! structural checks relating isoclinic perfect pairs.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::covering::{cover_hypothesis_failure, CoverWitness};
use crate::error::{GroupError, Result};
use crate::group::{DirectProduct, FiniteGroup};
use crate::hom::{for_each_hom, isomorphism, quotient_by_indices, GroupHom};
use crate::pair::GroupPair;

/// Outcome of a check whose hypotheses may fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

/// `Z(G,N)`: the elements of `N` commuting with all of `G`, as sorted indices in `G`.
pub fn pair_center_indices(p: &GroupPair) -> Vec<usize> {
    let g = p.g();
    p.n_in_g()
        .iter()
        .copied()
        .filter(|&n| (0..g.order()).all(|x| g.mul(x, n) == g.mul(n, x)))
        .collect()
}

pub fn pair_center(p: &GroupPair) -> FiniteGroup {
    p.g().subgroup_from_indices(&pair_center_indices(p))
}

/// Quotient and commutator data of a pair used by isoclinism.
#[derive(Clone, Debug)]
struct Sides {
    /// `G → G/Z(G,N)`.
    proj: GroupHom,
    /// Image of `N` in the quotient, sorted.
    n_image: Vec<usize>,
    /// `[G,N]` as sorted indices in `G`.
    comm: Vec<usize>,
    comm_group: Arc<FiniteGroup>,
}

fn sides(p: &GroupPair) -> Result<Sides> {
    let g = p.g();
    let (_, proj) = quotient_by_indices(g, &pair_center_indices(p))?;
    let mut n_image: Vec<usize> = p.n_in_g().iter().map(|&x| proj.apply(x)).collect();
    n_image.sort_unstable();
    n_image.dedup();
    let comm = p.commutator_indices();
    let comm_group = Arc::new(g.subgroup_from_indices(&comm));
    Ok(Sides {
        proj,
        n_image,
        comm,
        comm_group,
    })
}

/// Witness that `(G,N) ∼ (H,K)`.
#[derive(Clone, Debug)]
pub struct IsoclinismWitness {
    /// `G/Z(G,N) → H/Z(H,K)`.
    pub epsilon: GroupHom,
    /// `[G,N] → [H,K]`, on the element orderings of the two commutator subgroups.
    pub eta: GroupHom,
    /// `G → G/Z(G,N)`.
    pub source_projection: GroupHom,
    /// `H → H/Z(H,K)`.
    pub target_projection: GroupHom,
    /// Elements of `[G,N]` as indices in `G`, aligned with the domain of `eta`.
    pub source_commutator: Vec<usize>,
    /// Elements of `[H,K]` as indices in `H`, aligned with the codomain of `eta`.
    pub target_commutator: Vec<usize>,
}

impl IsoclinismWitness {
    /// Exhaustive re-check: both maps are isomorphisms, `ε` carries `N/Z(G,N)` onto
    /// `K/Z(H,K)`, and `η([g,n]) = [h,k]` for every `g`, `n` and every choice of
    /// representatives `h`, `k` of `ε(gZ)`, `ε(nZ)` with `k ∈ K`.
    pub fn validate(&self, a: &GroupPair, b: &GroupPair) -> std::result::Result<(), String> {
        let (g, h) = (a.g(), b.g());
        if !self.epsilon.is_isomorphism() {
            return Err("epsilon is not an isomorphism".into());
        }
        if !self.eta.is_isomorphism() {
            return Err("eta is not an isomorphism".into());
        }
        if **self.source_projection.domain() != **g || **self.target_projection.domain() != **h {
            return Err("projections do not match the pairs".into());
        }
        let k_image: HashSet<usize> = b.n_in_g().iter().map(|&x| self.target_projection.apply(x)).collect();
        let n_image: HashSet<usize> = a
            .n_in_g()
            .iter()
            .map(|&x| self.epsilon.apply(self.source_projection.apply(x)))
            .collect();
        if n_image != k_image {
            return Err("epsilon does not carry N/Z(G,N) onto K/Z(H,K)".into());
        }
        let mut pos_a = vec![usize::MAX; g.order()];
        for (i, &x) in self.source_commutator.iter().enumerate() {
            pos_a[x] = i;
        }
        let mut pos_b = vec![usize::MAX; h.order()];
        for (i, &x) in self.target_commutator.iter().enumerate() {
            pos_b[x] = i;
        }
        let q2 = self.target_projection.codomain().order();
        let mut fibre: Vec<Vec<usize>> = vec![Vec::new(); q2];
        for y in 0..h.order() {
            fibre[self.target_projection.apply(y)].push(y);
        }
        for x in 0..g.order() {
            let hs = &fibre[self.epsilon.apply(self.source_projection.apply(x))];
            for &n in a.n_in_g() {
                let ks = &fibre[self.epsilon.apply(self.source_projection.apply(n))];
                let c = pos_a[g.commutator(x, n)];
                if c == usize::MAX {
                    return Err("commutator outside [G,N]".into());
                }
                let want = self.eta.apply(c);
                for &y in hs {
                    for &k in ks.iter().filter(|&&k| b.contains(k)) {
                        if pos_b[h.commutator(y, k)] != want {
                            return Err(format!(
                                "eta([g,n]) differs from [h,k] for g = {}, n = {}",
                                g.element(x),
                                g.element(n)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Tries to complete `ε` to a witness by reading `η` off commutators.
fn eta_for(
    a: &GroupPair,
    b: &GroupPair,
    sa: &Sides,
    sb: &Sides,
    eps: &[u32],
    lift_any: &[usize],
    lift_k: &[usize],
) -> Option<Vec<u32>> {
    let (g, h) = (a.g(), b.g());
    let mut pos_a = vec![usize::MAX; g.order()];
    for (i, &x) in sa.comm.iter().enumerate() {
        pos_a[x] = i;
    }
    let mut pos_b = vec![usize::MAX; h.order()];
    for (i, &x) in sb.comm.iter().enumerate() {
        pos_b[x] = i;
    }
    let mut eta = vec![u32::MAX; sa.comm.len()];
    for x in 0..g.order() {
        let y = lift_any[eps[sa.proj.apply(x)] as usize];
        for &n in a.n_in_g() {
            let k = lift_k[eps[sa.proj.apply(n)] as usize];
            let c = pos_a[g.commutator(x, n)];
            let v = pos_b[h.commutator(y, k)] as u32;
            if eta[c] == u32::MAX {
                eta[c] = v;
            } else if eta[c] != v {
                return None;
            }
        }
    }
    // commutators generate, so a consistent assignment on generators decides the map
    let cg = &sa.comm_group;
    if eta.contains(&u32::MAX) {
        let gens: Vec<usize> = (0..cg.order()).filter(|&i| eta[i] != u32::MAX).collect();
        let images: Vec<usize> = gens.iter().map(|&i| eta[i] as usize).collect();
        let full = crate::hom::extend_map(cg, &sb.comm_group, &gens, &images)?;
        if gens.iter().any(|&i| full[i] != eta[i]) {
            return None;
        }
        eta = full;
    }
    let hom = GroupHom::new(sa.comm_group.clone(), sb.comm_group.clone(), eta.clone()).ok()?;
    hom.is_isomorphism().then_some(eta)
}

/// First isoclinism witness between two pairs in the canonical search order, if any.
pub fn are_isoclinic(a: &GroupPair, b: &GroupPair) -> Result<Option<IsoclinismWitness>> {
    let sa = sides(a)?;
    let sb = sides(b)?;
    let (qa, qb) = (sa.proj.codomain().clone(), sb.proj.codomain().clone());
    if qa.order() != qb.order()
        || sa.comm.len() != sb.comm.len()
        || sa.n_image.len() != sb.n_image.len()
        || qa.order_histogram() != qb.order_histogram()
        || sa.comm_group.order_histogram() != sb.comm_group.order_histogram()
    {
        return Ok(None);
    }
    let h = b.g();
    let mut lift_any = vec![usize::MAX; qb.order()];
    let mut lift_k = vec![usize::MAX; qb.order()];
    for y in 0..h.order() {
        let q = sb.proj.apply(y);
        if lift_any[q] == usize::MAX {
            lift_any[q] = y;
        }
        if b.contains(y) && lift_k[q] == usize::MAX {
            lift_k[q] = y;
        }
    }
    let in_nb: HashSet<usize> = sb.n_image.iter().copied().collect();
    // generators of N/Z first, then the rest of G/Z
    let mut gens = qa.generating_set_within(&sa.n_image);
    let mut cl = qa.closure(&gens);
    for x in 0..qa.order() {
        if cl.len() == qa.order() {
            break;
        }
        if cl.binary_search(&x).is_err() {
            gens.push(x);
            cl = qa.closure(&gens);
        }
    }
    let n_set: HashSet<usize> = sa.n_image.iter().copied().collect();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let o = qa.element_order(x);
            (0..qb.order())
                .filter(|&y| qb.element_order(y) == o && (!n_set.contains(&x) || in_nb.contains(&y)))
                .collect()
        })
        .collect();
    let mut found: Option<(Vec<u32>, Vec<u32>)> = None;
    for_each_hom(&qa, &qb, &gens, &cands, true, &mut |eps| {
        if sa.n_image.iter().any(|&x| !in_nb.contains(&(eps[x] as usize))) {
            return true;
        }
        if let Some(eta) = eta_for(a, b, &sa, &sb, eps, &lift_any, &lift_k) {
            found = Some((eps.to_vec(), eta));
            return false;
        }
        true
    });
    let Some((eps, eta)) = found else { return Ok(None) };
    let w = IsoclinismWitness {
        epsilon: GroupHom::new(qa, qb, eps)?,
        eta: GroupHom::new(sa.comm_group.clone(), sb.comm_group.clone(), eta)?,
        source_projection: sa.proj,
        target_projection: sb.proj,
        source_commutator: sa.comm,
        target_commutator: sb.comm,
    };
    w.validate(a, b).map_err(GroupError::Invalid)?;
    Ok(Some(w))
}

/// Result of building an isoclinism from an epimorphism.
#[derive(Clone, Debug)]
pub enum Induced {
    Valid(IsoclinismWitness),
    /// The induced maps were built but fail the witness invariants.
    Invalid(String),
}

/// For `θ: G → H` onto with `θ(N) = K` and `ker θ ∩ N = 1`, the maps
/// `gZ(G,N) ↦ θ(g)Z(H,K)` and `[g,n] ↦ [θ(g),θ(n)]`, validated exhaustively.
pub fn isoclinism_from_epimorphism(theta: &GroupHom, a: &GroupPair, k: &FiniteGroup) -> Result<Induced> {
    let (g, h) = (a.g(), theta.codomain());
    if **theta.domain() != **g {
        return Err(GroupError::Hypothesis("theta is not defined on G".into()));
    }
    if !theta.is_surjective() {
        return Err(GroupError::Hypothesis("theta is not surjective".into()));
    }
    let k_idx = h.indices_of(k)?;
    let b = GroupPair::from_indices(h.clone(), &k_idx)?;
    let mut img: Vec<usize> = a.n_in_g().iter().map(|&x| theta.apply(x)).collect();
    img.sort_unstable();
    img.dedup();
    if img != b.n_in_g() {
        return Err(GroupError::Hypothesis("theta(N) differs from K".into()));
    }
    if a.n_in_g().iter().any(|&x| x != 0 && theta.apply(x) == 0) {
        return Err(GroupError::Hypothesis("ker theta meets N nontrivially".into()));
    }
    let sa = sides(a)?;
    let sb = sides(&b)?;
    let (qa, qb) = (sa.proj.codomain().clone(), sb.proj.codomain().clone());
    let mut eps = vec![u32::MAX; qa.order()];
    for x in 0..g.order() {
        let v = sb.proj.apply(theta.apply(x)) as u32;
        let q = sa.proj.apply(x);
        if eps[q] == u32::MAX {
            eps[q] = v;
        } else if eps[q] != v {
            return Ok(Induced::Invalid("induced map on central quotients is not well defined".into()));
        }
    }
    let epsilon = GroupHom::new(qa.clone(), qb.clone(), eps)?;
    if qa.order() != qb.order() || !epsilon.is_isomorphism() {
        return Ok(Induced::Invalid(format!(
            "induced map G/Z(G,N) -> H/Z(H,K) is not an isomorphism (orders {} and {})",
            qa.order(),
            qb.order()
        )));
    }
    let mut pos_b = vec![usize::MAX; h.order()];
    for (i, &x) in sb.comm.iter().enumerate() {
        pos_b[x] = i;
    }
    let eta_map: Vec<u32> = sa.comm.iter().map(|&x| pos_b[theta.apply(x)] as u32).collect();
    if eta_map.contains(&(usize::MAX as u32)) {
        return Ok(Induced::Invalid("theta does not map [G,N] into [H,K]".into()));
    }
    let eta = GroupHom::new(sa.comm_group.clone(), sb.comm_group.clone(), eta_map)?;
    let w = IsoclinismWitness {
        epsilon,
        eta,
        source_projection: sa.proj,
        target_projection: sb.proj,
        source_commutator: sa.comm,
        target_commutator: sb.comm,
    };
    Ok(match w.validate(a, &b) {
        Ok(()) => Induced::Valid(w),
        Err(e) => Induced::Invalid(e),
    })
}

/// Two covers of a pair are isoclinic as pairs `(M_i, A_i)` when each `M_i` is perfect
/// with a proper Frattini subgroup; N/A otherwise.
pub fn check_cover_isoclinism(w1: &CoverWitness, w2: &CoverWitness) -> Result<Verdict> {
    for w in [w1, w2] {
        if let Some(reason) = cover_hypothesis_failure(w.m())? {
            return Ok(Verdict::NotApplicable(reason));
        }
    }
    let (p1, p2) = (w1.as_pair()?, w2.as_pair()?);
    Ok(match are_isoclinic(&p1, &p2)? {
        Some(_) => Verdict::Pass,
        None => Verdict::Fail("no isoclinism between the two covers".into()),
    })
}

fn require_isoclinic(a: &GroupPair, b: &GroupPair, w: &IsoclinismWitness) -> Result<()> {
    if !a.is_perfect() {
        return Err(GroupError::Hypothesis("first pair is not perfect".into()));
    }
    w.validate(a, b)
        .map_err(|e| GroupError::Hypothesis(format!("witness does not validate: {e}")))
}

/// Cardinalities in `|K|·|Z(G,N)|·|Z(H,K) ∩ [H,K]| = |N|·|Z(H,K)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderIdentity {
    pub k: usize,
    pub z_gn: usize,
    pub z_hk_meet_commutator: usize,
    pub n: usize,
    pub z_hk: usize,
    pub holds: bool,
}

pub fn isoclinic_order_identity(a: &GroupPair, b: &GroupPair, w: &IsoclinismWitness) -> Result<OrderIdentity> {
    require_isoclinic(a, b, w)?;
    let z_gn = pair_center_indices(a).len();
    let zb = pair_center_indices(b);
    let meet = sorted_meet(&zb, &b.commutator_indices()).len();
    let (k, n, z_hk) = (b.n().order(), a.n().order(), zb.len());
    Ok(OrderIdentity {
        k,
        z_gn,
        z_hk_meet_commutator: meet,
        n,
        z_hk,
        holds: k * z_gn * meet == n * z_hk,
    })
}

fn sorted_meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: HashSet<usize> = b.iter().copied().collect();
    a.iter().copied().filter(|x| s.contains(x)).collect()
}

/// Decomposition `K ≅ N × B` with `B` abelian.
#[derive(Clone, Debug)]
pub enum DirectFactor {
    Found { b_name: String, iso: GroupHom },
    Violation(String),
}

/// For a perfect `(G,N)` with trivial `Z(G,N)` isoclinic to `(H,K)`, looks for an abelian
/// catalog group `B` with `K ≅ N × B`.
pub fn isoclinic_direct_factor(a: &GroupPair, b: &GroupPair, w: &IsoclinismWitness, catalog: &Catalog) -> Result<DirectFactor> {
    require_isoclinic(a, b, w)?;
    if pair_center_indices(a).len() != 1 {
        return Err(GroupError::Hypothesis("Z(G,N) is not trivial".into()));
    }
    let (n, k) = (a.n(), b.n());
    if k.order() % n.order() != 0 {
        return Ok(DirectFactor::Violation(format!("|N| = {} does not divide |K| = {}", n.order(), k.order())));
    }
    let want = k.order() / n.order();
    let mut any = false;
    for e in catalog.of_order(want).filter(|e| e.record.abelian) {
        any = true;
        let dp = DirectProduct::new(n, &e.group)?;
        if let Some(iso) = isomorphism(k, &dp.group)? {
            return Ok(DirectFactor::Found {
                b_name: e.name().to_string(),
                iso,
            });
        }
    }
    if !any {
        return Err(GroupError::Catalog {
            entry: format!("<order {want}>"),
            message: "no abelian catalog group of this order".into(),
        });
    }
    Ok(DirectFactor::Violation(format!("K is not N x B for any abelian B of order {want}")))
}

/// `N ≅ K` for a perfect `(G,N)` isoclinic to `(H,K)` with `|N| = |K|`.
pub fn isoclinic_equal_order(a: &GroupPair, b: &GroupPair, w: &IsoclinismWitness) -> Result<Verdict> {
    if !a.is_perfect() {
        return Ok(Verdict::NotApplicable("first pair is not perfect".into()));
    }
    if a.n().order() != b.n().order() {
        return Ok(Verdict::NotApplicable(format!(
            "|N| = {} differs from |K| = {}",
            a.n().order(),
            b.n().order()
        )));
    }
    if let Err(e) = w.validate(a, b) {
        return Ok(Verdict::NotApplicable(format!("witness does not validate: {e}")));
    }
    Ok(match isomorphism(a.n(), b.n())? {
        Some(_) => Verdict::Pass,
        None => Verdict::Fail("N and K are not isomorphic".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::pair::make_pair;

    fn cat() -> Catalog {
        Catalog::builtin().unwrap()
    }

    fn absolute(name: &str) -> GroupPair {
        let g = cat().group(name).unwrap();
        make_pair(&g, &g).unwrap()
    }

    fn s3_a3() -> GroupPair {
        let g = cat().group("S3").unwrap();
        let n = Arc::new(crate::group::derived_subgroup(&g));
        make_pair(&g, &n).unwrap()
    }

    /// `(S3 × C2, A3 × C2)` with the projection onto `S3`.
    fn s3c2() -> (GroupPair, GroupHom) {
        let c = cat();
        let (s3, c2) = (c.group("S3").unwrap(), c.group("C2").unwrap());
        let dp = DirectProduct::new(&s3, &c2).unwrap();
        let a3: Vec<usize> = crate::group::derived_subgroup(&s3)
            .elements()
            .iter()
            .map(|p| s3.index_of(p).unwrap())
            .collect();
        let mut k: Vec<usize> = a3.iter().flat_map(|&x| (0..2).map(move |y| (x, y))).map(|(x, y)| dp.pair(x, y)).collect();
        k.sort_unstable();
        let pair = GroupPair::from_indices(dp.group.clone(), &k).unwrap();
        let proj: Vec<u32> = (0..dp.group.order()).map(|i| dp.components(i).0 as u32).collect();
        (pair, GroupHom::new(dp.group.clone(), s3, proj).unwrap())
    }

    #[test]
    fn pair_centers() {
        let d4 = absolute("D4");
        assert_eq!(pair_center(&d4).order(), 2);
        assert_eq!(pair_center(&s3_a3()).order(), 1);
        let (p, _) = s3c2();
        assert_eq!(pair_center(&p).order(), 2);
    }

    #[test]
    fn d4_q8_isoclinic() {
        let w = are_isoclinic(&absolute("D4"), &absolute("Q8")).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn s3_pairs_not_isoclinic() {
        assert!(are_isoclinic(&s3_a3(), &absolute("S3")).unwrap().is_none());
    }

    #[test]
    fn abelian_pairs() {
        assert!(are_isoclinic(&absolute("C4"), &absolute("V4")).unwrap().is_some());
        assert!(are_isoclinic(&absolute("C2"), &absolute("1")).unwrap().is_some());
    }

    #[test]
    fn worked_order_identity() {
        let a = s3_a3();
        let (b, _) = s3c2();
        let w = are_isoclinic(&a, &b).unwrap().unwrap();
        let id = isoclinic_order_identity(&a, &b, &w).unwrap();
        assert_eq!((id.k, id.z_gn, id.z_hk_meet_commutator, id.n, id.z_hk), (6, 1, 1, 3, 2));
        assert!(id.holds);
        match isoclinic_direct_factor(&a, &b, &w, &cat()).unwrap() {
            DirectFactor::Found { b_name, .. } => assert_eq!(b_name, "C2"),
            DirectFactor::Violation(v) => panic!("{v}"),
        }
        let w = are_isoclinic(&a, &a).unwrap().unwrap();
        assert!(isoclinic_order_identity(&a, &a, &w).unwrap().holds);
        assert_eq!(isoclinic_equal_order(&a, &a, &w).unwrap(), Verdict::Pass);
    }

    #[test]
    fn non_perfect_first_pair_rejected() {
        let a = absolute("V4");
        let w = are_isoclinic(&a, &a).unwrap().unwrap();
        assert!(matches!(isoclinic_order_identity(&a, &a, &w), Err(GroupError::Hypothesis(_))));
    }

    #[test]
    fn identity_epimorphism() {
        let a = s3_a3();
        let id = GroupHom::identity(a.g().clone());
        assert!(matches!(isoclinism_from_epimorphism(&id, &a, a.n()).unwrap(), Induced::Valid(_)));
    }

    #[test]
    fn epimorphism_hypotheses() {
        let (b, proj) = s3c2();
        let s3 = proj.codomain().clone();
        let a3 = crate::group::derived_subgroup(&s3);
        assert!(matches!(
            isoclinism_from_epimorphism(&proj, &b, &a3),
            Err(GroupError::Hypothesis(_))
        ));
        // (S3 × C2, A3 × 1) → (S3, A3)
        let g = b.g().clone();
        let n: Vec<usize> = b.n_in_g().iter().copied().filter(|&x| g.element_order(x) != 2 && g.element_order(x) != 6).collect();
        let p = GroupPair::from_indices(g, &n).unwrap();
        // the central quotient orders differ, so the induced map is rejected
        assert!(matches!(isoclinism_from_epimorphism(&proj, &p, &a3).unwrap(), Induced::Invalid(_)));
    }

    #[test]
    fn cover_pairs_of_v4_not_applicable() {
        let c = cat();
        let res = crate::covering::search_covering_pairs(&absolute("V4"), &c, &Default::default()).unwrap();
        let v = check_cover_isoclinism(&res.covers[0].witness, &res.covers[1].witness).unwrap();
        assert!(matches!(v, Verdict::NotApplicable(_)));
    }

    #[test]
    fn products_with_abelian_factor() {
        let c = cat();
        let s3 = c.group("S3").unwrap();
        let c3 = c.group("C3").unwrap();
        let g = Arc::new(direct_product(&s3, &c3).unwrap());
        let a = absolute("S3");
        let b = make_pair(&g, &g).unwrap();
        assert!(are_isoclinic(&a, &b).unwrap().is_some());
    }
}
