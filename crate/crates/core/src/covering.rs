//! Covering pairs: witnesses, exhaustive search over a catalog, direct
//! construction from a finite presentation, Sylow assembly, and the checks
//! that covers of a pair must satisfy.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::catalog::Catalog;
use crate::error::{GroupError, Result};
use crate::fp::coset::{coset_table_to_group, todd_coxeter};
use crate::fp::presentation::{free_reduce, inverse_word, letter, letter_generator, letter_is_inverse, FpPresentation, Letter, Word};
use crate::group::{DirectProduct, FiniteGroup};
use crate::hom::{automorphism_group, for_each_hom, isomorphism, quotient_by_indices, GroupHom};
use crate::multiplier::{schur_multiplier_pair, sylow_pairs};
use crate::pair::{
    check_rce, extend_action, find_rce_morphism, g_center_indices, g_commutator_indices, rce_morphism_check,
    GroupAction, GroupPair, RelCentralExt,
};
use crate::structure::{abelian_invariants, frattini_indices, is_nilpotent, DEFAULT_LATTICE_CAP};

/// A relative central extension together with the subgroup `A` exhibiting it as a covering pair.
#[derive(Clone, Debug)]
pub struct CoverWitness {
    pub rce: RelCentralExt,
    /// Sorted element indices of `A` inside `M`.
    pub a_indices: Vec<usize>,
    pub multiplier: AbelianInvariants,
}

impl CoverWitness {
    pub fn m(&self) -> &Arc<FiniteGroup> {
        self.rce.m()
    }

    pub fn pair(&self) -> &GroupPair {
        self.rce.pair()
    }

    pub fn a(&self) -> FiniteGroup {
        self.m().subgroup_from_indices(&self.a_indices)
    }

    /// `(M, A)` regarded as a pair of groups.
    pub fn as_pair(&self) -> Result<GroupPair> {
        GroupPair::from_indices(self.m().clone(), &self.a_indices)
    }
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let set: HashSet<usize> = b.iter().copied().collect();
    a.iter().copied().filter(|x| set.contains(x)).collect()
}

/// All subgroups of the given order inside the subgroup `within` of `g`, in canonical order.
pub fn subgroups_of_order(g: &FiniteGroup, within: &[usize], order: usize) -> Vec<Vec<usize>> {
    if order == within.len() {
        return vec![within.to_vec()];
    }
    if order == 0 || !within.len().is_multiple_of(order) {
        return Vec::new();
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found = Vec::new();
    let mut stack = vec![vec![0usize]];
    seen.insert(vec![0]);
    while let Some(h) = stack.pop() {
        if h.len() == order {
            found.push(h);
            continue;
        }
        let member: HashSet<usize> = h.iter().copied().collect();
        for &x in within {
            if member.contains(&x) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let c = g.closure(&gens);
            if order.is_multiple_of(c.len()) && seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    found.sort();
    found
}

/// Checks the three covering conditions for `A` ranging over subgroups of `Z(M,G) ∩ [M,G]`
/// of order `|M(G,N)|`; returns the first `A` in canonical order that works.
pub fn find_cover_witness(rce: &RelCentralExt, multiplier: &AbelianInvariants) -> Result<Option<CoverWitness>> {
    let m = rce.m();
    let n = rce.pair().n();
    let target = multiplier.order() as usize;
    if m.order() != n.order() * target {
        return Ok(None);
    }
    let center = g_center_indices(rce.action());
    let comm = g_commutator_indices(rce.action());
    let both = sorted_intersection(&center, &comm);
    for a in subgroups_of_order(m, &both, target) {
        if let Some(w) = check_candidate(rce, &a, multiplier)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_candidate(rce: &RelCentralExt, a: &[usize], multiplier: &AbelianInvariants) -> Result<Option<CoverWitness>> {
    let m = rce.m();
    let sub = m.subgroup_from_indices(a);
    if !sub.is_abelian() || abelian_invariants(&sub)? != *multiplier {
        return Ok(None);
    }
    let (q, _) = quotient_by_indices(m, a)?;
    if isomorphism(&q, rce.pair().n())?.is_none() {
        return Ok(None);
    }
    Ok(Some(CoverWitness {
        rce: rce.clone(),
        a_indices: a.to_vec(),
        multiplier: multiplier.clone(),
    }))
}

/// `find_cover_witness` with the multiplier computed from the pair.
pub fn find_cover_witness_computed(rce: &RelCentralExt, max_cosets: usize) -> Result<Option<CoverWitness>> {
    let (inv, _) = schur_multiplier_pair(rce.pair(), max_cosets)?;
    find_cover_witness(rce, &inv)
}

pub fn is_covering_pair(rce: &RelCentralExt, multiplier: &AbelianInvariants) -> Result<bool> {
    Ok(find_cover_witness(rce, multiplier)?.is_some())
}

/// Automorphisms of `G` mapping `N` onto itself.
pub fn pair_automorphisms(pair: &GroupPair) -> Result<Vec<GroupHom>> {
    let auts = automorphism_group(pair.g())?;
    Ok(auts
        .into_iter()
        .filter(|a| pair.n_in_g().iter().all(|&x| pair.contains(a.apply(x))))
        .collect())
}

/// Whether some isomorphism `φ: M1 → M2` and automorphism `α` of the pair satisfy
/// `σ2 φ = α σ1` and `φ(m^g) = φ(m)^α(g)`.
pub fn rce_equivalent(r1: &RelCentralExt, r2: &RelCentralExt, pair_auts: &[GroupHom]) -> bool {
    let (m1, m2) = (r1.m(), r2.m());
    if m1.order() != m2.order() || m1.order_histogram() != m2.order_histogram() {
        return false;
    }
    let g = r1.pair().g();
    let ggens = g.generator_indices();
    let gens = m1.small_generating_set();
    for alpha in pair_auts {
        let cands: Vec<Vec<usize>> = gens
            .iter()
            .map(|&x| {
                let t = alpha.apply(r1.sigma().apply(x));
                let o = m1.element_order(x);
                (0..m2.order())
                    .filter(|&y| r2.sigma().apply(y) == t && m2.element_order(y) == o)
                    .collect()
            })
            .collect();
        let mut found = false;
        for_each_hom(m1, m2, &gens, &cands, true, &mut |map| {
            let ok = gens.iter().all(|&x| {
                ggens.iter().all(|&s| {
                    map[r1.action().act(x, s)] as usize == r2.action().act(map[x] as usize, alpha.apply(s))
                })
            });
            found = ok;
            !ok
        });
        if found {
            return true;
        }
    }
    false
}

/// Limits for the exhaustive extension search.
#[derive(Clone, Debug)]
pub struct SearchCaps {
    /// Homomorphisms `M → G` examined per candidate group.
    pub max_homs: usize,
    /// Action tables tried per homomorphism.
    pub max_actions: usize,
    /// Build a cover directly when the catalog cannot supply one.
    pub construct_fallback: bool,
    pub max_cosets: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_homs: 200_000,
            max_actions: 100_000,
            construct_fallback: true,
            max_cosets: crate::fp::DEFAULT_MAX_COSETS,
        }
    }
}

/// Enumerates relative central extensions of `pair` with underlying group `m`, one per
/// equivalence class. Returns false if a cap was hit.
pub fn enumerate_extensions(
    pair: &GroupPair,
    m: &Arc<FiniteGroup>,
    pair_auts: &[GroupHom],
    caps: &SearchCaps,
    visit: &mut dyn FnMut(RelCentralExt),
) -> Result<bool> {
    let g = pair.g();
    if !m.order().is_multiple_of(pair.n().order()) {
        return Ok(true);
    }
    let mut complete = true;
    let mgens = m.small_generating_set();
    let cands: Vec<Vec<usize>> = mgens
        .iter()
        .map(|&x| {
            let o = m.element_order(x);
            pair.n_in_g()
                .iter()
                .copied()
                .filter(|&y| o.is_multiple_of(g.element_order(y)))
                .collect()
        })
        .collect();
    let mcenter: HashSet<usize> = m.center_indices().into_iter().collect();
    let mut sigmas: Vec<Vec<u32>> = Vec::new();
    let mut visited = 0usize;
    for_each_hom(m, g, &mgens, &cands, false, &mut |map| {
        visited += 1;
        if visited > caps.max_homs {
            complete = false;
            return false;
        }
        let image: HashSet<u32> = map.iter().copied().collect();
        let central = (0..m.order()).all(|x| map[x] != 0 || mcenter.contains(&x));
        if image.len() == pair.n().order() && central {
            sigmas.push(map.to_vec());
        }
        true
    });
    if sigmas.is_empty() {
        return Ok(complete);
    }
    let maut = automorphism_group(m)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for s in &sigmas {
        if seen.contains(s) {
            continue;
        }
        for beta in &maut {
            for alpha in pair_auts {
                let t: Vec<u32> = (0..m.order())
                    .map(|x| alpha.apply(s[beta.apply(x)] as usize) as u32)
                    .collect();
                seen.insert(t);
            }
        }
        let sigma = GroupHom::new(m.clone(), g.clone(), s.clone())?;
        let mut classes: Vec<RelCentralExt> = Vec::new();
        complete &= actions_for(pair, &sigma, caps, &mut |r| {
            if !classes.iter().any(|c| rce_equivalent(c, &r, pair_auts)) {
                classes.push(r);
            }
        })?;
        for r in classes {
            visit(r);
        }
    }
    Ok(complete)
}

/// Generators of `G`: a generating set of `N` followed by elements completing it to `G`.
fn adapted_generators(pair: &GroupPair) -> Vec<usize> {
    let g = pair.g();
    let mut gens = g.generating_set_within(pair.n_in_g());
    let mut cl = g.closure(&gens);
    let mut rest: Vec<usize> = (1..g.order()).collect();
    rest.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    for x in rest {
        if cl.len() == g.order() {
            break;
        }
        if cl.binary_search(&x).is_ok() {
            continue;
        }
        gens.push(x);
        cl = g.closure(&gens);
    }
    gens
}

/// All actions of `G` on `M` making `sigma` a relative central extension.
fn actions_for(
    pair: &GroupPair,
    sigma: &GroupHom,
    caps: &SearchCaps,
    visit: &mut dyn FnMut(RelCentralExt),
) -> Result<bool> {
    let m = sigma.domain();
    let g = pair.g();
    let ggens = adapted_generators(pair);
    let kernel = sigma.kernel_indices();
    let mut lift = vec![usize::MAX; g.order()];
    for x in 0..m.order() {
        let y = sigma.apply(x);
        if lift[y] == usize::MAX {
            lift[y] = x;
        }
    }
    let mgens = m.small_generating_set();
    let mut choices: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut complete = true;
    for &s in &ggens {
        if pair.contains(s) {
            let x = lift[s];
            choices.push(vec![(0..m.order()).map(|y| m.conj(y, x) as u32).collect()]);
            continue;
        }
        let cands: Vec<Vec<usize>> = mgens
            .iter()
            .map(|&x| {
                let t = g.conj(sigma.apply(x), s);
                let o = m.element_order(x);
                (0..m.order())
                    .filter(|&y| sigma.apply(y) == t && m.element_order(y) == o)
                    .collect()
            })
            .collect();
        let mut list = Vec::new();
        for_each_hom(m, m, &mgens, &cands, true, &mut |map| {
            if kernel.iter().all(|&k| map[k] as usize == k) {
                list.push(map.to_vec());
            }
            if list.len() >= caps.max_actions {
                complete = false;
                return false;
            }
            true
        });
        choices.push(list);
    }
    let mut pick = vec![0usize; ggens.len()];
    let mut tried = 0usize;
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(complete);
    }
    loop {
        tried += 1;
        if tried > caps.max_actions {
            return Ok(false);
        }
        let images: Vec<Vec<u32>> = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if let Ok(table) = extend_action(m, g, &ggens, &images) {
            if let Ok(action) = GroupAction::new(m.clone(), g.clone(), table) {
                if check_rce(sigma, &action, pair).all_pass() {
                    visit(RelCentralExt::new_unchecked(pair.clone(), sigma.clone(), action));
                }
            }
        }
        let mut k = ggens.len();
        loop {
            if k == 0 {
                return Ok(complete);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverSource {
    Catalog,
    Constructed,
}

#[derive(Clone, Debug)]
pub struct FoundCover {
    pub witness: CoverWitness,
    pub group_name: String,
    pub source: CoverSource,
}

#[derive(Clone, Debug)]
pub struct CoverSearch {
    pub multiplier: AbelianInvariants,
    pub target_order: usize,
    pub covers: Vec<FoundCover>,
    /// Catalog groups that were searched exhaustively.
    pub searched: Vec<String>,
    /// Candidates left unexplored, with the reason.
    pub unexplored: Vec<String>,
    /// True when the catalog holds every group of the target order.
    pub exhaustive: bool,
    pub caps_hit: bool,
}

/// Searches the catalog groups of order `|N|·|M(G,N)|` for covering pairs of `pair`,
/// one per equivalence class (isomorphisms of `M` compatible with `σ`, the action and an
/// automorphism of the pair). Falls back to a direct construction when the catalog
/// yields nothing.
pub fn search_covering_pairs(pair: &GroupPair, catalog: &Catalog, caps: &SearchCaps) -> Result<CoverSearch> {
    let (multiplier, _) = schur_multiplier_pair(pair, caps.max_cosets)?;
    let target = pair.n().order() * multiplier.order() as usize;
    let pair_auts = pair_automorphisms(pair)?;
    let mut out = CoverSearch {
        multiplier: multiplier.clone(),
        target_order: target,
        covers: Vec::new(),
        searched: Vec::new(),
        unexplored: Vec::new(),
        exhaustive: catalog.is_complete_for(target),
        caps_hit: false,
    };
    for entry in catalog.of_order(target) {
        let mut found: Vec<CoverWitness> = Vec::new();
        let mut err = None;
        let complete = enumerate_extensions(pair, &entry.group, &pair_auts, caps, &mut |r| {
            if err.is_some() {
                return;
            }
            match find_cover_witness(&r, &multiplier) {
                Ok(Some(w)) => found.push(w),
                Ok(None) => {}
                Err(e) => err = Some(e),
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        if complete {
            out.searched.push(entry.name().to_string());
        } else {
            out.caps_hit = true;
            out.unexplored.push(format!("{}: search cap reached", entry.name()));
        }
        out.covers.extend(found.into_iter().map(|w| FoundCover {
            witness: w,
            group_name: entry.name().to_string(),
            source: CoverSource::Catalog,
        }));
    }
    if !out.exhaustive {
        out.unexplored
            .push(format!("groups of order {target} missing from the catalog"));
    }
    if out.covers.is_empty() && caps.construct_fallback {
        let w = build_cover(pair, &multiplier, caps.max_cosets)?;
        let name = catalog.name_of(w.m());
        out.covers.push(FoundCover {
            witness: w,
            group_name: name,
            source: CoverSource::Constructed,
        });
    }
    Ok(out)
}

/// Presentation of a permutation group on a small generating set: one relator per
/// non-tree edge of a breadth-first Cayley graph, with redundant relators removed.
pub fn presentation_of(g: &FiniteGroup) -> Result<(FpPresentation, Vec<usize>)> {
    let gens = g.small_generating_set();
    let pres = presentation_on(g, &gens)?;
    Ok((pres, gens))
}

/// Words for every element over the given generators, from a breadth-first search.
fn element_words(g: &FiniteGroup, gens: &[usize], offset: usize) -> Vec<Word> {
    let mut word: Vec<Option<Word>> = vec![None; g.order()];
    word[0] = Some(Vec::new());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if word[y].is_none() {
                let mut w = word[x].clone().expect("visited");
                w.push(letter(i + offset, false));
                word[y] = Some(w);
                queue.push(y);
            }
        }
    }
    word.into_iter().map(|w| w.expect("generators generate")).collect()
}

/// Presentation of a permutation group on the given generators (in order).
pub fn presentation_on(g: &FiniteGroup, gens: &[usize]) -> Result<FpPresentation> {
    let n = g.order();
    let mut word: Vec<Option<Word>> = vec![None; n];
    word[0] = Some(Vec::new());
    let mut queue = vec![0usize];
    let mut head = 0;
    let mut relators = Vec::new();
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let mut w = word[x].clone().expect("visited");
            w.push(letter(i, false));
            match &word[y] {
                None => {
                    word[y] = Some(w);
                    queue.push(y);
                }
                Some(wy) => {
                    let mut r = w;
                    r.extend(inverse_word(wy));
                    let r = free_reduce(&r);
                    if !r.is_empty() {
                        relators.push(r);
                    }
                }
            }
        }
    }
    let names: Vec<String> = (0..gens.len()).map(|i| format!("x{i}")).collect();
    relators.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    relators.dedup();
    let mut kept = relators.clone();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        let p = FpPresentation::new(names.clone(), trial.clone())?;
        match todd_coxeter(&p, &[], 64 * n.max(1)) {
            Ok(t) if t.coset_count() == n => kept = trial,
            _ => i += 1,
        }
    }
    FpPresentation::new(names, kept)
}

/// Row reduction of an integer matrix: returns the rank and a unimodular transform whose
/// first `rank` rows map the matrix onto a basis of its row lattice.
fn row_lattice_basis(rows: &[Vec<i64>]) -> Result<(usize, Vec<Vec<i64>>)> {
    let k = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    let overflow = || GroupError::Invalid("row reduction overflowed".into());
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect();
    let mut pivot = 0;
    for c in 0..d {
        loop {
            let best = (pivot..k)
                .filter(|&r| a[r][c] != 0)
                .min_by_key(|&r| (a[r][c].abs(), r));
            let Some(b) = best else { break };
            a.swap(pivot, b);
            u.swap(pivot, b);
            let mut done = true;
            for r in pivot + 1..k {
                if a[r][c] == 0 {
                    continue;
                }
                let q = a[r][c] / a[pivot][c];
                for j in 0..d {
                    a[r][j] = a[r][j].checked_sub(q.checked_mul(a[pivot][j]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
                for j in 0..k {
                    u[r][j] = u[r][j].checked_sub(q.checked_mul(u[pivot][j]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
                if a[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
        if pivot == k {
            break;
        }
    }
    let u = u
        .into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| overflow())).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    Ok((pivot, u))
}

fn power_product(relators: &[Word], exps: &[i64]) -> Word {
    let mut w = Vec::new();
    for (r, &e) in relators.iter().zip(exps) {
        let piece = if e < 0 { inverse_word(r) } else { r.clone() };
        for _ in 0..e.unsigned_abs() {
            w.extend_from_slice(&piece);
        }
    }
    free_reduce(&w)
}

/// Builds a covering pair of `pair` from a presentation `G = F/R` with `N = S/R`:
/// a finite quotient `F/T` of `F/[R,F]` in which `R/T` is finite, followed by the
/// quotient of `S/T` by a complement of `([S,F] ∩ R)T/T`.
pub fn construct_cover(pair: &GroupPair, multiplier: &AbelianInvariants, max_cosets: usize) -> Result<CoverWitness> {
    let g = pair.g();
    let (pres, ggens) = presentation_of(g)?;
    let d = pres.generator_count();
    let rels = pres.relators().to_vec();
    let sums: Vec<Vec<i64>> = rels.iter().map(|r| pres.exponent_sums(r)).collect();
    let (rank, u) = row_lattice_basis(&sums)?;
    let mut exponent = 1u64;
    for attempt in 0..2 {
        let mut relators: Vec<Word> = Vec::new();
        for r in &rels {
            for x in 0..d {
                let mut w = inverse_word(r);
                w.push(letter(x, true));
                w.extend_from_slice(r);
                w.push(letter(x, false));
                relators.push(free_reduce(&w));
            }
        }
        for row in u.iter().take(rank) {
            let t = power_product(&rels, row);
            let mut te = Vec::new();
            for _ in 0..exponent {
                te.extend_from_slice(&t);
            }
            relators.push(free_reduce(&te));
        }
        let cover_pres = FpPresentation::new(pres.generator_names().to_vec(), relators)?;
        let table = todd_coxeter(&cover_pres, &[], max_cosets)?;
        let (f, images) = coset_table_to_group(&table, &cover_pres)?;
        let f = Arc::new(f);
        let sources: Vec<usize> = images.iter().map(|p| f.require_index(p)).collect::<Result<_>>()?;
        let pi = GroupHom::from_images(f.clone(), g.clone(), &sources, &ggens)?;
        let r_bar = pi.kernel_indices();
        let s_bar: Vec<usize> = (0..f.order()).filter(|&x| pair.contains(pi.apply(x))).collect();
        let all: Vec<usize> = (0..f.order()).collect();
        let a_bar = sorted_intersection(&f.commutator_indices(&s_bar, &all), &r_bar);
        if let Some(t_bar) = complement(&f, &r_bar, &a_bar) {
            let mut lift = vec![usize::MAX; g.order()];
            for x in (0..f.order()).rev() {
                lift[pi.apply(x)] = x;
            }
            let w = cover_from_quotient(pair, &f, &pi, &s_bar, &t_bar, &a_bar, &lift, multiplier)?;
            if let Some(w) = w {
                return Ok(w);
            }
        }
        if attempt == 0 {
            exponent = f.subgroup_from_indices(&r_bar).exponent() as u64;
            if exponent == 1 {
                break;
            }
        }
    }
    Err(GroupError::Hypothesis(
        "direct construction did not produce a covering pair".into(),
    ))
}

/// A subgroup `T` of the abelian group on `whole` with `T ∩ A = 1` and `TA = whole`.
fn complement(g: &FiniteGroup, whole: &[usize], a: &[usize]) -> Option<Vec<usize>> {
    let target = whole.len() / a.len();
    let mut cands: Vec<usize> = whole.to_vec();
    cands.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let a_set: HashSet<usize> = a.iter().copied().collect();
    fn grow(
        g: &FiniteGroup,
        cands: &[usize],
        a_set: &HashSet<usize>,
        gens: &mut Vec<usize>,
        current: Vec<usize>,
        target: usize,
        budget: &mut usize,
    ) -> Option<Vec<usize>> {
        if current.len() == target {
            return Some(current);
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let member: HashSet<usize> = current.iter().copied().collect();
        for &x in cands {
            if member.contains(&x) {
                continue;
            }
            gens.push(x);
            let c = g.closure(gens);
            let meets = c.iter().any(|y| *y != 0 && a_set.contains(y));
            if !meets && target.is_multiple_of(c.len()) {
                if let Some(t) = grow(g, cands, a_set, gens, c, target, budget) {
                    return Some(t);
                }
            }
            gens.pop();
        }
        None
    }
    let mut budget = 10_000;
    grow(g, &cands, &a_set, &mut Vec::new(), vec![0], target, &mut budget)
}

/// A covering pair built by construction: the quotient of `F/[R,F]` first, then the
/// central extension of `N ⋊ G` when the first yields none.
pub fn build_cover(pair: &GroupPair, multiplier: &AbelianInvariants, max_cosets: usize) -> Result<CoverWitness> {
    match construct_cover(pair, multiplier, max_cosets) {
        Ok(w) => Ok(w),
        Err(GroupError::Hypothesis(_)) => construct_cover_semidirect(pair, multiplier, max_cosets),
        Err(e) => Err(e),
    }
}

/// Finishes a construction inside a finite group `f`: `M = m_bar / t_bar` with `σ`
/// induced by `tau` and `G` acting by conjugation with `lift[g]`.
#[allow(clippy::too_many_arguments)]
fn cover_from_quotient(
    pair: &GroupPair,
    f: &Arc<FiniteGroup>,
    tau: &GroupHom,
    m_bar: &[usize],
    t_bar: &[usize],
    a_bar: &[usize],
    lift: &[usize],
    multiplier: &AbelianInvariants,
) -> Result<Option<CoverWitness>> {
    let g = pair.g();
    let s = Arc::new(f.subgroup_from_indices(m_bar));
    let mut pos = vec![usize::MAX; f.order()];
    for (k, &x) in m_bar.iter().enumerate() {
        pos[x] = k;
    }
    let mut t_in_s: Vec<usize> = t_bar.iter().map(|&x| pos[x]).collect();
    t_in_s.sort_unstable();
    let (m, proj) = quotient_by_indices(&s, &t_in_s)?;
    let mut rep = vec![usize::MAX; m.order()];
    for k in 0..s.order() {
        let q = proj.apply(k);
        if rep[q] == usize::MAX {
            rep[q] = k;
        }
    }
    let sigma_map: Vec<u32> = (0..m.order()).map(|q| tau.apply(m_bar[rep[q]]) as u32).collect();
    let sigma = GroupHom::new(m.clone(), g.clone(), sigma_map)?;
    let mut table = vec![0u32; m.order() * g.order()];
    for q in 0..m.order() {
        let x = m_bar[rep[q]];
        for y in 0..g.order() {
            let c = f.conj(x, lift[y]);
            if pos[c] == usize::MAX {
                return Err(GroupError::InvalidAction("conjugation leaves the constructed subgroup".into()));
            }
            table[q * g.order() + y] = proj.apply(pos[c]) as u32;
        }
    }
    let action = GroupAction::new(m.clone(), g.clone(), table)?;
    let rce = match RelCentralExt::new(pair.clone(), sigma, action) {
        Ok(r) => r,
        Err(_) => return Ok(None),
    };
    let mut a_img: Vec<usize> = a_bar.iter().map(|&x| proj.apply(pos[x])).collect();
    a_img.sort_unstable();
    a_img.dedup();
    if let Some(w) = check_candidate(&rce, &a_img, multiplier)? {
        if sorted_intersection(&a_img, &g_center_indices(rce.action())).len() == a_img.len()
            && sorted_intersection(&a_img, &g_commutator_indices(rce.action())).len() == a_img.len()
        {
            return Ok(Some(w));
        }
    }
    find_cover_witness(&rce, multiplier)
}

fn commutator_word(a: &[Letter], b: &[Letter]) -> Word {
    let mut w = inverse_word(a);
    w.extend(inverse_word(b));
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    free_reduce(&w)
}

/// Builds a covering pair inside a central extension `P` of `N ⋊ G`: `P` is generated by
/// `x_i` over generators `n_i` of `N` and `g_j` over generators of `G`, the relators of
/// `G` hold exactly, and `x_i W(n_i)^-1` commutes with every conjugate of every `x_l`.
/// `M` is the normal closure of the `x_i`, modulo a complement of `ker σ ∩ [M,G]` in `ker σ`.
pub fn construct_cover_semidirect(pair: &GroupPair, multiplier: &AbelianInvariants, max_cosets: usize) -> Result<CoverWitness> {
    let g = pair.g();
    let n = pair.n();
    let (pres_g, ggens) = presentation_of(g)?;
    let d = ggens.len();
    let ngens = n.small_generating_set();
    let k = ngens.len();
    if k == 0 {
        return Err(GroupError::Hypothesis("N is trivial".into()));
    }
    let pres_n = presentation_on(n, &ngens)?;
    let shift = |w: &Word| -> Word {
        w.iter()
            .map(|&l| letter(letter_generator(l) + d, letter_is_inverse(l)))
            .collect()
    };
    let g_words = element_words(g, &ggens, 0);
    let n_words = element_words(n, &ngens, d);
    let n_in_g: Vec<usize> = ngens.iter().map(|&i| pair.n_in_g()[i]).collect();
    let mut rels: Vec<Word> = pres_g.relators().to_vec();
    rels.extend(pres_n.relators().iter().map(shift));
    for (j, &gj) in ggens.iter().enumerate() {
        for (i, &ni) in n_in_g.iter().enumerate() {
            let c = pair.n_index(g.conj(ni, gj)).expect("N is normal");
            let mut w = vec![letter(j, true), letter(d + i, false), letter(j, false)];
            w.extend(inverse_word(&n_words[c]));
            rels.push(free_reduce(&w));
        }
    }
    rels.retain(|r| !r.is_empty());
    let names: Vec<String> = (0..d).map(|j| format!("g{j}")).chain((0..k).map(|i| format!("x{i}"))).collect();
    let q_pres = FpPresentation::new(names.clone(), rels.clone())?;
    let sums: Vec<Vec<i64>> = rels.iter().map(|r| q_pres.exponent_sums(r)).collect();
    let (rank, u) = row_lattice_basis(&sums)?;
    let mut fixed: Vec<Word> = pres_g.relators().to_vec();
    for (i, &ni) in n_in_g.iter().enumerate() {
        let mut ki = vec![letter(d + i, false)];
        ki.extend(inverse_word(&g_words[ni]));
        let ki = free_reduce(&ki);
        for l in 0..k {
            for w in &g_words {
                let mut y = inverse_word(w);
                y.push(letter(d + l, false));
                y.extend_from_slice(w);
                fixed.push(commutator_word(&ki, &free_reduce(&y)));
            }
        }
    }
    fixed.retain(|r| !r.is_empty());
    fixed.sort();
    fixed.dedup();
    let mut exponent = 1u64;
    for attempt in 0..2 {
        let mut relators = fixed.clone();
        for r in &rels {
            for z in 0..d + k {
                relators.push(commutator_word(r, &[letter(z, false)]));
            }
        }
        for row in u.iter().take(rank) {
            let t = power_product(&rels, row);
            let mut te = Vec::new();
            for _ in 0..exponent {
                te.extend_from_slice(&t);
            }
            relators.push(free_reduce(&te));
        }
        relators.retain(|r| !r.is_empty());
        let p_pres = FpPresentation::new(names.clone(), relators)?;
        let table = todd_coxeter(&p_pres, &[], max_cosets)?;
        let (f, images) = coset_table_to_group(&table, &p_pres)?;
        let f = Arc::new(f);
        let gen_idx: Vec<usize> = images.iter().map(|p| f.require_index(p)).collect::<Result<_>>()?;
        let targets: Vec<usize> = ggens.iter().copied().chain(n_in_g.iter().copied()).collect();
        let tau = GroupHom::from_images(f.clone(), g.clone(), &gen_idx, &targets)?;
        let ghat = GroupHom::from_images(g.clone(), f.clone(), &ggens, &gen_idx[..d])?;
        let lift: Vec<usize> = (0..g.order()).map(|y| ghat.apply(y)).collect();
        let m_bar = f.normal_closure_of(&gen_idx[d..]);
        let kernel: Vec<usize> = m_bar.iter().copied().filter(|&x| tau.apply(x) == 0).collect();
        let mut comm_gens = Vec::new();
        for &x in &m_bar {
            for &gj in &gen_idx[..d] {
                comm_gens.push(f.mul(f.inv(x), f.conj(x, gj)));
            }
        }
        comm_gens.sort_unstable();
        comm_gens.dedup();
        let comm = f.closure(&comm_gens);
        let b_bar = sorted_intersection(&kernel, &comm);
        if let Some(t_bar) = complement(&f, &kernel, &b_bar) {
            if let Some(w) = cover_from_quotient(pair, &f, &tau, &m_bar, &t_bar, &b_bar, &lift, multiplier)? {
                return Ok(w);
            }
        }
        if attempt == 0 {
            exponent = f.subgroup_from_indices(&kernel).exponent() as u64;
            if exponent == 1 {
                break;
            }
        }
    }
    Err(GroupError::Hypothesis(
        "semidirect construction did not produce a covering pair".into(),
    ))
}

/// Direct product of covers of the Sylow pairs of a nilpotent `G`: component `i` of `G`
/// acts on component `i` of `M` by the given action and trivially on the others.
pub fn assemble_nilpotent_cover(pair: &GroupPair, sylow_covers: &[RelCentralExt], max_cosets: usize) -> Result<RelCentralExt> {
    let g = pair.g();
    if !is_nilpotent(g) {
        return Err(GroupError::NotNilpotent);
    }
    let sylows = sylow_pairs(pair)?;
    if sylows.is_empty() && sylow_covers.is_empty() {
        return Ok(crate::pair::conjugation_rce(pair));
    }
    if sylows.len() != sylow_covers.len() {
        return Err(GroupError::Hypothesis(format!(
            "expected {} Sylow covers, got {}",
            sylows.len(),
            sylow_covers.len()
        )));
    }
    for (sp, r) in sylows.iter().zip(sylow_covers) {
        if **r.pair().g() != **sp.g() || **r.pair().n() != **sp.n() {
            return Err(GroupError::Hypothesis("cover does not belong to the Sylow pair".into()));
        }
        let (inv, _) = schur_multiplier_pair(sp, max_cosets)?;
        if !is_covering_pair(r, &inv)? {
            return Err(GroupError::Hypothesis(format!(
                "extension of the Sylow pair of order {} is not a covering pair",
                sp.g().order()
            )));
        }
    }
    if sylow_covers.len() == 1 {
        let r = &sylow_covers[0];
        return RelCentralExt::new(pair.clone(), r.sigma().clone(), r.action().clone());
    }
    // M as an iterated direct product with component lookup
    let mut prod = sylow_covers[0].m().clone();
    let mut comps: Vec<Vec<usize>> = (0..prod.order()).map(|x| vec![x]).collect();
    for r in &sylow_covers[1..] {
        let dp = DirectProduct::new(&prod, r.m())?;
        let mut next = vec![Vec::new(); dp.group.order()];
        for (k, slot) in next.iter_mut().enumerate() {
            let (l, rr) = dp.components(k);
            let mut v = comps[l].clone();
            v.push(rr);
            *slot = v;
        }
        prod = dp.group.clone();
        comps = next;
    }
    let m = prod;
    let sub_index: Vec<Vec<usize>> = sylow_covers
        .iter()
        .map(|r| {
            r.pair()
                .g()
                .elements()
                .iter()
                .map(|p| g.index_of(p).expect("Sylow subgroup lies in G"))
                .collect()
        })
        .collect();
    // decomposition of each element of G into Sylow components
    let mut decomp: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    let sizes: Vec<usize> = sub_index.iter().map(Vec::len).collect();
    let mut tuple = vec![0usize; sizes.len()];
    loop {
        let mut x = 0usize;
        for (i, &t) in tuple.iter().enumerate() {
            x = g.mul(x, sub_index[i][t]);
        }
        decomp[x] = tuple.clone();
        let mut k = sizes.len();
        let mut done = true;
        while k > 0 {
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < sizes[k] {
                done = false;
                break;
            }
            tuple[k] = 0;
        }
        if done {
            break;
        }
    }
    let mut lookup = std::collections::HashMap::new();
    for (k, c) in comps.iter().enumerate() {
        lookup.insert(c.clone(), k);
    }
    let sigma_map: Vec<u32> = comps
        .iter()
        .map(|c| {
            let mut x = 0usize;
            for (i, &ci) in c.iter().enumerate() {
                x = g.mul(x, sub_index[i][sylow_covers[i].sigma().apply(ci)]);
            }
            x as u32
        })
        .collect();
    let sigma = GroupHom::new(m.clone(), g.clone(), sigma_map)?;
    let mut table = vec![0u32; m.order() * g.order()];
    for (k, c) in comps.iter().enumerate() {
        for y in 0..g.order() {
            let parts = &decomp[y];
            let moved: Vec<usize> = c
                .iter()
                .enumerate()
                .map(|(i, &ci)| sylow_covers[i].action().act(ci, parts[i]))
                .collect();
            table[k * g.order() + y] = lookup[&moved] as u32;
        }
    }
    let action = GroupAction::new(m, g.clone(), table)?;
    RelCentralExt::new(pair.clone(), sigma, action)
}

/// Whether `M` is perfect with a proper Frattini subgroup; `Some(reason)` when not.
pub fn cover_hypothesis_failure(m: &FiniteGroup) -> Result<Option<String>> {
    if m.derived_indices().len() != m.order() {
        return Ok(Some(format!("M of order {} is not perfect", m.order())));
    }
    if frattini_indices(m, DEFAULT_LATTICE_CAP.max(m.order()))?.len() == m.order() {
        return Ok(Some(format!("Frattini subgroup of M (order {}) is all of M", m.order())));
    }
    Ok(None)
}

/// `[M,G] = M` for a cover of a perfect pair.
pub fn check_cover_commutator(pair: &GroupPair, witness: &CoverWitness) -> Result<bool> {
    if !pair.is_perfect() {
        return Err(GroupError::Hypothesis("pair is not perfect".into()));
    }
    Ok(g_commutator_indices(witness.rce.action()).len() == witness.m().order())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    /// Reason the hypotheses fail, if they do.
    pub not_applicable: Option<String>,
    pub isomorphic: Option<bool>,
    pub central_quotients_isomorphic: Option<bool>,
    pub center_over_kernel_isomorphic: Option<bool>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.not_applicable.is_none()
            && self.isomorphic == Some(true)
            && self.central_quotients_isomorphic == Some(true)
            && self.center_over_kernel_isomorphic == Some(true)
    }
}

/// Compares two covers of the same pair: `M1 ≅ M2`, `M1/Z(M1,G) ≅ M2/Z(M2,G)` and
/// `Z(M1,G)/ker σ1 ≅ Z(M2,G)/ker σ2`, when both `M_i` are perfect with proper Frattini subgroup.
pub fn check_cover_uniqueness(w1: &CoverWitness, w2: &CoverWitness) -> Result<UniquenessReport> {
    if **w1.pair().g() != **w2.pair().g() || **w1.pair().n() != **w2.pair().n() {
        return Err(GroupError::Hypothesis("covers belong to different pairs".into()));
    }
    for w in [w1, w2] {
        if let Some(reason) = cover_hypothesis_failure(w.m())? {
            return Ok(UniquenessReport {
                not_applicable: Some(reason),
                isomorphic: None,
                central_quotients_isomorphic: None,
                center_over_kernel_isomorphic: None,
            });
        }
    }
    let iso = isomorphism(w1.m(), w2.m())?.is_some();
    let central = |w: &CoverWitness| -> Result<Arc<FiniteGroup>> {
        Ok(quotient_by_indices(w.m(), &g_center_indices(w.rce.action()))?.0)
    };
    let over_kernel = |w: &CoverWitness| -> Result<Arc<FiniteGroup>> {
        let z = Arc::new(w.m().subgroup_from_indices(&g_center_indices(w.rce.action())));
        let k = w.rce.sigma().kernel();
        let k_in_z = z.indices_of(&k)?;
        Ok(quotient_by_indices(&z, &k_in_z)?.0)
    };
    let cq = isomorphism(&central(w1)?, &central(w2)?)?.is_some();
    let ck = isomorphism(&over_kernel(w1)?, &over_kernel(w2)?)?.is_some();
    Ok(UniquenessReport {
        not_applicable: None,
        isomorphic: Some(iso),
        central_quotients_isomorphic: Some(cq),
        center_over_kernel_isomorphic: Some(ck),
    })
}

/// Two distinct morphisms out of an extension of a non-perfect pair.
#[derive(Clone, Debug)]
pub struct NonUniqueness {
    /// `M × N/[N,G]` with `σ'(m, q) = σ(m)` and `G` acting on the first factor.
    pub target: RelCentralExt,
    /// `m ↦ (m, 1)`.
    pub theta1: GroupHom,
    /// `m ↦ (m, σ(m)[N,G])`.
    pub theta2: GroupHom,
}

/// For a non-perfect pair, exhibits two different morphisms from `r` into one extension;
/// `None` when the pair is perfect.
pub fn non_uniqueness_witness(r: &RelCentralExt) -> Result<Option<NonUniqueness>> {
    let pair = r.pair();
    if pair.is_perfect() {
        return Ok(None);
    }
    let (g, n) = (pair.g(), pair.n());
    let comm: Vec<usize> = {
        let mut v: Vec<usize> = pair.commutator_indices().iter().map(|&x| pair.n_index(x).expect("[N,G] lies in N")).collect();
        v.sort_unstable();
        v
    };
    let (q, to_q) = quotient_by_indices(n, &comm)?;
    let m = r.m();
    let dp = DirectProduct::new(m, &q)?;
    let mp = dp.group.clone();
    let sigma_map: Vec<u32> = (0..mp.order())
        .map(|k| r.sigma().apply(dp.components(k).0) as u32)
        .collect();
    let sigma = GroupHom::new(mp.clone(), g.clone(), sigma_map)?;
    let mut table = vec![0u32; mp.order() * g.order()];
    for k in 0..mp.order() {
        let (a, b) = dp.components(k);
        for y in 0..g.order() {
            table[k * g.order() + y] = dp.pair(r.action().act(a, y), b) as u32;
        }
    }
    let action = GroupAction::new(mp.clone(), g.clone(), table)?;
    let target = RelCentralExt::new(pair.clone(), sigma, action)?;
    let t1: Vec<u32> = (0..m.order()).map(|x| dp.pair(x, 0) as u32).collect();
    let t2: Vec<u32> = (0..m.order())
        .map(|x| {
            let nx = pair.n_index(r.sigma().apply(x)).expect("σ(M) = N");
            dp.pair(x, to_q.apply(nx)) as u32
        })
        .collect();
    let theta1 = GroupHom::new(m.clone(), mp.clone(), t1)?;
    let theta2 = GroupHom::new(m.clone(), mp.clone(), t2)?;
    for t in [&theta1, &theta2] {
        if let Err(e) = rce_morphism_check(t, r, &target) {
            return Err(GroupError::Hypothesis(format!("constructed map is not a morphism: {e:?}")));
        }
    }
    if theta1 == theta2 {
        return Err(GroupError::Hypothesis("the two constructed morphisms coincide".into()));
    }
    Ok(Some(NonUniqueness { target, theta1, theta2 }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismVerdict {
    pub target_order: usize,
    pub exists: bool,
    pub unique: bool,
}

#[derive(Clone, Debug)]
pub struct UniversalityReport {
    pub perfect: bool,
    pub targets: Vec<MorphismVerdict>,
    pub non_uniqueness: Option<NonUniqueness>,
}

impl UniversalityReport {
    /// Perfect pairs: a unique morphism to every target. Otherwise: a non-uniqueness witness.
    pub fn passed(&self) -> bool {
        if self.perfect {
            self.targets.iter().all(|t| t.exists && t.unique)
        } else {
            self.non_uniqueness.is_some()
        }
    }
}

pub fn verify_universality(pair: &GroupPair, candidate: &CoverWitness, sample: &[RelCentralExt]) -> Result<UniversalityReport> {
    let mut targets = Vec::new();
    for s in sample {
        if **s.pair().g() != **pair.g() || **s.pair().n() != **pair.n() {
            return Err(GroupError::Hypothesis("sample extension belongs to another pair".into()));
        }
        let found = find_rce_morphism(&candidate.rce, s)?;
        targets.push(MorphismVerdict {
            target_order: s.m().order(),
            exists: found.witness.is_some(),
            unique: found.unique,
        });
    }
    let non_uniqueness = non_uniqueness_witness(&candidate.rce)?;
    Ok(UniversalityReport {
        perfect: pair.is_perfect(),
        targets,
        non_uniqueness,
    })
}

/// Extensions of `pair` used as morphism targets: the conjugation extension and one
/// representative per class over catalog groups of order `|N|·k`, `k ≤ max_factor`.
pub fn sample_extensions(pair: &GroupPair, catalog: &Catalog, max_factor: usize, caps: &SearchCaps) -> Result<Vec<RelCentralExt>> {
    let pair_auts = pair_automorphisms(pair)?;
    let mut out = vec![crate::pair::conjugation_rce(pair)];
    for k in 1..=max_factor {
        for e in catalog.of_order(pair.n().order() * k) {
            enumerate_extensions(pair, &e.group, &pair_auts, caps, &mut |r| out.push(r))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::center;
    use crate::hom::quotient;
    use crate::pair::{conjugation_lift_action, conjugation_rce, make_pair};
    use crate::group::direct_product;
    use crate::hom::are_isomorphic;

    fn catalog() -> Catalog {
        Catalog::builtin().unwrap()
    }

    fn absolute(c: &Catalog, name: &str) -> GroupPair {
        let g = c.group(name).unwrap();
        make_pair(&g, &g).unwrap()
    }

    fn d4_cover_of_v4() -> RelCentralExt {
        let d = catalog().group("D4").unwrap();
        let (q, proj) = quotient(&d, &center(&d)).unwrap();
        let pair = make_pair(&q, &q).unwrap();
        let action = conjugation_lift_action(&proj).unwrap();
        RelCentralExt::new(pair, proj, action).unwrap()
    }

    #[test]
    fn witness_for_lifted_d4() {
        let r = d4_cover_of_v4();
        let m2 = AbelianInvariants::from_divisors(vec![2]).unwrap();
        let w = find_cover_witness(&r, &m2).unwrap().unwrap();
        assert_eq!(w.a_indices, r.m().center_indices());
    }

    #[test]
    fn conjugation_extensions_as_covers() {
        let c = catalog();
        let s3 = absolute(&c, "S3");
        assert!(is_covering_pair(&conjugation_rce(&s3), &AbelianInvariants::trivial()).unwrap());
        let v4 = absolute(&c, "V4");
        let m2 = AbelianInvariants::from_divisors(vec![2]).unwrap();
        assert!(!is_covering_pair(&conjugation_rce(&v4), &m2).unwrap());
    }

    #[test]
    fn v4_covers_are_d4_and_q8() {
        let c = catalog();
        let res = search_covering_pairs(&absolute(&c, "V4"), &c, &SearchCaps::default()).unwrap();
        let names: Vec<&str> = res.covers.iter().map(|f| f.group_name.as_str()).collect();
        assert_eq!(names, vec!["D4", "Q8"]);
        assert!(res.exhaustive && !res.caps_hit);
    }

    #[test]
    fn small_cyclic_covers() {
        let c = catalog();
        for name in ["C2", "C3"] {
            let res = search_covering_pairs(&absolute(&c, name), &c, &SearchCaps::default()).unwrap();
            let names: Vec<&str> = res.covers.iter().map(|f| f.group_name.as_str()).collect();
            assert_eq!(names, vec![name]);
        }
    }

    #[test]
    fn constructed_cover_of_elementary_abelian() {
        let c = catalog();
        let p = absolute(&c, "C2^3");
        let (inv, _) = schur_multiplier_pair(&p, 100_000).unwrap();
        let w = construct_cover(&p, &inv, 100_000).unwrap();
        assert_eq!(w.m().order(), 64);
        assert!(verify_witness_invariants(&w));
    }

    fn verify_witness_invariants(w: &CoverWitness) -> bool {
        let a = w.a();
        w.m().order() == w.pair().n().order() * w.multiplier.order() as usize
            && abelian_invariants(&a).unwrap() == w.multiplier
    }

    #[test]
    fn constructed_and_searched_agree() {
        let c = catalog();
        let p = absolute(&c, "V4");
        let (inv, _) = schur_multiplier_pair(&p, 100_000).unwrap();
        let w = construct_cover(&p, &inv, 100_000).unwrap();
        let name = c.name_of(w.m());
        assert!(name == "D4" || name == "Q8");
    }

    #[test]
    fn nilpotent_assembly_c6() {
        let c = catalog();
        let p = absolute(&c, "C6");
        let covers: Vec<RelCentralExt> = sylow_pairs(&p)
            .unwrap()
            .iter()
            .map(|sp| {
                let (inv, _) = schur_multiplier_pair(sp, 1000).unwrap();
                construct_cover(sp, &inv, 1000).unwrap().rce
            })
            .collect();
        let r = assemble_nilpotent_cover(&p, &covers, 1000).unwrap();
        assert_eq!(r.m().order(), 6);
        assert!(is_covering_pair(&r, &AbelianInvariants::trivial()).unwrap());
    }

    #[test]
    fn nilpotent_assembly_with_dihedral_sylow_cover() {
        let c = catalog();
        let p = absolute(&c, "C2xC6");
        let covers: Vec<RelCentralExt> = sylow_pairs(&p)
            .unwrap()
            .iter()
            .map(|sp| {
                let res = search_covering_pairs(sp, &c, &SearchCaps::default()).unwrap();
                let d4 = res.covers.iter().find(|f| f.group_name == "D4");
                d4.unwrap_or(&res.covers[0]).witness.rce.clone()
            })
            .collect();
        let r = assemble_nilpotent_cover(&p, &covers, 1000).unwrap();
        let (inv, _) = schur_multiplier_pair(&p, 1000).unwrap();
        assert_eq!(inv.divisors(), &[2]);
        assert!(is_covering_pair(&r, &inv).unwrap());
        let d4c3 = Arc::new(direct_product(&c.group("D4").unwrap(), &c.group("C3").unwrap()).unwrap());
        assert!(are_isomorphic(r.m(), &d4c3).unwrap());
    }

    #[test]
    fn cover_checks_on_small_pairs() {
        let c = catalog();
        let s3 = c.group("S3").unwrap();
        let a3 = Arc::new(crate::group::derived_subgroup(&s3));
        let p = make_pair(&s3, &a3).unwrap();
        let res = search_covering_pairs(&p, &c, &SearchCaps::default()).unwrap();
        assert!(!res.covers.is_empty());
        for f in &res.covers {
            assert!(check_cover_commutator(&p, &f.witness).unwrap());
        }
        let w = &res.covers[0].witness;
        let rep = check_cover_uniqueness(w, w).unwrap();
        assert!(rep.not_applicable.is_some());
        let v4 = absolute(&c, "V4");
        let res = search_covering_pairs(&v4, &c, &SearchCaps::default()).unwrap();
        assert!(matches!(check_cover_commutator(&v4, &res.covers[0].witness), Err(GroupError::Hypothesis(_))));
    }

    #[test]
    fn universality_dichotomy() {
        let c = catalog();
        let s3 = c.group("S3").unwrap();
        let a3 = Arc::new(crate::group::derived_subgroup(&s3));
        let p = make_pair(&s3, &a3).unwrap();
        let w = search_covering_pairs(&p, &c, &SearchCaps::default()).unwrap().covers.remove(0).witness;
        let sample = sample_extensions(&p, &c, 2, &SearchCaps::default()).unwrap();
        let rep = verify_universality(&p, &w, &sample).unwrap();
        assert!(rep.perfect && rep.passed());
        let q = absolute(&c, "C2");
        let w = search_covering_pairs(&q, &c, &SearchCaps::default()).unwrap().covers.remove(0).witness;
        let rep = verify_universality(&q, &w, &[conjugation_rce(&q)]).unwrap();
        assert!(!rep.perfect && rep.passed());
        let nu = rep.non_uniqueness.unwrap();
        assert_ne!(nu.theta1, nu.theta2);
    }
}
