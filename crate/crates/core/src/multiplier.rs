//! Schur multiplier of a pair via the nonabelian exterior product `N ∧ G`,
//! plus a bar-complex homology oracle for the absolute case.
//!
//! Convention: left conjugation `ⁿg = n g n⁻¹` and commutator `[n, g] = n g n⁻¹ g⁻¹`.
//! The exterior product is generated by symbols `n ∧ g` subject to
//!
//! ```text
//! nn' ∧ g  = (ⁿn' ∧ ⁿg)(n ∧ g)
//! n ∧ gg'  = (n ∧ g)(ᵍn ∧ ᵍg')
//! n ∧ n    = 1
//! ```
//!
//! and `λ(n ∧ g) = [n, g]` maps it onto `[N, G]`. The multiplier is `ker λ`.

use std::sync::Arc;

use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::error::{GroupError, Result};
use crate::fp::coset::{coset_table_to_group, todd_coxeter};
use crate::fp::presentation::{letter, FpPresentation, Word};
use crate::fp::smith::{smith_normal_form_i64, IntegerMatrix};
use crate::fp::tietze::simplify;
use crate::group::FiniteGroup;
use crate::hom::GroupHom;
use crate::pair::GroupPair;
use crate::perm::Permutation;
use crate::structure::{abelian_invariants, is_nilpotent, prime_divisors, sylow_indices};

/// Largest group order accepted by the homology oracle.
pub const HOMOLOGY_ORDER_CAP: usize = 16;

/// Realization of `N ∧ G` as a permutation group.
#[derive(Clone, Debug)]
pub struct ExteriorProduct {
    pub e: Arc<FiniteGroup>,
    pub lambda: GroupHom,
    /// Element of `E` for the symbol `n ∧ g`, indexed by `n_index * |G| + g`.
    pub generator_labels: Vec<u32>,
    group_order: usize,
}

impl ExteriorProduct {
    pub fn label(&self, n_index: usize, g: usize) -> usize {
        self.generator_labels[n_index * self.group_order + g] as usize
    }

    pub fn kernel_indices(&self) -> Vec<usize> {
        self.lambda.kernel_indices()
    }
}

/// Summary of a multiplier computation.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplierReport {
    pub invariants: AbelianInvariants,
    pub exterior_order: usize,
    pub commutator_order: usize,
    pub kernel_order: usize,
    pub presentation_generators: usize,
    pub reduced_generators: usize,
}

#[inline]
fn symbol(pair: &GroupPair, n_index: usize, g: usize) -> usize {
    n_index * pair.g().order() + g
}

/// Presentation of `N ∧ G` on generators `x_{n,g}`, identity-indexed ones included.
pub fn exterior_presentation(pair: &GroupPair) -> FpPresentation {
    let g = pair.g();
    let go = g.order();
    let nn = pair.n_in_g();
    let names: Vec<String> = (0..nn.len())
        .flat_map(|a| (0..go).map(move |b| format!("x{a}_{b}")))
        .collect();
    let x = |a: usize, b: usize| letter(symbol(pair, a, b), false);
    let xi = |a: usize, b: usize| letter(symbol(pair, a, b), true);
    let ni = |e: usize| pair.n_index(e).expect("conjugate stays in N");
    let left = |a: usize, b: usize| g.mul(g.mul(a, b), g.inv(a));
    let mut relators: Vec<Word> = Vec::new();
    for (a, &n) in nn.iter().enumerate() {
        for &n2 in nn {
            let prod = ni(g.mul(n, n2));
            for b in 0..go {
                relators.push(vec![x(prod, b), xi(a, b), xi(ni(left(n, n2)), left(n, b))]);
            }
        }
    }
    for (a, &n) in nn.iter().enumerate() {
        for b in 0..go {
            for b2 in 0..go {
                let prod = g.mul(b, b2);
                relators.push(vec![x(a, prod), xi(ni(left(b, n)), left(b, b2)), xi(a, b)]);
            }
        }
        relators.push(vec![x(a, n)]);
        relators.push(vec![x(a, 0)]);
    }
    for b in 0..go {
        relators.push(vec![x(0, b)]);
    }
    FpPresentation::new(names, relators).expect("symbols are in range")
}

/// Enumerates `N ∧ G`, builds `λ`, and returns the invariants of `ker λ`.
pub fn schur_multiplier_pair(pair: &GroupPair, max_cosets: usize) -> Result<(AbelianInvariants, ExteriorProduct)> {
    let (inv, ext, _) = schur_multiplier_with_report(pair, max_cosets)?;
    Ok((inv, ext))
}

pub fn schur_multiplier_with_report(
    pair: &GroupPair,
    max_cosets: usize,
) -> Result<(AbelianInvariants, ExteriorProduct, MultiplierReport)> {
    let g = pair.g();
    let go = g.order();
    let full = exterior_presentation(pair);
    let simple = simplify(&full);
    let reduced = &simple.presentation;
    let table = todd_coxeter(reduced, &[], max_cosets)?;
    let (e, gens) = if reduced.generator_count() == 0 {
        (FiniteGroup::trivial(1), Vec::new())
    } else {
        coset_table_to_group(&table, reduced)?
    };
    let e = Arc::new(e);
    let gen_index: Vec<usize> = gens.iter().map(|p| e.require_index(p)).collect::<Result<_>>()?;
    let value = |l: Option<u32>| -> usize {
        match l {
            None => 0,
            Some(l) => {
                let k = gen_index[(l / 2) as usize];
                if l & 1 == 1 {
                    e.inv(k)
                } else {
                    k
                }
            }
        }
    };
    let labels: Vec<u32> = simple.generator_values.iter().map(|&l| value(l) as u32).collect();

    // lambda on E's generators through any symbol representing them
    let mut images = vec![usize::MAX; reduced.generator_count()];
    for (s, &l) in simple.generator_values.iter().enumerate() {
        if let Some(l) = l {
            let r = (l / 2) as usize;
            if images[r] == usize::MAX {
                let (a, b) = (s / go, s % go);
                let c = g.mul(g.mul(pair.n_in_g()[a], b), g.mul(g.inv(pair.n_in_g()[a]), g.inv(b)));
                images[r] = if l & 1 == 1 { g.inv(c) } else { c };
            }
        }
    }
    let lambda = GroupHom::from_images(e.clone(), g.clone(), &gen_index, &images)?;
    let kernel = lambda.kernel_indices();
    let comm = pair.commutator_indices();
    if lambda.image_indices() != comm || e.order() != kernel.len() * comm.len() {
        return Err(GroupError::Invalid(format!(
            "exterior product of order {} does not split as |ker| {} times |[N,G]| {}",
            e.order(),
            kernel.len(),
            comm.len()
        )));
    }
    let central = kernel
        .iter()
        .all(|&k| (0..e.order()).all(|x| e.mul(k, x) == e.mul(x, k)));
    if !central {
        return Err(GroupError::Invalid("kernel of the commutator map is not central".into()));
    }
    let ker = e.subgroup_from_indices(&kernel);
    let invariants = abelian_invariants(&ker)?;
    let report = MultiplierReport {
        invariants: invariants.clone(),
        exterior_order: e.order(),
        commutator_order: comm.len(),
        kernel_order: kernel.len(),
        presentation_generators: full.generator_count(),
        reduced_generators: reduced.generator_count(),
    };
    let ext = ExteriorProduct {
        e,
        lambda,
        generator_labels: labels,
        group_order: go,
    };
    Ok((invariants, ext, report))
}

/// Torsion of `H₂(G, ℤ)` from the normalized bar complex: the torsion of
/// `C₂ / im d₃`, where `d₃[g|h|k] = [h|k] − [gh|k] + [g|hk] − [g|h]`.
pub fn schur_multiplier_homology(g: &FiniteGroup) -> Result<AbelianInvariants> {
    let n = g.order();
    if n > HOMOLOGY_ORDER_CAP {
        return Err(GroupError::CapExceeded {
            what: "homology oracle group order",
            cap: HOMOLOGY_ORDER_CAP,
        });
    }
    if n <= 2 {
        return Ok(AbelianInvariants::trivial());
    }
    let m = n - 1;
    // basis [g|h] with g, h non-identity, indexed (g-1)*m + (h-1)
    let idx = |a: usize, b: usize| -> Option<usize> { (a != 0 && b != 0).then(|| (a - 1) * m + (b - 1)) };
    let mut d3 = IntegerMatrix::<i64>::zeros(m * m, m * m * m);
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let col = ((a - 1) * m + (b - 1)) * m + (c - 1);
                let terms = [
                    (idx(b, c), 1),
                    (idx(g.mul(a, b), c), -1),
                    (idx(a, g.mul(b, c)), 1),
                    (idx(a, b), -1),
                ];
                for (row, s) in terms {
                    if let Some(row) = row {
                        d3.add_to(row, col, s);
                    }
                }
            }
        }
    }
    let diag = smith_normal_form_i64(&d3);
    let factors = diag.iter().filter_map(|d| {
        let v: u64 = d.try_into().expect("invariant factor fits in u64");
        (v > 1).then_some(v)
    });
    Ok(AbelianInvariants::from_cyclic_factors(factors))
}

/// Product of the multipliers of `(S, S ∩ N)` over the Sylow subgroups `S` of a nilpotent `G`.
pub fn multiplier_sylow_product(pair: &GroupPair, max_cosets: usize) -> Result<AbelianInvariants> {
    let g = pair.g();
    if !is_nilpotent(g) {
        return Err(GroupError::NotNilpotent);
    }
    let mut acc = AbelianInvariants::trivial();
    for sp in sylow_pairs(pair)? {
        let (inv, _) = schur_multiplier_pair(&sp, max_cosets)?;
        acc = acc.product(&inv);
    }
    Ok(acc)
}

/// The pairs `(S, S ∩ N)` for the Sylow subgroups of `G`, in increasing prime order.
pub fn sylow_pairs(pair: &GroupPair) -> Result<Vec<GroupPair>> {
    let g = pair.g();
    let mut out = Vec::new();
    for p in prime_divisors(g.order()) {
        let s_idx = sylow_indices(g, p)?;
        let s = Arc::new(g.subgroup_from_indices(&s_idx));
        let both: Vec<Permutation> = s_idx
            .iter()
            .filter(|&&i| pair.contains(i))
            .map(|&i| g.element(i).clone())
            .collect();
        let sn: Vec<usize> = both.iter().map(|p| s.require_index(p)).collect::<Result<_>>()?;
        let mut sn = sn;
        sn.sort_unstable();
        out.push(GroupPair::from_indices(s, &sn)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::coset::DEFAULT_MAX_COSETS;
    use crate::group::tests::{d4, perm, s3};
    use crate::pair::make_pair;

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let c: Vec<u32> = (0..n as u32).collect();
        Arc::new(FiniteGroup::generate(n.max(1), vec![perm(n.max(1), &[&c])], 100).unwrap())
    }

    fn v4() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::generate(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])], 10).unwrap())
    }

    fn absolute(g: &Arc<FiniteGroup>) -> GroupPair {
        make_pair(g, g).unwrap()
    }

    fn mult(p: &GroupPair) -> Vec<u64> {
        schur_multiplier_pair(p, DEFAULT_MAX_COSETS).unwrap().0.divisors().to_vec()
    }

    #[test]
    fn presentation_shape() {
        let g = Arc::new(s3());
        let a3 = Arc::new(crate::group::subgroup_generated(&g, &[perm(3, &[&[0, 1, 2]])]).unwrap());
        assert_eq!(exterior_presentation(&make_pair(&g, &a3).unwrap()).generator_count(), 18);
        let c2 = cyclic(2);
        assert_eq!(exterior_presentation(&absolute(&c2)).generator_count(), 4);
    }

    #[test]
    fn small_multipliers() {
        let c2 = cyclic(2);
        let (inv, ext) = schur_multiplier_pair(&absolute(&c2), 1000).unwrap();
        assert!(inv.is_trivial());
        assert_eq!(ext.e.order(), 1);
        assert_eq!(mult(&absolute(&v4())), vec![2]);
        assert!(mult(&absolute(&cyclic(6))).is_empty());
        let one = Arc::new(FiniteGroup::trivial(4));
        assert!(mult(&make_pair(&v4(), &one).unwrap()).is_empty());
    }

    #[test]
    fn exterior_labels_map_to_commutators() {
        let d = Arc::new(d4());
        let p = absolute(&d);
        let (inv, ext) = schur_multiplier_pair(&p, 1000).unwrap();
        assert_eq!(inv.divisors(), &[2]);
        for a in 0..8 {
            for b in 0..8 {
                let n = p.n_in_g()[a];
                let c = d.mul(d.mul(n, b), d.mul(d.inv(n), d.inv(b)));
                assert_eq!(ext.lambda.apply(ext.label(a, b)), c);
            }
        }
    }

    #[test]
    fn homology_oracle_values() {
        for n in 2..=6 {
            assert!(schur_multiplier_homology(&cyclic(n)).unwrap().is_trivial());
        }
        assert_eq!(schur_multiplier_homology(&v4()).unwrap().divisors(), &[2]);
        assert!(schur_multiplier_homology(&s3()).unwrap().is_trivial());
        assert_eq!(schur_multiplier_homology(&d4()).unwrap().divisors(), &[2]);
    }

    #[test]
    fn sylow_product_on_cyclic_pair() {
        let c6 = cyclic(6);
        let x = (0..6).find(|&i| c6.element_order(i) == 3).unwrap();
        let c3 = Arc::new(c6.subgroup_from_indices(&c6.closure(&[x])));
        let p = make_pair(&c6, &c3).unwrap();
        assert_eq!(
            multiplier_sylow_product(&p, 1000).unwrap(),
            schur_multiplier_pair(&p, 1000).unwrap().0
        );
        assert!(matches!(
            multiplier_sylow_product(&absolute(&Arc::new(s3())), 1000),
            Err(GroupError::NotNilpotent)
        ));
    }
}
