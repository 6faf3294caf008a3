use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use pairkit::abelian::AbelianInvariants;
use pairkit::catalog::{all_pairs, Catalog, NamedPair};
use pairkit::covering::{search_covering_pairs, SearchCaps};
use pairkit::fp::smith::{smith_diagonal, smith_normal_form};
use pairkit::fp::{parse_presentation, parse_word, todd_coxeter};
use pairkit::isoclinism::are_isoclinic;
use pairkit::multiplier::schur_multiplier_pair;
use pairkit::pair::{check_rce, conjugation_rce, g_center_indices, g_commutator_indices, GroupAction, GroupPair};
use pairkit::{BigMatrix, FiniteGroup, Permutation, SmallMatrix};
use proptest::prelude::*;

fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| Catalog::builtin().unwrap())
}

fn pairs() -> &'static [NamedPair] {
    static P: OnceLock<Vec<NamedPair>> = OnceLock::new();
    P.get_or_init(|| all_pairs(catalog(), 8))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det3(m: &[Vec<i64>]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Invariant factors of a 3 × 3 matrix from gcds of its minors.
fn determinantal_invariants(m: &[Vec<i64>]) -> Vec<i64> {
    let d1 = m.iter().flatten().fold(0, |g, &x| gcd(g, x));
    let mut d2 = 0;
    for r in [(0, 1), (0, 2), (1, 2)] {
        for c in [(0, 1), (0, 2), (1, 2)] {
            d2 = gcd(d2, m[r.0][c.0] * m[r.1][c.1] - m[r.0][c.1] * m[r.1][c.0]);
        }
    }
    let d3 = det3(m).abs();
    let mut out = Vec::new();
    let mut prev = 1;
    for d in [d1, d2, d3] {
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out.resize(3, 0);
    out
}

fn matrix3() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_matches_minor_gcds(rows in matrix3()) {
        let small = smith_diagonal(&SmallMatrix::from_rows(rows.clone())).unwrap();
        prop_assert_eq!(&small, &determinantal_invariants(&rows));
        let big = smith_normal_form(&BigMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        ));
        prop_assert_eq!(big, small.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_diagonal_is_a_divisor_chain(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 4), 1..5)) {
        let d = smith_diagonal(&SmallMatrix::from_rows(rows)).unwrap();
        let nonzero: Vec<i64> = d.iter().copied().take_while(|&x| x != 0).collect();
        prop_assert!(d[nonzero.len()..].iter().all(|&x| x == 0));
        prop_assert!(nonzero.iter().all(|&x| x > 0));
        prop_assert!(nonzero.windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn enumeration_ignores_generator_order(k in 0usize..43, seed in any::<u64>()) {
        let c = catalog();
        let e = &c.entries()[k % c.len()];
        let mut gens = e.group.generators().to_vec();
        prop_assume!(!gens.is_empty());
        let mut s = seed;
        for i in (1..gens.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            gens.swap(i, (s >> 33) as usize % (i + 1));
        }
        gens.push(gens[0].compose(&gens[gens.len() - 1]).unwrap());
        let h = FiniteGroup::generate(e.group.degree(), gens, e.order()).unwrap();
        let a: BTreeSet<&Permutation> = e.group.elements().iter().collect();
        let b: BTreeSet<&Permutation> = h.elements().iter().collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(h.element(0).is_identity(), true);
    }

    #[test]
    fn coset_index_times_subgroup_order_is_group_order(n in 2usize..12, k in 1usize..12) {
        let p = parse_presentation(&format!("<a,b | a^{n}, b^2, (a b)^2>")).unwrap().presentation;
        let whole = todd_coxeter(&p, &[], 10_000).unwrap().coset_count();
        prop_assert_eq!(whole, 2 * n);
        let names = p.generator_names().to_vec();
        let sub = todd_coxeter(&p, &[parse_word(&names, &format!("a^{k}")).unwrap()], 10_000).unwrap();
        let sub_order = n / gcd(n as i64, k as i64) as usize;
        prop_assert_eq!(sub.coset_count() * sub_order, whole);
        let refl = todd_coxeter(&p, &[parse_word(&names, "b").unwrap()], 10_000).unwrap();
        prop_assert_eq!(refl.coset_count() * 2, whole);
    }

    #[test]
    fn conjugation_extension_satisfies_axioms(k in 0usize..1000) {
        let p = &pairs()[k % pairs().len()];
        let r = conjugation_rce(&p.pair);
        prop_assert!(r.report().all_pass());
        let conj = GroupAction::conjugation(&p.pair);
        prop_assert!(check_rce(r.sigma(), &conj, &p.pair).all_pass());
    }

    #[test]
    fn commutator_subgroup_two_ways(k in 0usize..1000) {
        let p = &pairs()[k % pairs().len()];
        let g = p.pair.g();
        let mut direct = g.commutator_indices(p.pair.n_in_g(), &(0..g.order()).collect::<Vec<_>>());
        direct.sort_unstable();
        let via_action: Vec<usize> = {
            let a = GroupAction::conjugation(&p.pair);
            let mut v: Vec<usize> = g_commutator_indices(&a).into_iter().map(|i| p.pair.n_in_g()[i]).collect();
            v.sort_unstable();
            v
        };
        let mut from_pair = p.pair.commutator_indices();
        from_pair.sort_unstable();
        prop_assert_eq!(&direct, &via_action);
        prop_assert_eq!(&direct, &from_pair);
    }

    #[test]
    fn multiplier_with_trivial_normal_subgroup_is_trivial(k in 0usize..43) {
        let c = catalog();
        let e = &c.entries()[k % c.len()];
        let p = GroupPair::from_indices(e.group.clone(), &[0]).unwrap();
        let (inv, _) = schur_multiplier_pair(&p, 100_000).unwrap();
        prop_assert!(inv.is_trivial());
    }

    #[test]
    fn invariants_are_canonical(factors in prop::collection::vec(1u64..=30, 0..5)) {
        let inv = AbelianInvariants::from_cyclic_factors(factors.iter().copied());
        prop_assert_eq!(inv.order(), factors.iter().product::<u64>());
        prop_assert!(AbelianInvariants::from_divisors(inv.divisors().to_vec()).is_some());
        let mut rev = factors.clone();
        rev.reverse();
        prop_assert_eq!(AbelianInvariants::from_cyclic_factors(rev), inv);
    }

    #[test]
    fn permutation_composition(images in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle(),
                               others in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(images).unwrap();
        let q = Permutation::from_images(others).unwrap();
        let pq = p.compose(&q).unwrap();
        for x in 0..6 {
            prop_assert_eq!(pq.apply(x), p.apply(q.apply(x)));
        }
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn g_center_lies_in_center(k in 0usize..1000) {
        let p = &pairs()[k % pairs().len()];
        let search = search_covering_pairs(&p.pair, catalog(), &SearchCaps::default()).unwrap();
        for c in &search.covers {
            let m = c.witness.m();
            let center: BTreeSet<usize> = m.center_indices().into_iter().collect();
            for z in g_center_indices(c.witness.rce.action()) {
                prop_assert!(center.contains(&z), "{}: element {} of Z(M,G) is not central", p.label(), z);
            }
        }
    }

    #[test]
    fn isoclinism_is_reflexive_and_symmetric(i in 0usize..1000, j in 0usize..1000) {
        let ps = pairs();
        let (a, b) = (&ps[i % ps.len()].pair, &ps[j % ps.len()].pair);
        let refl = are_isoclinic(a, a).unwrap();
        prop_assert!(refl.is_some());
        prop_assert!(refl.unwrap().validate(a, a).is_ok());
        let ab = are_isoclinic(a, b).unwrap();
        let ba = are_isoclinic(b, a).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let Some(w) = ab {
            prop_assert!(w.validate(a, b).is_ok());
        }
    }
}
