//! Sylow subgroups, nilpotency, subgroup lattices, Frattini subgroups and
//! abelian invariants.

use std::collections::{BTreeMap, HashSet};

use crate::abelian::{factorize, is_prime, AbelianInvariants};
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;

/// Default order cap for full subgroup enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 64;

fn p_part(n: usize, p: usize) -> usize {
    let mut q = 1;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    q
}

fn is_power_of(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

/// Indices of a Sylow `p`-subgroup, grown inside successive normalizers.
pub fn sylow_indices(g: &FiniteGroup, p: u64) -> Result<Vec<usize>> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let p = p as usize;
    let target = p_part(g.order(), p);
    let mut sub = vec![0usize];
    while sub.len() < target {
        let norm = g.normalizer_indices(&sub);
        let mut member = vec![false; g.order()];
        for &i in &sub {
            member[i] = true;
        }
        let x = norm
            .into_iter()
            .find(|&x| !member[x] && is_power_of(g.element_order(x), p))
            .expect("normalizer of a non-Sylow p-subgroup contains a further p-element");
        let mut gens = g.generating_set_within(&sub);
        gens.push(x);
        sub = g.closure(&gens);
        debug_assert!(is_power_of(sub.len(), p));
    }
    Ok(sub)
}

/// A Sylow `p`-subgroup; trivial when `p` does not divide `|G|`.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<FiniteGroup> {
    Ok(g.subgroup_from_indices(&sylow_indices(g, p)?))
}

pub fn prime_divisors(n: usize) -> Vec<u64> {
    factorize(n as u64).into_iter().map(|(p, _)| p).collect()
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    prime_divisors(g.order()).into_iter().all(|p| {
        let s = sylow_indices(g, p).expect("prime divisor");
        g.is_normal_indices(&s)
    })
}

fn bitset(n: usize, idx: &[usize]) -> Vec<u64> {
    let mut b = vec![0u64; n.div_ceil(64)];
    for &i in idx {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn bits_to_indices(b: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in b.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            out.push(w * 64 + t);
            x &= x - 1;
        }
    }
    out
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Every subgroup as a sorted index list, ordered by (order, element list).
pub fn all_subgroup_indices(g: &FiniteGroup, cap: usize) -> Result<Vec<Vec<usize>>> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded {
            what: "subgroup enumeration order",
            cap,
        });
    }
    let n = g.order();
    let mut cyclic: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for x in 0..n {
        let c = g.closure(&[x]);
        if seen.insert(bitset(n, &c)) {
            cyclic.push(c);
        }
    }
    let cyclic_bits: Vec<Vec<u64>> = cyclic.iter().map(|c| bitset(n, c)).collect();
    let mut found: Vec<Vec<usize>> = cyclic.clone();
    let mut head = 0;
    while head < found.len() {
        let h = found[head].clone();
        head += 1;
        let hb = bitset(n, &h);
        let hgens = g.generating_set_within(&h);
        for (c, cb) in cyclic.iter().zip(&cyclic_bits) {
            if is_subset(cb, &hb) {
                continue;
            }
            let mut gens = hgens.clone();
            gens.push(*c.iter().max_by_key(|&&x| g.element_order(x)).expect("nonempty"));
            let j = g.closure(&gens);
            if seen.insert(bitset(n, &j)) {
                found.push(j);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<FiniteGroup>> {
    Ok(all_subgroup_indices(g, cap)?
        .iter()
        .map(|s| g.subgroup_from_indices(s))
        .collect())
}

pub fn maximal_subgroup_indices(g: &FiniteGroup, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let subs = all_subgroup_indices(g, cap)?;
    let proper: Vec<&Vec<usize>> = subs.iter().filter(|s| s.len() < n).collect();
    let bits: Vec<Vec<u64>> = proper.iter().map(|s| bitset(n, s)).collect();
    Ok(proper
        .iter()
        .enumerate()
        .filter(|(i, s)| {
            !bits
                .iter()
                .enumerate()
                .any(|(j, b)| j != *i && proper[j].len() > s.len() && is_subset(&bits[*i], b))
        })
        .map(|(_, s)| (*s).clone())
        .collect())
}

/// Intersection of all maximal subgroups (the whole group when there are none).
pub fn frattini_indices(g: &FiniteGroup, cap: usize) -> Result<Vec<usize>> {
    let n = g.order();
    let mut acc = bitset(n, &(0..n).collect::<Vec<_>>());
    for m in maximal_subgroup_indices(g, cap)? {
        let b = bitset(n, &m);
        acc.iter_mut().zip(&b).for_each(|(x, y)| *x &= y);
    }
    Ok(bits_to_indices(&acc))
}

pub fn frattini_subgroup(g: &FiniteGroup) -> Result<FiniteGroup> {
    Ok(g.subgroup_from_indices(&frattini_indices(g, DEFAULT_LATTICE_CAP)?))
}

/// Normal subgroups from joins of conjugacy classes, ordered by (order, element list).
pub fn normal_subgroup_indices(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let classes = g.conjugacy_classes();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut found = vec![vec![0usize]];
    seen.insert(bitset(n, &found[0]));
    let mut head = 0;
    while head < found.len() {
        let h = found[head].clone();
        head += 1;
        let hb = bitset(n, &h);
        for cls in &classes {
            if hb[cls[0] / 64] & (1 << (cls[0] % 64)) != 0 {
                continue;
            }
            let mut gens = g.generating_set_within(&h);
            gens.extend(cls.iter().copied());
            let j = g.normal_closure_of(&gens);
            if seen.insert(bitset(n, &j)) {
                found.push(j);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<FiniteGroup> {
    normal_subgroup_indices(g)
        .iter()
        .map(|s| g.subgroup_from_indices(s))
        .collect()
}

/// Invariant factors of an abelian group, from the sizes of its `p^k`-torsion layers.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<AbelianInvariants> {
    if !g.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let mut factors = Vec::new();
    for (p, a) in factorize(g.order() as u64) {
        let p = p as usize;
        // omega[k] = log_p |{x : x^(p^k) = 1}|
        let mut omega = vec![0u32];
        let mut pk = 1usize;
        loop {
            pk *= p;
            let count = (0..g.order()).filter(|&x| pk.is_multiple_of(g.element_order(x))).count();
            let e = count.ilog(p);
            omega.push(e);
            if e == a {
                break;
            }
        }
        // cyclic factors of order >= p^k: omega[k] - omega[k-1]
        let at_least: Vec<u32> = (1..omega.len()).map(|k| omega[k] - omega[k - 1]).collect();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[k] - next) {
                factors.push((p as u64).pow(k as u32 + 1));
            }
        }
    }
    Ok(AbelianInvariants::from_cyclic_factors(factors))
}

/// Histogram of subgroup orders, handy for quick structural fingerprints.
pub fn subgroup_order_profile(g: &FiniteGroup, cap: usize) -> Result<BTreeMap<usize, usize>> {
    let mut h = BTreeMap::new();
    for s in all_subgroup_indices(g, cap)? {
        *h.entry(s.len()).or_insert(0) += 1;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{d4, perm, s3};

    fn cyclic(n: usize) -> FiniteGroup {
        let c: Vec<u32> = (0..n as u32).collect();
        FiniteGroup::generate(n, vec![perm(n, &[&c])], 100).unwrap()
    }

    fn a4() -> FiniteGroup {
        FiniteGroup::generate(4, vec![perm(4, &[&[0, 1, 2]]), perm(4, &[&[0, 1], &[2, 3]])], 100).unwrap()
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow_subgroup(&cyclic(6), 2).unwrap().order(), 2);
        assert_eq!(sylow_subgroup(&a4(), 2).unwrap().order(), 4);
        assert_eq!(sylow_subgroup(&a4(), 5).unwrap().order(), 1);
        assert!(matches!(sylow_subgroup(&a4(), 4), Err(GroupError::NotPrime(4))));
    }

    #[test]
    fn nilpotency() {
        assert!(!is_nilpotent(&s3()));
        assert!(is_nilpotent(&d4()));
        assert!(is_nilpotent(&cyclic(6)));
        assert!(!is_nilpotent(&a4()));
    }

    #[test]
    fn frattini_examples() {
        assert_eq!(frattini_subgroup(&cyclic(4)).unwrap().order(), 2);
        assert_eq!(frattini_subgroup(&d4()).unwrap().order(), 2);
        assert_eq!(frattini_subgroup(&s3()).unwrap().order(), 1);
        assert_eq!(frattini_subgroup(&cyclic(1)).unwrap().order(), 1);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroup_indices(&s3(), 64).unwrap().len(), 6);
        assert_eq!(all_subgroup_indices(&d4(), 64).unwrap().len(), 10);
        assert_eq!(all_subgroup_indices(&a4(), 64).unwrap().len(), 10);
    }

    #[test]
    fn normal_subgroup_lists() {
        let orders: Vec<usize> = normal_subgroups(&s3()).iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 3, 6]);
        let orders: Vec<usize> = normal_subgroups(&a4()).iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 4, 12]);
        assert_eq!(normal_subgroups(&d4()).len(), 6);
    }

    #[test]
    fn invariants_of_abelian_groups() {
        assert_eq!(abelian_invariants(&cyclic(6)).unwrap().divisors(), &[6]);
        let v4 = FiniteGroup::generate(4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])], 10).unwrap();
        assert_eq!(abelian_invariants(&v4).unwrap().divisors(), &[2, 2]);
        let c2c4 = FiniteGroup::generate(6, vec![perm(6, &[&[0, 1]]), perm(6, &[&[2, 3, 4, 5]])], 10).unwrap();
        assert_eq!(abelian_invariants(&c2c4).unwrap().divisors(), &[2, 4]);
        assert!(abelian_invariants(&cyclic(1)).unwrap().is_trivial());
        assert!(matches!(abelian_invariants(&s3()), Err(GroupError::NotAbelian)));
    }
}
