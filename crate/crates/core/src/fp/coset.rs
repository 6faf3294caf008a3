//! Todd–Coxeter coset enumeration (HLT with deduction processing and a
//! lookahead pass before overflow).

use crate::error::{GroupError, Result};
use crate::fp::presentation::{inverse_word, FpPresentation, Letter, Word};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const NONE: u32 = u32::MAX;
const DEDUCTION_LIMIT: usize = 1 << 16;

/// A complete coset table; row `c`, column `l` is the coset `c · l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<u32>,
    count: usize,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.count
    }

    pub fn column_count(&self) -> usize {
        self.columns
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    #[inline]
    pub fn entry(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset * self.columns + l as usize] as usize
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|&x| x != NONE)
    }

    /// Coset reached from `coset` by reading `w`.
    pub fn trace(&self, coset: usize, w: &[Letter]) -> usize {
        w.iter().fold(coset, |c, &l| self.entry(c, l))
    }

    /// Every relator closes at every coset and inverse columns are mutual inverses.
    pub fn is_consistent(&self, pres: &FpPresentation) -> bool {
        (0..self.count).all(|c| {
            (0..self.columns as u32).all(|l| self.entry(self.entry(c, l), l ^ 1) == c)
                && pres.relators().iter().all(|r| self.trace(c, r) == c)
        })
    }
}

struct Enumerator<'a> {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    relators: &'a [Word],
    /// rotations of relators and their inverses, bucketed by first letter
    rotations: Vec<Vec<Word>>,
    deductions: Vec<(u32, Letter)>,
    deduction_overflow: bool,
}

impl<'a> Enumerator<'a> {
    fn new(columns: usize, relators: &'a [Word], max: usize) -> Self {
        let mut rotations = vec![Vec::new(); columns];
        let mut seen = std::collections::HashSet::new();
        for r in relators {
            for w in [r.clone(), inverse_word(r)] {
                for k in 0..w.len() {
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    if seen.insert(rot.clone()) {
                        rotations[rot[0] as usize].push(rot);
                    }
                }
            }
        }
        let mut e = Enumerator {
            columns,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            max,
            relators,
            rotations,
            deductions: Vec::new(),
            deduction_overflow: false,
        };
        e.new_coset();
        e
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, l: Letter) -> u32 {
        self.table[c as usize * self.columns + l as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, l: Letter, d: u32) {
        self.table[c as usize * self.columns + l as usize] = d;
    }

    #[inline]
    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.columns));
        self.live += 1;
        c
    }

    fn push_deduction(&mut self, c: u32, l: Letter) {
        if self.deductions.len() >= DEDUCTION_LIMIT {
            self.deduction_overflow = true;
        } else {
            self.deductions.push((c, l));
        }
    }

    fn define(&mut self, c: u32, l: Letter) -> u32 {
        let d = self.new_coset();
        self.set(c, l, d);
        self.set(d, l ^ 1, c);
        self.push_deduction(c, l);
        d
    }

    fn find(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for l in 0..self.columns as Letter {
                let f = self.get(e, l);
                if f == NONE {
                    continue;
                }
                if self.get(f, l ^ 1) == e {
                    self.set(f, l ^ 1, NONE);
                }
                let e1 = self.find(e);
                let f1 = self.find(f);
                let t = self.get(e1, l);
                if t != NONE {
                    self.merge(f1, t, &mut queue);
                } else {
                    let s = self.get(f1, l ^ 1);
                    if s != NONE {
                        self.merge(e1, s, &mut queue);
                    } else {
                        self.set(e1, l, f1);
                        self.set(f1, l ^ 1, e1);
                        self.push_deduction(e1, l);
                    }
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions. Returns `(f, i, b, j)` with the
    /// forward trace stopped before `w[i]` at `f` and the backward trace stopped
    /// after `w[j]` at `b`.
    fn trace_both(&self, c: u32, w: &[Letter]) -> (u32, usize, u32, isize) {
        let mut f = c;
        let mut i = 0;
        while i < w.len() {
            let n = self.get(f, w[i]);
            if n == NONE {
                break;
            }
            f = n;
            i += 1;
        }
        let mut b = c;
        let mut j = w.len() as isize - 1;
        while j >= i as isize {
            let n = self.get(b, w[j as usize] ^ 1);
            if n == NONE {
                break;
            }
            b = n;
            j -= 1;
        }
        (f, i, b, j)
    }

    /// Scan without defining new cosets; closes single gaps.
    fn scan(&mut self, c: u32, w: &[Letter]) {
        let (f, i, b, j) = self.trace_both(c, w);
        if i == w.len() {
            if f != c {
                self.coincidence(f, c);
            }
        } else if j < i as isize {
            self.coincidence(f, b);
        } else if j == i as isize {
            let l = w[i];
            self.set(f, l, b);
            self.set(b, l ^ 1, f);
            self.push_deduction(f, l);
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[Letter]) -> Result<()> {
        loop {
            if !self.alive(c) {
                return Ok(());
            }
            let (f, i, b, j) = self.trace_both(c, w);
            if i == w.len() {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let l = w[i];
                self.set(f, l, b);
                self.set(b, l ^ 1, f);
                self.push_deduction(f, l);
                return Ok(());
            }
            if self.live >= self.max {
                self.lookahead()?;
                continue;
            }
            self.define(f, w[i]);
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, l)) = self.deductions.pop() {
            if !self.alive(c) {
                continue;
            }
            let rots = std::mem::take(&mut self.rotations[l as usize]);
            for r in &rots {
                if !self.alive(c) {
                    break;
                }
                self.scan(c, r);
            }
            self.rotations[l as usize] = rots;
            let d = self.get(c, l);
            if d != NONE && self.alive(d) {
                let rots = std::mem::take(&mut self.rotations[(l ^ 1) as usize]);
                for r in &rots {
                    if !self.alive(d) {
                        break;
                    }
                    self.scan(d, r);
                }
                self.rotations[(l ^ 1) as usize] = rots;
            }
        }
        if self.deduction_overflow {
            self.deduction_overflow = false;
            self.full_scan();
        }
    }

    /// Scans every live coset under every relator without defining anything.
    fn full_scan(&mut self) {
        let relators = self.relators;
        for c in 0..self.allocated() as u32 {
            for r in relators {
                if !self.alive(c) {
                    break;
                }
                self.scan(c, r);
            }
        }
        self.deductions.clear();
    }

    fn lookahead(&mut self) -> Result<()> {
        let before = self.live;
        self.full_scan();
        self.process_deductions();
        if self.live >= self.max {
            return Err(GroupError::EnumerationOverflow {
                live: before,
                limit: self.max,
            });
        }
        Ok(())
    }

    /// Renumbers live cosets in increasing order; returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.allocated();
        let mut map = vec![NONE; n];
        let mut k = 0u32;
        for c in 0..n {
            if self.parent[c] == c as u32 {
                map[c] = k;
                k += 1;
            }
        }
        let mut table = Vec::with_capacity(k as usize * self.columns);
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            for l in 0..self.columns {
                let d = self.table[c * self.columns + l];
                table.push(if d == NONE { NONE } else { map[self.find(d) as usize] });
            }
        }
        self.table = table;
        self.parent = (0..k).collect();
        let deds = std::mem::take(&mut self.deductions);
        self.deductions = deds
            .into_iter()
            .filter(|&(c, _)| map[c as usize] != NONE)
            .map(|(c, l)| (map[c as usize], l))
            .collect();
        map
    }

    fn run(mut self, subgroup: &[Word]) -> Result<CosetTable> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
            self.process_deductions();
        }
        let relators = self.relators;
        let mut c: u32 = 0;
        while (c as usize) < self.allocated() {
            if self.allocated() > 4096 && self.allocated() > 2 * self.live {
                let map = self.compact();
                // next live coset at or after c
                let mut k = c as usize;
                while k < map.len() && map[k] == NONE {
                    k += 1;
                }
                c = if k < map.len() { map[k] } else { self.allocated() as u32 };
                continue;
            }
            if self.alive(c) {
                for r in relators {
                    self.scan_and_fill(c, r)?;
                    self.process_deductions();
                    if !self.alive(c) {
                        break;
                    }
                }
                let mut l: Letter = 0;
                while (l as usize) < self.columns && self.alive(c) {
                    if self.get(c, l) == NONE {
                        if self.live >= self.max {
                            self.lookahead()?;
                            continue;
                        }
                        self.define(c, l);
                        self.process_deductions();
                    }
                    l += 1;
                }
            }
            c += 1;
        }
        self.compact();
        let count = self.allocated();
        Ok(CosetTable {
            columns: self.columns,
            rows: self.table,
            count,
        })
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_words`.
pub fn todd_coxeter(pres: &FpPresentation, subgroup_words: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(GroupError::Invalid("max_cosets must be at least 1".into()));
    }
    let columns = 2 * pres.generator_count();
    let table = Enumerator::new(columns, pres.relators(), max_cosets).run(subgroup_words)?;
    debug_assert!(table.is_complete());
    debug_assert!(table.is_consistent(pres));
    Ok(table)
}

/// Permutation action of a complete table over the trivial subgroup.
///
/// Generator `a` acts by `c ↦ c · a⁻¹`, so evaluating a word as a product of
/// generator permutations is a homomorphism from the presented group.
pub fn coset_table_to_group(table: &CosetTable, pres: &FpPresentation) -> Result<(FiniteGroup, Vec<Permutation>)> {
    if !table.is_complete() || table.generator_count() != pres.generator_count() {
        return Err(GroupError::IncompleteTable);
    }
    let n = table.coset_count();
    let gens: Vec<Permutation> = (0..pres.generator_count())
        .map(|g| {
            let col = crate::fp::presentation::letter(g, true);
            Permutation::from_images((0..n).map(|c| table.entry(c, col) as u32).collect())
        })
        .collect::<Result<_>>()?;
    let group = FiniteGroup::generate(n, gens.clone(), n.max(1))?;
    Ok((group, gens))
}

/// Evaluates a word on generator permutations (inverse letters use inverses).
pub fn evaluate_word(gens: &[Permutation], w: &[Letter], degree: usize) -> Permutation {
    let mut acc = Permutation::identity(degree);
    for &l in w {
        let g = &gens[crate::fp::presentation::letter_generator(l)];
        let p = if l & 1 == 1 { g.inverse() } else { g.clone() };
        acc = acc.compose_unchecked(&p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::presentation::{parse_presentation, parse_word};

    fn pres(s: &str) -> FpPresentation {
        parse_presentation(s).unwrap().presentation
    }

    #[test]
    fn cyclic_groups() {
        for n in 1..=12 {
            let p = pres(&format!("<a | a^{n}>"));
            assert_eq!(todd_coxeter(&p, &[], 1000).unwrap().coset_count(), n);
        }
    }

    #[test]
    fn s3_and_subgroup_index() {
        let p = pres("<a,b | a^2, b^2, (a b)^3>");
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        assert_eq!(t.coset_count(), 6);
        assert!(t.is_consistent(&p));
        let a = parse_word(p.generator_names(), "a").unwrap();
        assert_eq!(todd_coxeter(&p, &[a], 1000).unwrap().coset_count(), 3);
    }

    #[test]
    fn quaternion_profile() {
        let p = pres("<a,b | a^4, a^2 b^-2, b^-1 a b a>");
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        let (g, gens) = coset_table_to_group(&t, &p).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.order_histogram().get(&2), Some(&1));
        for r in p.relators() {
            assert!(evaluate_word(&gens, r, g.degree()).is_identity());
        }
    }

    #[test]
    fn overflow_reports_live_count() {
        let p = pres("<a | a^50>");
        match todd_coxeter(&p, &[], 10) {
            Err(GroupError::EnumerationOverflow { limit, .. }) => assert_eq!(limit, 10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_group_with_many_coincidences() {
        let p = pres("<a,b | a b a^-1 b^-2, b a b^-1 a^-2>");
        assert_eq!(todd_coxeter(&p, &[], 1000).unwrap().coset_count(), 1);
    }

    #[test]
    fn larger_enumeration() {
        // Coxeter group of type A4 (S5) and B3 (order 48)
        let p = pres("<a,b,c,d | a^2,b^2,c^2,d^2,(a b)^3,(b c)^3,(c d)^3,(a c)^2,(a d)^2,(b d)^2>");
        assert_eq!(todd_coxeter(&p, &[], 10_000).unwrap().coset_count(), 120);
        let p = pres("<a,b,c | a^2,b^2,c^2,(a b)^3,(b c)^4,(a c)^2>");
        assert_eq!(todd_coxeter(&p, &[], 10_000).unwrap().coset_count(), 48);
    }

    #[test]
    fn deterministic_tables() {
        let p = pres("<a,b | a^3, b^3, (a b)^3, (a b^-1)^3>");
        let t1 = todd_coxeter(&p, &[], 10_000).unwrap();
        let t2 = todd_coxeter(&p, &[], 10_000).unwrap();
        assert_eq!(t1, t2);
    }
}
