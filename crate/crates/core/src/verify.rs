//! Instance generation and per-instance verdicts for the checks on pairs,
//! covers and isoclinism, collected into reproducible reports.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{all_pairs, Catalog, NamedPair};
use crate::covering::{
    assemble_nilpotent_cover, build_cover, find_cover_witness, sample_extensions, search_covering_pairs,
    check_cover_commutator, check_cover_uniqueness, verify_universality, CoverSearch, SearchCaps,
};
use crate::error::{GroupError, Result};
use crate::group::{DirectProduct, FiniteGroup};
use crate::hom::{automorphism_group, GroupHom};
use crate::isoclinism::{
    are_isoclinic, isoclinic_direct_factor, isoclinism_from_epimorphism, isoclinic_order_identity, pair_center_indices,
    isoclinic_equal_order, check_cover_isoclinism, DirectFactor, Induced, IsoclinismWitness, Verdict,
};
use crate::multiplier::{multiplier_sylow_product, schur_multiplier_pair, sylow_pairs};
use crate::pair::GroupPair;
use crate::structure::{is_nilpotent, normal_subgroup_indices};

/// A check name together with its numeric identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckInfo {
    pub id: &'static str,
    pub name: &'static str,
    pub summary: &'static str,
}

pub const CHECKS: [CheckInfo; 10] = [
    CheckInfo {
        id: "1.4",
        name: "sylow-assembly",
        summary: "nilpotent pairs: multiplier is the product over Sylow pairs, and assembled Sylow covers are covers",
    },
    CheckInfo {
        id: "2.1",
        name: "cover-commutator",
        summary: "perfect pairs: every cover satisfies [M,G] = M",
    },
    CheckInfo {
        id: "2.3",
        name: "cover-uniqueness",
        summary: "covers with perfect M and proper Frattini subgroup agree up to isomorphism",
    },
    CheckInfo {
        id: "2.4",
        name: "universal-perfect",
        summary: "perfect pairs: a cover maps uniquely to every sampled extension",
    },
    CheckInfo {
        id: "2.5",
        name: "universal-dichotomy",
        summary: "perfect pairs have a universal extension; other pairs admit two distinct morphisms",
    },
    CheckInfo {
        id: "2.7",
        name: "epimorphism-isoclinism",
        summary: "an epimorphism with theta(N) = K and ker theta meeting N trivially induces an isoclinism",
    },
    CheckInfo {
        id: "2.8",
        name: "cover-isoclinism",
        summary: "covers with perfect M and proper Frattini subgroup are isoclinic as pairs",
    },
    CheckInfo {
        id: "2.9",
        name: "isoclinic-order-identity",
        summary: "perfect (G,N) isoclinic to (H,K): |K||Z(G,N)||Z(H,K) meet [H,K]| = |N||Z(H,K)|",
    },
    CheckInfo {
        id: "2.10",
        name: "isoclinic-direct-factor",
        summary: "perfect (G,N) with trivial Z(G,N) isoclinic to (H,K): K is N times an abelian group",
    },
    CheckInfo {
        id: "2.11",
        name: "isoclinic-equal-order",
        summary: "perfect (G,N) isoclinic to (H,K) with |N| = |K|: N and K are isomorphic",
    },
];

/// Looks a check up by identifier or name.
pub fn check_info(key: &str) -> Option<CheckInfo> {
    CHECKS.iter().copied().find(|c| c.id == key || c.name == key)
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub instance: String,
    pub reason: String,
    pub reproduction: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarnessReport {
    pub id: String,
    pub check: String,
    pub max_order: usize,
    pub instances: usize,
    pub passes: usize,
    pub not_applicable: usize,
    pub failures: Vec<InstanceRecord>,
    /// Up to a few hypothesis-violating instances with their reasons.
    pub not_applicable_examples: Vec<InstanceRecord>,
    /// Instances that could not be decided within the caps.
    pub partial: Vec<InstanceRecord>,
    #[serde(skip)]
    pub elapsed: Duration,
}

const NA_EXAMPLES: usize = 5;

impl HarnessReport {
    fn new(info: CheckInfo, max_order: usize) -> Self {
        HarnessReport {
            id: info.id.to_string(),
            check: info.name.to_string(),
            max_order,
            instances: 0,
            passes: 0,
            not_applicable: 0,
            failures: Vec::new(),
            not_applicable_examples: Vec::new(),
            partial: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn record(&mut self, instance: String, verdict: Verdict, reproduction: Value) {
        self.instances += 1;
        match verdict {
            Verdict::Pass => self.passes += 1,
            Verdict::NotApplicable(reason) => {
                self.not_applicable += 1;
                if self.not_applicable_examples.len() < NA_EXAMPLES {
                    self.not_applicable_examples.push(InstanceRecord {
                        instance,
                        reason,
                        reproduction,
                    });
                }
            }
            Verdict::Fail(reason) => self.failures.push(InstanceRecord {
                instance,
                reason,
                reproduction,
            }),
        }
    }

    fn record_partial(&mut self, instance: String, reason: String, reproduction: Value) {
        self.instances += 1;
        self.partial.push(InstanceRecord {
            instance,
            reason,
            reproduction,
        });
    }

    pub fn failure_count(&self) -> usize {
        self.failures.len()
    }

    /// Every instance passed or was out of scope, and none hit a cap.
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.partial.is_empty()
    }

    /// `passes + N/A + failures + partial = instances`.
    pub fn is_consistent(&self) -> bool {
        self.passes + self.not_applicable + self.failures.len() + self.partial.len() == self.instances
    }
}

/// Generators of a pair as image lists, enough to rebuild it.
pub fn pair_reproduction(p: &GroupPair) -> Value {
    let g = p.g();
    let gens = |idx: Vec<usize>| -> Vec<Vec<u32>> { idx.iter().map(|&i| g.element(i).images().to_vec()).collect() };
    json!({
        "degree": g.degree(),
        "group_generators": gens(g.generator_indices()),
        "normal_generators": gens(g.generating_set_within(p.n_in_g())),
    })
}

fn group_reproduction(m: &FiniteGroup) -> Value {
    json!({
        "degree": m.degree(),
        "generators": m.generators().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
    })
}

/// A pair with a display label.
#[derive(Clone, Debug)]
pub struct LabeledPair {
    pub label: String,
    pub pair: GroupPair,
}

impl From<&NamedPair> for LabeledPair {
    fn from(p: &NamedPair) -> Self {
        LabeledPair {
            label: p.label(),
            pair: p.pair.clone(),
        }
    }
}

/// Runs a check over catalog instances with `|G| <= max_order`.
pub struct Harness<'a> {
    pub catalog: &'a Catalog,
    pub caps: SearchCaps,
    /// Seed for randomly generated instances.
    pub seed: u64,
    /// Number of random epimorphism instances.
    pub random_instances: usize,
    covers: BTreeMap<String, std::result::Result<CoverSearch, GroupError>>,
}

impl<'a> Harness<'a> {
    pub fn new(catalog: &'a Catalog) -> Self {
        Harness {
            catalog,
            caps: SearchCaps::default(),
            seed: 0x5eed_0001,
            random_instances: 50,
            covers: BTreeMap::new(),
        }
    }

    pub fn run(&mut self, key: &str, max_order: usize) -> Result<HarnessReport> {
        let info = check_info(key).ok_or_else(|| GroupError::Invalid(format!("unknown check {key:?}")))?;
        let start = Instant::now();
        let mut report = HarnessReport::new(info, max_order);
        match info.id {
            "1.4" => self.sylow_assembly(&mut report, max_order)?,
            "2.1" => self.cover_commutator(&mut report, max_order)?,
            "2.3" => self.cover_uniqueness(&mut report, max_order)?,
            "2.4" => self.universality(&mut report, max_order, true)?,
            "2.5" => self.universality(&mut report, max_order, false)?,
            "2.7" => self.epimorphisms(&mut report, max_order)?,
            "2.8" => self.cover_isoclinism(&mut report, max_order)?,
            "2.9" | "2.10" | "2.11" => self.isoclinic_family(&mut report, max_order, info.id)?,
            _ => unreachable!("every listed check is dispatched"),
        }
        report.elapsed = start.elapsed();
        Ok(report)
    }

    fn pairs(&self, max_order: usize) -> Vec<LabeledPair> {
        all_pairs(self.catalog, max_order).iter().map(LabeledPair::from).collect()
    }

    fn covers_of(&mut self, p: &LabeledPair) -> std::result::Result<CoverSearch, GroupError> {
        if let Some(c) = self.covers.get(&p.label) {
            return c.clone();
        }
        let r = search_covering_pairs(&p.pair, self.catalog, &self.caps);
        self.covers.insert(p.label.clone(), r.clone());
        r
    }

    fn sylow_assembly(&mut self, report: &mut HarnessReport, max_order: usize) -> Result<()> {
        let mc = self.caps.max_cosets;
        for p in self.pairs(max_order) {
            if !is_nilpotent(p.pair.g()) {
                continue;
            }
            let repro = pair_reproduction(&p.pair);
            let direct = schur_multiplier_pair(&p.pair, mc)?.0;
            let product = multiplier_sylow_product(&p.pair, mc)?;
            if direct != product {
                report.record(
                    p.label,
                    Verdict::Fail(format!("direct multiplier {direct} differs from Sylow product {product}")),
                    repro,
                );
                continue;
            }
            let mut covers = Vec::new();
            for sp in sylow_pairs(&p.pair)? {
                let inv = schur_multiplier_pair(&sp, mc)?.0;
                covers.push(build_cover(&sp, &inv, mc)?.rce);
            }
            let verdict = match assemble_nilpotent_cover(&p.pair, &covers, mc) {
                Ok(r) => match find_cover_witness(&r, &direct)? {
                    Some(_) => Verdict::Pass,
                    None => Verdict::Fail(format!("assembled extension of order {} is not a covering pair", r.m().order())),
                },
                Err(e) => Verdict::Fail(format!("assembly rejected: {e}")),
            };
            report.record(p.label, verdict, repro);
        }
        Ok(())
    }

    fn cover_commutator(&mut self, report: &mut HarnessReport, max_order: usize) -> Result<()> {
        for p in self.pairs(max_order) {
            if !p.pair.is_perfect() {
                continue;
            }
            let Some(search) = self.searched(report, &p) else { continue };
            if search.covers.is_empty() {
                report.record(p.label.clone(), Verdict::Fail("no cover found".into()), pair_reproduction(&p.pair));
            }
            for f in &search.covers {
                let label = format!("{} cover {}", p.label, f.group_name);
                let verdict = if check_cover_commutator(&p.pair, &f.witness)? {
                    Verdict::Pass
                } else {
                    Verdict::Fail("[M,G] is a proper subgroup of M".into())
                };
                report.record(label, verdict, json!({"pair": pair_reproduction(&p.pair), "cover": group_reproduction(f.witness.m())}));
            }
        }
        Ok(())
    }

    /// Cover search result, or a partial record when the search fails or hits caps.
    fn searched(&mut self, report: &mut HarnessReport, p: &LabeledPair) -> Option<CoverSearch> {
        match self.covers_of(p) {
            Ok(s) if s.caps_hit && s.covers.is_empty() => {
                report.record_partial(p.label.clone(), format!("search caps reached: {:?}", s.unexplored), pair_reproduction(&p.pair));
                None
            }
            Ok(s) => Some(s),
            Err(e) => {
                report.record_partial(p.label.clone(), format!("cover search failed: {e}"), pair_reproduction(&p.pair));
                None
            }
        }
    }

    fn cover_uniqueness(&mut self, report: &mut HarnessReport, max_order: usize) -> Result<()> {
        for p in self.pairs(max_order) {
            let Some(search) = self.searched(report, &p) else { continue };
            for i in 0..search.covers.len() {
                for j in i..search.covers.len() {
                    let (a, b) = (&search.covers[i], &search.covers[j]);
                    let label = format!("{} covers {} / {}", p.label, a.group_name, b.group_name);
                    let rep = check_cover_uniqueness(&a.witness, &b.witness)?;
                    let verdict = match &rep.not_applicable {
                        Some(r) => Verdict::NotApplicable(r.clone()),
                        None if rep.passed() => Verdict::Pass,
                        None => Verdict::Fail(format!("{rep:?}")),
                    };
                    report.record(label, verdict, json!({"pair": pair_reproduction(&p.pair)}));
                }
            }
        }
        Ok(())
    }

    fn universality(&mut self, report: &mut HarnessReport, max_order: usize, perfect_only: bool) -> Result<()> {
        for p in self.pairs(max_order) {
            let perfect = p.pair.is_perfect();
            if perfect_only && !perfect {
                report.record(p.label.clone(), Verdict::NotApplicable("pair is not perfect".into()), pair_reproduction(&p.pair));
                continue;
            }
            let Some(search) = self.searched(report, &p) else { continue };
            let Some(candidate) = search.covers.first() else {
                report.record(p.label.clone(), Verdict::Fail("no cover found".into()), pair_reproduction(&p.pair));
                continue;
            };
            let sample = if perfect {
                sample_extensions(&p.pair, self.catalog, 2, &self.caps)?
            } else {
                Vec::new()
            };
            let rep = verify_universality(&p.pair, &candidate.witness, &sample)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else if perfect {
                Verdict::Fail(format!("morphism verdicts {:?}", rep.targets))
            } else {
                Verdict::Fail("no non-uniqueness witness".into())
            };
            let mut repro = json!({"pair": pair_reproduction(&p.pair), "cover": candidate.group_name, "targets": rep.targets.len()});
            if let Some(nu) = &rep.non_uniqueness {
                repro["theta1"] = json!(nu.theta1.table());
                repro["theta2"] = json!(nu.theta2.table());
                repro["target_order"] = json!(nu.target.m().order());
            }
            report.record(p.label, verdict, repro);
        }
        Ok(())
    }

    fn epimorphisms(&mut self, report: &mut HarnessReport, max_order: usize) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let heads: Vec<_> = self.catalog.entries().iter().filter(|e| e.order() <= max_order.max(1)).collect();
        let tails: Vec<_> = self.catalog.entries().iter().filter(|e| e.order() <= 3).collect();
        for _ in 0..self.random_instances {
            let h = heads.choose(&mut rng).expect("catalog has small groups");
            let b = tails.choose(&mut rng).expect("catalog has small groups");
            let normals = normal_subgroup_indices(&h.group);
            let k_idx = normals.choose(&mut rng).expect("trivial subgroup is normal").clone();
            let auts = automorphism_group(&h.group)?;
            let alpha = &auts[rng.gen_range(0..auts.len())];
            let dp = DirectProduct::new(&h.group, &b.group)?;
            let g = dp.group.clone();
            // theta = alpha . projection, N = alpha^-1(K) x 1
            let theta_map: Vec<u32> = (0..g.order()).map(|x| alpha.apply(dp.components(x).0) as u32).collect();
            let theta = GroupHom::new(g.clone(), h.group.clone(), theta_map)?;
            let inv = alpha.inverse()?;
            let mut n_idx: Vec<usize> = k_idx.iter().map(|&k| dp.pair(inv.apply(k), 0)).collect();
            n_idx.sort_unstable();
            let pair = GroupPair::from_indices(g.clone(), &n_idx)?;
            let k = h.group.subgroup_from_indices(&k_idx);
            let label = format!(
                "{} x {} -> {} with K of order {}",
                h.name(),
                b.name(),
                h.name(),
                k.order()
            );
            let repro = json!({"pair": pair_reproduction(&pair), "theta": theta.table(), "target": group_reproduction(&h.group), "k_indices": k_idx});
            let verdict = match isoclinism_from_epimorphism(&theta, &pair, &k) {
                Ok(Induced::Valid(_)) => Verdict::Pass,
                Ok(Induced::Invalid(r)) => Verdict::Fail(r),
                Err(GroupError::Hypothesis(r)) => Verdict::NotApplicable(r),
                Err(e) => return Err(e),
            };
            report.record(label, verdict, repro);
        }
        Ok(())
    }

    fn cover_isoclinism(&mut self, report: &mut HarnessReport, max_order: usize) -> Result<()> {
        for p in self.pairs(max_order) {
            if !p.pair.is_perfect() {
                continue;
            }
            let Some(search) = self.searched(report, &p) else { continue };
            for i in 0..search.covers.len() {
                for j in i..search.covers.len() {
                    let (a, b) = (&search.covers[i], &search.covers[j]);
                    let label = format!("{} covers {} / {}", p.label, a.group_name, b.group_name);
                    report.record(label, check_cover_isoclinism(&a.witness, &b.witness)?, json!({"pair": pair_reproduction(&p.pair)}));
                }
            }
        }
        Ok(())
    }

    /// Perfect catalog pairs against catalog pairs and products with abelian factors,
    /// keeping the isoclinic combinations.
    pub fn isoclinic_instances(&self, max_order: usize) -> Result<Vec<(LabeledPair, LabeledPair, IsoclinismWitness)>> {
        let pairs = self.pairs(max_order);
        let abelian: Vec<_> = self
            .catalog
            .entries()
            .iter()
            .filter(|e| e.record.abelian && e.order() > 1 && e.order() <= 4)
            .collect();
        let mut out = Vec::new();
        for a in pairs.iter().filter(|p| p.pair.is_perfect()) {
            let mut targets: Vec<LabeledPair> = pairs.clone();
            for b in &abelian {
                targets.extend(product_pairs(a, &b.group, b.name())?);
            }
            for t in targets {
                if let Some(w) = are_isoclinic(&a.pair, &t.pair)? {
                    out.push((a.clone(), t, w));
                }
            }
        }
        Ok(out)
    }

    fn isoclinic_family(&mut self, report: &mut HarnessReport, max_order: usize, id: &str) -> Result<()> {
        for (a, b, w) in self.isoclinic_instances(max_order)? {
            let label = format!("{} ~ {}", a.label, b.label);
            let repro = json!({"first": pair_reproduction(&a.pair), "second": pair_reproduction(&b.pair)});
            let verdict = match id {
                "2.9" => {
                    let r = isoclinic_order_identity(&a.pair, &b.pair, &w)?;
                    if r.holds {
                        Verdict::Pass
                    } else {
                        Verdict::Fail(format!(
                            "{}*{}*{} != {}*{}",
                            r.k, r.z_gn, r.z_hk_meet_commutator, r.n, r.z_hk
                        ))
                    }
                }
                "2.10" => {
                    if pair_center_indices(&a.pair).len() != 1 {
                        Verdict::NotApplicable("Z(G,N) is not trivial".into())
                    } else {
                        match isoclinic_direct_factor(&a.pair, &b.pair, &w, self.catalog)? {
                            DirectFactor::Found { .. } => Verdict::Pass,
                            DirectFactor::Violation(r) => Verdict::Fail(r),
                        }
                    }
                }
                _ => isoclinic_equal_order(&a.pair, &b.pair, &w)?,
            };
            report.record(label, verdict, repro);
        }
        Ok(())
    }
}

/// `(G × B, N × B)` and `(G × B, N × 1)`.
pub fn product_pairs(a: &LabeledPair, b: &Arc<FiniteGroup>, b_name: &str) -> Result<Vec<LabeledPair>> {
    let g = a.pair.g();
    let dp = DirectProduct::new(g, b)?;
    let (gname, nname) = split_label(&a.label);
    let mut full: Vec<usize> = a
        .pair
        .n_in_g()
        .iter()
        .flat_map(|&n| (0..b.order()).map(move |y| (n, y)))
        .map(|(n, y)| dp.pair(n, y))
        .collect();
    full.sort_unstable();
    let mut left: Vec<usize> = a.pair.n_in_g().iter().map(|&n| dp.pair(n, 0)).collect();
    left.sort_unstable();
    Ok(vec![
        LabeledPair {
            label: format!("({gname} x {b_name}, {nname} x {b_name})"),
            pair: GroupPair::from_indices(dp.group.clone(), &full)?,
        },
        LabeledPair {
            label: format!("({gname} x {b_name}, {nname} x 1)"),
            pair: GroupPair::from_indices(dp.group.clone(), &left)?,
        },
    ])
}

fn split_label(label: &str) -> (String, String) {
    let inner = label.trim_start_matches('(').trim_end_matches(')');
    match inner.split_once(", ") {
        Some((g, n)) => (g.to_string(), n.to_string()),
        None => (inner.to_string(), "?".to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_id_and_name() {
        assert_eq!(check_info("2.1").unwrap().name, "cover-commutator");
        assert_eq!(check_info("sylow-assembly").unwrap().id, "1.4");
        assert!(check_info("9.9").is_none());
    }

    #[test]
    fn small_reports_are_consistent() {
        let c = Catalog::builtin().unwrap();
        let mut h = Harness::new(&c);
        for key in ["2.1", "2.5", "2.9"] {
            let r = h.run(key, 4).unwrap();
            assert!(r.is_consistent());
            assert!(r.instances > 0, "{key}");
        }
    }
}
