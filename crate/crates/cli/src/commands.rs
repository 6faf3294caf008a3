use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use pairkit::catalog::Catalog;
use pairkit::covering::{find_cover_witness_computed, search_covering_pairs, CoverWitness, SearchCaps};
use pairkit::fp::{abelianized_invariants, coset_table_to_group, parse_presentation, parse_word, todd_coxeter};
use pairkit::isoclinism::are_isoclinic;
use pairkit::multiplier::{schur_multiplier_homology, schur_multiplier_with_report, HOMOLOGY_ORDER_CAP};
use pairkit::pair::{check_rce as rce_axioms, RelCentralExt};
use pairkit::structure::normal_subgroup_indices;
use pairkit::verify::{Harness, CHECKS};
use pairkit::{AbelianInvariants, FiniteGroup, Permutation};
use serde_json::{json, Value};

use crate::input::{self, describe_pair, ResolvedPair};
use crate::{CliError, Outcome, PairArgs, EXIT_FAIL, EXIT_PARTIAL};

/// Largest coset count for which `tc` also builds the permutation group.
const TC_GROUP_LIMIT: usize = 2048;

fn images(ps: &[&Permutation]) -> Vec<Vec<u32>> {
    ps.iter().map(|p| p.images().to_vec()).collect()
}

fn invariants_json(inv: &AbelianInvariants) -> Value {
    json!({"divisors": inv.divisors(), "order": inv.order()})
}

fn read_document(path: &Path) -> Result<Value, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input {
            path: None,
            message: format!("stdin: {e}"),
        })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input {
            path: None,
            message: format!("{}: {e}", path.display()),
        })?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input {
        path: Some(String::new()),
        message: format!("invalid JSON: {e}"),
    })
}

fn resolve(catalog: &Catalog, args: &PairArgs) -> Result<ResolvedPair, CliError> {
    input::pair_from_names(catalog, &args.group, &args.normal)
}

fn pair_line(r: &ResolvedPair) -> String {
    format!("({}, {}) |G| = {} |N| = {} position {}", r.group, r.normal, r.pair.g().order(), r.pair.n().order(), r.position)
}

pub fn describe(catalog: &Catalog, group: Option<&str>) -> Result<Outcome, CliError> {
    let Some(name) = group else {
        let entries: Vec<Value> = catalog
            .entries()
            .iter()
            .map(|e| json!({"name": e.name(), "order": e.order(), "abelian": e.record.abelian}))
            .collect();
        let mut text = String::new();
        for e in catalog.entries() {
            writeln!(text, "{:<12} order {:>3}{}", e.name(), e.order(), if e.record.abelian { "  abelian" } else { "" }).unwrap();
        }
        return Ok(Outcome {
            value: json!({"catalog": entries}),
            text,
            code: 0,
        });
    };
    let (name, g) = input::named_group(catalog, name)?;
    let mut normals = Vec::new();
    let mut text = format!("{name}: order {}, degree {}\n", g.order(), g.degree());
    for p in g.generators() {
        writeln!(text, "  generator {p}  {:?}", p.images()).unwrap();
    }
    text.push_str("normal subgroups:\n");
    for (k, _) in normal_subgroup_indices(&g).iter().enumerate() {
        let r = input::pick_normal(catalog, &g, &name, &format!("#{k}"))?;
        writeln!(text, "  #{k:<3} {:<10} order {}", r.normal, r.pair.n().order()).unwrap();
        normals.push(describe_pair(&r));
    }
    let gens: Vec<&Permutation> = g.generators().iter().collect();
    Ok(Outcome {
        value: json!({
            "name": name,
            "order": g.order(),
            "degree": g.degree(),
            "generators": images(&gens),
            "normal_subgroups": normals,
        }),
        text,
        code: 0,
    })
}

pub fn multiplier(catalog: &Catalog, args: &PairArgs, homology: bool, max_cosets: usize) -> Result<Outcome, CliError> {
    let r = resolve(catalog, args)?;
    let (inv, _, report) = schur_multiplier_with_report(&r.pair, max_cosets)?;
    let consistent = report.exterior_order == report.kernel_order * report.commutator_order;
    let mut value = json!({
        "pair": describe_pair(&r),
        "multiplier": invariants_json(&inv),
        "exterior_order": report.exterior_order,
        "commutator_order": report.commutator_order,
        "kernel_order": report.kernel_order,
        "presentation_generators": report.presentation_generators,
        "reduced_generators": report.reduced_generators,
        "consistent": consistent,
    });
    let mut text = format!(
        "{}\nM(G,N) = {inv}  (order {})\n|N ^ G| = {} = |ker| {} * |[N,G]| {}{}\n",
        pair_line(&r),
        inv.order(),
        report.exterior_order,
        report.kernel_order,
        report.commutator_order,
        if consistent { "" } else { "  INCONSISTENT" }
    );
    let mut ok = consistent;
    if homology {
        if !r.pair.is_absolute() {
            return Err(CliError::Input {
                path: None,
                message: "--homology needs N = G".into(),
            });
        }
        if r.pair.g().order() > HOMOLOGY_ORDER_CAP {
            return Err(CliError::Input {
                path: None,
                message: format!("--homology supports |G| <= {HOMOLOGY_ORDER_CAP}"),
            });
        }
        let h = schur_multiplier_homology(r.pair.g())?;
        let agree = h == inv;
        ok &= agree;
        value["homology"] = json!({"multiplier": invariants_json(&h), "agrees": agree});
        writeln!(text, "homology multiplier = {h}  ({})", if agree { "agrees" } else { "DISAGREES" }).unwrap();
    }
    Ok(Outcome {
        value,
        text,
        code: if ok { 0 } else { EXIT_FAIL },
    })
}

fn axioms_value(report: &pairkit::pair::RceReport) -> Value {
    serde_json::to_value(&report.axioms).expect("axiom report serializes")
}

fn axioms_text(report: &pairkit::pair::RceReport, text: &mut String) {
    for a in &report.axioms {
        write!(text, "  axiom {}: {}", a.axiom, if a.holds { "holds" } else { "FAILS" }).unwrap();
        if let Some(w) = &a.witness {
            write!(text, "  ({})", w.detail).unwrap();
        }
        text.push('\n');
    }
}

pub fn check_rce(catalog: &Catalog, file: &Path) -> Result<Outcome, CliError> {
    let doc = read_document(file)?;
    let ext = input::extension_from_json(catalog, &doc)?;
    let report = rce_axioms(&ext.sigma, &ext.action, &ext.pair.pair);
    let pass = report.all_pass();
    let mut text = format!("{}\nM = {} (order {})\n", pair_line(&ext.pair), ext.m_name, ext.sigma.domain().order());
    axioms_text(&report, &mut text);
    writeln!(text, "{}", if pass { "relative central extension" } else { "not a relative central extension" }).unwrap();
    Ok(Outcome {
        value: json!({
            "pair": describe_pair(&ext.pair),
            "m": ext.m_name,
            "m_order": ext.sigma.domain().order(),
            "axioms": axioms_value(&report),
            "is_rce": pass,
        }),
        text,
        code: if pass { 0 } else { EXIT_FAIL },
    })
}

fn witness_value(w: &CoverWitness) -> Value {
    let a = w.a();
    let gens: Vec<&Permutation> = a.generators().iter().collect();
    json!({
        "a_order": a.order(),
        "a_generators": images(&gens),
        "multiplier": invariants_json(&w.multiplier),
    })
}

pub fn check_cover(catalog: &Catalog, file: &Path, max_cosets: usize) -> Result<Outcome, CliError> {
    let doc = read_document(file)?;
    let ext = input::extension_from_json(catalog, &doc)?;
    let report = rce_axioms(&ext.sigma, &ext.action, &ext.pair.pair);
    let mut text = format!("{}\nM = {} (order {})\n", pair_line(&ext.pair), ext.m_name, ext.sigma.domain().order());
    axioms_text(&report, &mut text);
    let mut value = json!({
        "pair": describe_pair(&ext.pair),
        "m": ext.m_name,
        "m_order": ext.sigma.domain().order(),
        "axioms": axioms_value(&report),
        "is_rce": report.all_pass(),
        "is_cover": false,
        "witness": null,
    });
    if !report.all_pass() {
        text.push_str("not a relative central extension\n");
        return Ok(Outcome {
            value,
            text,
            code: EXIT_FAIL,
        });
    }
    let rce = RelCentralExt::new(ext.pair.pair.clone(), ext.sigma, ext.action)?;
    let witness = find_cover_witness_computed(&rce, max_cosets)?;
    let code = match &witness {
        Some(w) => {
            writeln!(text, "covering pair: A of order {} with M(G,N) = {}", w.a_indices.len(), w.multiplier).unwrap();
            value["is_cover"] = json!(true);
            value["witness"] = witness_value(w);
            0
        }
        None => {
            text.push_str("not a covering pair\n");
            EXIT_FAIL
        }
    };
    Ok(Outcome { value, text, code })
}

/// The extension in the input format of `check-rce`.
fn extension_document(w: &CoverWitness) -> Value {
    let (g, m) = (w.pair().g(), w.m());
    let rce = &w.rce;
    let n_gens: Vec<&Permutation> = g.generating_set_within(w.pair().n_in_g()).into_iter().map(|i| g.element(i)).collect();
    let m_gens = m.generator_indices();
    let sigma: Vec<Vec<u32>> = m_gens.iter().map(|&i| g.element(rce.sigma().apply(i)).images().to_vec()).collect();
    let action: Vec<Vec<Vec<u32>>> = g
        .generator_indices()
        .into_iter()
        .map(|gj| {
            m_gens
                .iter()
                .map(|&mi| m.element(rce.action().act(mi, gj)).images().to_vec())
                .collect()
        })
        .collect();
    let group_gens: Vec<&Permutation> = g.generators().iter().collect();
    let m_perm_gens: Vec<&Permutation> = m.generators().iter().collect();
    json!({
        "group": {"degree": g.degree(), "generators": images(&group_gens)},
        "normal": {"generators": images(&n_gens)},
        "m": {"degree": m.degree(), "generators": images(&m_perm_gens)},
        "sigma": sigma,
        "action": action,
    })
}

pub fn find_covers(catalog: &Catalog, args: &PairArgs, caps: &SearchCaps) -> Result<Outcome, CliError> {
    let r = resolve(catalog, args)?;
    let search = search_covering_pairs(&r.pair, catalog, caps)?;
    let mut text = format!(
        "{}\nM(G,N) = {}  target |M| = {}\n",
        pair_line(&r),
        search.multiplier,
        search.target_order
    );
    let mut covers = Vec::new();
    for c in &search.covers {
        let kernel = c.witness.rce.sigma().kernel_indices().len();
        writeln!(
            text,
            "  {:<12} order {:>4}  |A| = {:<3} |ker sigma| = {:<3} {}",
            c.group_name,
            c.witness.m().order(),
            c.witness.a_indices.len(),
            kernel,
            serde_json::to_value(c.source).expect("source serializes").as_str().unwrap_or_default()
        )
        .unwrap();
        covers.push(json!({
            "group": c.group_name,
            "order": c.witness.m().order(),
            "source": c.source,
            "kernel_order": kernel,
            "witness": witness_value(&c.witness),
            "extension": extension_document(&c.witness),
        }));
    }
    let partial = search.caps_hit || !search.exhaustive;
    writeln!(
        text,
        "{} cover class(es); search {}{}",
        search.covers.len(),
        if search.exhaustive { "exhaustive over the catalog" } else { "not exhaustive (catalog incomplete at this order)" },
        if search.caps_hit { "; caps hit" } else { "" }
    )
    .unwrap();
    for u in &search.unexplored {
        writeln!(text, "  unexplored: {u}").unwrap();
    }
    let code = if search.covers.is_empty() && !partial {
        EXIT_FAIL
    } else if partial {
        EXIT_PARTIAL
    } else {
        0
    };
    Ok(Outcome {
        value: json!({
            "pair": describe_pair(&r),
            "multiplier": invariants_json(&search.multiplier),
            "target_order": search.target_order,
            "covers": covers,
            "searched": search.searched,
            "unexplored": search.unexplored,
            "exhaustive": search.exhaustive,
            "caps_hit": search.caps_hit,
        }),
        text,
        code,
    })
}

pub fn checks() -> Outcome {
    let mut text = String::new();
    for c in CHECKS {
        writeln!(text, "{:<5} {:<26} {}", c.id, c.name, c.summary).unwrap();
    }
    let list: Vec<Value> = CHECKS
        .iter()
        .map(|c| json!({"id": c.id, "name": c.name, "summary": c.summary}))
        .collect();
    Outcome {
        value: json!({"checks": list}),
        text,
        code: 0,
    }
}

pub fn verify(
    catalog: &Catalog,
    check: &str,
    max_order: usize,
    seed: Option<u64>,
    instances: Option<usize>,
    caps: &SearchCaps,
) -> Result<Outcome, CliError> {
    if pairkit::verify::check_info(check).is_none() {
        return Err(CliError::Input {
            path: None,
            message: format!("unknown check {check:?}; run `pairkit checks`"),
        });
    }
    let mut harness = Harness::new(catalog);
    harness.caps = caps.clone();
    if let Some(s) = seed {
        harness.seed = s;
    }
    if let Some(k) = instances {
        harness.random_instances = k;
    }
    let report = harness.run(check, max_order)?;
    eprintln!("pairkit: {} finished in {:.2?}", report.id, report.elapsed);
    let mut text = format!(
        "{} {} (|G| <= {}): {} instances, {} pass, {} n/a, {} fail, {} partial\n",
        report.id,
        report.check,
        report.max_order,
        report.instances,
        report.passes,
        report.not_applicable,
        report.failures.len(),
        report.partial.len()
    );
    for f in &report.failures {
        writeln!(text, "  FAIL {}: {}", f.instance, f.reason).unwrap();
    }
    for p in &report.partial {
        writeln!(text, "  PARTIAL {}: {}", p.instance, p.reason).unwrap();
    }
    for n in &report.not_applicable_examples {
        writeln!(text, "  n/a {}: {}", n.instance, n.reason).unwrap();
    }
    let code = if !report.failures.is_empty() {
        EXIT_FAIL
    } else if !report.partial.is_empty() {
        EXIT_PARTIAL
    } else {
        0
    };
    Ok(Outcome {
        value: serde_json::to_value(&report).expect("report serializes"),
        text,
        code,
    })
}

pub fn tc(presentation: Option<&str>, file: Option<&Path>, subgroup: &[String], max_cosets: usize) -> Result<Outcome, CliError> {
    let text_in = match (presentation, file) {
        (Some(p), _) => p.to_string(),
        (None, Some(f)) => std::fs::read_to_string(f).map_err(|e| CliError::Input {
            path: None,
            message: format!("{}: {e}", f.display()),
        })?,
        (None, None) => {
            return Err(CliError::Input {
                path: None,
                message: "give --presentation or --file".into(),
            })
        }
    };
    let parsed = parse_presentation(text_in.trim())?;
    let pres = &parsed.presentation;
    let words = subgroup
        .iter()
        .map(|w| parse_word(pres.generator_names(), w))
        .collect::<pairkit::Result<Vec<_>>>()?;
    let table = todd_coxeter(pres, &words, max_cosets)?;
    let index = table.coset_count();
    let mut text = String::new();
    for w in &parsed.warnings {
        writeln!(text, "warning: {w}").unwrap();
    }
    writeln!(text, "{pres}").unwrap();
    let mut value = json!({
        "presentation": pres.to_string(),
        "generators": pres.generator_names(),
        "relators": pres.relators().len(),
        "subgroup": subgroup,
        "index": index,
        "warnings": parsed.warnings,
    });
    if subgroup.is_empty() {
        let ab = abelianized_invariants(pres);
        writeln!(text, "order {index}\nabelianization {ab}").unwrap();
        value["order"] = json!(index);
        value["abelianization"] = json!({"torsion": ab.torsion.divisors(), "free_rank": ab.free_rank});
        if index <= TC_GROUP_LIMIT && pres.generator_count() > 0 {
            let (g, _) = coset_table_to_group(&table, pres)?;
            let hist = histogram(&g);
            writeln!(text, "element orders {}", hist_text(&hist)).unwrap();
            value["order_histogram"] = json!(hist.iter().map(|(k, v)| (k.to_string(), *v)).collect::<std::collections::BTreeMap<_, _>>());
        }
    } else {
        writeln!(text, "index {index}").unwrap();
    }
    Ok(Outcome { value, text, code: 0 })
}

fn histogram(g: &FiniteGroup) -> Vec<(usize, usize)> {
    g.order_histogram().into_iter().collect()
}

fn hist_text(h: &[(usize, usize)]) -> String {
    h.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
}

pub fn isoclinic(catalog: &Catalog, a: &str, b: &str) -> Result<Outcome, CliError> {
    let ra = input::pair_from_spec(catalog, a)?;
    let rb = input::pair_from_spec(catalog, b)?;
    let w = are_isoclinic(&ra.pair, &rb.pair)?;
    let mut text = format!("{}\n{}\n", pair_line(&ra), pair_line(&rb));
    let mut value = json!({
        "a": describe_pair(&ra),
        "b": describe_pair(&rb),
        "isoclinic": w.is_some(),
        "witness": null,
    });
    let code = match &w {
        Some(w) => {
            let valid = w.validate(&ra.pair, &rb.pair);
            writeln!(
                text,
                "isoclinic: |G/Z(G,N)| = {}, |[N,G]| = {}, witness {}",
                w.epsilon.domain().order(),
                w.source_commutator.len(),
                if valid.is_ok() { "validated" } else { "INVALID" }
            )
            .unwrap();
            value["witness"] = json!({
                "central_quotient_order": w.epsilon.domain().order(),
                "commutator_order": w.source_commutator.len(),
                "validated": valid.is_ok(),
            });
            if valid.is_ok() {
                0
            } else {
                EXIT_FAIL
            }
        }
        None => {
            text.push_str("not isoclinic\n");
            EXIT_FAIL
        }
    };
    Ok(Outcome { value, text, code })
}
