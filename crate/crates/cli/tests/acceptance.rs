//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are still run and reported as FAIL;
//! they do not fail the process, but an unexpected pass of one does.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use pairkit::catalog::{all_pairs, Catalog};
use pairkit::covering::{search_covering_pairs, SearchCaps};
use pairkit::fp::{parse_presentation, todd_coxeter};
use pairkit::group::DirectProduct;
use pairkit::isoclinism::{are_isoclinic, isoclinic_order_identity};
use pairkit::multiplier::{schur_multiplier_homology, schur_multiplier_pair};
use pairkit::pair::GroupPair;
use pairkit::verify::{Harness, HarnessReport};
use pairkit::{FiniteGroup, SmallMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criteria that cannot hold under the chosen definition of the pair center.
const KNOWN_FAILURES: [&str; 1] = ["7a"];

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(id: &'static str, f: impl FnOnce() -> Result<String, String>) -> Line {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Line {
        id,
        pass,
        detail,
        elapsed: start.elapsed(),
    }
}

fn catalog() -> Catalog {
    Catalog::builtin().expect("builtin catalog")
}

fn harness_summary(r: &HarnessReport) -> String {
    format!(
        "{} instances, {} pass, {} n/a, {} fail, {} partial",
        r.instances,
        r.passes,
        r.not_applicable,
        r.failures.len(),
        r.partial.len()
    )
}

fn harness_zero_failures(key: &str, max_order: usize) -> Result<String, String> {
    let c = catalog();
    let mut h = Harness::new(&c);
    let r = h.run(key, max_order).map_err(|e| e.to_string())?;
    let s = harness_summary(&r);
    if !r.is_consistent() {
        return Err(format!("inconsistent counts: {s}"));
    }
    if !r.is_clean() || r.instances == 0 {
        let first = r.failures.first().or(r.partial.first()).map(|f| format!("; first: {} ({})", f.instance, f.reason));
        return Err(format!("{s}{}", first.unwrap_or_default()));
    }
    Ok(s)
}

fn crit1() -> Result<String, String> {
    let c = catalog();
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut count = 0;
    for e in c.entries().iter().filter(|e| e.order() <= 12) {
        let pair = GroupPair::new(e.group.clone(), e.group.clone()).map_err(|e| e.to_string())?;
        let (ext, _) = schur_multiplier_pair(&pair, 100_000).map_err(|e| e.to_string())?;
        let hom = schur_multiplier_homology(&e.group).map_err(|e| e.to_string())?;
        count += 1;
        if ext != hom {
            mismatches.push(format!("{}: {} vs {}", e.name(), ext, hom));
        }
    }
    let t = start.elapsed();
    if !mismatches.is_empty() || t > Duration::from_secs(300) {
        return Err(format!("{} mismatches {:?}, {:.1?}", mismatches.len(), mismatches, t));
    }
    Ok(format!("{count} groups, 0 mismatches, {t:.1?} (limit 300s)"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_pairkit"))
        .args(args)
        .env_remove("PAIRKIT_CATALOG")
        .output()
        .expect("pairkit runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn crit2() -> Result<String, String> {
    let (code, out) = cli(&["--json", "find-covers", "--group", "V4", "--normal", "V4"]);
    let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let names: BTreeSet<String> = v["covers"]
        .as_array()
        .ok_or("no covers array")?
        .iter()
        .map(|c| c["group"].as_str().unwrap_or_default().to_string())
        .collect();
    let searched: BTreeSet<String> = v["searched"]
        .as_array()
        .ok_or("no searched array")?
        .iter()
        .map(|s| s.as_str().unwrap_or_default().to_string())
        .collect();
    let expected_searched: BTreeSet<String> = ["C8", "C2xC4", "C2^3", "D4", "Q8"].iter().map(|s| s.to_string()).collect();
    let count = v["covers"].as_array().map_or(0, Vec::len);
    let ok = code == 0
        && count == 2
        && names == ["D4".to_string(), "Q8".to_string()].into_iter().collect()
        && v["exhaustive"] == Value::Bool(true)
        && searched == expected_searched;
    let detail = format!("exit {code}, {count} classes {names:?}, searched {searched:?}");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn crit3() -> Result<String, String> {
    let c = catalog();
    let caps = SearchCaps::default();
    let pairs = all_pairs(&c, 8);
    let mut empty = Vec::new();
    for p in &pairs {
        let s = search_covering_pairs(&p.pair, &c, &caps).map_err(|e| format!("{}: {e}", p.label()))?;
        if s.covers.is_empty() || s.caps_hit {
            empty.push(p.label());
        }
    }
    if empty.is_empty() {
        Ok(format!("{} pairs, each with at least one cover", pairs.len()))
    } else {
        Err(format!("{} pairs without a cover within caps: {empty:?}", empty.len()))
    }
}

fn crit6() -> Result<String, String> {
    let c = catalog();
    let mut h = Harness::new(&c);
    let r = h.run("2.8", 8).map_err(|e| e.to_string())?;
    let s = harness_summary(&r);
    if r.is_clean() && r.is_consistent() && r.not_applicable >= 1 {
        let example = r.not_applicable_examples.first().map(|n| format!("; e.g. {}: {}", n.instance, n.reason));
        Ok(format!("{s}{}", example.unwrap_or_default()))
    } else {
        Err(s)
    }
}

fn worked_identity() -> Result<String, String> {
    let c = catalog();
    let s3 = c.group("S3").map_err(|e| e.to_string())?;
    let c2 = c.group("C2").map_err(|e| e.to_string())?;
    let a = GroupPair::from_indices(s3.clone(), &s3.derived_indices()).map_err(|e| e.to_string())?;
    let dp = DirectProduct::new(&s3, &c2).map_err(|e| e.to_string())?;
    let h: Arc<FiniteGroup> = dp.group.clone();
    let k: Vec<usize> = {
        let mut k: Vec<usize> = a
            .n_in_g()
            .iter()
            .flat_map(|&x| (0..c2.order()).map(move |y| (x, y)))
            .map(|(x, y)| dp.pair(x, y))
            .collect();
        k.sort_unstable();
        k
    };
    let b = GroupPair::from_indices(h, &k).map_err(|e| e.to_string())?;
    let w = are_isoclinic(&a, &b).map_err(|e| e.to_string())?.ok_or("(S3,A3) and (S3xC2, A3xC2) not isoclinic")?;
    let o = isoclinic_order_identity(&a, &b, &w).map_err(|e| e.to_string())?;
    let tuple = (o.k, o.z_gn, o.z_hk_meet_commutator, o.n, o.z_hk);
    if o.holds && tuple == (6, 1, 1, 3, 2) {
        Ok(format!("worked instance {}*{}*{} = {}*{}", o.k, o.z_gn, o.z_hk_meet_commutator, o.n, o.z_hk))
    } else {
        Err(format!("worked instance gave {tuple:?}, holds = {}", o.holds))
    }
}

fn crit7b() -> Result<String, String> {
    let w = worked_identity()?;
    harness_zero_failures("2.9", 12).map(|s| format!("{s}; {w}"))
}

/// Invariant factors from determinantal divisors: `d_k = gcd` of the `k × k` minors.
fn naive_invariants(m: &[Vec<i64>]) -> Vec<i64> {
    fn det(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
        if rows.len() == 1 {
            return m[rows[0]][cols[0]];
        }
        let mut total = 0;
        for (j, _) in cols.iter().enumerate() {
            let sub: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &c)| c).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * m[rows[0]][cols[j]] * det(m, &rows[1..], &sub);
        }
        total
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let (r, c) = (m.len(), m[0].len());
    let mut d_prev = 1;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut d = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                d = gcd(d, det(m, &rows, &cols));
            }
        }
        if d == 0 {
            out.resize(r.min(c), 0);
            return out;
        }
        out.push(d / d_prev);
        d_prev = d;
    }
    out
}

fn crit9() -> Result<String, String> {
    let mut notes = Vec::new();
    let s3 = parse_presentation("<a,b|a^2,b^2,(a b)^3>").map_err(|e| e.to_string())?;
    let t = todd_coxeter(&s3.presentation, &[], 100_000).map_err(|e| e.to_string())?;
    if t.coset_count() != 6 {
        return Err(format!("<a,b|a^2,b^2,(a b)^3> gave {} cosets", t.coset_count()));
    }
    notes.push("S3 presentation: 6 cosets".to_string());
    for n in 2..=12 {
        let p = parse_presentation(&format!("<a|a^{n}>")).map_err(|e| e.to_string())?;
        let t = todd_coxeter(&p.presentation, &[], 100_000).map_err(|e| e.to_string())?;
        if t.coset_count() != n {
            return Err(format!("<a|a^{n}> gave {} cosets", t.coset_count()));
        }
    }
    notes.push("<a|a^n>: n cosets for n = 2..12".to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let got = pairkit::fp::smith::smith_normal_form_i64(&SmallMatrix::from_rows(rows.clone()));
        let want: Vec<BigInt> = naive_invariants(&rows).into_iter().map(BigInt::from).collect();
        if got != want {
            return Err(format!("matrix {trial} {rows:?}: got {got:?}, oracle {want:?}"));
        }
    }
    notes.push("SNF: 1000 random matrices agree with determinantal divisors".to_string());
    Ok(notes.join("; "))
}

fn crit10() -> Result<String, String> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/");
    let cover = format!("{data}v4_q8_cover.json");
    let trivial = format!("{data}v4_q8_trivial_action.json");
    let malformed = format!("{data}malformed.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["describe"],
        vec!["describe", "--group", "D4"],
        vec!["checks"],
        vec!["multiplier", "--group", "D4", "--normal", "D4", "--homology"],
        vec!["multiplier", "--group", "S3", "--normal", "C3"],
        vec!["check-rce", &cover],
        vec!["check-rce", &trivial],
        vec!["check-rce", &malformed],
        vec!["check-cover", &cover],
        vec!["find-covers", "--group", "V4", "--normal", "V4"],
        vec!["find-covers", "--group", "C2^3", "--normal", "C2^3"],
        vec!["verify", "2.1", "--max-order", "8"],
        vec!["verify", "2.7", "--max-order", "6"],
        vec!["verify", "isoclinic-order-identity", "--max-order", "8"],
        vec!["tc", "--presentation", "<a,b | a^2, b^3, (a b)^5>"],
        vec!["tc", "--presentation", "<a,b | a^2, b^3, (a b)^5>", "--subgroup", "b"],
        vec!["tc", "--presentation", "<a,b | >", "--max-cosets", "50"],
        vec!["isoclinic", "D4:D4", "Q8:Q8"],
        vec!["isoclinic", "S3:C3", "S3:S3"],
    ];
    let mut differing = Vec::new();
    for args in &commands {
        let mut full = vec!["--json"];
        full.extend(args.iter().copied());
        let first = cli(&full);
        let second = cli(&full);
        if first != second || first.1.is_empty() {
            differing.push(args.join(" "));
        }
    }
    if differing.is_empty() {
        Ok(format!("{} commands, byte-identical --json output across two runs", commands.len()))
    } else {
        Err(format!("nondeterministic or empty output: {differing:?}"))
    }
}

fn main() {
    let lines = vec![
        timed("1", crit1),
        timed("2", crit2),
        timed("3", crit3),
        timed("4", || harness_zero_failures("2.1", 8)),
        timed("5", || harness_zero_failures("1.4", 16)),
        timed("6", crit6),
        timed("7a", || harness_zero_failures("2.7", 8)),
        timed("7b", crit7b),
        timed("7c", || harness_zero_failures("2.10", 12)),
        timed("7d", || harness_zero_failures("2.11", 12)),
        timed("8", || harness_zero_failures("2.5", 6)),
        timed("9", crit9),
        timed("10", crit10),
    ];
    let mut unexpected = Vec::new();
    for l in &lines {
        let known = KNOWN_FAILURES.contains(&l.id);
        let tag = match (l.pass, known) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known)",
            (true, true) => "PASS (expected to fail)",
        };
        println!("criterion {:<3} {tag}: {} [{:.1?}]", l.id, l.detail, l.elapsed);
        if l.pass == known {
            unexpected.push(l.id);
        }
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("{passed}/{} criteria pass; known failures: {KNOWN_FAILURES:?}", lines.len());
    if !unexpected.is_empty() {
        println!("unexpected results: {unexpected:?}");
        std::process::exit(1);
    }
}
