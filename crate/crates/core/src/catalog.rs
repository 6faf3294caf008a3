//! Self-validating catalog of small groups and the pairs they generate.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::hom::isomorphism;
use crate::pair::GroupPair;
use crate::perm::Permutation;
use crate::structure::normal_subgroup_indices;

const BUILTIN: &str = include_str!("../data/catalog.json");

/// Number of isomorphism classes per order expected in the builtin catalog.
pub const BUILTIN_CLASS_COUNTS: [(usize, usize); 17] = [
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 2),
    (5, 1),
    (6, 2),
    (7, 1),
    (8, 5),
    (9, 2),
    (10, 2),
    (11, 1),
    (12, 5),
    (13, 1),
    (14, 2),
    (15, 1),
    (16, 14),
    (24, 1),
];

/// Number of isomorphism classes of groups of each order up to 24.
const CLASS_COUNTS: [usize; 25] = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

const ALIASES: [(&str, &str); 8] = [
    ("A3", "C3"),
    ("C1", "1"),
    ("D3", "S3"),
    ("D2", "V4"),
    ("K4", "V4"),
    ("C2xC2", "V4"),
    ("Z2", "C2"),
    ("trivial", "1"),
];

/// One catalog record as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub abelian: bool,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub name: String,
    pub order: usize,
    pub order_histogram: BTreeMap<String, usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub record: EntryRecord,
    pub group: Arc<FiniteGroup>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.record.name
    }

    pub fn order(&self) -> usize {
        self.record.order
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

fn histogram_record(g: &FiniteGroup) -> BTreeMap<String, usize> {
    g.order_histogram()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

pub fn record_for(name: &str, g: &FiniteGroup) -> EntryRecord {
    EntryRecord {
        abelian: g.is_abelian(),
        degree: g.degree(),
        generators: g.generators().to_vec(),
        name: name.to_string(),
        order: g.order(),
        order_histogram: histogram_record(g),
    }
}

/// Canonical JSON text: sorted keys, one entry per line.
pub fn serialize_records(records: &[EntryRecord]) -> String {
    let lines: Vec<String> = records
        .iter()
        .map(|r| serde_json::to_string(&serde_json::to_value(r).expect("record serializes")).expect("value serializes"))
        .collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

impl Catalog {
    /// The catalog compiled into the library, checked against the class counts.
    pub fn builtin() -> Result<Catalog> {
        let c = Self::from_json_str(BUILTIN)?;
        c.check_class_counts(&BUILTIN_CLASS_COUNTS)?;
        Ok(c)
    }

    /// Loads the file named by `PAIRKIT_CATALOG`, or the builtin catalog.
    pub fn from_env() -> Result<Catalog> {
        match std::env::var_os("PAIRKIT_CATALOG") {
            Some(p) => load_catalog(Some(Path::new(&p))),
            None => Self::builtin(),
        }
    }

    /// Parses and validates every entry; any violation rejects the whole file.
    pub fn from_json_str(text: &str) -> Result<Catalog> {
        let records: Vec<EntryRecord> = serde_json::from_str(text).map_err(|e| GroupError::Catalog {
            entry: "<file>".into(),
            message: e.to_string(),
        })?;
        let mut entries: Vec<CatalogEntry> = Vec::with_capacity(records.len());
        for r in records {
            let bad = |message: String| GroupError::Catalog {
                entry: r.name.clone(),
                message,
            };
            if entries.iter().any(|e| e.record.name == r.name) {
                return Err(bad("duplicate name".into()));
            }
            let g = FiniteGroup::generate(r.degree, r.generators.clone(), r.order.max(1))
                .map_err(|e| bad(format!("enumeration failed: {e}")))?;
            if g.order() != r.order {
                return Err(bad(format!("declared order {} but enumerated {}", r.order, g.order())));
            }
            if histogram_record(&g) != r.order_histogram {
                return Err(bad("element-order histogram does not match".into()));
            }
            if g.is_abelian() != r.abelian {
                return Err(bad("abelian flag does not match".into()));
            }
            let g = Arc::new(g);
            for e in &entries {
                if e.group.order() == g.order()
                    && e.group.order_histogram() == g.order_histogram()
                    && isomorphism(&e.group, &g)
                        .map_err(|err| bad(err.to_string()))?
                        .is_some()
                {
                    return Err(bad(format!("isomorphic to entry {}", e.record.name)));
                }
            }
            entries.push(CatalogEntry { record: r, group: g });
        }
        Ok(Catalog { entries })
    }

    pub fn check_class_counts(&self, expected: &[(usize, usize)]) -> Result<()> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.entries {
            *counts.entry(e.order()).or_insert(0) += 1;
        }
        let want: BTreeMap<usize, usize> = expected.iter().copied().collect();
        if counts != want {
            return Err(GroupError::Catalog {
                entry: "<checksum>".into(),
                message: format!("class counts {counts:?} differ from expected {want:?}"),
            });
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        let name = ALIASES
            .iter()
            .find(|(a, _)| *a == name)
            .map_or(name, |(_, b)| *b);
        self.entries.iter().find(|e| e.record.name == name)
    }

    pub fn group(&self, name: &str) -> Result<Arc<FiniteGroup>> {
        self.get(name)
            .map(|e| e.group.clone())
            .ok_or_else(|| GroupError::Catalog {
                entry: name.to_string(),
                message: "no such catalog entry".into(),
            })
    }

    pub fn of_order(&self, order: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.order() == order)
    }

    pub fn covers_order(&self, order: usize) -> bool {
        self.of_order(order).next().is_some()
    }

    /// True when the catalog holds every isomorphism class of the given order.
    pub fn is_complete_for(&self, order: usize) -> bool {
        CLASS_COUNTS
            .get(order)
            .is_some_and(|&c| self.of_order(order).count() == c)
    }

    /// The catalog entry isomorphic to `g`, if any.
    pub fn identify(&self, g: &Arc<FiniteGroup>) -> Result<Option<&CatalogEntry>> {
        let hist = g.order_histogram();
        for e in self.of_order(g.order()) {
            if e.group.order_histogram() == hist && isomorphism(&e.group, g)?.is_some() {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// Catalog name of `g`, or a placeholder carrying its order.
    pub fn name_of(&self, g: &Arc<FiniteGroup>) -> String {
        match self.identify(g) {
            Ok(Some(e)) => e.record.name.clone(),
            _ => format!("<order {}>", g.order()),
        }
    }
}

pub fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    match path {
        None => Catalog::builtin(),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| GroupError::Catalog {
                entry: p.display().to_string(),
                message: e.to_string(),
            })?;
            Catalog::from_json_str(&text)
        }
    }
}

/// A catalog pair with the names needed to reproduce it.
#[derive(Clone, Debug)]
pub struct NamedPair {
    pub group: String,
    /// Position of `N` in the normal-subgroup list of the group.
    pub normal_position: usize,
    pub normal_name: String,
    pub pair: GroupPair,
}

impl NamedPair {
    pub fn label(&self) -> String {
        format!("({}, {})", self.group, self.normal_name)
    }
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<FiniteGroup> {
    crate::structure::normal_subgroups(g)
}

/// Every (entry, normal subgroup) pair with `|G| <= max_order`, in catalog order.
pub fn all_pairs(catalog: &Catalog, max_order: usize) -> Vec<NamedPair> {
    let mut out = Vec::new();
    for e in catalog.entries().iter().filter(|e| e.order() <= max_order) {
        for (k, idx) in normal_subgroup_indices(&e.group).into_iter().enumerate() {
            let pair = GroupPair::from_indices(e.group.clone(), &idx).expect("normal subgroup");
            let normal_name = catalog.name_of(pair.n());
            out.push(NamedPair {
                group: e.record.name.clone(),
                normal_position: k,
                normal_name,
                pair,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads_with_expected_counts() {
        let c = Catalog::builtin().unwrap();
        assert_eq!(c.len(), 43);
        assert_eq!(c.of_order(16).count(), 14);
        assert_eq!(c.of_order(8).count(), 5);
        assert_eq!(c.get("A3").unwrap().name(), "C3");
    }

    #[test]
    fn wrong_order_is_rejected() {
        let mut r = record_for("C2", &FiniteGroup::generate(2, vec![Permutation::from_images(vec![1, 0]).unwrap()], 4).unwrap());
        r.order = 3;
        let text = serialize_records(&[r]);
        match Catalog::from_json_str(&text) {
            Err(GroupError::Catalog { entry, .. }) => assert_eq!(entry, "C2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn isomorphic_duplicates_are_rejected() {
        let a = FiniteGroup::generate(2, vec![Permutation::from_images(vec![1, 0]).unwrap()], 4).unwrap();
        let b = FiniteGroup::generate(3, vec![Permutation::from_images(vec![0, 2, 1]).unwrap()], 4).unwrap();
        let text = serialize_records(&[record_for("A", &a), record_for("B", &b)]);
        assert!(matches!(Catalog::from_json_str(&text), Err(GroupError::Catalog { .. })));
    }

    #[test]
    fn pair_counts() {
        let c = Catalog::builtin().unwrap();
        assert_eq!(all_pairs(&c, 1).len(), 1);
        // C2: 2, C3: 2, C4: 3, V4: 5
        assert_eq!(all_pairs(&c, 4).len(), 13);
        let six = all_pairs(&c, 6);
        let labels: Vec<String> = six.iter().map(NamedPair::label).collect();
        assert!(labels.contains(&"(S3, C3)".to_string()));
        assert!(labels.contains(&"(C6, C3)".to_string()));
        assert!(labels.contains(&"(C6, C2)".to_string()));
        // plus C5: 2, C6: 4, S3: 3
        assert_eq!(six.len(), 22);
    }

    #[test]
    fn serialization_is_canonical() {
        let c = Catalog::builtin().unwrap();
        let records: Vec<EntryRecord> = c.entries().iter().map(|e| e.record.clone()).collect();
        assert_eq!(serialize_records(&records), BUILTIN);
    }
}
