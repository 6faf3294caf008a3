//! Regenerates `data/catalog.json` from small permutation representations and
//! presentations. Run with `cargo run -p pairkit --example build_catalog`.

use pairkit::catalog::{record_for, serialize_records};
use pairkit::fp::{coset_table_to_group, parse_presentation, todd_coxeter};
use pairkit::{FiniteGroup, Permutation};

enum Source {
    Perms(usize, Vec<Vec<Vec<u32>>>),
    Presentation(&'static str),
}

fn cyclic(n: usize) -> Source {
    Source::Perms(n, vec![vec![(0..n as u32).collect()]])
}

fn cycles(degree: usize, gens: &[&[&[u32]]]) -> Source {
    Source::Perms(
        degree,
        gens.iter().map(|g| g.iter().map(|c| c.to_vec()).collect()).collect(),
    )
}

fn build(source: Source) -> FiniteGroup {
    match source {
        Source::Perms(degree, gens) => {
            let perms = gens
                .iter()
                .map(|g| {
                    let cs: Vec<&[u32]> = g.iter().map(|c| c.as_slice()).collect();
                    Permutation::from_cycles(degree, &cs).unwrap()
                })
                .collect();
            FiniteGroup::generate(degree, perms, 64).unwrap()
        }
        Source::Presentation(text) => {
            let pres = parse_presentation(text).unwrap().presentation;
            let table = todd_coxeter(&pres, &[], 1000).unwrap();
            coset_table_to_group(&table, &pres).unwrap().0
        }
    }
}

fn main() {
    let entries: Vec<(&str, Source)> = vec![
        ("1", Source::Perms(1, vec![])),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("V4", cycles(4, &[&[&[0, 1]], &[&[2, 3]]])),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", cycles(3, &[&[&[0, 1, 2]], &[&[0, 1]]])),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C2xC4", cycles(6, &[&[&[0, 1]], &[&[2, 3, 4, 5]]])),
        ("C2^3", cycles(6, &[&[&[0, 1]], &[&[2, 3]], &[&[4, 5]]])),
        ("D4", cycles(4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]])),
        ("Q8", Source::Presentation("<a, b | a^4, a^2 b^-2, b^-1 a b a>")),
        ("C9", cyclic(9)),
        ("C3xC3", cycles(6, &[&[&[0, 1, 2]], &[&[3, 4, 5]]])),
        ("C10", cyclic(10)),
        ("D5", cycles(5, &[&[&[0, 1, 2, 3, 4]], &[&[1, 4], &[2, 3]]])),
        ("C11", cyclic(11)),
        ("C12", cyclic(12)),
        ("C2xC6", cycles(8, &[&[&[0, 1]], &[&[2, 3, 4, 5, 6, 7]]])),
        ("A4", cycles(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]])),
        ("D6", cycles(6, &[&[&[0, 1, 2, 3, 4, 5]], &[&[1, 5], &[2, 4]]])),
        ("Dic3", cycles(7, &[&[&[0, 1, 2]], &[&[1, 2], &[3, 4, 5, 6]]])),
        ("C13", cyclic(13)),
        ("C14", cyclic(14)),
        ("D7", cycles(7, &[&[&[0, 1, 2, 3, 4, 5, 6]], &[&[1, 6], &[2, 5], &[3, 4]]])),
        ("C15", cyclic(15)),
        ("C16", cyclic(16)),
        ("C4xC4", cycles(8, &[&[&[0, 1, 2, 3]], &[&[4, 5, 6, 7]]])),
        (
            "C2^2:C4",
            Source::Presentation("<a, b, c | a^4, b^2, c^2, [a, b], [b, c], c a c^-1 b^-1 a^-1>"),
        ),
        ("C4:C4", Source::Presentation("<a, b | a^4, b^4, b^-1 a b a>")),
        ("C2xC8", cycles(10, &[&[&[0, 1]], &[&[2, 3, 4, 5, 6, 7, 8, 9]]])),
        ("M16", Source::Presentation("<a, b | a^8, b^2, b a b^-1 a^-5>")),
        ("D8", cycles(8, &[&[&[0, 1, 2, 3, 4, 5, 6, 7]], &[&[1, 7], &[2, 6], &[3, 5]]])),
        ("SD16", Source::Presentation("<a, b | a^8, b^2, b a b^-1 a^-3>")),
        ("Q16", Source::Presentation("<a, b | a^8, a^4 b^-2, b^-1 a b a>")),
        ("C2^2xC4", cycles(8, &[&[&[0, 1]], &[&[2, 3]], &[&[4, 5, 6, 7]]])),
        ("D4xC2", cycles(6, &[&[&[0, 1, 2, 3]], &[&[1, 3]], &[&[4, 5]]])),
        (
            "Q8xC2",
            Source::Presentation("<a, b, c | a^4, a^2 b^-2, b^-1 a b a, c^2, [a, c], [b, c]>"),
        ),
        (
            "C4oD4",
            Source::Presentation("<a, b, c | a^4, b^2, b a b^-1 a, c^2 a^-2, [a, c], [b, c]>"),
        ),
        ("C2^4", cycles(8, &[&[&[0, 1]], &[&[2, 3]], &[&[4, 5]], &[&[6, 7]]])),
        ("S4", cycles(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]])),
    ];
    let records: Vec<_> = entries
        .into_iter()
        .map(|(name, src)| record_for(name, &build(src)))
        .collect();
    print!("{}", serialize_records(&records));
}
