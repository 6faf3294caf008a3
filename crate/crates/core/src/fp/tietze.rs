//! Generator elimination through relators of length one and two.

use std::collections::HashSet;

use crate::fp::presentation::{cyclic_reduce, inverse_word, letter, letter_generator, FpPresentation, Letter, Word};

/// A simplified presentation plus the value of every original generator.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: FpPresentation,
    /// `None` for generators that became trivial, otherwise a letter of the new presentation.
    pub generator_values: Vec<Option<Letter>>,
}

#[derive(Clone, Copy)]
enum Value {
    Free,
    Trivial,
    Link(Letter),
}

struct Resolver {
    values: Vec<Value>,
}

impl Resolver {
    /// Resolves a letter to a letter over free generators, or `None` if trivial.
    fn resolve(&mut self, l: Letter) -> Option<Letter> {
        let g = letter_generator(l);
        let inv = l & 1;
        match self.values[g] {
            Value::Free => Some(l),
            Value::Trivial => None,
            Value::Link(t) => {
                let r = self.resolve(t);
                // path compression
                self.values[g] = match r {
                    Some(x) => Value::Link(x),
                    None => Value::Trivial,
                };
                r.map(|x| x ^ inv)
            }
        }
    }

    fn rewrite(&mut self, w: &[Letter]) -> Word {
        let w: Word = w.iter().filter_map(|&l| self.resolve(l)).collect();
        cyclic_reduce(&w)
    }
}

/// Least rotation of the word or of its inverse, used to drop duplicate relators.
pub fn canonical_cyclic_form(w: &[Letter]) -> Word {
    let mut best: Option<Word> = None;
    for v in [w.to_vec(), inverse_word(w)] {
        for k in 0..v.len().max(1) {
            let mut rot = v[k..].to_vec();
            rot.extend_from_slice(&v[..k]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn simplify(pres: &FpPresentation) -> Simplified {
    let n = pres.generator_count();
    let mut res = Resolver {
        values: vec![Value::Free; n],
    };
    let mut relators: Vec<Word> = pres.relators().to_vec();
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(relators.len());
        for r in &relators {
            let w = res.rewrite(r);
            match w.len() {
                0 => {}
                1 => {
                    res.values[letter_generator(w[0])] = Value::Trivial;
                    changed = true;
                }
                2 if letter_generator(w[0]) != letter_generator(w[1]) => {
                    // w0 w1 = 1, so the generator of w0 equals w1^-1 (inverted if w0 is an inverse)
                    let target = w[1] ^ 1 ^ (w[0] & 1);
                    res.values[letter_generator(w[0])] = Value::Link(target);
                    changed = true;
                }
                _ => next.push(w),
            }
        }
        relators = next;
        if !changed {
            break;
        }
    }
    let mut renumber = vec![usize::MAX; n];
    let mut names = Vec::new();
    for g in 0..n {
        if matches!(res.values[g], Value::Free) {
            renumber[g] = names.len();
            names.push(pres.generator_names()[g].clone());
        }
    }
    let relabel = |l: Letter| letter(renumber[letter_generator(l)], l & 1 == 1);
    let mut seen = HashSet::new();
    let mut kept = Vec::new();
    for r in &relators {
        let w: Word = res.rewrite(r).into_iter().map(relabel).collect();
        if w.is_empty() {
            continue;
        }
        let key = canonical_cyclic_form(&w);
        if seen.insert(key.clone()) {
            kept.push(key);
        }
    }
    kept.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let generator_values = (0..n)
        .map(|g| res.resolve(letter(g, false)).map(relabel))
        .collect();
    let presentation = FpPresentation::new(names, kept).expect("relabelled letters are in range");
    Simplified {
        presentation,
        generator_values,
    }
}
