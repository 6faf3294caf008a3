//! Finitely presented groups and the `<gens | relators>` text format.
//!
//! Letters are encoded as column indices: generator `i` is `2 * i`, its
//! inverse is `2 * i + 1`, so `letter ^ 1` inverts a letter.

use std::fmt;

use crate::error::{GroupError, Result};

pub type Letter = u32;
pub type Word = Vec<Letter>;

#[inline]
pub fn letter(generator: usize, inverse: bool) -> Letter {
    2 * generator as u32 + inverse as u32
}

#[inline]
pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

#[inline]
pub fn letter_generator(l: Letter) -> usize {
    (l / 2) as usize
}

#[inline]
pub fn letter_is_inverse(l: Letter) -> bool {
    l & 1 == 1
}

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|&l| l ^ 1).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by removal of cancelling letters at the two ends.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1] ^ 1 {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl FpPresentation {
    /// Freely reduces every relator and drops the ones that become empty.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generator_names.len();
        let mut kept = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(&bad) = r.iter().find(|&&l| letter_generator(l) >= n) {
                return Err(GroupError::Invalid(format!(
                    "relator uses generator index {} but only {n} generators exist",
                    letter_generator(bad)
                )));
            }
            let r = free_reduce(&r);
            if !r.is_empty() {
                kept.push(r);
            }
        }
        Ok(FpPresentation {
            generator_names,
            relators: kept,
        })
    }

    /// Presentation with generators named `x0, x1, ...`.
    pub fn with_generator_count(count: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new((0..count).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|g| g == name)
    }

    /// Exponent sum of each generator in a word.
    pub fn exponent_sums(&self, w: &[Letter]) -> Vec<i64> {
        let mut v = vec![0i64; self.generator_count()];
        for &l in w {
            v[letter_generator(l)] += if letter_is_inverse(l) { -1 } else { 1 };
        }
        v
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generator_names[letter_generator(w[i])];
            let k = (j - i) as i64 * if letter_is_inverse(w[i]) { -1 } else { 1 };
            parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for FpPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "<{} | {}>", self.generator_names.join(", "), rels.join(", "))
    }
}

/// A parsed presentation plus notes about relators dropped as vacuous.
#[derive(Clone, Debug)]
pub struct ParsedPresentation {
    pub presentation: FpPresentation,
    pub warnings: Vec<String>,
}

/// Parses `<a, b | a^2, b^2, (a b)^3>`.
///
/// Relators are products of names, powers, parenthesized subwords and
/// commutators `[u, v]` (= `u^-1 v^-1 u v`); `u = v` stands for `u v^-1`.
pub fn parse_presentation(text: &str) -> Result<ParsedPresentation> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names: Vec::new(),
    };
    p.skip_ws();
    p.expect(b'<')?;
    loop {
        p.skip_ws();
        if p.peek() == Some(b'|') || p.peek() == Some(b'>') {
            break;
        }
        let start = p.pos;
        let name = p.ident()?;
        if p.names.contains(&name) {
            return Err(p.error_at(start, format!("duplicate generator '{name}'")));
        }
        p.names.push(name);
        p.skip_ws();
        if p.peek() == Some(b',') {
            p.pos += 1;
        }
    }
    let mut relators = Vec::new();
    let mut warnings = Vec::new();
    if p.peek() == Some(b'|') {
        p.pos += 1;
        p.skip_ws();
        if p.peek() != Some(b'>') {
            loop {
                let start = p.pos;
                let r = p.relation()?;
                if r.is_empty() {
                    let snippet = String::from_utf8_lossy(&p.src[start..p.pos]).trim().to_string();
                    warnings.push(format!("relator '{snippet}' reduces to the empty word and was dropped"));
                } else {
                    relators.push(r);
                }
                p.skip_ws();
                match p.peek() {
                    Some(b',') => p.pos += 1,
                    Some(b'>') => break,
                    _ => return Err(p.error("expected ',' or '>'")),
                }
            }
        }
    }
    p.expect(b'>')?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input after '>'"));
    }
    let presentation = FpPresentation::new(p.names, relators)?;
    Ok(ParsedPresentation {
        presentation,
        warnings,
    })
}

/// Parses a single word over the given generator names.
pub fn parse_word(names: &[String], text: &str) -> Result<Word> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names: names.to_vec(),
    };
    let w = p.product(&[])?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected character in word"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> GroupError {
        self.error_at(self.pos, message.to_string())
    }

    fn error_at(&self, position: usize, message: String) -> GroupError {
        GroupError::Parse { position, message }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return Err(self.error("expected a generator name")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn relation(&mut self) -> Result<Word> {
        let lhs = self.product(b",>")?;
        self.skip_ws();
        if self.peek() == Some(b'=') {
            self.pos += 1;
            let rhs = self.product(b",>")?;
            let mut w = lhs;
            w.extend(inverse_word(&rhs));
            return Ok(free_reduce(&w));
        }
        Ok(lhs)
    }

    /// Product of factors up to a terminator, ')', ']' or '='.
    fn product(&mut self, terminators: &[u8]) -> Result<Word> {
        let mut w = Word::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c) if terminators.contains(&c) || matches!(c, b')' | b']' | b'=') => break,
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(_) => {
                    let f = self.factor()?;
                    w.extend(f);
                }
            }
        }
        Ok(free_reduce(&w))
    }

    fn factor(&mut self) -> Result<Word> {
        self.skip_ws();
        let base = match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.product(&[])?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error_at(open, "unbalanced '('".into()));
                }
                self.pos += 1;
                inner
            }
            Some(b'[') => {
                let open = self.pos;
                self.pos += 1;
                let u = self.product(b",")?;
                self.skip_ws();
                if self.peek() != Some(b',') {
                    return Err(self.error_at(open, "commutator needs two entries".into()));
                }
                self.pos += 1;
                let v = self.product(b",")?;
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(self.error_at(open, "unbalanced '['".into()));
                }
                self.pos += 1;
                let mut w = inverse_word(&u);
                w.extend(inverse_word(&v));
                w.extend(u);
                w.extend(v);
                w
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident()?;
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| self.error_at(start, format!("unknown generator '{name}'")))?;
                vec![letter(g, false)]
            }
            Some(b')') => return Err(self.error("unbalanced ')'")),
            _ => return Err(self.error("expected a generator, '(' or '['")),
        };
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let k = self.integer()?;
        let unit = if k < 0 { inverse_word(&base) } else { base };
        let mut w = Word::with_capacity(unit.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            w.extend_from_slice(&unit);
        }
        Ok(w)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error_at(start, "malformed exponent".into()));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<i64>()
            .ok()
            .filter(|k| k.unsigned_abs() <= 1_000_000)
            .ok_or_else(|| self.error_at(start, "exponent out of range".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> FpPresentation {
        parse_presentation(s).unwrap().presentation
    }

    #[test]
    fn cyclic_presentation() {
        let p = parse("<a | a^3>");
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators(), &[vec![0, 0, 0]]);
    }

    #[test]
    fn dihedral_syntax() {
        let p = parse("<a,b | a^2, b^2, (a b)^3>");
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2].len(), 6);
    }

    #[test]
    fn vacuous_relator_is_dropped_with_warning() {
        let parsed = parse_presentation("<a | a^2 a^-2>").unwrap();
        assert!(parsed.presentation.relators().is_empty());
        assert_eq!(parsed.warnings.len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_presentation("<a | b>") {
            Err(GroupError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_presentation("<a | a^x>"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_presentation("<a | (a a>"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_presentation("<a | a)>"), Err(GroupError::Parse { .. })));
    }

    #[test]
    fn relations_and_commutators() {
        let p = parse("<a, b | b a b^-1 = a^-1, [a, b]^2>");
        assert_eq!(p.format_word(&p.relators()[0]), "b a b^-1 a");
        assert_eq!(p.format_word(&p.relators()[1]), "a^-1 b^-1 a b a^-1 b^-1 a b");
    }

    #[test]
    fn printer_round_trips() {
        for s in ["<a,b | a^2, b^2, (a b)^3>", "<x, y, z | x y^-3 z, [x, z]>", "<a, b | >", "<t | t^-7>"] {
            let p = parse(s);
            assert_eq!(parse(&p.to_string()), p);
        }
    }

    #[test]
    fn word_parsing() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(parse_word(&names, "a b^-1").unwrap(), vec![0, 3]);
        assert_eq!(parse_word(&names, "").unwrap(), Vec::<u32>::new());
        assert!(parse_word(&names, "c").is_err());
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(cyclic_reduce(&[1, 2, 4, 3, 0]), vec![4]);
        assert_eq!(cyclic_reduce(&[1, 2, 4, 0]), vec![2, 4]);
        assert_eq!(cyclic_reduce(&[0, 1]), Vec::<u32>::new());
    }
}
