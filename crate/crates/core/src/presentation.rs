//! Artin presentations, syllable words and word-language templates.
//!
//! Generators are referred to by their index in the presentation (`Gen`);
//! names only matter for parsing and printing.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a generator in its presentation.
pub type Gen = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("exponent for ({0}, {1}) must be at least 2, got {2}")]
    BadExponent(String, String, u32),
    #[error("relation pairs a generator with itself: `{0}`")]
    DiagonalRelation(String),
    #[error("conflicting exponents for ({0}, {1})")]
    ConflictingExponent(String, String),
    #[error("malformed syllable `{0}`")]
    MalformedSyllable(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// Exponent `m_st` of a generator pair. `Infinite` means no relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    pub fn finite(self) -> Option<u32> {
        match self {
            Exponent::Finite(m) => Some(m),
            Exponent::Infinite => None,
        }
    }
}

/// `A_S = < S | sts.. = tst.. (m_st letters each side) >`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinPresentation {
    names: Vec<String>,
    // Symmetric, diagonal entries unused.
    exponents: Vec<Vec<Exponent>>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    #[serde(default)]
    relations: Vec<(String, String, u32)>,
}

impl ArtinPresentation {
    /// Builds a presentation from generator names and `(s, t, m)` triples.
    /// Pairs that are not listed get `m = ∞`.
    pub fn new<S: AsRef<str>>(
        names: &[S],
        relations: &[(S, S, u32)],
    ) -> Result<Self, PresentationError> {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '-' || c.is_ascii_digit()) {
                return Err(PresentationError::Malformed(format!("bad generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(PresentationError::DuplicateGenerator(n.clone()));
            }
        }
        let k = names.len();
        let mut pres = ArtinPresentation {
            exponents: vec![vec![Exponent::Infinite; k]; k],
            names,
        };
        let mut seen = vec![vec![false; k]; k];
        for (a, b, m) in relations {
            let (a, b) = (a.as_ref(), b.as_ref());
            let s = pres.index_of(a)?;
            let t = pres.index_of(b)?;
            if s == t {
                return Err(PresentationError::DiagonalRelation(a.to_string()));
            }
            if *m < 2 {
                return Err(PresentationError::BadExponent(a.to_string(), b.to_string(), *m));
            }
            if seen[s][t] && pres.exponents[s][t] != Exponent::Finite(*m) {
                return Err(PresentationError::ConflictingExponent(a.to_string(), b.to_string()));
            }
            seen[s][t] = true;
            seen[t][s] = true;
            pres.exponents[s][t] = Exponent::Finite(*m);
            pres.exponents[t][s] = Exponent::Finite(*m);
        }
        Ok(pres)
    }

    /// Two generators `s`, `t` with exponent `m`.
    pub fn dihedral(m: u32) -> Self {
        Self::new(&["s", "t"], &[("s", "t", m)]).expect("valid dihedral presentation")
    }

    /// Generators `s`, `t`, `r` with the given exponents.
    pub fn triangle(m_st: u32, m_tr: u32, m_sr: u32) -> Self {
        Self::new(
            &["s", "t", "r"],
            &[("s", "t", m_st), ("t", "r", m_tr), ("s", "r", m_sr)],
        )
        .expect("valid triangle presentation")
    }

    /// Parses either the JSON form `{"generators": [..], "relations": [[s, t, m], ..]}`
    /// or the plain-text form: first non-comment line lists generator names,
    /// every further line is `s t m`.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            return Self::from_json(trimmed);
        }
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| PresentationError::Malformed("empty presentation".into()))?;
        let names: Vec<&str> = header.split_whitespace().collect();
        let mut rels = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(PresentationError::Malformed(format!("bad relation line `{line}`")));
            }
            let m: u32 = parts[2]
                .parse()
                .map_err(|_| PresentationError::Malformed(format!("bad exponent `{}`", parts[2])))?;
            rels.push((parts[0], parts[1], m));
        }
        Self::new(&names, &rels)
    }

    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        let raw: PresentationJson =
            serde_json::from_str(text).map_err(|e| PresentationError::Malformed(e.to_string()))?;
        let rels: Vec<(String, String, u32)> = raw.relations;
        let names = raw.generators;
        Self::new(&names, &rels)
    }

    pub fn to_json(&self) -> String {
        let mut relations = Vec::new();
        for s in 0..self.rank() {
            for t in s + 1..self.rank() {
                if let Exponent::Finite(m) = self.exponents[s][t] {
                    relations.push((self.names[s].clone(), self.names[t].clone(), m));
                }
            }
        }
        serde_json::to_string(&PresentationJson { generators: self.names.clone(), relations })
            .expect("serializable")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<Gen, PresentationError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    pub fn exponent(&self, s: Gen, t: Gen) -> Exponent {
        assert_ne!(s, t, "exponent of a generator with itself");
        self.exponents[s][t]
    }

    /// Every triple satisfies `1/m_st + 1/m_tr + 1/m_sr <= 1`, with `1/∞ = 0`.
    pub fn is_two_dimensional(&self) -> bool {
        let k = self.rank();
        for s in 0..k {
            for t in s + 1..k {
                for r in t + 1..k {
                    if !triple_is_two_dimensional([
                        self.exponents[s][t],
                        self.exponents[t][r],
                        self.exponents[s][r],
                    ]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The presentation induced on a subset of generators (kept in the given order).
    pub fn restrict(&self, keep: &[Gen]) -> ArtinPresentation {
        ArtinPresentation {
            names: keep.iter().map(|&g| self.names[g].clone()).collect(),
            exponents: keep
                .iter()
                .map(|&a| keep.iter().map(|&b| self.exponents[a][b]).collect())
                .collect(),
        }
    }

    /// The `reduce` operation on named syllables.
    pub fn reduce_named<S: AsRef<str>>(&self, raw: &[(S, i64)]) -> Result<Word, PresentationError> {
        let mut pairs = Vec::with_capacity(raw.len());
        for (name, e) in raw {
            pairs.push((self.index_of(name.as_ref())?, *e));
        }
        Ok(Word::reduce(pairs))
    }

    /// Parses `"s2 t-1 r1"`. The empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut pairs = Vec::new();
        for tok in text.split_whitespace() {
            let split = tok
                .find(|c: char| c == '-' || c.is_ascii_digit())
                .ok_or_else(|| PresentationError::MalformedSyllable(tok.to_string()))?;
            let (name, exp) = tok.split_at(split);
            if name.is_empty() {
                return Err(PresentationError::MalformedSyllable(tok.to_string()));
            }
            let exp: i64 = exp
                .parse()
                .map_err(|_| PresentationError::MalformedSyllable(tok.to_string()))?;
            pairs.push((self.index_of(name)?, exp));
        }
        Ok(Word::reduce(pairs))
    }

    /// Inverse of [`parse_word`](Self::parse_word) on reduced words.
    pub fn format_word(&self, w: &Word) -> String {
        let mut out = String::new();
        for (i, syl) in w.syllables().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&self.names[syl.gen]);
            out.push_str(&syl.exp.to_string());
        }
        out
    }

    /// `s t s ...` with `len` letters, starting at `first` and alternating with `other`.
    pub fn alternating(first: Gen, other: Gen, len: usize) -> Word {
        Word::reduce((0..len).map(|i| (if i % 2 == 0 { first } else { other }, 1)))
    }
}

/// The two-dimensionality inequality for a single triple.
pub fn triple_is_two_dimensional(ms: [Exponent; 3]) -> bool {
    // 1/a + 1/b + 1/c <= 1 over the finite entries, compared with integers.
    let finite: Vec<u64> = ms.iter().filter_map(|m| m.finite()).map(u64::from).collect();
    match finite.as_slice() {
        [] | [_] => true,
        [a, b] => a * b >= a + b,
        [a, b, c] => a * b * c >= b * c + a * c + a * b,
        _ => unreachable!(),
    }
}

/// A maximal power of a single generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i64,
}

/// A signed letter: generator plus orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A syllable-reduced word: exponents are nonzero and adjacent syllables
/// use distinct generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Merges equal-generator neighbours and drops zero exponents until stable.
    pub fn reduce<I: IntoIterator<Item = (Gen, i64)>>(raw: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for (gen, exp) in raw {
            if exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == gen => {
                    last.exp += exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(Syllable { gen, exp }),
            }
        }
        Word { syllables: out }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word::reduce(letters.into_iter().map(|l| (l.gen, l.sign())))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn letter_len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.letter_len());
        for s in &self.syllables {
            let l = Letter::new(s.gen, s.exp < 0);
            out.extend(std::iter::repeat_n(l, s.exp.unsigned_abs() as usize));
        }
        out
    }

    pub fn invert(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -s.exp })
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(
            self.syllables
                .iter()
                .chain(other.syllables.iter())
                .map(|s| (s.gen, s.exp)),
        )
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Per-generator exponent sums.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for s in &self.syllables {
            v[s.gen] += s.exp;
        }
        v
    }

    /// Applies a generator relabelling.
    pub fn relabel(&self, map: impl Fn(Gen) -> Gen) -> Word {
        Word::reduce(self.syllables.iter().map(|s| (map(s.gen), s.exp)))
    }

    pub fn generators(&self) -> BTreeSet<Gen> {
        self.syllables.iter().map(|s| s.gen).collect()
    }
}

impl fmt::Display for Word {
    /// Generator indices instead of names; use [`ArtinPresentation::format_word`]
    /// for named output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}^{}", s.gen, s.exp)?;
        }
        Ok(())
    }
}

/// Languages built from fixed words, `s^•` atoms, concatenation and `L^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LanguageTemplate {
    Fixed(Word),
    /// `s^n` for any nonzero `n`.
    Power(Gen),
    Concat(Vec<LanguageTemplate>),
    /// Union of `L^n` for `n >= 1`.
    Star(Box<LanguageTemplate>),
}

/// Finite enumeration window for a template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TemplateBounds {
    /// `•` exponents range over `[-exponent, exponent] \ {0}`.
    pub exponent: u32,
    /// Star repetitions range over `[1, star]`.
    pub star: u32,
}

impl LanguageTemplate {
    pub fn fixed(w: Word) -> Self {
        LanguageTemplate::Fixed(w)
    }

    pub fn power(g: Gen) -> Self {
        LanguageTemplate::Power(g)
    }

    pub fn concat(parts: Vec<LanguageTemplate>) -> Self {
        LanguageTemplate::Concat(parts)
    }

    pub fn star(inner: LanguageTemplate) -> Self {
        LanguageTemplate::Star(Box::new(inner))
    }

    /// All words of the template inside `bounds`, syllable-reduced and deduplicated.
    pub fn enumerate(&self, bounds: TemplateBounds) -> BTreeSet<Word> {
        self.expand(bounds)
            .into_iter()
            .map(Word::reduce)
            .collect()
    }

    /// Number of raw (pre-dedup) expansions. Equal to `enumerate().len()`
    /// exactly when no two expansions reduce to the same word.
    pub fn raw_count(&self, bounds: TemplateBounds) -> u128 {
        match self {
            LanguageTemplate::Fixed(_) => 1,
            LanguageTemplate::Power(_) => 2 * u128::from(bounds.exponent),
            LanguageTemplate::Concat(parts) => parts.iter().map(|p| p.raw_count(bounds)).product(),
            LanguageTemplate::Star(inner) => {
                let c = inner.raw_count(bounds);
                (1..=bounds.star).map(|n| c.pow(n)).sum()
            }
        }
    }

    fn expand(&self, bounds: TemplateBounds) -> Vec<Vec<(Gen, i64)>> {
        match self {
            LanguageTemplate::Fixed(w) => {
                vec![w.syllables().iter().map(|s| (s.gen, s.exp)).collect()]
            }
            LanguageTemplate::Power(g) => {
                let b = i64::from(bounds.exponent);
                (-b..=b).filter(|&e| e != 0).map(|e| vec![(*g, e)]).collect()
            }
            LanguageTemplate::Concat(parts) => {
                let mut acc: Vec<Vec<(Gen, i64)>> = vec![Vec::new()];
                for p in parts {
                    let options = p.expand(bounds);
                    let mut next = Vec::with_capacity(acc.len() * options.len());
                    for a in &acc {
                        for o in &options {
                            let mut v = a.clone();
                            v.extend_from_slice(o);
                            next.push(v);
                        }
                    }
                    acc = next;
                }
                acc
            }
            LanguageTemplate::Star(inner) => {
                let options = inner.expand(bounds);
                let mut out = Vec::new();
                let mut layer: Vec<Vec<(Gen, i64)>> = vec![Vec::new()];
                for _ in 0..bounds.star {
                    let mut next = Vec::new();
                    for a in &layer {
                        for o in &options {
                            let mut v = a.clone();
                            v.extend_from_slice(o);
                            next.push(v);
                        }
                    }
                    out.extend(next.iter().cloned());
                    layer = next;
                }
                out
            }
        }
    }

    /// Membership test on the letter sequence of `w` (no bounds).
    ///
    /// Matching is letter-level, so it is exact for templates whose
    /// expansions never cancel freely; the Theorem-B style templates used in
    /// this crate have that property.
    pub fn matches(&self, w: &Word) -> bool {
        let letters = w.letters();
        self.ends(&letters, 0).contains(&letters.len())
    }

    fn ends(&self, letters: &[Letter], start: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        match self {
            LanguageTemplate::Fixed(w) => {
                let pat = w.letters();
                if letters.len() >= start + pat.len() && letters[start..start + pat.len()] == pat[..] {
                    out.insert(start + pat.len());
                }
            }
            LanguageTemplate::Power(g) => {
                if let Some(first) = letters.get(start) {
                    if first.gen == *g {
                        let mut i = start;
                        while i < letters.len() && letters[i] == *first {
                            i += 1;
                            out.insert(i);
                        }
                    }
                }
            }
            LanguageTemplate::Concat(parts) => {
                let mut cur: BTreeSet<usize> = [start].into();
                for p in parts {
                    let mut next = BTreeSet::new();
                    for &c in &cur {
                        next.extend(p.ends(letters, c));
                    }
                    cur = next;
                    if cur.is_empty() {
                        break;
                    }
                }
                out = cur;
            }
            LanguageTemplate::Star(inner) => {
                let mut frontier: Vec<usize> = vec![start];
                let mut seen = BTreeSet::new();
                while let Some(p) = frontier.pop() {
                    for e in inner.ends(letters, p) {
                        if seen.insert(e) {
                            frontier.push(e);
                        }
                    }
                }
                out = seen;
            }
        }
        out
    }

    /// Applies a generator relabelling to every atom.
    pub fn relabel(&self, map: &impl Fn(Gen) -> Gen) -> LanguageTemplate {
        match self {
            LanguageTemplate::Fixed(w) => LanguageTemplate::Fixed(w.relabel(map)),
            LanguageTemplate::Power(g) => LanguageTemplate::Power(map(*g)),
            LanguageTemplate::Concat(p) => {
                LanguageTemplate::Concat(p.iter().map(|x| x.relabel(map)).collect())
            }
            LanguageTemplate::Star(i) => LanguageTemplate::Star(Box::new(i.relabel(map))),
        }
    }
}
