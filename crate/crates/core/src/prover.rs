//! Equality proofs in Artin groups by search over elementary moves, with
//! certificates that can be checked without the search.
//!
//! A move acts on the letter sequence of a word:
//!
//! * `FreeCancel { pos }` deletes `x x⁻¹` at `pos`;
//! * `FreeInsert { pos, gen, inverse }` inserts `x x⁻¹` at `pos`;
//! * `RelatorReplace { pos, s, t, inverted, offset, len }` takes the relator
//!   `R = (s t s ⋯)_m (t s t ⋯)_m⁻¹` (or `R⁻¹` when `inverted`), rotated left
//!   by `offset` to `R' = u v` with `|u| = len`, and replaces the occurrence
//!   of `u` at `pos` by `v⁻¹`.
//!
//! Failing to find a proof never means the words differ.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{ArtinPresentation, Exponent, Gen, Letter, PresentationError, Word};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ProverError {
    #[error("generator {0} is not in the presentation")]
    ForeignGenerator(Gen),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("malformed certificate: {0}")]
    Certificate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    FreeCancel { pos: usize },
    FreeInsert { pos: usize, gen: Gen, inverse: bool },
    RelatorReplace { pos: usize, s: Gen, t: Gen, inverted: bool, offset: usize, len: usize },
}

/// Limits on a proof search: the longest intermediate word (in letters) and
/// the number of distinct words visited per deepening round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_len: usize,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 32, max_states: 200_000 }
    }
}

/// A replayable proof that `start` equals `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub presentation: ArtinPresentation,
    pub start: Word,
    pub moves: Vec<Move>,
    pub end: Word,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    version: u32,
    presentation: serde_json::Value,
    start: String,
    moves: Vec<Move>,
    end: String,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let doc = CertificateJson {
            version: CERTIFICATE_VERSION,
            presentation: serde_json::from_str(&self.presentation.to_json()).expect("presentation JSON"),
            start: self.presentation.format_word(&self.start),
            moves: self.moves.clone(),
            end: self.presentation.format_word(&self.end),
        };
        serde_json::to_string_pretty(&doc).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, ProverError> {
        let doc: CertificateJson =
            serde_json::from_str(text).map_err(|e| ProverError::Certificate(e.to_string()))?;
        if doc.version != CERTIFICATE_VERSION {
            return Err(ProverError::Certificate(format!("unsupported version {}", doc.version)));
        }
        let presentation = ArtinPresentation::from_json(&doc.presentation.to_string())?;
        let start = presentation.parse_word(&doc.start)?;
        let end = presentation.parse_word(&doc.end)?;
        Ok(Certificate { presentation, start, moves: doc.moves, end })
    }

    /// The same moves applied inside `prefix · _ · suffix`.
    pub fn embed(&self, prefix: &Word, suffix: &Word) -> Certificate {
        let shift = prefix.letter_len();
        let moves = self
            .moves
            .iter()
            .map(|mv| match *mv {
                Move::FreeCancel { pos } => Move::FreeCancel { pos: pos + shift },
                Move::FreeInsert { pos, gen, inverse } => Move::FreeInsert { pos: pos + shift, gen, inverse },
                Move::RelatorReplace { pos, s, t, inverted, offset, len } => {
                    Move::RelatorReplace { pos: pos + shift, s, t, inverted, offset, len }
                }
            })
            .collect();
        let start = [prefix.letters(), self.start.letters(), suffix.letters()].concat();
        let end = [prefix.letters(), self.end.letters(), suffix.letters()].concat();
        Certificate::from_letters(&self.presentation, start, moves, end)
    }

    /// Wraps moves between letter sequences that need not be freely reduced:
    /// the reduced start is first expanded to `start`, and `end` is reduced
    /// at the close.
    fn from_letters(p: &ArtinPresentation, start: Vec<Letter>, moves: Vec<Move>, end: Vec<Letter>) -> Certificate {
        let (_, start_cancels) = free_reduce_moves(&start);
        let (_, end_cancels) = free_reduce_moves(&end);
        let mut words = vec![start.clone()];
        for mv in &start_cancels {
            words.push(apply_move(p, words.last().unwrap(), mv).expect("free reduction applies"));
        }
        let mut all: Vec<Move> = start_cancels
            .iter()
            .enumerate()
            .rev()
            .map(|(i, mv)| inverse_move(p, &words[i], mv).expect("cancellation inverts"))
            .collect();
        all.extend(moves);
        all.extend(end_cancels);
        Certificate {
            presentation: p.clone(),
            start: Word::from_letters(start),
            moves: all,
            end: Word::from_letters(end),
        }
    }

    /// The proof read backwards: from `end` to `start`.
    pub fn reversed(&self) -> Option<Certificate> {
        let p = &self.presentation;
        let mut words = vec![self.start.letters()];
        for mv in &self.moves {
            words.push(apply_move(p, words.last().unwrap(), mv).ok()?);
        }
        let mut moves = Vec::new();
        for (i, mv) in self.moves.iter().enumerate().rev() {
            moves.push(inverse_move(p, &words[i], mv)?);
        }
        Some(Certificate { presentation: p.clone(), start: self.end.clone(), moves, end: self.start.clone() })
    }

    /// Proof of `start⁻¹ = end⁻¹`, by applying every move to the inverted word.
    pub fn mirrored(&self) -> Option<Certificate> {
        let p = &self.presentation;
        let mut word = self.start.letters();
        let mut moves = Vec::new();
        for mv in &self.moves {
            let n = word.len();
            moves.push(match *mv {
                Move::FreeCancel { pos } => Move::FreeCancel { pos: n.checked_sub(pos + 2)? },
                // (x x⁻¹)⁻¹ = x x⁻¹
                Move::FreeInsert { pos, gen, inverse } => Move::FreeInsert { pos: n.checked_sub(pos)?, gen, inverse },
                Move::RelatorReplace { pos, s, t, inverted, offset, len } => {
                    // u at pos becomes u⁻¹ at n - pos - len, to be replaced by
                    // v. With R' = u v, the variant starting with u⁻¹ is
                    // (v u)⁻¹ = u⁻¹ v⁻¹, the inverse of R' rotated by len.
                    let total = relator_len(p, s, t)?;
                    let rot = (offset + len) % total;
                    Move::RelatorReplace {
                        pos: n.checked_sub(pos + len)?,
                        s,
                        t,
                        inverted: !inverted,
                        offset: (total - rot) % total,
                        len,
                    }
                }
            });
            word = apply_move(p, &word, mv).ok()?;
        }
        Some(Certificate {
            presentation: p.clone(),
            start: self.start.invert(),
            moves,
            end: self.end.invert(),
        })
    }

    /// This proof followed by `next` (which must start where this one ends).
    pub fn then(&self, next: &Certificate) -> Option<Certificate> {
        (self.end == next.start && self.presentation == next.presentation).then(|| Certificate {
            presentation: self.presentation.clone(),
            start: self.start.clone(),
            moves: [self.moves.clone(), next.moves.clone()].concat(),
            end: next.end.clone(),
        })
    }
}

fn relator_len(p: &ArtinPresentation, s: Gen, t: Gen) -> Option<usize> {
    if s >= p.rank() || t >= p.rank() || s == t {
        return None;
    }
    match p.exponent(s, t) {
        Exponent::Finite(m) => Some(2 * m as usize),
        Exponent::Infinite => None,
    }
}

/// `R = (s t ⋯)_m (t s ⋯)_m⁻¹`, inverted and rotated as requested.
fn relator_variant(p: &ArtinPresentation, s: Gen, t: Gen, inverted: bool, offset: usize) -> Option<Vec<Letter>> {
    let n = relator_len(p, s, t)?;
    let m = n / 2;
    let mut r: Vec<Letter> = (0..m).map(|i| Letter::new(if i % 2 == 0 { s } else { t }, false)).collect();
    r.extend((0..m).rev().map(|i| Letter::new(if i % 2 == 0 { t } else { s }, true)));
    if inverted {
        r = r.iter().rev().map(|x| x.inv()).collect();
    }
    if offset >= n {
        return None;
    }
    r.rotate_left(offset);
    Some(r)
}

fn invert_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|x| x.inv()).collect()
}

/// Applies one move, failing when it does not fit the word.
pub fn apply_move(p: &ArtinPresentation, w: &[Letter], mv: &Move) -> Result<Vec<Letter>, String> {
    match *mv {
        Move::FreeCancel { pos } => {
            if pos + 1 >= w.len() || w[pos] != w[pos + 1].inv() {
                return Err(format!("no cancelling pair at {pos}"));
            }
            Ok([&w[..pos], &w[pos + 2..]].concat())
        }
        Move::FreeInsert { pos, gen, inverse } => {
            if pos > w.len() || gen >= p.rank() {
                return Err(format!("cannot insert at {pos}"));
            }
            let x = Letter::new(gen, inverse);
            Ok([&w[..pos], &[x, x.inv()], &w[pos..]].concat())
        }
        Move::RelatorReplace { pos, s, t, inverted, offset, len } => {
            let r = relator_variant(p, s, t, inverted, offset).ok_or("no such relator")?;
            if len > r.len() || pos + len > w.len() || w[pos..pos + len] != r[..len] {
                return Err(format!("relator prefix does not occur at {pos}"));
            }
            Ok([&w[..pos], &invert_letters(&r[len..]), &w[pos + len..]].concat())
        }
    }
}

/// The move undoing `mv` when applied to `w`.
fn inverse_move(p: &ArtinPresentation, w: &[Letter], mv: &Move) -> Option<Move> {
    Some(match *mv {
        Move::FreeCancel { pos } => Move::FreeInsert { pos, gen: w.get(pos)?.gen, inverse: w[pos].inverse },
        Move::FreeInsert { pos, .. } => Move::FreeCancel { pos },
        Move::RelatorReplace { pos, s, t, inverted, offset, len } => {
            let n = relator_len(p, s, t)?;
            Move::RelatorReplace { pos, s, t, inverted: !inverted, offset: (n - offset) % n, len: n - len }
        }
    })
}

/// Leftmost-first free reduction, with the cancellations as moves.
fn free_reduce_moves(w: &[Letter]) -> (Vec<Letter>, Vec<Move>) {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    let mut moves = Vec::new();
    // Cancelling against the stack top at position out.len() - 1 in the word
    // (out ++ rest), which is where the pair sits at that moment.
    for &x in w {
        if out.last() == Some(&x.inv()) {
            out.pop();
            moves.push(Move::FreeCancel { pos: out.len() });
        } else {
            out.push(x);
        }
    }
    (out, moves)
}

/// Replays a certificate, checking every move and the declared ends.
pub fn replay(c: &Certificate) -> bool {
    let mut w = c.start.letters();
    for mv in &c.moves {
        match apply_move(&c.presentation, &w, mv) {
            Ok(next) => w = next,
            Err(_) => return false,
        }
    }
    w == c.end.letters()
}

type State = Vec<i16>;

fn encode(w: &[Letter]) -> State {
    w.iter().map(|x| if x.inverse { -(x.gen as i16 + 1) } else { x.gen as i16 + 1 }).collect()
}

fn decode(w: &[i16]) -> Vec<Letter> {
    w.iter().map(|&x| Letter::new(x.unsigned_abs() as usize - 1, x < 0)).collect()
}

struct Variant {
    word: State,
    s: Gen,
    t: Gen,
    inverted: bool,
    offset: usize,
}

struct Searcher {
    variants: Vec<Variant>,
}

/// One search edge: a relator move followed by the free reductions it causes.
type Step = Vec<Move>;

impl Searcher {
    fn new(p: &ArtinPresentation) -> Self {
        let mut variants: Vec<Variant> = Vec::new();
        for s in 0..p.rank() {
            for t in s + 1..p.rank() {
                let Some(n) = relator_len(p, s, t) else { continue };
                for inverted in [false, true] {
                    for offset in 0..n {
                        let word = encode(&relator_variant(p, s, t, inverted, offset).unwrap());
                        if !variants.iter().any(|v| v.word == word) {
                            variants.push(Variant { word, s, t, inverted, offset });
                        }
                    }
                }
            }
        }
        Searcher { variants }
    }

    fn successors(&self, w: &State, max_len: usize) -> Vec<(State, Step)> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for v in &self.variants {
                if v.word[0] != w[pos] {
                    continue;
                }
                let n = v.word.len();
                let mut longest = 0;
                while longest < n && pos + longest < w.len() && w[pos + longest] == v.word[longest] {
                    longest += 1;
                }
                // Longer matches first: they tend to shorten the word.
                for len in (1..=longest).rev() {
                    let replaced: Vec<Letter> = [
                        decode(&w[..pos]),
                        invert_letters(&decode(&v.word[len..])),
                        decode(&w[pos + len..]),
                    ]
                    .concat();
                    let (reduced, cancels) = free_reduce_moves(&replaced);
                    if reduced.len() > max_len {
                        continue;
                    }
                    let mut step = vec![Move::RelatorReplace {
                        pos,
                        s: v.s,
                        t: v.t,
                        inverted: v.inverted,
                        offset: v.offset,
                        len,
                    }];
                    step.extend(cancels);
                    out.push((encode(&reduced), step));
                }
            }
        }
        out
    }

    /// Best-first search from both ends, shortest words first. Returns the
    /// forward steps from `u` to the meeting word and from `v` to it.
    fn meet(&self, u: &State, v: &State, budget: Budget) -> Option<(Vec<Step>, Vec<Step>)> {
        if u == v {
            return Some((Vec::new(), Vec::new()));
        }
        let mut seen: [HashMap<State, Option<(State, Step)>>; 2] = [HashMap::new(), HashMap::new()];
        let mut heaps: [BinaryHeap<Reverse<(usize, u64, State)>>; 2] = [BinaryHeap::new(), BinaryHeap::new()];
        let mut counter = 0u64;
        for (side, w) in [u, v].into_iter().enumerate() {
            seen[side].insert(w.clone(), None);
            heaps[side].push(Reverse((w.len(), counter, w.clone())));
            counter += 1;
        }
        let mut states = 2;
        loop {
            let side = match (heaps[0].peek(), heaps[1].peek()) {
                (None, None) => return None,
                (Some(_), None) => 0,
                (None, Some(_)) => 1,
                (Some(Reverse(a)), Some(Reverse(b))) => usize::from((b.0, b.1) < (a.0, a.1)),
            };
            let Reverse((_, _, w)) = heaps[side].pop().unwrap();
            for (next, step) in self.successors(&w, budget.max_len) {
                if seen[side].contains_key(&next) {
                    continue;
                }
                seen[side].insert(next.clone(), Some((w.clone(), step)));
                if seen[1 - side].contains_key(&next) {
                    let path = |s: usize| {
                        let mut steps = Vec::new();
                        let mut cur = next.clone();
                        while let Some(Some((prev, step))) = seen[s].get(&cur) {
                            steps.push(step.clone());
                            cur = prev.clone();
                        }
                        steps.reverse();
                        steps
                    };
                    return Some((path(0), path(1)));
                }
                states += 1;
                if states > budget.max_states {
                    return None;
                }
                counter += 1;
                heaps[side].push(Reverse((next.len(), counter, next)));
            }
        }
    }
}

fn check_word(p: &ArtinPresentation, w: &Word) -> Result<(), ProverError> {
    match w.generators().into_iter().find(|&g| g >= p.rank()) {
        Some(g) => Err(ProverError::ForeignGenerator(g)),
        None => Ok(()),
    }
}

/// A certificate turning `u` into `v`, or `None` when none is found within
/// the budget. Rounds of increasing word-length limit run from the longer
/// input's length up to `budget.max_len`, each with `budget.max_states`.
pub fn prove_equal(p: &ArtinPresentation, u: &Word, v: &Word, budget: Budget) -> Result<Option<Certificate>, ProverError> {
    check_word(p, u)?;
    check_word(p, v)?;
    let searcher = Searcher::new(p);
    let (su, sv) = (encode(&u.letters()), encode(&v.letters()));
    let lower = su.len().max(sv.len());
    for max_len in lower..=budget.max_len.max(lower) {
        let Some((forward, backward)) = searcher.meet(&su, &sv, Budget { max_len, ..budget }) else {
            continue;
        };
        let there = Certificate {
            presentation: p.clone(),
            start: u.clone(),
            moves: forward.concat(),
            end: Word::empty(),
        };
        let back = Certificate {
            presentation: p.clone(),
            start: v.clone(),
            moves: backward.concat(),
            end: Word::empty(),
        };
        let mut w = u.letters();
        for mv in &there.moves {
            w = apply_move(p, &w, mv).expect("search produced an applicable move");
        }
        let meet = Word::from_letters(w);
        let there = Certificate { end: meet.clone(), ..there };
        let back = Certificate { end: meet, ..back };
        let cert = there.then(&back.reversed().expect("search moves invert"))
            .expect("both halves meet");
        debug_assert!(replay(&cert));
        return Ok(Some(cert));
    }
    Ok(None)
}

/// A certificate turning `w` into the empty word.
pub fn prove_trivial(p: &ArtinPresentation, w: &Word, budget: Budget) -> Result<Option<Certificate>, ProverError> {
    prove_equal(p, w, &Word::empty(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget { max_len: 24, max_states: 100_000 }
    }

    #[test]
    fn commuting_pair_needs_one_move() {
        let p = ArtinPresentation::dihedral(2);
        let w = p.parse_word("s1 t1 s-1 t-1").unwrap();
        let c = prove_trivial(&p, &w, budget()).unwrap().unwrap();
        assert!(c.moves.len() <= 3);
        assert!(replay(&c));
    }

    #[test]
    fn braid_relation_is_one_move() {
        let p = ArtinPresentation::triangle(3, 3, 3);
        let (u, v) = (p.parse_word("s1 t1 s1").unwrap(), p.parse_word("t1 s1 t1").unwrap());
        let c = prove_equal(&p, &u, &v, budget()).unwrap().unwrap();
        assert_eq!(c.moves.len(), 1);
        assert!(replay(&c));
    }

    #[test]
    fn equal_words_need_no_moves() {
        let p = ArtinPresentation::triangle(3, 3, 3);
        let u = p.parse_word("s1 t-2 r1").unwrap();
        let c = prove_equal(&p, &u, &u, budget()).unwrap().unwrap();
        assert!(c.moves.is_empty());
        assert!(replay(&c));
    }

    #[test]
    fn free_pair_has_no_proof() {
        let p = ArtinPresentation::new(&["s", "t"], &[] as &[(&str, &str, u32)]).unwrap();
        let w = p.parse_word("s1 t1 s-1 t-1").unwrap();
        assert!(prove_trivial(&p, &w, budget()).unwrap().is_none());
    }

    #[test]
    fn foreign_generator_is_an_error() {
        let p = ArtinPresentation::dihedral(3);
        let w = Word::reduce([(5, 1)]);
        assert!(matches!(prove_trivial(&p, &w, budget()), Err(ProverError::ForeignGenerator(5))));
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let p = ArtinPresentation::triangle(3, 3, 3);
        let w1 = p.parse_word("s1 t1 r1 s1 t1 r1").unwrap();
        let w2 = p.parse_word("t1 s1 t1 r1").unwrap();
        let c = prove_equal(&p, &w1.concat(&w2), &w2.concat(&w1), budget()).unwrap().unwrap();
        assert!(replay(&c));
        for i in 0..c.moves.len() {
            let mut bad = c.clone();
            match &mut bad.moves[i] {
                Move::FreeCancel { pos } | Move::FreeInsert { pos, .. } | Move::RelatorReplace { pos, .. } => {
                    *pos += 1
                }
            }
            assert!(!replay(&bad), "move {i} still replays after shifting");
        }
        let empty = Certificate { presentation: p.clone(), start: w1.clone(), moves: vec![], end: w2 };
        assert!(!replay(&empty));
    }

    #[test]
    fn json_round_trip() {
        let p = ArtinPresentation::triangle(4, 4, 2);
        let w = p.parse_word("s1 t1 r1 t1 r1 t-1 s1 t1 t-1 s-1 t1 r-1 t-1 r-1 t-1 s-1").unwrap();
        let c = prove_trivial(&p, &w, budget()).unwrap().unwrap();
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(Certificate::from_json(&c.to_json().replace("\"version\": 1", "\"version\": 9")).is_err());
    }

    #[test]
    fn transformed_certificates_replay() {
        let p = ArtinPresentation::triangle(3, 3, 3);
        let u = p.parse_word("s1 t1 r1 s1 t1 r1 t1 s1 t1 r1").unwrap();
        let v = p.parse_word("t1 s1 t1 r1 s1 t1 r1 s1 t1 r1").unwrap();
        let c = prove_equal(&p, &u, &v, budget()).unwrap().unwrap();
        let rev = c.reversed().unwrap();
        assert!(replay(&rev));
        assert_eq!((rev.start.clone(), rev.end.clone()), (v.clone(), u.clone()));
        let mir = c.mirrored().unwrap();
        assert!(replay(&mir));
        assert_eq!(mir.end, v.invert());
        let pre = p.parse_word("r-1 s2").unwrap();
        let suf = p.parse_word("r-1 t1").unwrap();
        let emb = c.embed(&pre, &suf);
        assert!(replay(&emb));
        assert_eq!(emb.end, pre.concat(&v).concat(&suf));
        // Prefix cancelling into the word.
        let emb = c.embed(&p.parse_word("r-1 t-1 s-1").unwrap(), &Word::empty());
        assert!(replay(&emb));
        assert!(replay(&c.then(&rev).unwrap()));
    }

    #[test]
    fn larger_budgets_keep_proofs() {
        let p = ArtinPresentation::triangle(3, 3, 3);
        let w1 = p.parse_word("s1 t1 r1 s1 t1 r1").unwrap();
        let w2 = p.parse_word("t2 s1 t1 r1").unwrap();
        let (a, b) = (w1.concat(&w2), w2.concat(&w1));
        let mut found = false;
        for max_len in [10, 12, 14, 16, 20] {
            for max_states in [100, 1_000, 10_000] {
                let got = prove_equal(&p, &a, &b, Budget { max_len, max_states }).unwrap().is_some();
                if found && max_len >= 12 {
                    assert!(got);
                }
                found |= got;
            }
        }
        assert!(found);
    }
}
