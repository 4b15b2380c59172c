//! Which alternating words with `2m` syllables are trivial in a dihedral
//! Artin group.
//!
//! For `m >= 3` the trivial ones are, up to swapping the generators and a
//! cyclic permutation of the syllables, exactly
//!
//! ```text
//! s^k (t s ⋯)_{m-1} x^{-k} (⋯)^{-1}_{m-1}
//! ```
//!
//! i.e. exponent `k` at position 0, `-k` at position `m`, `+1` on the `m-1`
//! syllables in between and `-1` on the remaining `m-1`. For `m = 2` they are
//! `s^k t^l s^-k t^-l` up to swapping. The matchers here never consult a word
//! problem oracle.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dihedral::{DihedralError, DihedralGroup};
use crate::presentation::{Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GirthError {
    #[error("expected {expected} syllables, got {got}")]
    SyllableCount { expected: usize, got: usize },
    #[error("word is not alternating in the two dihedral generators")]
    NotAlternating,
    #[error("classification needs m >= 3 (use classify_m2 for m = 2)")]
    SmallM,
    #[error("exponent bound must be positive")]
    EmptyExponentRange,
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
}

/// Parameters of a match against the `m >= 3` template.
///
/// `reconstruct` rebuilds the matched word: the template with exponent `k`,
/// generators swapped when `swap` is set, rotated left by `rotation`
/// syllables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateMatch {
    pub k: i64,
    pub swap: bool,
    pub rotation: usize,
}

/// Exponent sequence of the unrotated template.
fn template_exponents(m: usize, k: i64) -> Vec<i64> {
    (0..2 * m)
        .map(|i| match i {
            0 => k,
            i if i < m => 1,
            i if i == m => -k,
            _ => -1,
        })
        .collect()
}

impl TemplateMatch {
    pub fn reconstruct(&self, group: &DihedralGroup) -> Word {
        let m = group.m as usize;
        let exps = template_exponents(m, self.k);
        let (a, b) = if self.swap { (group.t, group.s) } else { (group.s, group.t) };
        let n = 2 * m;
        Word::reduce((0..n).map(|i| {
            let j = (i + self.rotation) % n;
            (if j.is_multiple_of(2) { a } else { b }, exps[j])
        }))
    }
}

fn check_shape(group: &DihedralGroup, w: &Word, syllables: usize) -> Result<(), GirthError> {
    if w.len() != syllables {
        return Err(GirthError::SyllableCount { expected: syllables, got: w.len() });
    }
    for syl in w.syllables() {
        if syl.gen != group.s && syl.gen != group.t {
            return Err(GirthError::Dihedral(DihedralError::ForeignGenerator(syl.gen)));
        }
    }
    // Two generators and syllable-reduced: alternation is automatic, except
    // that a cyclic word must also alternate across the seam.
    if syllables % 2 == 1 || (syllables > 0 && w.syllables()[0].gen == w.syllables()[syllables - 1].gen) {
        return Err(GirthError::NotAlternating);
    }
    Ok(())
}

/// Matches a `2m`-syllable word against the trivial-word template.
///
/// Among all matching (rotation, swap) pairs the smallest rotation wins,
/// ties going to `swap = false`.
pub fn classify(group: &DihedralGroup, w: &Word) -> Result<Option<TemplateMatch>, GirthError> {
    let m = group.m as usize;
    if m < 3 {
        return Err(GirthError::SmallM);
    }
    let n = 2 * m;
    check_shape(group, w, n)?;
    let syl = w.syllables();
    for rotation in 0..n {
        // The template's position 0 sits at index p of w.
        let p = (n - rotation) % n;
        let k = syl[p].exp;
        let ok = (1..n).all(|i| {
            let e = syl[(p + i) % n].exp;
            match i {
                i if i < m => e == 1,
                i if i == m => e == -k,
                _ => e == -1,
            }
        });
        if ok {
            return Ok(Some(TemplateMatch { k, swap: syl[p].gen != group.s, rotation }));
        }
    }
    Ok(None)
}

/// `(k, l, swap)` for words `s^k t^l s^-k t^-l` (after swapping when `swap`).
pub fn classify_m2(group: &DihedralGroup, w: &Word) -> Result<Option<(i64, i64, bool)>, GirthError> {
    check_shape(group, w, 4)?;
    let e: Vec<i64> = w.syllables().iter().map(|s| s.exp).collect();
    if e[2] == -e[0] && e[3] == -e[1] {
        Ok(Some((e[0], e[1], w.syllables()[0].gen != group.s)))
    } else {
        Ok(None)
    }
}

/// Rebuilds the word described by a `classify_m2` match.
pub fn reconstruct_m2(group: &DihedralGroup, k: i64, l: i64, swap: bool) -> Word {
    let (a, b) = if swap { (group.t, group.s) } else { (group.s, group.t) };
    Word::reduce([(a, k), (b, l), (a, -k), (b, -l)])
}

/// Result of comparing the syntactic classifier with the word-problem oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub m: u32,
    pub bound: u32,
    pub total: u64,
    /// Words the oracle declares trivial.
    pub trivial: u64,
    /// Words the classifier matches.
    pub matched: u64,
    pub agree: u64,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.agree == self.total
    }
}

/// All alternating words with `2m` syllables (`4` for `m = 2`) starting with
/// `s`, exponents in `±1..=±bound`.
pub fn alternating_words(group: &DihedralGroup, bound: u32) -> impl ParallelIterator<Item = Word> + '_ {
    let n = if group.m == 2 { 4 } else { 2 * group.m as usize };
    let choices: Vec<i64> = (1..=bound as i64).flat_map(|e| [e, -e]).collect();
    let base = choices.len() as u64;
    let total = base.pow(n as u32);
    (0..total).into_par_iter().map(move |mut idx| {
        let mut syl: Vec<(Gen, i64)> = Vec::with_capacity(n);
        for i in 0..n {
            let e = choices[(idx % base) as usize];
            idx /= base;
            syl.push((if i % 2 == 0 { group.s } else { group.t }, e));
        }
        Word::reduce(syl)
    })
}

/// Exhaustive classifier/oracle comparison over [`alternating_words`].
pub fn girth_sweep(m: u32, bound: u32) -> Result<SweepReport, GirthError> {
    if bound == 0 {
        return Err(GirthError::EmptyExponentRange);
    }
    let group = DihedralGroup::new(0, 1, m)?;
    let (total, trivial, matched, agree) = alternating_words(&group, bound)
        .map(|w| {
            let oracle = group.is_trivial(&w).expect("word over s, t");
            let syntactic = if m == 2 {
                classify_m2(&group, &w).expect("shape").is_some()
            } else {
                classify(&group, &w).expect("shape").is_some()
            };
            (1u64, oracle as u64, syntactic as u64, (oracle == syntactic) as u64)
        })
        .reduce(|| (0, 0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3));
    Ok(SweepReport { m, bound, total, trivial, matched, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::ArtinPresentation;

    fn word(m: u32, s: &str) -> Word {
        ArtinPresentation::dihedral(m).parse_word(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        let g3 = DihedralGroup::standard(3);
        let w = word(3, "s2 t1 s1 t-2 s-1 t-1");
        assert_eq!(
            classify(&g3, &w).unwrap(),
            Some(TemplateMatch { k: 2, swap: false, rotation: 0 })
        );
        assert_eq!(classify(&g3, &word(3, "t1 s1 t1 s1 t1 s1")).unwrap(), None);
    }

    #[test]
    fn swapped_rotated_m4_template() {
        let g4 = DihedralGroup::standard(4);
        // Template with k = -1, generators swapped, rotated left by 3.
        let built = TemplateMatch { k: -1, swap: true, rotation: 3 }.reconstruct(&g4);
        assert_eq!(built, word(4, "s1 t1 s-1 t-1 s-1 t-1 s1 t1"));
        // With |k| = 1 the word has a second reading at a smaller rotation.
        let found = classify(&g4, &built).unwrap().unwrap();
        assert_eq!(found, TemplateMatch { k: 1, swap: false, rotation: 2 });
        assert_eq!(found.reconstruct(&g4), built);

        let built = TemplateMatch { k: -2, swap: true, rotation: 3 }.reconstruct(&g4);
        assert_eq!(
            classify(&g4, &built).unwrap(),
            Some(TemplateMatch { k: -2, swap: true, rotation: 3 })
        );
    }

    #[test]
    fn k_one_has_two_readings_and_prefers_smaller_rotation() {
        let g3 = DihedralGroup::standard(3);
        let w = word(3, "s1 t1 s1 t-1 s-1 t-1");
        let m = classify(&g3, &w).unwrap().unwrap();
        assert_eq!(m, TemplateMatch { k: 1, swap: false, rotation: 0 });
        assert_eq!(m.reconstruct(&g3), w);
    }

    #[test]
    fn shape_errors() {
        let g3 = DihedralGroup::standard(3);
        assert_eq!(
            classify(&g3, &word(3, "s1 t1 s1 t1")),
            Err(GirthError::SyllableCount { expected: 6, got: 4 })
        );
        assert_eq!(
            classify(&g3, &word(3, "s1 t1 s1 t1 s1 t1 s1")),
            Err(GirthError::SyllableCount { expected: 6, got: 7 })
        );
        assert_eq!(classify(&DihedralGroup::standard(2), &word(2, "s1 t1 s-1 t-1")), Err(GirthError::SmallM));
        let g2 = DihedralGroup::standard(2);
        assert!(classify_m2(&g2, &word(2, "s1 t1 s1")).is_err());
        assert!(matches!(girth_sweep(3, 0), Err(GirthError::EmptyExponentRange)));
    }

    #[test]
    fn classify_m2_examples() {
        let g2 = DihedralGroup::standard(2);
        assert_eq!(classify_m2(&g2, &word(2, "s3 t-1 s-3 t1")).unwrap(), Some((3, -1, false)));
        assert_eq!(classify_m2(&g2, &word(2, "s1 t1 s1 t1")).unwrap(), None);
        assert_eq!(classify_m2(&g2, &word(2, "t2 s5 t-2 s-5")).unwrap(), Some((2, 5, true)));
    }

    #[test]
    fn m2_template_is_closed_under_rotation() {
        let g2 = DihedralGroup::standard(2);
        for k in [-2i64, -1, 1, 2] {
            for l in [-3i64, 1, 3] {
                for swap in [false, true] {
                    let w = reconstruct_m2(&g2, k, l, swap);
                    let syl = w.syllables();
                    for r in 0..4 {
                        let rot = Word::reduce((0..4).map(|i| {
                            let s = syl[(i + r) % 4];
                            (s.gen, s.exp)
                        }));
                        assert!(classify_m2(&g2, &rot).unwrap().is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn every_match_reconstructs_its_input() {
        for m in 3..=4 {
            let g = DihedralGroup::standard(m);
            let words: Vec<Word> = alternating_words(&g, 2).collect();
            for w in words {
                if let Some(t) = classify(&g, &w).unwrap() {
                    assert_eq!(t.reconstruct(&g), w);
                }
            }
        }
    }

    #[test]
    fn sweep_small_cases() {
        let r = girth_sweep(3, 2).unwrap();
        assert_eq!(r.total, 4096);
        assert!(r.all_agree());
        let r = girth_sweep(2, 1).unwrap();
        assert_eq!(r.total, 16);
        assert!(r.all_agree());
    }
}
