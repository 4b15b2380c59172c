//! Word problem in dihedral Artin groups `A_st`, `2 <= m_st < ∞`.
//!
//! [`DihedralGroup::normal_form`] computes the left-greedy Garside normal form
//! `Δ^p · a_1 ⋯ a_k`. [`DihedralGroup::bfs_oracle_is_trivial`] is an unrelated
//! brute-force closure under free and relator moves, used to cross-check it.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{ArtinPresentation, Exponent, Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DihedralError {
    #[error("generator {0} is not one of the two dihedral generators")]
    ForeignGenerator(Gen),
    #[error("dihedral exponent must be finite and at least 2")]
    BadExponent,
    #[error("the two dihedral generators must differ")]
    SameGenerators,
    #[error("oracle budget exhausted after {0} states")]
    BudgetExhausted(usize),
}

/// `A_st` embedded in some presentation via the generator indices `s`, `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralGroup {
    pub s: Gen,
    pub t: Gen,
    pub m: u32,
}

/// A simple element other than `1` and `Δ`: the unique alternating word of
/// length `len` (`1 <= len < m`) starting with `first` (0 = s, 1 = t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simple {
    pub first: u8,
    pub len: u32,
}

impl Simple {
    fn last(self) -> u8 {
        if self.len % 2 == 1 {
            self.first
        } else {
            1 - self.first
        }
    }
}

/// `Δ^delta_power · canonical[0] ⋯ canonical[k-1]`, left-weighted.
/// Equality of normal forms is equality in the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub delta_power: i64,
    pub canonical: Vec<Simple>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.canonical.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.delta_power)?;
        for a in &self.canonical {
            write!(f, " {}{}", if a.first == 0 { 's' } else { 't' }, a.len)?;
        }
        Ok(())
    }
}

impl DihedralGroup {
    pub fn new(s: Gen, t: Gen, m: u32) -> Result<Self, DihedralError> {
        if s == t {
            return Err(DihedralError::SameGenerators);
        }
        if m < 2 {
            return Err(DihedralError::BadExponent);
        }
        Ok(DihedralGroup { s, t, m })
    }

    /// Generators 0 and 1.
    pub fn standard(m: u32) -> Self {
        Self::new(0, 1, m).expect("m >= 2")
    }

    pub fn from_presentation(p: &ArtinPresentation, s: Gen, t: Gen) -> Result<Self, DihedralError> {
        match p.exponent(s, t) {
            Exponent::Finite(m) => Self::new(s, t, m),
            Exponent::Infinite => Err(DihedralError::BadExponent),
        }
    }

    fn local(&self, g: Gen) -> Result<u8, DihedralError> {
        if g == self.s {
            Ok(0)
        } else if g == self.t {
            Ok(1)
        } else {
            Err(DihedralError::ForeignGenerator(g))
        }
    }

    pub fn normal_form(&self, w: &Word) -> Result<NormalForm, DihedralError> {
        let mut acc = Accumulator { m: self.m, delta: 0, factors: Vec::new() };
        for syl in w.syllables() {
            let x = self.local(syl.gen)?;
            for _ in 0..syl.exp.unsigned_abs() {
                if syl.exp > 0 {
                    acc.push(Simple { first: x, len: 1 });
                } else {
                    acc.push_inverse_letter(x);
                }
            }
        }
        Ok(NormalForm { delta_power: acc.delta, canonical: acc.factors })
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, DihedralError> {
        Ok(self.normal_form(w)?.is_identity())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, DihedralError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// The word `Δ = sts⋯` (m letters).
    pub fn delta(&self) -> Word {
        ArtinPresentation::alternating(self.s, self.t, self.m as usize)
    }

    /// Back to a word over `s`, `t`.
    pub fn to_word(&self, nf: &NormalForm) -> Word {
        let gens = [self.s, self.t];
        let mut out = self.delta().pow(nf.delta_power);
        for a in &nf.canonical {
            let f = a.first as usize;
            out = out.concat(&ArtinPresentation::alternating(gens[f], gens[1 - f], a.len as usize));
        }
        out
    }

    /// Breadth-first closure of `w` (as a cyclic word) under free
    /// cancellation, free insertion and substitution of relator pieces,
    /// restricted to cyclic words of at most `max_len` letters.
    ///
    /// `Ok(true)`: the empty word was reached. `Ok(false)`: the whole closure
    /// was explored without reaching it. `Err(BudgetExhausted)`: more than
    /// `max_states` cyclic words were generated.
    pub fn bfs_oracle_is_trivial(
        &self,
        w: &Word,
        max_len: usize,
        max_states: usize,
    ) -> Result<bool, DihedralError> {
        let mut start: Vec<i8> = Vec::new();
        for syl in w.syllables() {
            let x = self.local(syl.gen)? as i8 + 1;
            let l = if syl.exp > 0 { x } else { -x };
            start.extend(std::iter::repeat_n(l, syl.exp.unsigned_abs() as usize));
        }
        CyclicClosure::new(self.m as usize, max_len).search(start, max_states)
    }
}

struct Accumulator {
    m: u32,
    delta: i64,
    factors: Vec<Simple>,
}

impl Accumulator {
    fn tau(&self, a: Simple) -> Simple {
        if self.m % 2 == 1 {
            Simple { first: 1 - a.first, len: a.len }
        } else {
            a
        }
    }

    fn push(&mut self, a: Simple) {
        self.factors.push(a);
        self.normalize();
    }

    // x^{-1} = r Δ^{-1} with r the complement of x in Δ, and
    // Δ^p A r Δ^{-1} = Δ^{p-1} τ(A r).
    fn push_inverse_letter(&mut self, x: u8) {
        if self.m > 1 {
            self.push(Simple { first: 1 - x, len: self.m - 1 });
        }
        for i in 0..self.factors.len() {
            self.factors[i] = self.tau(self.factors[i]);
        }
        self.delta -= 1;
    }

    fn normalize(&mut self) {
        loop {
            let mut changed = false;
            // Slide letters left while the product stays simple.
            for i in 0..self.factors.len().saturating_sub(1) {
                let (a, b) = (self.factors[i], self.factors[i + 1]);
                if a.len == 0 || b.len == 0 || a.len >= self.m || b.first == a.last() {
                    continue;
                }
                let j = b.len.min(self.m - a.len);
                self.factors[i].len += j;
                self.factors[i + 1] = Simple {
                    first: if j % 2 == 1 { 1 - b.first } else { b.first },
                    len: b.len - j,
                };
                changed = true;
            }
            let before = self.factors.len();
            self.factors.retain(|a| a.len > 0);
            changed |= before != self.factors.len();
            // a_1 ⋯ a_{i-1} Δ = Δ τ(a_1) ⋯ τ(a_{i-1})
            while let Some(i) = self.factors.iter().position(|a| a.len == self.m) {
                for j in 0..i {
                    self.factors[j] = self.tau(self.factors[j]);
                }
                self.factors.remove(i);
                self.delta += 1;
                changed = true;
            }
            if !changed {
                break;
            }
        }
    }
}

struct CyclicClosure {
    m: usize,
    max_len: usize,
    // Every cyclic rotation of the relator and of its inverse.
    relators: Vec<Vec<i8>>,
}

impl CyclicClosure {
    fn new(m: usize, max_len: usize) -> Self {
        let alt = |first: i8, n: usize| -> Vec<i8> {
            (0..n).map(|i| if i % 2 == 0 { first } else { 3 - first }).collect()
        };
        let mut rel = alt(1, m);
        rel.extend(alt(2, m).into_iter().rev().map(|x| -x));
        let inv: Vec<i8> = rel.iter().rev().map(|x| -x).collect();
        let mut relators = Vec::new();
        for r in [rel, inv] {
            for k in 0..r.len() {
                let mut c = r[k..].to_vec();
                c.extend_from_slice(&r[..k]);
                if !relators.contains(&c) {
                    relators.push(c);
                }
            }
        }
        CyclicClosure { m, max_len, relators }
    }

    fn canonical(w: &[i8]) -> Vec<i8> {
        if w.is_empty() {
            return Vec::new();
        }
        let mut best: Vec<i8> = w.to_vec();
        for k in 1..w.len() {
            let cand: Vec<i8> = w[k..].iter().chain(&w[..k]).copied().collect();
            if cand < best {
                best = cand;
            }
        }
        best
    }

    fn search(&self, start: Vec<i8>, max_states: usize) -> Result<bool, DihedralError> {
        if start.len() > self.max_len {
            return Ok(false);
        }
        let start = Self::canonical(&start);
        if start.is_empty() {
            return Ok(true);
        }
        // Every move preserves the image in the abelianisation (Z for odd m,
        // Z^2 for even m), so a nonzero image can never reach the empty word.
        let mut sums = [0i64; 2];
        for &x in &start {
            sums[(x.unsigned_abs() - 1) as usize] += x.signum() as i64;
        }
        let abelian_zero = if self.m % 2 == 1 { sums[0] + sums[1] == 0 } else { sums == [0, 0] };
        if !abelian_zero {
            return Ok(false);
        }
        let mut seen: HashSet<Vec<i8>> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            let n = w.len();
            for k in 0..n {
                let rot: Vec<i8> = w[k..].iter().chain(&w[..k]).copied().collect();
                for next in self.moves_at_front(&rot) {
                    if next.is_empty() {
                        return Ok(true);
                    }
                    let c = Self::canonical(&next);
                    if seen.insert(c.clone()) {
                        if seen.len() > max_states {
                            return Err(DihedralError::BudgetExhausted(seen.len()));
                        }
                        queue.push_back(c);
                    }
                }
            }
        }
        Ok(false)
    }

    fn moves_at_front(&self, w: &[i8]) -> Vec<Vec<i8>> {
        let mut out = Vec::new();
        let n = w.len();
        if n >= 2 && w[0] == -w[1] {
            out.push(w[2..].to_vec());
        }
        if n + 2 <= self.max_len {
            for x in [1i8, -1, 2, -2] {
                let mut v = vec![x, -x];
                v.extend_from_slice(w);
                out.push(v);
            }
        }
        for r in &self.relators {
            // Replace a prefix u of w, where r = u v, by v^{-1}.
            for ulen in 0..r.len() {
                if ulen > n || w[..ulen] != r[..ulen] {
                    break;
                }
                let new_len = n - ulen + (r.len() - ulen);
                if new_len > self.max_len {
                    continue;
                }
                let mut v: Vec<i8> = r[ulen..].iter().rev().map(|x| -x).collect();
                v.extend_from_slice(&w[ulen..]);
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(p: &ArtinPresentation, s: &str) -> Word {
        p.parse_word(s).unwrap()
    }

    #[test]
    fn braid_relation_equates_both_sides() {
        let p = ArtinPresentation::dihedral(3);
        let g = DihedralGroup::standard(3);
        let a = g.normal_form(&w(&p, "s1 t1 s1")).unwrap();
        let b = g.normal_form(&w(&p, "t1 s1 t1")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, NormalForm { delta_power: 1, canonical: vec![] });
    }

    #[test]
    fn empty_word_is_identity() {
        for m in 2..7 {
            let nf = DihedralGroup::standard(m).normal_form(&Word::empty()).unwrap();
            assert!(nf.is_identity());
        }
    }

    #[test]
    fn st_differs_from_ts() {
        let p = ArtinPresentation::dihedral(3);
        let g = DihedralGroup::standard(3);
        assert!(!g.equal(&w(&p, "s1 t1"), &w(&p, "t1 s1")).unwrap());
        // Brute force over relator moves agrees (up to length 10).
        let diff = w(&p, "s1 t1 s-1 t-1");
        assert!(!g.bfs_oracle_is_trivial(&diff, 10, 1_000_000).unwrap());
    }

    #[test]
    fn triviality_examples() {
        let p3 = ArtinPresentation::dihedral(3);
        let g3 = DihedralGroup::standard(3);
        assert!(g3.is_trivial(&w(&p3, "s2 t1 s1 t-2 s-1 t-1")).unwrap());
        assert!(!g3.is_trivial(&w(&p3, "s1 t1 s1 t1 s1 t1")).unwrap());
        let p4 = ArtinPresentation::dihedral(4);
        let g4 = DihedralGroup::standard(4);
        assert!(g4.is_trivial(&w(&p4, "s1 t1 s1 t1 s-1 t-1 s-1 t-1")).unwrap());
    }

    #[test]
    fn foreign_generator_is_rejected() {
        let p = ArtinPresentation::triangle(3, 3, 3);
        let g = DihedralGroup::standard(3);
        assert_eq!(
            g.normal_form(&w(&p, "s1 r1")),
            Err(DihedralError::ForeignGenerator(2))
        );
        assert!(DihedralGroup::new(0, 0, 3).is_err());
        assert!(DihedralGroup::new(0, 1, 1).is_err());
    }

    #[test]
    fn bfs_oracle_examples() {
        let p = ArtinPresentation::dihedral(2);
        let g2 = DihedralGroup::standard(2);
        assert!(g2.bfs_oracle_is_trivial(&w(&p, "s1 t1 s-1 t-1"), 8, 1_000_000).unwrap());
        let g3 = DihedralGroup::standard(3);
        assert!(!g3.bfs_oracle_is_trivial(&w(&p, "s1"), 8, 1_000_000).unwrap());
        assert!(g3
            .bfs_oracle_is_trivial(&w(&p, "s2 t1 s1 t-2 s-1 t-1"), 12, 1_000_000)
            .unwrap());
        assert!(matches!(
            g3.bfs_oracle_is_trivial(&w(&p, "s1 t1 s-1 t-1"), 12, 10),
            Err(DihedralError::BudgetExhausted(_))
        ));
        // Nonzero abelian image is rejected without exploring anything.
        assert!(!g3.bfs_oracle_is_trivial(&w(&p, "s1"), 12, 1).unwrap());
    }

    #[test]
    fn delta_squared_is_central() {
        for m in 2..=8 {
            let g = DihedralGroup::standard(m);
            let d2 = g.delta().pow(2);
            for x in [0, 1] {
                let gx = Word::reduce([(x, 1)]);
                let c = d2.concat(&gx).concat(&d2.invert()).concat(&gx.invert());
                assert!(g.is_trivial(&c).unwrap(), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn delta_conjugation_swaps_for_odd_m() {
        for m in 2..=7 {
            let g = DihedralGroup::standard(m);
            let d = g.delta();
            let s = Word::reduce([(0, 1)]);
            let conj = d.invert().concat(&s).concat(&d);
            let expected = Word::reduce([(if m % 2 == 1 { 1 } else { 0 }, 1)]);
            assert!(g.equal(&conj, &expected).unwrap());
        }
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..2, -3i64..=3), 0..10).prop_map(Word::reduce)
    }

    proptest! {
        #[test]
        fn normal_form_is_multiplicative(m in 2u32..7, u in word_strategy(), v in word_strategy(),
                                         u2 in word_strategy()) {
            let g = DihedralGroup::standard(m);
            // Replace u by an equal word: round trip through its normal form.
            let u_alt = g.to_word(&g.normal_form(&u).unwrap());
            prop_assert_eq!(g.normal_form(&u_alt).unwrap(), g.normal_form(&u).unwrap());
            prop_assert_eq!(
                g.normal_form(&u.concat(&v)).unwrap(),
                g.normal_form(&u_alt.concat(&v)).unwrap()
            );
            if g.equal(&u, &u2).unwrap() {
                prop_assert!(g.is_trivial(&u.concat(&u2.invert())).unwrap());
            }
        }

        #[test]
        fn inverse_cancels(m in 2u32..9, u in word_strategy()) {
            let g = DihedralGroup::standard(m);
            prop_assert!(g.is_trivial(&u.concat(&u.invert())).unwrap());
            prop_assert!(g.is_trivial(&u.invert().concat(&u)).unwrap());
        }

        #[test]
        fn canonical_factors_are_left_weighted(m in 2u32..7, u in word_strategy()) {
            let nf = DihedralGroup::standard(m).normal_form(&u).unwrap();
            for a in &nf.canonical {
                prop_assert!(a.len >= 1 && a.len < m);
            }
            for pair in nf.canonical.windows(2) {
                prop_assert_eq!(pair[1].first, pair[0].last());
            }
        }
    }
}
