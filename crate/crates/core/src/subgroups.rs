//! The six families of rank-two free abelian subgroups of two-dimensional
//! Artin groups, the Klein bottle pair, and reading generator pairs off
//! periodic direction data on Davis complex patches.
//!
//! Generators of the triangle presentations are `s = 0`, `t = 1`, `r = 2`.
//! In templates `x^•` stands for any nonzero power of `x`.

use serde::Serialize;
use thiserror::Error;

use crate::polarisation::{induced, rigidity_witnesses, PolarisationError};
use crate::presentation::{ArtinPresentation, Exponent, Gen, LanguageTemplate, Word};
use crate::prover::{prove_equal, Budget, Certificate, ProverError};
use crate::tiling::{lattice_basis, lattice_contains, type_preserving_lattice, DirectionAssignment, TilingPatch, Vec2};

#[derive(Debug, Error)]
pub enum SubgroupError {
    #[error("presentation exponents do not fit case ({0})")]
    IncompatibleExponents(char),
    #[error("factor {index} needs {expected} nonzero exponents, got {got:?}")]
    BadFactor { index: usize, expected: usize, got: Vec<i64> },
    #[error("at least one star factor is needed")]
    NoFactors,
    #[error("{0}")]
    Commuting(String),
    #[error("k must be nonzero")]
    ZeroK,
    #[error("no certificate found within the budget")]
    BudgetExhausted,
    #[error(transparent)]
    Prover(#[from] ProverError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlatCase {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl FlatCase {
    pub const TRIANGLE: [FlatCase; 5] = [FlatCase::B, FlatCase::C, FlatCase::D, FlatCase::E, FlatCase::F];

    pub fn letter(self) -> char {
        match self {
            FlatCase::A => 'a',
            FlatCase::B => 'b',
            FlatCase::C => 'c',
            FlatCase::D => 'd',
            FlatCase::E => 'e',
            FlatCase::F => 'f',
        }
    }

    pub fn from_letter(c: char) -> Option<FlatCase> {
        [FlatCase::A, FlatCase::B, FlatCase::C, FlatCase::D, FlatCase::E, FlatCase::F]
            .into_iter()
            .find(|x| x.letter() == c.to_ascii_lowercase())
    }

    /// `(m_st, m_tr, m_sr)` required by a triangle case.
    pub fn exponents(self) -> Option<(u32, u32, u32)> {
        match self {
            FlatCase::A => None,
            FlatCase::B => Some((3, 3, 3)),
            FlatCase::C | FlatCase::D => Some((4, 4, 2)),
            FlatCase::E | FlatCase::F => Some((6, 3, 2)),
        }
    }
}

const S: Gen = 0;
const T: Gen = 1;
const R: Gen = 2;

fn letters(gens: &[(Gen, i64)]) -> Word {
    Word::reduce(gens.iter().copied())
}

/// One factor of a star template: syllables whose exponent is either fixed
/// or a nonzero parameter (`None`).
fn atom(case: FlatCase) -> Vec<(Gen, Option<i64>)> {
    match case {
        FlatCase::A => Vec::new(),
        FlatCase::B | FlatCase::D => vec![(T, None), (S, Some(1)), (T, Some(1)), (R, Some(1))],
        FlatCase::C => vec![(R, None), (T, Some(-1)), (S, None), (T, Some(1))],
        FlatCase::E => vec![(T, None), (S, Some(1)), (T, Some(1)), (S, Some(1)), (T, Some(1)), (R, Some(1))],
        FlatCase::F => vec![(S, None), (T, Some(1)), (S, Some(1)), (T, Some(1)), (R, Some(1)), (T, Some(-1))],
    }
}

/// A Theorem-style family: a fixed generator and a language for the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatFamily {
    pub case: FlatCase,
    pub presentation: ArtinPresentation,
    pub w1: Word,
    pub w2: LanguageTemplate,
}

impl FlatFamily {
    /// The family of a triangle case (b)–(f) in its standard presentation.
    pub fn triangle(case: FlatCase) -> Option<FlatFamily> {
        let (m_st, m_tr, m_sr) = case.exponents()?;
        let w1 = match case {
            FlatCase::B => letters(&[(S, 1), (T, 1), (R, 1), (S, 1), (T, 1), (R, 1)]),
            FlatCase::C => letters(&[(S, 1), (T, 1), (R, 1), (T, 1)]),
            FlatCase::D => letters(&[(S, 1), (T, 1), (S, 1), (R, 1), (T, 1), (R, 1)]),
            FlatCase::E => letters(&[(S, 1), (T, 1), (S, 1), (T, 1), (S, 1), (R, 1), (T, 1), (S, 1), (T, 1), (R, 1)]),
            FlatCase::F => letters(&[(T, 1), (S, 1), (T, 1), (S, 1), (T, 1), (R, 1)]),
            FlatCase::A => unreachable!(),
        };
        let factor = LanguageTemplate::concat(
            atom(case)
                .into_iter()
                .map(|(g, e)| match e {
                    None => LanguageTemplate::power(g),
                    Some(e) => LanguageTemplate::fixed(Word::reduce([(g, e)])),
                })
                .collect(),
        );
        Some(FlatFamily {
            case,
            presentation: ArtinPresentation::triangle(m_st, m_tr, m_sr),
            w1,
            w2: LanguageTemplate::star(factor),
        })
    }

    /// Number of free exponents in one star factor.
    pub fn bullets_per_factor(&self) -> usize {
        atom(self.case).iter().filter(|(_, e)| e.is_none()).count()
    }
}

fn check_triangle(p: &ArtinPresentation, case: FlatCase) -> Result<(), SubgroupError> {
    let (m_st, m_tr, m_sr) = case.exponents().ok_or(SubgroupError::IncompatibleExponents('a'))?;
    let fits = p.rank() == 3
        && p.exponent(S, T) == Exponent::Finite(m_st)
        && p.exponent(T, R) == Exponent::Finite(m_tr)
        && p.exponent(S, R) == Exponent::Finite(m_sr);
    if fits {
        Ok(())
    } else {
        Err(SubgroupError::IncompatibleExponents(case.letter()))
    }
}

/// The generator pair of a triangle case: `w1` and the product of the star
/// factors with the given bullet exponents.
pub fn family(p: &ArtinPresentation, case: FlatCase, factors: &[Vec<i64>]) -> Result<(Word, Word), SubgroupError> {
    check_triangle(p, case)?;
    let fam = FlatFamily::triangle(case).expect("triangle case");
    if factors.is_empty() {
        return Err(SubgroupError::NoFactors);
    }
    let shape = atom(case);
    let need = fam.bullets_per_factor();
    let mut w2 = Word::empty();
    for (index, f) in factors.iter().enumerate() {
        if f.len() != need || f.contains(&0) {
            return Err(SubgroupError::BadFactor { index, expected: need, got: f.clone() });
        }
        let mut bullets = f.iter();
        let piece = Word::reduce(shape.iter().map(|&(g, e)| (g, e.unwrap_or_else(|| *bullets.next().unwrap()))));
        w2 = w2.concat(&piece);
    }
    Ok((fam.w1, w2))
}

/// Case (a): words over two generator sets that pairwise commute.
pub fn family_commuting(
    p: &ArtinPresentation,
    t: &[Gen],
    t_prime: &[Gen],
    w: &Word,
    w_prime: &Word,
) -> Result<(Word, Word), SubgroupError> {
    for &a in t {
        for &b in t_prime {
            if a >= p.rank() || b >= p.rank() || a == b || p.exponent(a, b) != Exponent::Finite(2) {
                return Err(SubgroupError::IncompatibleExponents('a'));
            }
        }
    }
    if !w.generators().iter().all(|g| t.contains(g)) || !w_prime.generators().iter().all(|g| t_prime.contains(g)) {
        return Err(SubgroupError::Commuting("words must lie in their parabolic subgroups".into()));
    }
    Ok((w.clone(), w_prime.clone()))
}

/// A certificate that `w1 w2 = w2 w1`.
pub fn verify_commute(p: &ArtinPresentation, w1: &Word, w2: &Word, budget: Budget) -> Result<Certificate, SubgroupError> {
    prove_equal(p, &w1.concat(w2), &w2.concat(w1), budget)?.ok_or(SubgroupError::BudgetExhausted)
}

/// A certificate that the generators of a triangle-case instance commute.
pub fn verify_abelian(
    p: &ArtinPresentation,
    case: FlatCase,
    factors: &[Vec<i64>],
    budget: Budget,
) -> Result<Certificate, SubgroupError> {
    let (w1, w2) = family(p, case, factors)?;
    verify_commute(p, &w1, &w2, budget)
}

/// Whether the images of `w1` and `w2` in the abelianisation `Z^rank` are
/// linearly independent.
pub fn abelian_images_independent(w1: &Word, w2: &Word, rank: usize) -> bool {
    let (a, b) = (w1.exponent_sums(rank), w2.exponent_sums(rank));
    (0..rank).any(|i| (i + 1..rank).any(|j| a[i] * b[j] != a[j] * b[i]))
}

/// Every bullet assignment with `|k| <= bound` and `1..=max_factors` factors.
pub fn instances(case: FlatCase, bound: i64, max_factors: usize) -> Vec<Vec<Vec<i64>>> {
    let need = FlatFamily::triangle(case).map_or(0, |f| f.bullets_per_factor());
    let values: Vec<i64> = (-bound..=bound).filter(|&k| k != 0).collect();
    let mut one: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..need {
        one = one.into_iter().flat_map(|v| values.iter().map(move |&k| [v.clone(), vec![k]].concat())).collect();
    }
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for _ in 0..max_factors {
        layer = layer
            .into_iter()
            .flat_map(|fs| one.iter().map(move |f| [fs.clone(), vec![f.clone()]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `(str, g')` with `g' = t^k s r^-k s^-1` in the {3,3,3} group, and the
/// certificate that `(str)^-1 g' (str) = g'^-1`.
#[derive(Clone, Debug)]
pub struct KleinPair {
    pub k: i64,
    pub a: Word,
    pub b: Word,
    pub relation: Certificate,
}

pub fn klein_generators(k: i64) -> (Word, Word) {
    (letters(&[(S, 1), (T, 1), (R, 1)]), letters(&[(T, k), (S, 1), (R, -k), (S, -1)]))
}

pub fn klein_pair(k: i64, budget: Budget) -> Result<KleinPair, SubgroupError> {
    klein_pair_in(&ArtinPresentation::triangle(3, 3, 3), k, budget)
}

/// As [`klein_pair`], in any presentation on `s, t, r`.
pub fn klein_pair_in(p: &ArtinPresentation, k: i64, budget: Budget) -> Result<KleinPair, SubgroupError> {
    if k == 0 {
        return Err(SubgroupError::ZeroK);
    }
    let (a, b) = klein_generators(k);
    let lhs = a.invert().concat(&b).concat(&a);
    let relation = prove_equal(p, &lhs, &b.invert(), budget)?.ok_or(SubgroupError::BudgetExhausted)?;
    Ok(KleinPair { k, a, b, relation })
}

impl KleinPair {
    /// `(str)^-2 g' (str)^2 = g'`, composed from the relation: conjugating
    /// it by `str`, then inverting both sides.
    pub fn squared_relation(&self) -> Option<Certificate> {
        let conj = self.relation.embed(&self.a.invert(), &self.a);
        conj.then(&self.relation.mirrored()?)
    }

    /// Certificate that `g' · strstr = (t^k str)(t^-k str)`.
    pub fn decomposition(&self, budget: Budget) -> Result<Certificate, SubgroupError> {
        let p = &self.relation.presentation;
        let lhs = self.b.concat(&self.a.pow(2));
        let rhs = letters(&[(T, self.k), (S, 1), (T, 1), (R, 1), (T, -self.k), (S, 1), (T, 1), (R, 1)]);
        prove_equal(p, &lhs, &rhs, budget)?.ok_or(SubgroupError::BudgetExhausted)
    }
}

/// A commuting generator pair read off a direction assignment on a patch.
///
/// Both words are read from the vertex `start` along edge paths with
/// displacements `d1` and `d2` (scaled chart coordinates), which form a basis
/// of the translations preserving types and directions. `relabel[g]` is the
/// patch type playing the role of the family generator `g`; `w1` and `w2`
/// are in family labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadOff {
    pub case: FlatCase,
    pub relabel: [Gen; 3],
    pub start: usize,
    pub d1: Vec2,
    pub d2: Vec2,
    /// Words in patch types as read along the two paths.
    pub read1: Word,
    pub read2: Word,
    pub w1: Word,
    pub w2: Word,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReadOffError {
    #[error("read-off needs a Euclidean triangle patch")]
    NotTriangle,
    #[error(transparent)]
    Polarisation(#[from] PolarisationError),
    #[error("no power of the witness translation preserves the directions")]
    NoAxis,
    #[error("no start vertex and path reads a family pair")]
    NoMatch,
}

fn v_add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn v_scale(a: Vec2, k: i64) -> Vec2 {
    [a[0] * k, a[1] * k]
}

fn cross(a: Vec2, b: Vec2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Edge of type `g` at vertex `x`, with its displacement away from `x`.
fn step(patch: &TilingPatch, x: usize, g: Gen) -> Option<(usize, Vec2)> {
    let e = *patch.edges_at(x).iter().find(|&&e| patch.edges[e].ty == g)?;
    let edge = &patch.edges[e];
    if edge.a == edge.b {
        return None;
    }
    let disp = if edge.a == x { edge.disp } else { v_scale(edge.disp, -1) };
    Some((e, disp))
}

/// Follows the edge types `types` from `start`; returns the word read and
/// the total displacement.
fn follow(patch: &TilingPatch, d: &DirectionAssignment, start: usize, types: &[Gen]) -> Option<(Word, Vec2)> {
    let mut pos = patch.vertices[start].pos;
    let mut x = start;
    let mut syl = Vec::with_capacity(types.len());
    for &g in types {
        let (e, disp) = step(patch, x, g)?;
        let k = d.length[e] as i64;
        syl.push((g, if d.ends(patch, e).0 == x { k } else { -k }));
        pos = v_add(pos, disp);
        x = patch.vertex_at(pos)?;
    }
    Some((Word::reduce(syl), v_add(pos, v_scale(patch.vertices[start].pos, -1))))
}

/// Whether translating by `tau`, a type-preserving translation, carries
/// every edge to one with the same orientation and length.
pub fn translation_preserves_directions(patch: &TilingPatch, d: &DirectionAssignment, tau: Vec2) -> bool {
    (0..patch.edges.len()).all(|e| {
        let edge = &patch.edges[e];
        let Some(x) = patch.vertex_at(v_add(patch.vertices[edge.a].pos, tau)) else {
            return false;
        };
        let Some((f, disp)) = step(patch, x, edge.ty) else {
            return false;
        };
        disp == edge.disp && d.length[f] == d.length[e] && (d.ends(patch, f).0 == x) == d.forward[e]
    })
}

/// Basis of the translations preserving types and directions, in scaled
/// chart coordinates.
pub fn direction_symmetries(patch: &TilingPatch, d: &DirectionAssignment) -> [Vec2; 2] {
    let torus = patch.torus();
    let [t1, t2] = type_preserving_lattice(patch.triangle).map(|v| v_scale(v, patch.scale));
    let index = torus.area() / cross(t1, t2).abs();
    let mut gens: Vec<Vec2> = torus.basis.to_vec();
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..index {
        for j in 0..index {
            let tau = torus.reduce(v_add(v_scale(t1, i), v_scale(t2, j)));
            if seen.insert(tau) && translation_preserves_directions(patch, d, tau) {
                gens.push(tau);
            }
        }
    }
    lattice_basis(&gens)
}

/// Permutations `σ` of the three generators with `m(σa, σb)` in the patch
/// equal to `m(a, b)` in the family presentation.
fn relabelings(patch: &TilingPatch, family: &ArtinPresentation) -> Vec<[Gen; 3]> {
    const PERMS: [[Gen; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS
        .into_iter()
        .filter(|s| {
            [(0, 1), (1, 2), (0, 2)]
                .iter()
                .all(|&(a, b)| family.exponent(a, b) == Exponent::Finite(patch.triangle.exponent(s[a], s[b])))
        })
        .collect()
}

fn invert_perm(s: [Gen; 3]) -> [Gen; 3] {
    let mut inv = [0; 3];
    for (a, &b) in s.iter().enumerate() {
        inv[b] = a;
    }
    inv
}

fn types_of(w: &Word) -> Vec<Gen> {
    w.syllables().iter().flat_map(|s| std::iter::repeat_n(s.gen, s.exp.unsigned_abs() as usize)).collect()
}

/// Reads a family generator pair off `d`.
///
/// The first generator is read along a path realising, for some rigidity
/// witness class of the induced polarisation, the smallest power of its
/// translation that preserves types and directions; the second along a transverse path, so
/// that the two displacements form a basis of those translations. Start
/// vertex, relabelling by diagram symmetries, orientation of each path and
/// up to `max_repeats` star factors are searched in a fixed order.
pub fn read_off_generators(
    patch: &TilingPatch,
    d: &DirectionAssignment,
    max_repeats: usize,
) -> Result<ReadOff, ReadOffError> {
    if !patch.is_euclidean() {
        return Err(ReadOffError::NotTriangle);
    }
    let l = induced(patch, d)?;
    let sym = direction_symmetries(patch, d);
    let covolume = cross(sym[0], sym[1]).abs();
    let axes: Vec<Vec2> = rigidity_witnesses(patch, &l)?
        .iter()
        .filter_map(|w| (1..=24).map(|j| v_scale(w.rho, j)).find(|&v| lattice_contains(&sym, v)))
        .collect();
    if axes.is_empty() {
        return Err(ReadOffError::NoAxis);
    }

    for case in FlatCase::TRIANGLE {
        let fam = FlatFamily::triangle(case).expect("triangle case");
        let atom_shape: Vec<Gen> = atom(case).iter().map(|&(g, _)| g).collect();
        for sigma in relabelings(patch, &fam.presentation) {
            let map = |g: Gen| sigma[g];
            let w1 = fam.w1.relabel(map);
            let w2_template = fam.w2.relabel(&map);
            let atom_types: Vec<Gen> = atom_shape.iter().map(|&g| sigma[g]).collect();
            for start in 0..patch.vertices.len() {
                for inv1 in [false, true] {
                    let target = if inv1 { w1.invert() } else { w1.clone() };
                    let Some((read1, disp1)) = follow(patch, d, start, &types_of(&target)) else {
                        continue;
                    };
                    if read1 != target || !axes.iter().any(|&a| disp1 == a || disp1 == v_scale(a, -1)) {
                        continue;
                    }
                    for n in 1..=max_repeats {
                        for inv2 in [false, true] {
                            let mut types: Vec<Gen> = atom_types.repeat(n);
                            if inv2 {
                                types.reverse();
                            }
                            let Some((read2, disp2)) = follow(patch, d, start, &types) else {
                                continue;
                            };
                            let w2 = if inv2 { read2.invert() } else { read2.clone() };
                            if !w2_template.matches(&w2) {
                                continue;
                            }
                            let basis = cross(disp1, disp2).abs() == covolume
                                && lattice_contains(&sym, disp1)
                                && lattice_contains(&sym, disp2);
                            if !basis {
                                continue;
                            }
                            let back = invert_perm(sigma);
                            return Ok(ReadOff {
                                case,
                                relabel: sigma,
                                start,
                                d1: if inv1 { v_scale(disp1, -1) } else { disp1 },
                                d2: if inv2 { v_scale(disp2, -1) } else { disp2 },
                                read1,
                                read2,
                                w1: fam.w1.clone(),
                                w2: w2.relabel(|g| back[g]),
                            });
                        }
                    }
                }
            }
        }
    }
    Err(ReadOffError::NoMatch)
}

impl ReadOff {
    /// Whether the pair lies in its case's family.
    pub fn matches_family(&self) -> bool {
        let fam = FlatFamily::triangle(self.case).expect("triangle case");
        fam.w1 == self.w1 && fam.w2.matches(&self.w2) && !self.w2.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prover::replay;
    use crate::tiling::{build_patch, consistent_directions, TriangleType};

    fn budget() -> Budget {
        Budget { max_len: 40, max_states: 300_000 }
    }

    fn case_presentation(case: FlatCase) -> ArtinPresentation {
        FlatFamily::triangle(case).unwrap().presentation
    }

    #[test]
    fn family_words() {
        let p = case_presentation(FlatCase::C);
        let (w1, w2) = family(&p, FlatCase::C, &[vec![2, -1], vec![1, 3]]).unwrap();
        assert_eq!(p.format_word(&w1), "s1 t1 r1 t1");
        assert_eq!(p.format_word(&w2), "r2 t-1 s-1 t1 r1 t-1 s3 t1");
        let fam = FlatFamily::triangle(FlatCase::C).unwrap();
        assert!(fam.w2.matches(&w2));
        assert_eq!(fam.bullets_per_factor(), 2);
        assert_eq!(FlatFamily::triangle(FlatCase::E).unwrap().bullets_per_factor(), 1);
    }

    #[test]
    fn family_rejects_bad_input() {
        let p = case_presentation(FlatCase::B);
        assert!(matches!(family(&p, FlatCase::C, &[vec![1, 1]]), Err(SubgroupError::IncompatibleExponents('c'))));
        assert!(matches!(family(&p, FlatCase::B, &[]), Err(SubgroupError::NoFactors)));
        assert!(matches!(family(&p, FlatCase::B, &[vec![0]]), Err(SubgroupError::BadFactor { index: 0, .. })));
        assert!(matches!(family(&p, FlatCase::B, &[vec![1], vec![1, 2]]), Err(SubgroupError::BadFactor { index: 1, .. })));
        assert!(matches!(family(&p, FlatCase::A, &[vec![1]]), Err(SubgroupError::IncompatibleExponents('a'))));
    }

    #[test]
    fn every_case_commutes_for_small_instances() {
        for case in FlatCase::TRIANGLE {
            let p = case_presentation(case);
            for factors in instances(case, 1, 1) {
                let cert = verify_abelian(&p, case, &factors, budget()).unwrap();
                assert!(replay(&cert), "{case:?} {factors:?}");
            }
        }
    }

    #[test]
    fn non_commuting_pair_is_not_certified() {
        let p = case_presentation(FlatCase::B);
        let s = p.parse_word("s1").unwrap();
        let t = p.parse_word("t1").unwrap();
        let small = Budget { max_len: 10, max_states: 5_000 };
        assert!(matches!(verify_commute(&p, &s, &t, small), Err(SubgroupError::BudgetExhausted)));
    }

    #[test]
    fn commuting_parabolics() {
        let rel = [("a", "c", 2), ("a", "d", 2), ("b", "c", 2), ("b", "d", 2), ("a", "b", 3), ("c", "d", 5)];
        let p = ArtinPresentation::new(&["a", "b", "c", "d"], &rel).unwrap();
        let w = p.parse_word("a2 b-1 a1").unwrap();
        let w_prime = p.parse_word("c1 d3").unwrap();
        let (u, v) = family_commuting(&p, &[0, 1], &[2, 3], &w, &w_prime).unwrap();
        assert!(replay(&verify_commute(&p, &u, &v, budget()).unwrap()));
        assert!(family_commuting(&p, &[0, 1], &[1, 3], &w, &w_prime).is_err());
        assert!(family_commuting(&p, &[0, 1], &[2, 3], &w_prime, &w).is_err());
    }

    #[test]
    fn abelian_images() {
        let p = case_presentation(FlatCase::B);
        let (w1, w2) = family(&p, FlatCase::B, &[vec![1]]).unwrap();
        assert!(abelian_images_independent(&w1, &w2, 3));
        // Cancelling bullets give an image parallel to that of strstr.
        let (w1, w2) = family(&p, FlatCase::B, &[vec![1], vec![-1]]).unwrap();
        assert_eq!(w2.exponent_sums(3), vec![2, 2, 2]);
        assert!(!abelian_images_independent(&w1, &w2, 3));
    }

    #[test]
    fn instance_counts() {
        assert_eq!(instances(FlatCase::B, 2, 1).len(), 4);
        assert_eq!(instances(FlatCase::B, 2, 2).len(), 4 + 16);
        assert_eq!(instances(FlatCase::C, 1, 2).len(), 4 + 16);
        assert!(instances(FlatCase::C, 1, 1).iter().all(|f| f.len() == 1 && f[0].len() == 2));
    }

    #[test]
    fn klein_relations() {
        for k in [1, -1, 2] {
            let pair = klein_pair(k, budget()).unwrap();
            assert!(replay(&pair.relation));
            let p = &pair.relation.presentation;
            let sq = pair.squared_relation().unwrap();
            assert!(replay(&sq));
            assert_eq!(sq.start, pair.a.pow(-2).concat(&pair.b).concat(&pair.a.pow(2)));
            assert_eq!(sq.end, pair.b);
            let dec = pair.decomposition(budget()).unwrap();
            assert!(replay(&dec));
            assert_eq!(p.format_word(&dec.start), p.format_word(&pair.b.concat(&pair.a.pow(2))));
        }
        assert!(matches!(klein_pair(0, budget()), Err(SubgroupError::ZeroK)));
    }

    #[test]
    fn klein_relation_fails_in_236_for_odd_k() {
        // Already false in the Coxeter quotient, so no certificate can exist.
        let p = ArtinPresentation::triangle(6, 3, 2);
        let small = Budget { max_len: 20, max_states: 20_000 };
        assert!(matches!(klein_pair_in(&p, 1, small), Err(SubgroupError::BudgetExhausted)));
    }

    fn minimal_patch(ms: (u32, u32, u32)) -> TilingPatch {
        let tt = TriangleType::euclidean(ms.0, ms.1, ms.2).unwrap();
        build_patch(tt, type_preserving_lattice(tt)).unwrap()
    }

    #[test]
    fn read_off_on_minimal_patches() {
        for (ms, cases) in [((3, 3, 3), "b"), ((2, 4, 4), "cd"), ((2, 3, 6), "ef")] {
            let patch = minimal_patch(ms);
            let tt = patch.triangle;
            let p = ArtinPresentation::triangle(tt.exponent(0, 1), tt.exponent(1, 2), tt.exponent(0, 2));
            for d in consistent_directions(&patch, 2) {
                let r = read_off_generators(&patch, &d, 4).unwrap();
                assert!(r.matches_family());
                assert!(cases.contains(r.case.letter()));
                assert!(lattice_contains(&direction_symmetries(&patch, &d), r.d1));
                let cert = verify_commute(&p, &r.read1, &r.read2, budget()).unwrap();
                assert!(replay(&cert));
            }
        }
    }

    #[test]
    fn direction_symmetries_lie_between_patch_and_type_lattices() {
        let tt = TriangleType::euclidean(2, 4, 4).unwrap();
        let [b1, b2] = type_preserving_lattice(tt);
        let patch = build_patch(tt, [v_scale(b1, 2), v_scale(b2, 2)]).unwrap();
        let t = type_preserving_lattice(tt).map(|v| v_scale(v, patch.scale));
        for d in consistent_directions(&patch, 2) {
            let sym = direction_symmetries(&patch, &d);
            assert!(patch.torus().basis.iter().all(|&v| lattice_contains(&sym, v)));
            assert!(sym.iter().all(|&v| lattice_contains(&t, v)));
        }
    }

    #[test]
    fn read_off_rejects_square_tiling() {
        let patch = build_patch(TriangleType::Square, [[2, 0], [0, 2]]).unwrap();
        let d = DirectionAssignment::uniform(&patch);
        assert_eq!(read_off_generators(&patch, &d, 2), Err(ReadOffError::NotTriangle));
    }
}
