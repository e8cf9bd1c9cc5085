//! Letters, words, compositions and the statistics attached to them.
//!
//! The alphabet is `Y = {y_1, y_2, ...}` ordered by `y_1 > y_2 > y_3 > ...`:
//! a letter with a smaller index is the *greater* letter. Words compare
//! lexicographically with that letter order, and a proper prefix precedes its
//! extensions. Every Lyndon construction downstream relies on this order.
//!
//! A word `y_{i_1}...y_{i_k}` and the composition `(i_1,...,i_k)` carry the
//! same data; both types exist because they are ordered and printed
//! differently.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The letter `y_n`, of weight `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            Err(Error::ZeroLetter)
        } else {
            Ok(Letter(index))
        }
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        // y_1 > y_2 > ...
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A word over `Y`. The derived ordering is the lexicographic order induced by
/// [`Letter`]'s order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(index: u32) -> Self {
        Word(vec![Letter::new(index).expect("letter index must be >= 1")])
    }

    pub fn try_from_indices(indices: &[u32]) -> Result<Self> {
        indices.iter().map(|&i| Letter::new(i)).collect::<Result<Vec<_>>>().map(Word)
    }

    /// # Panics
    /// On a zero index. Use [`Word::try_from_indices`] for untrusted input.
    pub fn from_indices(indices: &[u32]) -> Self {
        Self::try_from_indices(indices).expect("letter index must be >= 1")
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn indices(&self) -> impl DoubleEndedIterator<Item = u32> + ExactSizeIterator + '_ {
        self.0.iter().map(|l| l.0)
    }

    pub fn to_indices(&self) -> Vec<u32> {
        self.indices().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.indices().sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn prepend(&self, letter: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn split_at(&self, mid: usize) -> (Word, Word) {
        (self.slice(0, mid), self.slice(mid, self.len()))
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn to_composition(&self) -> Composition {
        Composition(self.to_indices())
    }

    /// Canonical order for printing: weight, then lexicographic on the
    /// integer parts.
    pub fn canonical_cmp(&self, other: &Word) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_parts(s).and_then(|v| Word::try_from_indices(&v))
    }
}

impl From<&Composition> for Word {
    fn from(c: &Composition) -> Self {
        Word::from_indices(&c.0)
    }
}

/// Parses `"1 2 2"`, `"1,2,2"`, `"(1,2,2)"`, and `"e"` / `"()"` / `""` for the
/// empty sequence.
fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let t = s.trim();
    let t = t.strip_prefix('(').map(|r| r.strip_suffix(')').unwrap_or(r)).unwrap_or(t);
    let t = t.strip_prefix('[').map(|r| r.strip_suffix(']').unwrap_or(r)).unwrap_or(t);
    let t = t.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<u32>().ok().filter(|&n| n >= 1).ok_or_else(|| Error::Parse(format!("bad part {p:?} in {s:?}")))
        })
        .collect()
}

/// A composition `(i_1,...,i_k)` of positive integers. The derived ordering
/// is lexicographic on the parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn try_new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            Err(Error::ZeroLetter)
        } else {
            Ok(Composition(parts))
        }
    }

    /// # Panics
    /// On a zero part.
    pub fn new(parts: &[u32]) -> Self {
        Self::try_new(parts.to_vec()).expect("composition parts must be >= 1")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn last_part(&self) -> Result<u32> {
        self.0.last().copied().ok_or(Error::EmptyComposition)
    }

    /// Product of the parts, `pi(I)`.
    pub fn part_product(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).product()
    }

    /// Product of the partial sums, `pi_u(I) = i_1 (i_1+i_2) ... (i_1+...+i_k)`.
    pub fn partial_sum_product(&self) -> u64 {
        let mut acc = 0u64;
        let mut prod = 1u64;
        for &p in &self.0 {
            acc += p as u64;
            prod *= acc;
        }
        prod
    }

    /// `sp(I) = pi(I) * l(I)!`
    pub fn sp(&self) -> u64 {
        self.part_product() * (1..=self.len() as u64).product::<u64>()
    }

    pub fn mirror(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    pub fn to_word(&self) -> Word {
        Word::from(self)
    }

    pub fn stats(&self) -> CompositionStats {
        CompositionStats {
            l: self.len(),
            w: self.weight(),
            lp: self.0.last().copied(),
            pi: self.part_product(),
            pi_u: self.partial_sum_product(),
            sp: self.sp(),
            mirror: self.mirror(),
        }
    }

    /// Set of partial sums `{i_1, i_1+i_2, ..., w(I)}`.
    fn partial_sums(&self) -> Vec<u32> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Whether `self` is finer than or equal to `coarser` (`self ⪰ coarser`).
    pub fn is_finer_than(&self, coarser: &Composition) -> bool {
        if self.weight() != coarser.weight() {
            return false;
        }
        let mine = self.partial_sums();
        coarser.partial_sums().iter().all(|s| mine.binary_search(s).is_ok())
    }

    /// Splits `self` into consecutive blocks whose weights are the parts of
    /// `coarser`.
    pub fn blocks(&self, coarser: &Composition) -> Result<Vec<Composition>> {
        let err = || Error::NotRefinement { finer: self.to_string(), coarser: coarser.to_string() };
        if self.weight() != coarser.weight() {
            return Err(err());
        }
        let mut blocks = Vec::with_capacity(coarser.len());
        let mut it = self.0.iter();
        for &target in &coarser.0 {
            let mut block = Vec::new();
            let mut sum = 0;
            while sum < target {
                let &p = it.next().ok_or_else(err)?;
                sum += p;
                block.push(p);
            }
            if sum != target {
                return Err(err());
            }
            blocks.push(Composition(block));
        }
        Ok(blocks)
    }

    /// All compositions coarser than or equal to `self`, in canonical order.
    pub fn coarsenings(&self) -> Vec<Composition> {
        if self.is_empty() {
            return vec![Composition::empty()];
        }
        let gaps = self.len() - 1;
        let mut out: Vec<Composition> = (0u64..1 << gaps)
            .map(|mask| {
                let mut parts = vec![self.0[0]];
                for g in 0..gaps {
                    if mask >> g & 1 == 1 {
                        *parts.last_mut().unwrap() += self.0[g + 1];
                    } else {
                        parts.push(self.0[g + 1]);
                    }
                }
                Composition(parts)
            })
            .collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    /// All compositions finer than or equal to `self`, in canonical order.
    pub fn finer(&self) -> Vec<Composition> {
        let mut out: Vec<_> = refinements(self).into_iter().map(|r| r.finer).collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    /// Canonical order for printing: weight, then lexicographic on parts.
    pub fn canonical_cmp(&self, other: &Composition) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_parts(s).map(Composition)
    }
}

impl From<&Word> for Composition {
    fn from(w: &Word) -> Self {
        w.to_composition()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionStats {
    pub l: usize,
    pub w: u32,
    /// `None` for the empty composition.
    pub lp: Option<u32>,
    pub pi: u64,
    pub pi_u: u64,
    pub sp: u64,
    pub mirror: Composition,
}

impl CompositionStats {
    pub fn last_part(&self) -> Result<u32> {
        self.lp.ok_or(Error::EmptyComposition)
    }
}

/// A composition `J` finer than some `I`, with its block decomposition
/// `J = (J_1,...,J_k)`, `w(J_p) = i_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub finer: Composition,
    pub blocks: Vec<Composition>,
}

/// All compositions of `n` in canonical order.
pub fn compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out: Vec<Composition> = (0u64..1 << (n - 1))
        .map(|mask| {
            let mut parts = vec![1];
            for g in 0..n - 1 {
                if mask >> g & 1 == 1 {
                    parts.push(1);
                } else {
                    *parts.last_mut().unwrap() += 1;
                }
            }
            Composition(parts)
        })
        .collect();
    out.sort();
    out
}

/// All words of weight exactly `n`, in canonical order.
pub fn words_of_weight(n: u32) -> Vec<Word> {
    compositions(n).iter().map(Word::from).collect()
}

/// All words of weight at most `n`, in canonical order (the empty word first).
pub fn words_up_to(n: u32) -> Vec<Word> {
    (0..=n).flat_map(words_of_weight).collect()
}

/// Every `J ⪰ I` with its block decomposition, ordered by length of `J` and
/// then lexicographically on parts.
pub fn refinements(coarse: &Composition) -> Vec<Refinement> {
    let mut acc = vec![Vec::<Composition>::new()];
    for &part in coarse.parts() {
        let options = compositions(part);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    let mut out: Vec<Refinement> = acc
        .into_iter()
        .map(|blocks| {
            let finer = blocks.iter().fold(Composition::empty(), |a, b| a.concat(b));
            Refinement { finer, blocks }
        })
        .collect();
    out.sort_by(|a, b| a.finer.len().cmp(&b.finer.len()).then_with(|| a.finer.cmp(&b.finer)));
    out
}

/// Block-relative statistics `l(J,I)`, `lp(J,I)`, `pi_u(J,I)`, `sp(J,I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelativeStats {
    pub l: u64,
    pub lp: u64,
    pub pi_u: u64,
    pub sp: u64,
}

pub fn relative_stats(finer: &Composition, coarse: &Composition) -> Result<RelativeStats> {
    let blocks = finer.blocks(coarse)?;
    let mut r = RelativeStats { l: 1, lp: 1, pi_u: 1, sp: 1 };
    for b in &blocks {
        r.l *= b.len() as u64;
        r.lp *= b.last_part()? as u64;
        r.pi_u *= b.partial_sum_product();
        r.sp *= b.sp();
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: &[u32]) -> Composition {
        Composition::new(p)
    }

    #[test]
    fn letter_order_is_reversed() {
        let y1 = Letter::new(1).unwrap();
        let y2 = Letter::new(2).unwrap();
        assert!(y1 > y2);
        assert!(Letter::new(0).is_err());
        assert!(Word::from_indices(&[2]) < Word::from_indices(&[1]));
        assert!(Word::from_indices(&[2]) < Word::from_indices(&[2, 1]));
        assert!(Word::from_indices(&[3]) < Word::from_indices(&[2, 1]));
        assert!(Word::empty() < Word::from_indices(&[5]));
    }

    #[test]
    fn stats_examples() {
        let s = c(&[1, 2, 2]).stats();
        assert_eq!((s.pi_u, s.pi, s.sp, s.lp), (15, 4, 24, Some(2)));
        assert_eq!(s.mirror, c(&[2, 2, 1]));
        assert_eq!((s.l, s.w), (3, 5));

        let e = Composition::empty().stats();
        assert_eq!((e.l, e.w, e.pi, e.pi_u, e.sp), (0, 0, 1, 1, 1));
        assert_eq!(e.last_part(), Err(Error::EmptyComposition));
        assert_eq!(Composition::empty().last_part(), Err(Error::EmptyComposition));

        let t = c(&[3]).stats();
        assert_eq!((t.l, t.w, t.lp, t.pi, t.pi_u, t.sp), (1, 3, Some(3), 3, 3, 3));
    }

    #[test]
    fn refinement_examples() {
        let r = refinements(&c(&[2]));
        assert_eq!(
            r,
            vec![
                Refinement { finer: c(&[2]), blocks: vec![c(&[2])] },
                Refinement { finer: c(&[1, 1]), blocks: vec![c(&[1, 1])] },
            ]
        );
        let r = refinements(&c(&[1, 2]));
        assert_eq!(
            r,
            vec![
                Refinement { finer: c(&[1, 2]), blocks: vec![c(&[1]), c(&[2])] },
                Refinement { finer: c(&[1, 1, 1]), blocks: vec![c(&[1]), c(&[1, 1])] },
            ]
        );
        let r = refinements(&Composition::empty());
        assert_eq!(r, vec![Refinement { finer: Composition::empty(), blocks: vec![] }]);
    }

    #[test]
    fn relative_stats_examples() {
        let r = relative_stats(&c(&[1, 1]), &c(&[2])).unwrap();
        assert_eq!(r, RelativeStats { l: 2, lp: 1, pi_u: 2, sp: 2 });
        let r = relative_stats(&c(&[3, 1]), &c(&[3, 1])).unwrap();
        assert_eq!(r, RelativeStats { l: 1, lp: 3, pi_u: 3, sp: 3 });
        let r = relative_stats(&c(&[1, 1, 1]), &c(&[1, 2])).unwrap();
        assert_eq!(r, RelativeStats { l: 2, lp: 1, pi_u: 2, sp: 2 });
        assert!(matches!(relative_stats(&c(&[2, 1]), &c(&[1, 2])), Err(Error::NotRefinement { .. })));
        assert!(relative_stats(&c(&[1]), &c(&[2])).is_err());
    }

    #[test]
    fn refinement_count_matches_power_of_two() {
        for n in 0..=6 {
            for i in compositions(n) {
                let expected: u64 = i.parts().iter().map(|&p| 1u64 << (p - 1)).product();
                let refs = refinements(&i);
                assert_eq!(refs.len() as u64, expected, "{i}");
                for r in &refs {
                    assert_eq!(r.finer.weight(), i.weight());
                    assert!(r.finer.is_finer_than(&i));
                    assert_eq!(r.finer.blocks(&i).unwrap(), r.blocks);
                }
            }
        }
    }

    #[test]
    fn coarsenings_are_dual_to_refinements() {
        for n in 1..=5 {
            for i in compositions(n) {
                for j in compositions(n) {
                    assert_eq!(i.coarsenings().contains(&j), i.is_finer_than(&j));
                }
            }
        }
    }

    #[test]
    fn text_encoding() {
        let w: Word = "1 2 2".parse().unwrap();
        assert_eq!(w, Word::from_indices(&[1, 2, 2]));
        assert_eq!(w.to_string(), "1 2 2");
        assert_eq!(Word::empty().to_string(), "e");
        assert_eq!("e".parse::<Word>().unwrap(), Word::empty());
        assert!("1 0".parse::<Word>().is_err());
        assert!("1 x".parse::<Word>().is_err());
        let i: Composition = "(1,2)".parse().unwrap();
        assert_eq!(i, c(&[1, 2]));
        assert_eq!(i.to_string(), "(1,2)");
        assert_eq!("()".parse::<Composition>().unwrap(), Composition::empty());
    }

    #[test]
    fn composition_counts() {
        for n in 1..=8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(compositions(3), vec![c(&[1, 1, 1]), c(&[1, 2]), c(&[2, 1]), c(&[3])]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn comp() -> impl Strategy<Value = Composition> {
            prop::collection::vec(1u32..5, 0..6).prop_map(Composition)
        }

        proptest! {
            #[test]
            fn mirror_is_involution(i in comp()) {
                prop_assert_eq!(i.mirror().mirror(), i.clone());
                prop_assert_eq!(i.mirror().weight(), i.weight());
            }

            #[test]
            fn word_roundtrip(i in comp()) {
                let w = i.to_word();
                prop_assert_eq!(w.to_composition(), i.clone());
                prop_assert_eq!(w.weight(), i.weight());
                prop_assert_eq!(w.len(), i.len());
                prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
            }

            #[test]
            fn sp_is_pi_times_factorial(i in comp()) {
                let s = i.stats();
                let fact: u64 = (1..=s.l as u64).product();
                prop_assert_eq!(s.sp, s.pi * fact);
            }
        }
    }
}
