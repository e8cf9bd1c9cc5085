//! Lyndon words over `Y` with the order `y_1 > y_2 > ...`.

use crate::error::{Error, Result};
use crate::words::{words_of_weight, Word};

/// Decreasing factorization `w = l_1^{i_1} ... l_k^{i_k}`, `l_1 > ... > l_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyndonFactorization {
    pub factors: Vec<(Word, usize)>,
}

impl LyndonFactorization {
    pub fn reconstruct(&self) -> Word {
        self.factors.iter().fold(Word::empty(), |acc, (l, m)| acc.concat(&l.pow(*m)))
    }

    /// Factors with multiplicity, `l_1, ..., l_1, l_2, ...`.
    pub fn flat(&self) -> impl Iterator<Item = &Word> {
        self.factors.iter().flat_map(|(l, m)| std::iter::repeat_n(l, *m))
    }
}

/// A nonempty word strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    let letters = w.letters();
    (1..letters.len()).all(|k| letters[..] < letters[k..])
}

/// All Lyndon words of weight at most `max_weight`, sorted by weight and then
/// by the word order.
pub fn lyndon_up_to(max_weight: u32) -> Vec<Word> {
    (1..=max_weight).flat_map(lyndon_of_weight).collect()
}

pub fn lyndon_of_weight(n: u32) -> Vec<Word> {
    let mut v: Vec<Word> = words_of_weight(n).into_iter().filter(is_lyndon).collect();
    v.sort();
    v
}

/// `l = s·r` with `r` the longest proper suffix of `l` that is Lyndon.
pub fn standard_factorization(l: &Word) -> Result<(Word, Word)> {
    if !is_lyndon(l) {
        return Err(Error::NotLyndon(l.to_string()));
    }
    if l.len() < 2 {
        return Err(Error::SingleLetter(l.to_string()));
    }
    let k = (1..l.len()).find(|&k| is_lyndon(&l.slice(k, l.len()))).expect("the last letter is always a Lyndon suffix");
    Ok(l.split_at(k))
}

/// Unique factorization of a nonempty word into non-increasing Lyndon words.
pub fn lyndon_factorization(w: &Word) -> Result<LyndonFactorization> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    // Start from single letters and merge adjacent factors u < v; the fixed
    // point is the Chen-Fox-Lyndon factorization.
    let mut parts: Vec<Word> = w.letters().iter().map(|&l| Word::from_letters(vec![l])).collect();
    let mut k = 0;
    while k + 1 < parts.len() {
        if parts[k] < parts[k + 1] {
            let merged = parts[k].concat(&parts[k + 1]);
            parts.splice(k..k + 2, [merged]);
            k = k.saturating_sub(1);
        } else {
            k += 1;
        }
    }
    let mut factors: Vec<(Word, usize)> = Vec::new();
    for p in parts {
        match factors.last_mut() {
            Some((l, m)) if *l == p => *m += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(LyndonFactorization { factors })
}

/// Number of Lyndon words of weight `n` by the Möbius formula
/// `(1/n) Σ_{d|n} μ(n/d) (2^d - 1)`. Independent of the enumeration above.
pub fn necklace_count(n: u32) -> u64 {
    fn mobius(mut n: u32) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let total: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(n / d) * ((1i64 << d) - 1)).sum();
    (total / n as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[u32]) -> Word {
        Word::from_indices(p)
    }

    #[test]
    fn recognition() {
        assert!(is_lyndon(&w(&[2, 1])));
        assert!(!is_lyndon(&w(&[1, 2])));
        assert!(is_lyndon(&w(&[1])));
        assert!(!is_lyndon(&Word::empty()));
        assert!(!is_lyndon(&w(&[1, 1])));
        assert!(is_lyndon(&w(&[2, 1, 1])));
        assert!(!is_lyndon(&w(&[2, 1, 2, 1])));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(lyndon_up_to(3), vec![w(&[1]), w(&[2]), w(&[3]), w(&[2, 1])]);
        assert_eq!(lyndon_of_weight(4), vec![w(&[4]), w(&[3, 1]), w(&[2, 1, 1])]);
        let counts: Vec<usize> = (1..=7).map(|n| lyndon_of_weight(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 9, 18]);
    }

    #[test]
    fn counts_match_necklace_formula() {
        for n in 1..=8 {
            assert_eq!(lyndon_of_weight(n).len() as u64, necklace_count(n), "weight {n}");
        }
    }

    /// Lyndon iff primitive and strictly smallest among its rotations.
    #[test]
    fn rotation_characterization_agrees() {
        for n in 1..=7 {
            for u in words_of_weight(n) {
                let rotations: Vec<Word> = (1..u.len()).map(|k| u.slice(k, u.len()).concat(&u.slice(0, k))).collect();
                let by_rotation = rotations.iter().all(|r| u < *r);
                assert_eq!(is_lyndon(&u), by_rotation, "{u}");
            }
        }
    }

    #[test]
    fn standard_factorization_examples() {
        assert_eq!(standard_factorization(&w(&[2, 1])).unwrap(), (w(&[2]), w(&[1])));
        assert_eq!(standard_factorization(&w(&[2, 1, 1])).unwrap(), (w(&[2, 1]), w(&[1])));
        assert_eq!(standard_factorization(&w(&[3, 2, 1])).unwrap(), (w(&[3]), w(&[2, 1])));
        assert_eq!(standard_factorization(&w(&[1, 2])), Err(Error::NotLyndon("1 2".into())));
        assert_eq!(standard_factorization(&w(&[3])), Err(Error::SingleLetter("3".into())));
    }

    #[test]
    fn standard_factorization_properties() {
        for l in lyndon_up_to(8).into_iter().filter(|l| l.len() >= 2) {
            let (s, r) = standard_factorization(&l).unwrap();
            assert_eq!(s.concat(&r), l);
            assert!(is_lyndon(&s) && is_lyndon(&r));
            assert!(s < l && l < r, "{l}");
            // No longer proper suffix is Lyndon.
            for k in 1..s.len() {
                assert!(!is_lyndon(&l.slice(k, l.len())));
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let f = lyndon_factorization(&w(&[1, 2])).unwrap();
        assert_eq!(f.factors, vec![(w(&[1]), 1), (w(&[2]), 1)]);
        let f = lyndon_factorization(&w(&[2, 1])).unwrap();
        assert_eq!(f.factors, vec![(w(&[2, 1]), 1)]);
        let f = lyndon_factorization(&w(&[1, 1, 2])).unwrap();
        assert_eq!(f.factors, vec![(w(&[1]), 2), (w(&[2]), 1)]);
        assert_eq!(lyndon_factorization(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn factorization_reconstructs_and_decreases() {
        for n in 1..=6 {
            for u in words_of_weight(n) {
                let f = lyndon_factorization(&u).unwrap();
                assert_eq!(f.reconstruct(), u);
                assert!(f.factors.iter().all(|(l, m)| is_lyndon(l) && *m >= 1));
                assert!(f.factors.windows(2).all(|p| p[0].0 > p[1].0));
            }
        }
    }
}
