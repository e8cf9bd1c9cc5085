//! Word-level shuffle and quasi-shuffle products with integer multiplicities.
//!
//! Both products are computed bottom-up over suffix pairs `(u[i..], v[j..])`,
//! so each suffix product is built once.

use std::collections::BTreeMap;

use crate::words::{Letter, Word};

pub(crate) type Counts = BTreeMap<Word, u64>;

fn prepend_into(out: &mut Counts, letter: Letter, src: &Counts) {
    for (w, &m) in src {
        *out.entry(w.prepend(letter)).or_insert(0) += m;
    }
}

fn suffix_table(u: &Word, v: &Word, contract: bool) -> Counts {
    let (a, b) = (u.letters(), v.letters());
    let (n, m) = (a.len(), b.len());
    // table[i][j] = u[i..] * v[j..]
    let mut table: Vec<Vec<Counts>> = vec![vec![Counts::new(); m + 1]; n + 1];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let cell = if i == n {
                Counts::from([(Word::from_letters(b[j..].to_vec()), 1)])
            } else if j == m {
                Counts::from([(Word::from_letters(a[i..].to_vec()), 1)])
            } else {
                let mut out = Counts::new();
                prepend_into(&mut out, a[i], &table[i + 1][j]);
                prepend_into(&mut out, b[j], &table[i][j + 1]);
                if contract {
                    let merged = Letter::new(a[i].index() + b[j].index()).unwrap();
                    prepend_into(&mut out, merged, &table[i + 1][j + 1]);
                }
                out
            };
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

/// `u ⧢ v`
pub(crate) fn shuffle(u: &Word, v: &Word) -> Counts {
    suffix_table(u, v, false)
}

/// `u ⊔⊔ v`, where two facing letters `y_i`, `y_j` may merge into `y_{i+j}`.
pub(crate) fn stuffle(u: &Word, v: &Word) -> Counts {
    suffix_table(u, v, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[u32]) -> Word {
        Word::from_indices(p)
    }

    /// Naive first-letter recursion, straight from the defining identities.
    fn naive(u: &[u32], v: &[u32], contract: bool) -> BTreeMap<Vec<u32>, u64> {
        let mut out = BTreeMap::new();
        if u.is_empty() || v.is_empty() {
            out.insert([u, v].concat(), 1);
            return out;
        }
        let mut add = |head: u32, rest: BTreeMap<Vec<u32>, u64>| {
            for (k, m) in rest {
                let mut word = vec![head];
                word.extend(k);
                *out.entry(word).or_insert(0) += m;
            }
        };
        add(u[0], naive(&u[1..], v, contract));
        add(v[0], naive(u, &v[1..], contract));
        if contract {
            add(u[0] + v[0], naive(&u[1..], &v[1..], contract));
        }
        out
    }

    fn as_vecs(c: &Counts) -> BTreeMap<Vec<u32>, u64> {
        c.iter().map(|(w, &m)| (w.to_indices(), m)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(as_vecs(&shuffle(&w(&[1]), &w(&[1]))), BTreeMap::from([(vec![1, 1], 2)]));
        assert_eq!(
            as_vecs(&stuffle(&w(&[1]), &w(&[2]))),
            BTreeMap::from([(vec![1, 2], 1), (vec![2, 1], 1), (vec![3], 1)])
        );
        assert_eq!(
            as_vecs(&stuffle(&w(&[2]), &w(&[2, 1]))),
            BTreeMap::from([(vec![2, 2, 1], 2), (vec![2, 1, 2], 1), (vec![4, 1], 1), (vec![2, 3], 1)])
        );
        assert_eq!(as_vecs(&stuffle(&Word::empty(), &w(&[3, 1]))), BTreeMap::from([(vec![3, 1], 1)]));
    }

    #[test]
    fn matches_naive_recursion() {
        let samples: Vec<Vec<u32>> =
            vec![vec![], vec![1], vec![2], vec![1, 2], vec![2, 1, 1], vec![3, 1], vec![1, 1, 2]];
        for a in &samples {
            for b in &samples {
                assert_eq!(as_vecs(&shuffle(&w(a), &w(b))), naive(a, b, false));
                assert_eq!(as_vecs(&stuffle(&w(a), &w(b))), naive(a, b, true));
            }
        }
    }
}
