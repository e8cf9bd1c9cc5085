//! Noncommutative polynomials over `Y` and the Hopf structures on them.
//!
//! `k<Y>` carries three products (concatenation, shuffle, quasi-shuffle) and
//! four coproducts (deconcatenation, the shuffle and quasi-shuffle
//! coproducts, and the letter-level `Δ₊`). Each product is adjoint to one
//! coproduct under the pairing that makes words orthonormal.

mod tensor;
mod text;
pub(crate) mod words_product;

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::{Letter, Word};

pub use tensor::{coproduct, CoproductKind, TensorPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Concat,
    Shuffle,
    Stuffle,
}

/// A finite linear combination of words. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct NCPolynomial<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> Default for NCPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> NCPolynomial<C> {
    pub fn zero() -> Self {
        NCPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, C::one())
    }

    pub fn letter(index: u32) -> Self {
        Self::word(Word::letter(index))
    }

    pub fn monomial(w: Word, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    /// Terms sorted by weight, then lexicographically on the letter indices.
    pub fn canonical_terms(&self) -> Vec<(&Word, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.canonical_cmp(b.0));
        v
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The counit `e(P) = <P | 1>`.
    pub fn counit(&self) -> C {
        self.coeff(&Word::empty())
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Word::weight).max()
    }

    pub fn is_homogeneous(&self, weight: u32) -> bool {
        self.terms.keys().all(|w| w.weight() == weight)
    }

    /// Drops every term of weight greater than `max_weight`.
    pub fn truncate(&self, max_weight: u32) -> Self {
        self.filter(|w| w.weight() <= max_weight)
    }

    /// Weight-`n` homogeneous component.
    pub fn component(&self, n: u32) -> Self {
        self.filter(|w| w.weight() == n)
    }

    fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        NCPolynomial {
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPolynomial { terms: self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())).collect() }
    }

    /// Applies a linear map given on words.
    pub fn map_linear(&self, f: impl Fn(&Word) -> Self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out += &f(w).scale(c);
        }
        out
    }

    /// Concatenation product, keeping only terms of weight at most `bound`.
    pub fn concat_bounded(&self, other: &Self, bound: Option<u32>) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            let wu = u.weight();
            for (v, b) in &other.terms {
                if bound.is_some_and(|n| wu + v.weight() > n) {
                    continue;
                }
                out.add_term(u.concat(v), a.clone() * b.clone());
            }
        }
        out
    }

    fn word_product(&self, other: &Self, f: fn(&Word, &Word) -> words_product::Counts) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a.clone() * b.clone();
                for (w, m) in f(u, v) {
                    out.add_term(w, ab.clone() * C::from_int(m as i64));
                }
            }
        }
        out
    }

    pub fn shuffle(&self, other: &Self) -> Self {
        self.word_product(other, words_product::shuffle)
    }

    pub fn stuffle(&self, other: &Self) -> Self {
        self.word_product(other, words_product::stuffle)
    }

    pub fn product(&self, other: &Self, kind: ProductKind) -> Self {
        match kind {
            ProductKind::Concat => self.concat_bounded(other, None),
            ProductKind::Shuffle => self.shuffle(other),
            ProductKind::Stuffle => self.stuffle(other),
        }
    }

    /// `self^n` for the given product (`self^0 = 1`).
    pub fn pow(&self, n: u32, kind: ProductKind) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.product(self, kind))
    }

    /// Lie bracket for concatenation, `[P, Q] = PQ - QP`.
    pub fn bracket(&self, other: &Self) -> Self {
        self * other - other * self
    }

    /// `<P | Q> = Σ_w P(w) Q(w)`.
    pub fn pairing(&self, other: &Self) -> C {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(w, a)| large.terms.get(w).map(|b| a.clone() * b.clone()))
            .fold(C::zero(), |acc, x| acc + x)
    }

    /// Truncated exponential `Σ P^k / k!` for concatenation, dropping every
    /// term of weight above `max_weight`.
    pub fn exp_trunc(&self, max_weight: u32) -> Result<Self> {
        if !self.counit().is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let p = self.truncate(max_weight);
        let mut out = Self::one();
        let mut power = Self::one();
        for k in 1..=max_weight {
            power = power.concat_bounded(&p, Some(max_weight));
            if power.is_zero() {
                break;
            }
            out += &power.scale(&C::inv_factorial(k));
        }
        Ok(out)
    }

    /// Truncated logarithm `Σ (-1)^{k-1} (Q - 1)^k / k` for concatenation.
    pub fn log_trunc(&self, max_weight: u32) -> Result<Self> {
        if !self.counit().is_one() {
            return Err(Error::LogConstantTerm);
        }
        let x = (self - &Self::one()).truncate(max_weight);
        let mut out = Self::zero();
        let mut power = Self::one();
        for k in 1..=max_weight {
            power = power.concat_bounded(&x, Some(max_weight));
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { C::one() } else { -C::one() };
            out += &power.scale(&(sign / C::from_int(k as i64)));
        }
        Ok(out)
    }

    /// Single-letter polynomial `y_n`, or zero when `n == 0` is requested with
    /// `zero_is_one = false`. With `zero_is_one` the convention `y_0 = 1` applies.
    pub fn y(n: u32, zero_is_one: bool) -> Self {
        match (n, zero_is_one) {
            (0, true) => Self::one(),
            (0, false) => Self::zero(),
            _ => Self::letter(n),
        }
    }
}

impl<C: Scalar> From<Word> for NCPolynomial<C> {
    fn from(w: Word) -> Self {
        Self::word(w)
    }
}

impl<C: Scalar> From<Letter> for NCPolynomial<C> {
    fn from(l: Letter) -> Self {
        Self::word(Word::from_letters(vec![l]))
    }
}

impl<C: Scalar> AddAssign<&NCPolynomial<C>> for NCPolynomial<C> {
    fn add_assign(&mut self, rhs: &NCPolynomial<C>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl<C: Scalar> SubAssign<&NCPolynomial<C>> for NCPolynomial<C> {
    fn sub_assign(&mut self, rhs: &NCPolynomial<C>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c.clone());
        }
    }
}

impl<C: Scalar> Add<&NCPolynomial<C>> for &NCPolynomial<C> {
    type Output = NCPolynomial<C>;
    fn add(self, rhs: &NCPolynomial<C>) -> NCPolynomial<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Scalar> Add for NCPolynomial<C> {
    type Output = NCPolynomial<C>;
    fn add(mut self, rhs: NCPolynomial<C>) -> NCPolynomial<C> {
        self += &rhs;
        self
    }
}

impl<C: Scalar> Sub<&NCPolynomial<C>> for &NCPolynomial<C> {
    type Output = NCPolynomial<C>;
    fn sub(self, rhs: &NCPolynomial<C>) -> NCPolynomial<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Scalar> Sub for NCPolynomial<C> {
    type Output = NCPolynomial<C>;
    fn sub(mut self, rhs: NCPolynomial<C>) -> NCPolynomial<C> {
        self -= &rhs;
        self
    }
}

impl<C: Scalar> Neg for NCPolynomial<C> {
    type Output = NCPolynomial<C>;
    fn neg(self) -> NCPolynomial<C> {
        NCPolynomial { terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

impl<C: Scalar> Mul<&NCPolynomial<C>> for &NCPolynomial<C> {
    type Output = NCPolynomial<C>;
    fn mul(self, rhs: &NCPolynomial<C>) -> NCPolynomial<C> {
        self.concat_bounded(rhs, None)
    }
}

impl<C: Scalar> Mul for NCPolynomial<C> {
    type Output = NCPolynomial<C>;
    fn mul(self, rhs: NCPolynomial<C>) -> NCPolynomial<C> {
        self.concat_bounded(&rhs, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_up_to;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = NCPolynomial<Q>;

    fn w(p: &[u32]) -> P {
        P::word(Word::from_indices(p))
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn product_examples() {
        assert_eq!(w(&[1]).shuffle(&w(&[1])), w(&[1, 1]).scale(&q(2, 1)));
        assert_eq!(w(&[1]).stuffle(&w(&[2])), w(&[1, 2]) + w(&[2, 1]) + w(&[3]));
        assert_eq!(
            w(&[2]).stuffle(&w(&[2, 1])),
            w(&[2, 2, 1]).scale(&q(2, 1)) + w(&[2, 1, 2]) + w(&[4, 1]) + w(&[2, 3])
        );
        for kind in [ProductKind::Concat, ProductKind::Shuffle, ProductKind::Stuffle] {
            assert_eq!(P::one().product(&w(&[2, 1]), kind), w(&[2, 1]));
            assert_eq!(w(&[2, 1]).product(&P::one(), kind), w(&[2, 1]));
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(w(&[1, 2]).pairing(&w(&[1, 2])), q(1, 1));
        assert_eq!(w(&[1]).shuffle(&w(&[2])).pairing(&w(&[2, 1])), q(1, 1));
        assert_eq!(w(&[1, 2]).pairing(&P::zero()), q(0, 1));
    }

    #[test]
    fn exp_log_examples() {
        let e = w(&[1]).exp_trunc(2).unwrap();
        assert_eq!(e, P::one() + w(&[1]) + w(&[1, 1]).scale(&q(1, 2)));

        let l = (P::one() + w(&[1])).log_trunc(3).unwrap();
        assert_eq!(l, w(&[1]) - w(&[1, 1]).scale(&q(1, 2)) + w(&[1, 1, 1]).scale(&q(1, 3)));

        let x = w(&[2]) + w(&[1]);
        assert_eq!(x.exp_trunc(4).unwrap().log_trunc(4).unwrap(), x);

        assert_eq!(P::one().exp_trunc(3), Err(Error::ExpConstantTerm));
        assert_eq!(w(&[1]).log_trunc(3), Err(Error::LogConstantTerm));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = w(&[1, 2]) - w(&[1, 2]);
        assert!(p.is_zero());
        assert_eq!(p, P::zero());
        let mut p = P::zero();
        p.add_term(Word::from_indices(&[3]), q(0, 1));
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn products_are_weight_homogeneous() {
        let words = words_up_to(4);
        for u in &words {
            for v in &words {
                let (pu, pv) = (P::word(u.clone()), P::word(v.clone()));
                for kind in [ProductKind::Concat, ProductKind::Shuffle, ProductKind::Stuffle] {
                    assert!(pu.product(&pv, kind).is_homogeneous(u.weight() + v.weight()));
                }
            }
        }
    }

    #[test]
    fn commutative_and_associative_exhaustive() {
        let words = words_up_to(3);
        for u in &words {
            for v in &words {
                let (pu, pv) = (P::word(u.clone()), P::word(v.clone()));
                assert_eq!(pu.shuffle(&pv), pv.shuffle(&pu));
                assert_eq!(pu.stuffle(&pv), pv.stuffle(&pu));
                for x in words.iter().filter(|x| u.weight() + v.weight() + x.weight() <= 5) {
                    let px = P::word(x.clone());
                    assert_eq!(pu.shuffle(&pv).shuffle(&px), pu.shuffle(&pv.shuffle(&px)));
                    assert_eq!(pu.stuffle(&pv).stuffle(&px), pu.stuffle(&pv.stuffle(&px)));
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = Word> {
            prop::collection::vec(1u32..4, 0..3).prop_map(|v| Word::from_indices(&v))
        }

        proptest! {
            #[test]
            fn shuffle_stuffle_commute_and_associate(u in word(), v in word(), x in word()) {
                let (pu, pv, px) = (P::word(u), P::word(v), P::word(x));
                prop_assert_eq!(pu.stuffle(&pv), pv.stuffle(&pu));
                prop_assert_eq!(pu.shuffle(&pv), pv.shuffle(&pu));
                prop_assert_eq!(pu.stuffle(&pv).stuffle(&px), pu.stuffle(&pv.stuffle(&px)));
                prop_assert_eq!(pu.shuffle(&pv).shuffle(&px), pu.shuffle(&pv.shuffle(&px)));
            }
        }
    }
}
