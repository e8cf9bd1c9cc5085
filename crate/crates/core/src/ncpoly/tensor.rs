use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Sub};

use super::NCPolynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::{Letter, Word};

/// Element of `k<Y> ⊗ k<Y>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorPolynomial<C> {
    terms: BTreeMap<(Word, Word), C>,
}

impl<C: Scalar> Default for TensorPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> TensorPolynomial<C> {
    pub fn zero() -> Self {
        TensorPolynomial { terms: BTreeMap::new() }
    }

    /// `1 ⊗ 1`
    pub fn one() -> Self {
        Self::monomial(Word::empty(), Word::empty(), C::one())
    }

    pub fn monomial(left: Word, right: Word, c: C) -> Self {
        let mut t = Self::zero();
        t.add_term(left, right, c);
        t
    }

    /// `P ⊗ Q`
    pub fn tensor(p: &NCPolynomial<C>, q: &NCPolynomial<C>) -> Self {
        let mut t = Self::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                t.add_term(u.clone(), v.clone(), a.clone() * b.clone());
            }
        }
        t
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let v = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> C {
        // BTreeMap lookup needs an owned tuple key.
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &C)> {
        self.terms.iter().map(|((u, v), c)| (u, v, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for ((u, v), x) in &self.terms {
            out.add_term(u.clone(), v.clone(), x.clone() * c.clone());
        }
        out
    }

    /// `(u ⊗ v)(u' ⊗ v') = uu' ⊗ vv'`
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((u, v), a) in &self.terms {
            for ((u2, v2), b) in &other.terms {
                out.add_term(u.concat(u2), v.concat(v2), a.clone() * b.clone());
            }
        }
        out
    }

    /// Componentwise pairing `<u ⊗ v | u' ⊗ v'> = δ_{u,u'} δ_{v,v'}`.
    pub fn pairing(&self, other: &Self) -> C {
        self.terms
            .iter()
            .filter_map(|(k, a)| other.terms.get(k).map(|b| a.clone() * b.clone()))
            .fold(C::zero(), |acc, x| acc + x)
    }

    /// Applies `f ⊗ g`, both given on words.
    pub fn map_both(&self, f: impl Fn(&Word) -> NCPolynomial<C>, g: impl Fn(&Word) -> NCPolynomial<C>) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            out += &Self::tensor(&f(u), &g(v)).scale(c);
        }
        out
    }

    /// Applies `ε ⊗ id`.
    pub fn counit_left(&self) -> NCPolynomial<C> {
        NCPolynomial::from_terms(
            self.terms.iter().filter(|((u, _), _)| u.is_empty()).map(|((_, v), c)| (v.clone(), c.clone())),
        )
    }

    /// Applies `id ⊗ ε`.
    pub fn counit_right(&self) -> NCPolynomial<C> {
        NCPolynomial::from_terms(
            self.terms.iter().filter(|((_, v), _)| v.is_empty()).map(|((u, _), c)| (u.clone(), c.clone())),
        )
    }

    /// Whether this is `x ⊗ 1 + 1 ⊗ x`.
    pub fn is_primitive_image_of(&self, x: &NCPolynomial<C>) -> bool {
        let one = NCPolynomial::one();
        *self == Self::tensor(x, &one) + Self::tensor(&one, x)
    }
}

impl<C: Scalar> AddAssign<&TensorPolynomial<C>> for TensorPolynomial<C> {
    fn add_assign(&mut self, rhs: &TensorPolynomial<C>) {
        for ((u, v), c) in &rhs.terms {
            self.add_term(u.clone(), v.clone(), c.clone());
        }
    }
}

impl<C: Scalar> Add for TensorPolynomial<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Scalar> Sub for TensorPolynomial<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self += &rhs.scale(&-C::one());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoproductKind {
    /// `Δ•`, deconcatenation.
    Deconcat,
    /// `Δ⧢`
    Shuffle,
    /// `Δ⊔⊔ = Δ⧢ + Δ₊` on letters.
    Stuffle,
    /// `Δ₊`, letters only.
    Plus,
}

fn plus_on_letter<C: Scalar>(n: u32) -> TensorPolynomial<C> {
    let mut t = TensorPolynomial::zero();
    for i in 1..n {
        t.add_term(Word::letter(i), Word::letter(n - i), C::one());
    }
    t
}

fn letter_coproduct<C: Scalar>(l: Letter, contract: bool) -> TensorPolynomial<C> {
    let w = Word::from_letters(vec![l]);
    let mut t = TensorPolynomial::monomial(w.clone(), Word::empty(), C::one());
    t.add_term(Word::empty(), w, C::one());
    if contract {
        t += &plus_on_letter(l.index());
    }
    t
}

fn word_coproduct<C: Scalar>(w: &Word, kind: CoproductKind) -> Result<TensorPolynomial<C>> {
    match kind {
        CoproductKind::Deconcat => {
            let mut t = TensorPolynomial::zero();
            for k in 0..=w.len() {
                let (u, v) = w.split_at(k);
                t.add_term(u, v, C::one());
            }
            Ok(t)
        }
        CoproductKind::Shuffle | CoproductKind::Stuffle => {
            let contract = kind == CoproductKind::Stuffle;
            Ok(w.letters().iter().fold(TensorPolynomial::one(), |acc, &l| acc.concat(&letter_coproduct(l, contract))))
        }
        CoproductKind::Plus => match w.letters() {
            [l] => Ok(plus_on_letter(l.index())),
            _ => Err(Error::PlusOnNonLetter(w.to_string())),
        },
    }
}

/// Coproduct of a polynomial. The shuffle and quasi-shuffle coproducts are
/// extended to words as concatenation morphisms; `Δ₊` is not a morphism and
/// is only defined on linear combinations of letters.
pub fn coproduct<C: Scalar>(p: &NCPolynomial<C>, kind: CoproductKind) -> Result<TensorPolynomial<C>> {
    let mut out = TensorPolynomial::zero();
    for (w, c) in p.terms() {
        out += &word_coproduct::<C>(w, kind)?.scale(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::ProductKind;
    use crate::words::words_up_to;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = NCPolynomial<Q>;
    type T = TensorPolynomial<Q>;

    fn w(p: &[u32]) -> Word {
        Word::from_indices(p)
    }

    fn one() -> Q {
        Q::from_int(1)
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&P::letter(2), CoproductKind::Stuffle).unwrap();
        let mut expected = T::monomial(w(&[2]), Word::empty(), one());
        expected.add_term(Word::empty(), w(&[2]), one());
        expected.add_term(w(&[1]), w(&[1]), one());
        assert_eq!(d, expected);

        let d = coproduct(&P::word(w(&[1, 2])), CoproductKind::Deconcat).unwrap();
        let mut expected = T::monomial(Word::empty(), w(&[1, 2]), one());
        expected.add_term(w(&[1]), w(&[2]), one());
        expected.add_term(w(&[1, 2]), Word::empty(), one());
        assert_eq!(d, expected);

        let d = coproduct(&P::letter(3), CoproductKind::Plus).unwrap();
        let mut expected = T::monomial(w(&[1]), w(&[2]), one());
        expected.add_term(w(&[2]), w(&[1]), one());
        assert_eq!(d, expected);
    }

    #[test]
    fn plus_coproduct_rejects_longer_words() {
        assert_eq!(coproduct(&P::word(w(&[1, 1])), CoproductKind::Plus), Err(Error::PlusOnNonLetter("1 1".into())));
        assert!(coproduct(&P::one(), CoproductKind::Plus).is_err());
        // Δ₊(y_1) = 0, so its square vanishes while y_1 y_1 has no Δ₊ at all.
        let d1 = coproduct(&P::letter(1), CoproductKind::Plus).unwrap();
        assert!(d1.concat(&d1).is_zero());
    }

    #[test]
    fn adjunction_with_products() {
        let words = words_up_to(5);
        for (coprod, prod) in [
            (CoproductKind::Shuffle, ProductKind::Shuffle),
            (CoproductKind::Stuffle, ProductKind::Stuffle),
            (CoproductKind::Deconcat, ProductKind::Concat),
        ] {
            for x in &words {
                let d = coproduct(&P::word(x.clone()), coprod).unwrap();
                for u in &words {
                    for v in words.iter().filter(|v| u.weight() + v.weight() == x.weight()) {
                        let lhs = d.coeff(u, v);
                        let rhs = P::word(u.clone()).product(&P::word(v.clone()), prod).coeff(x);
                        assert_eq!(lhs, rhs, "{x} vs {u} * {v} ({prod:?})");
                    }
                }
            }
        }
    }

    fn coassoc_sides(t: &T, kind: CoproductKind) -> (BTreeMap<(Word, Word, Word), Q>, BTreeMap<(Word, Word, Word), Q>) {
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (u, v, c) in t.terms() {
            for (a, b, c2) in coproduct(&P::word(u.clone()), kind).unwrap().terms() {
                *left.entry((a.clone(), b.clone(), v.clone())).or_insert_with(|| Q::from_int(0)) +=
                    c.clone() * c2.clone();
            }
            for (a, b, c2) in coproduct(&P::word(v.clone()), kind).unwrap().terms() {
                *right.entry((u.clone(), a.clone(), b.clone())).or_insert_with(|| Q::from_int(0)) +=
                    c.clone() * c2.clone();
            }
        }
        left.retain(|_, c| *c != Q::from_int(0));
        right.retain(|_, c| *c != Q::from_int(0));
        (left, right)
    }

    #[test]
    fn coassociativity_and_counit() {
        for kind in [CoproductKind::Deconcat, CoproductKind::Shuffle, CoproductKind::Stuffle] {
            for x in words_up_to(5) {
                let px = P::word(x.clone());
                let d = coproduct(&px, kind).unwrap();
                let (l, r) = coassoc_sides(&d, kind);
                assert_eq!(l, r, "{kind:?} on {x}");
                assert_eq!(d.counit_left(), px);
                assert_eq!(d.counit_right(), px);
            }
        }
    }

    #[test]
    fn shuffle_and_stuffle_coproducts_are_morphisms() {
        let words = words_up_to(3);
        for kind in [CoproductKind::Shuffle, CoproductKind::Stuffle] {
            for u in &words {
                for v in words.iter().filter(|v| u.weight() + v.weight() <= 5) {
                    let duv = coproduct(&P::word(u.concat(v)), kind).unwrap();
                    let du = coproduct(&P::word(u.clone()), kind).unwrap();
                    let dv = coproduct(&P::word(v.clone()), kind).unwrap();
                    assert_eq!(duv, du.concat(&dv));
                }
            }
        }
    }
}
