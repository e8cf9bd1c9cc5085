//! Truncated diagonal series `Σ w ⊗ w` and their factorization as ordered
//! products of exponentials over Lyndon words.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use crate::bases::{pi1, Family, GradedBasis};
use crate::error::{Error, Result};
use crate::lyndon::lyndon_up_to;
use crate::ncpoly::{words_product, NCPolynomial, ProductKind};
use crate::scalar::Scalar;
use crate::symqsym::qsym::{star, Memo};
use crate::symqsym::{encode_m, qsym_product};
use crate::words::{words_up_to, Composition, Word};

/// A graded algebra with a monomial basis, as far as series products need it.
pub trait SeriesAlgebra {
    type Key: Ord + Clone + Debug + Display;
    fn unit(&self) -> Self::Key;
    fn weight(&self, k: &Self::Key) -> u32;
    /// Product of two basis elements, as nonnegative integer combination.
    fn mul(&self, a: &Self::Key, b: &Self::Key) -> Vec<(Self::Key, u64)>;
}

/// `k<Y>` with concatenation, shuffle or stuffle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordAlgebra(pub ProductKind);

impl SeriesAlgebra for WordAlgebra {
    type Key = Word;
    fn unit(&self) -> Word {
        Word::empty()
    }
    fn weight(&self, k: &Word) -> u32 {
        k.weight()
    }
    fn mul(&self, a: &Word, b: &Word) -> Vec<(Word, u64)> {
        match self.0 {
            ProductKind::Concat => vec![(a.concat(b), 1)],
            ProductKind::Shuffle => words_product::shuffle(a, b).into_iter().collect(),
            ProductKind::Stuffle => words_product::stuffle(a, b).into_iter().collect(),
        }
    }
}

/// `QSym` in the `M` basis with `⋆`.
#[derive(Debug, Default)]
pub struct QSymStar {
    memo: RefCell<Memo>,
}

impl SeriesAlgebra for QSymStar {
    type Key = Composition;
    fn unit(&self) -> Composition {
        Composition::empty()
    }
    fn weight(&self, k: &Composition) -> u32 {
        k.weight()
    }
    fn mul(&self, a: &Composition, b: &Composition) -> Vec<(Composition, u64)> {
        star(a.parts(), b.parts(), &mut self.memo.borrow_mut())
            .into_iter()
            .map(|(k, c)| (Composition::new(&k), c as u64))
            .collect()
    }
}

/// `Sym` in the `S` basis, where `S^I S^J = S^{IJ}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymConcat;

impl SeriesAlgebra for SymConcat {
    type Key = Composition;
    fn unit(&self) -> Composition {
        Composition::empty()
    }
    fn weight(&self, k: &Composition) -> u32 {
        k.weight()
    }
    fn mul(&self, a: &Composition, b: &Composition) -> Vec<(Composition, u64)> {
        vec![(a.concat(b), 1)]
    }
}

/// Element of `A ⊗ B` truncated at weight `N` on each side; multiplication
/// drops every term that overflows.
pub struct TensorSeries<A: SeriesAlgebra, B: SeriesAlgebra, C> {
    left: A,
    right: B,
    bound: u32,
    terms: BTreeMap<(A::Key, B::Key), C>,
}

/// `k<Y> ⊗ k<Y>` with shuffle or stuffle on the left and concatenation on the
/// right.
pub type GradedTensorSeries<C> = TensorSeries<WordAlgebra, WordAlgebra, C>;

impl<A: SeriesAlgebra, B: SeriesAlgebra, C: Scalar> TensorSeries<A, B, C> {
    pub fn zero(left: A, right: B, bound: u32) -> Self {
        TensorSeries { left, right, bound, terms: BTreeMap::new() }
    }

    pub fn one(left: A, right: B, bound: u32) -> Self {
        let mut s = Self::zero(left, right, bound);
        let (l, r) = (s.left.unit(), s.right.unit());
        s.add_term(l, r, C::one());
        s
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Adds `c·a⊗b`, ignored if either side exceeds the bound.
    pub fn add_term(&mut self, a: A::Key, b: B::Key, c: C) {
        if c.is_zero() || self.left.weight(&a) > self.bound || self.right.weight(&b) > self.bound {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn coeff(&self, a: &A::Key, b: &B::Key) -> C {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&A::Key, &B::Key, &C)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn like(&self) -> Self
    where
        A: Clone,
        B: Clone,
    {
        Self::zero(self.left.clone(), self.right.clone(), self.bound)
    }

    pub fn add(&self, other: &Self) -> Self
    where
        A: Clone,
        B: Clone,
    {
        let mut out = self.like();
        for ((a, b), c) in self.terms.iter().chain(&other.terms) {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, x: &C) -> Self
    where
        A: Clone,
        B: Clone,
    {
        let mut out = self.like();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.clone() * x.clone());
        }
        out
    }

    /// `(a⊗b)(c⊗d) = (a c)⊗(b d)`, each side with its own product.
    pub fn mul(&self, other: &Self) -> Self
    where
        A: Clone,
        B: Clone,
    {
        let mut out = self.like();
        for ((a, b), x) in &self.terms {
            let (wa, wb) = (self.left.weight(a), self.right.weight(b));
            for ((c, d), y) in &other.terms {
                if wa + self.left.weight(c) > self.bound || wb + self.right.weight(d) > self.bound {
                    continue;
                }
                let xy = x.clone() * y.clone();
                let rights = self.right.mul(b, d);
                for (l, m) in self.left.mul(a, c) {
                    for (r, n) in &rights {
                        out.add_term(l.clone(), r.clone(), xy.clone() * C::from_int((m * n) as i64));
                    }
                }
            }
        }
        out
    }

    /// `Σ_k X^k / k!` for `X` without constant term.
    pub fn exp(&self) -> Result<Self>
    where
        A: Clone,
        B: Clone,
    {
        let unit = (self.left.unit(), self.right.unit());
        if self.terms.contains_key(&unit) {
            return Err(Error::ExpConstantTerm);
        }
        let mut out = Self::one(self.left.clone(), self.right.clone(), self.bound);
        let mut power = out.clone();
        for k in 1..=self.bound {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&C::inv_factorial(k)));
        }
        Ok(out)
    }

    /// `Σ_{k≥1} (-1)^{k-1} (X - 1)^k / k` for `X` with constant term `1⊗1`.
    pub fn log(&self) -> Result<Self>
    where
        A: Clone,
        B: Clone,
    {
        let unit = (self.left.unit(), self.right.unit());
        if self.terms.get(&unit).is_none_or(|c| !c.is_one()) {
            return Err(Error::LogConstantTerm);
        }
        let mut x = self.clone();
        x.terms.remove(&unit);
        let mut out = self.like();
        let mut power = Self::one(self.left.clone(), self.right.clone(), self.bound);
        for k in 1..=self.bound {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { C::one() } else { -C::one() };
            out = out.add(&power.scale(&(sign / C::from_int(k as i64))));
        }
        Ok(out)
    }

    /// Sorted list of keys where `self` and `other` differ.
    pub fn differences(&self, other: &Self) -> Vec<(A::Key, B::Key, C, C)> {
        let mut keys: Vec<&(A::Key, B::Key)> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let x = self.terms.get(k).cloned().unwrap_or_else(C::zero);
                let y = other.terms.get(k).cloned().unwrap_or_else(C::zero);
                (x != y).then(|| (k.0.clone(), k.1.clone(), x, y))
            })
            .collect()
    }
}

impl<A: SeriesAlgebra + Clone, B: SeriesAlgebra + Clone, C: Scalar> Clone for TensorSeries<A, B, C> {
    fn clone(&self) -> Self {
        TensorSeries {
            left: self.left.clone(),
            right: self.right.clone(),
            bound: self.bound,
            terms: self.terms.clone(),
        }
    }
}

impl Clone for QSymStar {
    fn clone(&self) -> Self {
        QSymStar::default()
    }
}

impl<A: SeriesAlgebra, B: SeriesAlgebra, C: Scalar> PartialEq for TensorSeries<A, B, C> {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.terms == other.terms
    }
}

impl<A: SeriesAlgebra, B: SeriesAlgebra, C: Scalar> Debug for TensorSeries<A, B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TensorSeries").field("bound", &self.bound).field("terms", &self.terms).finish()
    }
}

impl<C: Scalar> GradedTensorSeries<C> {
    /// `Σ_{w(w) ≤ N} w ⊗ w`, with `left` as the product of the left factor.
    pub fn diagonal(n: u32, left: ProductKind) -> Self {
        let mut s = Self::zero(WordAlgebra(left), WordAlgebra(ProductKind::Concat), n);
        for w in words_up_to(n) {
            s.add_term(w.clone(), w, C::one());
        }
        s
    }

    /// `exp(b ⊗ d) = Σ_k b^k/k! ⊗ d^k`, with the left power taken in the left
    /// product.
    pub fn exp_rank_one(b: &NCPolynomial<C>, d: &NCPolynomial<C>, left: ProductKind, n: u32) -> Self {
        let mut s = Self::one(WordAlgebra(left), WordAlgebra(ProductKind::Concat), n);
        let (mut bk, mut dk) = (NCPolynomial::one(), NCPolynomial::one());
        for k in 1..=n {
            bk = bk.product(b, left).truncate(n);
            dk = dk.concat_bounded(d, Some(n));
            if bk.is_zero() || dk.is_zero() {
                break;
            }
            let f = C::inv_factorial(k);
            for (u, x) in bk.terms() {
                for (v, y) in dk.terms() {
                    s.add_term(u.clone(), v.clone(), x.clone() * y.clone() * f.clone());
                }
            }
        }
        s
    }
}

/// Which dual pair is multiplied out, with which left product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizationSpec {
    /// Family placed on the left, `Σ_l`.
    pub dual: Family,
    /// Family placed on the right, `Π_l`.
    pub primal: Family,
    pub left_product: ProductKind,
}

/// The four dual pairs for which the factorization holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pair {
    /// `(s, p)` with shuffle.
    Shuffle,
    /// `(Σ, Π)` with stuffle.
    Stuffle,
    /// `(Σ^L, Π^L)` with stuffle.
    L,
    /// `(Σ^R, Π^R)` with stuffle.
    R,
}

impl Pair {
    pub const ALL: [Pair; 4] = [Pair::Shuffle, Pair::Stuffle, Pair::L, Pair::R];

    pub fn spec(self) -> FactorizationSpec {
        let (dual, primal, left_product) = match self {
            Pair::Shuffle => (Family::S, Family::P, ProductKind::Shuffle),
            Pair::Stuffle => (Family::Sigma, Family::Pi, ProductKind::Stuffle),
            Pair::L => (Family::SigmaL, Family::PiL, ProductKind::Stuffle),
            Pair::R => (Family::SigmaR, Family::PiR, ProductKind::Stuffle),
        };
        FactorizationSpec { dual, primal, left_product }
    }

    /// A deliberately wrong variant: `(Σ, p)` for the shuffle pair, the
    /// shuffle product for the others.
    pub fn negative_control(self) -> FactorizationSpec {
        match self {
            Pair::Shuffle => {
                FactorizationSpec { dual: Family::Sigma, primal: Family::P, left_product: ProductKind::Stuffle }
            }
            _ => FactorizationSpec { left_product: ProductKind::Shuffle, ..self.spec() },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pair::Shuffle => "shuffle",
            Pair::Stuffle => "stuffle",
            Pair::L => "L",
            Pair::R => "R",
        }
    }
}

impl Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Pair::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::Parse(format!("unknown pair {s:?}")))
    }
}

/// The exponential factors `exp(b_l ⊗ d_l)`, one per Lyndon word of weight at
/// most `N`, in decreasing word order.
pub fn factors<C: Scalar>(n: u32, spec: FactorizationSpec) -> Result<Vec<(Word, GradedTensorSeries<C>)>> {
    let dual = family_table::<C>(spec.dual, n)?;
    let primal = family_table::<C>(spec.primal, n)?;
    let mut lyndon = lyndon_up_to(n);
    lyndon.sort_by(|a, b| b.cmp(a));
    Ok(lyndon
        .into_iter()
        .map(|l| {
            let f = GradedTensorSeries::exp_rank_one(&dual[&l], &primal[&l], spec.left_product, n);
            (l, f)
        })
        .collect())
}

fn family_table<C: Scalar>(family: Family, n: u32) -> Result<BTreeMap<Word, NCPolynomial<C>>> {
    let b = GradedBasis::<C>::new(family, n)?;
    Ok(if family.is_dual() { b.dual } else { b.primal })
}

/// `∏^{↘}_{l} exp(b_l ⊗ d_l)` truncated at weight `N`.
pub fn factorized_product<C: Scalar>(n: u32, spec: FactorizationSpec) -> Result<GradedTensorSeries<C>> {
    let start = GradedTensorSeries::one(WordAlgebra(spec.left_product), WordAlgebra(ProductKind::Concat), n);
    Ok(factors(n, spec)?.into_iter().fold(start, |acc, (_, f)| acc.mul(&f)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<C> {
    pub left: Word,
    pub right: Word,
    pub expected: C,
    pub actual: C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationReport<C> {
    pub max_weight: u32,
    pub spec: FactorizationSpec,
    pub holds: bool,
    pub mismatch_count: usize,
    /// The first mismatches in (left, right) word order.
    pub mismatches: Vec<Mismatch<C>>,
    /// Smallest weight at which a coefficient differs.
    pub first_bad_weight: Option<u32>,
}

const REPORT_LIMIT: usize = 20;

/// Compares `Σ w ⊗ w` with the ordered product term by term.
pub fn verify_factorization<C: Scalar>(n: u32, spec: FactorizationSpec) -> Result<FactorizationReport<C>> {
    let diagonal = GradedTensorSeries::diagonal(n, spec.left_product);
    let product = factorized_product(n, spec)?;
    let diffs = diagonal.differences(&product);
    let first_bad_weight = diffs.iter().map(|(u, v, _, _)| u.weight().max(v.weight())).min();
    Ok(FactorizationReport {
        max_weight: n,
        spec,
        holds: diffs.is_empty(),
        mismatch_count: diffs.len(),
        mismatches: diffs
            .into_iter()
            .take(REPORT_LIMIT)
            .map(|(left, right, expected, actual)| Mismatch { left, right, expected, actual })
            .collect(),
        first_bad_weight,
    })
}

impl<C: Scalar> Display for FactorizationReport<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.spec;
        write!(
            f,
            "factorization ({}, {}) with {:?} up to weight {}: ",
            s.dual, s.primal, s.left_product, self.max_weight
        )?;
        if self.holds {
            return f.write_str("holds");
        }
        write!(f, "{} mismatches", self.mismatch_count)?;
        if let Some(w) = self.first_bad_weight {
            write!(f, ", first at weight {w}")?;
        }
        for m in &self.mismatches {
            write!(f, "\n  [{}] ⊗ [{}]: diagonal {} vs product {}", m.left, m.right, m.expected, m.actual)?;
        }
        Ok(())
    }
}

/// Outcome of the three identities on the generating series
/// `Σ_w ℳ(w) ⊗ w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterReport {
    /// `ℳ(u ⊔⊔ v) = ℳ(u) ⋆ ℳ(v)`.
    pub character: bool,
    /// `log Σ_w M_w ⊗ w = Σ_w M_w ⊗ π₁(w)`.
    pub log_expansion: bool,
    /// `Σ_w M_w S_w = ∏ exp(M_{Σ_l} S_{Π_l})` for the pairs `(Σ, Π)`,
    /// `(Σ^L, Π^L)`, `(Σ^R, Π^R)`, in that order.
    pub closing_identity: [bool; 3],
}

impl CharacterReport {
    pub fn all(&self) -> bool {
        self.character && self.log_expansion && self.closing_identity.iter().all(|&b| b)
    }
}

/// `QSym ⊗ Sym` truncated at weight `N`.
pub type QSymSymSeries<C> = TensorSeries<QSymStar, SymConcat, C>;

/// `Σ_{w(w) ≤ N} M_w ⊗ S_w`.
pub fn qsym_sym_diagonal<C: Scalar>(n: u32) -> QSymSymSeries<C> {
    let mut s = QSymSymSeries::zero(QSymStar::default(), SymConcat, n);
    for w in words_up_to(n) {
        s.add_term(w.to_composition(), w.to_composition(), C::one());
    }
    s
}

/// `∏^{↘}_l exp(ℳ(Σ_l) ⊗ 𝒮(Π_l))` inside `QSym ⊗ Sym`.
pub fn qsym_sym_product<C: Scalar>(n: u32, primal: Family) -> Result<QSymSymSeries<C>> {
    let basis = GradedBasis::<C>::new(primal, n)?;
    let mut lyndon = lyndon_up_to(n);
    lyndon.sort_by(|a, b| b.cmp(a));
    let mut acc = QSymSymSeries::one(QSymStar::default(), SymConcat, n);
    for l in lyndon {
        let mut x = QSymSymSeries::zero(QSymStar::default(), SymConcat, n);
        let left = encode_m(&basis.dual[&l]);
        for (i, a) in left.terms() {
            for (w, b) in basis.primal[&l].terms() {
                x.add_term(i.clone(), w.to_composition(), a.clone() * b.clone());
            }
        }
        acc = acc.mul(&x.exp()?);
    }
    Ok(acc)
}

pub fn character_checks<C: Scalar>(n: u32) -> Result<CharacterReport> {
    let words = words_up_to(n);
    let character = words.iter().all(|u| {
        words.iter().filter(|v| u.weight() + v.weight() <= n).all(|v| {
            let (pu, pv) = (NCPolynomial::<C>::word(u.clone()), NCPolynomial::<C>::word(v.clone()));
            encode_m(&pu.stuffle(&pv)) == qsym_product(&encode_m(&pu), &encode_m(&pv))
        })
    });

    let mut m_series = TensorSeries::zero(QSymStar::default(), WordAlgebra(ProductKind::Concat), n);
    let mut expected = TensorSeries::zero(QSymStar::default(), WordAlgebra(ProductKind::Concat), n);
    for w in &words {
        m_series.add_term(w.to_composition(), w.clone(), C::one());
        if !w.is_empty() {
            for (u, c) in pi1(&NCPolynomial::<C>::word(w.clone())).terms() {
                expected.add_term(w.to_composition(), u.clone(), c.clone());
            }
        }
    }
    let log_expansion = m_series.log()? == expected;

    let diagonal = qsym_sym_diagonal::<C>(n);
    let mut closing_identity = [false; 3];
    for (slot, family) in closing_identity.iter_mut().zip([Family::Pi, Family::PiL, Family::PiR]) {
        *slot = qsym_sym_product::<C>(n, family)? == diagonal;
    }
    Ok(CharacterReport { character, log_expansion, closing_identity })
}
