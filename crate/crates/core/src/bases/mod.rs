//! Dual PBW-Lyndon systems on `k<Y>`.
//!
//! Four primal families are built by the same recursion (letter image,
//! bracket over the standard factorization, decreasing concatenation
//! product):
//!
//! | family | letter `y_n` maps to | primitive for |
//! |--------|----------------------|---------------|
//! | `p`    | `y_n`                | `Δ⧢`          |
//! | `Π`    | `π₁(y_n)`            | `Δ⊔⊔`         |
//! | `Π^L`  | `L_n`                | `Δ⊔⊔`         |
//! | `Π^R`  | `R_n`                | `Δ⊔⊔`         |
//!
//! The dual family of `p` comes from the classical `s` recursion. The other
//! three duals are obtained by inverting the pairing matrix on each weight
//! component, `<Π_u | Σ_v> = δ_{u,v}`.

pub mod series;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lyndon::{is_lyndon, lyndon_factorization, standard_factorization};
use crate::ncpoly::{coproduct, CoproductKind, NCPolynomial, ProductKind};
use crate::scalar::Scalar;
use crate::words::{words_of_weight, Word};

pub use series::{
    ad_formula_holds, derivative_identity_holds, higher_series, l_elements, l_series, r_elements, r_series, x_elements,
    y_from_r, y_in_r_expansion, y_inverse_series, y_series, HigherSeries, RWeighting, TSeries,
};

/// Which of `L_n`, `R_n` seeds the `Π^(S)` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P,
    S,
    Pi,
    Sigma,
    PiL,
    SigmaL,
    PiR,
    SigmaR,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::P, Family::S, Family::Pi, Family::Sigma, Family::PiL, Family::SigmaL, Family::PiR, Family::SigmaR];

    pub fn is_dual(self) -> bool {
        matches!(self, Family::S | Family::Sigma | Family::SigmaL | Family::SigmaR)
    }

    /// The other member of the dual pair.
    pub fn partner(self) -> Family {
        match self {
            Family::P => Family::S,
            Family::S => Family::P,
            Family::Pi => Family::Sigma,
            Family::Sigma => Family::Pi,
            Family::PiL => Family::SigmaL,
            Family::SigmaL => Family::PiL,
            Family::PiR => Family::SigmaR,
            Family::SigmaR => Family::PiR,
        }
    }

    pub fn primal(self) -> Family {
        if self.is_dual() {
            self.partner()
        } else {
            self
        }
    }

    /// Coproduct for which Lyndon-indexed primal elements are primitive.
    pub fn coproduct(self) -> CoproductKind {
        match self.primal() {
            Family::P => CoproductKind::Shuffle,
            _ => CoproductKind::Stuffle,
        }
    }

    /// Product under which the dual family is a free commutative algebra.
    pub fn dual_product(self) -> ProductKind {
        match self.primal() {
            Family::P => ProductKind::Shuffle,
            _ => ProductKind::Stuffle,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::P => "p",
            Family::S => "s",
            Family::Pi => "Pi",
            Family::Sigma => "Sigma",
            Family::PiL => "PiL",
            Family::SigmaL => "SigmaL",
            Family::PiR => "PiR",
            Family::SigmaR => "SigmaR",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis family {s:?}")))
    }
}

/// `π₁(w) = Σ_{k≥1} ((-1)^{k-1}/k) Σ_{u_1..u_k ∈ Y+} <w | u_1 ⊔⊔ ... ⊔⊔ u_k> u_1...u_k`,
/// extended linearly.
///
/// By adjunction the inner sum is the `k`-fold reduced quasi-shuffle
/// coproduct of `w` followed by concatenation, which is how it is computed.
pub fn pi1<C: Scalar>(p: &NCPolynomial<C>) -> NCPolynomial<C> {
    p.map_linear(pi1_word)
}

fn pi1_word<C: Scalar>(w: &Word) -> NCPolynomial<C> {
    let mut out = NCPolynomial::zero();
    for (k, layer) in reduced_coproduct_layers::<C>(w).into_iter().enumerate() {
        let k = k as i64 + 1;
        let sign = if k % 2 == 1 { C::one() } else { -C::one() };
        let factor = sign / C::from_int(k);
        for (parts, c) in layer {
            let word = parts.iter().fold(Word::empty(), |acc, u| acc.concat(u));
            out.add_term(word, c * factor.clone());
        }
    }
    out
}

type Layer<C> = BTreeMap<Vec<Word>, C>;

/// Layer `k-1` holds `Σ <w | u_1 ⊔⊔ ... ⊔⊔ u_k> (u_1, ..., u_k)` over nonempty
/// `u_i`. Empty for the empty word.
fn reduced_coproduct_layers<C: Scalar>(w: &Word) -> Vec<Layer<C>> {
    if w.is_empty() {
        return Vec::new();
    }
    let mut layers = vec![Layer::from([(vec![w.clone()], C::one())])];
    let mut split_cache: HashMap<Word, Vec<(Word, Word, C)>> = HashMap::new();
    loop {
        let mut next: Layer<C> = BTreeMap::new();
        for (parts, c) in layers.last().unwrap() {
            let last = parts.last().unwrap();
            let splits = split_cache.entry(last.clone()).or_insert_with(|| {
                coproduct(&NCPolynomial::<C>::word(last.clone()), CoproductKind::Stuffle)
                    .expect("quasi-shuffle coproduct is total")
                    .terms()
                    .filter(|(a, b, _)| !a.is_empty() && !b.is_empty())
                    .map(|(a, b, x)| (a.clone(), b.clone(), x.clone()))
                    .collect()
            });
            for (a, b, x) in splits.iter() {
                let mut key = parts[..parts.len() - 1].to_vec();
                key.push(a.clone());
                key.push(b.clone());
                let v = next.entry(key).or_insert_with(C::zero);
                *v = v.clone() + c.clone() * x.clone();
            }
        }
        next.retain(|_, v| !v.is_zero());
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    layers
}

/// Evaluates `Σ_k (1/k!) Σ <w | u_1 ⊔⊔ ... ⊔⊔ u_k> π₁(u_1)...π₁(u_k)` and
/// reports whether it gives back `w`.
pub fn pi1_inverse_check<C: Scalar>(w: &Word) -> bool {
    pi1_inverse_expansion::<C>(w) == NCPolynomial::word(w.clone())
}

pub fn pi1_inverse_expansion<C: Scalar>(w: &Word) -> NCPolynomial<C> {
    if w.is_empty() {
        return NCPolynomial::one();
    }
    let mut cache: HashMap<Word, NCPolynomial<C>> = HashMap::new();
    let mut out = NCPolynomial::zero();
    for (k, layer) in reduced_coproduct_layers::<C>(w).into_iter().enumerate() {
        let f = C::inv_factorial(k as u32 + 1);
        for (parts, c) in layer {
            let prod = parts.iter().fold(NCPolynomial::one(), |acc, u| {
                let p = cache.entry(u.clone()).or_insert_with(|| pi1_word(u));
                &acc * p
            });
            out += &prod.scale(&(c * f.clone()));
        }
    }
    out
}

/// Generic PBW recursion with a memo table.
struct PrimalBuilder<'a, C> {
    letter: &'a dyn Fn(u32) -> NCPolynomial<C>,
    memo: HashMap<Word, NCPolynomial<C>>,
}

impl<'a, C: Scalar> PrimalBuilder<'a, C> {
    fn new(letter: &'a dyn Fn(u32) -> NCPolynomial<C>) -> Self {
        PrimalBuilder { letter, memo: HashMap::new() }
    }

    fn get(&mut self, w: &Word) -> NCPolynomial<C> {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let p = if w.is_empty() {
            NCPolynomial::one()
        } else if w.len() == 1 {
            (self.letter)(w.letters()[0].index())
        } else if is_lyndon(w) {
            let (s, r) = standard_factorization(w).expect("checked Lyndon, length >= 2");
            self.get(&s).bracket(&self.get(&r))
        } else {
            let f = lyndon_factorization(w).expect("nonempty");
            f.flat().fold(NCPolynomial::one(), |acc, l| &acc * &self.get(l))
        };
        self.memo.insert(w.clone(), p.clone());
        p
    }
}

/// Images of the letters `y_1, ..., y_N` for a primal family.
fn letter_images<C: Scalar>(family: Family, max: u32) -> Vec<NCPolynomial<C>> {
    match family.primal() {
        Family::P => (1..=max).map(NCPolynomial::letter).collect(),
        Family::Pi => (1..=max).map(|n| pi1(&NCPolynomial::letter(n))).collect(),
        Family::PiL => l_elements(max),
        Family::PiR => r_elements(max),
        _ => unreachable!("primal() returns a primal family"),
    }
}

fn primal_element<C: Scalar>(family: Family, w: &Word) -> NCPolynomial<C> {
    let images = letter_images::<C>(family, w.weight().max(1));
    let letter = |n: u32| images[n as usize - 1].clone();
    PrimalBuilder::new(&letter).get(w)
}

/// `p_w`: letters, brackets over standard factorizations, decreasing products.
pub fn p_basis<C: Scalar>(w: &Word) -> NCPolynomial<C> {
    primal_element(Family::P, w)
}

/// `Π_w`, the same recursion seeded by `Π_y = π₁(y)`.
pub fn pi_basis<C: Scalar>(w: &Word) -> NCPolynomial<C> {
    primal_element(Family::Pi, w)
}

/// `Π^(S)_w`, seeded by `L_n` or `R_n`.
pub fn pis_basis<C: Scalar>(w: &Word, side: Side) -> NCPolynomial<C> {
    primal_element(side_family(side), w)
}

fn side_family(side: Side) -> Family {
    match side {
        Side::L => Family::PiL,
        Side::R => Family::PiR,
    }
}

/// `s_w`: `s_y = y`, `s_{yu} = y s_u` for Lyndon `yu`, and
/// `s_w = s_{l_1}^{⧢ i_1} ⧢ ... ⧢ s_{l_k}^{⧢ i_k} / (i_1! ... i_k!)`.
pub fn s_basis<C: Scalar>(w: &Word) -> NCPolynomial<C> {
    let mut memo = HashMap::new();
    s_rec(w, &mut memo)
}

fn s_rec<C: Scalar>(w: &Word, memo: &mut HashMap<Word, NCPolynomial<C>>) -> NCPolynomial<C> {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let p = if w.len() <= 1 {
        NCPolynomial::word(w.clone())
    } else if is_lyndon(w) {
        let (head, tail) = w.split_at(1);
        &NCPolynomial::word(head) * &s_rec(&tail, memo)
    } else {
        let f = lyndon_factorization(w).expect("nonempty");
        let mut acc = NCPolynomial::one();
        let mut denom = C::one();
        for (l, m) in &f.factors {
            let sl = s_rec(l, memo);
            for _ in 0..*m {
                acc = acc.shuffle(&sl);
            }
            denom = denom / C::inv_factorial(*m as u32);
        }
        acc.scale(&(C::one() / denom))
    };
    memo.insert(w.clone(), p.clone());
    p
}

/// Given the primal elements of one weight component, returns the dual family
/// with `<primal_u | dual_v> = δ_{u,v}`.
fn dual_component<C: Scalar>(
    weight: u32,
    primal: &BTreeMap<Word, NCPolynomial<C>>,
) -> Result<BTreeMap<Word, NCPolynomial<C>>> {
    // Sorted in word order; the pairing matrix is then upper triangular for
    // the families built here.
    let words: Vec<Word> = {
        let mut v = words_of_weight(weight);
        v.sort();
        v
    };
    let n = words.len();
    let mut a = Matrix::<C>::zeros(n);
    for (i, u) in words.iter().enumerate() {
        let pu = &primal[u];
        for (j, x) in words.iter().enumerate() {
            a[(i, j)] = pu.coeff(x);
        }
    }
    let inv = a.inverse().ok_or(Error::Singular(weight))?;
    // <primal_u | dual_v> = Σ_x A[u][x] B[v][x] = δ  =>  B = (A^{-1})^T.
    Ok(words
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let dual =
                NCPolynomial::from_terms(words.iter().enumerate().map(|(i, x)| (x.clone(), inv[(i, j)].clone())));
            (v.clone(), dual)
        })
        .collect())
}

/// `Σ_w`, dual to `Π` on the weight component of `w`.
pub fn sigma_basis<C: Scalar>(w: &Word) -> Result<NCPolynomial<C>> {
    dual_element(Family::Sigma, w)
}

/// `Σ^(S)_w`, dual to `Π^(S)`.
pub fn sigmas_basis<C: Scalar>(w: &Word, side: Side) -> Result<NCPolynomial<C>> {
    dual_element(side_family(side).partner(), w)
}

fn dual_element<C: Scalar>(family: Family, w: &Word) -> Result<NCPolynomial<C>> {
    if w.is_empty() {
        return Ok(NCPolynomial::one());
    }
    let mut component = GradedBasis::<C>::component(family.primal(), w.weight())?;
    Ok(component.dual.remove(w).expect("every word of the weight is indexed"))
}

/// Element of any family.
pub fn basis_element<C: Scalar>(family: Family, w: &Word) -> Result<NCPolynomial<C>> {
    match family {
        Family::P | Family::Pi | Family::PiL | Family::PiR => Ok(primal_element(family, w)),
        Family::S => Ok(s_basis(w)),
        Family::Sigma | Family::SigmaL | Family::SigmaR => dual_element(family, w),
    }
}

/// One dual pair, tabulated for every word of weight at most `max_weight`.
#[derive(Debug, Clone)]
pub struct GradedBasis<C> {
    pub family: Family,
    pub max_weight: u32,
    pub primal: BTreeMap<Word, NCPolynomial<C>>,
    pub dual: BTreeMap<Word, NCPolynomial<C>>,
}

impl<C: Scalar> GradedBasis<C> {
    /// `family` may name either member of the pair.
    pub fn new(family: Family, max_weight: u32) -> Result<Self> {
        let family = family.primal();
        let images = letter_images::<C>(family, max_weight.max(1));
        let letter = |n: u32| images[n as usize - 1].clone();
        let mut builder = PrimalBuilder::new(&letter);
        let mut primal = BTreeMap::new();
        let mut dual = BTreeMap::new();
        primal.insert(Word::empty(), NCPolynomial::one());
        dual.insert(Word::empty(), NCPolynomial::one());
        for n in 1..=max_weight {
            let comp: BTreeMap<Word, NCPolynomial<C>> =
                words_of_weight(n).into_iter().map(|w| (w.clone(), builder.get(&w))).collect();
            let comp_dual = if family == Family::P {
                let mut memo = HashMap::new();
                comp.keys().map(|w| (w.clone(), s_rec(w, &mut memo))).collect()
            } else {
                dual_component(n, &comp)?
            };
            primal.extend(comp);
            dual.extend(comp_dual);
        }
        Ok(GradedBasis { family, max_weight, primal, dual })
    }

    /// Only the weight-`n` component.
    fn component(family: Family, n: u32) -> Result<Self> {
        let images = letter_images::<C>(family, n.max(1));
        let letter = |k: u32| images[k as usize - 1].clone();
        let mut builder = PrimalBuilder::new(&letter);
        let primal: BTreeMap<Word, NCPolynomial<C>> =
            words_of_weight(n).into_iter().map(|w| (w.clone(), builder.get(&w))).collect();
        let dual = dual_component(n, &primal)?;
        Ok(GradedBasis { family, max_weight: n, primal, dual })
    }

    /// Pairing matrix `<primal_u | dual_v>` on the weight-`n` component, rows
    /// and columns in canonical word order.
    pub fn duality_matrix(&self, n: u32) -> Matrix<C> {
        let words = words_of_weight(n);
        let mut m = Matrix::zeros(words.len());
        for (i, u) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                m[(i, j)] = self.primal[u].pairing(&self.dual[v]);
            }
        }
        m
    }

    /// Whether every Lyndon-indexed primal element is primitive for the
    /// family's coproduct.
    pub fn lyndon_primitive(&self) -> bool {
        let kind = self.family.coproduct();
        self.primal
            .iter()
            .filter(|(w, _)| is_lyndon(w))
            .all(|(_, p)| coproduct(p, kind).expect("total on these kinds").is_primitive_image_of(p))
    }
}
