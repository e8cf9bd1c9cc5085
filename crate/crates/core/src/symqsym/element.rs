use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text::{parse_combination, write_combination};
use crate::words::Composition;

/// Name of a composition-indexed basis (`S`, `Lambda`, `M`, ...).
pub trait BasisTag: Copy + Eq + Ord + Debug + Display + FromStr<Err = Error> + Send + Sync + 'static {}

/// Finite combination `Σ c_I B_I` in one basis `B`. `B_∅ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompElement<B, C> {
    basis: B,
    terms: BTreeMap<Composition, C>,
}

impl<B: BasisTag, C: Scalar> CompElement<B, C> {
    pub fn zero(basis: B) -> Self {
        CompElement { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: B) -> Self {
        Self::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: B, i: Composition) -> Self {
        Self::monomial(basis, i, C::one())
    }

    pub fn monomial(basis: B, i: Composition, c: C) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(i, c);
        e
    }

    pub fn from_terms(basis: B, terms: impl IntoIterator<Item = (Composition, C)>) -> Self {
        let mut e = Self::zero(basis);
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn basis(&self) -> B {
        self.basis
    }

    pub fn add_term(&mut self, i: Composition, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c);
            }
        }
    }

    pub fn coeff(&self, i: &Composition) -> C {
        self.terms.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &C)> {
        self.terms.iter()
    }

    /// Terms sorted by weight, then lexicographically on parts.
    pub fn canonical_terms(&self) -> Vec<(&Composition, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.canonical_cmp(b.0));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self, weight: u32) -> bool {
        self.terms.keys().all(|i| i.weight() == weight)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut e = Self::zero(self.basis);
        for (i, x) in &self.terms {
            e.add_term(i.clone(), x.clone() * c.clone());
        }
        e
    }

    /// Replaces each `B_I` by `f(I)` (given in basis `target`).
    pub(crate) fn map_linear<B2: BasisTag>(
        &self,
        target: B2,
        mut f: impl FnMut(&Composition) -> Vec<(Composition, C)>,
    ) -> CompElement<B2, C> {
        let mut e = CompElement::zero(target);
        for (i, c) in &self.terms {
            for (j, x) in f(i) {
                e.add_term(j, x * c.clone());
            }
        }
        e
    }

    fn check_basis(&self, other: &Self) {
        assert_eq!(self.basis, other.basis, "adding elements expressed in different bases");
    }

    pub fn to_json_terms(&self) -> Vec<JsonCompTerm> {
        self.canonical_terms()
            .into_iter()
            .map(|(i, c)| JsonCompTerm {
                basis: self.basis.to_string(),
                composition: i.parts().to_vec(),
                coeff: c.to_fraction_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("plain data always serializes")
    }

    /// Inverse of [`to_json`](Self::to_json). The basis of the empty list is
    /// `default`.
    pub fn from_json(s: &str, default: B) -> Result<Self> {
        let terms: Vec<JsonCompTerm> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut basis = None;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let b: B = t.basis.parse()?;
            if basis.is_some_and(|x| x != b) {
                return Err(Error::Parse("terms in different bases".into()));
            }
            basis = Some(b);
            let c = C::parse_fraction(&t.coeff).ok_or_else(|| Error::Parse(format!("bad coeff {:?}", t.coeff)))?;
            parsed.push((Composition::try_new(t.composition)?, c));
        }
        Ok(Self::from_terms(basis.unwrap_or(default), parsed))
    }

    /// Parses `S:(1,1) - S:(2)`, `2 + 1/2·Psi:(1,2)`, or with `default` set,
    /// bare keys such as `(2) - 3·(1,1)`.
    pub fn parse_with_default(s: &str, default: Option<B>) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return default.map(Self::zero).ok_or_else(|| Error::Parse("basis of 0 is unknown".into()));
        }
        let mut basis: Option<B> = None;
        let mut parsed = Vec::new();
        for (c, key) in parse_combination::<C>(s)? {
            let i = match key {
                None => Composition::empty(),
                Some(k) => {
                    let (b, comp) = match k.split_once(':') {
                        Some((b, comp)) => (Some(b.trim().parse::<B>()?), comp.trim()),
                        None => (None, k.as_str()),
                    };
                    if let Some(b) = b {
                        if basis.is_some_and(|x| x != b) {
                            return Err(Error::Parse(format!("terms in different bases in {s:?}")));
                        }
                        basis = Some(b);
                    }
                    if !comp.starts_with('(') {
                        return Err(Error::Parse(format!("expected (composition), got {comp:?}")));
                    }
                    comp.parse::<Composition>()?
                }
            };
            parsed.push((i, c));
        }
        let basis = match (basis, default) {
            (Some(b), _) | (None, Some(b)) => b,
            (None, None) => return Err(Error::Parse(format!("no basis named in {s:?}"))),
        };
        Ok(Self::from_terms(basis, parsed))
    }
}

/// JSON form of one term: `{"basis": "S", "composition": [1, 2], "coeff": "1/2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCompTerm {
    pub basis: String,
    pub composition: Vec<u32>,
    pub coeff: String,
}

impl<B: BasisTag, C: Scalar> Display for CompElement<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.basis;
        write_combination(f, self.canonical_terms(), |i: &Composition| (!i.is_empty()).then(|| format!("{basis}:{i}")))
    }
}

impl<B: BasisTag, C: Scalar> FromStr for CompElement<B, C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_default(s, None)
    }
}

impl<B: BasisTag, C: Scalar> AddAssign<&CompElement<B, C>> for CompElement<B, C> {
    fn add_assign(&mut self, rhs: &CompElement<B, C>) {
        self.check_basis(rhs);
        for (i, c) in &rhs.terms {
            self.add_term(i.clone(), c.clone());
        }
    }
}

impl<B: BasisTag, C: Scalar> SubAssign<&CompElement<B, C>> for CompElement<B, C> {
    fn sub_assign(&mut self, rhs: &CompElement<B, C>) {
        self.check_basis(rhs);
        for (i, c) in &rhs.terms {
            self.add_term(i.clone(), -c.clone());
        }
    }
}

impl<B: BasisTag, C: Scalar> Add for CompElement<B, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<B: BasisTag, C: Scalar> Sub for CompElement<B, C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<B: BasisTag, C: Scalar> Neg for CompElement<B, C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-C::one())
    }
}

/// Element of `A ⊗ B` for two composition-indexed bases.
#[derive(Debug, Clone, PartialEq)]
pub struct CompTensor<L, R, C> {
    left: L,
    right: R,
    terms: BTreeMap<(Composition, Composition), C>,
}

impl<L: BasisTag, R: BasisTag, C: Scalar> CompTensor<L, R, C> {
    pub fn zero(left: L, right: R) -> Self {
        CompTensor { left, right, terms: BTreeMap::new() }
    }

    pub fn one(left: L, right: R) -> Self {
        let mut t = Self::zero(left, right);
        t.add_term(Composition::empty(), Composition::empty(), C::one());
        t
    }

    pub fn tensor(a: &CompElement<L, C>, b: &CompElement<R, C>) -> Self {
        let mut t = Self::zero(a.basis(), b.basis());
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                t.add_term(i.clone(), j.clone(), x.clone() * y.clone());
            }
        }
        t
    }

    pub fn bases(&self) -> (L, R) {
        (self.left, self.right)
    }

    pub fn add_term(&mut self, i: Composition, j: Composition, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
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

    pub fn coeff(&self, i: &Composition, j: &Composition) -> C {
        self.terms.get(&(i.clone(), j.clone())).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Composition, &C)> {
        self.terms.iter().map(|((i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut t = Self::zero(self.left, self.right);
        for ((i, j), x) in &self.terms {
            t.add_term(i.clone(), j.clone(), x.clone() * c.clone());
        }
        t
    }

    /// Applies a linear map to each side.
    pub(crate) fn map_sides<L2: BasisTag, R2: BasisTag>(
        &self,
        left: L2,
        right: R2,
        mut f: impl FnMut(&Composition) -> Vec<(Composition, C)>,
        mut g: impl FnMut(&Composition) -> Vec<(Composition, C)>,
    ) -> CompTensor<L2, R2, C> {
        let mut t = CompTensor::zero(left, right);
        for ((i, j), c) in &self.terms {
            let gj = g(j);
            for (a, x) in f(i) {
                for (b, y) in &gj {
                    t.add_term(a.clone(), b.clone(), c.clone() * x.clone() * y.clone());
                }
            }
        }
        t
    }

    /// Keeps terms with both sides of weight at most `n`.
    pub fn truncate(&self, n: u32) -> Self {
        let mut t = Self::zero(self.left, self.right);
        for ((i, j), c) in &self.terms {
            if i.weight() <= n && j.weight() <= n {
                t.add_term(i.clone(), j.clone(), c.clone());
            }
        }
        t
    }
}

impl<L: BasisTag, R: BasisTag, C: Scalar> AddAssign<&CompTensor<L, R, C>> for CompTensor<L, R, C> {
    fn add_assign(&mut self, rhs: &CompTensor<L, R, C>) {
        assert_eq!((self.left, self.right), (rhs.left, rhs.right), "adding tensors in different bases");
        for ((i, j), c) in &rhs.terms {
            self.add_term(i.clone(), j.clone(), c.clone());
        }
    }
}

impl<L: BasisTag, R: BasisTag, C: Scalar> Add for CompTensor<L, R, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<L: BasisTag, R: BasisTag, C: Scalar> Sub for CompTensor<L, R, C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self += &rhs.scale(&-C::one());
        self
    }
}

impl<L: BasisTag, R: BasisTag, C: Scalar> Display for CompTensor<L, R, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lb, rb) = (self.left, self.right);
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let (i1, j1) = a.0;
            let (i2, j2) = b.0;
            (i1.weight() + j1.weight())
                .cmp(&(i2.weight() + j2.weight()))
                .then_with(|| i1.canonical_cmp(i2))
                .then_with(|| j1.canonical_cmp(j2))
        });
        let side = |b: &dyn Display, i: &Composition| if i.is_empty() { "1".to_string() } else { format!("{b}:{i}") };
        write_combination(f, v, |(i, j): &(Composition, Composition)| {
            Some(format!("{}⊗{}", side(&lb, i), side(&rb, j)))
        })
    }
}
