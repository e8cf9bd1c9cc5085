//! `QSym` in the monomial basis `M_I` and the fundamental basis `F_J`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::element::{BasisTag, CompElement, CompTensor};
use crate::error::{Error, Result};
use crate::ncpoly::NCPolynomial;
use crate::scalar::Scalar;
use crate::words::{Composition, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QSymBasis {
    M,
    F,
}

impl fmt::Display for QSymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QSymBasis::M => "M",
            QSymBasis::F => "F",
        })
    }
}

impl FromStr for QSymBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(QSymBasis::M),
            "F" => Ok(QSymBasis::F),
            _ => Err(Error::Parse(format!("unknown QSym basis {s:?}"))),
        }
    }
}

impl BasisTag for QSymBasis {}

pub type QSymElement<C> = CompElement<QSymBasis, C>;
pub type QSymTensor<C> = CompTensor<QSymBasis, QSymBasis, C>;

impl<C: Scalar> QSymElement<C> {
    /// `F_J = Σ_{I ⪰ J} M_I` and its inverse
    /// `M_J = Σ_{I ⪰ J} (-1)^{l(I)-l(J)} F_I`.
    pub fn convert(&self, target: QSymBasis) -> QSymElement<C> {
        match (self.basis(), target) {
            (a, b) if a == b => self.clone(),
            (QSymBasis::F, QSymBasis::M) => {
                self.map_linear(target, |j| j.finer().into_iter().map(|i| (i, C::one())).collect())
            }
            _ => self.map_linear(target, |j| {
                j.finer()
                    .into_iter()
                    .map(|i| {
                        let c = if (i.len() - j.len()) % 2 == 0 { C::one() } else { -C::one() };
                        (i, c)
                    })
                    .collect()
            }),
        }
    }
}

impl<C: Scalar> QSymTensor<C> {
    pub fn convert(&self, left: QSymBasis, right: QSymBasis) -> QSymTensor<C> {
        let (l0, r0) = self.bases();
        let one = |b: QSymBasis, i: &Composition, t: QSymBasis| -> Vec<(Composition, C)> {
            QSymElement::<C>::basis_element(b, i.clone())
                .convert(t)
                .terms()
                .map(|(j, c)| (j.clone(), c.clone()))
                .collect()
        };
        self.map_sides(left, right, |i| one(l0, i, left), |i| one(r0, i, right))
    }
}

pub(crate) type Memo = HashMap<(Vec<u32>, Vec<u32>), Vec<(Vec<u32>, i64)>>;

/// `M_I ⋆ M_J` by the first-part recursion
/// `M_{(i,I')} ⋆ M_{(j,J')} = M_i(M_{I'} ⋆ M_J) + M_j(M_I ⋆ M_{J'}) + M_{i+j}(M_{I'} ⋆ M_{J'})`.
/// Coefficients are nonnegative integers.
pub(crate) fn star(i: &[u32], j: &[u32], memo: &mut Memo) -> Vec<(Vec<u32>, i64)> {
    if i.is_empty() {
        return vec![(j.to_vec(), 1)];
    }
    if j.is_empty() {
        return vec![(i.to_vec(), 1)];
    }
    let key = (i.to_vec(), j.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut acc: std::collections::BTreeMap<Vec<u32>, i64> = Default::default();
    let mut push = |head: u32, tail: Vec<(Vec<u32>, i64)>| {
        for (mut w, c) in tail {
            w.insert(0, head);
            *acc.entry(w).or_insert(0) += c;
        }
    };
    push(i[0], star(&i[1..], j, memo));
    push(j[0], star(i, &j[1..], memo));
    push(i[0] + j[0], star(&i[1..], &j[1..], memo));
    let out: Vec<_> = acc.into_iter().collect();
    memo.insert(key, out.clone());
    out
}

/// Commutative product `⋆` of `QSym`, returned in the basis of `a`.
pub fn qsym_product<C: Scalar>(a: &QSymElement<C>, b: &QSymElement<C>) -> QSymElement<C> {
    let (am, bm) = (a.convert(QSymBasis::M), b.convert(QSymBasis::M));
    let mut memo = Memo::new();
    let mut out = QSymElement::zero(QSymBasis::M);
    for (i, x) in am.terms() {
        for (j, y) in bm.terms() {
            let xy = x.clone() * y.clone();
            for (k, c) in star(i.parts(), j.parts(), &mut memo) {
                out.add_term(Composition::new(&k), xy.clone() * C::from_int(c));
            }
        }
    }
    out.convert(a.basis())
}

/// `Δ•(M_I) = Σ_{I_1 I_2 = I} M_{I_1} ⊗ M_{I_2}`, returned in the basis of `x`.
pub fn qsym_coproduct<C: Scalar>(x: &QSymElement<C>) -> QSymTensor<C> {
    let mut out = QSymTensor::zero(QSymBasis::M, QSymBasis::M);
    for (i, c) in x.convert(QSymBasis::M).terms() {
        let p = i.parts();
        for k in 0..=p.len() {
            out.add_term(Composition::new(&p[..k]), Composition::new(&p[k..]), c.clone());
        }
    }
    out.convert(x.basis(), x.basis())
}

/// `ℳ(y_{i_1}...y_{i_k}) = M_{(i_1,...,i_k)}`, extended linearly.
pub fn encode_m<C: Scalar>(p: &NCPolynomial<C>) -> QSymElement<C> {
    QSymElement::from_terms(QSymBasis::M, p.terms().map(|(w, c)| (w.to_composition(), c.clone())))
}

/// Inverse of [`encode_m`].
pub fn decode_m<C: Scalar>(x: &QSymElement<C>) -> NCPolynomial<C> {
    NCPolynomial::from_terms(x.convert(QSymBasis::M).terms().map(|(i, c)| (Word::from(i), c.clone())))
}
