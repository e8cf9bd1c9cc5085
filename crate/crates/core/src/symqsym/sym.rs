//! `Sym`, the free associative algebra on `S_1, S_2, ...`, in the bases
//! `S^I`, `Λ^I`, `Ψ^I`, `Φ^I` and the ribbon basis.

use std::fmt;
use std::str::FromStr;

use super::element::{BasisTag, CompElement, CompTensor};
use super::qsym::{QSymBasis, QSymElement};
use crate::error::{Error, Result};
use crate::ncpoly::NCPolynomial;
use crate::scalar::Scalar;
use crate::words::{compositions, refinements, relative_stats, Composition, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymBasis {
    S,
    Lambda,
    Psi,
    Phi,
    Rib,
}

impl SymBasis {
    pub const ALL: [SymBasis; 5] = [SymBasis::S, SymBasis::Lambda, SymBasis::Psi, SymBasis::Phi, SymBasis::Rib];

    pub fn name(self) -> &'static str {
        match self {
            SymBasis::S => "S",
            SymBasis::Lambda => "Lambda",
            SymBasis::Psi => "Psi",
            SymBasis::Phi => "Phi",
            SymBasis::Rib => "Rib",
        }
    }

    /// Whether `B^I B^J = B^{IJ}`.
    pub fn is_multiplicative(self) -> bool {
        self != SymBasis::Rib
    }
}

impl fmt::Display for SymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "S" => SymBasis::S,
            "Lambda" | "Λ" => SymBasis::Lambda,
            "Psi" | "Ψ" => SymBasis::Psi,
            "Phi" | "Φ" => SymBasis::Phi,
            "Rib" | "R" => SymBasis::Rib,
            _ => return Err(Error::Parse(format!("unknown Sym basis {s:?}"))),
        })
    }
}

impl BasisTag for SymBasis {}

pub type SymElement<C> = CompElement<SymBasis, C>;
pub type SymTensor<C> = CompTensor<SymBasis, SymBasis, C>;

fn sign<C: Scalar>(exponent: i64) -> C {
    if exponent.rem_euclid(2) == 0 {
        C::one()
    } else {
        -C::one()
    }
}

fn ratio<C: Scalar>(num: u64, den: u64) -> C {
    C::from_int(num as i64) / C::from_int(den as i64)
}

/// `B^I` expanded in the `S` basis.
fn to_s<C: Scalar>(basis: SymBasis, i: &Composition) -> Vec<(Composition, C)> {
    let (l_i, w_i) = (i.len() as i64, i.weight() as i64);
    match basis {
        SymBasis::S => vec![(i.clone(), C::one())],
        SymBasis::Rib => i
            .coarsenings()
            .into_iter()
            .map(|j| {
                let c = sign(l_i - j.len() as i64);
                (j, c)
            })
            .collect(),
        _ => refinements(i)
            .into_iter()
            .map(|r| {
                let j = r.finer;
                let l_j = j.len() as i64;
                let rel = relative_stats(&j, i).expect("refinement of i");
                let c: C = match basis {
                    SymBasis::Lambda => sign(l_j - w_i),
                    SymBasis::Psi => sign::<C>(l_j - l_i) * C::from_int(rel.lp as i64),
                    SymBasis::Phi => sign::<C>(l_j - l_i) * ratio(i.part_product(), rel.l),
                    SymBasis::S | SymBasis::Rib => unreachable!(),
                };
                (j, c)
            })
            .collect(),
    }
}

/// `S^I` expanded in `basis`.
fn from_s<C: Scalar>(basis: SymBasis, i: &Composition) -> Vec<(Composition, C)> {
    let w_i = i.weight() as i64;
    match basis {
        SymBasis::S => vec![(i.clone(), C::one())],
        SymBasis::Rib => i.coarsenings().into_iter().map(|j| (j, C::one())).collect(),
        _ => refinements(i)
            .into_iter()
            .map(|r| {
                let j = r.finer;
                let rel = relative_stats(&j, i).expect("refinement of i");
                let c: C = match basis {
                    SymBasis::Lambda => sign(j.len() as i64 - w_i),
                    SymBasis::Psi => ratio(1, rel.pi_u),
                    SymBasis::Phi => ratio(1, rel.sp),
                    SymBasis::S | SymBasis::Rib => unreachable!(),
                };
                (j, c)
            })
            .collect(),
    }
}

impl<C: Scalar> SymElement<C> {
    /// Exact change of basis, routed through `S`.
    pub fn convert(&self, target: SymBasis) -> SymElement<C> {
        if self.basis() == target {
            return self.clone();
        }
        let in_s = if self.basis() == SymBasis::S {
            self.clone()
        } else {
            let b = self.basis();
            self.map_linear(SymBasis::S, |i| to_s(b, i))
        };
        if target == SymBasis::S {
            in_s
        } else {
            in_s.map_linear(target, |i| from_s(target, i))
        }
    }
}

impl<C: Scalar> SymTensor<C> {
    pub fn convert(&self, left: SymBasis, right: SymBasis) -> SymTensor<C> {
        let (l0, r0) = self.bases();
        let one = |b: SymBasis, i: &Composition| SymElement::<C>::basis_element(b, i.clone());
        self.map_sides(
            left,
            right,
            |i| one(l0, i).convert(left).terms().map(|(j, c)| (j.clone(), c.clone())).collect(),
            |i| one(r0, i).convert(right).terms().map(|(j, c)| (j.clone(), c.clone())).collect(),
        )
    }
}

/// Product in `Sym`, returned in the basis of `a`.
pub fn sym_product<C: Scalar>(a: &SymElement<C>, b: &SymElement<C>) -> SymElement<C> {
    let basis = a.basis();
    let work = if basis.is_multiplicative() { basis } else { SymBasis::S };
    let (a, b) = (a.convert(work), b.convert(work));
    let mut out = SymElement::zero(work);
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            out.add_term(i.concat(j), x.clone() * y.clone());
        }
    }
    out.convert(basis)
}

/// `Δ⋆ S_n = Σ_{i=0}^n S_i ⊗ S_{n-i}`, extended multiplicatively; the result
/// is expressed in the basis of `x` on both sides.
pub fn sym_coproduct<C: Scalar>(x: &SymElement<C>) -> SymTensor<C> {
    let mut out = SymTensor::zero(SymBasis::S, SymBasis::S);
    for (i, c) in x.convert(SymBasis::S).terms() {
        let mut acc: Vec<(Vec<u32>, Vec<u32>)> = vec![(vec![], vec![])];
        for &n in i.parts() {
            acc = acc
                .into_iter()
                .flat_map(|(l, r)| {
                    (0..=n).map(move |a| {
                        let (mut l, mut r) = (l.clone(), r.clone());
                        if a > 0 {
                            l.push(a);
                        }
                        if a < n {
                            r.push(n - a);
                        }
                        (l, r)
                    })
                })
                .collect();
        }
        for (l, r) in acc {
            out.add_term(Composition::new(&l), Composition::new(&r), c.clone());
        }
    }
    out.convert(x.basis(), x.basis())
}

/// `<S^I | M_J> = δ_{I,J}`.
pub fn pairing_ext<C: Scalar>(x: &SymElement<C>, y: &QSymElement<C>) -> C {
    let x = x.convert(SymBasis::S);
    let y = y.convert(QSymBasis::M);
    x.terms().fold(C::zero(), |acc, (i, a)| acc + a.clone() * y.coeff(i))
}

/// `𝒮(y_{i_1}...y_{i_k}) = S^{(i_1,...,i_k)}`, extended linearly.
pub fn encode_s<C: Scalar>(p: &NCPolynomial<C>) -> SymElement<C> {
    SymElement::from_terms(SymBasis::S, p.terms().map(|(w, c)| (w.to_composition(), c.clone())))
}

/// Inverse of [`encode_s`].
pub fn decode_s<C: Scalar>(x: &SymElement<C>) -> NCPolynomial<C> {
    NCPolynomial::from_terms(x.convert(SymBasis::S).terms().map(|(i, c)| (Word::from(i), c.clone())))
}

/// `Σ_{w(I)≤n} M_I ⊗ S^I = Σ_{w(J)≤n} F_J ⊗ Rib_J` after expanding both sides
/// in `M ⊗ S`.
pub fn cauchy_check<C: Scalar>(n: u32) -> bool {
    let mut lhs = CompTensor::zero(QSymBasis::M, SymBasis::S);
    let mut rhs_fr = CompTensor::zero(QSymBasis::F, SymBasis::Rib);
    for k in 0..=n {
        for i in compositions(k) {
            lhs.add_term(i.clone(), i.clone(), C::one());
            rhs_fr.add_term(i.clone(), i, C::one());
        }
    }
    let rhs = rhs_fr.map_sides(
        QSymBasis::M,
        SymBasis::S,
        |j| {
            QSymElement::<C>::basis_element(QSymBasis::F, j.clone())
                .convert(QSymBasis::M)
                .terms()
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect()
        },
        |j| {
            SymElement::<C>::basis_element(SymBasis::Rib, j.clone())
                .convert(SymBasis::S)
                .terms()
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect()
        },
    );
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{pi1, r_elements};
    use crate::ncpoly::{coproduct, CoproductKind};
    use crate::words::words_of_weight;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;
    type E = SymElement<Q>;

    fn c(p: &[u32]) -> Composition {
        Composition::new(p)
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn el(s: &str) -> E {
        s.parse().unwrap()
    }

    fn basis(b: SymBasis, p: &[u32]) -> E {
        E::basis_element(b, c(p))
    }

    #[test]
    fn conversion_examples() {
        assert_eq!(basis(SymBasis::Psi, &[2]).convert(SymBasis::S), el("2·S:(2) - S:(1,1)"));
        assert_eq!(basis(SymBasis::Lambda, &[2]).convert(SymBasis::S), el("S:(1,1) - S:(2)"));
        assert_eq!(basis(SymBasis::Phi, &[2]).convert(SymBasis::S), el("2·S:(2) - S:(1,1)"));
        assert_eq!(basis(SymBasis::S, &[2]).convert(SymBasis::Phi), el("1/2·Phi:(2) + 1/2·Phi:(1,1)"));
        assert_eq!(basis(SymBasis::S, &[1, 1]).convert(SymBasis::Rib), el("Rib:(1,1) + Rib:(2)"));
        assert_eq!(basis(SymBasis::Lambda, &[2]).convert(SymBasis::S).to_string(), "S:(1,1) - S:(2)");
    }

    #[test]
    fn degree_one_agrees() {
        let s1 = basis(SymBasis::S, &[1]);
        for b in SymBasis::ALL {
            assert_eq!(basis(b, &[1]).convert(SymBasis::S), s1, "{b}");
        }
    }

    #[test]
    fn round_trips_up_to_weight_six() {
        for n in 0..=6 {
            for i in compositions(n) {
                let s = basis(SymBasis::S, i.parts());
                for b in SymBasis::ALL {
                    let there = s.convert(b);
                    assert!(there.is_homogeneous(n));
                    assert_eq!(there.convert(SymBasis::S), s, "S -> {b} -> S at {i}");
                    let back = basis(b, i.parts()).convert(SymBasis::S).convert(b);
                    assert_eq!(back, basis(b, i.parts()), "{b} -> S -> {b} at {i}");
                }
            }
        }
    }

    /// `Ψ_n` from `dσ/dt = σ ψ`: `n S_n = Σ_{k=1}^n S_{n-k} Ψ_k`, and
    /// `Φ_n` from `σ = exp(Σ Φ_n t^n / n)`, checked against the conversion
    /// formulas through the encoding isomorphism with `k<Y>`.
    #[test]
    fn generators_match_generating_series() {
        for n in 1..=6u32 {
            let mut rhs = E::zero(SymBasis::S);
            for k in 1..=n {
                let prefix = if k == n { E::one(SymBasis::S) } else { basis(SymBasis::S, &[n - k]) };
                rhs += &sym_product(&prefix, &basis(SymBasis::Psi, &[k]).convert(SymBasis::S));
            }
            assert_eq!(rhs, basis(SymBasis::S, &[n]).scale(&Q::from_int(n as i64)));
        }
        // log σ(t) = Σ Φ_n t^n / n, read through 𝒮 as log 𝒴(t).
        let y: NCPolynomial<Q> = (1..=6).fold(NCPolynomial::one(), |acc, n| acc + NCPolynomial::letter(n));
        let log = y.log_trunc(6).unwrap();
        for n in 1..=6u32 {
            let phi = basis(SymBasis::Phi, &[n]).convert(SymBasis::S).scale(&q(1, n as i64));
            assert_eq!(encode_s(&log.component(n)), phi, "weight {n}");
        }
    }

    #[test]
    fn ribbon_matches_descents() {
        // S^I = Σ_{J coarser-or-equal} Rib_J, so Rib is the Möbius inverse.
        let r = basis(SymBasis::Rib, &[1, 2]).convert(SymBasis::S);
        assert_eq!(r, el("S:(1,2) - S:(3)"));
        let r = basis(SymBasis::Rib, &[1, 1, 1]).convert(SymBasis::S);
        assert_eq!(r, el("S:(1,1,1) - S:(1,2) - S:(2,1) + S:(3)"));
    }

    #[test]
    fn coproduct_examples() {
        let d = sym_coproduct(&basis(SymBasis::S, &[2]));
        assert_eq!(d.to_string(), "1⊗S:(2) + S:(1)⊗S:(1) + S:(2)⊗1");
        for b in [SymBasis::Psi, SymBasis::Phi] {
            for n in 1..=6 {
                let x = basis(b, &[n]);
                let mut expected = SymTensor::zero(b, b);
                expected.add_term(c(&[n]), Composition::empty(), Q::from_int(1));
                expected.add_term(Composition::empty(), c(&[n]), Q::from_int(1));
                assert_eq!(sym_coproduct(&x), expected, "{b}_{n}");
            }
        }
        assert!(sym_coproduct(&basis(SymBasis::S, &[2])).len() == 3);
    }

    #[test]
    fn coproduct_is_multiplicative() {
        for i in compositions(3) {
            for j in compositions(2) {
                let (a, b) = (basis(SymBasis::Lambda, i.parts()), basis(SymBasis::Lambda, j.parts()));
                let lhs = sym_coproduct(&sym_product(&a, &b));
                let (da, db) = (sym_coproduct(&a), sym_coproduct(&b));
                let mut rhs = SymTensor::zero(SymBasis::Lambda, SymBasis::Lambda);
                for (a1, a2, x) in da.terms() {
                    for (b1, b2, y) in db.terms() {
                        rhs.add_term(a1.concat(b1), a2.concat(b2), x.clone() * y.clone());
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn encoding_examples() {
        let w = Word::from_indices(&[2, 1]);
        assert_eq!(encode_s(&NCPolynomial::<Q>::word(w.clone())), basis(SymBasis::S, &[2, 1]));
        let r2 = &r_elements::<Q>(2)[1];
        assert_eq!(encode_s(r2), basis(SymBasis::Psi, &[2]).convert(SymBasis::S));
        let p = pi1(&NCPolynomial::<Q>::letter(2));
        assert_eq!(encode_s(&p), basis(SymBasis::Phi, &[2]).convert(SymBasis::S).scale(&q(1, 2)));
        assert_eq!(decode_s(&basis(SymBasis::Lambda, &[2])), "[1 1] - [2]".parse().unwrap());
    }

    #[test]
    fn encoding_is_hopf_morphism() {
        for n in 0..=4 {
            for u in words_of_weight(n) {
                let pu = NCPolynomial::<Q>::word(u.clone());
                let lhs = coproduct(&pu, CoproductKind::Stuffle).unwrap();
                let mut mapped = SymTensor::zero(SymBasis::S, SymBasis::S);
                for (a, b, x) in lhs.terms() {
                    mapped.add_term(a.to_composition(), b.to_composition(), x.clone());
                }
                assert_eq!(mapped, sym_coproduct(&encode_s(&pu)), "{u}");
                for m in 0..=4 - n {
                    for v in words_of_weight(m) {
                        let pv = NCPolynomial::<Q>::word(v.clone());
                        assert_eq!(sym_product(&encode_s(&pu), &encode_s(&pv)), encode_s(&(&pu * &pv)));
                    }
                }
            }
        }
    }

    #[test]
    fn cauchy_identity() {
        for n in 0..=5 {
            assert!(cauchy_check::<Q>(n), "weight {n}");
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(E::parse_with_default("(2)", Some(SymBasis::Lambda)).unwrap(), basis(SymBasis::Lambda, &[2]));
        assert_eq!(el("3 + S:(1)").to_string(), "3 + S:(1)");
        assert!("S:(1) + Psi:(1)".parse::<E>().is_err());
        assert!("(1)".parse::<E>().is_err());
        assert!("Q:(1)".parse::<E>().is_err());
        let x = el("1/2·Phi:(2) - Phi:(1,1)");
        assert_eq!(
            x.to_json(),
            r#"[{"basis":"Phi","composition":[1,1],"coeff":"-1/1"},{"basis":"Phi","composition":[2],"coeff":"1/2"}]"#
        );
        assert_eq!(E::from_json(&x.to_json(), SymBasis::S).unwrap(), x);
    }

    /// The per-pair `Λ ↔ Ψ` and `Λ ↔ Φ` expansions, written literally, compared
    /// with the conversions routed through `S`.
    mod direct_pairs {
        use super::*;

        fn mirror_stats(j: &Composition, i: &Composition) -> crate::words::RelativeStats {
            relative_stats(&j.mirror(), &i.mirror()).unwrap()
        }

        fn literal(i: &Composition, from: SymBasis, to: SymBasis) -> E {
            let (w_i, l_i) = (i.weight() as i64, i.len() as i64);
            let mut out = E::zero(to);
            for r in refinements(i) {
                let j = r.finer;
                let (w_j, l_j) = (j.weight() as i64, j.len() as i64);
                let rel = relative_stats(&j, i).unwrap();
                let c: Q = match (from, to) {
                    (SymBasis::Lambda, SymBasis::Psi) => {
                        sign::<Q>(w_j - l_i) / Q::from_int(mirror_stats(&j, i).pi_u as i64)
                    }
                    (SymBasis::Psi, SymBasis::Lambda) => {
                        sign::<Q>(w_i + l_j) * Q::from_int(mirror_stats(&j, i).lp as i64)
                    }
                    (SymBasis::Lambda, SymBasis::Phi) => sign::<Q>(w_j - l_i) / Q::from_int(rel.sp as i64),
                    (SymBasis::Phi, SymBasis::Lambda) => sign::<Q>(w_j - l_i) * ratio::<Q>(i.part_product(), rel.l),
                    _ => unreachable!(),
                };
                out.add_term(j, c);
            }
            out
        }

        fn disagreements(from: SymBasis, to: SymBasis) -> Vec<Composition> {
            (1..=4)
                .flat_map(compositions)
                .filter(|i| literal(i, from, to) != basis(from, i.parts()).convert(to))
                .collect()
        }

        #[test]
        fn psi_in_lambda_agrees() {
            assert!(disagreements(SymBasis::Psi, SymBasis::Lambda).is_empty());
        }

        #[test]
        fn lambda_in_psi_needs_length_dependent_sign() {
            // The literal sign (-1)^{w(J)-l(I)} is constant over J and fails
            // from weight 2 on; (-1)^{w(J)-l(J)} reproduces the S-routed value.
            let bad = disagreements(SymBasis::Lambda, SymBasis::Psi);
            assert!(bad.contains(&c(&[2])));
            for i in (1..=4).flat_map(compositions) {
                let mut fixed = E::zero(SymBasis::Psi);
                for r in refinements(&i) {
                    let j = r.finer;
                    let s = sign::<Q>(j.weight() as i64 - j.len() as i64);
                    fixed.add_term(j.clone(), s / Q::from_int(mirror_stats(&j, &i).pi_u as i64));
                }
                assert_eq!(fixed, basis(SymBasis::Lambda, i.parts()).convert(SymBasis::Psi), "{i}");
            }
        }

        #[test]
        fn lambda_phi_pair_needs_length_dependent_sign() {
            let bad = disagreements(SymBasis::Lambda, SymBasis::Phi);
            assert!(bad.contains(&c(&[2])));
            let bad = disagreements(SymBasis::Phi, SymBasis::Lambda);
            assert!(bad.contains(&c(&[2])));
            for i in (1..=4).flat_map(compositions) {
                let mut to_phi = E::zero(SymBasis::Phi);
                let mut to_lambda = E::zero(SymBasis::Lambda);
                for r in refinements(&i) {
                    let j = r.finer;
                    let rel = relative_stats(&j, &i).unwrap();
                    let s = sign::<Q>(j.weight() as i64 - j.len() as i64);
                    to_phi.add_term(j.clone(), s.clone() / Q::from_int(rel.sp as i64));
                    let s = sign::<Q>(i.weight() as i64 - j.len() as i64);
                    to_lambda.add_term(j.clone(), s * ratio::<Q>(i.part_product(), rel.l));
                }
                assert_eq!(to_phi, basis(SymBasis::Lambda, i.parts()).convert(SymBasis::Phi), "{i}");
                assert_eq!(to_lambda, basis(SymBasis::Phi, i.parts()).convert(SymBasis::Lambda), "{i}");
            }
        }
    }

    fn sym_element() -> impl Strategy<Value = E> {
        let b = prop::sample::select(SymBasis::ALL.to_vec());
        let terms = prop::collection::vec((prop::collection::vec(1u32..4, 0..4), -4i64..5, 1i64..4), 0..4);
        (b, terms).prop_map(|(b, ts)| E::from_terms(b, ts.into_iter().map(|(p, n, d)| (Composition::new(&p), q(n, d)))))
    }

    proptest! {
        #[test]
        fn conversion_is_linear_and_invertible(x in sym_element(), y in sym_element()) {
            let y = y.convert(x.basis());
            for b in SymBasis::ALL {
                let sum = (x.clone() + y.clone()).convert(b);
                prop_assert_eq!(sum.clone(), x.convert(b) + y.convert(b));
                prop_assert_eq!(sum.convert(x.basis()), x.clone() + y.clone());
            }
        }

        #[test]
        fn text_roundtrip(x in sym_element()) {
            let s = x.to_string();
            prop_assert_eq!(E::parse_with_default(&s, Some(x.basis())).unwrap(), x.clone());
            prop_assert_eq!(E::from_json(&x.to_json(), x.basis()).unwrap(), x);
        }

        #[test]
        fn conversion_preserves_weight(p in prop::collection::vec(1u32..4, 0..4)) {
            let i = Composition::new(&p);
            for from in SymBasis::ALL {
                for to in SymBasis::ALL {
                    prop_assert!(basis(from, &p).convert(to).is_homogeneous(i.weight()));
                }
            }
        }
    }
}
