//! The invariant suite behind `stuffle verify`: every module's identities,
//! exhaustively up to a weight bound, plus a seeded random sweep of the
//! product laws.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bases::{
    ad_formula_holds, derivative_identity_holds, higher_series, l_elements, pi1, r_elements, y_in_r_expansion,
    y_inverse_series, y_series, Family, GradedBasis, TSeries,
};
use crate::factorization::{character_checks, verify_factorization, Pair};
use crate::linalg::Matrix;
use crate::lyndon::{is_lyndon, lyndon_factorization, lyndon_of_weight, necklace_count, standard_factorization};
use crate::ncpoly::{coproduct, words_product, CoproductKind, NCPolynomial, ProductKind};
use crate::scalar::Scalar;
use crate::symqsym::{
    cauchy_check, encode_m, encode_s, hall_littlewood_report, pairing_ext, qsym_product, sym_coproduct, QSymBasis,
    QSymElement, SymBasis, SymElement, SymTensor,
};
use crate::words::{compositions, relative_stats, words_up_to, Composition, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn new(check: &str, ok: bool, detail: impl Into<String>) -> Self {
        CheckResult { check: check.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_weight: u32,
    pub q_degree: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_weight: 5, q_degree: 8, seed: 0 }
    }
}

/// Runs every check in a fixed order.
pub fn run_suite<C: Scalar>(cfg: SuiteConfig) -> Vec<CheckResult> {
    let n = cfg.max_weight;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = vec![
        words_statistics(n),
        refinement_order(n),
        product_laws::<C>(n, &mut rng),
        adjunctions::<C>(n),
        coalgebra_laws::<C>(n),
        lyndon_counts(n),
        lyndon_factorizations(n),
        pi1_checks::<C>(n),
        duality::<C>(n),
        primitivity::<C>(n),
        series_identities::<C>(n),
        sym_round_trips::<C>(n),
        qsym_star::<C>(n),
        sym_qsym_pairing::<C>(n),
        encodings::<C>(n),
        CheckResult::new("symqsym.cauchy", cauchy_check::<C>(n), format!("Σ M_I⊗S^I = Σ F_J⊗Rib_J to weight {n}")),
        hall_littlewood::<C>(n, cfg.q_degree),
    ];
    out.extend(factorizations::<C>(n));
    out.push(characters::<C>(n));
    out
}

fn failures<T: fmt::Display>(label: &str, bad: &[T]) -> String {
    match bad.first() {
        None => label.to_string(),
        Some(first) => format!("{label}: {} failures, first {first}", bad.len()),
    }
}

fn words_statistics(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for k in 0..=n {
        let cs = compositions(k);
        if cs.len() != if k == 0 { 1 } else { 1 << (k - 1) } {
            bad.push(format!("count at weight {k}"));
        }
        for i in cs {
            let s = i.stats();
            let fact: u64 = (1..=s.l as u64).product();
            if s.sp != s.pi * fact
                || s.mirror.mirror() != i
                || s.mirror.weight() != s.w
                || s.lp.is_none() != i.is_empty()
            {
                bad.push(i.to_string());
            }
        }
    }
    CheckResult::new("words.statistics", bad.is_empty(), failures(&format!("compositions to weight {n}"), &bad))
}

fn refinement_order(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for k in 0..=n {
        for i in compositions(k) {
            for j in i.finer() {
                let ok = j.is_finer_than(&i)
                    && j.coarsenings().contains(&i)
                    && relative_stats(&j, &i).is_ok_and(|r| {
                        let blocks = j.blocks(&i).unwrap();
                        r.sp == blocks.iter().map(|b| b.sp()).product::<u64>()
                    });
                if !ok {
                    bad.push(format!("{j} ⪰ {i}"));
                }
            }
        }
    }
    CheckResult::new("words.refinement", bad.is_empty(), failures("refinements and coarsenings agree", &bad))
}

fn random_poly<C: Scalar>(rng: &mut impl Rng, max_weight: u32) -> NCPolynomial<C> {
    let mut p = NCPolynomial::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut parts = Vec::new();
        let target = rng.gen_range(0..=max_weight);
        let mut w = 0;
        while w < target {
            let x = rng.gen_range(1..=target - w);
            parts.push(x);
            w += x;
        }
        p.add_term(Word::from_indices(&parts), C::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
    }
    p
}

fn product_laws<C: Scalar>(n: u32, rng: &mut impl Rng) -> CheckResult {
    let third = (n / 3).max(1);
    let mut bad = Vec::new();
    for trial in 0..24 {
        let (a, b, c) = (random_poly::<C>(rng, third), random_poly::<C>(rng, third), random_poly::<C>(rng, third));
        for kind in [ProductKind::Concat, ProductKind::Shuffle, ProductKind::Stuffle] {
            let assoc = a.product(&b, kind).product(&c, kind) == a.product(&b.product(&c, kind), kind);
            let unit = a.product(&NCPolynomial::one(), kind) == a;
            let comm = kind == ProductKind::Concat || a.product(&b, kind) == b.product(&a, kind);
            if !(assoc && unit && comm) {
                bad.push(format!("trial {trial} {kind:?}"));
            }
        }
    }
    CheckResult::new("ncpoly.products", bad.is_empty(), failures("24 random triples", &bad))
}

/// `<Δ w | u ⊗ v> = <w | u ⋆ v>` for every word `w` of weight at most `n`.
fn adjunctions<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    type WordProduct = fn(&Word, &Word) -> BTreeMap<Word, u64>;
    let kinds: [(CoproductKind, WordProduct); 3] = [
        (CoproductKind::Deconcat, |u, v| BTreeMap::from([(u.concat(v), 1)])),
        (CoproductKind::Shuffle, words_product::shuffle),
        (CoproductKind::Stuffle, words_product::stuffle),
    ];
    let words = words_up_to(n);
    for (kind, product) in kinds {
        let mut expected: BTreeMap<Word, BTreeMap<(Word, Word), u64>> = BTreeMap::new();
        for u in &words {
            for v in words.iter().filter(|v| u.weight() + v.weight() <= n) {
                for (w, m) in product(u, v) {
                    expected.entry(w).or_default().insert((u.clone(), v.clone()), m);
                }
            }
        }
        for w in &words {
            let d = coproduct(&NCPolynomial::<C>::word(w.clone()), kind).expect("total");
            let lhs: BTreeMap<(Word, Word), C> =
                d.terms().map(|(a, b, c)| ((a.clone(), b.clone()), c.clone())).collect();
            let rhs: BTreeMap<(Word, Word), C> =
                expected.get(w).into_iter().flatten().map(|(k, &m)| (k.clone(), C::from_int(m as i64))).collect();
            if lhs != rhs {
                bad.push(format!("{kind:?} at [{w}]"));
            }
        }
    }
    CheckResult::new("ncpoly.adjunction", bad.is_empty(), failures(&format!("Δ vs product to weight {n}"), &bad))
}

fn coalgebra_laws<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for kind in [CoproductKind::Deconcat, CoproductKind::Shuffle, CoproductKind::Stuffle] {
        for w in words_up_to(n.min(5)) {
            let p = NCPolynomial::<C>::word(w.clone());
            let d = coproduct(&p, kind).expect("total");
            if d.counit_left() != p || d.counit_right() != p {
                bad.push(format!("{kind:?} counit at [{w}]"));
            }
            // (Δ⊗id)Δ and (id⊗Δ)Δ as triple tensors.
            let mut l3: BTreeMap<(Word, Word, Word), C> = BTreeMap::new();
            let mut r3: BTreeMap<(Word, Word, Word), C> = BTreeMap::new();
            for (a, b, c) in d.terms() {
                for (a1, a2, x) in coproduct(&NCPolynomial::<C>::word(a.clone()), kind).unwrap().terms() {
                    let e = l3.entry((a1.clone(), a2.clone(), b.clone())).or_insert_with(C::zero);
                    *e = e.clone() + c.clone() * x.clone();
                }
                for (b1, b2, x) in coproduct(&NCPolynomial::<C>::word(b.clone()), kind).unwrap().terms() {
                    let e = r3.entry((a.clone(), b1.clone(), b2.clone())).or_insert_with(C::zero);
                    *e = e.clone() + c.clone() * x.clone();
                }
            }
            l3.retain(|_, v| !v.is_zero());
            r3.retain(|_, v| !v.is_zero());
            if l3 != r3 {
                bad.push(format!("{kind:?} coassociativity at [{w}]"));
            }
        }
    }
    CheckResult::new(
        "ncpoly.coalgebra",
        bad.is_empty(),
        failures(&format!("counit and coassociativity to weight {}", n.min(5)), &bad),
    )
}

fn lyndon_counts(n: u32) -> CheckResult {
    let counts: Vec<usize> = (1..=n).map(|k| lyndon_of_weight(k).len()).collect();
    let ok = (1..=n).all(|k| counts[k as usize - 1] as u64 == necklace_count(k));
    CheckResult::new("lyndon.counts", ok, format!("{counts:?}"))
}

fn lyndon_factorizations(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for w in words_up_to(n).into_iter().skip(1) {
        let f = lyndon_factorization(&w).expect("nonempty");
        let decreasing = f.factors.windows(2).all(|p| p[0].0 > p[1].0);
        if f.reconstruct() != w || !decreasing || !f.factors.iter().all(|(l, _)| is_lyndon(l)) {
            bad.push(w.to_string());
        }
        if is_lyndon(&w) && w.len() > 1 {
            let (s, r) = standard_factorization(&w).expect("Lyndon");
            if !(s < w && w < r && is_lyndon(&s) && is_lyndon(&r)) {
                bad.push(format!("standard {w}"));
            }
        }
    }
    CheckResult::new("lyndon.factorization", bad.is_empty(), failures(&format!("words to weight {n}"), &bad))
}

fn pi1_checks<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for k in 1..=n {
        let mut closed = NCPolynomial::zero();
        for j in compositions(k) {
            let l = j.len() as i64;
            let sign = if l % 2 == 1 { 1 } else { -1 };
            closed.add_term(j.to_word(), C::from_ratio(sign, l));
        }
        if pi1(&NCPolynomial::letter(k)) != closed {
            bad.push(format!("π₁(y_{k})"));
        }
    }
    for w in words_up_to(n.min(5)).into_iter().skip(1) {
        if !crate::bases::pi1_inverse_check::<C>(&w) {
            bad.push(format!("inverse at [{w}]"));
        }
    }
    CheckResult::new("bases.pi1", bad.is_empty(), failures("letter closed form and inverse expansion", &bad))
}

fn duality<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for family in [Family::P, Family::Pi, Family::PiL, Family::PiR] {
        match GradedBasis::<C>::new(family, n) {
            Ok(g) => {
                for k in 1..=n {
                    let m = g.duality_matrix(k);
                    if m != Matrix::identity(m.dim()) {
                        bad.push(format!("{family} weight {k}"));
                    }
                }
            }
            Err(e) => bad.push(format!("{family}: {e}")),
        }
    }
    CheckResult::new("bases.duality", bad.is_empty(), failures(&format!("four dual pairs to weight {n}"), &bad))
}

fn primitivity<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    let prim = |p: &NCPolynomial<C>| coproduct(p, CoproductKind::Stuffle).unwrap().is_primitive_image_of(p);
    let (ls, rs) = (l_elements::<C>(n), r_elements::<C>(n));
    for k in 1..=n {
        if !prim(&pi1(&NCPolynomial::letter(k))) {
            bad.push(format!("π₁(y_{k})"));
        }
        if !prim(&ls[k as usize - 1]) {
            bad.push(format!("L_{k}"));
        }
        if !prim(&rs[k as usize - 1]) {
            bad.push(format!("R_{k}"));
        }
        for b in [SymBasis::Psi, SymBasis::Phi] {
            let x = SymElement::<C>::basis_element(b, Composition::new(&[k]));
            let mut expected = SymTensor::zero(b, b);
            expected.add_term(Composition::new(&[k]), Composition::empty(), C::one());
            expected.add_term(Composition::empty(), Composition::new(&[k]), C::one());
            if sym_coproduct(&x) != expected {
                bad.push(format!("Δ⋆ {b}_{k}"));
            }
        }
    }
    for family in [Family::P, Family::Pi, Family::PiL, Family::PiR] {
        if !GradedBasis::<C>::new(family, n).is_ok_and(|g| g.lyndon_primitive()) {
            bad.push(format!("{family} on Lyndon words"));
        }
    }
    CheckResult::new("bases.primitivity", bad.is_empty(), failures(&format!("to weight {n}"), &bad))
}

fn series_identities<C: Scalar>(n: u32) -> CheckResult {
    let d = n as usize;
    let mut bad = Vec::new();
    let one = TSeries::<C>::one(d);
    if y_series::<C>(d).mul(&y_inverse_series(d)) != one || y_inverse_series::<C>(d).mul(&y_series(d)) != one {
        bad.push("Y Y⁻¹".to_string());
    }
    for k in 1..=n {
        if !derivative_identity_holds::<C>(k) {
            bad.push(format!("n y_n at {k}"));
        }
        if !y_in_r_expansion::<C>(k) {
            bad.push(format!("y_{k} in R"));
        }
    }
    for k in 1..=3 {
        if let Err(e) = higher_series::<C>(k, d) {
            bad.push(e.to_string());
        }
        if !ad_formula_holds::<C>(k, d).unwrap_or(false) {
            bad.push(format!("ad formula k={k}"));
        }
    }
    CheckResult::new("bases.series", bad.is_empty(), failures(&format!("mod t^{}", d + 1), &bad))
}

fn sym_round_trips<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    let s1 = SymElement::<C>::basis_element(SymBasis::S, Composition::new(&[1]));
    for b in SymBasis::ALL {
        if n >= 1 && SymElement::<C>::basis_element(b, Composition::new(&[1])).convert(SymBasis::S) != s1 {
            bad.push(format!("{b}_1 ≠ S_1"));
        }
        for k in 0..=n {
            for i in compositions(k) {
                let s = SymElement::<C>::basis_element(SymBasis::S, i.clone());
                let there = s.convert(b);
                if there.convert(SymBasis::S) != s || !there.is_homogeneous(k) {
                    bad.push(format!("S→{b}→S at {i}"));
                }
            }
        }
    }
    CheckResult::new("symqsym.conversions", bad.is_empty(), failures(&format!("round trips to weight {n}"), &bad))
}

fn qsym_star<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for u in words_up_to(n) {
        for v in words_up_to(n - u.weight()) {
            let (pu, pv) = (NCPolynomial::<C>::word(u.clone()), NCPolynomial::<C>::word(v.clone()));
            if encode_m(&pu.stuffle(&pv)) != qsym_product(&encode_m(&pu), &encode_m(&pv)) {
                bad.push(format!("[{u}] [{v}]"));
            }
        }
    }
    CheckResult::new("symqsym.star", bad.is_empty(), failures("ℳ(u ⊔⊔ v) = ℳ(u) ⋆ ℳ(v)", &bad))
}

fn sym_qsym_pairing<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    for k in 0..=n {
        for i in compositions(k) {
            let sk = SymElement::<C>::basis_element(SymBasis::S, i.clone());
            let rib = SymElement::<C>::basis_element(SymBasis::Rib, i.clone());
            let dk = sym_coproduct(&sk);
            for j in compositions(k) {
                let f = QSymElement::<C>::basis_element(QSymBasis::F, j.clone());
                let expected = if i == j { C::one() } else { C::zero() };
                if pairing_ext(&rib, &f) != expected {
                    bad.push(format!("<Rib_{i}, F_{j}>"));
                }
            }
            for a in 0..=k {
                for x in compositions(a) {
                    for y in compositions(k - a) {
                        let (mx, my) = (
                            QSymElement::<C>::basis_element(QSymBasis::M, x.clone()),
                            QSymElement::<C>::basis_element(QSymBasis::M, y.clone()),
                        );
                        if dk.coeff(&x, &y) != pairing_ext(&sk, &qsym_product(&mx, &my)) {
                            bad.push(format!("<Δ⋆S^{i}, M_{x}⊗M_{y}>"));
                        }
                    }
                }
            }
        }
    }
    CheckResult::new("symqsym.pairing", bad.is_empty(), failures("ribbon duality and Hopf adjunction", &bad))
}

fn encodings<C: Scalar>(n: u32) -> CheckResult {
    let mut bad = Vec::new();
    let rs = r_elements::<C>(n);
    let pis: Vec<NCPolynomial<C>> = (1..=n).map(|k| pi1(&NCPolynomial::letter(k))).collect();
    for k in 1..=n {
        for i in compositions(k) {
            let r_w = i.parts().iter().fold(NCPolynomial::one(), |acc, &p| &acc * &rs[p as usize - 1]);
            let psi = SymElement::<C>::basis_element(SymBasis::Psi, i.clone()).convert(SymBasis::S);
            if encode_s(&r_w) != psi {
                bad.push(format!("Ψ^{i}"));
            }
            let pi_w = i.parts().iter().fold(NCPolynomial::one(), |acc, &p| &acc * &pis[p as usize - 1]);
            let phi = SymElement::<C>::basis_element(SymBasis::Phi, i.clone())
                .convert(SymBasis::S)
                .scale(&(C::one() / C::from_int(i.part_product() as i64)));
            if encode_s(&pi_w) != phi {
                bad.push(format!("Φ^{i}/π"));
            }
        }
    }
    CheckResult::new("symqsym.encodings", bad.is_empty(), failures("𝒮(R_w) = Ψ^I, 𝒮(π₁ ...) = Φ^I/π(I)", &bad))
}

fn hall_littlewood<C: Scalar>(n: u32, q_degree: usize) -> CheckResult {
    let report = hall_littlewood_report::<C>(n, q_degree);
    let detail = match report.first() {
        None => format!("weight ≤ {n} mod q^{q_degree}"),
        Some(m) => format!("{} mismatches, first {}: {} vs {}", report.len(), m.composition, m.expected, m.product),
    };
    CheckResult::new("symqsym.hall_littlewood", report.is_empty(), detail)
}

fn factorizations<C: Scalar>(n: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for p in Pair::ALL {
        let name = format!("factorization.{p}");
        out.push(match verify_factorization::<C>(n, p.spec()) {
            Ok(r) => CheckResult::new(&name, r.holds, format!("{} mismatches to weight {n}", r.mismatch_count)),
            Err(e) => CheckResult::new(&name, false, e.to_string()),
        });
    }
    if n >= 2 {
        let r = verify_factorization::<C>(n.min(3), Pair::Shuffle.negative_control());
        let ok = r.as_ref().is_ok_and(|r| !r.holds && r.first_bad_weight == Some(2));
        out.push(CheckResult::new("factorization.negative_control", ok, "(Σ, p) must fail at weight 2"));
    }
    out
}

fn characters<C: Scalar>(n: u32) -> CheckResult {
    match character_checks::<C>(n) {
        Ok(r) => {
            let detail = format!(
                "character {}, log expansion {}, closing identities {:?} to weight {n}",
                r.character, r.log_expansion, r.closing_identity
            );
            CheckResult::new("factorization.characters", r.all(), detail)
        }
        Err(e) => CheckResult::new("factorization.characters", false, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig { max_weight: 3, q_degree: 6, seed: 7 };
        let a = run_suite::<BigRational>(cfg);
        assert!(a.iter().all(|c| c.passed()), "{a:#?}");
        assert_eq!(a, run_suite::<BigRational>(cfg));
        let names: Vec<&str> = a.iter().map(|c| c.check.as_str()).collect();
        let mut sorted = names.clone();
        sorted.dedup();
        assert_eq!(names, sorted);
    }

    #[test]
    fn json_shape() {
        let c = CheckResult::new("x", false, "d");
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"check":"x","status":"fail","detail":"d"}"#);
    }
}
