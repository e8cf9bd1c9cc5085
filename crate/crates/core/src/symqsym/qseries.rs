//! Truncated power series in `q` and the specialization of `QSym` at the
//! geometric alphabet `X_q = {1, q, q², ...}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use crate::scalar::Scalar;
use crate::words::{compositions, Composition};

/// `Σ_{k<D} c_k q^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> QSeries<C> {
    pub fn zero(bound: usize) -> Self {
        QSeries { coeffs: vec![C::zero(); bound] }
    }

    /// `c q^k`, or zero if `k ≥ bound`.
    pub fn monomial(bound: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero(bound);
        if k < bound {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        QSeries { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<C: Scalar> Add for &QSeries<C> {
    type Output = QSeries<C>;
    fn add(self, rhs: &QSeries<C>) -> QSeries<C> {
        let n = self.bound().min(rhs.bound());
        QSeries { coeffs: (0..n).map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()).collect() }
    }
}

impl<C: Scalar> Mul for &QSeries<C> {
    type Output = QSeries<C>;
    fn mul(self, rhs: &QSeries<C>) -> QSeries<C> {
        let n = self.bound().min(rhs.bound());
        let mut out = QSeries::<C>::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    }
}

impl<C: Scalar> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < C::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            f.write_str(match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            })?;
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{k}"),
            };
            match (abs.is_one(), k) {
                (_, 0) => write!(f, "{abs}")?,
                (true, _) => f.write_str(&power)?,
                (false, _) => write!(f, "{abs}·{power}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.bound())
    }
}

/// `M_I(X_q) = Σ_{n_1 > ... > n_r ≥ 0} q^{n_1 i_1 + ... + n_r i_r}` modulo `q^D`.
pub fn specialize_mq<C: Scalar>(i: &Composition, bound: usize) -> QSeries<C> {
    fn go(parts: &[u32], above: Option<usize>, acc: usize, bound: usize, out: &mut [u64]) {
        let Some((&first, rest)) = parts.split_first() else {
            if acc < bound {
                out[acc] += 1;
            }
            return;
        };
        // Exponents must stay strictly below the previous one; the remaining
        // parts need at least 0, 1, ... so n ≥ rest.len().
        let mut n = rest.len();
        while above.is_none_or(|a| n < a) {
            let e = acc + n * first as usize;
            if e >= bound {
                break;
            }
            go(rest, Some(n), e, bound, out);
            n += 1;
        }
    }
    let mut counts = vec![0u64; bound];
    go(i.parts(), None, 0, bound, &mut counts);
    QSeries::from_coeffs(counts.into_iter().map(|c| C::from_int(c as i64)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HallLittlewoodMismatch<C> {
    pub composition: Composition,
    pub expected: QSeries<C>,
    pub product: QSeries<C>,
}

/// Expands `σ(A;q^{D-1}) ··· σ(A;q) σ(A;1)` with `σ(A;x) = Σ_k S_k x^k` in
/// `Sym ⊗ k[q]/(q^D)` up to weight `n`, and compares the coefficient of each
/// `S^I` with [`specialize_mq`]. Factors with exponent `≥ D` only contribute
/// the constant term modulo `q^D` and are omitted.
pub fn hall_littlewood_report<C: Scalar>(n: u32, bound: usize) -> Vec<HallLittlewoodMismatch<C>> {
    let mut acc: BTreeMap<Vec<u32>, QSeries<C>> = BTreeMap::new();
    acc.insert(vec![], QSeries::monomial(bound, 0, C::one()));
    for e in (0..bound).rev() {
        let mut next: BTreeMap<Vec<u32>, QSeries<C>> = BTreeMap::new();
        for (i, s) in &acc {
            let w: u32 = i.iter().sum();
            for k in 0..=n - w {
                if k > 0 && e * k as usize >= bound {
                    break;
                }
                let factor = QSeries::monomial(bound, e * k as usize, C::one());
                let mut key = i.clone();
                if k > 0 {
                    key.push(k);
                }
                let term = s * &factor;
                let slot = next.entry(key).or_insert_with(|| QSeries::zero(bound));
                *slot = &*slot + &term;
            }
        }
        acc = next;
    }
    let mut out = Vec::new();
    for w in 0..=n {
        for i in compositions(w) {
            let product = acc.remove(i.parts()).unwrap_or_else(|| QSeries::zero(bound));
            let expected = specialize_mq(&i, bound);
            if product != expected {
                out.push(HallLittlewoodMismatch { composition: i, expected, product });
            }
        }
    }
    out
}

pub fn hall_littlewood_check<C: Scalar>(n: u32, bound: usize) -> bool {
    hall_littlewood_report::<C>(n, bound).is_empty()
}
