//! Truncated power series in `t` with coefficients in `k<Y>`, and the series
//! built from `Y(t) = 1 + Σ y_n t^n`: its inverse `Σ X_n t^n`, the
//! logarithmic derivatives `L` and `R`, and the higher families `L_k`, `R_k`.

use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::ncpoly::NCPolynomial;
use crate::scalar::Scalar;
use crate::words::compositions;

/// `Σ_{d=0}^{D} c_d t^d`. Products drop every degree above `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct TSeries<C> {
    coeffs: Vec<NCPolynomial<C>>,
}

impl<C: Scalar> TSeries<C> {
    pub fn zero(bound: usize) -> Self {
        TSeries { coeffs: vec![NCPolynomial::zero(); bound + 1] }
    }

    pub fn one(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = NCPolynomial::one();
        s
    }

    /// Coefficients for degrees `0..coeffs.len()`.
    pub fn from_coeffs(coeffs: Vec<NCPolynomial<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least its constant term");
        TSeries { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &NCPolynomial<C> {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[NCPolynomial<C>] {
        &self.coeffs
    }

    pub fn truncate(&self, bound: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(bound + 1);
        c.resize(bound + 1, NCPolynomial::zero());
        TSeries { coeffs: c }
    }

    pub fn scale(&self, c: &C) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// Product truncated at the smaller of the two bounds.
    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound().min(other.bound());
        let mut out = Self::zero(bound);
        for (i, a) in self.coeffs.iter().enumerate().take(bound + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(bound + 1 - i) {
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }

    /// `d/dt`; known one degree less than `self`.
    pub fn derivative(&self) -> Self {
        if self.bound() == 0 {
            return Self::zero(0);
        }
        TSeries { coeffs: (1..self.coeffs.len()).map(|d| self.coeffs[d].scale(&C::from_int(d as i64))).collect() }
    }

    /// `[A, B] = AB - BA`
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other) - other.mul(self)
    }

    /// `log(1 + X)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != NCPolynomial::one() {
            return Err(Error::LogConstantTerm);
        }
        let bound = self.bound();
        let x = self.clone() - Self::one(bound);
        let mut out = Self::zero(bound);
        let mut power = Self::one(bound);
        for k in 1..=bound {
            power = power.mul(&x);
            let sign = if k % 2 == 1 { C::one() } else { -C::one() };
            out = out + power.scale(&(sign / C::from_int(k as i64)));
        }
        Ok(out)
    }

    /// `exp(ad_A) B = Σ_n ad_A^n B / n!` for `A` without constant term.
    pub fn exp_ad(a: &Self, b: &Self) -> Result<Self> {
        if !a.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let bound = a.bound().min(b.bound());
        let mut term = b.truncate(bound);
        let mut out = term.clone();
        for n in 1..=bound {
            term = a.bracket(&term);
            out = out + term.scale(&C::inv_factorial(n as u32));
        }
        Ok(out)
    }
}

impl<C: Scalar> Add for TSeries<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let bound = self.bound().min(rhs.bound());
        TSeries { coeffs: (0..=bound).map(|d| &self.coeffs[d] + &rhs.coeffs[d]).collect() }
    }
}

impl<C: Scalar> Sub for TSeries<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let bound = self.bound().min(rhs.bound());
        TSeries { coeffs: (0..=bound).map(|d| &self.coeffs[d] - &rhs.coeffs[d]).collect() }
    }
}

/// `Y(t) = 1 + Σ_{n=1}^{D} y_n t^n`
pub fn y_series<C: Scalar>(bound: usize) -> TSeries<C> {
    TSeries::from_coeffs((0..=bound).map(|n| NCPolynomial::y(n as u32, true)).collect())
}

/// `X_0, ..., X_N` with `Y(t)^{-1} = Σ X_n t^n`, from
/// `X_n = -Σ_{i=1}^{n} y_i X_{n-i}`.
pub fn x_elements<C: Scalar>(max: u32) -> Vec<NCPolynomial<C>> {
    let mut xs: Vec<NCPolynomial<C>> = vec![NCPolynomial::one()];
    for n in 1..=max {
        let mut x = NCPolynomial::zero();
        for i in 1..=n {
            x -= &(&NCPolynomial::letter(i) * &xs[(n - i) as usize]);
        }
        xs.push(x);
    }
    xs
}

/// `Y(t)^{-1}` truncated at degree `D`.
pub fn y_inverse_series<C: Scalar>(bound: usize) -> TSeries<C> {
    TSeries::from_coeffs(x_elements(bound as u32))
}

/// `L_1, ..., L_N`, `L_n = Σ_{i=0}^{n-1} (i+1) y_{i+1} X_{n-1-i}`.
pub fn l_elements<C: Scalar>(max: u32) -> Vec<NCPolynomial<C>> {
    let xs = x_elements::<C>(max);
    (1..=max)
        .map(|n| {
            let mut l = NCPolynomial::zero();
            for i in 0..n {
                let y = NCPolynomial::<C>::letter(i + 1).scale(&C::from_int(i as i64 + 1));
                l += &(&y * &xs[(n - 1 - i) as usize]);
            }
            l
        })
        .collect()
}

/// `R_1, ..., R_N`, `R_n = Σ_{i=0}^{n-1} (i+1) X_{n-1-i} y_{i+1}`.
pub fn r_elements<C: Scalar>(max: u32) -> Vec<NCPolynomial<C>> {
    let xs = x_elements::<C>(max);
    (1..=max)
        .map(|n| {
            let mut r = NCPolynomial::zero();
            for i in 0..n {
                let y = NCPolynomial::<C>::letter(i + 1).scale(&C::from_int(i as i64 + 1));
                r += &(&xs[(n - 1 - i) as usize] * &y);
            }
            r
        })
        .collect()
}

/// `L(t) = Σ_{n≥1} L_n t^{n-1}` truncated at degree `D`.
pub fn l_series<C: Scalar>(bound: usize) -> TSeries<C> {
    TSeries::from_coeffs(l_elements(bound as u32 + 1))
}

/// `R(t) = Σ_{n≥1} R_n t^{n-1}` truncated at degree `D`.
pub fn r_series<C: Scalar>(bound: usize) -> TSeries<C> {
    TSeries::from_coeffs(r_elements(bound as u32 + 1))
}

/// The pair `(L_k, R_k)` with `Y^{(k)} = L_k Y = Y R_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HigherSeries<C> {
    pub left: TSeries<C>,
    pub right: TSeries<C>,
}

/// Builds `L_k`, `R_k` to degree `D` from `L_k = L_{k-1}' + L_{k-1} L` and
/// `R_k = R_{k-1}' + R R_{k-1}`, then checks `L_k Y = Y^{(k)} = Y R_k` mod
/// `t^{D+1}`.
pub fn higher_series<C: Scalar>(k: usize, bound: usize) -> Result<HigherSeries<C>> {
    assert!(k >= 1, "k starts at 1");
    let work = bound + k - 1;
    let l = l_series::<C>(work);
    let r = r_series::<C>(work);
    let mut left = l.clone();
    let mut right = r.clone();
    for _ in 1..k {
        left = left.derivative() + left.mul(&l);
        right = right.derivative() + r.mul(&right);
    }
    let left = left.truncate(bound);
    let right = right.truncate(bound);

    let y = y_series::<C>(bound + k);
    let mut yk = y.clone();
    for _ in 0..k {
        yk = yk.derivative();
    }
    let y = y.truncate(bound);
    if left.mul(&y) != yk {
        return Err(Error::SeriesIdentity(format!("L_{k} Y != Y^({k}) mod t^{}", bound + 1)));
    }
    if y.mul(&right) != yk {
        return Err(Error::SeriesIdentity(format!("Y R_{k} != Y^({k}) mod t^{}", bound + 1)));
    }
    Ok(HigherSeries { left, right })
}

/// Checks `L_k = exp(ad_{log Y}) R_k` and `R_k = exp(-ad_{log Y}) L_k` to
/// degree `D`.
pub fn ad_formula_holds<C: Scalar>(k: usize, bound: usize) -> Result<bool> {
    let h = higher_series::<C>(k, bound)?;
    let log_y = y_series::<C>(bound).log()?;
    let forward = TSeries::exp_ad(&log_y, &h.right)?;
    let backward = TSeries::exp_ad(&log_y.scale(&-C::one()), &h.left)?;
    Ok(forward == h.left && backward == h.right)
}

/// Whether `n y_n = Σ_{i=0}^{n-1} L_{i+1} y_{n-1-i} = Σ_{i=0}^{n-1} y_{n-1-i} R_{i+1}`
/// with `y_0 = 1`.
pub fn derivative_identity_holds<C: Scalar>(n: u32) -> bool {
    let ls = l_elements::<C>(n);
    let rs = r_elements::<C>(n);
    let target = NCPolynomial::letter(n).scale(&C::from_int(n as i64));
    let mut left = NCPolynomial::zero();
    let mut right = NCPolynomial::zero();
    for i in 0..n {
        let y = NCPolynomial::y(n - 1 - i, true);
        left += &(&ls[i as usize] * &y);
        right += &(&y * &rs[i as usize]);
    }
    left == target && right == target
}

/// How `y_n = Σ_{w(J)=n} R^J / c(J)` weights each term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RWeighting {
    /// `c(J) = π_u(J)`, the product of partial sums.
    PartialSums,
    /// `c(J) = π(J)`, the product of parts.
    Parts,
}

/// `Σ_{w(J)=n} R_{j_1}...R_{j_k} / c(J)`.
pub fn y_from_r<C: Scalar>(n: u32, weighting: RWeighting) -> NCPolynomial<C> {
    let rs = r_elements::<C>(n);
    let mut out = NCPolynomial::zero();
    for j in compositions(n) {
        let rj = j.parts().iter().fold(NCPolynomial::one(), |acc, &p| &acc * &rs[p as usize - 1]);
        let denom = match weighting {
            RWeighting::PartialSums => j.partial_sum_product(),
            RWeighting::Parts => j.part_product(),
        };
        out += &rj.scale(&C::from_ratio(1, denom as i64));
    }
    out
}

/// Whether `y_n = Σ_{w(J)=n} R^J / π_u(J)`.
pub fn y_in_r_expansion<C: Scalar>(n: u32) -> bool {
    y_from_r::<C>(n, RWeighting::PartialSums) == NCPolynomial::letter(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{coproduct, CoproductKind, TensorPolynomial};
    use crate::words::Word;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = NCPolynomial<Q>;

    fn w(p: &[u32]) -> P {
        P::word(Word::from_indices(p))
    }

    fn n(k: i64) -> Q {
        Q::from_int(k)
    }

    #[test]
    fn x_l_r_examples() {
        let xs = x_elements::<Q>(2);
        assert_eq!(xs[1], -w(&[1]));
        assert_eq!(xs[2], w(&[1, 1]) - w(&[2]));

        let l = l_elements::<Q>(3);
        let r = r_elements::<Q>(3);
        assert_eq!(l[0], w(&[1]));
        assert_eq!(r[1], w(&[2]).scale(&n(2)) - w(&[1, 1]));
        assert_eq!(l[1], w(&[2]).scale(&n(2)) - w(&[1, 1]));
        assert_eq!(l[2], w(&[3]).scale(&n(3)) - w(&[1, 2]) - w(&[2, 1]).scale(&n(2)) + w(&[1, 1, 1]));
        assert_eq!(r[2], w(&[3]).scale(&n(3)) - w(&[1, 2]).scale(&n(2)) - w(&[2, 1]) + w(&[1, 1, 1]));
    }

    #[test]
    fn y_times_inverse_is_one() {
        let y = y_series::<Q>(6);
        let yi = y_inverse_series::<Q>(6);
        assert_eq!(y.mul(&yi), TSeries::one(6));
        assert_eq!(yi.mul(&y), TSeries::one(6));
    }

    #[test]
    fn inverse_relations_coefficientwise() {
        let xs = x_elements::<Q>(6);
        for m in 1..=6u32 {
            let mut a = P::zero();
            let mut b = P::zero();
            for i in 0..=m {
                a += &(&P::y(i, true) * &xs[(m - i) as usize]);
                b += &(&xs[i as usize] * &P::y(m - i, true));
            }
            assert!(a.is_zero() && b.is_zero(), "n = {m}");
        }
    }

    #[test]
    fn n_y_n_from_l_and_r() {
        let l = l_elements::<Q>(6);
        let r = r_elements::<Q>(6);
        for m in 1..=6u32 {
            let mut from_l = P::zero();
            let mut from_r = P::zero();
            for i in 0..m {
                from_l += &(&l[i as usize] * &P::y(m - 1 - i, true));
                from_r += &(&P::y(m - 1 - i, true) * &r[i as usize]);
            }
            let target = P::letter(m).scale(&n(m as i64));
            assert_eq!(from_l, target);
            assert_eq!(from_r, target);
            assert!(derivative_identity_holds::<Q>(m));
        }
    }

    #[test]
    fn l_and_r_are_primitive() {
        for (ln, rn) in l_elements::<Q>(6).iter().zip(r_elements::<Q>(6).iter()) {
            for x in [ln, rn] {
                assert!(coproduct(x, CoproductKind::Stuffle).unwrap().is_primitive_image_of(x));
            }
        }
    }

    #[test]
    fn y_is_group_like() {
        for m in 1..=6u32 {
            let d = coproduct(&P::letter(m), CoproductKind::Stuffle).unwrap();
            let mut expected = TensorPolynomial::zero();
            for s in 0..=m {
                expected += &TensorPolynomial::tensor(&P::y(s, true), &P::y(m - s, true));
            }
            assert_eq!(d, expected);
        }
    }

    #[test]
    fn higher_series_base_case_and_identities() {
        let h = higher_series::<Q>(1, 4).unwrap();
        assert_eq!(h.left, l_series(4));
        assert_eq!(h.right, r_series(4));
        for k in 1..=3 {
            higher_series::<Q>(k, 5).unwrap();
        }
        // k = 2, D = 1: L_2 = L' + L L, constant term L_2 + L_1 L_1.
        let h = higher_series::<Q>(2, 1).unwrap();
        let l = l_elements::<Q>(2);
        assert_eq!(*h.left.coeff(0), &l[1] + &(&l[0] * &l[0]));
    }

    #[test]
    fn ad_formula() {
        for k in 1..=3 {
            assert!(ad_formula_holds::<Q>(k, 5).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn y_expansion_in_r() {
        assert_eq!(r_elements::<Q>(1)[0], w(&[1]));
        for m in 1..=6 {
            assert!(y_in_r_expansion::<Q>(m), "n = {m}");
        }
        // The product-of-parts weighting fails already at n = 2.
        let literal = y_from_r::<Q>(2, RWeighting::Parts);
        assert_eq!(literal, w(&[2]) + w(&[1, 1]).scale(&Q::from_ratio(1, 2)));
    }
}
