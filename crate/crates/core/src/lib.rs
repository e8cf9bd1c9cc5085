//! Shuffle and quasi-shuffle Hopf algebras on the alphabet `Y = {y_1, y_2, ...}`,
//! their dual PBW-Lyndon bases, and the word encodings of noncommutative
//! symmetric functions and quasi-symmetric functions.
//!
//! All structures are generic over a [`Scalar`]; the aliases below fix the
//! exact rational instantiation used by the tests and the command line tool.

pub mod bases;
pub mod checks;
pub mod error;
pub mod factorization;
pub mod linalg;
pub mod lyndon;
pub mod ncpoly;
pub mod scalar;
pub mod symqsym;
pub(crate) mod text;
pub mod words;

pub use error::{Error, Result};
pub use ncpoly::{coproduct, CoproductKind, NCPolynomial, ProductKind, TensorPolynomial};
pub use scalar::Scalar;
pub use words::{Composition, Letter, Word};

/// Arbitrary precision rationals.
pub type Rational = num_rational::BigRational;
pub type Poly = NCPolynomial<Rational>;
pub type Tensor = TensorPolynomial<Rational>;
pub type PolyF64 = NCPolynomial<f64>;
pub type SymQ = symqsym::SymElement<Rational>;
pub type QSymQ = symqsym::QSymElement<Rational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{Family, GradedBasis};
    use crate::factorization::{verify_factorization, Pair};
    use num_rational::Ratio;

    #[test]
    fn small_rationals_agree_with_big_ones() {
        type R = Ratio<i64>;
        assert!(verify_factorization::<R>(4, Pair::Stuffle.spec()).unwrap().holds);
        let big = GradedBasis::<Rational>::new(Family::Pi, 4).unwrap();
        let small = GradedBasis::<R>::new(Family::Pi, 4).unwrap();
        for (w, p) in &big.dual {
            assert_eq!(p.to_string(), small.dual[w].to_string());
        }
    }

    #[test]
    fn floats_run_the_same_code() {
        let a = PolyF64::letter(1);
        let b = PolyF64::letter(2);
        let p = a.stuffle(&b);
        assert_eq!(p.coeff(&Word::from_indices(&[3])), 1.0);
        assert!(symqsym::cauchy_check::<f64>(3));
        let s = crate::bases::s_basis::<f64>(&Word::from_indices(&[2, 1]));
        let q = crate::bases::s_basis::<Rational>(&Word::from_indices(&[2, 1]));
        assert_eq!(s.len(), q.len());
    }
}
