use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::NCPolynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text::{parse_combination, write_combination};
use crate::words::Word;

/// JSON form of one term: `{"word": [1, 2], "coeff": "1/2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub word: Vec<u32>,
    pub coeff: String,
}

impl<C: Scalar> fmt::Display for NCPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.canonical_terms(), |w: &Word| (!w.is_empty()).then(|| format!("[{w}]")))
    }
}

impl<C: Scalar> FromStr for NCPolynomial<C> {
    type Err = Error;

    /// Parses the canonical text form, e.g. `1 + 2·[1 1] - 1/2·[2]`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for (c, key) in parse_combination::<C>(s)? {
            let w = match key {
                None => Word::empty(),
                Some(k) if k.starts_with('[') && k.ends_with(']') => k.parse()?,
                Some(k) => return Err(Error::Parse(format!("expected [word], got {k:?}"))),
            };
            p.add_term(w, c);
        }
        Ok(p)
    }
}

impl<C: Scalar> NCPolynomial<C> {
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.canonical_terms()
            .into_iter()
            .map(|(w, c)| JsonTerm { word: w.to_indices(), coeff: c.to_fraction_string() })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("plain data always serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let terms: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Self::zero();
        for t in terms {
            let c = C::parse_fraction(&t.coeff).ok_or_else(|| Error::Parse(format!("bad coeff {:?}", t.coeff)))?;
            p.add_term(Word::try_from_indices(&t.word)?, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type P = NCPolynomial<BigRational>;

    #[test]
    fn canonical_text() {
        let p: P = "1 + 2·[1 1] + 1/2·[2]".parse().unwrap();
        assert_eq!(p.to_string(), "1 + 2·[1 1] + 1/2·[2]");
        let p: P = "[2 1] - [1 2]".parse().unwrap();
        assert_eq!(p.to_string(), "-[1 2] + [2 1]");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!("0".parse::<P>().unwrap(), P::zero());
        assert!("2·(1)".parse::<P>().is_err());
    }

    #[test]
    fn json_shape() {
        let p: P = "3 - 1/2·[2]".parse().unwrap();
        assert_eq!(p.to_json(), r#"[{"word":[],"coeff":"3/1"},{"word":[2],"coeff":"-1/2"}]"#);
    }

    fn poly() -> impl Strategy<Value = P> {
        prop::collection::vec((prop::collection::vec(1u32..4, 0..4), -5i64..5, 1i64..4), 0..5).prop_map(|ts| {
            P::from_terms(ts.into_iter().map(|(w, n, d)| (Word::from_indices(&w), BigRational::from_ratio(n, d))))
        })
    }

    proptest! {
        #[test]
        fn text_and_json_roundtrip(p in poly()) {
            prop_assert_eq!(p.to_string().parse::<P>().unwrap(), p.clone());
            prop_assert_eq!(P::from_json(&p.to_json()).unwrap(), p);
        }
    }
}
