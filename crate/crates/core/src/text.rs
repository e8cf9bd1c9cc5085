//! Shared text form of linear combinations: `1 + 2·[1 1] - 1/2·[2]`,
//! `S:(1,1) - S:(2)`, and so on.

use std::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Writes `terms` (already in display order) as `c·KEY + c·KEY - ...`.
/// `key` returns `None` for the unit term, which prints as a bare coefficient.
pub(crate) fn write_combination<'a, C, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (&'a K, &'a C)>,
    key: impl Fn(&K) -> Option<String>,
) -> fmt::Result
where
    C: Scalar + 'a,
{
    let mut first = true;
    for (k, c) in terms {
        let negative = *c < C::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        match key(k) {
            None => write!(f, "{abs}")?,
            Some(k) if abs.is_one() => f.write_str(&k)?,
            Some(k) => write!(f, "{abs}·{k}")?,
        }
    }
    if first {
        f.write_char('0')?;
    }
    Ok(())
}

/// Splits a linear combination into `(coefficient, key)` pairs. A term with no
/// key (a bare number) gets `None`. Keys start at the first `[`, `(` or
/// alphabetic character of a term.
pub(crate) fn parse_combination<C: Scalar>(s: &str) -> Result<Vec<(C, Option<String>)>> {
    let mut raw_terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    for ch in s.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                current.push(ch);
            }
            ']' | ')' => {
                depth -= 1;
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !current.trim().is_empty() {
                    raw_terms.push((negative, std::mem::take(&mut current)));
                    negative = false;
                } else {
                    current.clear();
                }
                if ch == '-' {
                    negative = !negative;
                }
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
    }
    if !current.trim().is_empty() {
        raw_terms.push((negative, current));
    } else if negative {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }

    let mut out = Vec::with_capacity(raw_terms.len());
    for (neg, term) in raw_terms {
        let term = term.trim();
        let split = term.find(|c: char| c == '[' || c == '(' || c.is_alphabetic());
        let (coeff_text, key) = match split {
            Some(pos) => (&term[..pos], Some(term[pos..].trim().to_string())),
            None => (term, None),
        };
        let coeff_text = coeff_text.trim().trim_end_matches(['·', '*']).trim();
        let mut coeff = if coeff_text.is_empty() {
            if key.is_none() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            C::one()
        } else {
            C::parse_fraction(coeff_text).ok_or_else(|| Error::Parse(format!("bad coefficient {coeff_text:?}")))?
        };
        if neg {
            coeff = -coeff;
        }
        out.push((coeff, key));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn splits_terms() {
        let t = parse_combination::<Q>("1 + 2·[1 1] - 1/2·[2]").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], (Q::from_int(1), None));
        assert_eq!(t[1], (Q::from_int(2), Some("[1 1]".into())));
        assert_eq!(t[2], (Q::from_ratio(-1, 2), Some("[2]".into())));
        let t = parse_combination::<Q>("-S:(1,1) + 3*S:(2)").unwrap();
        assert_eq!(t[0], (Q::from_int(-1), Some("S:(1,1)".into())));
        assert_eq!(t[1], (Q::from_int(3), Some("S:(2)".into())));
        assert!(parse_combination::<Q>("[1").is_err());
        assert!(parse_combination::<Q>("1/·[1]").is_err());
    }
}
