//! Canonical text form.
//!
//! Terms appear in canonical order separated by `" + "`. Each term is a
//! coefficient written `num/den` (always with an explicit denominator),
//! followed by `*name^exp` factors; exponent 1 is written bare. The zero
//! polynomial is `0`. Example: `1/1*t1^2*t3 + -3/2*t2 + 5/1`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use super::monomial::{Exp, ExponentVector};
use super::{Scalar, SparsePoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial text: {0}")]
pub struct ParseError(pub String);

impl SparsePoly {
    /// Canonical text with variables named `{prefix}1..{prefix}r`.
    pub fn to_text(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(out, "*{prefix}{}", v + 1).unwrap(),
                    _ => write!(out, "*{prefix}{}^{e}", v + 1).unwrap(),
                }
            }
        }
        out
    }

    /// Inverse of [`SparsePoly::to_text`].
    pub fn parse_text(text: &str, prefix: &str, arity: usize) -> Result<SparsePoly, ParseError> {
        let text = text.trim();
        if text == "0" {
            return Ok(SparsePoly::zero(arity));
        }
        let mut terms = Vec::new();
        for raw in text.split(" + ") {
            let mut parts = raw.trim().split('*');
            let coeff = parse_rational(parts.next().unwrap_or(""))?;
            let mut exps: Vec<Exp> = vec![0; arity];
            for factor in parts {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<Exp>()
                            .map_err(|_| ParseError(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let idx = name
                    .strip_prefix(prefix)
                    .and_then(|s| usize::from_str(s).ok())
                    .filter(|&i| i >= 1 && i <= arity)
                    .ok_or_else(|| ParseError(format!("bad variable {name:?}")))?;
                exps[idx - 1] += e;
            }
            terms.push((ExponentVector::new(exps), coeff));
        }
        Ok(SparsePoly::from_terms(arity, terms))
    }
}

fn parse_rational(s: &str) -> Result<Scalar, ParseError> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| ParseError(format!("coefficient {s:?} lacks a denominator")))?;
    let n = BigInt::from_str(n).map_err(|_| ParseError(format!("bad numerator {n:?}")))?;
    let d = BigInt::from_str(d).map_err(|_| ParseError(format!("bad denominator {d:?}")))?;
    if d == BigInt::from(0) {
        return Err(ParseError("zero denominator".into()));
    }
    Ok(Scalar::new(n, d))
}
