//! Text forms of polynomials.
//!
//! Two forms are accepted: comma-separated decimal coefficients in ascending
//! degree (`0,-2,3,-2,1`) and the human form (`x^4-2x^3+3x^2-2x`). Anything
//! containing an `x` is parsed as the human form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Ascending comma-separated coefficients; the zero polynomial is `0`.
pub fn to_csv(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    f.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s.contains(['x', 'X']) {
        parse_human(&s)
    } else {
        parse_csv(&s)
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn parse_csv(s: &str) -> Result<Polynomial> {
    let coeffs = s.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

fn parse_human(s: &str) -> Result<Polynomial> {
    let s = s.to_ascii_lowercase();
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && !(i > 0 && bytes[i - 1] == b'^') {
            if i > start {
                terms.push((negative, &s[start..i]));
            } else if i > 0 {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            negative = b == b'-';
            start = i + 1;
        }
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("trailing sign in {s:?}")));
    }
    terms.push((negative, &s[start..]));

    let mut coeffs: Vec<BigInt> = Vec::new();
    for (negative, term) in terms {
        let (mut c, k) = parse_term(term)?;
        if negative {
            c = -c;
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += c;
    }
    Ok(Polynomial::new(coeffs))
}

fn parse_term(term: &str) -> Result<(BigInt, usize)> {
    let Some(xpos) = term.find('x') else {
        return Ok((parse_int(term)?, 0));
    };
    let coeff = term[..xpos].trim_end_matches('*');
    let c = if coeff.is_empty() {
        BigInt::one()
    } else {
        parse_int(coeff)?
    };
    let rest = &term[xpos + 1..];
    let k = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
    } else {
        return Err(Error::Parse(format!("unexpected {rest:?} after x")));
    };
    Ok((c, k))
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}
