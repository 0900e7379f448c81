//! Parsing of curve arguments: `x^7-1`, `y^2 = x^8 + 3x - 2`, or nine
//! comma-separated octavic coefficients.

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use octavic::binary_forms::{from_hyperelliptic, BinaryForm};

/// Coefficients of a univariate integer polynomial in `x`, lowest degree
/// first.
pub fn parse_polynomial(input: &str) -> Result<Vec<BigInt>> {
    let mut s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((lhs, rhs)) = s.split_once('=') {
        if lhs != "y^2" {
            bail!("expected `y^2 = f(x)`, got {input:?}");
        }
        s = rhs.to_string();
    }
    if s.is_empty() {
        bail!("empty polynomial");
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-1, &term[1..]),
            Some(b'+') => (1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            bail!("dangling sign in {input:?}");
        }
        let (coef, exp) = match body.find('x') {
            None => (body.parse::<BigInt>().with_context(|| format!("bad term {term:?}"))?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    BigInt::from(1)
                } else {
                    c.parse().with_context(|| format!("bad coefficient in {term:?}"))?
                };
                let rest = &body[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse().with_context(|| format!("bad exponent in {term:?}"))?
                } else {
                    bail!("bad term {term:?}");
                };
                (c, e)
            }
        };
        if exp > 64 {
            bail!("degree {exp} is too large");
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coef * sign;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// An octavic from either a curve `y^2 = f(x)` with `deg f` in `{7, 8}` or
/// nine coefficients `a0,...,a8` of `sum a_i X^i Y^(8-i)`.
pub fn parse_curve(input: &str) -> Result<BinaryForm> {
    if input.contains(',') {
        let c: Vec<i64> = input
            .split(',')
            .map(|t| t.trim().parse::<i64>().with_context(|| format!("bad coefficient {t:?}")))
            .collect::<Result<_>>()?;
        if c.len() != 9 {
            bail!("expected 9 coefficients, got {}", c.len());
        }
        return Ok(BinaryForm::from_integers(&c));
    }
    Ok(from_hyperelliptic(&parse_polynomial(input)?)?)
}
