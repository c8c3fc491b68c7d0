//! Text form of cyclotomic values: a sum of terms `±a/b*z^k`, where `z` is
//! the primitive e-th root fixed by the surrounding document. Rational
//! values print as plain `a/b`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Cyclo, Rational};
use crate::error::{GrcError, Result};

pub(crate) fn format_cyclo(x: &Cyclo) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in x.coords().into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        let body = match k {
            0 => mag.to_string(),
            _ => {
                let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                if mag.is_one() {
                    z
                } else {
                    format!("{mag}*{z}")
                }
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || GrcError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(GrcError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses a literal such as `-1 - z^2 + 3/2*z^3` in ℚ(ζ_e). Exponents may
/// be any non-negative integer; they are reduced modulo e.
pub fn parse_cyclo(s: &str, e: u32) -> Result<Cyclo> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(GrcError::Parse("empty cyclotomic literal".into()));
    }
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);

    let mut acc = Cyclo::zero();
    for t in terms {
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t.as_str()),
        };
        if body.is_empty() {
            return Err(GrcError::Parse(format!("dangling sign in `{s}`")));
        }
        let (coef, power) = if let Some(pos) = body.find('z') {
            let coef = match &body[..pos] {
                "" => Rational::one(),
                c => parse_rational(
                    c.strip_suffix('*')
                        .ok_or_else(|| GrcError::Parse(format!("expected `*` before z in `{body}`")))?,
                )?,
            };
            let rest = &body[pos + 1..];
            let k: i64 = match rest {
                "" => 1,
                r => r
                    .strip_prefix('^')
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| GrcError::Parse(format!("bad exponent in `{body}`")))?,
            };
            (coef, k)
        } else {
            (parse_rational(body)?, 0)
        };
        let coef = if neg { -coef } else { coef };
        acc = &acc + &Cyclo::root(e, power).scale(&coef);
    }
    Ok(acc.lift(e))
}
