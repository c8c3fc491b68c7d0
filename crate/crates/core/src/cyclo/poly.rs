//! Dense univariate polynomials over ℚ, only as much as inversion in
//! ℚ(ζ_e) needs.

use num_traits::{One, Zero};

use super::Rational;

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns `s` with `s·a ≡ 1 (mod m)`, assuming gcd(a, m) = 1. `None` when
/// `a` is zero modulo `m` or shares a factor with it.
pub(crate) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while r1.len() > 1 {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        if r1.is_empty() {
            return None;
        }
    }
    let c = r1[0].recip();
    let mut s: Vec<Rational> = s1.into_iter().map(|x| x * &c).collect();
    let (_, rem) = divrem(&s, m);
    s = rem;
    Some(s)
}
