//! Characteristic polynomials of left multiplication on e_χ K[G]^n,
//! computed from an explicit basis and a Hessenberg reduction.

use grc::groupring::GroupRingMatrix;
use grc::{Cyclo, Group, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn from_int(n: &BigInt) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn from_int(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

impl Field for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self.checked_div(o).expect("nonzero pivot")
    }
    fn from_int(n: &BigInt) -> Self {
        Cyclo::from_int(n.clone())
    }
}

/// det(X·I − A), ascending coefficients.
pub fn char_poly<F: Field>(mut a: Vec<Vec<F>>) -> Vec<F> {
    let n = a.len();
    for m in 1..n.saturating_sub(1) {
        let Some(p) = (m..n).find(|&i| !a[i][m - 1].is_zero()) else {
            continue;
        };
        if p != m {
            a.swap(p, m);
            for row in a.iter_mut() {
                row.swap(p, m);
            }
        }
        for i in m + 1..n {
            if a[i][m - 1].is_zero() {
                continue;
            }
            let t = a[i][m - 1].div(&a[m][m - 1]);
            for j in 0..n {
                let v = a[i][j].sub(&t.mul(&a[m][j]));
                a[i][j] = v;
            }
            for row in a.iter_mut() {
                let v = row[m].add(&t.mul(&row[i]));
                row[m] = v;
            }
        }
    }
    // p_k = (X − h_kk) p_{k−1} − Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j−1}) p_{i−1}
    let mut polys: Vec<Vec<F>> = vec![vec![F::one()]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![F::zero(); k + 2];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = next[d + 1].add(c);
            next[d] = next[d].sub(&a[k][k].mul(c));
        }
        let mut prod = F::one();
        for i in (0..k).rev() {
            prod = prod.mul(&a[i + 1][i]);
            if prod.is_zero() {
                break;
            }
            let coef = a[i][k].mul(&prod);
            for (d, c) in polys[i].iter().enumerate() {
                next[d] = next[d].sub(&coef.mul(c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least one polynomial")
}

/// Rows of a d×|G| matrix reduced to echelon form; returns the indices of
/// the rows kept and the pivot columns.
fn independent_rows<F: Field>(vectors: &[Vec<F>], want: usize) -> (Vec<usize>, Vec<usize>) {
    let mut echelon: Vec<(usize, Vec<F>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (p, row) in &echelon {
            if !v[*p].is_zero() {
                let t = v[*p].div(&row[*p]);
                for j in 0..v.len() {
                    let x = v[j].sub(&t.mul(&row[j]));
                    v[j] = x;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((p, v));
            kept.push(idx);
            if kept.len() == want {
                break;
            }
        }
    }
    (kept, echelon.into_iter().map(|(p, _)| p).collect())
}

fn invert<F: Field>(mut a: Vec<Vec<F>>) -> Vec<Vec<F>> {
    let n = a.len();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(p, c);
        inv.swap(p, c);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = a[c][j].div(&piv);
            inv[c][j] = inv[c][j].div(&piv);
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let t = a[r][c].clone();
            for j in 0..n {
                let x = a[r][j].sub(&t.mul(&a[c][j]));
                a[r][j] = x;
                let y = inv[r][j].sub(&t.mul(&inv[c][j]));
                inv[r][j] = y;
            }
        }
    }
    inv
}

/// Matrix of v ↦ H·v on e K[G]^n in a basis of right translates e·y,
/// where `e` holds the coefficients of a central idempotent with
/// dim e K[G] = `dim`.
pub fn regular_matrix<F: Field>(g: &Group, h: &GroupRingMatrix<BigInt>, e: &[F], dim: usize) -> Vec<Vec<F>> {
    let order = g.order();
    // (e·y)(x) = e(x y⁻¹)
    let spanning: Vec<Vec<F>> = (0..order as u32)
        .map(|y| {
            let yi = g.inv(y);
            (0..order as u32)
                .map(|x| e[g.mul(x, yi) as usize].clone())
                .collect()
        })
        .collect();
    let (kept, pivots) = independent_rows(&spanning, dim);
    assert_eq!(kept.len(), dim, "idempotent spans the wrong dimension");
    let basis: Vec<&Vec<F>> = kept.iter().map(|&k| &spanning[k]).collect();
    // coordinates of v in `basis` are B⁻¹ v[pivots]
    let b_piv: Vec<Vec<F>> = (0..dim)
        .map(|r| (0..dim).map(|c| basis[c][pivots[r]].clone()).collect())
        .collect();
    let b_inv = invert(b_piv);
    let n = h.size();
    let big = n * dim;
    let mut m = vec![vec![F::zero(); big]; big];
    for i in 0..n {
        for j in 0..n {
            let hij: Vec<F> = h.get(i, j).coeffs().iter().map(F::from_int).collect();
            let support: Vec<usize> = (0..order).filter(|&s| !hij[s].is_zero()).collect();
            for (a, bv) in basis.iter().enumerate() {
                // (h_ij · b)(p) = Σ_s h_ij(s) b(s⁻¹ p), only at pivot positions
                let vals: Vec<F> = pivots
                    .iter()
                    .map(|&p| {
                        support.iter().fold(F::zero(), |acc, &s| {
                            let idx = g.mul(g.inv(s as u32), p as u32) as usize;
                            acc.add(&hij[s].mul(&bv[idx]))
                        })
                    })
                    .collect();
                for r in 0..dim {
                    let c = (0..dim).fold(F::zero(), |acc, k| acc.add(&b_inv[r][k].mul(&vals[k])));
                    m[i * dim + r][j * dim + a] = c;
                }
            }
        }
    }
    m
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut k: u64, p: u64) -> u64 {
    let mut r = 1;
    while k > 0 {
        if k & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        k >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let bases = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &bases {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &bases {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn char_poly_mod(a: &[Vec<BigInt>], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = x % &pb;
                    let r = if r < BigInt::zero() { r + &pb } else { r };
                    r.to_u64_digits().1.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let sub = |x: u64, y: u64| if x >= y { x - y } else { x + p - y };
    let add = |x: u64, y: u64| {
        let s = x as u128 + y as u128;
        (s % p as u128) as u64
    };
    for c in 1..n.saturating_sub(1) {
        let Some(piv) = (c..n).find(|&i| m[i][c - 1] != 0) else {
            continue;
        };
        if piv != c {
            m.swap(piv, c);
            for row in m.iter_mut() {
                row.swap(piv, c);
            }
        }
        let inv = pow_mod(m[c][c - 1], p - 2, p);
        for i in c + 1..n {
            if m[i][c - 1] == 0 {
                continue;
            }
            let t = mul_mod(m[i][c - 1], inv, p);
            for j in 0..n {
                m[i][j] = sub(m[i][j], mul_mod(t, m[c][j], p));
            }
            for row in m.iter_mut() {
                row[c] = add(row[c], mul_mod(t, row[i], p));
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = add(next[d + 1], c);
            next[d] = sub(next[d], mul_mod(m[k][k], c, p));
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mul_mod(prod, m[i + 1][i], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(m[i][k], prod, p);
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub(next[d], mul_mod(coef, c, p));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least one polynomial")
}

/// det(X·I − A) over ℚ: denominators are cleared, the integer polynomial
/// is computed modulo 62-bit primes and recovered by CRT once the modulus
/// exceeds twice a Hadamard bound on its coefficients.
pub fn char_poly_rational(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let d = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ai: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    // coefficient of X^{n−m} is a sum of C(n, m) principal m-minors, each
    // at most (√m·B)^m; bound (√n·B)^m · 2^n covers all of them
    let b = ai
        .iter()
        .flatten()
        .map(|x| x.magnitude().clone())
        .max()
        .unwrap_or_default();
    let sqrt_n = BigInt::from((n as f64).sqrt().ceil() as u64);
    let base = BigInt::from(b) * sqrt_n + 1;
    let bound = num_traits::pow(base, n) * num_traits::pow(BigInt::from(2), n);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut p = (1u64 << 62) - 1;
    while modulus <= &bound * 2 {
        while !is_prime_u64(p) {
            p -= 2;
        }
        let r = char_poly_mod(&ai, p);
        let pb = BigInt::from(p);
        let inv = BigInt::from(pow_mod(
            (&modulus % &pb).to_u64_digits().1.first().copied().unwrap_or(0),
            p - 2,
            p,
        ));
        for (x, &ri) in acc.iter_mut().zip(&r) {
            let diff = ((BigInt::from(ri) - &*x) % &pb + &pb) % &pb;
            let t = (diff * &inv) % &pb;
            *x += &modulus * t;
        }
        modulus *= pb;
        p -= 2;
    }
    let half = &modulus / 2;
    acc.into_iter()
        .enumerate()
        .map(|(k, x)| {
            let x = if x > half { x - &modulus } else { x };
            Rational::new(x, num_traits::pow(d.clone(), n - k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn companion_matrix() {
        // x^3 − 2x^2 + 3x − 5
        let a = vec![
            vec![q(0), q(0), q(5)],
            vec![q(1), q(0), q(-3)],
            vec![q(0), q(1), q(2)],
        ];
        assert_eq!(char_poly(a.clone()), vec![q(-5), q(3), q(-2), q(1)]);
        assert_eq!(char_poly_rational(&a), vec![q(-5), q(3), q(-2), q(1)]);
    }

    #[test]
    fn modular_matches_field_path() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let a = vec![
            vec![r(1, 2), r(-3, 1), r(0, 1), r(7, 3)],
            vec![r(2, 5), r(0, 1), r(1, 1), r(-1, 4)],
            vec![r(0, 1), r(5, 6), r(-2, 1), r(1, 1)],
            vec![r(9, 1), r(1, 7), r(3, 2), r(0, 1)],
        ];
        assert_eq!(char_poly_rational(&a), char_poly(a));
    }
}
