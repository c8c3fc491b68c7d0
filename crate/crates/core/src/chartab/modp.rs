//! Arithmetic and linear algebra over F_p for the modular character table
//! computation.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    /// Smallest generator of F_p^×.
    pub fn primitive_root(self) -> u64 {
        let n = self.p - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, n / q) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of the right null space {v : A v = 0} of an m×n matrix.
    pub fn nullspace(self, a: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        let mut rows = a.to_vec();
        let pivots = self.rref(&mut rows);
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = self.sub(0, row[free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial det(xI − A), constant term first, by
    /// reduction to Hessenberg form.
    pub fn charpoly(self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = self.inv(h[m][m - 1]);
            for i in m + 1..n {
                let u = self.mul(h[i][m - 1], inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = self.mul(u, h[m][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(u, row[i]);
                    row[m] = self.add(row[m], t);
                }
            }
        }
        // p_k = char poly of the leading k×k block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            // p_{k+1} = (x − h_kk) p_k − Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j-1}) p_i
            let mut next = vec![0u64; k + 2];
            for (d, &c) in polys[k].iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[k][k], c));
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let coef = self.mul(prod, h[i][k]);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn primitive_roots() {
        for p in [3u64, 5, 7, 11, 13, 97, 421] {
            let f = Fp { p };
            let g = f.primitive_root();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..p - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u64, p - 1);
        }
    }

    #[test]
    fn charpoly_matches_cofactor_expansion() {
        let f = Fp { p: 101 };
        let a = vec![vec![2, 3, 0], vec![5, 1, 7], vec![4, 0, 9]];
        let cp = f.charpoly(&a);
        // det(xI − A) at several points against direct 3×3 determinant
        for x in 0..10u64 {
            let m: Vec<Vec<u64>> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| f.sub(if i == j { x } else { 0 }, a[i][j]))
                        .collect()
                })
                .collect();
            let det = f.sub(
                f.add(
                    f.add(
                        f.mul(m[0][0], f.sub(f.mul(m[1][1], m[2][2]), f.mul(m[1][2], m[2][1]))),
                        f.mul(m[0][2], f.sub(f.mul(m[1][0], m[2][1]), f.mul(m[1][1], m[2][0]))),
                    ),
                    0,
                ),
                f.mul(m[0][1], f.sub(f.mul(m[1][0], m[2][2]), f.mul(m[1][2], m[2][0]))),
            );
            assert_eq!(f.eval(&cp, x), det);
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Fp { p: 13 };
        let a = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]];
        let ns = f.nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row
                    .iter()
                    .zip(&v)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }
}
