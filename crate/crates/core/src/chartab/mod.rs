//! Irreducible character tables.
//!
//! Tables are computed with the Dixon–Schneider method: common eigenvectors
//! of the class multiplication matrices over F_p give the central
//! characters modulo p, and the character values are lifted to ℚ(ζ_e) by
//! an inverse discrete Fourier transform along the powers of each class
//! representative.

mod io;
pub(crate) mod modp;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::{gcd_u64, Cyclo, Rational};
use crate::error::{GrcError, Result};
use crate::group::{ConjClasses, Group};
use modp::{is_prime, Fp};

pub use io::{load_degrees, load_table, parse_degrees, parse_table, save_table, write_table, DegreeList};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub degree: u64,
    pub values: Vec<Cyclo>,
}

impl Character {
    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(Cyclo::is_rational)
    }

    /// Applies σ_k to every value.
    pub fn galois(&self, k: i64) -> Result<Character> {
        Ok(Character {
            degree: self.degree,
            values: self.values.iter().map(|v| v.galois(k)).collect::<Result<_>>()?,
        })
    }

    fn cmp_values(&self, other: &Character) -> Ordering {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.cmp_coords(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub order: usize,
    pub exponent: u32,
    pub sizes: Vec<usize>,
    pub reps: Vec<u32>,
    pub inverse_class: Vec<usize>,
    pub rows: Vec<Character>,
}

/// Structure constants a[i][j][k] of the class sums: C_i C_j = Σ_k a_ijk C_k.
#[derive(Clone, Debug)]
pub struct ClassMult {
    k: usize,
    data: Vec<u64>,
}

impl ClassMult {
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.data[(i * self.k + j) * self.k + l]
    }
    pub fn class_count(&self) -> usize {
        self.k
    }
}

pub fn class_mult_coefficients(g: &Group) -> ClassMult {
    let cc = g.conjugacy_classes();
    let k = cc.count();
    let mut data = vec![0u64; k * k * k];
    for (i, members) in cc.members.iter().enumerate() {
        for &x in members {
            let xi = g.inv(x);
            for (l, &r) in cc.reps.iter().enumerate() {
                let j = cc.class_of[g.mul(xi, r) as usize];
                data[(i * k + j) * k + l] += 1;
            }
        }
    }
    ClassMult { k, data }
}

/// Candidate primes p ≡ 1 (mod e) with p > 2⌈√n⌉, in increasing order.
pub fn dixon_primes(order: usize, e: u32) -> impl Iterator<Item = u64> {
    let root = (order as f64).sqrt().ceil() as u64;
    let root = (root.saturating_sub(1)..=root + 1)
        .find(|r| r * r >= order as u64)
        .unwrap_or(root);
    let bound = 2 * root;
    let e = e as u64;
    (1..)
        .map(move |t| t * e + 1)
        .filter(move |&p| p > bound && is_prime(p))
}

const MAX_PRIME_ATTEMPTS: usize = 12;

/// Computes the character table of `g`.
pub fn dixon_table(g: &Group) -> Result<CharacterTable> {
    let cc = g.conjugacy_classes();
    let e = g.exponent() as u32;
    let cm = class_mult_coefficients(g);
    let mut last_err = None;
    for p in dixon_primes(g.order(), e).take(MAX_PRIME_ATTEMPTS) {
        match dixon_mod_p(g, cc, &cm, e, p) {
            Ok(rows) => {
                let mut table = CharacterTable {
                    order: g.order(),
                    exponent: e,
                    sizes: cc.sizes.clone(),
                    reps: cc.reps.clone(),
                    inverse_class: cc.inverse_class.clone(),
                    rows,
                };
                table.sort_rows();
                table.verify()?;
                return Ok(table);
            }
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.unwrap_or_else(|| GrcError::Dixon("no candidate prime".into())))
}

fn dixon_mod_p(g: &Group, cc: &ConjClasses, cm: &ClassMult, e: u32, p: u64) -> Result<Vec<Character>> {
    let f = Fp { p };
    let k = cc.count();
    let fail = |msg: &str| GrcError::Dixon(format!("p = {p}: {msg}"));

    // refine common eigenspaces of the M_j, each stored as an RREF basis
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mj: Vec<Vec<u64>> = (0..k)
            .map(|r| (0..k).map(|c| cm.get(j, r, c) % p).collect())
            .collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(f, &mj, space).ok_or_else(|| fail("eigenspace split failed"))?);
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(fail("common eigenspaces are not all one-dimensional"));
    }

    let w = f.pow(f.primitive_root(), (p - 1) / e as u64);
    let order = g.order() as u64;
    // power maps: class of rep^j for each class
    let powers: Vec<Vec<usize>> = cc
        .reps
        .iter()
        .map(|&r| {
            let o = g.element_order(r);
            let mut x = 0u32;
            (0..o)
                .map(|_| {
                    let c = cc.class_of[x as usize];
                    x = g.mul(x, r);
                    c
                })
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(fail("eigenvector vanishes at the identity class"));
        }
        let inv0 = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        let mut s = 0u64;
        for c in 0..k {
            let h = cc.sizes[c] as u64 % p;
            s = f.add(s, f.mul(f.mul(omega[c], omega[cc.inverse_class[c]]), f.inv(h)));
        }
        if s == 0 {
            return Err(fail("degree sum vanishes"));
        }
        let d2 = f.mul(order % p, f.inv(s));
        let degree = (1..=order)
            .take_while(|d| d * d <= order)
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| fail("no degree lifts"))?;
        if !order.is_multiple_of(degree) {
            return Err(fail("degree does not divide the group order"));
        }
        let theta: Vec<u64> = (0..k)
            .map(|c| f.mul(f.mul(degree % p, omega[c]), f.inv(cc.sizes[c] as u64 % p)))
            .collect();
        let mut values = Vec::with_capacity(k);
        for pw in &powers {
            let o = pw.len() as u64;
            let wo = f.pow(w, e as u64 / o);
            let wo_inv = f.inv(wo);
            let o_inv = f.inv(o % p);
            let mut num = vec![BigInt::zero(); o as usize];
            let mut total = 0u64;
            for (l, slot) in num.iter_mut().enumerate() {
                let mut acc = 0u64;
                let step = f.pow(wo_inv, l as u64);
                let mut x = 1u64;
                for &cls in pw.iter() {
                    acc = f.add(acc, f.mul(theta[cls], x));
                    x = f.mul(x, step);
                }
                let m = f.mul(acc, o_inv);
                if m > degree {
                    return Err(fail("eigenvalue multiplicity out of range"));
                }
                total += m;
                *slot = BigInt::from(m);
            }
            if total != degree {
                return Err(fail("eigenvalue multiplicities do not sum to the degree"));
            }
            values.push(cyclo_from_multiplicities(o as u32, &num));
        }
        rows.push(Character { degree, values });
    }
    Ok(rows)
}

/// Σ_l m_l ζ_o^l, reduced to the smallest conductor dividing o that
/// contains it when the value is rational.
fn cyclo_from_multiplicities(o: u32, m: &[BigInt]) -> Cyclo {
    let mut acc = Cyclo::zero();
    for (l, c) in m.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &Cyclo::root(o, l as i64).scale_int(c);
        }
    }
    acc
}

/// Splits an invariant subspace into eigenspaces of `m`. Returns `None`
/// when the eigenvalues do not all lie in F_p or the restriction is not
/// diagonalisable.
fn split_space(f: Fp, m: &[Vec<u64>], space: Vec<Vec<u64>>) -> Option<Vec<Vec<Vec<u64>>>> {
    let d = space.len();
    let k = m.len();
    let mut basis = space;
    let pivots = f.rref(&mut basis);
    if basis.len() != d {
        return None;
    }
    // matrix of m on the subspace, in the coordinates read off at the pivots
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|r| (0..k).fold(0, |acc, c| f.add(acc, f.mul(m[r][c], b[c]))))
                .collect()
        })
        .collect();
    let a: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|c| images[c][pivots[r]]).collect())
        .collect();
    let cp = f.charpoly(&a);
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..f.p {
        if f.eval(&cp, lambda) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| if r == c { f.sub(a[r][c], lambda) } else { a[r][c] })
                    .collect()
            })
            .collect();
        let ns = f.nullspace(&shifted, d);
        found += ns.len();
        let mut vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|coef| {
                (0..k)
                    .map(|i| (0..d).fold(0, |acc, t| f.add(acc, f.mul(coef[t], basis[t][i]))))
                    .collect()
            })
            .collect();
        f.rref(&mut vecs);
        out.push(vecs);
        if found == d {
            break;
        }
    }
    (found == d).then_some(out)
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn row(&self, i: usize) -> &Character {
        &self.rows[i]
    }

    /// Canonical order: degree, then the trivial character, then
    /// lexicographic on value coordinates.
    pub(crate) fn sort_rows(&mut self) {
        let one = Cyclo::one();
        self.rows.sort_by(|a, b| {
            let triv_a = a.values.iter().all(|v| *v == one);
            let triv_b = b.values.iter().all(|v| *v == one);
            a.degree
                .cmp(&b.degree)
                .then(triv_b.cmp(&triv_a))
                .then_with(|| a.cmp_values(b))
        });
    }

    /// ⟨a, b⟩ = (1/|G|) Σ_c |C_c| a(c) conj(b(c)).
    pub fn inner(&self, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero();
        for c in 0..self.class_count() {
            let term = &a[c] * &b[c].conj();
            acc = &acc + &term.scale_int(&BigInt::from(self.sizes[c]));
        }
        acc.scale(&Rational::new(1.into(), BigInt::from(self.order)))
    }

    /// Row orthogonality, column orthogonality, degree sum, values at the
    /// identity and integrality of values.
    pub fn verify(&self) -> Result<()> {
        let k = self.class_count();
        let bad = |m: String| Err(GrcError::Orthogonality(m));
        if self.rows.len() != k || self.reps.len() != k || self.inverse_class.len() != k {
            return bad(format!("{} rows for {k} classes", self.rows.len()));
        }
        if self.sizes.iter().sum::<usize>() != self.order || self.sizes[0] != 1 {
            return bad("class sizes do not sum to the group order".into());
        }
        let mut deg_sum = 0u128;
        for (i, r) in self.rows.iter().enumerate() {
            if r.values.len() != k {
                return bad(format!("row {i} has {} values", r.values.len()));
            }
            if r.values[0] != Cyclo::from_int(r.degree) {
                return bad(format!("row {i} value at identity differs from degree"));
            }
            if r.values.iter().any(|v| !v.is_integral()) {
                return bad(format!("row {i} has a non-integral value"));
            }
            deg_sum += (r.degree as u128).pow(2);
        }
        if deg_sum != self.order as u128 {
            return bad(format!("sum of squared degrees {deg_sum} != {}", self.order));
        }
        for i in 0..k {
            for j in i..k {
                let ip = self.inner(&self.rows[i].values, &self.rows[j].values);
                let want = if i == j { Cyclo::one() } else { Cyclo::zero() };
                if ip != want {
                    return bad(format!("rows {i} and {j} have inner product {ip}"));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let mut acc = Cyclo::zero();
                for r in &self.rows {
                    acc = &acc + &(&r.values[c] * &r.values[d].conj());
                }
                let want = if c == d {
                    Cyclo::from_int((self.order / self.sizes[c]) as i64)
                } else {
                    Cyclo::zero()
                };
                if acc != want {
                    return bad(format!("columns {c} and {d} have product {acc}"));
                }
            }
        }
        for c in 0..k {
            let ic = self.inverse_class[c];
            if ic >= k
                || self.inverse_class[ic] != c
                || self.rows.iter().any(|r| r.values[ic] != r.values[c].conj())
            {
                return bad(format!("inverse class of {c} is inconsistent"));
            }
        }
        Ok(())
    }

    /// For each k coprime to the exponent, σ_k permutes the rows.
    pub fn check_galois_stability(&self) -> Result<()> {
        let e = self.exponent as u64;
        for kk in 1..e.max(2) {
            if gcd_u64(kk, e) != 1 {
                continue;
            }
            for (i, r) in self.rows.iter().enumerate() {
                let s = r.galois(kk as i64)?;
                if !self.rows.contains(&s) {
                    return Err(GrcError::Orthogonality(format!(
                        "sigma_{kk} of row {i} is not a row"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Index of the row σ_k(χ_i).
    pub fn galois_row(&self, i: usize, k: i64) -> Result<usize> {
        let s = self.rows[i].galois(k)?;
        self.rows
            .iter()
            .position(|x| *x == s)
            .ok_or(GrcError::NotGaloisStable)
    }

    /// Galois orbits of rows under (ℤ/e)^×, each sorted, ordered by first
    /// member.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let e = self.exponent as u64;
        let mut seen = vec![false; self.rows.len()];
        let mut orbits = Vec::new();
        for i in 0..self.rows.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![i];
            seen[i] = true;
            if !self.rows[i].is_rational() {
                for kk in 2..e {
                    if gcd_u64(kk, e) != 1 {
                        continue;
                    }
                    if let Ok(j) = self.galois_row(i, kk as i64) {
                        if !seen[j] {
                            seen[j] = true;
                            orbit.push(j);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Number of linear characters.
    pub fn linear_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_linear()).count()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.degree).collect()
    }

    pub fn max_degree(&self) -> u64 {
        self.rows.iter().map(|r| r.degree).max().unwrap_or(1)
    }

    /// Value χ_i(g) for a class index.
    pub fn value(&self, i: usize, class: usize) -> &Cyclo {
        &self.rows[i].values[class]
    }

    pub fn degree_u64(&self, i: usize) -> u64 {
        self.rows[i].degree
    }

    /// True when every row has rational values, as for symmetric groups.
    pub fn is_rational(&self) -> bool {
        self.rows.iter().all(Character::is_rational)
    }

    /// Degree of χ_i as a usize, for sizing matrices.
    pub fn degree_usize(&self, i: usize) -> usize {
        self.rows[i].degree.to_usize().expect("degree fits in usize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;

    fn table(name: &str) -> CharacterTable {
        dixon_table(&builtin_group(name).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_three() {
        let t = table("C3");
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        let g = builtin_group("C3").unwrap();
        let a = g.parse_element("a").unwrap();
        let ca = g.conjugacy_classes().class_of[a as usize];
        let mut vals: Vec<Cyclo> = t.rows.iter().map(|r| r.values[ca].clone()).collect();
        vals.sort_by(|x, y| x.cmp_coords(y));
        let mut want = vec![Cyclo::one(), Cyclo::root(3, 1), Cyclo::root(3, 2)];
        want.sort_by(|x, y| x.cmp_coords(y));
        assert_eq!(vals, want);
    }

    #[test]
    fn symmetric_three() {
        let t = table("S3");
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        let two: Vec<Cyclo> = [2, -1, 0].into_iter().map(Cyclo::from_int).collect();
        assert_eq!(t.rows[2].values, two);
        assert_eq!(t.rows[0].values, vec![Cyclo::one(); 3]);
    }

    #[test]
    fn dihedral_sixteen() {
        let t = table("D8");
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(t.linear_count(), 4);
        t.check_galois_stability().unwrap();
    }

    #[test]
    fn class_mult_examples() {
        let g = builtin_group("S3").unwrap();
        let cm = class_mult_coefficients(&g);
        for j in 0..3 {
            for l in 0..3 {
                assert_eq!(cm.get(0, j, l), u64::from(j == l));
            }
        }
        // classes by size: {1}, 3-cycles, transpositions
        assert_eq!(cm.get(2, 2, 0), 3);
        assert_eq!(cm.get(2, 2, 1), 3);
        assert_eq!(cm.get(2, 2, 2), 0);
        let c5 = builtin_group("C5").unwrap();
        let cm = class_mult_coefficients(&c5);
        for i in 0..5 {
            for j in 0..5 {
                let row: Vec<u64> = (0..5).map(|l| cm.get(i, j, l)).collect();
                assert_eq!(row.iter().sum::<u64>(), 1);
            }
        }
    }

    #[test]
    fn prime_choice() {
        // |G| = 24, e = 12: bound 2*5 = 10, first p ≡ 1 mod 12 above is 13
        assert_eq!(dixon_primes(24, 12).next(), Some(13));
        assert_eq!(dixon_primes(6, 6).next(), Some(7));
        assert_eq!(dixon_primes(16, 8).next(), Some(17));
    }

    #[test]
    fn many_groups_verify() {
        for name in [
            "C1", "C2", "Q8", "SL2_3", "A4", "A5", "S4", "Aff5", "Aff8", "C3xS3", "D6",
        ] {
            let t = table(name);
            t.verify().unwrap();
            t.check_galois_stability().unwrap();
        }
    }

    #[test]
    fn galois_orbits_cover_rows() {
        let t = table("C5");
        let orbits = t.galois_orbits();
        assert_eq!(orbits, vec![vec![0], vec![1, 2, 3, 4]]);
    }
}
