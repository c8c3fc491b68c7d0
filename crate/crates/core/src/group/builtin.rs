//! Named groups: `C<n>`, `S<n>`, `A<n>`, `D<n>` (order 2n), `Q8`, `SL2_3`,
//! `Aff<q>` and direct products `AxB`.

use super::{direct_product, Group};
use crate::error::{GrcError, Result};

/// Arithmetic in a small finite field. Elements are encoded as integers
/// whose base-p digits are polynomial coefficients.
#[derive(Clone, Debug)]
pub struct FiniteField {
    pub q: u32,
    pub p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<FiniteField> {
        // monic irreducible moduli, low degree first, without the leading 1
        let (p, modulus): (u32, &[u32]) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q, &[]),
            4 => (2, &[1, 1]),
            8 => (2, &[1, 1, 0]),
            9 => (3, &[1, 0]),
            16 => (2, &[1, 1, 0, 0]),
            _ => return Err(GrcError::UnknownGroup(format!("no field of order {q} available"))),
        };
        let deg = modulus.len().max(1);
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(deg);
            let mut x = x;
            for _ in 0..deg {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s);
                let prod = if modulus.is_empty() {
                    (a * b) % p
                } else {
                    let mut c = vec![0u32; 2 * deg - 1];
                    for i in 0..deg {
                        for j in 0..deg {
                            c[i + j] = (c[i + j] + da[i] * db[j]) % p;
                        }
                    }
                    // x^deg = -modulus
                    for k in (deg..c.len()).rev() {
                        let top = c[k];
                        c[k] = 0;
                        for (i, &m) in modulus.iter().enumerate() {
                            c[k - deg + i] = (c[k - deg + i] + (p - m % p) * top) % p;
                        }
                    }
                    encode(&c[..deg])
                };
                mul[(a * q + b) as usize] = prod;
            }
        }
        Ok(FiniteField { q, p, add, mul })
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q)
            .find(|&g| {
                let mut x = g;
                let mut k = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    k += 1;
                }
                k == self.q - 1
            })
            .unwrap_or(1)
    }
}

fn parse_param(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

#[allow(clippy::ptr_arg)]
fn compose(a: &Vec<u16>, b: &Vec<u16>) -> Vec<u16> {
    // (a·b)(p) = a(b(p)): b acts first
    b.iter().map(|&x| a[x as usize]).collect()
}

fn cycle(n: usize, pts: &[usize]) -> Vec<u16> {
    let mut p: Vec<u16> = (0..n as u16).collect();
    for w in 0..pts.len() {
        p[pts[w]] = pts[(w + 1) % pts.len()] as u16;
    }
    p
}

fn perm_group(name: &str, n: usize, gens: Vec<(String, Vec<u16>)>) -> Result<Group> {
    Group::generate(name, (0..n as u16).collect(), gens, compose)
}

fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(GrcError::UnknownGroup("C0".into()));
    }
    Group::generate(
        &format!("C{n}"),
        0usize,
        vec![("a".into(), 1 % n)],
        move |a, b| (a + b) % n,
    )
}

fn symmetric(n: usize) -> Result<Group> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(("t".into(), cycle(n, &[0, 1])));
        gens.push(("c".into(), cycle(n, &(0..n).collect::<Vec<_>>())));
    }
    perm_group(&format!("S{n}"), n.max(1), gens)
}

fn alternating(n: usize) -> Result<Group> {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(("a".into(), cycle(n, &[0, 1, 2])));
        if n >= 4 {
            let pts: Vec<usize> = if n % 2 == 1 {
                (0..n).collect()
            } else {
                (1..n).collect()
            };
            gens.push(("b".into(), cycle(n, &pts)));
        }
    }
    perm_group(&format!("A{n}"), n.max(1), gens)
}

fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(GrcError::UnknownGroup("D0".into()));
    }
    // (i, j) stands for a^i x^j
    Group::generate(
        &format!("D{n}"),
        (0usize, 0u8),
        vec![("a".into(), (1 % n, 0)), ("x".into(), (0, 1))],
        move |&(i1, j1), &(i2, j2)| {
            let i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 };
            (i % n, j1 ^ j2)
        },
    )
}

fn quaternion() -> Result<Group> {
    // (sign, unit) with unit in {1, i, j, k}
    const TABLE: [[(bool, u8); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    Group::generate(
        "Q8",
        (false, 0u8),
        vec![("i".into(), (false, 1)), ("j".into(), (false, 2))],
        |&(s1, u1), &(s2, u2)| {
            let (s, u) = TABLE[u1 as usize][u2 as usize];
            (s1 ^ s2 ^ s, u)
        },
    )
}

fn sl2_3() -> Result<Group> {
    type M = [u8; 4];
    fn m(a: i32, b: i32, c: i32, d: i32) -> M {
        let r = |x: i32| x.rem_euclid(3) as u8;
        [r(a), r(b), r(c), r(d)]
    }
    let mult = |x: &M, y: &M| -> M {
        let f = |a: u8, b: u8, c: u8, d: u8| ((a * b + c * d) % 3) as i32;
        m(
            f(x[0], y[0], x[1], y[2]),
            f(x[0], y[1], x[1], y[3]),
            f(x[2], y[0], x[3], y[2]),
            f(x[2], y[1], x[3], y[3]),
        )
    };
    Group::generate(
        "SL2_3",
        m(1, 0, 0, 1),
        vec![
            ("alpha".into(), m(0, -1, 1, 0)),
            ("beta".into(), m(1, 1, 1, -1)),
            ("gamma".into(), m(1, 1, 0, 1)),
        ],
        mult,
    )
}

fn affine(q: usize) -> Result<Group> {
    let f = FiniteField::new(q as u32)?;
    let g = f.primitive_element();
    // (a, b) is x -> a x + b
    let mut gens = vec![("t".to_string(), (1u32, 1u32))];
    gens.push(("m".into(), (g, 0)));
    Group::generate(&format!("Aff{q}"), (1u32, 0u32), gens, |&(a1, b1), &(a2, b2)| {
        (f.mul(a1, a2), f.add(f.mul(a1, b2), b1))
    })
}

/// The groups exercised by the test suites and `repro-paper`.
pub const BUILTIN_SUITE: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C2xC2", "C2xC4", "S3", "S4", "S5", "A4", "A5", "D4", "D5", "D6",
    "D8", "Q8", "SL2_3", "Aff4", "Aff5", "Aff7", "Aff8", "Aff9", "C3xS3",
];

/// Looks up a built-in group by name.
pub fn builtin_group(name: &str) -> Result<Group> {
    let name = name.trim();
    if name.contains('x') {
        let mut parts = name.split('x');
        let first = builtin_group(parts.next().unwrap())?;
        return parts.try_fold(first, |acc, p| direct_product(&acc, &builtin_group(p)?));
    }
    let unknown = || GrcError::UnknownGroup(name.to_string());
    match name {
        "Q8" => return quaternion(),
        "SL2_3" | "SL(2,3)" => return sl2_3(),
        _ => {}
    }
    if let Some(q) = parse_param(name, "Aff") {
        return affine(q);
    }
    let (prefix, n) = name.split_at(1.min(name.len()));
    let n: usize = n.parse().map_err(|_| unknown())?;
    match prefix {
        "C" => cyclic(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        "D" => dihedral(n),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (name, order) in [
            ("C1", 1),
            ("C7", 7),
            ("S1", 1),
            ("S2", 2),
            ("S4", 24),
            ("A3", 3),
            ("A4", 12),
            ("A5", 60),
            ("D1", 2),
            ("D2", 4),
            ("D8", 16),
            ("Q8", 8),
            ("SL2_3", 24),
            ("Aff3", 6),
            ("Aff4", 12),
            ("Aff5", 20),
            ("Aff8", 56),
            ("Aff9", 72),
            ("C2xC2", 4),
            ("S3xC3", 18),
            ("C2xC2xC2", 8),
        ] {
            let g = builtin_group(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert!(g.check_axioms(), "{name}");
        }
    }

    #[test]
    fn unknown_names() {
        for name in ["X3", "C", "C0", "Aff6", "", "Sfoo"] {
            assert!(builtin_group(name).is_err(), "{name}");
        }
    }

    #[test]
    fn fields_are_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FiniteField::new(q).unwrap();
            for a in 1..q {
                assert!((1..q).any(|b| f.mul(a, b) == 1), "q={q} a={a}");
            }
            let g = f.primitive_element();
            assert_ne!(g, 0);
        }
    }

    #[test]
    fn sl23_generator_relations() {
        let g = builtin_group("SL2_3").unwrap();
        let a = g.parse_element("alpha").unwrap();
        let b = g.parse_element("beta").unwrap();
        let c = g.parse_element("gamma").unwrap();
        assert_eq!(g.element_order(a), 4);
        assert_eq!(g.element_order(b), 4);
        assert_eq!(g.element_order(c), 3);
        assert_eq!(g.mul(g.mul(c, a), g.inv(c)), b);
        let q8 = g.subgroup_generated(&[a, b]);
        assert_eq!(q8.order(), 8);
        assert!(q8.is_normal());
    }

    #[test]
    fn product_generator_names() {
        let g = builtin_group("C2xC3").unwrap();
        assert_eq!(g.gen_names(), &["a1".to_string(), "a2".to_string()]);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }
}
