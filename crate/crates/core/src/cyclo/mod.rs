//! Exact arithmetic in ℚ and the cyclotomic fields ℚ(ζ_e).
//!
//! A [`Cyclo`] stores its value in the power basis 1, ζ, …, ζ^{φ(e)−1}
//! modulo Φ_e, as an integer numerator vector over one positive common
//! denominator. The representation is canonical for a fixed conductor;
//! operands of different conductors are lifted to the lcm first.

mod field;
mod literal;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{GrcError, Result};

pub use field::{cyclotomic_polynomial, euler_phi};
pub use literal::parse_cyclo;

pub type Rational = num_rational::BigRational;

/// An element of ℚ(ζ_e).
#[derive(Clone, Debug)]
pub struct Cyclo {
    e: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Cyclo {
    fn from_parts(e: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field::field(e).phi);
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if num.iter().all(Zero::is_zero) {
                g = den.clone();
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = &den / &g;
            }
        }
        Cyclo { e, num, den }
    }

    /// Reduces a coefficient vector indexed by exponents 0..e (ζ_e^k) into
    /// the power basis.
    fn from_exponent_vector(e: u32, acc: Vec<BigInt>, den: BigInt) -> Self {
        let f = field::field(e);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.phi {
                num[k] += c;
            } else {
                for (j, &p) in f.powers[k].iter().enumerate() {
                    if p != 0 {
                        num[j] += &c * p;
                    }
                }
            }
        }
        Self::from_parts(e, num, den)
    }

    pub fn zero() -> Self {
        Cyclo {
            e: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Cyclo {
            e: 1,
            num: vec![n.into()],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        Self::from_parts(1, vec![q.numer().clone()], q.denom().clone())
    }

    /// ζ_e^k, with k reduced modulo e.
    pub fn root(e: u32, k: i64) -> Self {
        assert!(e >= 1, "conductor must be positive");
        let k = k.rem_euclid(e as i64) as usize;
        let f = field::field(e);
        let num = f.powers[k].iter().map(|&c| BigInt::from(c)).collect();
        Cyclo {
            e,
            num,
            den: BigInt::one(),
        }
    }

    /// Builds a value from power-basis coordinates (length φ(e)).
    pub fn from_coords(e: u32, coords: &[Rational]) -> Result<Self> {
        let phi = field::field(e).phi;
        if coords.len() != phi {
            return Err(GrcError::Dimension(format!(
                "expected {phi} coordinates for conductor {e}, got {}",
                coords.len()
            )));
        }
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(e, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.e
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn coord(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// True when all power-basis coordinates are integers, i.e. the value
    /// lies in ℤ[ζ_e].
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Re-expresses the value in ℚ(ζ_l); `l` must be a multiple of the
    /// conductor.
    pub fn lift(&self, l: u32) -> Self {
        assert!(
            l.is_multiple_of(self.e),
            "cannot lift conductor {} to {l}",
            self.e
        );
        if l == self.e {
            return self.clone();
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); field::field(l).phi];
            num[0] = self.num[0].clone();
            return Cyclo {
                e: l,
                num,
                den: self.den.clone(),
            };
        }
        let step = (l / self.e) as usize;
        let mut acc = vec![BigInt::zero(); l as usize];
        for (j, c) in self.num.iter().enumerate() {
            acc[j * step] = c.clone();
        }
        Self::from_exponent_vector(l, acc, self.den.clone())
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let l = lcm_u32(a.e, b.e);
        (a.lift(l), b.lift(l))
    }

    /// Applies the automorphism σ_k: ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let e = self.e as i64;
        if (k.rem_euclid(e) as u64).gcd(&(e as u64)) != 1 && e > 1 {
            return Err(GrcError::NotCoprime { k, e: self.e });
        }
        if self.is_rational() {
            return Ok(self.clone());
        }
        let mut acc = vec![BigInt::zero(); self.e as usize];
        for (j, c) in self.num.iter().enumerate() {
            let idx = ((j as i64) * k).rem_euclid(e) as usize;
            acc[idx] += c;
        }
        Ok(Self::from_exponent_vector(self.e, acc, self.den.clone()))
    }

    /// Complex conjugation σ_{−1}.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit modulo every conductor")
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Cyclo::zero();
        }
        Self::from_parts(self.e, self.num.iter().map(|c| c * k).collect(), self.den.clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Cyclo::zero();
        }
        Self::from_parts(
            self.e,
            self.num.iter().map(|c| c * q.numer()).collect(),
            &self.den * q.denom(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(GrcError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Cyclo::from_rational(&q.recip()));
        }
        let f = field::field(self.e);
        let modulus: Vec<Rational> = f
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let inv = poly::inverse_mod(&self.coords(), &modulus).ok_or(GrcError::DivisionByZero)?;
        let mut coords = inv;
        coords.resize(f.phi, Rational::zero());
        Cyclo::from_coords(self.e, &coords)
    }

    pub fn checked_div(&self, other: &Cyclo) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Lexicographic comparison of power-basis coordinates after lifting to
    /// a common conductor.
    pub fn cmp_coords(&self, other: &Cyclo) -> Ordering {
        let (a, b) = Self::common(self, other);
        for (x, y) in a.num.iter().zip(&b.num) {
            let ord = (x * &b.den).cmp(&(y * &a.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    fn add_impl(&self, other: &Cyclo, negate: bool) -> Cyclo {
        let (a, b) = if self.e == other.e {
            (self.clone(), other.clone())
        } else {
            Self::common(self, other)
        };
        let num: Vec<BigInt> = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if a.den == b.den { a.den } else { a.den * b.den };
        Self::from_parts(a.e, num, den)
    }

    fn mul_impl(&self, other: &Cyclo) -> Cyclo {
        if let Some(q) = self.to_rational() {
            let l = lcm_u32(self.e, other.e);
            return other.lift(l).scale(&q);
        }
        if let Some(q) = other.to_rational() {
            let l = lcm_u32(self.e, other.e);
            return self.lift(l).scale(&q);
        }
        let (a, b) = if self.e == other.e {
            (self.clone(), other.clone())
        } else {
            Self::common(self, other)
        };
        let e = a.e as usize;
        let mut acc = vec![BigInt::zero(); e];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % e] += x * y;
            }
        }
        Self::from_exponent_vector(a.e, acc, a.den * b.den)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.e == other.e {
            return self.den == other.den && self.num == other.num;
        }
        if self.is_rational() && other.is_rational() {
            return self.den == other.den && self.num[0] == other.num[0];
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclo {}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

impl From<Rational> for Cyclo {
    fn from(q: Rational) -> Self {
        Cyclo::from_rational(&q)
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &'a Cyclo) -> Cyclo {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &'a Cyclo) -> Cyclo {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &'a Cyclo) -> Cyclo {
        self.mul_impl(rhs)
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        self.add_impl(&rhs, false)
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        self.add_impl(&rhs, true)
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        self.mul_impl(&rhs)
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            e: self.e,
            num: self.num.into_iter().map(|c| -c).collect(),
            den: self.den,
        }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -(self.clone())
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::one()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format_cyclo(self))
    }
}

/// Least common multiple of the denominators of a set of rational values.
/// Irrational entries are an error.
pub fn denominator_lcm<'a, I>(values: I) -> Result<BigInt>
where
    I: IntoIterator<Item = &'a Cyclo>,
{
    let mut l = BigInt::one();
    for v in values {
        if !v.is_rational() {
            return Err(GrcError::NotRational(v.to_string()));
        }
        l = l.lcm(v.denominator());
    }
    Ok(l)
}
