use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::Rational;
use crate::error::{GrcError, Result};
use crate::group::Group;
use crate::scalar::Scalar;

/// Σ_g x_g g with coefficients in ℤ, ℚ or ℚ(ζ_e).
#[derive(Clone, Debug)]
pub struct GroupRingElement<T> {
    group: Arc<Group>,
    coeffs: Vec<T>,
}

impl<T: Scalar> PartialEq for GroupRingElement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.group.order() == other.group.order() && self.coeffs == other.coeffs
    }
}

impl<T: Scalar> GroupRingElement<T> {
    pub fn zero(group: &Arc<Group>) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: vec![T::zero_elem(); group.order()],
        }
    }

    pub fn one(group: &Arc<Group>) -> Self {
        Self::basis(group, 0)
    }

    /// The group element g as a ring element.
    pub fn basis(group: &Arc<Group>, g: u32) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[g as usize] = T::one_elem();
        x
    }

    pub fn from_coeffs(group: &Arc<Group>, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(GrcError::Dimension(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupRingElement {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, g: u32) -> &T {
        &self.coeffs[g as usize]
    }

    pub fn set_coeff(&mut self, g: u32, c: T) {
        self.coeffs[g as usize] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero_elem)
    }

    pub fn support(&self) -> Vec<u32> {
        (0..self.coeffs.len() as u32)
            .filter(|&g| !self.coeffs[g as usize].is_zero_elem())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.sub_assign_ref(b);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg_ref)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.group);
        self.mul_add_into(other, &mut out.coeffs);
        out
    }

    /// Adds self · other to `acc`.
    pub(crate) fn mul_add_into(&self, other: &Self, acc: &mut [T]) {
        let g = &self.group;
        let rhs: Vec<(u32, &T)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_elem())
            .map(|(h, c)| (h as u32, c))
            .collect();
        if rhs.is_empty() {
            return;
        }
        for (x, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for &(h, b) in &rhs {
                acc[g.mul(x as u32, h) as usize].add_mul_assign(a, b);
            }
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GroupRingElement<U> {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Σ_g x_g.
    pub fn augmentation(&self) -> T {
        let mut acc = T::zero_elem();
        for c in &self.coeffs {
            acc.add_assign_ref(c);
        }
        acc
    }

    /// Sum of coefficients over each conjugacy class.
    pub fn class_totals(&self) -> Vec<T> {
        let cc = self.group.conjugacy_classes();
        cc.members
            .iter()
            .map(|m| {
                let mut acc = T::zero_elem();
                for &g in m {
                    acc.add_assign_ref(&self.coeffs[g as usize]);
                }
                acc
            })
            .collect()
    }

    /// Coefficient-wise pushforward along a homomorphism given by its
    /// element map.
    pub fn pushforward(&self, target: &Arc<Group>, map: &[u32]) -> Self {
        let mut out = Self::zero(target);
        for (g, c) in self.coeffs.iter().enumerate() {
            out.coeffs[map[g] as usize].add_assign_ref(c);
        }
        out
    }

    /// Pulls the element back to a subgroup along its embedding; entries
    /// outside the subgroup must vanish.
    pub fn restrict_to(&self, sub: &Arc<Group>, embedding: &[u32]) -> Result<Self> {
        let mut inside = vec![false; self.coeffs.len()];
        for &g in embedding {
            inside[g as usize] = true;
        }
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(g, c)| !inside[g] && !c.is_zero_elem())
        {
            return Err(GrcError::Mismatch(
                "element is not supported on the subgroup".into(),
            ));
        }
        Ok(GroupRingElement {
            group: sub.clone(),
            coeffs: embedding
                .iter()
                .map(|&g| self.coeffs[g as usize].clone())
                .collect(),
        })
    }

    /// The element with coefficients mapped into ℚ, if they are rational.
    pub fn to_rational(&self) -> Option<GroupRingElement<Rational>> {
        Some(GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(T::to_rational).collect::<Option<_>>()?,
        })
    }

    /// Text form with generator words, e.g. `1/3*1 + 1/3*c + -1/3*t`.
    pub fn to_word_string(&self) -> String
    where
        T: fmt::Display,
    {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|g| format!("{}*{}", self.coeffs[g as usize], self.group.word(g)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl GroupRingElement<Rational> {
    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Exact conversion to integer coefficients.
    pub fn to_integer(&self) -> Option<GroupRingElement<BigInt>> {
        self.is_integral().then(|| self.map(|c| c.numer().clone()))
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for GroupRingElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|g| format!("{} * g{g}", self.coeffs[g as usize]))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || GrcError::Parse(format!("bad coefficient `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(GrcError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `<rational>:<word>` terms separated by commas, e.g.
/// `1:1, -2:a^2*x, 1/2:g5`. A term without `:` has coefficient 1; a bare
/// `0` is the zero element and a bare rational is a multiple of 1.
pub fn parse_element(group: &Arc<Group>, s: &str) -> Result<GroupRingElement<Rational>> {
    let mut out = GroupRingElement::<Rational>::zero(group);
    let s = s.trim();
    if s.is_empty() {
        return Err(GrcError::Parse("empty element".into()));
    }
    if s == "0" {
        return Ok(out);
    }
    for term in s.split(',') {
        let term = term.trim();
        let (c, w) = match term.split_once(':') {
            Some((c, w)) => (parse_rational(c)?, w),
            None => match parse_rational(term) {
                Ok(q) => (q, "1"),
                Err(_) => (Rational::one(), term),
            },
        };
        let g = group.parse_element(w)?;
        out.coeffs[g as usize] += c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;

    fn s3() -> Arc<Group> {
        Arc::new(builtin_group("S3").unwrap())
    }

    #[test]
    fn convolution() {
        let g = s3();
        let t = g.parse_element("t").unwrap();
        let x = GroupRingElement::<BigInt>::one(&g).add(&GroupRingElement::basis(&g, t));
        // (1 + t)^2 = 2 (1 + t)
        assert_eq!(x.mul(&x), x.scale(&BigInt::from(2)));
        assert_eq!(x.augmentation(), BigInt::from(2));
    }

    #[test]
    fn parse_terms() {
        let g = s3();
        let x = parse_element(&g, "1:1, -1/2:t, t").unwrap();
        let t = g.parse_element("t").unwrap();
        assert_eq!(*x.coeff(0), Rational::one());
        assert_eq!(*x.coeff(t), Rational::new(1.into(), 2.into()));
        assert!(parse_element(&g, "0").unwrap().is_zero());
        assert!(parse_element(&g, "1/0:t").is_err());
        assert!(parse_element(&g, "q").is_err());
        assert_eq!(x.denominator(), BigInt::from(2));
    }

    #[test]
    fn pushforward_is_multiplicative() {
        let g = Arc::new(builtin_group("D4").unwrap());
        let (q, proj) = g.quotient_group(g.commutator_subgroup()).unwrap();
        let q = Arc::new(q);
        let a = parse_element(&g, "1:a, 2:x, -1:a*x").unwrap();
        let b = parse_element(&g, "3:1, 1:a^3").unwrap();
        let lhs = a.mul(&b).pushforward(&q, &proj);
        let rhs = a.pushforward(&q, &proj).mul(&b.pushforward(&q, &proj));
        assert_eq!(lhs, rhs);
    }
}
