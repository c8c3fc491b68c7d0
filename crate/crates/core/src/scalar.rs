//! Coefficient rings for group-ring elements.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::{Cyclo, Rational};

/// A commutative coefficient ring: ℤ, ℚ or ℚ(ζ_e).
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn from_int(n: i64) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_cyclo(&self) -> Cyclo;
    fn to_rational(&self) -> Option<Rational>;
    fn from_bigint(n: &BigInt) -> Self;

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }
}

impl Scalar for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_cyclo(&self) -> Cyclo {
        Cyclo::from_int(self.clone())
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(self.clone()))
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Scalar for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_cyclo(&self) -> Cyclo {
        Cyclo::from_rational(self)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

impl Scalar for Cyclo {
    fn zero_elem() -> Self {
        Cyclo::zero()
    }
    fn one_elem() -> Self {
        Cyclo::one()
    }
    fn is_zero_elem(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn from_int(n: i64) -> Self {
        Cyclo::from_int(n)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = &*self + rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = &*self - rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_cyclo(&self) -> Cyclo {
        self.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Cyclo::to_rational(self)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Cyclo::from_int(n.clone())
    }
}
