use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use super::element::{parse_element, GroupRingElement};
use crate::cyclo::Rational;
use crate::error::{GrcError, Result};
use crate::group::Group;
use crate::scalar::Scalar;

/// A square matrix over a group ring, stored row-major.
#[derive(Clone, Debug)]
pub struct GroupRingMatrix<T> {
    n: usize,
    entries: Vec<GroupRingElement<T>>,
}

impl<T: Scalar> PartialEq for GroupRingMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<T: Scalar> GroupRingMatrix<T> {
    pub fn zero(group: &Arc<Group>, n: usize) -> Self {
        GroupRingMatrix {
            n,
            entries: vec![GroupRingElement::zero(group); n * n],
        }
    }

    pub fn identity(group: &Arc<Group>, n: usize) -> Self {
        Self::scalar(&GroupRingElement::one(group), n)
    }

    /// x times the identity matrix.
    pub fn scalar(x: &GroupRingElement<T>, n: usize) -> Self {
        let mut m = Self::zero(x.group(), n);
        for i in 0..n {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    /// The 1×1 matrix [x].
    pub fn from_element(x: GroupRingElement<T>) -> Self {
        GroupRingMatrix {
            n: 1,
            entries: vec![x],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<GroupRingElement<T>>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(GrcError::Dimension(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        let order = entries[0].group().order();
        if entries.iter().any(|e| e.group().order() != order) {
            return Err(GrcError::Mismatch("entries over different groups".into()));
        }
        Ok(GroupRingMatrix { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &Arc<Group> {
        self.entries[0].group()
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement<T> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElement<T>) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[GroupRingElement<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        GroupRingMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GroupRingMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let group = self.group().clone();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let mut acc = vec![T::zero_elem(); group.order()];
                for j in 0..n {
                    self.get(i, j).mul_add_into(other.get(j, k), &mut acc);
                }
                entries.push(GroupRingElement::from_coeffs(&group, acc).expect("sizes agree"));
            }
        }
        GroupRingMatrix { n, entries }
    }

    /// Multiplies every entry on the left by x.
    pub fn left_scale(&self, x: &GroupRingElement<T>) -> Self {
        self.map_entries(|e| x.mul(e))
    }

    /// H^0, H^1, …, H^k.
    pub fn powers(&self, k: usize) -> Vec<Self> {
        let mut out = vec![Self::identity(self.group(), self.n)];
        for _ in 0..k {
            let next = out.last().unwrap().mul(self);
            out.push(next);
        }
        out
    }

    pub fn map_entries<U: Scalar>(
        &self,
        f: impl Fn(&GroupRingElement<T>) -> GroupRingElement<U>,
    ) -> GroupRingMatrix<U> {
        GroupRingMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> GroupRingMatrix<U> {
        self.map_entries(|e| e.map(f))
    }

    /// Sum of coefficients of the diagonal entries over each class.
    pub fn trace_class_totals(&self) -> Vec<T> {
        let mut acc: Option<Vec<T>> = None;
        for i in 0..self.n {
            let t = self.get(i, i).class_totals();
            acc = Some(match acc {
                None => t,
                Some(mut a) => {
                    for (x, y) in a.iter_mut().zip(&t) {
                        x.add_assign_ref(y);
                    }
                    a
                }
            });
        }
        acc.unwrap_or_default()
    }

    pub fn to_rational(&self) -> Option<GroupRingMatrix<Rational>> {
        Some(GroupRingMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(GroupRingElement::to_rational)
                .collect::<Option<_>>()?,
        })
    }

    /// Coefficient-wise pushforward of every entry.
    pub fn pushforward(&self, target: &Arc<Group>, map: &[u32]) -> Self {
        self.map_entries(|e| e.pushforward(target, map))
    }
}

impl GroupRingMatrix<BigInt> {
    /// An n×n matrix with every coefficient uniform on [−bound, bound].
    pub fn random(group: &Arc<Group>, rng: &mut impl Rng, n: usize, bound: i64) -> Self {
        let entries = (0..n * n)
            .map(|_| {
                let coeffs = (0..group.order())
                    .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                    .collect();
                GroupRingElement::from_coeffs(group, coeffs).expect("one coefficient per element")
            })
            .collect();
        GroupRingMatrix { n, entries }
    }
}

impl GroupRingMatrix<Rational> {
    /// Least common multiple of all coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(&e.denominator()))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_integral)
    }

    /// Splits the matrix as M / s with M integral and s the denominator.
    pub fn clear_denominators(&self) -> (GroupRingMatrix<BigInt>, BigInt) {
        let s = self.denominator();
        let sq = Rational::from_integer(s.clone());
        let m = self.map(|c| (c * &sq).to_integer());
        (m, s)
    }
}

/// Parses a matrix: rows separated by `|`, entries by `;`, each entry an
/// element literal as accepted by [`parse_element`].
pub fn parse_matrix(group: &Arc<Group>, s: &str) -> Result<GroupRingMatrix<Rational>> {
    let rows: Vec<&str> = s.split('|').collect();
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        let cells: Vec<&str> = row.split(';').collect();
        if cells.len() != n {
            return Err(GrcError::Dimension(format!(
                "row `{row}` has {} entries, expected {n}",
                cells.len()
            )));
        }
        for c in cells {
            entries.push(parse_element(group, c)?);
        }
    }
    GroupRingMatrix::from_entries(n, entries)
}
