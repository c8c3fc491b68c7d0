//! Exact linear algebra over K[G].
//!
//! Reduced characteristic polynomials are computed one irreducible
//! character at a time over ℚ(ζ_e): the power sums p_k = χ(tr H^k) feed
//! Newton's identities. Reduced norms and generalised adjoints are then
//! assembled from the per-character coefficients and pulled back to
//! class-sum coordinates.

mod central;
mod element;
mod matrix;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chartab::{dixon_table, Character, CharacterTable};
use crate::cyclo::{gcd_u64, Cyclo, Rational};
use crate::error::{GrcError, Result};
use crate::group::{builtin_group, Group};
use crate::scalar::Scalar;

pub use central::{scaled_text, CentralElement, CentralJson, IntegralityReport};
pub use element::{parse_element, GroupRingElement};
pub use matrix::{parse_matrix, GroupRingMatrix};

/// Coefficients α_0, …, α_m of the reduced characteristic polynomial of H
/// at one irreducible character; α_m = 1 and m = n·χ(1).
#[derive(Clone, Debug, PartialEq)]
pub struct RedCharPoly {
    pub chi: usize,
    pub coeffs: Vec<Cyclo>,
}

impl RedCharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// (−1)^m α_0.
    pub fn norm_component(&self) -> Cyclo {
        let a0 = self.coeffs[0].clone();
        if self.degree().is_multiple_of(2) {
            a0
        } else {
            -a0
        }
    }

    /// The polynomial raised to the k-th power, as a coefficient list.
    pub fn pow_coeffs(&self, k: usize) -> Vec<Cyclo> {
        let mut acc = vec![Cyclo::one()];
        for _ in 0..k {
            let mut next = vec![Cyclo::zero(); acc.len() + self.coeffs.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in self.coeffs.iter().enumerate() {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
            acc = next;
        }
        acc
    }
}

/// A group together with its character table.
#[derive(Debug)]
pub struct GroupAlgebra {
    group: Arc<Group>,
    table: Arc<CharacterTable>,
    conjugators: OnceLock<Vec<(usize, i64)>>,
}

/// Newton's identities: power sums p_1..p_m to the coefficients of
/// Π (X − λ_i), constant term first.
pub fn newton_char_poly(power_sums: &[Cyclo]) -> Vec<Cyclo> {
    let m = power_sums.len();
    let mut e = vec![Cyclo::one()];
    for k in 1..=m {
        let mut acc = Cyclo::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    // α_j = (−1)^{m−j} e_{m−j}
    (0..=m)
        .map(|j| {
            let v = e[m - j].clone();
            if (m - j).is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .collect()
}

impl GroupAlgebra {
    pub fn new(group: Group) -> Result<Self> {
        Self::from_arc(Arc::new(group))
    }

    pub fn from_arc(group: Arc<Group>) -> Result<Self> {
        let table = Arc::new(dixon_table(&group)?);
        Ok(Self::with_table(group, table))
    }

    pub fn builtin(name: &str) -> Result<Self> {
        Self::new(builtin_group(name)?)
    }

    /// Pairs a group with a table computed for it (same class order).
    pub fn with_table(group: Arc<Group>, table: Arc<CharacterTable>) -> Self {
        GroupAlgebra {
            group,
            table,
            conjugators: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn character(&self, chi: usize) -> &Character {
        &self.table.rows[chi]
    }

    pub fn derived_order(&self) -> usize {
        self.group.commutator_subgroup().order()
    }

    /// For each row j, a pair (i, k) with χ_j = σ_k(χ_i) and i the first
    /// row of its Galois orbit.
    fn conjugators(&self) -> &[(usize, i64)] {
        self.conjugators.get_or_init(|| {
            let t = &self.table;
            let e = t.exponent as u64;
            let mut out: Vec<Option<(usize, i64)>> = vec![None; t.rows.len()];
            for i in 0..t.rows.len() {
                if out[i].is_some() {
                    continue;
                }
                out[i] = Some((i, 1));
                if t.rows[i].is_rational() {
                    continue;
                }
                for k in 2..e {
                    if gcd_u64(k, e) != 1 {
                        continue;
                    }
                    if let Ok(j) = t.galois_row(i, k as i64) {
                        if out[j].is_none() {
                            out[j] = Some((i, k as i64));
                        }
                    }
                }
            }
            out.into_iter()
                .map(|x| x.expect("table is Galois stable"))
                .collect()
        })
    }

    /// Σ_g x_g χ(g).
    pub fn chi_trace<T: Scalar>(&self, chi: usize, x: &GroupRingElement<T>) -> Cyclo {
        let row = &self.table.rows[chi];
        let mut acc = Cyclo::zero();
        for (c, t) in x.class_totals().iter().enumerate() {
            if !t.is_zero_elem() {
                acc = &acc + &(&t.to_cyclo() * &row.values[c]);
            }
        }
        acc
    }

    /// C_i = Σ_{g ∈ 𝒞_i} g.
    pub fn class_sum(&self, c: usize) -> GroupRingElement<Rational> {
        let mut x = GroupRingElement::zero(&self.group);
        for &g in &self.group.conjugacy_classes().members[c] {
            x.set_coeff(g, Rational::one());
        }
        x
    }

    /// Σ_{g ∈ G′} g.
    pub fn trace_derived(&self) -> GroupRingElement<Rational> {
        let mut x = GroupRingElement::zero(&self.group);
        for &g in self.group.commutator_subgroup().members() {
            x.set_coeff(g, Rational::one());
        }
        x
    }

    /// e_χ = χ(1)/|G| Σ_g χ(g⁻¹) g.
    pub fn idempotent(&self, chi: usize) -> GroupRingElement<Cyclo> {
        let row = &self.table.rows[chi];
        let cc = self.group.conjugacy_classes();
        let f = Rational::new(BigInt::from(row.degree), BigInt::from(self.group.order()));
        let per_class: Vec<Cyclo> = (0..cc.count())
            .map(|c| row.values[cc.inverse_class[c]].scale(&f))
            .collect();
        let coeffs = (0..self.group.order())
            .map(|g| per_class[cc.class_of[g]].clone())
            .collect();
        GroupRingElement::from_coeffs(&self.group, coeffs).expect("length matches")
    }

    /// The group-ring element of a Galois-stable central element.
    pub fn central_to_element(&self, z: &CentralElement) -> Result<GroupRingElement<Rational>> {
        let coords = z.class_coords()?;
        let cc = self.group.conjugacy_classes();
        let coeffs = (0..self.group.order())
            .map(|g| coords[cc.class_of[g]].clone())
            .collect();
        GroupRingElement::from_coeffs(&self.group, coeffs)
    }

    /// Reads a central element off its class-sum coordinates; fails if the
    /// element is not constant on classes.
    pub fn element_to_central(&self, x: &GroupRingElement<Rational>) -> Result<CentralElement> {
        let cc = self.group.conjugacy_classes();
        let coords: Vec<Rational> = cc.reps.iter().map(|&r| x.coeff(r).clone()).collect();
        for g in self.group.elements() {
            if *x.coeff(g) != coords[cc.class_of[g as usize]] {
                return Err(GrcError::Mismatch("element is not central".into()));
            }
        }
        CentralElement::from_class_coords(&self.table, &coords)
    }

    /// E_d = Σ_{χ(1) = d} e_χ.
    pub fn e_d(&self, d: u64) -> CentralElement {
        let comps = self
            .table
            .rows
            .iter()
            .map(|r| {
                if r.degree == d {
                    Cyclo::one()
                } else {
                    Cyclo::zero()
                }
            })
            .collect();
        CentralElement::from_components(&self.table, comps)
    }

    fn class_totals_of_powers<T: Scalar>(&self, powers: &[GroupRingMatrix<T>]) -> Vec<Vec<Cyclo>> {
        powers[1..]
            .iter()
            .map(|p| p.trace_class_totals().iter().map(T::to_cyclo).collect())
            .collect()
    }

    fn polys_from_totals(&self, totals: &[Vec<Cyclo>], n: usize) -> Vec<RedCharPoly> {
        let rational = totals.iter().flatten().all(Cyclo::is_rational);
        let conj = self.conjugators();
        let mut out: Vec<Option<RedCharPoly>> = vec![None; self.table.rows.len()];
        for (chi, row) in self.table.rows.iter().enumerate() {
            let (rep, k) = conj[chi];
            if rational && rep != chi {
                let base = out[rep].as_ref().expect("orbit representative comes first");
                out[chi] = Some(RedCharPoly {
                    chi,
                    coeffs: base
                        .coeffs
                        .iter()
                        .map(|a| a.galois(k).expect("k is a unit"))
                        .collect(),
                });
                continue;
            }
            let m = n * row.degree as usize;
            let sums: Vec<Cyclo> = totals[..m]
                .iter()
                .map(|tk| {
                    let mut acc = Cyclo::zero();
                    for (c, t) in tk.iter().enumerate() {
                        if !t.is_zero() {
                            acc = &acc + &(t * &row.values[c]);
                        }
                    }
                    acc
                })
                .collect();
            out[chi] = Some(RedCharPoly {
                chi,
                coeffs: newton_char_poly(&sums),
            });
        }
        out.into_iter().map(Option::unwrap).collect()
    }

    fn max_poly_degree(&self, n: usize) -> usize {
        n * self.table.max_degree() as usize
    }

    /// Reduced characteristic polynomials of H at every irreducible
    /// character.
    pub fn reduced_char_polys<T: Scalar>(&self, h: &GroupRingMatrix<T>) -> Vec<RedCharPoly> {
        let powers = h.powers(self.max_poly_degree(h.size()));
        self.polys_from_totals(&self.class_totals_of_powers(&powers), h.size())
    }

    pub fn reduced_char_poly<T: Scalar>(&self, h: &GroupRingMatrix<T>, chi: usize) -> RedCharPoly {
        let m = h.size() * self.table.rows[chi].degree as usize;
        let powers = h.powers(m);
        let totals = self.class_totals_of_powers(&powers);
        let row = &self.table.rows[chi];
        let sums: Vec<Cyclo> = totals
            .iter()
            .map(|tk| {
                tk.iter()
                    .zip(&row.values)
                    .fold(Cyclo::zero(), |acc, (t, v)| &acc + &(t * v))
            })
            .collect();
        RedCharPoly {
            chi,
            coeffs: newton_char_poly(&sums),
        }
    }

    fn norm_from_polys(&self, polys: &[RedCharPoly]) -> CentralElement {
        CentralElement::from_components(
            &self.table,
            polys.iter().map(RedCharPoly::norm_component).collect(),
        )
    }

    pub fn reduced_norm<T: Scalar>(&self, h: &GroupRingMatrix<T>) -> CentralElement {
        self.norm_from_polys(&self.reduced_char_polys(h))
    }

    /// nr([x]) for a single group-ring element x.
    pub fn reduced_norm_of_element<T: Scalar>(&self, x: &GroupRingElement<T>) -> CentralElement {
        self.reduced_norm(&GroupRingMatrix::from_element(x.clone()))
    }

    /// H* with H·H* = H*·H = nr(H)·I, for H with rational entries.
    pub fn generalized_adjoint<T: Scalar>(
        &self,
        h: &GroupRingMatrix<T>,
    ) -> Result<GroupRingMatrix<Rational>> {
        Ok(self.adjoint_and_norm(h)?.0)
    }

    /// The generalised adjoint together with the reduced norm, sharing the
    /// matrix powers.
    pub fn adjoint_and_norm<T: Scalar>(
        &self,
        h: &GroupRingMatrix<T>,
    ) -> Result<(GroupRingMatrix<Rational>, CentralElement)> {
        let n = h.size();
        let big_m = self.max_poly_degree(n);
        let powers = h.powers(big_m);
        let polys = self.polys_from_totals(&self.class_totals_of_powers(&powers), n);
        let norm = self.norm_from_polys(&polys);

        // z_j = Σ_χ (−1)^{m_χ+1} α_{χ,j} e_χ for j = 1..M, in class coordinates
        let mut coords: Vec<Vec<Rational>> = Vec::with_capacity(big_m);
        for j in 1..=big_m {
            let comps: Vec<Cyclo> = polys
                .iter()
                .map(|p| {
                    if j > p.degree() {
                        Cyclo::zero()
                    } else if p.degree() % 2 == 1 {
                        p.coeffs[j].clone()
                    } else {
                        -p.coeffs[j].clone()
                    }
                })
                .collect();
            let z = CentralElement::from_components(&self.table, comps);
            coords.push(
                z.class_coords()
                    .map_err(|_| GrcError::NotRational("adjoint coefficient is not rational".into()))?
                    .to_vec(),
            );
        }
        let den = coords
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let cc = self.group.conjugacy_classes();
        let mut acc = GroupRingMatrix::<T>::zero(&self.group, n);
        for (j, cj) in coords.iter().enumerate() {
            if cj.iter().all(Zero::is_zero) {
                continue;
            }
            let per_class: Vec<T> = cj
                .iter()
                .map(|c| T::from_bigint(&(c * Rational::from_integer(den.clone())).to_integer()))
                .collect();
            let coeffs = (0..self.group.order())
                .map(|g| per_class[cc.class_of[g]].clone())
                .collect();
            let zj = GroupRingElement::from_coeffs(&self.group, coeffs)?;
            acc = acc.add(&powers[j].left_scale(&zj));
        }
        let inv_den = Rational::new(BigInt::one(), den);
        let adj = acc
            .to_rational()
            .ok_or_else(|| GrcError::NotRational("matrix entries are not rational".into()))?
            .map(|c| c * &inv_den);
        Ok((adj, norm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn newton_small() {
        // roots 1, 2: X^2 − 3X + 2 with p1 = 3, p2 = 5
        let c = newton_char_poly(&[Cyclo::from_int(3), Cyclo::from_int(5)]);
        assert_eq!(c, vec![Cyclo::from_int(2), Cyclo::from_int(-3), Cyclo::one()]);
    }

    #[test]
    fn zero_matrix_poly_is_monomial() {
        let alg = GroupAlgebra::builtin("S3").unwrap();
        let h = GroupRingMatrix::<BigInt>::zero(alg.group(), 1);
        for chi in 0..3 {
            let p = alg.reduced_char_poly(&h, chi);
            let d = alg.character(chi).degree as usize;
            assert_eq!(p.degree(), d);
            assert!(p.coeffs[..d].iter().all(Cyclo::is_zero));
            assert_eq!(p.coeffs[d], Cyclo::one());
        }
    }

    #[test]
    fn trivial_character_is_augmentation() {
        let alg = GroupAlgebra::builtin("S3").unwrap();
        let x = parse_element(alg.group(), "2:1, -1:t, 3:c").unwrap();
        let p = alg.reduced_char_poly(&GroupRingMatrix::from_element(x.clone()), 0);
        assert_eq!(p.coeffs, vec![Cyclo::from_int(-4), Cyclo::one()]);
        assert_eq!(alg.chi_trace(0, &x), Cyclo::from_int(4));
    }

    #[test]
    fn s3_chi_traces() {
        let alg = GroupAlgebra::builtin("S3").unwrap();
        let x = alg.trace_derived();
        assert_eq!(alg.chi_trace(2, &x), Cyclo::zero());
        let t = parse_element(alg.group(), "t").unwrap();
        assert_eq!(alg.chi_trace(2, &t), Cyclo::zero());
    }

    #[test]
    fn idempotents_complete_and_orthogonal() {
        let alg = GroupAlgebra::builtin("S3").unwrap();
        let es: Vec<_> = (0..3).map(|i| alg.idempotent(i)).collect();
        let mut sum = GroupRingElement::<Cyclo>::zero(alg.group());
        for (i, e) in es.iter().enumerate() {
            sum = sum.add(e);
            for (j, f) in es.iter().enumerate() {
                let p = e.mul(f);
                if i == j {
                    assert_eq!(&p, e);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        assert_eq!(sum, GroupRingElement::one(alg.group()));
        // e for the 2-dimensional character: (1/3)(2 - c - c^2)
        let c = alg.group().parse_element("c").unwrap();
        assert_eq!(*es[2].coeff(0), Cyclo::from_rational(&rat(2, 3)));
        assert_eq!(*es[2].coeff(c), Cyclo::from_rational(&rat(-1, 3)));
    }

    #[test]
    fn s3_transposition_norm() {
        let alg = GroupAlgebra::builtin("S3").unwrap();
        let t = alg.group().parse_element("t").unwrap();
        let x = GroupRingElement::<BigInt>::basis(alg.group(), t);
        let nr = alg.central_to_element(&alg.reduced_norm_of_element(&x)).unwrap();
        assert_eq!(*nr.coeff(t), rat(1, 3));
    }

    #[test]
    fn identity_norm_and_adjoint() {
        let alg = GroupAlgebra::builtin("Q8").unwrap();
        let i2 = GroupRingMatrix::<BigInt>::identity(alg.group(), 2);
        let (adj, nr) = alg.adjoint_and_norm(&i2).unwrap();
        assert_eq!(nr, CentralElement::one(alg.table()));
        assert_eq!(adj, GroupRingMatrix::identity(alg.group(), 2));
    }

    #[test]
    fn zero_adjoint_is_scaled_derived_trace() {
        for name in ["S3", "D8", "SL2_3", "C4"] {
            let alg = GroupAlgebra::builtin(name).unwrap();
            let z = GroupRingMatrix::<BigInt>::zero(alg.group(), 1);
            let adj = alg.generalized_adjoint(&z).unwrap();
            let d = alg.derived_order() as i64;
            let want = alg.trace_derived().scale(&rat(1, d));
            assert_eq!(adj.get(0, 0), &want, "{name}");
        }
    }

    #[test]
    fn adjoint_identity_small() {
        let alg = GroupAlgebra::builtin("S3").unwrap();
        let h = parse_matrix(alg.group(), "1:1, 1:t").unwrap();
        let (adj, nr) = alg.adjoint_and_norm(&h).unwrap();
        let hr = h.clone();
        let nrm = GroupRingMatrix::scalar(&alg.central_to_element(&nr).unwrap(), 1);
        assert_eq!(hr.mul(&adj), nrm);
        assert_eq!(adj.mul(&hr), nrm);
    }

    #[test]
    fn e_d_examples() {
        let alg = GroupAlgebra::builtin("D8").unwrap();
        let e1 = alg.central_to_element(&alg.e_d(1)).unwrap();
        assert_eq!(e1, alg.trace_derived().scale(&rat(1, 4)));
        assert!(alg.e_d(3).components().iter().all(Cyclo::is_zero));
        let e2 = alg.central_to_element(&alg.e_d(2)).unwrap().scale(&rat(4, 1));
        assert!(e2.is_integral());
        let d = alg.group().commutator_subgroup();
        assert!(e2.support().iter().all(|&g| d.contains(g)));
    }
}
