//! Restriction and induction of characters, stabilisers of characters of
//! normal subgroups, and the idempotent identities of Clifford theory.
//!
//! Class functions on a subgroup S of G are mostly handled as
//! [`ElementFunction`]s: vectors indexed by the elements of G that vanish
//! off S. This keeps conjugation, twisting and induction between nested
//! subgroups uniform, at the cost of |G| entries per function.

mod frobenius;
mod identities;
mod restriction;

use std::sync::Arc;

use num_bigint::BigInt;

use crate::chartab::CharacterTable;
use crate::cyclo::{gcd_u64, Cyclo, Rational};
use crate::error::{GrcError, Result};
use crate::group::{Group, Subgroup};
use crate::groupring::{CentralElement, GroupAlgebra, GroupRingElement};

pub use frobenius::{frobenius_structure, FrobeniusStructure, FROBENIUS_ORDER_LIMIT};
pub use identities::{
    search_induced_configurations, verify_idempotent_identities, CheckLine, CheckReport,
    InducedConfiguration, Outcome,
};
pub use restriction::{restrict_matrix, restriction_norm_check, restriction_trials, RestrictionReport};

/// Values of a class function on a subgroup, indexed by the elements of the
/// ambient group and zero off the subgroup.
pub type ElementFunction = Vec<Cyclo>;

/// Maps each conjugacy class of a subgroup to the class of G containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFusion {
    pub map: Vec<usize>,
}

impl ClassFusion {
    pub fn new(ambient: &Group, sub: &Group, embedding: &[u32]) -> Self {
        let gcc = ambient.conjugacy_classes();
        let map = sub
            .conjugacy_classes()
            .reps
            .iter()
            .map(|&r| gcc.class_of[embedding[r as usize] as usize])
            .collect();
        ClassFusion { map }
    }
}

/// res χ as a class function on U, in U's class order.
pub fn restrict_character(fusion: &ClassFusion, chi: &[Cyclo]) -> Vec<Cyclo> {
    fusion.map.iter().map(|&c| chi[c].clone()).collect()
}

/// ind ψ on G: (ind ψ)(g_c) = |G| / (|U|·|c|) · Σ_{d ↦ c} |d| ψ(d).
pub fn induce_character(
    ambient: &CharacterTable,
    sub: &CharacterTable,
    fusion: &ClassFusion,
    psi: &[Cyclo],
) -> Vec<Cyclo> {
    let mut acc = vec![Cyclo::zero(); ambient.class_count()];
    for (d, &c) in fusion.map.iter().enumerate() {
        let term = psi[d].scale_int(&BigInt::from(sub.sizes[d]));
        acc[c] = &acc[c] + &term;
    }
    acc.iter()
        .enumerate()
        .map(|(c, v)| {
            v.scale(&Rational::new(
                BigInt::from(ambient.order),
                BigInt::from(sub.order * ambient.sizes[c]),
            ))
        })
        .collect()
}

/// (1/|G|) Σ_c |c| a(c) conj(b(c)).
pub fn inner_product(table: &CharacterTable, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
    table.inner(a, b)
}

/// A subgroup of G together with its own character table and the maps
/// needed to move class functions between the two.
#[derive(Debug)]
pub struct Section {
    ambient: Arc<Group>,
    subgroup: Subgroup,
    algebra: GroupAlgebra,
    embedding: Vec<u32>,
    fusion: ClassFusion,
    irr: Vec<ElementFunction>,
}

impl Section {
    pub fn new(ambient: &GroupAlgebra, u: &Subgroup) -> Result<Self> {
        let g = ambient.group();
        let (algebra, embedding) = if u.order() == g.order() {
            (
                GroupAlgebra::with_table(g.clone(), ambient.table().clone()),
                (0..g.order() as u32).collect(),
            )
        } else {
            let (grp, emb) = g.subgroup_as_group(u, &format!("{}_{}", g.name(), u.order()));
            (GroupAlgebra::new(grp)?, emb)
        };
        let fusion = ClassFusion::new(g, algebra.group(), &embedding);
        let ucc = algebra.group().conjugacy_classes();
        let irr = algebra
            .table()
            .rows
            .iter()
            .map(|row| {
                let mut f = vec![Cyclo::zero(); g.order()];
                for (i, &x) in embedding.iter().enumerate() {
                    f[x as usize] = row.values[ucc.class_of[i]].clone();
                }
                f
            })
            .collect();
        Ok(Section {
            ambient: g.clone(),
            subgroup: u.clone(),
            algebra,
            embedding,
            fusion,
            irr,
        })
    }

    /// G as a section of itself.
    pub fn whole(ambient: &GroupAlgebra) -> Self {
        Self::new(ambient, &ambient.group().whole()).expect("no new table is needed")
    }

    pub fn ambient(&self) -> &Arc<Group> {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        self.algebra.table()
    }

    /// Subgroup element index ↦ ambient element index.
    pub fn embedding(&self) -> &[u32] {
        &self.embedding
    }

    pub fn fusion(&self) -> &ClassFusion {
        &self.fusion
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn irr(&self, i: usize) -> &ElementFunction {
        &self.irr[i]
    }

    pub fn irr_count(&self) -> usize {
        self.irr.len()
    }

    /// Values at the class representatives of the subgroup.
    pub fn class_values(&self, f: &[Cyclo]) -> Vec<Cyclo> {
        self.algebra
            .group()
            .conjugacy_classes()
            .reps
            .iter()
            .map(|&r| f[self.embedding[r as usize] as usize].clone())
            .collect()
    }

    /// Spreads per-class values of the subgroup over its elements.
    pub fn lift_class_function(&self, values: &[Cyclo]) -> ElementFunction {
        let ucc = self.algebra.group().conjugacy_classes();
        let mut f = vec![Cyclo::zero(); self.ambient.order()];
        for (i, &x) in self.embedding.iter().enumerate() {
            f[x as usize] = values[ucc.class_of[i]].clone();
        }
        f
    }

    /// (1/|S|) Σ_{s ∈ S} a(s) conj(b(s)).
    pub fn inner(&self, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero();
        for &s in self.subgroup.members() {
            let (x, y) = (&a[s as usize], &b[s as usize]);
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * &y.conj());
            }
        }
        acc.scale(&Rational::new(1.into(), BigInt::from(self.order())))
    }

    /// Multiplicities of the irreducible characters of the subgroup in f;
    /// fails unless they are non-negative integers.
    pub fn decompose(&self, f: &[Cyclo]) -> Result<Vec<u64>> {
        let vals = self.class_values(f);
        let t = self.table();
        t.rows
            .iter()
            .map(|row| {
                let q = t.inner(&vals, &row.values);
                q.to_rational()
                    .filter(|r| r.is_integer() && r >= &Rational::from_integer(0.into()))
                    .and_then(|r| u64::try_from(r.to_integer()).ok())
                    .ok_or_else(|| GrcError::Mismatch(format!("multiplicity {q} is not a natural number")))
            })
            .collect()
    }

    /// The irreducible character equal to f, if there is one.
    pub fn find_irr(&self, f: &[Cyclo]) -> Option<usize> {
        let vals = self.class_values(f);
        self.table().rows.iter().position(|r| r.values == vals)
    }

    /// e_θ = θ(1)/|S| Σ_{s ∈ S} θ(s⁻¹) s, as an element of K[G].
    pub fn idempotent_of(&self, theta: &[Cyclo]) -> GroupRingElement<Cyclo> {
        let g = &self.ambient;
        let f = theta[0].scale(&Rational::new(1.into(), BigInt::from(self.order())));
        let mut x = GroupRingElement::zero(g);
        for &s in self.subgroup.members() {
            let v = &theta[g.inv(s) as usize];
            if !v.is_zero() {
                x.set_coeff(s, v * &f);
            }
        }
        x
    }
}

/// res f: the values on `to`, zero elsewhere.
pub fn restrict(f: &[Cyclo], to: &Subgroup) -> ElementFunction {
    let mut out = vec![Cyclo::zero(); f.len()];
    for &x in to.members() {
        out[x as usize] = f[x as usize].clone();
    }
    out
}

/// ind f from `from` to `to` (from ⊆ to):
/// (ind f)(x) = (1/|from|) Σ_{y ∈ to} f°(y⁻¹ x y).
pub fn induce(g: &Group, from: &Subgroup, f: &[Cyclo], to: &Subgroup) -> ElementFunction {
    let mut out = vec![Cyclo::zero(); g.order()];
    let scale = Rational::new(1.into(), BigInt::from(from.order()));
    for &x in to.members() {
        let mut acc = Cyclo::zero();
        for &y in to.members() {
            let z = g.conj(x, y);
            if from.contains(z) && !f[z as usize].is_zero() {
                acc = &acc + &f[z as usize];
            }
        }
        out[x as usize] = acc.scale(&scale);
    }
    out
}

/// ^x f, defined by (^x f)(y) = f(x⁻¹ y x).
pub fn conjugate(g: &Group, f: &[Cyclo], x: u32) -> ElementFunction {
    g.elements().map(|y| f[g.conj(y, x) as usize].clone()).collect()
}

/// Pointwise product.
pub fn twist(f: &[Cyclo], w: &[Cyclo]) -> ElementFunction {
    f.iter().zip(w).map(|(a, b)| a * b).collect()
}

pub fn scale_function(f: &[Cyclo], k: u64) -> ElementFunction {
    let k = BigInt::from(k);
    f.iter().map(|a| a.scale_int(&k)).collect()
}

pub fn add_functions(a: &[Cyclo], b: &[Cyclo]) -> ElementFunction {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Representatives x of the left cosets xH of H in K, with H ⊆ K.
pub fn coset_reps(g: &Group, k: &Subgroup, h: &Subgroup) -> Vec<u32> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for &x in k.members() {
        if covered[x as usize] {
            continue;
        }
        reps.push(x);
        for &y in h.members() {
            covered[g.mul(x, y) as usize] = true;
        }
    }
    reps
}

/// {x ∈ K : ^x f = f}.
pub fn stabilizer(g: &Group, k: &Subgroup, f: &[Cyclo]) -> Subgroup {
    let fixing: Vec<u32> = k
        .members()
        .iter()
        .copied()
        .filter(|&x| conjugate(g, f, x) == f)
        .collect();
    g.subgroup_generated(&fixing)
}

/// The orbit of a character of a normal subgroup under conjugation by G,
/// its stabiliser, and how it induces back.
#[derive(Debug)]
pub struct InductionData {
    /// Index of η in the table of N.
    pub eta: usize,
    /// Indices in the table of N of the distinct conjugates of η, η first.
    pub orbit: Vec<usize>,
    /// G_η with its own table.
    pub stabilizer: Section,
    /// Constituents ψ_i of ind_N^{G_η} η with multiplicities m_i, indexed in
    /// the table of G_η.
    pub psi: Vec<(usize, u64)>,
    /// Constituents χ_i of ind_N^G η with multiplicities, indexed in the
    /// table of G.
    pub chi: Vec<(usize, u64)>,
}

impl InductionData {
    /// The common multiplicity m, when all m_i agree.
    pub fn uniform_multiplicity(&self) -> Option<u64> {
        let m = self.psi.first()?.1;
        self.psi.iter().all(|&(_, k)| k == m).then_some(m)
    }

    pub fn s(&self) -> usize {
        self.psi.len()
    }
}

fn nonzero_entries(v: Vec<u64>) -> Vec<(usize, u64)> {
    v.into_iter().enumerate().filter(|&(_, k)| k > 0).collect()
}

/// Stabiliser and orbit of the irreducible character η of the normal
/// subgroup held by `n`, with the decompositions of its inductions to G_η
/// and to G.
pub fn stabilizer_and_orbit(ambient: &Section, n: &Section, eta: usize) -> Result<InductionData> {
    if !n.subgroup().is_normal() {
        return Err(GrcError::NotNormal);
    }
    let g = ambient.ambient();
    let f = n.irr(eta);
    let mut orbit = vec![eta];
    let mut fixing = Vec::new();
    for x in g.elements() {
        let c = conjugate(g, f, x);
        let idx = n
            .find_irr(&c)
            .ok_or_else(|| GrcError::Mismatch("conjugate character is not irreducible".into()))?;
        if idx == eta {
            fixing.push(x);
        } else if !orbit.contains(&idx) {
            orbit.push(idx);
        }
    }
    let stab = g.subgroup_generated(&fixing);
    let stabilizer = Section::new(ambient.algebra(), &stab)?;
    let psi = nonzero_entries(stabilizer.decompose(&induce(g, n.subgroup(), f, &stab))?);
    let chi = nonzero_entries(ambient.decompose(&induce(g, n.subgroup(), f, ambient.subgroup()))?);
    Ok(InductionData {
        eta,
        orbit,
        stabilizer,
        psi,
        chi,
    })
}

/// e(η) = Σ_{x ∈ G/G_η} e_{^x η}, an element of K[N].
pub fn e_of_eta(n: &Section, data: &InductionData) -> GroupRingElement<Cyclo> {
    let mut acc = GroupRingElement::zero(n.ambient());
    for &r in &data.orbit {
        acc = acc.add(&n.idempotent_of(n.irr(r)));
    }
    acc
}

/// ε_χ = Σ e_{χ'} over the χ' whose restriction to N is a Galois conjugate
/// of res_N χ. Requires N normal and containing G′.
pub fn epsilon_chi(alg: &GroupAlgebra, n: &Subgroup, chi: usize) -> Result<CentralElement> {
    let g = alg.group();
    if !n.is_normal() {
        return Err(GrcError::NotNormal);
    }
    if !g.commutator_subgroup().is_subset_of(n) {
        return Err(GrcError::MissingCommutator);
    }
    let t = alg.table();
    let inside: Vec<usize> = (0..t.class_count()).filter(|&c| n.contains(t.reps[c])).collect();
    let res = |i: usize| -> Vec<Cyclo> { inside.iter().map(|&c| t.rows[i].values[c].clone()).collect() };
    let e = t.exponent as u64;
    let base = res(chi);
    let conjugates: Vec<Vec<Cyclo>> = (1..=e.max(1))
        .filter(|&k| gcd_u64(k, e) == 1)
        .map(|k| {
            base.iter()
                .map(|v| v.galois(k as i64).expect("k is a unit"))
                .collect()
        })
        .collect();
    let comps = (0..t.rows.len())
        .map(|i| {
            if conjugates.contains(&res(i)) {
                Cyclo::one()
            } else {
                Cyclo::zero()
            }
        })
        .collect();
    Ok(CentralElement::from_components(t, comps))
}

/// U_ψ: the smallest subgroup containing N and every element at which ψ
/// does not vanish.
pub fn u_psi(g: &Group, n: &Subgroup, psi: &[Cyclo]) -> Subgroup {
    let mut gens = n.gens().to_vec();
    gens.extend(g.elements().filter(|&x| !psi[x as usize].is_zero()));
    g.subgroup_generated(&gens)
}

/// Linear characters of the section that are trivial on N.
pub fn linear_characters_over(sec: &Section, n: &Subgroup) -> Vec<usize> {
    (0..sec.irr_count())
        .filter(|&i| {
            let f = sec.irr(i);
            f[0] == Cyclo::one() && n.members().iter().all(|&x| f[x as usize] == Cyclo::one())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(name: &str) -> GroupAlgebra {
        GroupAlgebra::builtin(name).unwrap()
    }

    #[test]
    fn s3_restriction_to_a3() {
        let a = alg("S3");
        let whole = Section::whole(&a);
        let n = Section::new(&a, a.group().commutator_subgroup()).unwrap();
        let two = (0..3).find(|&i| a.table().rows[i].degree == 2).unwrap();
        let res = restrict_character(n.fusion(), &a.table().rows[two].values);
        assert_eq!(res[0], Cyclo::from_int(2));
        let mult = n.decompose(&n.lift_class_function(&res)).unwrap();
        // the two nontrivial linear characters once each
        let triv = n
            .table()
            .rows
            .iter()
            .position(|r| r.values.iter().all(|v| *v == Cyclo::one()))
            .unwrap();
        assert_eq!(mult[triv], 0);
        assert_eq!(mult.iter().sum::<u64>(), 2);
        // induction of a nontrivial linear character gives the 2-dim one
        let eta = (triv + 1) % 3;
        let ind = induce_character(a.table(), n.table(), n.fusion(), &n.table().rows[eta].values);
        assert_eq!(ind, a.table().rows[two].values);
        assert_eq!(
            whole.find_irr(&induce(a.group(), n.subgroup(), n.irr(eta), whole.subgroup())),
            Some(two)
        );
    }

    #[test]
    fn frobenius_reciprocity_s4_s3() {
        let a = alg("S4");
        let g = a.group();
        let s3 = g.subgroup_generated(&[
            g.parse_element("t").unwrap(),
            g.parse_element("c^-1*t*c").unwrap(),
        ]);
        assert_eq!(s3.order(), 6);
        let u = Section::new(&a, &s3).unwrap();
        for chi in &a.table().rows {
            for psi in &u.table().rows {
                let ind = induce_character(a.table(), u.table(), u.fusion(), &psi.values);
                let lhs = a.table().inner(&chi.values, &ind);
                let rhs = u
                    .table()
                    .inner(&restrict_character(u.fusion(), &chi.values), &psi.values);
                assert_eq!(lhs, rhs);
                assert!(lhs.is_rational() && lhs.to_rational().unwrap().is_integer());
            }
        }
    }

    #[test]
    fn class_and_element_induction_agree() {
        let a = alg("SL2_3");
        let g = a.group();
        let q8 = g.subgroup_generated(&[
            g.parse_element("alpha").unwrap(),
            g.parse_element("beta").unwrap(),
        ]);
        let u = Section::new(&a, &q8).unwrap();
        let whole = Section::whole(&a);
        for i in 0..u.irr_count() {
            let by_class = induce_character(a.table(), u.table(), u.fusion(), &u.table().rows[i].values);
            let by_elem = induce(g, &q8, u.irr(i), whole.subgroup());
            assert_eq!(whole.lift_class_function(&by_class), by_elem);
        }
    }

    #[test]
    fn induction_from_trivial_is_regular() {
        let a = alg("D4");
        let u = Section::new(&a, &a.group().trivial_subgroup()).unwrap();
        let ind = induce_character(a.table(), u.table(), u.fusion(), &[Cyclo::one()]);
        assert_eq!(ind[0], Cyclo::from_int(8));
        assert!(ind[1..].iter().all(Cyclo::is_zero));
        for row in &a.table().rows {
            assert_eq!(
                a.table().inner(&ind, &row.values),
                Cyclo::from_int(row.degree as i64)
            );
        }
    }

    #[test]
    fn stabilizers() {
        let a = alg("S3");
        let whole = Section::whole(&a);
        let n = Section::new(&a, a.group().commutator_subgroup()).unwrap();
        let eta = (0..3)
            .find(|&i| !n.table().rows[i].values.iter().all(|v| *v == Cyclo::one()))
            .unwrap();
        let d = stabilizer_and_orbit(&whole, &n, eta).unwrap();
        assert_eq!(d.stabilizer.order(), 3);
        assert_eq!(d.orbit.len(), 2);
        assert_eq!(d.chi.len(), 1);
        let e = e_of_eta(&n, &d);
        assert_eq!(e, a.idempotent(d.chi[0].0));
        assert!(e.support().iter().all(|&x| n.subgroup().contains(x)));

        // D8: x inverts a^2, so a faithful character of <a^2> has stabiliser <a>
        let a = alg("D8");
        let g = a.group();
        let whole = Section::whole(&a);
        let n = Section::new(&a, &g.subgroup_generated(&[g.parse_element("a^2").unwrap()])).unwrap();
        let faithful = (0..n.irr_count())
            .find(|&i| n.table().rows[i].values.iter().any(|v| !v.is_rational()))
            .unwrap();
        let d = stabilizer_and_orbit(&whole, &n, faithful).unwrap();
        assert_eq!(d.stabilizer.order(), 8);
        assert!(d.stabilizer.subgroup().contains(g.parse_element("a").unwrap()));
    }

    #[test]
    fn e_of_eta_partitions_unity() {
        for name in ["S3", "D8", "SL2_3", "A4"] {
            let a = alg(name);
            let whole = Section::whole(&a);
            let n = Section::new(&a, a.group().commutator_subgroup()).unwrap();
            let mut seen: Vec<usize> = Vec::new();
            let mut parts = Vec::new();
            for eta in 0..n.irr_count() {
                if seen.contains(&eta) {
                    continue;
                }
                let d = stabilizer_and_orbit(&whole, &n, eta).unwrap();
                seen.extend(&d.orbit);
                parts.push(e_of_eta(&n, &d));
            }
            let one = GroupRingElement::<Cyclo>::one(a.group());
            let total = parts
                .iter()
                .fold(GroupRingElement::zero(a.group()), |acc, p| acc.add(p));
            assert_eq!(total, one, "{name}");
            for i in 0..parts.len() {
                for j in 0..parts.len() {
                    let p = parts[i].mul(&parts[j]);
                    if i == j {
                        assert_eq!(p, parts[i]);
                    } else {
                        assert!(p.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_is_rational_and_integral_after_scaling() {
        for name in ["C5", "S3", "D8", "SL2_3", "Aff5"] {
            let a = alg(name);
            let n = a.group().commutator_subgroup().clone();
            for chi in 0..a.table().rows.len() {
                let eps = epsilon_chi(&a, &n, chi).unwrap();
                let x = a.central_to_element(&eps).unwrap();
                assert!(x.support().iter().all(|&g| n.contains(g)), "{name}");
                let scaled = x.map(|c| c * Rational::from_integer(BigInt::from(n.order())));
                assert!(scaled.is_integral(), "{name} chi={chi}");
            }
        }
        let a = alg("S3");
        let t = a.group().parse_element("t").unwrap();
        let not_normal = a.group().subgroup_generated(&[t]);
        assert!(epsilon_chi(&a, &not_normal, 0).is_err());
    }

    #[test]
    fn u_psi_examples() {
        let a = alg("S3");
        let g = a.group();
        let two = (0..3).find(|&i| a.table().rows[i].degree == 2).unwrap();
        let whole = Section::whole(&a);
        let u = u_psi(g, g.commutator_subgroup(), whole.irr(two));
        assert_eq!(u.order(), 3);
        let lin = u_psi(g, g.commutator_subgroup(), whole.irr(0));
        assert_eq!(lin.order(), 6);

        let a = alg("D8");
        let g = a.group();
        let whole = Section::whole(&a);
        let faithful = (0..a.table().rows.len())
            .find(|&i| a.table().rows[i].degree == 2 && !a.table().rows[i].is_rational())
            .unwrap();
        let u = u_psi(g, g.commutator_subgroup(), whole.irr(faithful));
        let cyc = g.subgroup_generated(&[g.parse_element("a").unwrap()]);
        assert_eq!(u.members(), cyc.members());
    }
}
