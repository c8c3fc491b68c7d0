use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{coset_reps, induce_character, CheckReport, Section};
use crate::cyclo::{Cyclo, Rational};
use crate::error::{GrcError, Result};
use crate::groupring::{GroupAlgebra, GroupRingElement, GroupRingMatrix};

/// Both computations of nr_U(H|_U), one value per irreducible ψ of U.
#[derive(Clone, Debug)]
pub struct RestrictionReport {
    /// Size n·[G:U] of the restricted matrix.
    pub block_size: usize,
    /// β_ψ read off the reduced norm of the block matrix.
    pub by_matrix: Vec<Cyclo>,
    /// β_ψ = Π_χ α_χ^{⟨ind ψ, χ⟩}.
    pub by_formula: Vec<Cyclo>,
    pub checks: CheckReport,
}

impl RestrictionReport {
    pub fn agrees(&self) -> bool {
        self.by_matrix == self.by_formula
    }
}

/// H as a K[U]-linear map on K[G]^n, written in the basis e_k g_l for left
/// coset representatives g_l: the block matrix with entries
/// ω(g_i⁻¹ h_jk g_l), where ω drops the terms outside U.
pub fn restrict_matrix(u: &Section, h: &GroupRingMatrix<Rational>) -> GroupRingMatrix<Rational> {
    let g = u.ambient();
    let reps = coset_reps(g, &g.whole(), u.subgroup());
    let mut position = vec![u32::MAX; g.order()];
    for (i, &x) in u.embedding().iter().enumerate() {
        position[x as usize] = i as u32;
    }
    let ug = u.algebra().group();
    let n = h.size();
    let m = reps.len();
    let mut entries = Vec::with_capacity(n * m * n * m);
    for &gi in &reps {
        let gi_inv = g.inv(gi);
        for j in 0..n {
            for &gl in &reps {
                for k in 0..n {
                    let mut coeffs = vec![Rational::from_integer(0.into()); ug.order()];
                    for y in h.get(j, k).support() {
                        let z = g.mul(g.mul(gi_inv, y), gl);
                        if u.subgroup().contains(z) {
                            coeffs[position[z as usize] as usize] += h.get(j, k).coeff(y);
                        }
                    }
                    entries.push(GroupRingElement::from_coeffs(ug, coeffs).expect("sizes agree"));
                }
            }
        }
    }
    GroupRingMatrix::from_entries(n * m, entries).expect("square block matrix")
}

/// Compares nr_U(H|_U) computed from the block matrix with the exponent
/// formula in the reduced norm of H over G.
pub fn restriction_norm_check(
    alg: &GroupAlgebra,
    u: &Section,
    h: &GroupRingMatrix<Rational>,
) -> Result<RestrictionReport> {
    let b = restrict_matrix(u, h);
    let by_matrix = u.algebra().reduced_norm(&b).components().to_vec();
    let alpha = alg.reduced_norm(h);
    let gt = alg.table();
    let ut = u.table();
    let mut by_formula = Vec::with_capacity(ut.rows.len());
    for psi in &ut.rows {
        let ind = induce_character(gt, ut, u.fusion(), &psi.values);
        let mut beta = Cyclo::one();
        for (chi, a) in gt.rows.iter().zip(alpha.components()) {
            let k = gt
                .inner(&ind, &chi.values)
                .to_rational()
                .filter(Rational::is_integer)
                .and_then(|q| q.to_integer().to_u64())
                .ok_or_else(|| GrcError::Mismatch("induced multiplicity is not a natural number".into()))?;
            beta = &beta * &a.pow(k);
        }
        by_formula.push(beta);
    }
    let mut checks = CheckReport::default();
    let ctx = format!("G={} |U|={} n={}", alg.group().name(), u.order(), h.size());
    for (i, (x, y)) in by_matrix.iter().zip(&by_formula).enumerate() {
        checks.check("restricted-norm", format!("{ctx} psi={}", i + 1), x == y);
    }
    Ok(RestrictionReport {
        block_size: b.size(),
        by_matrix,
        by_formula,
        checks,
    })
}

/// Runs [`restriction_norm_check`] on `trials` random integral matrices,
/// sizes taken from `sizes` in turn, coefficients in [−bound, bound].
/// Trial i draws from ChaCha8 stream i of `seed`. One line per trial.
pub fn restriction_trials(
    alg: &GroupAlgebra,
    u: &Section,
    trials: usize,
    sizes: &[usize],
    bound: i64,
    seed: u64,
) -> Result<CheckReport> {
    if sizes.is_empty() || sizes.contains(&0) || bound < 1 {
        return Err(GrcError::Config("need positive sizes and bound".into()));
    }
    let mut out = CheckReport::default();
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let n = sizes[i % sizes.len()];
        let h = GroupRingMatrix::<BigInt>::random(alg.group(), &mut rng, n, bound)
            .map(|c| Rational::from_integer(c.clone()));
        let rep = restriction_norm_check(alg, u, &h)?;
        out.check(
            "restricted-norm",
            format!(
                "G={} |U|={} trial={i} n={n} block={} psi={}",
                alg.group().name(),
                u.order(),
                rep.block_size,
                rep.by_matrix.len()
            ),
            rep.agrees(),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::parse_matrix;

    #[test]
    fn d8_cyclic_subgroup() {
        let a = GroupAlgebra::builtin("D8").unwrap();
        let g = a.group();
        let u = Section::new(&a, &g.subgroup_generated(&[g.parse_element("a").unwrap()])).unwrap();
        let h = parse_matrix(g, "a").unwrap();
        let rep = restriction_norm_check(&a, &u, &h).unwrap();
        assert_eq!(rep.by_matrix.len(), 8);
        assert!(rep.agrees(), "{:?}", rep);
        assert_eq!(rep.block_size, 2);
    }

    #[test]
    fn whole_group_is_identity() {
        let a = GroupAlgebra::builtin("S3").unwrap();
        let u = Section::whole(&a);
        let h = parse_matrix(a.group(), "1:t, 2:c ; 1 | -1:c^2 ; 3:1, 1:t").unwrap();
        let rep = restriction_norm_check(&a, &u, &h).unwrap();
        assert!(rep.agrees());
        assert_eq!(rep.by_formula, a.reduced_norm(&h).components());
    }

    #[test]
    fn trivial_subgroup_gives_regular_determinant() {
        let a = GroupAlgebra::builtin("S3").unwrap();
        let u = Section::new(&a, &a.group().trivial_subgroup()).unwrap();
        let h = parse_matrix(a.group(), "2:1, 1:t, -1:c").unwrap();
        let rep = restriction_norm_check(&a, &u, &h).unwrap();
        assert!(rep.agrees());
        assert_eq!(rep.block_size, 6);
    }

    #[test]
    fn s4_over_s3() {
        let a = GroupAlgebra::builtin("S4").unwrap();
        let g = a.group();
        let s3 = g.subgroup_generated(&[
            g.parse_element("t").unwrap(),
            g.parse_element("c^-1*t*c").unwrap(),
        ]);
        let u = Section::new(&a, &s3).unwrap();
        let h = parse_matrix(g, "1:c, 1:t ; 2 | -1:t*c ; 1:c^2").unwrap();
        let rep = restriction_norm_check(&a, &u, &h).unwrap();
        assert!(rep.agrees(), "{}", rep.checks.to_text());
    }

    #[test]
    fn random_trials_q8_in_sl2_3() {
        let a = GroupAlgebra::builtin("SL2_3").unwrap();
        let g = a.group();
        let q8 = g.subgroup_generated(&[
            g.parse_element("alpha").unwrap(),
            g.parse_element("beta").unwrap(),
        ]);
        assert_eq!(q8.order(), 8);
        let u = Section::new(&a, &q8).unwrap();
        let r = restriction_trials(&a, &u, 4, &[1, 2], 2, 3).unwrap();
        assert_eq!(r.lines.len(), 4);
        assert!(!r.has_failures(), "{}", r.to_text());
    }
}
