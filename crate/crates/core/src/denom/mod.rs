//! Probes of the denominator ideal and the integrality ring.
//!
//! Random trials draw integral matrices over ℤ[G] and check that |G′|
//! clears the denominators of their reduced norms and generalised
//! adjoints. Witness searches look for single elements, or short integral
//! combinations, whose reduced norm is not integral.

mod probe;
mod residues;
mod witness;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::group::Group;

pub use probe::{
    hpg_criterion_check, probe_denominator_ideal, HpgReport, ProbeConfig, ProbeReport, TrialRecord,
};
pub use residues::{a_n_mod_p, AResidue};
pub use witness::{nonintegral_witness_search, Witness, WitnessOutcome};

/// d_G = lcm(|G′|, sizes of the conjugacy classes).
pub fn d_g(g: &Group) -> BigInt {
    g.conjugacy_classes()
        .sizes
        .iter()
        .fold(BigInt::from(g.commutator_subgroup().order()), |acc, &s| {
            acc.lcm(&BigInt::from(s))
        })
}

/// Largest power of p dividing n.
pub fn p_part(n: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut acc = BigInt::one();
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        acc *= &p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;

    #[test]
    fn d_g_values() {
        assert_eq!(d_g(&builtin_group("S3").unwrap()), BigInt::from(6));
        assert_eq!(d_g(&builtin_group("C5").unwrap()), BigInt::from(1));
        // D8 of order 16: |G'| = 4, class sizes 1, 2, 4
        assert_eq!(d_g(&builtin_group("D8").unwrap()), BigInt::from(4));
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(&BigInt::from(24), 2), BigInt::from(8));
        assert_eq!(p_part(&BigInt::from(24), 5), BigInt::from(1));
        assert_eq!(p_part(&BigInt::from(0), 5), BigInt::from(1));
    }
}
