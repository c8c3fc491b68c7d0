use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chartab::modp::is_prime;
use crate::chartab::DegreeList;
use crate::error::{GrcError, Result};

/// Degree lists whose largest degree is at most this also get the exact sum.
const EXACT_DEGREE_LIMIT: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AResidue {
    pub n: i64,
    pub p: u64,
    pub residue: u64,
    /// A(n) itself, for small degree lists.
    pub exact: Option<String>,
}

/// A(n) = Σ_χ n^{χ(1)} χ(1)² modulo p, with multiplicities.
pub fn a_n_mod_p(degrees: &DegreeList, n: i64, p: u64) -> Result<AResidue> {
    if !is_prime(p) {
        return Err(GrcError::NotPrime(p));
    }
    let pb = BigUint::from(p);
    let base = BigUint::from(n.rem_euclid(p as i64) as u64);
    let mut acc = BigUint::zero();
    for (d, mult) in &degrees.entries {
        let term = base.modpow(d, &pb) * (d % &pb).pow(2) % &pb * BigUint::from(*mult);
        acc = (acc + term) % &pb;
    }
    let small = degrees
        .entries
        .iter()
        .all(|(d, _)| d.to_u64().is_some_and(|d| d <= EXACT_DEGREE_LIMIT));
    let exact = small.then(|| {
        degrees
            .entries
            .iter()
            .map(|(d, mult)| {
                let d = d.to_u32().expect("bounded above");
                BigInt::from(n).pow(d) * BigInt::from(d).pow(2) * BigInt::from(*mult)
            })
            .sum::<BigInt>()
            .to_string()
    });
    Ok(AResidue {
        n,
        p,
        residue: acc.to_u64().expect("reduced mod p"),
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::parse_degrees;

    fn list(entries: &[(u64, u64)]) -> DegreeList {
        DegreeList {
            entries: entries.iter().map(|&(d, m)| (BigUint::from(d), m)).collect(),
        }
    }

    #[test]
    fn s3_degrees() {
        let r = a_n_mod_p(&list(&[(1, 2), (2, 1)]), -1, 5).unwrap();
        assert_eq!(r.residue, 2);
        assert_eq!(r.exact.as_deref(), Some("2"));
    }

    #[test]
    fn trivial_group() {
        for n in [-7i64, 0, 3, 12] {
            let r = a_n_mod_p(&list(&[(1, 1)]), n, 11).unwrap();
            assert_eq!(r.residue as i64, n.rem_euclid(11));
        }
    }

    #[test]
    fn residue_matches_exact_value() {
        let d = list(&[(1, 3), (2, 4), (5, 2), (17, 1)]);
        for p in [2u64, 3, 7, 13, 101] {
            for n in [-3i64, -1, 2, 9] {
                let r = a_n_mod_p(&d, n, p).unwrap();
                let exact: BigInt = r.exact.unwrap().parse().unwrap();
                let expect = ((exact % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                assert_eq!(BigInt::from(r.residue), expect);
            }
        }
    }

    #[test]
    fn large_degrees_are_modular_only() {
        let d = parse_degrees("196883 1\n21296876 1\n1 1\n").unwrap();
        let r = a_n_mod_p(&d, -1, 17).unwrap();
        assert!(r.exact.is_none());
        assert!(r.residue < 17);
    }

    #[test]
    fn rejects_composite() {
        assert!(matches!(
            a_n_mod_p(&list(&[(1, 1)]), 1, 15),
            Err(GrcError::NotPrime(15))
        ));
    }
}
