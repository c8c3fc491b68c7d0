#![allow(dead_code)]

pub mod oracle;

use grc::groupring::{GroupAlgebra, GroupRingMatrix};
use grc::{Cyclo, Rational};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Built-in groups of order at most 48.
pub fn small_suite() -> Vec<&'static str> {
    grc::BUILTIN_SUITE
        .iter()
        .copied()
        .filter(|n| grc::builtin_group(n).unwrap().order() <= 48)
        .collect()
}

pub fn random_h(alg: &GroupAlgebra, seed: u64, stream: u64, n: usize, bound: i64) -> GroupRingMatrix<BigInt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    GroupRingMatrix::random(alg.group(), &mut rng, n, bound)
}

/// e_χ(g) = χ(1)/|G| · χ(g⁻¹), straight from the table.
pub fn idempotent_coeffs(alg: &GroupAlgebra, chi: usize) -> Vec<Cyclo> {
    let g = alg.group();
    let cc = g.conjugacy_classes();
    let row = alg.character(chi);
    let f = Rational::new(BigInt::from(row.degree), BigInt::from(g.order()));
    g.elements()
        .map(|x| row.values[cc.class_of[g.inv(x) as usize]].scale(&f))
        .collect()
}

/// Compares the characteristic polynomial of H on e_χ K[G]^n with the
/// χ(1)-th power of the reduced characteristic polynomial.
pub fn oracle_agrees(alg: &GroupAlgebra, h: &GroupRingMatrix<BigInt>, chi: usize) -> bool {
    let d = alg.character(chi).degree as usize;
    let want = alg.reduced_char_poly(h, chi).pow_coeffs(d);
    let e = idempotent_coeffs(alg, chi);
    let got: Vec<Cyclo> = if e.iter().all(Cyclo::is_rational) {
        let e: Vec<Rational> = e.iter().map(|c| c.to_rational().unwrap()).collect();
        let m = oracle::regular_matrix(alg.group(), h, &e, d * d);
        oracle::char_poly_rational(&m)
            .iter()
            .map(Cyclo::from_rational)
            .collect()
    } else {
        oracle::char_poly(oracle::regular_matrix(alg.group(), h, &e, d * d))
    };
    got == want
}
