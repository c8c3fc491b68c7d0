//! Cached data for the cyclotomic fields ℚ(ζ_e): the cyclotomic polynomial
//! Φ_e and the power-basis coordinates of every ζ_e^k.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) struct CycloField {
    pub phi: usize,
    /// Coefficients of Φ_e, constant term first; monic of degree `phi`.
    pub modulus: Vec<BigInt>,
    /// `powers[k]` holds the coordinates of ζ_e^k for 0 ≤ k < e.
    pub powers: Vec<Vec<i64>>,
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();

pub(crate) fn field(e: u32) -> Arc<CycloField> {
    assert!(e >= 1, "conductor must be positive");
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = map.lock().unwrap().get(&e) {
        return f.clone();
    }
    let built = Arc::new(build_field(e));
    map.lock().unwrap().entry(e).or_insert(built).clone()
}

fn build_field(e: u32) -> CycloField {
    let modulus = cyclotomic_polynomial(e);
    let phi = modulus.len() - 1;
    let small: Vec<i64> = modulus
        .iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflows i64"))
        .collect();

    let mut powers = Vec::with_capacity(e as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 0 {
        unreachable!("cyclotomic polynomials have positive degree");
    }
    for _ in 0..e {
        powers.push(cur.clone());
        // multiply by x, then eliminate the x^phi term using the monic modulus
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] = cur[j]
                    .checked_sub(top.checked_mul(small[j]).expect("power table overflow"))
                    .expect("power table overflow");
            }
        }
    }
    CycloField { phi, modulus, powers }
}

/// Φ_e as an integer coefficient vector (constant term first), obtained by
/// dividing x^e − 1 by Φ_d for every proper divisor d of e.
pub fn cyclotomic_polynomial(e: u32) -> Vec<BigInt> {
    let mut memo: HashMap<u32, Vec<BigInt>> = HashMap::new();
    let divisors: Vec<u32> = (1..=e).filter(|d| e.is_multiple_of(*d)).collect();
    for &d in &divisors {
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = -BigInt::one();
        poly[d as usize] = BigInt::one();
        for (&d2, phi2) in memo.iter() {
            if d % d2 == 0 && d2 != d {
                poly = exact_div_monic(&poly, phi2);
            }
        }
        memo.insert(d, poly);
    }
    memo.remove(&e).unwrap()
}

/// Exact division of an integer polynomial by a monic integer polynomial.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dn {
            rem[i + j] -= &c * &den[j];
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

pub fn euler_phi(e: u32) -> usize {
    field(e).phi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient outside {-1,0,1}
        assert!(cyclotomic_polynomial(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn phi_values() {
        let expected = [
            (1, 1),
            (2, 1),
            (3, 2),
            (8, 4),
            (12, 4),
            (20, 8),
            (24, 8),
            (420, 96),
        ];
        for (e, p) in expected {
            assert_eq!(euler_phi(e), p, "phi({e})");
        }
    }

    #[test]
    fn power_table_wraps() {
        let f = field(8);
        // ζ_8^4 = -1
        assert_eq!(f.powers[4], vec![-1, 0, 0, 0]);
        assert_eq!(f.powers[7], vec![0, 0, 0, -1]);
    }
}
