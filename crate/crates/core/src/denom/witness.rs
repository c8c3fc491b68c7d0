use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::cyclo::Rational;
use crate::error::Result;
use crate::groupring::{CentralElement, GroupAlgebra, GroupRingElement};

/// An element x of ℤ[G] whose reduced norm lies outside ζ(ℤ[G]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The element in `coeff:word` form, accepted by `parse_element`.
    pub element: String,
    pub denominator: String,
    /// Coordinate of nr(x) on the class of the leading group element.
    pub leading_coefficient: String,
    pub norm: String,
    pub elements_tried: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum WitnessOutcome {
    /// ℤ[G] is commutative, so every reduced norm is integral.
    Abelian,
    Found(Witness),
    /// Nothing found within the bound; says nothing about ℐ(G).
    Inconclusive {
        bound: i64,
        elements_tried: usize,
    },
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

fn check(
    alg: &GroupAlgebra,
    x: &GroupRingElement<BigInt>,
    lead: u32,
    tried: usize,
) -> Result<Option<Witness>> {
    let nr: CentralElement = alg.reduced_norm_of_element(x);
    let den = nr.denominator()?;
    if den.is_one() {
        return Ok(None);
    }
    let g = alg.group();
    let lead_class = g.conjugacy_classes().class_of[lead as usize];
    let element = x
        .support()
        .into_iter()
        .map(|h| format!("{}:{}", x.coeff(h), g.word(h)))
        .collect::<Vec<_>>()
        .join(", ");
    let coeff: &Rational = &nr.class_coords()?[lead_class];
    Ok(Some(Witness {
        element,
        denominator: den.to_string(),
        leading_coefficient: coeff.to_string(),
        norm: nr.to_scaled_text()?,
        elements_tried: tried,
    }))
}

/// Tries every conjugacy class representative x, then c₁x + c₂y for x a
/// class representative, y any other element and 0 < |cᵢ| ≤ bound.
pub fn nonintegral_witness_search(alg: &GroupAlgebra, bound: i64) -> Result<WitnessOutcome> {
    let g = alg.group();
    if g.is_abelian() {
        return Ok(WitnessOutcome::Abelian);
    }
    let reps = g.conjugacy_classes().reps.clone();
    let mut tried = 0;
    for &x in &reps {
        tried += 1;
        if let Some(w) = check(alg, &GroupRingElement::basis(g, x), x, tried)? {
            return Ok(WitnessOutcome::Found(w));
        }
    }
    let coeffs: Vec<i64> = (-bound..=bound).filter(|&c| c != 0).collect();
    for &x in &reps {
        for y in g.elements().filter(|&y| y != x) {
            for &a in coeffs.iter().filter(|&&a| a > 0) {
                for &b in &coeffs {
                    let mut e = GroupRingElement::<BigInt>::zero(g);
                    e.set_coeff(x, BigInt::from(a));
                    e.set_coeff(y, BigInt::from(b));
                    tried += 1;
                    if let Some(w) = check(alg, &e, x, tried)? {
                        return Ok(WitnessOutcome::Found(w));
                    }
                }
            }
        }
    }
    Ok(WitnessOutcome::Inconclusive {
        bound,
        elements_tried: tried,
    })
}
