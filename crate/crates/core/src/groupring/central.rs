use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::cyclo::{Cyclo, Rational};
use crate::error::{GrcError, Result};

/// An element Σ_χ α_χ e_χ of the centre of K[G], held by its character
/// components. Class-sum coordinates are derived on demand and exist only
/// for Galois-stable elements.
#[derive(Clone, Debug)]
pub struct CentralElement {
    table: Arc<CharacterTable>,
    components: Vec<Cyclo>,
    coords: OnceLock<Option<Vec<Rational>>>,
}

impl PartialEq for CentralElement {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub denominator: String,
    pub is_central_integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralJson {
    pub class_reps: Vec<String>,
    pub coords: Vec<String>,
    pub denominator: String,
}

impl CentralElement {
    pub fn from_components(table: &Arc<CharacterTable>, components: Vec<Cyclo>) -> Self {
        assert_eq!(components.len(), table.rows.len());
        CentralElement {
            table: table.clone(),
            components,
            coords: OnceLock::new(),
        }
    }

    /// Σ_i c_i C_i, with components ω_χ = Σ_i c_i |C_i| χ(g_i) / χ(1).
    pub fn from_class_coords(table: &Arc<CharacterTable>, coords: &[Rational]) -> Result<Self> {
        if coords.len() != table.class_count() {
            return Err(GrcError::Dimension(format!(
                "{} coordinates for {} classes",
                coords.len(),
                table.class_count()
            )));
        }
        let components = table
            .rows
            .iter()
            .map(|r| {
                let mut acc = Cyclo::zero();
                for (c, q) in coords.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let w = q * Rational::from_integer(table.sizes[c].into());
                    acc = &acc + &r.values[c].scale(&w);
                }
                acc.scale(&Rational::new(BigInt::one(), r.degree.into()))
            })
            .collect();
        let z = Self::from_components(table, components);
        let _ = z.coords.set(Some(coords.to_vec()));
        Ok(z)
    }

    pub fn one(table: &Arc<CharacterTable>) -> Self {
        Self::from_components(table, vec![Cyclo::one(); table.rows.len()])
    }

    pub fn zero(table: &Arc<CharacterTable>) -> Self {
        Self::from_components(table, vec![Cyclo::zero(); table.rows.len()])
    }

    /// The rational scalar q.
    pub fn scalar(table: &Arc<CharacterTable>, q: &Rational) -> Self {
        Self::from_components(table, vec![Cyclo::from_rational(q); table.rows.len()])
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn components(&self) -> &[Cyclo] {
        &self.components
    }

    pub fn component(&self, chi: usize) -> &Cyclo {
        &self.components[chi]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_components(
            &self.table,
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_components(
            &self.table,
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_components(&self.table, self.components.iter().map(|a| a.scale(q)).collect())
    }

    /// True when α_{σχ} = σ(α_χ) for every Galois automorphism.
    pub fn is_galois_stable(&self) -> bool {
        self.class_coords().is_ok()
    }

    /// Coordinates c_i with Σ c_i C_i = Σ_χ α_χ e_χ, where
    /// c_i = Σ_χ α_χ χ(1) χ(g_i⁻¹) / |G|.
    pub fn class_coords(&self) -> Result<&[Rational]> {
        self.coords
            .get_or_init(|| {
                let t = &self.table;
                let inv_order = Rational::new(BigInt::one(), t.order.into());
                (0..t.class_count())
                    .map(|c| {
                        let mut acc = Cyclo::zero();
                        for (r, a) in t.rows.iter().zip(&self.components) {
                            if a.is_zero() {
                                continue;
                            }
                            let v = &r.values[t.inverse_class[c]];
                            acc = &acc + &(a * v).scale_int(&BigInt::from(r.degree));
                        }
                        acc.scale(&inv_order).to_rational()
                    })
                    .collect()
            })
            .as_deref()
            .ok_or(GrcError::NotGaloisStable)
    }

    /// Least common multiple of the class-coordinate denominators.
    pub fn denominator(&self) -> Result<BigInt> {
        Ok(self
            .class_coords()?
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom())))
    }

    pub fn integrality_report(&self) -> Result<IntegralityReport> {
        let d = self.denominator()?;
        Ok(IntegralityReport {
            is_central_integral: d.is_one(),
            denominator: d.to_string(),
        })
    }

    /// `sum( c_1 * C1 + c_2 * C2 + … )` with 1-based class labels; zero
    /// coordinates are omitted.
    pub fn to_text(&self) -> Result<String> {
        let coords = self.class_coords()?;
        let mut body = String::new();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if body.is_empty() {
                let _ = write!(body, "{c} * C{}", i + 1);
            } else if c.is_negative() {
                let _ = write!(body, " - {} * C{}", -c, i + 1);
            } else {
                let _ = write!(body, " + {c} * C{}", i + 1);
            }
        }
        if body.is_empty() {
            body.push('0');
        }
        Ok(format!("sum( {body} )"))
    }

    /// `(1/d)(a_1*C1 - a_2*C2 …)` with d the common denominator.
    pub fn to_scaled_text(&self) -> Result<String> {
        Ok(scaled_text(self.class_coords()?))
    }

    pub fn to_json(&self, class_reps: Vec<String>) -> Result<CentralJson> {
        Ok(CentralJson {
            class_reps,
            coords: self.class_coords()?.iter().map(|c| c.to_string()).collect(),
            denominator: self.denominator()?.to_string(),
        })
    }
}

/// `(1/d)(a_1*C1 - a_2*C2 …)` for class coordinates listed in any order;
/// labels follow the position in `coords`.
pub fn scaled_text(coords: &[Rational]) -> String {
    let d = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut body = String::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let n = (c * Rational::from_integer(d.clone())).to_integer();
        let mag = n.abs();
        let term = if mag.is_one() {
            format!("C{}", i + 1)
        } else {
            format!("{mag}*C{}", i + 1)
        };
        if body.is_empty() {
            if n.is_negative() {
                body.push('-');
            }
        } else {
            body.push_str(if n.is_negative() { " - " } else { " + " });
        }
        body.push_str(&term);
    }
    if body.is_empty() {
        "0".into()
    } else if d.is_one() {
        format!("({body})")
    } else {
        format!("(1/{d})({body})")
    }
}
