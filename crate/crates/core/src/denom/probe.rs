use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{d_g, p_part};
use crate::clifford::epsilon_chi;
use crate::cyclo::Rational;
use crate::error::{GrcError, Result};
use crate::group::Subgroup;
use crate::groupring::{CentralElement, GroupAlgebra, GroupRingElement, GroupRingMatrix};

#[derive(Clone, Debug, Serialize)]
pub struct ProbeConfig {
    /// Matrix sizes, used in turn by the random trials.
    pub sizes: Vec<usize>,
    /// Coefficients are drawn uniformly from [−bound, bound].
    pub bound: i64,
    pub trials: usize,
    pub seed: u64,
    /// Also check |N|·nr(H)·ε_χ for this normal subgroup N ⊇ G′.
    #[serde(skip)]
    pub normal: Option<Subgroup>,
    /// Check nr(AB) = nr(A)·nr(B) against a second random matrix.
    pub multiplicativity: bool,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            sizes: vec![1, 2],
            bound: 3,
            trials: 100,
            seed: 0,
            normal: None,
            multiplicativity: true,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(GrcError::Config("matrix sizes must be at least 1".into()));
        }
        if self.bound < 1 {
            return Err(GrcError::Config("coefficient bound must be at least 1".into()));
        }
        if self.trials < 1 {
            return Err(GrcError::Config("trial count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub kind: String,
    pub n: usize,
    pub digest: String,
    pub nr_denominator: String,
    pub adjoint_denominator: String,
    pub adjoint_identity: bool,
    pub multiplicative: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub group: String,
    pub order: usize,
    pub derived_order: usize,
    pub d_g: String,
    pub sizes: Vec<usize>,
    pub bound: i64,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    pub max_nr_denominator: String,
    pub max_adjoint_denominator: String,
    pub violations: Vec<String>,
    /// The first 1×1 trial whose reduced norm is not integral.
    pub witness: Option<String>,
}

impl ProbeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

enum Trial {
    Zero,
    Generator(u32, String),
    Random(usize),
}

fn digest(h: &GroupRingMatrix<BigInt>) -> String {
    let mut hasher = Sha256::new();
    hasher.update(h.size().to_le_bytes());
    for e in h.entries() {
        for c in e.coeffs() {
            hasher.update(c.to_signed_bytes_le());
            hasher.update(b";");
        }
        hasher.update(b"|");
    }
    hex::encode(&hasher.finalize()[..8])
}

fn scalar_matrix(alg: &GroupAlgebra, z: &CentralElement, n: usize) -> Result<GroupRingMatrix<Rational>> {
    Ok(GroupRingMatrix::scalar(&alg.central_to_element(z)?, n))
}

fn is_integral_multiple(den: &BigInt, k: usize) -> bool {
    (BigInt::from(k) % den).is_zero()
}

struct TrialOutcome {
    record: TrialRecord,
    nr_den: BigInt,
    adj_den: BigInt,
    violations: Vec<String>,
}

fn run_trial(
    alg: &GroupAlgebra,
    cfg: &ProbeConfig,
    epsilons: &[CentralElement],
    index: usize,
    trial: &Trial,
) -> Result<TrialOutcome> {
    let g = alg.group();
    let derived = alg.derived_order();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let (kind, h) = match trial {
        Trial::Zero => ("zero".to_string(), GroupRingMatrix::zero(g, 1)),
        Trial::Generator(x, name) => (
            format!("generator {name}"),
            GroupRingMatrix::from_element(GroupRingElement::basis(g, *x)),
        ),
        Trial::Random(n) => (
            "random".to_string(),
            GroupRingMatrix::random(g, &mut rng, *n, cfg.bound),
        ),
    };
    let n = h.size();
    let (adj, nr) = alg.adjoint_and_norm(&h)?;
    let nr_den = nr.denominator()?;
    let adj_den = adj.denominator();
    let label = format!("trial {index} ({kind}, n={n})");
    let mut violations = Vec::new();
    if !is_integral_multiple(&nr_den, derived) {
        violations.push(format!("{label}: |G'|*nr(H) has denominator {nr_den}"));
    }
    if !is_integral_multiple(&adj_den, derived) {
        violations.push(format!("{label}: |G'|*H* has denominator {adj_den}"));
    }
    let h_rat = h.map(|c| Rational::from_integer(c.clone()));
    let nr_i = scalar_matrix(alg, &nr, n)?;
    let adjoint_identity = h_rat.mul(&adj) == nr_i && adj.mul(&h_rat) == nr_i;
    if !adjoint_identity {
        violations.push(format!("{label}: H·H* or H*·H differs from nr(H)·I"));
    }
    let n_order = cfg.normal.as_ref().map_or(1, Subgroup::order);
    for eps in epsilons {
        let refined = nr.mul(eps).denominator()?;
        if !is_integral_multiple(&refined, n_order) {
            violations.push(format!("{label}: |N|*nr(H)*eps has denominator {refined}"));
        }
    }
    let multiplicative = if cfg.multiplicativity {
        let b = GroupRingMatrix::random(g, &mut rng, n, cfg.bound);
        let lhs = alg.reduced_norm(&h.mul(&b));
        let ok = lhs == nr.mul(&alg.reduced_norm(&b));
        if !ok {
            violations.push(format!("{label}: nr(AB) differs from nr(A)nr(B)"));
        }
        Some(ok)
    } else {
        None
    };
    Ok(TrialOutcome {
        record: TrialRecord {
            index,
            kind,
            n,
            digest: digest(&h),
            nr_denominator: nr_den.to_string(),
            adjoint_denominator: adj_den.to_string(),
            adjoint_identity,
            multiplicative,
        },
        nr_den,
        adj_den,
        violations,
    })
}

/// Runs the deterministic trials (H = 0 and H = [s] for every generator s)
/// followed by `cfg.trials` random ones. Trial i draws from the ChaCha8
/// stream i of the master seed, so results do not depend on scheduling.
pub fn probe_denominator_ideal(alg: &GroupAlgebra, cfg: &ProbeConfig) -> Result<ProbeReport> {
    cfg.validate()?;
    let g = alg.group();
    let epsilons: Vec<CentralElement> = match &cfg.normal {
        None => Vec::new(),
        Some(nsub) => {
            let mut out: Vec<CentralElement> = Vec::new();
            for chi in 0..alg.table().rows.len() {
                let e = epsilon_chi(alg, nsub, chi)?;
                if !out.contains(&e) {
                    out.push(e);
                }
            }
            out
        }
    };
    let mut trials = vec![Trial::Zero];
    for (x, name) in g.gens().into_iter().zip(g.gen_names()) {
        trials.push(Trial::Generator(x, name.clone()));
    }
    for i in 0..cfg.trials {
        trials.push(Trial::Random(cfg.sizes[i % cfg.sizes.len()]));
    }
    let outcomes: Vec<TrialOutcome> = trials
        .par_iter()
        .enumerate()
        .map(|(i, t)| run_trial(alg, cfg, &epsilons, i, t))
        .collect::<Result<_>>()?;
    let max_nr = outcomes
        .iter()
        .map(|o| &o.nr_den)
        .max()
        .cloned()
        .unwrap_or_else(BigInt::one);
    let max_adj = outcomes
        .iter()
        .map(|o| &o.adj_den)
        .max()
        .cloned()
        .unwrap_or_else(BigInt::one);
    let witness = outcomes
        .iter()
        .find(|o| o.record.n == 1 && !o.nr_den.is_one())
        .map(|o| {
            format!(
                "trial {} ({}) digest {}",
                o.record.index, o.record.kind, o.record.digest
            )
        });
    let mut violations = Vec::new();
    let mut records = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        violations.extend(o.violations);
        records.push(o.record);
    }
    Ok(ProbeReport {
        group: g.name().to_string(),
        order: g.order(),
        derived_order: alg.derived_order(),
        d_g: d_g(g).to_string(),
        sizes: cfg.sizes.clone(),
        bound: cfg.bound,
        seed: cfg.seed,
        trials: records,
        max_nr_denominator: max_nr.to_string(),
        max_adjoint_denominator: max_adj.to_string(),
        violations,
        witness,
    })
}

/// The rational shadow of the criterion that ℋ_p(G) is the full centre
/// exactly when p ∤ |G′|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HpgReport {
    pub p: u64,
    pub derived_order: usize,
    pub p_divides_derived: bool,
    /// p-part of the adjoint denominator of H = 0.
    pub zero_adjoint_p_part: String,
    /// Largest p-part among all probed adjoint denominators.
    pub max_adjoint_p_part: String,
    pub consistent: bool,
}

/// When p ∤ |G′| every probed adjoint must be p-integral; when p | |G′|
/// the adjoint of H = 0 must carry the full p-part of |G′|.
pub fn hpg_criterion_check(alg: &GroupAlgebra, p: u64, cfg: &ProbeConfig) -> Result<HpgReport> {
    if !crate::chartab::modp::is_prime(p) {
        return Err(GrcError::NotPrime(p));
    }
    let report = probe_denominator_ideal(alg, cfg)?;
    let parse = |s: &str| s.parse::<BigInt>().expect("denominators are printed as integers");
    let zero = p_part(&parse(&report.trials[0].adjoint_denominator), p);
    let max = report
        .trials
        .iter()
        .map(|t| p_part(&parse(&t.adjoint_denominator), p))
        .max()
        .unwrap_or_else(BigInt::one);
    let derived = BigInt::from(alg.derived_order());
    let divides = (&derived % BigInt::from(p)).is_zero();
    let consistent = report.is_clean()
        && if divides {
            zero == p_part(&derived, p) && max == zero
        } else {
            max.is_one()
        };
    Ok(HpgReport {
        p,
        derived_order: alg.derived_order(),
        p_divides_derived: divides,
        zero_adjoint_p_part: zero.to_string(),
        max_adjoint_p_part: max.to_string(),
        consistent,
    })
}
