//! The worked examples as a single pass/fail suite.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::chartab::DegreeList;
use crate::clifford::{frobenius_structure, CheckReport};
use crate::cyclo::Rational;
use crate::denom::{a_n_mod_p, hpg_criterion_check, nonintegral_witness_search, ProbeConfig, WitnessOutcome};
use crate::error::{GrcError, Result};
use crate::group::{Group, BUILTIN_SUITE};
use crate::groupring::{CentralElement, GroupAlgebra, GroupRingElement, GroupRingMatrix};

/// Class representatives of D8 (order 16) in the order C1, …, C7.
pub const D8_CLASS_WORDS: [&str; 7] = ["1", "a^4", "a^2", "a", "a^3", "x", "a*x"];

/// Numerators over 4 of nr(a) in D8 on [`D8_CLASS_WORDS`].
pub const D8_NORM_OF_A: [i64; 7] = [3, -1, -1, 1, 1, 0, 0];

/// Class representatives of SL2(F3) in the order C1, …, C7. The listed
/// coefficients of nr(γ) only fit with C5 ∋ α²γ² and C6 ∋ α²γ.
pub const SL2_3_CLASS_WORDS: [&str; 7] = [
    "1",
    "alpha^2",
    "gamma",
    "gamma^2",
    "alpha^2*gamma^2",
    "alpha^2*gamma",
    "alpha",
];

/// Numerators over 8 of nr(γ) in SL2(F3) on [`SL2_3_CLASS_WORDS`].
pub const SL2_3_NORM_OF_GAMMA: [i64; 7] = [3, 3, 1, -2, 2, 1, -1];

/// (p, A(−1) mod p) for the degree list of the Monster.
pub const MONSTER_RESIDUES: [(u64, u64); 9] = [
    (17, 1),
    (19, 1),
    (23, 9),
    (29, 15),
    (31, 10),
    (41, 5),
    (47, 17),
    (59, 31),
    (71, 51),
];

/// Affine groups used for the 1/|G′| coefficient check, besides S3.
pub const AFFINE_ORDERS: [usize; 5] = [4, 5, 7, 8, 9];

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// For each word, the index of its conjugacy class. Fails unless the
/// words hit every class exactly once.
pub fn class_order(g: &Group, words: &[&str]) -> Result<Vec<usize>> {
    let cc = g.conjugacy_classes();
    let mut seen = vec![false; cc.count()];
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        let c = cc.class_of[g.parse_element(w)? as usize];
        if seen[c] {
            return Err(GrcError::Mismatch(format!("`{w}` repeats class {}", c + 1)));
        }
        seen[c] = true;
        out.push(c);
    }
    if out.len() != cc.count() {
        return Err(GrcError::Mismatch(format!(
            "{} words for {} classes",
            out.len(),
            cc.count()
        )));
    }
    Ok(out)
}

/// Class coordinates of `z`, listed in the order given by `order`.
pub fn coords_in_order(z: &CentralElement, order: &[usize]) -> Result<Vec<Rational>> {
    let coords = z.class_coords()?;
    Ok(order.iter().map(|&c| coords[c].clone()).collect())
}

fn norm_of_word(alg: &GroupAlgebra, w: &str) -> Result<CentralElement> {
    let x = alg.group().parse_element(w)?;
    Ok(alg.reduced_norm_of_element(&GroupRingElement::<BigInt>::basis(alg.group(), x)))
}

fn format_coords(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn matches_listed(
    alg: &GroupAlgebra,
    word: &str,
    class_words: &[&str],
    numerators: &[i64],
    den: i64,
) -> Result<(bool, String)> {
    let order = class_order(alg.group(), class_words)?;
    let got = coords_in_order(&norm_of_word(alg, word)?, &order)?;
    let want: Vec<Rational> = numerators.iter().map(|&n| rat(n, den)).collect();
    Ok((got == want, format_coords(&got)))
}

/// The coefficient of nr(x) at x, for every x outside the Frobenius
/// kernel, compared against 1/|G′|.
pub fn frobenius_coefficients(alg: &GroupAlgebra) -> Result<(bool, String)> {
    let g = alg.group();
    let Some(f) = frobenius_structure(g)? else {
        return Ok((false, format!("{} has no Frobenius structure", g.name())));
    };
    let want = rat(1, alg.derived_order() as i64);
    let cc = g.conjugacy_classes();
    let mut ok = f.kernel.members() == g.commutator_subgroup().members();
    let mut seen = Vec::new();
    for c in 0..cc.count() {
        let x = cc.reps[c];
        if f.kernel.contains(x) {
            continue;
        }
        let nr = alg.reduced_norm_of_element(&GroupRingElement::<BigInt>::basis(g, x));
        let coeff = nr.class_coords()?[c].clone();
        ok &= coeff == want;
        seen.push(format!("{}:{coeff}", g.word(x)));
    }
    Ok((ok, format!("|G'|={} {}", alg.derived_order(), seen.join(" "))))
}

/// adj(0) = Tr_{G′}/|G′| with denominator exactly |G′|.
pub fn zero_adjoint_check(alg: &GroupAlgebra) -> Result<(bool, String)> {
    let z = GroupRingMatrix::<BigInt>::zero(alg.group(), 1);
    let adj = alg.generalized_adjoint(&z)?;
    let d = alg.derived_order();
    let want = alg.trace_derived().scale(&rat(1, d as i64));
    let den = adj.get(0, 0).denominator();
    Ok((
        adj.get(0, 0) == &want && den == BigInt::from(d),
        format!("denominator {den}, |G'|={d}"),
    ))
}

/// Images of the class sums of S3 in ℤ[S3/A3]: 1, 3τ and 2 for the
/// identity, the transpositions and the 3-cycles.
fn s3_quotient_image(alg: &GroupAlgebra) -> Result<(bool, String)> {
    let g = alg.group();
    let (q, proj) = g.quotient_group(g.commutator_subgroup())?;
    let q = Arc::new(q);
    let tau = proj[g.parse_element("t")? as usize];
    let image = |w: &str| -> Result<GroupRingElement<Rational>> {
        let c = g.conjugacy_classes().class_of[g.parse_element(w)? as usize];
        Ok(alg.class_sum(c).pushforward(&q, &proj))
    };
    let mut want_tau = GroupRingElement::<Rational>::zero(&q);
    want_tau.set_coeff(tau, rat(3, 1));
    let ok = image("1")? == GroupRingElement::one(&q)
        && image("t")? == want_tau
        && image("c")? == GroupRingElement::one(&q).scale(&rat(2, 1));
    Ok((ok, "pi(C1)=1, pi(C2)=3tau, pi(C3)=2".into()))
}

fn witness_context(w: &WitnessOutcome) -> String {
    match w.witness() {
        Some(w) => format!(
            "x = {}, nr(x) = {}, coefficient at x {}",
            w.element, w.norm, w.leading_coefficient
        ),
        None => "no witness".into(),
    }
}

fn small_probe() -> ProbeConfig {
    ProbeConfig {
        trials: 20,
        seed: 1,
        ..ProbeConfig::default()
    }
}

/// Runs every worked example. The Monster row is skipped without a
/// degree list.
pub fn run_worked_examples(monster: Option<&DegreeList>) -> Result<CheckReport> {
    let mut r = CheckReport::default();

    let d8 = GroupAlgebra::builtin("D8")?;
    let (ok, ctx) = matches_listed(&d8, "a", &D8_CLASS_WORDS, &D8_NORM_OF_A, 4)?;
    r.check("d8-norm-of-a", format!("nr(a) = {ctx}"), ok);
    let nr_a = norm_of_word(&d8, "a")?.scale(&rat(d8.derived_order() as i64, 1));
    r.check(
        "d8-scaled-norm-integral",
        format!("|G'|*nr(a) denominator {}", nr_a.denominator()?),
        nr_a.denominator()?.is_one(),
    );

    let sl = GroupAlgebra::builtin("SL2_3")?;
    let (ok, ctx) = matches_listed(&sl, "gamma", &SL2_3_CLASS_WORDS, &SL2_3_NORM_OF_GAMMA, 8)?;
    r.check("sl2-3-norm-of-gamma", format!("nr(gamma) = {ctx}"), ok);
    let one = CentralElement::one(sl.table());
    let ok = norm_of_word(&sl, "alpha")? == one && norm_of_word(&sl, "beta")? == one;
    r.check("sl2-3-norm-of-alpha-beta", "nr(alpha) = nr(beta) = 1", ok);

    let mut names = vec!["S3".to_string()];
    names.extend(AFFINE_ORDERS.iter().map(|q| format!("Aff{q}")));
    for name in &names {
        let alg = GroupAlgebra::builtin(name)?;
        let (ok, ctx) = frobenius_coefficients(&alg)?;
        r.check("frobenius-coefficient", format!("{name} {ctx}"), ok);
    }

    for name in BUILTIN_SUITE {
        let alg = GroupAlgebra::builtin(name)?;
        let (ok, ctx) = zero_adjoint_check(&alg)?;
        r.check("zero-adjoint", format!("{name} {ctx}"), ok);
    }

    let s3 = GroupAlgebra::builtin("S3")?;
    let (ok, ctx) = s3_quotient_image(&s3)?;
    r.check("s3-quotient-image", ctx, ok);

    let w = nonintegral_witness_search(&s3, 1)?;
    let ok = w
        .witness()
        .is_some_and(|w| w.element == "1:t" && w.leading_coefficient == "1/3");
    r.check("s3-transposition-witness", witness_context(&w), ok);

    let aff5 = GroupAlgebra::builtin("Aff5")?;
    let w = nonintegral_witness_search(&aff5, 1)?;
    let ok = w.witness().is_some_and(|w| w.denominator == "5");
    r.check("aff5-witness", witness_context(&w), ok);

    let h2 = hpg_criterion_check(&d8, 2, &small_probe())?;
    r.check(
        "d8-zero-adjoint-2-part",
        format!("2-part {}", h2.zero_adjoint_p_part),
        h2.consistent && h2.zero_adjoint_p_part == "4",
    );
    let h3 = hpg_criterion_check(&d8, 3, &small_probe())?;
    r.check(
        "d8-adjoints-3-integral",
        format!("max 3-part {}", h3.max_adjoint_p_part),
        h3.consistent && h3.max_adjoint_p_part == "1",
    );
    let s3p = hpg_criterion_check(&s3, 3, &small_probe())?;
    r.check(
        "s3-zero-adjoint-3-part",
        format!("3-part {}", s3p.zero_adjoint_p_part),
        s3p.consistent && s3p.zero_adjoint_p_part == "3",
    );

    match monster {
        None => r.skip("monster-residues", "no degree list supplied"),
        Some(degrees) => {
            let mut got = Vec::new();
            let mut ok = true;
            for (p, want) in MONSTER_RESIDUES {
                let res = a_n_mod_p(degrees, -1, p)?;
                ok &= res.residue == want;
                got.push(format!("{p}:{}", res.residue));
            }
            r.check("monster-residues", got.join(" "), ok);
        }
    }
    Ok(r)
}
