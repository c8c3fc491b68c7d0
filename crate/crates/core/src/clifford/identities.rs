use std::fmt;

use serde::Serialize;

use super::{
    add_functions, conjugate, coset_reps, e_of_eta, induce, linear_characters_over, restrict, scale_function,
    stabilizer, stabilizer_and_orbit, twist, u_psi, ElementFunction, Section,
};
use crate::cyclo::Cyclo;
use crate::error::Result;
use crate::group::Subgroup;
use crate::groupring::GroupRingElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub outcome: Outcome,
    pub id: String,
    pub context: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.outcome, self.id, self.context)
    }
}

/// One line per identity or check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn push(&mut self, outcome: Outcome, id: &str, context: impl Into<String>) {
        self.lines.push(CheckLine {
            outcome,
            id: id.to_string(),
            context: context.into(),
        });
    }

    pub fn check(&mut self, id: &str, context: impl Into<String>, ok: bool) {
        self.push(if ok { Outcome::Pass } else { Outcome::Fail }, id, context);
    }

    pub fn skip(&mut self, id: &str, reason: impl Into<String>) {
        self.push(Outcome::Skip, id, reason);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.lines.extend(other.lines);
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.lines.iter().filter(|l| l.outcome == outcome).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Outcome::Fail) > 0
    }

    pub fn to_text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.lines).expect("plain data serialises")
    }
}

const IDS: [&str; 9] = [
    "clifford-shape",
    "orbit-size",
    "uniform-multiplicity",
    "induced-irreducible",
    "orbit-idempotent",
    "stabilizer-idempotent",
    "induced-idempotent",
    "twist-idempotent",
    "induced-from-normal",
];

fn sum_idempotents<'a>(
    sec: &Section,
    thetas: impl IntoIterator<Item = &'a ElementFunction>,
) -> GroupRingElement<Cyclo> {
    thetas
        .into_iter()
        .fold(GroupRingElement::zero(sec.ambient()), |acc, t| {
            acc.add(&sec.idempotent_of(t))
        })
}

/// Evaluates the idempotent identities of Clifford theory for the
/// irreducible character `chi` of G relative to the normal subgroup `n`.
/// Identities whose hypotheses fail are reported as skipped.
pub fn verify_idempotent_identities(ambient: &Section, n: &Subgroup, chi: usize) -> Result<CheckReport> {
    let g = ambient.ambient().clone();
    let ctx = format!("G={} |N|={} chi={}", g.name(), n.order(), chi + 1);
    let mut rep = CheckReport::default();
    if !n.is_normal() || !g.commutator_subgroup().is_subset_of(n) {
        for id in IDS {
            rep.skip(id, format!("{ctx}: N is not a normal subgroup containing G'"));
        }
        return Ok(rep);
    }
    let alg = ambient.algebra();
    let nsec = Section::new(alg, n)?;
    let chi_f = ambient.irr(chi).clone();
    let res = restrict(&chi_f, n);
    let mults = nsec.decompose(&res)?;
    let eta = mults.iter().position(|&k| k > 0).expect("restriction is nonzero");
    let m = mults[eta];
    let data = stabilizer_and_orbit(ambient, &nsec, eta)?;
    let stab = &data.stabilizer;
    let index_g_stab = g.order() / stab.order();
    let index_stab_n = stab.order() / n.order();

    // res_N χ = m Σ_{x ∈ G/G_η} ^x η
    let orbit_sum = data.orbit.iter().fold(vec![Cyclo::zero(); g.order()], |acc, &r| {
        add_functions(&acc, nsec.irr(r))
    });
    rep.check(
        IDS[0],
        format!("{ctx} m={m}"),
        scale_function(&orbit_sum, m) == res,
    );
    rep.check(
        IDS[1],
        format!("{ctx} orbit={} [G:G_eta]={index_g_stab}", data.orbit.len()),
        data.orbit.len() == index_g_stab,
    );
    let s = data.s() as u64;
    rep.check(
        IDS[2],
        format!("{ctx} s={s} m={m} [G_eta:N]={index_stab_n}"),
        data.uniform_multiplicity() == Some(m) && s * m * m == index_stab_n as u64,
    );

    // χ_i = ind ψ_i must be irreducible, and χ is among them
    let mut chi_i = Vec::new();
    for &(p, _) in &data.psi {
        let ind = induce(&g, stab.subgroup(), stab.irr(p), ambient.subgroup());
        chi_i.push(ambient.find_irr(&ind));
    }
    let chi_idx: Vec<usize> = chi_i.iter().flatten().copied().collect();
    let ok = chi_idx.len() == chi_i.len()
        && chi_idx.contains(&chi)
        && data.chi.iter().map(|&(c, _)| c).eq(sorted(&chi_idx));
    rep.check(IDS[3], format!("{ctx} s={s}"), ok);
    if !ok {
        for id in &IDS[4..] {
            rep.skip(id, format!("{ctx}: induced characters are not irreducible"));
        }
        return Ok(rep);
    }

    // Σ e_{χ_i} = e(η) ∈ K[N]
    let sum_chi = chi_idx
        .iter()
        .fold(GroupRingElement::zero(&g), |acc, &c| acc.add(&alg.idempotent(c)));
    let e_eta = e_of_eta(&nsec, &data);
    let in_n = e_eta.support().iter().all(|&x| n.contains(x));
    rep.check(IDS[4], ctx.clone(), sum_chi == e_eta && in_n);

    // Σ e_{ψ_i} = e_η
    let sum_psi = sum_idempotents(stab, data.psi.iter().map(|&(p, _)| stab.irr(p)));
    rep.check(IDS[5], ctx.clone(), sum_psi == nsec.idempotent_of(nsec.irr(eta)));

    // e_{χ_i} = Σ_{x ∈ G/G_η} e_{^x ψ_i}
    let reps = coset_reps(&g, ambient.subgroup(), stab.subgroup());
    let ok = data.psi.iter().zip(&chi_idx).all(|(&(p, _), &c)| {
        let conjugates: Vec<ElementFunction> = reps.iter().map(|&x| conjugate(&g, stab.irr(p), x)).collect();
        sum_idempotents(stab, &conjugates) == alg.idempotent(c)
    });
    rep.check(IDS[6], format!("{ctx} [G:G_eta]={}", reps.len()), ok);

    // e_{ψ_i} = Σ_{x ∈ G_η/G_{η,ρ}} e_{^x ρ_i} with U = U_ψ
    let psi_pos = chi_idx.iter().position(|&c| c == chi).expect("checked above");
    let psi = stab.irr(data.psi[psi_pos].0).clone();
    let u = u_psi(&g, n, &psi);
    let usec = Section::new(alg, &u)?;
    let rho_mults = usec.decompose(&restrict(&psi, &u))?;
    let rho_idx = rho_mults
        .iter()
        .position(|&k| k > 0)
        .expect("restriction is nonzero");
    let f = rho_mults[rho_idx];
    let omegas = linear_characters_over(stab, n);
    let mut ok = true;
    for &(p, _) in &data.psi {
        let target = stab.irr(p);
        let Some(w) = omegas.iter().find(|&&w| twist(&psi, stab.irr(w)) == *target) else {
            ok = false;
            break;
        };
        let rho_i = restrict(&twist(usec.irr(rho_idx), stab.irr(*w)), &u);
        let stab_rho = stabilizer(&g, stab.subgroup(), &rho_i);
        let reps = coset_reps(&g, stab.subgroup(), &stab_rho);
        let conjugates: Vec<ElementFunction> = reps.iter().map(|&x| conjugate(&g, &rho_i, x)).collect();
        let ind = induce(&g, &u, &rho_i, stab.subgroup());
        let index = (stab_rho.order() / u.order()) as u64;
        ok &= sum_idempotents(&usec, &conjugates) == stab.idempotent_of(target)
            && ind == scale_function(target, f)
            && index == f * f;
    }
    rep.check(IDS[7], format!("{ctx} |U_psi|={} f={f}", u.order()), ok);

    induced_from_normal(ambient, n, chi, &ctx, &mut rep)?;
    Ok(rep)
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// A proper normal subgroup H and λ ∈ Irr(H) with χ = ind_H^G λ.
#[derive(Clone, Debug)]
pub struct InducedConfiguration {
    pub chi: usize,
    pub n: Subgroup,
    pub h: Subgroup,
}

fn find_inducing(ambient: &Section, chi: usize) -> Result<Option<(Section, usize)>> {
    let g = ambient.ambient();
    let deg = ambient.table().rows[chi].degree;
    for h in g.normal_subgroups() {
        if h.order() == g.order() {
            continue;
        }
        let index = (g.order() / h.order()) as u64;
        if !deg.is_multiple_of(index) {
            continue;
        }
        let hsec = Section::new(ambient.algebra(), &h)?;
        let mults = hsec.decompose(&restrict(ambient.irr(chi), &h))?;
        if let Some(l) =
            (0..mults.len()).find(|&l| mults[l] > 0 && hsec.table().rows[l].degree * index == deg)
        {
            return Ok(Some((hsec, l)));
        }
    }
    Ok(None)
}

/// Hypotheses for the induced-from-normal identity: res_N χ irreducible,
/// U_χ = G, and χ induced from a proper normal subgroup.
fn induced_hypotheses(
    ambient: &Section,
    n: &Subgroup,
    chi: usize,
) -> Result<std::result::Result<(Section, usize), String>> {
    let g = ambient.ambient();
    let f = ambient.irr(chi);
    let res = restrict(f, n);
    let self_inner = {
        let mut acc = Cyclo::zero();
        for &x in n.members() {
            acc = &acc + &(&res[x as usize] * &res[x as usize].conj());
        }
        acc.scale(&crate::cyclo::Rational::new(1.into(), n.order().into()))
    };
    if self_inner != Cyclo::one() {
        return Ok(Err("res_N chi is reducible".into()));
    }
    if u_psi(g, n, f).order() != g.order() {
        return Ok(Err("U_chi is a proper subgroup".into()));
    }
    Ok(match find_inducing(ambient, chi)? {
        Some(found) => Ok(found),
        None => Err("chi is not induced from a proper normal subgroup".into()),
    })
}

fn induced_from_normal(
    ambient: &Section,
    n: &Subgroup,
    chi: usize,
    ctx: &str,
    rep: &mut CheckReport,
) -> Result<()> {
    let id = IDS[8];
    let (hsec, lambda) = match induced_hypotheses(ambient, n, chi)? {
        Ok(found) => found,
        Err(reason) => {
            rep.skip(id, format!("{ctx}: {reason}"));
            return Ok(());
        }
    };
    let g = ambient.ambient();
    let h = hsec.subgroup();
    let psi = ambient.irr(chi);
    let reps = coset_reps(g, ambient.subgroup(), h);
    let mut ok = true;
    for w in linear_characters_over(ambient, n) {
        let omega = ambient.irr(w);
        let twisted = twist(psi, omega);
        let lam_w = restrict(&twist(hsec.irr(lambda), omega), h);
        ok &= induce(g, h, &lam_w, ambient.subgroup()) == twisted;
        let conjugates: Vec<ElementFunction> = reps
            .iter()
            .map(|&c| twist(&conjugate(g, hsec.irr(lambda), c), &restrict(omega, h)))
            .collect();
        ok &= sum_idempotents(&hsec, &conjugates) == ambient.idempotent_of(&twisted);
    }
    rep.check(id, format!("{ctx} |H|={}", h.order()), ok);
    Ok(())
}

/// Triples (χ, N, H) with N ⊇ G′ normal for which the induced-from-normal
/// identity applies.
pub fn search_induced_configurations(ambient: &Section) -> Result<Vec<InducedConfiguration>> {
    let g = ambient.ambient();
    let derived = g.commutator_subgroup();
    let mut found = Vec::new();
    for n in g.normal_subgroups() {
        if !derived.is_subset_of(&n) {
            continue;
        }
        for chi in 0..ambient.irr_count() {
            if let Ok((hsec, _)) = induced_hypotheses(ambient, &n, chi)? {
                found.push(InducedConfiguration {
                    chi,
                    n: n.clone(),
                    h: hsec.subgroup().clone(),
                });
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::GroupAlgebra;

    fn run(name: &str) -> CheckReport {
        let a = GroupAlgebra::builtin(name).unwrap();
        let whole = Section::whole(&a);
        let n = a.group().commutator_subgroup().clone();
        let mut rep = CheckReport::default();
        for chi in 0..whole.irr_count() {
            rep.extend(verify_idempotent_identities(&whole, &n, chi).unwrap());
        }
        rep
    }

    #[test]
    fn s3_passes() {
        let rep = run("S3");
        assert!(!rep.has_failures(), "{}", rep.to_text());
        assert!(rep
            .lines
            .iter()
            .any(|l| l.id == "orbit-idempotent" && l.outcome == Outcome::Pass));
    }

    #[test]
    fn d8_passes() {
        let rep = run("D8");
        assert!(!rep.has_failures(), "{}", rep.to_text());
        assert!(rep.count(Outcome::Pass) >= 7 * 7);
    }

    #[test]
    fn abelian_degenerates() {
        let rep = run("C6");
        assert!(!rep.has_failures(), "{}", rep.to_text());
    }

    #[test]
    fn non_normal_is_skipped() {
        let a = GroupAlgebra::builtin("S3").unwrap();
        let whole = Section::whole(&a);
        let t = a.group().parse_element("t").unwrap();
        let rep = verify_idempotent_identities(&whole, &a.group().subgroup_generated(&[t]), 0).unwrap();
        assert_eq!(rep.count(Outcome::Skip), IDS.len());
    }

    #[test]
    fn report_formats() {
        let mut rep = CheckReport::default();
        rep.check("x", "ctx", true);
        rep.skip("y", "why");
        assert_eq!(rep.to_text(), "PASS x ctx\nSKIP y why\n");
        assert!(rep.to_json().contains("\"SKIP\""));
    }
}
