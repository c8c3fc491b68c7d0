use std::fmt::Write as _;
use std::path::Path;

use grc::chartab::{load_degrees, load_table, save_table, CharacterTable};
use grc::clifford::{
    frobenius_structure, restriction_trials, verify_idempotent_identities, CheckReport, Section,
};
use grc::denom::{
    a_n_mod_p, d_g, hpg_criterion_check, nonintegral_witness_search, probe_denominator_ideal, ProbeConfig,
    WitnessOutcome,
};
use grc::groupring::{
    parse_element, parse_matrix, scaled_text, CentralElement, GroupAlgebra, GroupRingMatrix,
};
use grc::repro::{class_order, coords_in_order, run_worked_examples};
use grc::{builtin_group, load_group, GrcError, Group, Rational, Result, Subgroup};
use serde_json::{json, Value};

use crate::{ChartabAction, Cli, Command, GroupArg, Operand};

/// Rendered output of one command.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub violation: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            violation: false,
        }
    }
}

pub fn resolve_group(spec: &str) -> Result<Group> {
    match spec.strip_prefix('@') {
        Some(path) => load_group(Path::new(path)),
        None => builtin_group(spec),
    }
}

fn algebra(arg: &GroupArg) -> Result<GroupAlgebra> {
    GroupAlgebra::new(resolve_group(&arg.group)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| GrcError::Parse(format!("bad {what} `{t}`")))
        })
        .collect()
}

fn subgroup_from_gens(g: &Group, gens: &str) -> Result<Subgroup> {
    if gens.trim() == "derived" {
        return Ok(g.commutator_subgroup().clone());
    }
    let elems = gens
        .split(',')
        .map(|w| g.parse_element(w))
        .collect::<Result<Vec<u32>>>()?;
    Ok(g.subgroup_generated(&elems))
}

fn class_reps(g: &Group) -> Vec<String> {
    g.conjugacy_classes().reps.iter().map(|&r| g.word(r)).collect()
}

fn report_output(report: &CheckReport, header: String) -> Output {
    Output {
        text: format!("{header}\n{}", report.to_text()),
        json: serde_json::to_value(report).expect("plain data"),
        violation: report.has_failures(),
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Classes(g) => classes(&resolve_group(&g.group)?),
        Command::Chartab { group, action } => chartab(&algebra(group)?, action),
        Command::Nr { group, operand } => nr(&algebra(group)?, operand),
        Command::Adjoint {
            group,
            operand,
            zero,
            size,
        } => adjoint(&algebra(group)?, operand, *zero, *size),
        Command::Idempotents(g) => idempotents(&algebra(g)?),
        Command::Ed { group, d } => ed(&algebra(group)?, *d),
        Command::Probe {
            group,
            trials,
            seed,
            bound,
            sizes,
            normal,
            no_multiplicativity,
            prime,
        } => {
            let alg = algebra(group)?;
            let normal = normal
                .as_deref()
                .map(|s| subgroup_from_gens(alg.group(), s))
                .transpose()?;
            let cfg = ProbeConfig {
                sizes: parse_list(sizes, "size")?,
                bound: *bound,
                trials: *trials,
                seed: *seed,
                normal,
                multiplicativity: !no_multiplicativity,
            };
            probe(&alg, &cfg, *prime)
        }
        Command::Witness { group, bound } => witness(&algebra(group)?, *bound),
        Command::RestrictCheck {
            group,
            gens,
            trials,
            seed,
            bound,
            sizes,
        } => {
            let alg = algebra(group)?;
            let u = Section::new(&alg, &subgroup_from_gens(alg.group(), gens)?)?;
            let report = restriction_trials(&alg, &u, *trials, &parse_list(sizes, "size")?, *bound, *seed)?;
            Ok(report_output(
                &report,
                format!(
                    "restriction to U of order {} in {}",
                    u.order(),
                    alg.group().name()
                ),
            ))
        }
        Command::CliffordCheck { group, gens, chi } => clifford_check(&algebra(group)?, gens, *chi),
        Command::Frobenius(g) => frobenius(&resolve_group(&g.group)?),
        Command::Amodp { degrees, n, p } => amodp(degrees, *n, &parse_list(p, "prime")?),
        Command::ReproPaper { monster_degrees } => {
            let degrees = monster_degrees.as_deref().map(load_degrees).transpose()?;
            let report = run_worked_examples(degrees.as_ref())?;
            Ok(report_output(&report, "worked examples".into()))
        }
    }
}

fn classes(g: &Group) -> Result<Output> {
    let cc = g.conjugacy_classes();
    let mut text = format!("{} of order {}: {} classes\n", g.name(), g.order(), cc.count());
    let mut rows = Vec::new();
    for c in 0..cc.count() {
        let r = cc.reps[c];
        let _ = writeln!(
            text,
            "C{}  size {}  order {}  rep {}",
            c + 1,
            cc.sizes[c],
            g.element_order(r),
            g.word(r)
        );
        rows.push(json!({
            "class": c + 1,
            "size": cc.sizes[c],
            "element_order": g.element_order(r),
            "rep": g.word(r),
        }));
    }
    Ok(Output::ok(
        text,
        json!({ "group": g.name(), "order": g.order(), "classes": rows }),
    ))
}

fn table_output(g: &Group, t: &CharacterTable) -> Output {
    let reps = class_reps(g);
    let mut text = format!("classes: {}\nsizes:   {:?}\n", reps.join(" "), t.sizes);
    let mut rows = Vec::new();
    for (i, r) in t.rows.iter().enumerate() {
        let vals: Vec<String> = r.values.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "X{}  [{}]", i + 1, vals.join(", "));
        rows.push(json!({ "degree": r.degree, "values": vals }));
    }
    Output::ok(
        text,
        json!({ "order": t.order, "class_reps": reps, "sizes": t.sizes, "characters": rows }),
    )
}

fn chartab(alg: &GroupAlgebra, action: &ChartabAction) -> Result<Output> {
    let g = alg.group();
    match action {
        ChartabAction::Compute => Ok(table_output(g, alg.table())),
        ChartabAction::Save { path } => {
            save_table(alg.table(), path)?;
            let mut out = table_output(g, alg.table());
            out.text = format!("saved to {}\n{}", path.display(), out.text);
            Ok(out)
        }
        ChartabAction::Load { path } => {
            let t = load_table(path)?;
            let same = t == **alg.table();
            let mut out = table_output(g, &t);
            out.text.push_str(if same {
                "matches the computed table\n"
            } else {
                "differs from the computed table\n"
            });
            out.json["matches_computed"] = json!(same);
            out.violation = !same;
            Ok(out)
        }
    }
}

fn operand_matrix(alg: &GroupAlgebra, op: &Operand) -> Result<GroupRingMatrix<Rational>> {
    match (&op.element, &op.matrix) {
        (Some(e), None) => Ok(GroupRingMatrix::from_element(parse_element(alg.group(), e)?)),
        (None, Some(m)) => parse_matrix(alg.group(), m),
        _ => Err(GrcError::Config(
            "give exactly one of --element or --matrix".into(),
        )),
    }
}

fn central_output(
    alg: &GroupAlgebra,
    z: &CentralElement,
    label: &str,
    order: Option<&str>,
) -> Result<Output> {
    let g = alg.group();
    let (coords, reps) = match order {
        Some(words) => {
            let words: Vec<&str> = words.split(',').map(str::trim).collect();
            let idx = class_order(g, &words)?;
            (
                coords_in_order(z, &idx)?,
                words.iter().map(|w| w.to_string()).collect(),
            )
        }
        None => (z.class_coords()?.to_vec(), class_reps(g)),
    };
    let den = z.denominator()?;
    let mut text = format!("{label} = {}\n", scaled_text(&coords));
    for (i, r) in reps.iter().enumerate() {
        let _ = writeln!(text, "  C{} = class of {r}", i + 1);
    }
    let _ = writeln!(text, "denominator {den}");
    Ok(Output::ok(
        text,
        json!({
            "class_reps": reps,
            "coords": coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "denominator": den.to_string(),
            "scaled": scaled_text(&coords),
        }),
    ))
}

fn nr(alg: &GroupAlgebra, op: &Operand) -> Result<Output> {
    let h = operand_matrix(alg, op)?;
    let z = alg.reduced_norm(&h);
    central_output(alg, &z, "nr", op.class_order.as_deref())
}

fn adjoint(alg: &GroupAlgebra, op: &Operand, zero: bool, size: usize) -> Result<Output> {
    let g = alg.group();
    let h = if zero {
        if size == 0 {
            return Err(GrcError::Config("matrix size must be at least 1".into()));
        }
        GroupRingMatrix::zero(g, size)
    } else {
        operand_matrix(alg, op)?
    };
    let (adj, nr) = alg.adjoint_and_norm(&h)?;
    let n = adj.size();
    let mut text = String::new();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = adj.get(i, j).to_word_string();
            let _ = writeln!(text, "H*[{},{}] = {e}", i + 1, j + 1);
            entries.push(e);
        }
    }
    let den = adj.denominator();
    let _ = writeln!(text, "denominator {den}");
    let d = alg.derived_order();
    let mut json = json!({
        "size": n,
        "entries": entries,
        "denominator": den.to_string(),
        "derived_order": d,
        "nr": nr.to_scaled_text()?,
    });
    let mut violation = false;
    if zero {
        let tr = alg
            .trace_derived()
            .scale(&Rational::new(1.into(), (d as i64).into()));
        let expect = GroupRingMatrix::scalar(&tr, n);
        let ok = adj == expect;
        let _ = writeln!(
            text,
            "equals Tr_G'/|G'| with |G'| = {d}: {}",
            if ok { "yes" } else { "no" }
        );
        json["is_scaled_derived_trace"] = json!(ok);
        violation = !ok;
    }
    Ok(Output {
        text,
        json,
        violation,
    })
}

fn idempotents(alg: &GroupAlgebra) -> Result<Output> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for chi in 0..alg.table().rows.len() {
        let e = alg.idempotent(chi).to_word_string();
        let d = alg.character(chi).degree;
        let _ = writeln!(text, "e_{} (degree {d}) = {e}", chi + 1);
        rows.push(json!({ "chi": chi + 1, "degree": d, "idempotent": e }));
    }
    Ok(Output::ok(text, json!({ "idempotents": rows })))
}

fn ed(alg: &GroupAlgebra, d: u64) -> Result<Output> {
    let e = alg.e_d(d);
    let k = alg.derived_order();
    let scaled = alg
        .central_to_element(&e)?
        .scale(&Rational::from_integer(k.into()));
    let derived = alg.group().commutator_subgroup();
    let integral = scaled.is_integral();
    let supported = scaled.support().iter().all(|&g| derived.contains(g));
    let mut out = central_output(alg, &e, &format!("E_{d}"), None)?;
    let _ = writeln!(
        out.text,
        "|G'|*E_{d} integral: {integral}, supported on G': {supported}"
    );
    out.json["integral"] = json!(integral);
    out.json["supported_on_derived"] = json!(supported);
    out.violation = !(integral && supported);
    Ok(out)
}

fn probe(alg: &GroupAlgebra, cfg: &ProbeConfig, prime: Option<u64>) -> Result<Output> {
    let report = probe_denominator_ideal(alg, cfg)?;
    let mut text = format!(
        "{}: |G| = {}, |G'| = {}, d_G = {}\n{} trials, max nr denominator {}, max adjoint denominator {}\n",
        report.group,
        report.order,
        report.derived_order,
        report.d_g,
        report.trials.len(),
        report.max_nr_denominator,
        report.max_adjoint_denominator
    );
    if let Some(w) = &report.witness {
        let _ = writeln!(text, "non-integral nr at {w}");
    }
    for v in &report.violations {
        let _ = writeln!(text, "VIOLATION {v}");
    }
    let mut json = serde_json::to_value(&report).expect("plain data");
    let mut violation = !report.is_clean();
    if let Some(p) = prime {
        let h = hpg_criterion_check(alg, p, cfg)?;
        let _ = writeln!(
            text,
            "p = {p}: p | |G'| {}, zero adjoint p-part {}, max p-part {}, consistent {}",
            h.p_divides_derived, h.zero_adjoint_p_part, h.max_adjoint_p_part, h.consistent
        );
        json["hpg"] = serde_json::to_value(&h).expect("plain data");
        violation |= !h.consistent;
    }
    if report.is_clean() {
        text.push_str("no violations\n");
    }
    Ok(Output {
        text,
        json,
        violation,
    })
}

fn witness(alg: &GroupAlgebra, bound: i64) -> Result<Output> {
    let w = nonintegral_witness_search(alg, bound)?;
    let text = match &w {
        WitnessOutcome::Abelian => "abelian: every reduced norm is integral\n".to_string(),
        WitnessOutcome::Found(w) => format!(
            "x = {}\nnr(x) = {}\ndenominator {}, coefficient at x {}\n",
            w.element, w.norm, w.denominator, w.leading_coefficient
        ),
        WitnessOutcome::Inconclusive {
            bound,
            elements_tried,
        } => {
            format!("inconclusive: {elements_tried} elements with coefficients up to {bound}\n")
        }
    };
    let mut json = serde_json::to_value(&w).expect("plain data");
    json["d_g"] = json!(d_g(alg.group()).to_string());
    Ok(Output::ok(text, json))
}

fn clifford_check(alg: &GroupAlgebra, gens: &str, chi: Option<usize>) -> Result<Output> {
    let n = subgroup_from_gens(alg.group(), gens)?;
    let whole = Section::whole(alg);
    let count = alg.table().rows.len();
    let chars: Vec<usize> = match chi {
        Some(c) if (1..=count).contains(&c) => vec![c - 1],
        Some(c) => {
            return Err(GrcError::Config(format!(
                "character {c} out of range 1..={count}"
            )))
        }
        None => (0..count).collect(),
    };
    let mut report = CheckReport::default();
    for c in chars {
        report.extend(verify_idempotent_identities(&whole, &n, c)?);
    }
    Ok(report_output(
        &report,
        format!("N of order {} in {}", n.order(), alg.group().name()),
    ))
}

fn frobenius(g: &Group) -> Result<Output> {
    Ok(match frobenius_structure(g)? {
        None => Output::ok(
            format!("{} is not a Frobenius group\n", g.name()),
            json!({ "frobenius": false }),
        ),
        Some(f) => {
            let words = |s: &Subgroup| s.gens().iter().map(|&x| g.word(x)).collect::<Vec<_>>();
            Output::ok(
                format!(
                    "kernel of order {} generated by {}\ncomplement of order {} generated by {}\n",
                    f.kernel.order(),
                    words(&f.kernel).join(", "),
                    f.complement.order(),
                    words(&f.complement).join(", ")
                ),
                json!({
                    "frobenius": true,
                    "kernel_order": f.kernel.order(),
                    "kernel_gens": words(&f.kernel),
                    "complement_order": f.complement.order(),
                    "complement_gens": words(&f.complement),
                }),
            )
        }
    })
}

fn amodp(path: &Path, n: i64, primes: &[u64]) -> Result<Output> {
    let degrees = load_degrees(path)?;
    let mut text = format!("{} characters\n", degrees.character_count());
    let mut rows = Vec::new();
    for &p in primes {
        let r = a_n_mod_p(&degrees, n, p)?;
        let _ = writeln!(text, "A({n}) mod {p} = {}", r.residue);
        rows.push(serde_json::to_value(&r).expect("plain data"));
    }
    Ok(Output::ok(text, json!({ "residues": rows })))
}
