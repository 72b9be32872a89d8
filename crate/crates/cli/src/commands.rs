use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use pdslab::cayley::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use pdslab::class_function::{center_obstruction, class_meet_nonempty, CenterVerdict};
use pdslab::constructions::{godsil_pds, order27_pds, triangular_pds, Certification, Order27Variant};
use pdslab::group_ring::{dual_pds, multiplier_test, quotient_multiplier_test, ThetaChoice};
use pdslab::io::{
    parse_group_file, parse_pc_file, parse_subset_words, write_group_file, write_subset_file, Certificate,
    CertificateKind, WordOrder,
};
use pdslab::scan::scan;
use pdslab::{cayley, phi_report, verify_pds, verify_srg, Error, FiniteGroup, Graph, Params, PdsCandidate, SrgCheck};

use crate::{Command, Construction, GraphFormat, GroupSet, Theta};

/// 1 for a mathematical failure, 2 for bad input.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::NotSharplyTransitive(_) | Error::Construction(_)) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// A group table or, when the first line is `pc n`, a pc presentation.
fn load_group(path: &Path) -> Result<FiniteGroup> {
    let text = read(path)?;
    let first = text.lines().find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')).unwrap_or("");
    let g = if first.trim_start().starts_with("pc") {
        let pres = parse_pc_file(&text)?;
        pdslab::group::group_from_pc_presentation(&pres)?.group
    } else {
        parse_group_file(&text)?
    };
    Ok(g)
}

fn load_set(g: &FiniteGroup, path: &Path, order: WordOrder) -> Result<Vec<usize>> {
    let text = read(path)?;
    parse_subset_words(&text, g, &g.generator_names(), order).with_context(|| path.display().to_string())
}

fn load(input: &GroupSet) -> Result<(FiniteGroup, Vec<usize>)> {
    let g = load_group(&input.group).with_context(|| input.group.display().to_string())?;
    let s = load_set(&g, &input.set, input.word_order)?;
    Ok((g, s))
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    let body = text.trim();
    let is_edges = body.starts_with('#') || body.lines().next().is_some_and(|l| l.split_whitespace().count() == 2);
    Ok(if is_edges { from_edge_list(&text)? } else { from_graph6(body)? })
}

fn maybe_write(cert: &Option<PathBuf>, c: &Certificate) -> Result<()> {
    if let Some(p) = cert {
        write(p, &c.render())?;
    }
    Ok(())
}

pub fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Feasibility { params, cert } => feasibility(&params, &cert),
        Command::Construct { which, out } => construct(which, &out),
        Command::Verify { input, params, graph, cert } => verify(&input, &params, graph, &cert),
        Command::Phi { input, params, cert } => phi(&input, &params, &cert),
        Command::Multiplier { input, m, quotient, params } => multiplier(&input, m, quotient, params),
        Command::Dual { input, params, theta } => dual(&input, &params, theta),
        Command::Scan { v_max, rejected } => scan_cmd(v_max, rejected),
        Command::Export { graph, group, set, word_order, format } => export(graph, group, set, word_order, format),
    }
}

fn feasibility(p: &Params, cert: &Option<PathBuf>) -> Result<bool> {
    let v = p.feasibility();
    println!("params {p}");
    let mut c = Certificate::new(CertificateKind::Feasibility).field("params", p);
    for r in &v.reasons {
        let mark = if r.satisfied { "pass" } else { "FAIL" };
        println!("  {:<22} {mark}  {}", r.rule.to_string(), r.detail);
        c.push(format!("rule.{}", r.rule), format!("{mark} {}", r.detail));
    }
    println!("feasible: {}", v.feasible());
    println!("abelian: {}", v.abelian);
    println!("genuinely nonabelian candidate: {}", v.genuinely_nonabelian_candidate);
    c.push("feasible", v.feasible());
    c.push("abelian", v.abelian);
    c.push("genuinely_nonabelian_candidate", v.genuinely_nonabelian_candidate);
    if let Some(f) = v.first_failure() {
        c.push("first_failure", f.rule);
    }
    maybe_write(cert, &c)?;
    Ok(v.feasible())
}

fn certificate_for(source: &str, g: &FiniteGroup, s: &[usize], cert: &Certification) -> Certificate {
    let pds = &cert.pds;
    let kind = if pds.passed() { CertificateKind::PdsPass } else { CertificateKind::PdsFail };
    let mut c = Certificate::new(kind).field("params", &cert.params).with_group(source, g).with_subset(g, s);
    c.push("verdict.group_ring", if pds.passed() { "pass" } else { "fail" });
    push_witnesses(&mut c, g, pds);
    let srg = match cert.srg.params() {
        Some((k, l, m)) => format!("srg ({},{k},{l},{m})", g.order()),
        None => format!("{:?}", cert.srg),
    };
    c.push("verdict.cayley_graph", if cert.srg_agrees() { format!("pass {srg}") } else { format!("fail {srg}") });
    c
}

fn push_witnesses(c: &mut Certificate, g: &FiniteGroup, pds: &pdslab::PdsCertificate) {
    if pds.size as i64 != pds.params.k {
        c.push("witness.size", format!("|S| = {}, k = {}", pds.size, pds.params.k));
    }
    if pds.contains_identity {
        c.push("witness.identity", "S contains the identity");
    }
    if let Some(x) = pds.inverse_witness {
        c.push("witness.inverse", format!("{} in S, inverse {} not in S", g.label(x), g.label(g.inv(x))));
    }
    if let Some(f) = pds.failures.first() {
        c.push(
            "witness.coefficient",
            format!("coefficient of {} in S^2 is {}, expected {}", g.label(f.element), f.actual, f.expected),
        );
        c.push("witness.failures", pds.failures.len());
    }
}

fn emit_construction(out: &Path, stem: &str, g: &FiniteGroup, s: &[usize], cert: &Certification) -> Result<bool> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let group_path = out.join(format!("{stem}.group"));
    let set_path = out.join(format!("{stem}.set"));
    let cert_path = out.join(format!("{stem}.cert"));
    write(&group_path, &write_group_file(g))?;
    write(&set_path, &write_subset_file(g, s))?;
    let c = certificate_for(&format!("construct {stem}"), g, s, cert);
    write(&cert_path, &c.render())?;
    println!("params {}", cert.params);
    println!("S = [ {} ]", c.get("subset.words").unwrap_or(""));
    println!("group ring: {}", if cert.pds.passed() { "pass" } else { "fail" });
    println!("cayley graph: {}", if cert.srg_agrees() { "pass" } else { "fail" });
    for p in [&group_path, &set_path, &cert_path] {
        println!("wrote {}", p.display());
    }
    Ok(cert.pds.passed() && cert.srg_agrees())
}

fn construct(which: Construction, out: &Path) -> Result<bool> {
    match which {
        Construction::Triangular { q } => {
            let c = triangular_pds(q)?;
            emit_construction(out, &format!("triangular-q{q}"), &c.group, &c.subset, &c.certification)
        }
        Construction::Godsil { q, r } => {
            let c = godsil_pds(q, r)?;
            let inv = &c.invariants;
            println!(
                "ovoid {} line orbits of size {} orbits through P0 {} fixed {} exponent {}",
                inv.ovoid_size, inv.line_orbit_size, inv.orbits_through_p0, inv.fixed_orbits_through_p0, inv.exponent
            );
            emit_construction(out, &format!("godsil-q{q}-r{r}"), &c.sylow.group, &c.subset, &c.certification)
        }
        Construction::Order27 { variant } => {
            let v: Order27Variant = variant.parse()?;
            let c = order27_pds(v)?;
            let stem = match v {
                Order27Variant::Heisenberg => "order27-heisenberg",
                Order27Variant::C9 => "order27-c9",
            };
            emit_construction(out, stem, &c.pc.group, &c.subset, &c.certification)
        }
    }
}

fn verify(input: &GroupSet, p: &Params, graph: bool, cert: &Option<PathBuf>) -> Result<bool> {
    let (g, s) = load(input)?;
    let cand = PdsCandidate::new(&g, &s)?;
    let pds = verify_pds(&cand, p)?;
    let kind = if pds.passed() { CertificateKind::PdsPass } else { CertificateKind::PdsFail };
    let mut c = Certificate::new(kind)
        .field("params", p)
        .with_group(&input.group.display().to_string(), &g)
        .with_subset(&g, &s);
    c.push("verdict.group_ring", if pds.passed() { "pass" } else { "fail" });
    push_witnesses(&mut c, &g, &pds);
    let mut ok = pds.passed();
    if graph {
        let check = verify_srg(&cayley(&g, &s)?);
        let agrees = check.params().map(|(k, l, m)| (k as i64, l as i64, m as i64)) == Some((p.k, p.lambda, p.mu));
        let text = match &check {
            SrgCheck::Strong { .. } => {
                let (k, l, m) = check.params().expect("strong");
                format!("({},{k},{l},{m})", g.order())
            }
            other => format!("{other:?}"),
        };
        c.push("verdict.cayley_graph", format!("{} {text}", if agrees { "pass" } else { "fail" }));
        ok &= agrees;
    }
    print!("{}", c.render());
    maybe_write(cert, &c)?;
    Ok(ok)
}

fn phi(input: &GroupSet, p: &Params, cert: &Option<PathBuf>) -> Result<bool> {
    let (g, s) = load(input)?;
    let cand = PdsCandidate::new(&g, &s)?;
    let rep = phi_report(&cand, p)?;
    print!("{}", rep.render(&g));
    let mut c = Certificate::new(CertificateKind::PhiReport)
        .field("params", p)
        .with_group(&input.group.display().to_string(), &g)
        .field("sqrt_delta", rep.sqrt_delta)
        .field("target", format!("{} = {} mod {}", rep.target, rep.residue_target, rep.sqrt_delta));
    for r in &rep.rows {
        c.push(
            format!("class.{}", g.label(r.representative)),
            format!("size {} centralizer {} meet {} phi {} mod {}", r.class_size, r.centralizer_order, r.meet, r.phi, r.phi_residue),
        );
    }
    match class_meet_nonempty(&cand, p) {
        Ok(m) => {
            let empty: Vec<String> = m.empty_classes.iter().map(|&x| g.label(x)).collect();
            println!("every nonidentity class meets S: {}", m.holds);
            c.push("class_meet", if m.holds { "pass".to_string() } else { format!("fail {}", empty.join(" ")) });
        }
        Err(Error::Inapplicable(msg)) => println!("class meet test not applicable: {msg}"),
        Err(e) => return Err(e.into()),
    }
    match center_obstruction(&g, p)? {
        CenterVerdict::Impossible { center_order } => {
            println!("nontrivial center of order {center_order} excludes these parameters");
            c.push("center", format!("obstruction, |Z| = {center_order}"));
        }
        CenterVerdict::Inapplicable(msg) => c.push("center", format!("no obstruction: {msg}")),
    }
    c.push("all_pass", rep.all_pass);
    maybe_write(cert, &c)?;
    println!("all classes pass: {}", rep.all_pass);
    Ok(rep.all_pass)
}

fn multiplier(input: &GroupSet, m: i64, quotient: bool, params: Option<Params>) -> Result<bool> {
    let (g, s) = load(input)?;
    let cand = PdsCandidate::new(&g, &s)?;
    if quotient {
        let p = match params.or_else(|| cand.infer_params()) {
            Some(p) => p,
            None => anyhow::bail!(Error::InvalidParams("the subset is not a PDS; pass --params".into())),
        };
        let r = quotient_multiplier_test(&cand, &p, m)?;
        println!("|G/G'| = {}", r.quotient_order);
        println!("image of S: {:?}", r.image);
        println!("after x -> x^{m}: {:?}", r.image_after_power);
        println!("quotient multiplier {m}: {}", if r.holds { "holds" } else { "fails" });
        return Ok(r.holds);
    }
    let r = multiplier_test(&cand, m)?;
    match r.witness {
        None => println!("multiplier {m}: holds"),
        Some(x) => println!(
            "multiplier {m}: fails, witness {} in S but ({})^{m} = {} is not",
            g.label(x),
            g.label(x),
            g.label(g.pow(x, m))
        ),
    }
    Ok(r.holds)
}

fn dual(input: &GroupSet, p: &Params, theta: Theta) -> Result<bool> {
    let (g, s) = load(input)?;
    let cand = PdsCandidate::new(&g, &s)?;
    let choice = match theta {
        Theta::First => ThetaChoice::First,
        Theta::Second => ThetaChoice::Second,
    };
    let r = dual_pds(&cand, p, choice)?;
    println!("characters: {}", r.decomposition);
    println!("theta {}: cells {:?}", r.theta, r.cell_sizes);
    println!("|S*| = {} (expected {})", r.subset.len(), r.expected_size);
    match &r.dual_params {
        Some(dp) => println!("S* is a {dp} PDS: {}", r.dual_certified),
        None => println!("S* is not a PDS"),
    }
    match r.dual_sqrt_delta {
        Some(d) => println!("sqrt(delta*) = {d}, sqrt(delta) = {}, v = {}", r.sqrt_delta, p.v),
        None => println!("sqrt(delta*) undefined"),
    }
    Ok(r.passed(p.v))
}

fn scan_cmd(v_max: i64, rejected: bool) -> Result<bool> {
    if v_max < 3 {
        anyhow::bail!(Error::InvalidParams(format!("--v-max {v_max} is below 3")));
    }
    let r = scan(v_max);
    for e in &r.feasible {
        println!("{e}");
    }
    if rejected {
        for (p, rule) in &r.rejected {
            println!("{p} rejected {rule}");
        }
    }
    let counts: Vec<String> = r.rejection_counts().iter().map(|(k, n)| format!("{k} {n}")).collect();
    println!("# {} feasible, rejected: {}", r.feasible.len(), counts.join(", "));
    Ok(true)
}

fn export(
    graph: Option<PathBuf>,
    group: Option<PathBuf>,
    set: Option<PathBuf>,
    word_order: WordOrder,
    format: GraphFormat,
) -> Result<bool> {
    let g = match (graph, group, set) {
        (Some(path), _, _) => load_graph(&path)?,
        (None, Some(group), Some(set)) => {
            let (g, s) = load(&GroupSet { group, set, word_order })?;
            cayley(&g, &s)?
        }
        _ => anyhow::bail!(Error::InvalidParams("give --graph, or --group with --set".into())),
    };
    match format {
        GraphFormat::Edges => print!("{}", to_edge_list(&g)),
        GraphFormat::Graph6 => println!("{}", to_graph6(&g)),
    }
    Ok(true)
}
