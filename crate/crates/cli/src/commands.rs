use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use fujiki_core::catalog::{self, load_entry};
use fujiki_core::exact::{parse_rational, Rational};
use fujiki_core::genus;
use fujiki_core::graphs::{expected_wheeling, GraphCalculus, IdentityCheck};
use fujiki_core::orbifold::{derive, shipped_keys, OrbifoldProfile};
use fujiki_core::reproduce::{self, Check, Fixtures, Report};
use fujiki_core::rr::{
    b2_bound_from_mu, b2_bound_from_rr, degree4_from_rr, hitchin_sawon_check, rr_k3n, rr_kumn,
    rr_scale, BoundReport, RRPoly,
};

use crate::{
    ClassKind, Command, Enumeration, Failure, Family, Format, GraphCheck, OrbifoldAction,
    OutputOpts,
};

type Outcome = Result<String, (Option<String>, Failure)>;

fn q(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(Failure::from)
}

fn render(r: &Report, out: OutputOpts) -> String {
    match out.format {
        Format::Tsv => r.to_tsv(out.approx),
        Format::Json => r.to_json(out.approx) + "\n",
    }
}

/// Renders the report and fails with exit code 1 if any check failed.
fn finish(r: Report, out: OutputOpts) -> Outcome {
    let text = render(&r, out);
    match r.first_failure() {
        Some(c) => Err((
            Some(text),
            Failure::Verification(format!("{}: {}", c.name, c.detail)),
        )),
        None => Ok(text),
    }
}

fn check(r: &mut Report, name: &str, passed: bool, detail: impl Into<String>) {
    r.checks.push(Check {
        name: name.into(),
        passed,
        detail: detail.into(),
        millis: 0,
    });
}

fn put_rr(r: &mut Report, p: &RRPoly) {
    for (i, a) in p.coeffs.iter().enumerate() {
        r.put(format!("rr.A{i}"), a);
    }
}

fn put_bound(r: &mut Report, b: &BoundReport) {
    r.put(
        "bound",
        b.bound
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_else(|| "none".into()),
    );
    r.put("condition_holds", b.condition_holds);
    if let Some(mu) = &b.mu {
        r.put("mu", mu);
    }
    r.put("attained_iff", &b.attained_iff);
}

/// Accepts `A0,A1,A2` (padded with zeros) or all `n + 1` coefficients.
fn rr_from_list(n: u32, list: &[String]) -> Result<RRPoly, Failure> {
    let mut coeffs = list.iter().map(|s| q(s)).collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() == 3 && n >= 2 {
        coeffs.resize(n as usize + 1, Rational::default());
    }
    Ok(RRPoly::new(n, coeffs)?)
}

pub fn run(cmd: Command, out: OutputOpts) -> Outcome {
    let fail = |f: Failure| (None, f);
    match cmd {
        Command::Rr {
            family,
            n,
            scale,
            eval,
        } => {
            if n == 0 {
                return Err(fail(Failure::Input("n must be at least 1".into())));
            }
            let mut p = match family {
                Family::K3n => rr_k3n(n),
                Family::Kumn => rr_kumn(n),
            };
            if let Some(m) = scale {
                if m == 0 {
                    return Err(fail(Failure::Input("scale must be positive".into())));
                }
                p = rr_scale(&p, m);
            }
            let mut r = Report::new(format!("rr --n {n}"));
            put_rr(&mut r, &p);
            if let Some(x) = eval {
                let x = q(&x).map_err(fail)?;
                r.put("eval", p.eval(&x));
            }
            finish(r, out)
        }
        Command::Bound { n, coeffs, mu } => {
            let mut r = Report::new(format!("bound --n {n}"));
            let b = match (coeffs, mu) {
                (Some(c), _) => b2_bound_from_rr(&rr_from_list(n, &c).map_err(fail)?)
                    .map_err(|e| fail(e.into()))?,
                (None, Some(m)) => {
                    if n < 2 {
                        return Err(fail(Failure::Input("need n >= 2".into())));
                    }
                    b2_bound_from_mu(n, &q(&m).map_err(fail)?)
                }
                (None, None) => return Err(fail(Failure::Input("give --coeffs or --mu".into()))),
            };
            put_bound(&mut r, &b);
            finish(r, out)
        }
        Command::Fujiki { n, from_rr } => {
            let p = rr_from_list(n, &from_rr).map_err(fail)?;
            let t = degree4_from_rr(&p).map_err(|e| fail(e.into()))?;
            let mut r = Report::new(format!("fujiki --n {n}"));
            for (m, v) in &t.entries {
                r.put(format!("C({m})"), v);
            }
            r.put(
                "hitchin_sawon_residual",
                hitchin_sawon_check(&t).map_err(|e| fail(e.into()))?,
            );
            finish(r, out)
        }
        Command::Orbifold { action } => orbifold(action, out),
        Command::Catalog {
            name,
            verify,
            solve_og10,
            conjectures,
        } => catalog_cmd(&name, verify, solve_og10, conjectures, out).map_err(fail)?,
        Command::Enumerate { what } => {
            let mut r = Report::new("enumerate");
            match what {
                Enumeration::Fourfolds => {
                    for (i, t) in catalog::enumerate_fourfold_tables().iter().enumerate() {
                        for (m, v) in &t.entries {
                            r.put(format!("table{}.C({m})", i + 1), v);
                        }
                    }
                }
                Enumeration::Betti => {
                    for (i, row) in catalog::enumerate_betti()
                        .map_err(|e| fail(e.into()))?
                        .iter()
                        .enumerate()
                    {
                        r.put(
                            format!("row{}", i + 1),
                            format!("{},{},{}", row.b2, row.b3, row.b4),
                        );
                    }
                }
            }
            finish(r, out)
        }
        Command::Genus { class, k } => {
            let p = match class {
                ClassKind::Ch => genus::chern_character(k),
                ClassKind::Td => genus::todd_component(k),
                ClassKind::TdHalf => genus::sqrt_todd_component(k),
            }
            .map_err(|e| fail(e.into()))?;
            match out.format {
                Format::Tsv => Ok(p.to_string()),
                Format::Json => {
                    let mut r = Report::new(format!("genus --k {k}"));
                    for (m, c) in p.terms() {
                        r.put(m.to_string(), c);
                    }
                    Ok(render(&r, out))
                }
            }
        }
        Command::Graphs { verify, n } => graphs(verify, n, out).map_err(fail)?,
        Command::Reproduce {
            only,
            details,
            fixtures,
        } => {
            let fx = match fixtures {
                Some(dir) => read_fixtures(&dir).map_err(fail)?,
                None => Fixtures::default(),
            };
            let Some(r) = reproduce::run_with(only.as_deref(), &fx) else {
                let names = reproduce::CHECK_NAMES.join(", ");
                return Err(fail(Failure::Input(format!(
                    "unknown check; expected one of {names}"
                ))));
            };
            let text = match (out.format, details) {
                (Format::Json, _) => r.to_json(out.approx) + "\n",
                (Format::Tsv, true) => r.summary() + &r.to_tsv(out.approx),
                (Format::Tsv, false) => r.summary(),
            };
            match r.first_failure() {
                Some(c) => Err((
                    Some(text),
                    Failure::Verification(format!("{}: {}", c.name, c.detail)),
                )),
                None => Ok(text),
            }
        }
    }
}

fn orbifold(action: OrbifoldAction, out: OutputOpts) -> Outcome {
    let fail = |f: Failure| (None, f);
    match action {
        OrbifoldAction::Derive { profile } => {
            let text = fs::read_to_string(&profile)
                .map_err(|e| fail(Failure::Input(format!("{}: {e}", profile.display()))))?;
            let p = OrbifoldProfile::from_json(&text).map_err(|e| fail(e.into()))?;
            let d = derive(&p).map_err(|e| fail(e.into()))?;
            let mut r = Report::new(format!("orbifold derive --profile {}", profile.display()));
            r.put("name", &d.name);
            r.put("C(c4)", &d.c_c4);
            r.put("C(td4)", &d.c_td4);
            r.put("C(c2^2)", &d.c_c2sq);
            r.put("C(c2)", &d.c_c2);
            if let Some(rr) = &d.rr {
                put_rr(&mut r, rr);
            }
            put_bound(&mut r, &d.bound);
            if let Some(s) = p.salamon_residual() {
                r.put("salamon_residual", s);
            }
            r.note("C(c4)", "chi_top minus sum of a_m (1 - 1/m)");
            r.note(
                "C(td4)",
                "chi_structure minus the local Riemann-Roch corrections",
            );
            check(
                &mut r,
                "consistency",
                d.is_consistent(),
                "3 C(c2^2) - C(c4) = 720 C(td4)",
            );
            finish(r, out)
        }
        OrbifoldAction::K4Appendix => {
            let r = reproduce::run(Some("appendix-k4")).expect("known check");
            finish(r, out)
        }
    }
}

fn catalog_cmd(
    name: &str,
    verify: bool,
    solve: bool,
    conjectures: bool,
    out: OutputOpts,
) -> Result<Outcome, Failure> {
    let e = load_entry(name)?;
    let mut r = Report::new(format!("catalog --name {name}"));
    r.put("n", e.n);
    r.put("b2", e.b2);
    for (m, v) in &e.table.entries {
        r.put(format!("C({m})"), v);
        r.note(format!("C({m})"), e.provenance_of(m));
    }
    if let Some(mu) = &e.chern_q_coeffs {
        for (k, v) in mu {
            r.put(format!("mu{k}"), v);
        }
    }
    if verify {
        match &e.chern_q_coeffs {
            Some(_) => {
                let res = catalog::verify_q_structure(&e)?;
                let bad: Vec<String> = res
                    .iter()
                    .filter(|x| x.residual != Rational::default())
                    .map(|x| x.monomial.to_string())
                    .collect();
                for x in &res {
                    r.put(format!("residual.{}", x.monomial), &x.residual);
                }
                check(&mut r, "q_structure", bad.is_empty(), bad.join(","));
            }
            None => {
                let h = hitchin_sawon_check(&e.table)?;
                r.put("hitchin_sawon_residual", &h);
                check(
                    &mut r,
                    "hitchin_sawon",
                    h == Rational::default(),
                    h.to_string(),
                );
            }
        }
    }
    if solve {
        let rr = e.table.rr()?;
        let mu = catalog::og10_sequential_solve(&rr, e.b2)?;
        for (k, v) in &mu {
            r.put(format!("solved.mu{k}"), v);
        }
        if let Some(known) = &e.chern_q_coeffs {
            check(&mut r, "solve_matches_table", known == &mu, "");
        }
    }
    if conjectures {
        let ch4 = fujiki_core::rr::ch4_constant(&e.table)? / e.table.c1()?;
        let conj = catalog::conj_ch4_value(e.n)?;
        r.put("ch4_over_C1", &ch4);
        r.put("ch4_conjectured", &conj);
        check(&mut r, "ch4", ch4 == conj, "");
        if e.n >= 4 && e.table.is_complete_to(8) {
            let rep = catalog::conj_ch8_report(&e)?;
            r.put("ch8.ratio", &rep.ratio);
            r.put("ch8.conjectured", &rep.conjectured);
            r.put("ch8.match", rep.matches);
        }
        if e.table.is_complete_to(2 * e.n) {
            let v = catalog::conj_positivity_sc(&e.table)?;
            let names: Vec<String> = v.iter().map(|x| x.class.clone()).collect();
            r.put("positivity_violations", v.len());
            check(&mut r, "positivity", v.is_empty(), names.join(","));
        }
    }
    Ok(finish(r, out))
}

fn graphs(which: GraphCheck, n: Option<u32>, out: OutputOpts) -> Result<Outcome, Failure> {
    let mut gc = GraphCalculus::new();
    let mut r = Report::new("graphs");
    let record = |r: &mut Report, c: IdentityCheck| {
        r.put(format!("{}.computed", c.name), &c.computed);
        r.put(format!("{}.expected", c.name), &c.expected);
        check(r, &c.name, c.holds, c.residual);
    };
    match which {
        GraphCheck::Basic => {
            return Ok(finish(
                reproduce::run(Some("graphs-basic")).expect("known check"),
                out,
            ))
        }
        GraphCheck::Wheeling => {
            let ns: Vec<u32> = match n {
                Some(n) => vec![n],
                None => (1..=4).collect(),
            };
            for n in ns {
                let computed = gc.wheeling_expansion(n)?;
                let c =
                    IdentityCheck::new(&format!("wheeling{n}"), computed, expected_wheeling(n)?);
                record(&mut r, c);
            }
        }
        GraphCheck::Sawon => {
            for c in gc.sawon_identities()? {
                record(&mut r, c);
            }
        }
    }
    Ok(finish(r, out))
}

fn read_fixtures(dir: &Path) -> Result<Fixtures, Failure> {
    let read = |sub: &str, known: &[&str]| -> Result<BTreeMap<String, String>, Failure> {
        let mut out = BTreeMap::new();
        let path = dir.join(sub);
        if !path.is_dir() {
            return Ok(out);
        }
        let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", path.display()));
        for item in fs::read_dir(&path).map_err(io)? {
            let file = item.map_err(io)?.path();
            if file.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let key = file
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            if !known.contains(&key.as_str()) {
                return Err(Failure::Input(format!(
                    "{}: no shipped fixture named '{key}'",
                    file.display()
                )));
            }
            out.insert(key, fs::read_to_string(&file).map_err(io)?);
        }
        Ok(out)
    };
    let orbifold_keys: Vec<&str> = shipped_keys().collect();
    Ok(Fixtures {
        orbifolds: read("orbifolds", &orbifold_keys)?,
        catalog: read("catalog", &catalog::ENTRY_NAMES)?,
    })
}
