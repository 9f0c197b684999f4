//! Batch re-derivation of every published value, grouped into named checks,
//! and the flat key/value report used by the command-line front end.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::catalog::{self, load_entry, ManifoldEntry};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, frac, galois_inverse_sum, int, Rational};
use crate::genus;
use crate::graphs::{expected_wheeling, Diagram, Generator, GraphCalculus, GraphVector};
use crate::orbifold::{self, chi_line_bundle, derive, shipped_profile, C2Value, OrbifoldProfile};
use crate::rr::{
    b2_bound_from_rr, degree4_from_rr, hitchin_sawon_check, rr_half, rr_k3n, rr_kumn, rr_scale,
    RRPoly,
};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

/// Results, provenance notes and checks of one command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub results: BTreeMap<String, String>,
    pub provenance: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Display) {
        self.results.insert(key.into(), value.to_string());
    }

    pub fn note(&mut self, key: impl Into<String>, text: impl Into<String>) {
        self.provenance.insert(key.into(), text.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// Everything as one sorted key/value map: results as they are,
    /// `provenance.<key>`, and `check.<name>` set to `pass` or `fail`.
    pub fn entries(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        out.insert("command".to_string(), self.command.clone());
        for (k, v) in &self.results {
            out.insert(k.clone(), v.clone());
        }
        for (k, v) in &self.provenance {
            out.insert(format!("provenance.{k}"), v.clone());
        }
        for c in &self.checks {
            out.insert(
                format!("check.{}", c.name),
                if c.passed { "pass" } else { "fail" }.into(),
            );
        }
        out
    }

    pub fn to_tsv(&self, approx: bool) -> String {
        let mut s = String::new();
        for (k, v) in self.entries() {
            s.push_str(&k);
            s.push('\t');
            s.push_str(&v);
            if approx {
                s.push('\t');
                if let Ok(x) = crate::exact::parse_rational(&v) {
                    s.push_str(&crate::exact::approx(&x, 12));
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self, approx: bool) -> String {
        let entries = self.entries();
        let value = if approx {
            let approx: BTreeMap<String, String> = entries
                .iter()
                .filter_map(|(k, v)| {
                    crate::exact::parse_rational(v)
                        .ok()
                        .map(|x| (k.clone(), crate::exact::approx(&x, 12)))
                })
                .collect();
            serde_json::json!({ "entries": entries, "approx": approx })
        } else {
            serde_json::to_value(&entries).expect("string map")
        };
        serde_json::to_string_pretty(&value).expect("serializable")
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let flag = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "{flag}  {:<16} {:>6} ms  {}\n",
                c.name, c.millis, c.detail
            ));
        }
        s
    }
}

/// Collects key/value pairs and mismatches inside one check.
struct Ctx<'a> {
    prefix: &'static str,
    fixtures: &'a Fixtures,
    report: &'a mut Report,
    failures: Vec<String>,
}

impl Ctx<'_> {
    fn eq<T: PartialEq + Display>(&mut self, key: &str, got: T, want: T) {
        if got != want {
            self.failures
                .push(format!("{key}: got {got}, expected {want}"));
        }
        self.report.put(format!("{}.{key}", self.prefix), got);
    }

    fn ok(&mut self, key: &str, cond: bool, what: impl Display) {
        if !cond {
            self.failures.push(format!("{key}: {what}"));
        }
        self.report.put(format!("{}.{key}", self.prefix), what);
    }
}

type CheckFn = fn(&mut Ctx) -> Result<String>;

/// Names accepted by [`run`] for `only`, in execution order.
pub const CHECK_NAMES: [&str; 12] = [
    "degree4-tables",
    "bounds",
    "hitchin-sawon",
    "rr-half",
    "orbifolds",
    "appendix-k4",
    "og-q-structure",
    "og10-solve",
    "conjectures",
    "graphs-basic",
    "graphs-extended",
    "properties",
];

fn check_fn(name: &str) -> Option<(CheckFn, &'static str)> {
    Some(match name {
        "degree4-tables" => (
            degree4_tables as CheckFn,
            "fourfold constants of K3^[2] and Kum_2 from their RR polynomials",
        ),
        "bounds" => (
            bounds,
            "Betti bounds of K3^[n], Kum_n and the order-2 Nikulin orbifold",
        ),
        "hitchin-sawon" => (
            hitchin_sawon,
            "quadratic relation among C(1), C(c2), C(c2^2), C(c4)",
        ),
        "rr-half" => (rr_half_dual, "square-root Todd constants two ways"),
        "orbifolds" => (
            orbifolds,
            "orbifold Gauss-Bonnet and Riemann-Roch corrections",
        ),
        "appendix-k4" => (
            appendix_k4,
            "fixed points and invariants of the order-4 Kummer quotient",
        ),
        "og-q-structure" => (og_q_structure, "O'Grady tables as multiples of BBF powers"),
        "og10-solve" => (og10_solve, "sequential solve for the Chern classes of OG10"),
        "conjectures" => (
            conjectures,
            "conjecture evaluators and fourfold enumerations",
        ),
        "graphs-basic" => (graphs_basic, "gluing pairings and low wheeling expansions"),
        "graphs-extended" => (
            graphs_extended,
            "degree-3 and degree-4 wheeling expansions and gluing identities",
        ),
        "properties" => (properties, "structural identities on sampled inputs"),
        _ => return None,
    })
}

/// Replacement fixture texts, keyed like the shipped ones (`m_prime`,
/// `og10`, ...). Keys without a replacement use the shipped fixture.
#[derive(Debug, Clone, Default)]
pub struct Fixtures {
    pub orbifolds: BTreeMap<String, String>,
    pub catalog: BTreeMap<String, String>,
}

impl Fixtures {
    fn profile(&self, key: &str) -> Result<OrbifoldProfile> {
        match self.orbifolds.get(key) {
            Some(json) => OrbifoldProfile::from_json(json),
            None => shipped_profile(key),
        }
    }

    fn entry(&self, name: &str) -> Result<ManifoldEntry> {
        match self.catalog.get(name) {
            Some(json) => ManifoldEntry::from_json(json),
            None => load_entry(name),
        }
    }
}

/// Runs every check, or only the named one. Unknown names yield `None`.
pub fn run(only: Option<&str>) -> Option<Report> {
    run_with(only, &Fixtures::default())
}

/// [`run`] with some fixtures replaced.
pub fn run_with(only: Option<&str>, fixtures: &Fixtures) -> Option<Report> {
    let names: Vec<&'static str> = match only {
        Some(n) => vec![*CHECK_NAMES.iter().find(|c| **c == n)?],
        None => CHECK_NAMES.to_vec(),
    };
    let mut report = Report::new(match only {
        Some(n) => format!("reproduce --only {n}"),
        None => "reproduce".to_string(),
    });
    for name in names {
        let (f, about) = check_fn(name).expect("listed");
        let start = Instant::now();
        let mut ctx = Ctx {
            prefix: name,
            fixtures,
            report: &mut report,
            failures: Vec::new(),
        };
        let outcome = f(&mut ctx);
        let failures = std::mem::take(&mut ctx.failures);
        let millis = start.elapsed().as_millis();
        let (passed, detail) = match outcome {
            Err(e) => (false, format!("error: {e}")),
            Ok(_) if !failures.is_empty() => (false, failures.join("; ")),
            Ok(d) => (true, d),
        };
        report.note(name, about);
        report.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
            millis,
        });
    }
    Some(report)
}

fn d4(p: &RRPoly) -> Result<[Rational; 4]> {
    let t = degree4_from_rr(p)?;
    Ok([
        t.c1()?,
        t.get_str("c2")?,
        t.get_str("c2^2")?,
        t.get_str("c4")?,
    ])
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn degree4_tables(c: &mut Ctx) -> Result<String> {
    c.eq("k3_2", show(&d4(&rr_k3n(2))?), "(3, 30, 828, 324)".into());
    c.eq("kum_2", show(&d4(&rr_kumn(2))?), "(9, 54, 756, 108)".into());
    Ok("(3,30,828,324) and (9,54,756,108)".into())
}

fn bound_of(p: &RRPoly) -> Result<String> {
    Ok(b2_bound_from_rr(p)?
        .bound
        .map(|b| b.to_string())
        .unwrap_or_else(|| "none".into()))
}

fn bounds(c: &mut Ctx) -> Result<String> {
    for n in 2..=8u32 {
        let want = int(n as i64 + 17) + frac(12, n as i64 + 1);
        c.eq(&format!("k3n.{n}"), bound_of(&rr_k3n(n))?, want.to_string());
        c.eq(
            &format!("kumn.{n}"),
            bound_of(&rr_kumn(n))?,
            (n + 5).to_string(),
        );
    }
    let nikulin = RRPoly::new(2, vec![frac(1, 4), frac(3, 2), frac(17, 8)])?;
    c.eq("nikulin", bound_of(&nikulin)?, "16".into());
    Ok("K3^[n]: n+17+12/(n+1); Kum_n: n+5; Nikulin: 16".into())
}

fn hitchin_sawon(c: &mut Ctx) -> Result<String> {
    let mut count = 0;
    for n in 2..=8u32 {
        for (fam, p) in [("k3n", rr_k3n(n)), ("kumn", rr_kumn(n))] {
            let r = hitchin_sawon_check(&degree4_from_rr(&p)?)?;
            c.eq(&format!("{fam}.{n}"), r, Rational::zero());
            count += 1;
        }
    }
    for name in ["og6", "og10"] {
        c.eq(
            name,
            hitchin_sawon_check(&c.fixtures.entry(name)?.table)?,
            Rational::zero(),
        );
        count += 1;
    }
    Ok(format!("{count} residuals, all zero"))
}

fn rr_half_dual(c: &mut Ctx) -> Result<String> {
    let k3 = degree4_from_rr(&rr_k3n(2))?;
    let direct = genus::evaluate(&genus::sqrt_todd_component(2)?, &k3)?;
    let half = rr_half(2, &k3.c1()?, &k3.get_str("c2")?)?;
    c.eq("k3_2.genus", direct, frac(25, 32));
    c.eq("k3_2.binomial", half.a(2).clone(), frac(25, 32));
    for name in ["og6", "og10"] {
        let e = c.fixtures.entry(name)?;
        let t = &e.table;
        let half = rr_half(e.n, &t.c1()?, &t.get_str("c2")?)?;
        for k in 1..=e.n {
            let via_genus = genus::evaluate(&genus::sqrt_todd_component(k)?, t)?;
            let via_half = half.a(k as usize) * factorial_q(2 * e.n - 2 * k);
            c.eq(&format!("{name}.td_half_{}", 2 * k), via_genus, via_half);
        }
    }
    Ok("C(td^1/2_4) = 25/32 on K3^[2]; OG6, OG10 agree through weight 2n".into())
}

fn orbifolds(c: &mut Ctx) -> Result<String> {
    let expect: [(&str, &str, &str, &str, &str, &str); 7] = [
        ("m_prime", "198", "17/8", "576", "36", "16"),
        ("k_prime", "90", "15/8", "480", "40", "8"),
        ("kim", "12", "1/3", "84", "6", "7"),
        ("k4_prime", "45", "15/16", "240", "10*sqrt(C1)", "8"),
        ("k3_prime", "100", "19/9", "540", "26*sqrt(C1/3)", "135/17"),
        ("y_k3_z4", "261/2", "59/32", "486", "8*sqrt(3*C1)", "54/5"),
        ("y_k3_z2xz2", "162", "15/8", "504", "8*sqrt(3*C1)", "14"),
    ];
    for (key, c4, td4, c22, c2, bound) in expect {
        let d = derive(&c.fixtures.profile(key)?)?;
        c.eq(&format!("{key}.c4"), d.c_c4.to_string(), c4.into());
        c.eq(&format!("{key}.td4"), d.c_td4.to_string(), td4.into());
        c.eq(&format!("{key}.c2^2"), d.c_c2sq.to_string(), c22.into());
        c.eq(&format!("{key}.c2"), d.c_c2.to_string(), c2.into());
        c.eq(
            &format!("{key}.bound"),
            d.bound
                .bound
                .as_ref()
                .map(|b| b.to_string())
                .unwrap_or_default(),
            bound.into(),
        );
        c.ok(
            &format!("{key}.consistent"),
            d.is_consistent(),
            d.is_consistent(),
        );
    }
    let kim = derive(&c.fixtures.profile("kim")?)?;
    c.eq("kim.chi_H_at_6", chi_line_bundle(&kim, &int(6))?, int(6));
    let kp = derive(&c.fixtures.profile("k_prime")?)?;
    c.eq("k_prime.chi_H_at_1", chi_line_bundle(&kp, &int(1))?, int(5));
    for (key, m) in [("m3", 3), ("m7", 7), ("m11", 11)] {
        let d = derive(&c.fixtures.profile(key)?)?;
        let rr = d.rr.clone().expect("C(1) given");
        let want = rr_scale(&rr_k3n(2), m);
        c.ok(
            &format!("{key}.rr_is_rescaled_k3_2"),
            rr == want,
            show(&rr.coeffs),
        );
    }
    Ok("all ten profiles reproduce".into())
}

fn appendix_k4(c: &mut Ctx) -> Result<String> {
    let fp = orbifold::k4_fixed_points();
    c.eq("sigma2_fixed", fp.sigma2_fixed, 36);
    c.eq("a4", fp.a4, 8);
    let sol = orbifold::k4_solve(fp.a4)?;
    c.eq("R", sol.ramification, int(24));
    c.eq("a2", sol.a2, int(30));
    c.eq("chi", sol.chi, int(66));
    let d = derive(&orbifold::k4_profile()?)?;
    c.eq("c4", d.c_c4, int(45));
    c.eq("td4", d.c_td4, frac(15, 16));
    c.eq("c2^2", d.c_c2sq, int(240));
    c.eq("c2", d.c_c2.to_string(), "10*sqrt(C1)".into());
    c.ok(
        "c2_is_symbolic",
        matches!(d.c_c2, C2Value::Radical(_)),
        "radical",
    );
    Ok("(36, 8, 24, 30, 66, 45, 15/16, 240)".into())
}

fn og_q_structure(c: &mut Ctx) -> Result<String> {
    let mut count = 0;
    for name in ["og6", "og10"] {
        let e = c.fixtures.entry(name)?;
        for r in catalog::verify_q_structure(&e)? {
            c.eq(
                &format!("{name}.{}", r.monomial),
                r.residual,
                Rational::zero(),
            );
            count += 1;
        }
        let td = genus::evaluate(&genus::todd_component(e.n)?, &e.table)?;
        c.eq(&format!("{name}.td_top"), td, int(e.n as i64 + 1));
    }
    Ok(format!("{count} q-power identities, td_2n = n+1"))
}

fn og10_solve(c: &mut Ctx) -> Result<String> {
    let mu = catalog::og10_sequential_solve(&rr_k3n(5), 24)?;
    let want = [
        (1, frac(3, 2)),
        (2, frac(15, 16)),
        (3, frac(21, 64)),
        (4, frac(237, 3328)),
        (5, frac(27, 2560)),
    ];
    for (k, v) in want {
        c.eq(
            &format!("mu{k}"),
            mu.get(&k).cloned().unwrap_or_default(),
            v,
        );
    }
    let table = catalog::table_from_q_coeffs(5, 24, &int(945), &mu)?;
    c.ok(
        "regenerates_table",
        table.entries == c.fixtures.entry("og10")?.table.entries,
        "19 entries",
    );
    Ok("mu3 = 21/64, mu4 = 237/3328, mu5 = 27/2560".into())
}

fn conjectures(c: &mut Ctx) -> Result<String> {
    for (name, want) in [
        ("og10", frac(10, 21)),
        ("og6", frac(4, 3)),
        ("k3_2", int(5)),
        ("kum_2", int(5)),
    ] {
        let e = c.fixtures.entry(name)?;
        let got = crate::rr::ch4_constant(&e.table)? / e.table.c1()?;
        c.eq(&format!("ch4.{name}"), got.clone(), want.clone());
        c.eq(
            &format!("ch4_conj.{name}"),
            catalog::conj_ch4_value(e.n)?,
            want,
        );
    }
    for n in 3..=8u32 {
        for a in [int(0), int(1), frac(7, 3), int(-5), frac(22, 7)] {
            let t = degree4_from_rr(&catalog::rr_arith(n, &a, &int(1))?)?;
            let v = crate::rr::ch4_constant(&t)? / t.c1()?;
            c.eq(&format!("rr_arith.{n}.{a}"), v, catalog::conj_ch4_value(n)?);
        }
    }
    let rows: Vec<String> = catalog::enumerate_fourfold_tables()
        .iter()
        .map(|t| {
            Ok(show(&[
                t.c1()?,
                t.get_str("c2")?,
                t.get_str("c2^2")?,
                t.get_str("c4")?,
            ]))
        })
        .collect::<Result<_>>()?;
    c.eq(
        "fourfolds",
        rows.join(" "),
        "(3, 30, 828, 324) (9, 54, 756, 108)".into(),
    );
    let betti: Vec<String> = catalog::enumerate_betti()?
        .iter()
        .map(|r| format!("({},{},{})", r.b2, r.b3, r.b4))
        .collect();
    c.eq(
        "betti",
        betti.join(" "),
        "(23,0,276) (5,0,96) (6,4,102) (7,8,108)".into(),
    );
    let ch8 = catalog::conj_ch8_report(&c.fixtures.entry("og10")?)?;
    c.report.put("conjectures.ch8.og10.ratio", &ch8.ratio);
    c.report
        .put("conjectures.ch8.og10.conjectured", &ch8.conjectured);
    c.report.put("conjectures.ch8.og10.match", ch8.matches);
    Ok("ch4 values, offset independence, 2 fourfold tables, 4 Betti tuples".into())
}

fn gv(g: Generator) -> GraphVector {
    GraphVector::generator(g)
}

fn graphs_basic(c: &mut Ctx) -> Result<String> {
    use Generator::*;
    let mut gc = GraphCalculus::new();
    let (w2, w4, l) = (Diagram::wheel(2), Diagram::wheel(4), Diagram::strut());
    c.eq("<w2,l>", gc.glue(&w2, &l)?, gv(Theta).scale(&int(2)));
    c.eq("<w2,w2>", gc.glue(&w2, &w2)?, gv(Theta2).scale(&int(2)));
    c.eq(
        "<w4,l^2>",
        gc.glue(&w4, &l.power(2))?,
        gv(Theta2).scale(&int(20)),
    );
    let want = &(&gv(Theta) * &gv(Theta)).scale(&int(8)) + &gv(Theta2).scale(&int(16));
    c.eq("<w2^2,l^2>", gc.glue(&w2.power(2), &l.power(2))?, want);
    for n in 1..=2 {
        c.eq(
            &format!("wheeling.{n}"),
            gc.wheeling_expansion(n)?,
            expected_wheeling(n)?,
        );
    }
    Ok("four pairings, n = 1, 2 expansions".into())
}

fn graphs_extended(c: &mut Ctx) -> Result<String> {
    let mut gc = GraphCalculus::new();
    for n in 3..=4 {
        c.eq(
            &format!("wheeling.{n}"),
            gc.wheeling_expansion(n)?,
            expected_wheeling(n)?,
        );
    }
    for id in gc.sawon_identities()? {
        c.ok(&id.name, id.holds, &id.computed);
    }
    for n in 2..=4 {
        let r = gc.ring_homomorphism_residual(n, &int(1))?;
        c.ok(&format!("omega_multiplicative.{n}"), r.is_zero(), &r);
    }
    for degree in 1..=4 {
        let t = gc.table(degree);
        let what = format!(
            "{} relations, rank {}, {} classes",
            t.relation_count,
            t.rank,
            t.len()
        );
        c.ok(
            &format!("reduction_table.{degree}"),
            t.is_consistent(),
            what,
        );
    }
    Ok("n = 3, 4 expansions and both degree-4 gluing identities".into())
}

fn properties(c: &mut Ctx) -> Result<String> {
    for n in 2..=6u32 {
        for (fam, p) in [("k3n", rr_k3n(n)), ("kumn", rr_kumn(n))] {
            let t = degree4_from_rr(&p)?;
            for k in 0..=2u32 {
                let back =
                    genus::evaluate(&genus::todd_component(k)?, &t)? / factorial_q(2 * n - 2 * k);
                c.eq(
                    &format!("roundtrip.{fam}.{n}.A{k}"),
                    back,
                    p.a(k as usize).clone(),
                );
            }
            for m in [2u32, 3, 7] {
                c.eq(
                    &format!("scale_invariance.{fam}.{n}.{m}"),
                    bound_of(&rr_scale(&p, m))?,
                    bound_of(&p)?,
                );
            }
        }
    }
    for k in 0..=5u32 {
        let mut acc = genus::ChernPolynomial::zero(2 * k);
        for i in 0..=k {
            let a = genus::sqrt_todd_component(i)?;
            let b = genus::sqrt_todd_component(k - i)?;
            acc = acc.add(&a.mul(&b).expect("weight <= 10"));
        }
        c.ok(
            &format!("td_is_square.{}", 2 * k),
            acc == genus::todd_component(k)?,
            2 * k,
        );
    }
    let mut pairs = 0;
    for m in 2..=20u32 {
        for a in 1..m {
            for b in a..m {
                let w = [a, m - a, b, m - b];
                match galois_inverse_sum(m, &w) {
                    Ok(v) => {
                        pairs += 1;
                        if v <= Rational::zero() {
                            c.ok(&format!("galois_sum.{m}.{a}.{b}"), false, v);
                        }
                    }
                    Err(Error::VanishingDeterminant { .. }) => {}
                    Err(e) => c.ok(&format!("galois_sum.{m}.{a}.{b}"), false, e),
                }
            }
        }
    }
    c.report.put("properties.galois_sum_pairs", pairs);
    let mut gc = GraphCalculus::new();
    let ds = [
        Diagram::wheel(2),
        Diagram::wheel(4),
        Diagram::strut().power(2),
        Diagram::wheel(2).power(2),
    ];
    for (i, a) in ds.iter().enumerate() {
        for (j, b) in ds.iter().enumerate().skip(i) {
            let (x, y) = (gc.glue(a, b)?, gc.glue(b, a)?);
            c.ok(&format!("glue_symmetric.{i}.{j}"), x == y, &x);
        }
    }
    Ok(format!(
        "round trips, scale invariance, td = (td^1/2)^2, {pairs} Galois sums, glue symmetry"
    ))
}
