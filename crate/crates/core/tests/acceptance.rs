//! The twelve acceptance criteria, each with its own time limit. Prints one
//! line per criterion and exits non-zero if any fails.

use std::cell::RefCell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fujiki_core::catalog::{self, load_entry};
use fujiki_core::exact::{factorial_q, frac, galois_inverse_sum, int, Poly};
use fujiki_core::genus::{self, ChernPolynomial};
use fujiki_core::graphs::{expected_wheeling, Diagram, GraphCalculus};
use fujiki_core::orbifold::{self, chi_line_bundle, derive, shipped_profile, C2Value};
use fujiki_core::rr::{
    b2_bound_from_rr, degree4_from_rr, dispersion_bound, hitchin_sawon_check, rr_half, rr_k3n,
    rr_kumn, rr_scale, FujikiTable, RRPoly,
};
use fujiki_core::{Error, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! want {
    ($got:expr, $want:expr, $($what:tt)+) => {{
        let (g, w) = ($got, $want);
        if g != w {
            return Err(format!("{}: got {:?}, expected {:?}", format!($($what)+), g, w));
        }
    }};
}

fn err(e: Error) -> String {
    e.to_string()
}

fn four(t: &FujikiTable) -> Result<[Rational; 4], String> {
    Ok([
        t.c1().map_err(err)?,
        t.get_str("c2").map_err(err)?,
        t.get_str("c2^2").map_err(err)?,
        t.get_str("c4").map_err(err)?,
    ])
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn bound(p: &RRPoly) -> Result<Option<Rational>, String> {
    Ok(b2_bound_from_rr(p).map_err(err)?.bound)
}

fn degree4_tables() -> Outcome {
    want!(
        four(&degree4_from_rr(&rr_k3n(2)).map_err(err)?)?.to_vec(),
        ints(&[3, 30, 828, 324]),
        "K3^[2]"
    );
    want!(
        four(&degree4_from_rr(&rr_kumn(2)).map_err(err)?)?.to_vec(),
        ints(&[9, 54, 756, 108]),
        "Kum_2"
    );
    Ok(())
}

fn bounds() -> Outcome {
    for n in 2..=8i64 {
        let k3 = int(n + 17) + frac(12, n + 1);
        want!(bound(&rr_k3n(n as u32))?, Some(k3), "K3^[{n}]");
        want!(bound(&rr_kumn(n as u32))?, Some(int(n + 5)), "Kum_{n}");
    }
    want!(bound(&rr_k3n(2))?, Some(int(23)), "K3^[2]");
    want!(bound(&rr_k3n(5))?, Some(int(24)), "K3^[5]");
    let nikulin = RRPoly::new(2, vec![frac(1, 4), frac(3, 2), frac(17, 8)]).map_err(err)?;
    want!(bound(&nikulin)?, Some(int(16)), "Nikulin");
    Ok(())
}

fn hitchin_sawon() -> Outcome {
    for n in 2..=8u32 {
        for p in [rr_k3n(n), rr_kumn(n)] {
            let t = degree4_from_rr(&p).map_err(err)?;
            want!(
                hitchin_sawon_check(&t).map_err(err)?,
                Rational::zero(),
                "n = {n}"
            );
        }
    }
    for name in ["og6", "og10"] {
        let t = load_entry(name).map_err(err)?.table;
        want!(
            hitchin_sawon_check(&t).map_err(err)?,
            Rational::zero(),
            "{name}"
        );
    }
    Ok(())
}

fn rr_half_two_ways() -> Outcome {
    let k3 = degree4_from_rr(&rr_k3n(2)).map_err(err)?;
    let via_genus = int(7) * int(828) / int(5760) - int(324) / int(1440);
    let via_expansion =
        genus::evaluate(&genus::sqrt_todd_component(2).map_err(err)?, &k3).map_err(err)?;
    let via_binomial = rr_half(2, &int(3), &int(30)).map_err(err)?.a(2).clone();
    want!(via_genus, frac(25, 32), "hand expansion");
    want!(via_expansion, frac(25, 32), "genus expansion");
    want!(via_binomial, frac(25, 32), "binomial formula");
    for name in ["og6", "og10"] {
        let e = load_entry(name).map_err(err)?;
        let t = &e.table;
        let half =
            rr_half(e.n, &t.c1().map_err(err)?, &t.get_str("c2").map_err(err)?).map_err(err)?;
        for k in 0..=e.n {
            let a =
                genus::evaluate(&genus::sqrt_todd_component(k).map_err(err)?, t).map_err(err)?;
            let b = half.a(k as usize) * factorial_q(2 * e.n - 2 * k);
            want!(a, b, "{name} weight {}", 2 * k);
        }
    }
    Ok(())
}

fn orbifolds() -> Outcome {
    let rows = [
        ("m_prime", "198", "17/8", "576", "36", "16"),
        ("k_prime", "90", "15/8", "480", "40", "8"),
        ("kim", "12", "1/3", "84", "6", "7"),
        ("k4_prime", "45", "15/16", "240", "10*sqrt(C1)", "8"),
        ("k3_prime", "", "", "", "", "135/17"),
        ("y_k3_z4", "261/2", "", "486", "", "54/5"),
        ("y_k3_z2xz2", "162", "", "504", "", "14"),
    ];
    for (key, c4, td4, c22, c2, b) in rows {
        let d = derive(&shipped_profile(key).map_err(err)?).map_err(err)?;
        for (got, exp, what) in [
            (d.c_c4.to_string(), c4, "C(c4)"),
            (d.c_td4.to_string(), td4, "C(td4)"),
            (d.c_c2sq.to_string(), c22, "C(c2^2)"),
            (d.c_c2.to_string(), c2, "C(c2)"),
        ] {
            if !exp.is_empty() {
                want!(got.as_str(), exp, "{key} {what}");
            }
        }
        let got = d
            .bound
            .bound
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default();
        want!(got.as_str(), b, "{key} bound");
    }
    let kim = derive(&shipped_profile("kim").map_err(err)?).map_err(err)?;
    want!(
        chi_line_bundle(&kim, &int(6)).map_err(err)?,
        int(6),
        "Kim chi(H) at q = 6"
    );
    for (key, m) in [("m3", 3u32), ("m7", 7), ("m11", 11)] {
        let d = derive(&shipped_profile(key).map_err(err)?).map_err(err)?;
        let rr = d.rr.ok_or(format!("{key}: no RR polynomial"))?;
        // (1/m) RR_{K3^[2]}(m q) computed directly
        let m = int(m as i64);
        let k3 = rr_k3n(2).to_poly();
        let direct = Poly::new(
            (0..=2)
                .map(|i| k3.coeff(i) * pow_q(&m, i as u32) / &m)
                .collect(),
        );
        want!(
            format!("{:?}", rr.to_poly()),
            format!("{:?}", direct),
            "{key} RR"
        );
    }
    Ok(())
}

fn pow_q(x: &Rational, k: u32) -> Rational {
    (0..k).fold(int(1), |a, _| a * x)
}

fn appendix_k4() -> Outcome {
    let fp = orbifold::k4_fixed_points();
    want!(fp.sigma2_fixed, 36, "sigma^2-fixed points");
    want!(fp.a4, 8, "a4");
    let s = orbifold::k4_solve(fp.a4).map_err(err)?;
    want!(
        (s.ramification.clone(), s.a2.clone(), s.chi.clone()),
        (int(24), int(30), int(66)),
        "(R, a2, chi)"
    );
    let d = derive(&orbifold::k4_profile().map_err(err)?).map_err(err)?;
    want!(
        (d.c_c4.clone(), d.c_td4.clone(), d.c_c2sq.clone()),
        (int(45), frac(15, 16), int(240)),
        "(c4, td4, c2^2)"
    );
    if !matches!(d.c_c2, C2Value::Radical(_)) {
        return Err("C(c2) should stay symbolic".into());
    }
    want!(d.c_c2.to_string(), "10*sqrt(C1)", "C(c2)");
    Ok(())
}

fn og_q_structure() -> Outcome {
    let mut checked = Vec::new();
    for name in ["og6", "og10"] {
        let e = load_entry(name).map_err(err)?;
        let res = catalog::verify_q_structure(&e).map_err(err)?;
        for r in &res {
            want!(
                r.residual.clone(),
                Rational::zero(),
                "{name} {}",
                r.monomial
            );
        }
        checked.push(res.len());
        let td =
            genus::evaluate(&genus::todd_component(e.n).map_err(err)?, &e.table).map_err(err)?;
        want!(td, int(e.n as i64 + 1), "{name} C(td_2n)");
    }
    // every tabulated entry, C(1) and C(c2) included
    want!(format!("{checked:?}"), "[7, 19]", "identities checked");
    Ok(())
}

fn og10_solve() -> Outcome {
    let mu = catalog::og10_sequential_solve(&rr_k3n(5), 24).map_err(err)?;
    want!(mu.get(&3).cloned(), Some(frac(21, 64)), "mu3");
    want!(mu.get(&4).cloned(), Some(frac(237, 3328)), "mu4");
    want!(mu.get(&5).cloned(), Some(frac(27, 2560)), "mu5");
    Ok(())
}

fn conjectures() -> Outcome {
    for (name, n, v) in [
        ("og10", 5, frac(10, 21)),
        ("og6", 3, frac(4, 3)),
        ("k3_2", 2, int(5)),
        ("kum_2", 2, int(5)),
    ] {
        let t = load_entry(name).map_err(err)?.table;
        let ch4 =
            (t.get_str("c2^2").map_err(err)? - int(2) * t.get_str("c4").map_err(err)?) / int(12);
        want!(ch4 / t.c1().map_err(err)?, v.clone(), "{name} C(ch4)/C(1)");
        want!(
            catalog::conj_ch4_value(n).map_err(err)?,
            v,
            "conjectured value for n = {n}"
        );
    }
    for n in 3..=8u32 {
        let mut seen = Vec::new();
        for a in [int(0), int(1), frac(7, 3), int(-5), frac(22, 7)] {
            let t =
                degree4_from_rr(&catalog::rr_arith(n, &a, &int(1)).map_err(err)?).map_err(err)?;
            let [c1, _, c22, c4] = four(&t)?;
            seen.push((c22 - int(2) * c4) / (int(12) * c1));
        }
        if seen.iter().any(|v| *v != seen[0]) {
            return Err(format!(
                "n = {n}: C(ch4)/C(1) depends on the offset: {seen:?}"
            ));
        }
        want!(
            seen[0].clone(),
            catalog::conj_ch4_value(n).map_err(err)?,
            "offset value n = {n}"
        );
    }
    let tables: Vec<Vec<Rational>> = catalog::enumerate_fourfold_tables()
        .iter()
        .map(|t| four(t).map(|a| a.to_vec()))
        .collect::<Result<_, _>>()?;
    want!(
        format!("{tables:?}"),
        format!(
            "{:?}",
            vec![ints(&[3, 30, 828, 324]), ints(&[9, 54, 756, 108])]
        ),
        "fourfold tables"
    );
    let betti: Vec<(u32, u32, u32)> = catalog::enumerate_betti()
        .map_err(err)?
        .iter()
        .map(|r| (r.b2, r.b3, r.b4))
        .collect();
    want!(
        format!("{betti:?}"),
        "[(23, 0, 276), (5, 0, 96), (6, 4, 102), (7, 8, 108)]",
        "Betti tuples"
    );
    Ok(())
}

fn graphs_basic() -> Outcome {
    let mut gc = GraphCalculus::new();
    let (w2, w4, l) = (Diagram::wheel(2), Diagram::wheel(4), Diagram::strut());
    let s = |v: Result<_, Error>| {
        v.map(|x: fujiki_core::graphs::GraphVector| x.to_string())
            .map_err(err)
    };
    want!(s(gc.glue(&w2, &l))?, "2*Theta", "<w2, l>");
    want!(s(gc.glue(&w2, &w2))?, "2*Theta2", "<w2, w2>");
    want!(s(gc.glue(&w4, &l.power(2)))?, "20*Theta2", "<w4, l^2>");
    want!(
        s(gc.glue(&w2.power(2), &l.power(2)))?,
        "8*Theta^2 + 16*Theta2",
        "<w2^2, l^2>"
    );
    want!(s(gc.wheeling_expansion(1))?, "1 + 1/12*Theta", "n = 1");
    want!(
        s(gc.wheeling_expansion(2))?,
        "1 + 1/6*Theta + 1/144*Theta^2 + 1/144*Theta2",
        "n = 2"
    );
    Ok(())
}

fn graphs_extended() -> Outcome {
    let mut gc = GraphCalculus::new();
    for degree in 1..=4 {
        let t = gc.table(degree);
        if !t.is_consistent() {
            return Err(format!(
                "reduction table of degree {degree} is inconsistent"
            ));
        }
        if degree > 1 && t.relation_count <= t.rank {
            return Err(format!(
                "degree {degree}: relations do not overdetermine the table"
            ));
        }
    }
    for n in 3..=4 {
        want!(
            gc.wheeling_expansion(n).map_err(err)?,
            expected_wheeling(n).map_err(err)?,
            "n = {n}"
        );
    }
    let [a, b] = gc.sawon_identities().map_err(err)?;
    want!(
        a.computed.as_str(),
        "25/4*Theta2^2 + 48*Theta4 + 24*Xi",
        "<w4^2, l^4>/384"
    );
    want!(b.computed.as_str(), "287/8*Theta4 + 7*Xi", "<w8, l^4>/384");
    Ok(())
}

fn rr_poly() -> impl Strategy<Value = RRPoly> {
    (
        2u32..=8,
        1i64..50,
        1i64..20,
        -40i64..40,
        1i64..20,
        -40i64..40,
        1i64..20,
    )
        .prop_map(|(n, a0, d0, a1, d1, a2, d2)| {
            let mut c = vec![frac(a0, d0), frac(a1, d1), frac(a2, d2)];
            c.resize(n as usize + 1, Rational::zero());
            RRPoly::new(n, c).unwrap()
        })
}

fn roots() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..30, 1i64..10).prop_map(|(a, b)| frac(a, b)), 2..=6)
        .prop_filter("not all equal", |v| v.iter().any(|x| *x != v[0]))
}

fn diagrams() -> impl Strategy<Value = (Diagram, Diagram)> {
    let side = (
        prop::collection::vec(prop::sample::select(vec![2u32, 4]), 0..=2),
        0u32..=3,
    );
    (side.clone(), side)
        .prop_filter(
            "legs match, at most six legs, degree <= 4",
            |((wa, sa), (wb, sb))| {
                let legs = |w: &Vec<u32>, s: &u32| w.iter().sum::<u32>() + 2 * s;
                let verts = wa.iter().chain(wb).sum::<u32>();
                legs(wa, sa) == legs(wb, sb) && (1..=6).contains(&legs(wa, sa)) && verts <= 8
            },
        )
        .prop_map(|((wa, sa), (wb, sb))| {
            let build = |w: &[u32], s: u32| {
                w.iter().fold(Diagram::strut().power(s), |d, &k| {
                    d.disjoint_union(&Diagram::wheel(k))
                })
            };
            (build(&wa, sa), build(&wb, sb))
        })
}

fn run_prop<S: Strategy>(
    cases: u32,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&s, f).map_err(|e| e.to_string())
}

fn properties() -> Outcome {
    run_prop(64, rr_poly(), |p| {
        let t = degree4_from_rr(&p).unwrap();
        for k in 0..=2u32 {
            let a = genus::evaluate(&genus::todd_component(k).unwrap(), &t).unwrap()
                / factorial_q(2 * p.n - 2 * k);
            prop_assert_eq!(&a, p.a(k as usize));
        }
        Ok(())
    })?;
    run_prop(64, (rr_poly(), 1u32..12), |(p, m)| {
        prop_assert_eq!(
            b2_bound_from_rr(&rr_scale(&p, m)).unwrap(),
            b2_bound_from_rr(&p).unwrap()
        );
        Ok(())
    })?;
    run_prop(64, (roots(), 1i64..20, 1i64..20), |(l, a, b)| {
        let n = l.len() as u32;
        let t = frac(a, b);
        let scaled: Vec<Rational> = l.iter().map(|x| x * &t).collect();
        let d = dispersion_bound(&l, n).unwrap();
        prop_assert_eq!(dispersion_bound(&scaled, n).unwrap(), d.clone());
        // the same number from the polynomial with these negated roots
        let p = l.iter().fold(Poly::constant(int(1)), |acc, x| {
            &acc * &Poly::linear(x.clone())
        });
        prop_assert_eq!(
            b2_bound_from_rr(&RRPoly::from_poly(&p).unwrap())
                .unwrap()
                .bound,
            Some(d)
        );
        Ok(())
    })?;
    for k in 0..=5u32 {
        let mut sq = ChernPolynomial::zero(2 * k);
        for i in 0..=k {
            let a = genus::sqrt_todd_component(i).map_err(err)?;
            let b = genus::sqrt_todd_component(k - i).map_err(err)?;
            sq = sq.add(&a.mul(&b).ok_or("product overflow")?);
        }
        if sq != genus::todd_component(k).map_err(err)? {
            return Err(format!("td != (td^1/2)^2 in weight {}", 2 * k));
        }
    }
    let mut admissible = 0;
    for m in 2..=20u32 {
        for a in 1..m {
            for b in a..m {
                match galois_inverse_sum(m, &[a, m - a, b, m - b]) {
                    Ok(_) => admissible += 1,
                    Err(Error::VanishingDeterminant { .. }) => {}
                    Err(e) => {
                        return Err(format!(
                            "m = {m}, weights ({a}, {}, {b}, {}): {e}",
                            m - a,
                            m - b
                        ))
                    }
                }
            }
        }
    }
    if admissible == 0 {
        return Err("no admissible weight pairs".into());
    }
    let gc = RefCell::new(GraphCalculus::new());
    run_prop(32, diagrams(), |(a, b)| {
        let mut gc = gc.borrow_mut();
        prop_assert_eq!(gc_glue(&mut gc, &a, &b), gc_glue(&mut gc, &b, &a));
        Ok(())
    })
}

fn gc_glue(gc: &mut GraphCalculus, a: &Diagram, b: &Diagram) -> String {
    gc.glue(a, b)
        .map(|v| v.to_string())
        .unwrap_or_else(|e| e.to_string())
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let criteria: [Criterion; 12] = [
        ("degree-4 tables from RR", degree4_tables, ms(1)),
        ("Betti bounds", bounds, ms(1)),
        ("Hitchin-Sawon residuals", hitchin_sawon, ms(10)),
        (
            "square-root Todd constants two ways",
            rr_half_two_ways,
            ms(100),
        ),
        ("orbifold pipeline", orbifolds, ms(100)),
        ("order-4 Kummer quotient", appendix_k4, ms(1000)),
        ("O'Grady q-power tables", og_q_structure, ms(100)),
        ("OG10 sequential solve", og10_solve, ms(1000)),
        ("conjecture evaluators", conjectures, ms(1000)),
        ("graph identities, mandatory", graphs_basic, ms(1000)),
        ("graph identities, extended", graphs_extended, ms(30_000)),
        ("property suites", properties, ms(10_000)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = outcome.and_then(|_| {
            if took > *limit {
                Err(format!("took {took:?}, limit {limit:?}"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS  {:>2}  {name}  ({took:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}  ({took:.2?}): {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
