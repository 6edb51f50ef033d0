//! Acceptance run: one PASS/FAIL line per criterion. Every comparison is
//! exact (zero tolerance); the runtime limits below are part of the
//! criteria. Exits 0 after reporting unless KGROTH_ACCEPTANCE_STRICT=1, in
//! which case any FAIL makes the exit status 1.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use kgroth::cli;
use kgroth::expansions::{coeff_matrix, is_nonnegative, is_nonnegative_in_negated, CoeffKind, SchurExpansion};
use kgroth::grothendieck::{jt_G, JTRequest, Variant};
use kgroth::polynomial::{poly_from_json, Family};
use kgroth::verify::{self, Report, Suite, VerifyOptions};
use kgroth::{Partition, Poly, SkewShape};

const LIMIT_ONE_PARAM: Duration = Duration::from_secs(5);
const LIMIT_B_VALUES: Duration = Duration::from_secs(30);
const LIMIT_SCHUR: Duration = Duration::from_secs(60);
const LIMIT_DUALITY: Duration = Duration::from_secs(120);
const LIMIT_FOCK: Duration = Duration::from_secs(300);

fn part(s: &str) -> Partition {
    s.parse().expect("partition literal")
}

fn p(s: &str) -> Poly {
    Poly::parse(s).expect("polynomial literal")
}

fn call(args: &[&str]) -> cli::Outcome {
    cli::run(std::iter::once("kgroth").chain(args.iter().copied()))
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within(v: Verdict, t: Duration, limit: Duration) -> Verdict {
    if t <= limit {
        v
    } else {
        Verdict { pass: false, detail: format!("{}; runtime {:.1}s exceeds {}s", v.detail, t.as_secs_f64(), limit.as_secs()) }
    }
}

fn terms_of(json: &serde_json::Value) -> BTreeMap<Partition, Poly> {
    json["terms"]
        .as_array()
        .expect("terms")
        .iter()
        .map(|t| {
            let shape: Vec<usize> = serde_json::from_value(t["shape"].clone()).expect("shape");
            (Partition::new(shape).expect("shape"), poly_from_json(&t["coeff"]).expect("coeff"))
        })
        .collect()
}

fn suites(list: &[(Suite, VerifyOptions)]) -> Result<Vec<Report>, String> {
    list.iter().map(|(s, o)| verify::run(*s, o).map_err(|e| format!("{}: {e}", s.name()))).collect()
}

fn summarize(reports: &[Report]) -> Verdict {
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    let bad: Vec<String> = reports
        .iter()
        .filter_map(|r| r.minimal_failure().map(|f| format!("{} [{} failures, first {}: {}]", r.suite, r.failures.len(), f.case, f.detail)))
        .collect();
    if bad.is_empty() {
        verdict(true, format!("{cases} cases, 0 failures"))
    } else {
        verdict(false, bad.join("; "))
    }
}

fn box_opts(rows: usize, cols: usize, nvars: usize) -> VerifyOptions {
    VerifyOptions { rows, cols, nvars, ..VerifyOptions::default() }
}

fn c1() -> Verdict {
    let out = call(&["expand", "one-param", "--side", "g", "--outer", "2,2,2"]);
    if out.code != 0 {
        return verdict(false, format!("exit {}: {}", out.code, out.stderr.trim()));
    }
    let got = terms_of(&serde_json::from_str(&out.stdout).expect("json"));
    // a1 (a1 + b2) and a1 (a1 + b1)(a1 + b2), expanded
    let want: BTreeMap<Partition, Poly> = [
        ("2,2,2", "1"),
        ("2,2,1", "a1"),
        ("2,1,1", "a1^2 + a1*b2"),
        ("1,1,1", "a1^3 + a1^2*b1 + a1^2*b2 + a1*b1*b2"),
    ]
    .into_iter()
    .map(|(s, q)| (part(s), p(q)))
    .collect();
    let shown: Vec<String> = got.iter().map(|(l, c)| format!("{l}: {}", c.render(false))).collect();
    verdict(got == want, shown.join(", "))
}

fn c2() -> Verdict {
    let cases = [
        ("5,4,3,2,1", "5,1,1,1,1", "a^6 + 3*a^5*b + 3*a^4*b^2 + a^3*b^3"),
        ("5,5,5,3,3", "5,3,1,1,1", "6*a^10 + 28*a^9*b + 53*a^8*b^2 + 52*a^7*b^3 + 28*a^6*b^4 + 8*a^5*b^5 + a^4*b^6"),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (l, m, want) in cases {
        let b = coeff_matrix(CoeffKind::LittleB, &part(l), &part(m)).expect("b").specialize_one_param();
        ok &= b == p(want);
        notes.push(format!("b[{l}; {m}] = {}", b.render(false)));
    }
    // the conjugate pair of the second example
    let (lc, mc) = (part("5,5,5,3,3").conjugate(), part("5,3,1,1,1").conjugate());
    let b = coeff_matrix(CoeffKind::LittleB, &lc, &mc).expect("b").specialize_one_param();
    ok &= b == p("10*a^10 + 44*a^9*b + 79*a^8*b^2 + 74*a^7*b^3 + 38*a^6*b^4 + 10*a^5*b^5 + a^4*b^6");
    notes.push(format!("b[{lc}; {mc}] = {}", b.render(false)));
    verdict(ok, notes.join("; "))
}

fn c3() -> Verdict {
    let out = call(&["expand", "schur", "--of", "G", "--outer", "1,1", "--nvars", "4", "--max-degree", "4"]);
    if out.code != 0 {
        return verdict(false, format!("exit {}: {}", out.code, out.stderr.trim()));
    }
    let se = SchurExpansion::from_json(&serde_json::from_str(&out.stdout).expect("json")).expect("expansion");
    // the displayed "s_2111" term carries a degree-2 coefficient, so it is read as s_211
    let want: BTreeMap<Partition, Poly> = [
        ("1,1", "1"),
        ("2,1", "-a1"),
        ("1,1,1", "-b1 - b2"),
        ("3,1", "a1^2"),
        ("2,1,1", "a1*b1 + a1*b2"),
        ("1,1,1,1", "b1^2 + b1*b2 + b2^2"),
    ]
    .into_iter()
    .map(|(s, q)| (part(s), p(q)))
    .collect();
    let shown: Vec<String> = se.terms.iter().map(|(l, c)| format!("s{l}: {}", c.render(false))).collect();
    let s22 = se.coeff(&part("2,2"));
    verdict(
        se.terms == want && s22.is_zero(),
        format!("{}; s(2,2): {}; displayed s_2111 read as s_211", shown.join(", "), s22.render(false)),
    )
}

fn big_g(lam: &Partition, mu: &Partition, v: Variant) -> Poly {
    jt_G(&JTRequest::new(lam.clone(), mu.clone(), 2, v)).expect("G").retruncate(3).into_body()
}

fn c4() -> Verdict {
    let mut notes = Vec::new();
    let single = big_g(&part("1"), &part("2"), Variant::G);
    let mut ok = single == p("a2 + b1");
    notes.push(format!("G[(1)/(2)] = {}", single.render(false)));
    let shapes = Partition::in_box(2, 2);
    let (mut nonzero, mut not_one, mut const_not_one, mut factor_bad) = (0, 0, 0, 0);
    for lam in &shapes {
        for mu in &shapes {
            let ds = big_g(lam, mu, Variant::Gds);
            if !lam.contains(mu) {
                nonzero += usize::from(!ds.is_zero());
                let cap = lam.intersection(mu);
                let w: Poly = SkewShape::new(mu.clone(), lam.clone())
                    .cells()
                    .into_iter()
                    .map(|(i, j)| kgroth::expansions::cell_weight(i, j))
                    .product();
                let rhs = (&w * &big_g(lam, &cap, Variant::G)).truncate(kgroth::Grading::AB, 3);
                factor_bad += usize::from(big_g(lam, mu, Variant::G) != rhs);
            } else if lam == mu {
                not_one += usize::from(ds != Poly::one());
                let at_zero = ds.substitute_with(|v| (v.family == Family::X).then(Poly::zero));
                const_not_one += usize::from(at_zero != Poly::one());
                if lam == &part("1") {
                    notes.push(format!("G[(1)//(1)] = {} + O(3)", ds.render(false)));
                }
            }
        }
    }
    ok &= nonzero == 0 && factor_bad == 0 && not_one == 0;
    notes.push(format!(
        "G// nonzero for mu not in lam: {nonzero}; G[lam//lam] != 1: {not_one} of {} (x = 0 value != 1: {const_not_one}); single-slash factorization mismatches: {factor_bad}",
        shapes.len()
    ));
    verdict(ok, notes.join("; "))
}

fn c10() -> Verdict {
    let shapes = Partition::in_box(3, 3);
    let (mut b_total, mut b_bad) = (0, 0);
    let (mut big_total, mut big_stated, mut big_alt) = (0, 0, 0);
    let mut first = None;
    for lam in &shapes {
        for mu in &shapes {
            if lam.contains(mu) {
                let b = coeff_matrix(CoeffKind::LittleB, lam, mu).expect("b");
                if !b.is_zero() {
                    b_total += 1;
                    b_bad += usize::from(!is_nonnegative(&b));
                }
            }
            if mu.contains(lam) {
                let big = coeff_matrix(CoeffKind::BigB, lam, mu).expect("B");
                if big.is_zero() {
                    continue;
                }
                big_total += 1;
                if !is_nonnegative_in_negated(&big) {
                    big_stated += 1;
                    first.get_or_insert_with(|| format!("B[{lam}; {mu}] = {}", big.render(false)));
                }
                // observed pattern: nonnegative in (-α, +β)
                let alt = big.substitute_with(|v| (v.family == Family::Alpha).then(|| -Poly::var(v)));
                big_alt += usize::from(!is_nonnegative(&alt));
            }
        }
    }
    let detail = format!(
        "b in Z>=0[a,b]: {}/{b_total}; B in Z>=0[-a,-b]: {}/{big_total} (first violation {}); observed B in Z>=0[-a,+b]: {}/{big_total}",
        b_total - b_bad,
        big_total - big_stated,
        first.unwrap_or_else(|| "none".into()),
        big_total - big_alt
    );
    verdict(b_bad == 0 && big_stated == 0, detail)
}

fn timed(f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn main() {
    let strict = std::env::var("KGROTH_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Verdict>)> = vec![
        ("one-parameter decomposition of g_222", Box::new(|| {
            let (v, t) = timed(c1);
            within(v, t, LIMIT_ONE_PARAM)
        })),
        ("b coefficients for 54321/51111 and 55533/53111 and its conjugate pair", Box::new(|| {
            let (v, t) = timed(c2);
            within(v, t, LIMIT_B_VALUES)
        })),
        ("Schur expansion of G_11 in 4 variables through degree 4", Box::new(|| {
            let (v, t) = timed(c3);
            within(v, t, LIMIT_SCHUR)
        })),
        ("G_(1)/(2), vanishing and unit diagonal of G//, single-slash factorization (2x2 box)", Box::new(c4)),
        ("duality pairing on the 3x3 box", Box::new(|| {
            let (v, t) = timed(|| suites(&[(Suite::Duality, box_opts(3, 3, 2))]).map_or_else(|e| verdict(false, e), |r| summarize(&r)));
            within(v, t, LIMIT_DUALITY)
        })),
        ("h-form = e-form for g, G, G// on the 3x3 box, n = 2, 3", Box::new(|| {
            suites(&[(Suite::Forms, box_opts(3, 3, 2)), (Suite::Forms, box_opts(3, 3, 3))])
                .map_or_else(|e| verdict(false, e), |r| summarize(&r))
        })),
        ("Fock matrix elements = Jacobi-Trudi on the 2x2 box, n = 2", Box::new(|| {
            let (v, t) = timed(|| suites(&[(Suite::FockOracle, box_opts(2, 2, 2))]).map_or_else(|e| verdict(false, e), |r| summarize(&r)));
            within(v, t, LIMIT_FOCK)
        })),
        ("branching, Cauchy, Pieri, corners, integral, determinant and flagged suites", Box::new(|| {
            suites(&[
                (Suite::Branching, box_opts(2, 2, 2)),
                (Suite::Cauchy, box_opts(2, 2, 2)),
                (Suite::Pieri, box_opts(2, 2, 2)),
                (Suite::Corners, box_opts(2, 3, 2)),
                (Suite::Integral, box_opts(2, 2, 2)),
                (Suite::Flagged, box_opts(2, 2, 2)),
            ])
            .map_or_else(|e| verdict(false, e), |r| summarize(&r))
        })),
        ("omega symmetry of g for shapes in (3,3)", Box::new(|| {
            suites(&[(Suite::Omega, box_opts(2, 3, 1))]).map_or_else(|e| verdict(false, e), |r| summarize(&r))
        })),
        ("sign patterns of b and B on the 3x3 box", Box::new(c10)),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "criterion {:>2}: {} {name} ({:.2}s): {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!("acceptance: {} of 10 passed in {:.1}s", 10 - failed, total.elapsed().as_secs_f64());
    if strict && failed > 0 {
        std::process::exit(1);
    }
}
