//! Acceptance gate: one pass/fail line per criterion.
//!
//! Runs as a plain binary (`harness = false`) and exits nonzero when any
//! criterion fails unexpectedly. A failure listed in `KNOWN` is still printed
//! as FAIL, but only the exact documented discrepancy is tolerated.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use ftik_core::catalog::{self, CatalogEntry};
use ftik_core::fintype::{self, CASSON, LAMBDA2};
use ftik_core::invariants;
use ftik_core::series::{format_rational, rat};
use ftik_core::skein;
use ftik_core::{LinkDiagram, Rational, Result, SurgeryPresentation, TruncSeries};

use common::{a2_from_jones, as_poly, int, naive_bracket, psi2_closed_form, v_closed_form, Poly};

struct Outcome {
    pass: bool,
    detail: String,
    /// Per-item failures, used to match known discrepancies exactly.
    failures: Vec<String>,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        Outcome { pass: failures.is_empty(), detail: summary, failures }
    }
}

/// Criterion 2 disagrees on the figure-eight knot; see the README.
const KNOWN: &[(u32, &[&str])] = &[(2, &["figure-eight: psi2 = 21, lambda2 = 69"])];

fn presentations() -> Vec<(CatalogEntry, SurgeryPresentation)> {
    catalog::entries().into_iter().filter_map(|e| e.surgery().ok().map(|s| (e, s))).collect()
}

fn algebraically_split() -> Vec<CatalogEntry> {
    catalog::entries()
        .into_iter()
        .filter(|e| !e.diagram.is_empty() && e.diagram.is_algebraically_split().unwrap())
        .collect()
}

/// Distinct catalog knots, reframed to +1.
fn plus_one_knots() -> Vec<LinkDiagram> {
    let mut seen = BTreeMap::new();
    for e in catalog::entries().into_iter().filter(|e| e.is_knot()) {
        let k = e.diagram.with_framings(vec![1]).unwrap().with_name(e.name);
        seen.entry((k.crossings().to_vec(), k.unknotted())).or_insert(k);
    }
    seen.into_values().collect()
}

fn union(pieces: &[LinkDiagram], name: &str) -> LinkDiagram {
    pieces.iter().fold(LinkDiagram::empty(), |acc, k| acc.disjoint_union(k)).with_name(name)
}

/// Seven-component split unions of catalog pieces.
fn seven_component_unions() -> Vec<LinkDiagram> {
    let d = |n: &str| catalog::diagram(n).unwrap();
    vec![
        catalog::seven_knot_union(),
        union(
            &[
                d("figure-eight-plus1"),
                d("trefoil-left-minus1"),
                d("trefoil-right-plus1"),
                d("figure-eight-minus1"),
                d("trefoil-left-plus1"),
                d("unknot-plus1"),
                d("trefoil-right-minus1"),
            ],
            "knots-b",
        ),
        union(
            &[
                d("borromean-plus1"),
                d("trefoil-left-plus1"),
                d("figure-eight-minus1"),
                d("trefoil-right-minus1"),
                d("unknot-plus1"),
            ],
            "borromean-and-knots",
        ),
    ]
}

fn criterion_1() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for (name, want) in [("trefoil-right-plus1", 39), ("trefoil-left-plus1", 63)] {
        let sp = catalog::entry(name).unwrap().surgery()?;
        let start = Instant::now();
        let got = invariants::lambda2(&sp)?;
        let secs = start.elapsed().as_secs_f64();
        parts.push(format!("{name} = {} in {secs:.2}s", format_rational(&got)));
        if got != int(want) {
            failures.push(format!("{name}: {} != {want}", format_rational(&got)));
        }
        if secs > 120.0 {
            failures.push(format!("{name}: took {secs:.1}s"));
        }
    }
    Ok(Outcome::from_failures(failures, parts.join(", ")))
}

fn criterion_2() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for k in plus_one_knots() {
        let psi = invariants::psi2(&k)?;
        let oracle = psi2_closed_form(&skein::jones(&k)?);
        let l2 = invariants::lambda2(&SurgeryPresentation::new(k.clone())?)?;
        parts.push(format!("{} {}/{}", k.name(), format_rational(&psi), format_rational(&l2)));
        if psi != oracle {
            failures.push(format!("{}: psi2 = {} but closed form gives {}", k.name(), psi, oracle));
        }
        if psi != l2 {
            failures.push(format!("{}: psi2 = {}, lambda2 = {}", k.name(), psi, l2));
        }
    }
    Ok(Outcome::from_failures(failures, format!("psi2/lambda2: {}", parts.join(", "))))
}

fn criterion_3() -> Result<Outcome> {
    let all = presentations();
    let mut failures = Vec::new();
    for (e, s) in &all {
        let l1 = invariants::lambda1(s)?;
        if l1 != invariants::casson(s)? * rat(6) {
            failures.push(format!("{}: lambda1 = {l1}", e.name));
        }
    }
    let small: Vec<_> = all.iter().filter(|(_, s)| s.num_components() <= 3).collect();
    let mut pairs = 0;
    for (a, sa) in &small {
        for (b, sb) in &small {
            pairs += 1;
            let u = invariants::lambda1(&sa.disjoint_union(sb))?;
            if u != invariants::lambda1(sa)? + invariants::lambda1(sb)? {
                failures.push(format!("{} + {}: not additive", a.name, b.name));
            }
        }
    }
    Ok(Outcome::from_failures(
        failures,
        format!("lambda1 = 6 casson on {} presentations, additive on {pairs} unions", all.len()),
    ))
}

fn criterion_4() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut count = 0;
    for e in algebraically_split() {
        let d = &e.diagram;
        let n = d.num_components();
        for mask in 1..1u64 << n {
            let sub = d.sublink_mask(mask);
            let phi1 = invariants::phi_i(&sub, 1, 12.max(sub.num_components() + 1))?;
            let six_a2 = skein::a2(&sub)? * rat(6);
            count += 1;
            if phi1 != six_a2 {
                failures.push(format!("{} mask {mask:b}: {phi1} vs {six_a2}", e.name));
            }
        }
    }
    Ok(Outcome::from_failures(failures, format!("phi1 = 6 a2 on {count} sublinks of catalog ASLs")))
}

/// Jones coefficients keyed by exponent in halves of `t`.
fn jones_poly(d: &LinkDiagram) -> Result<Poly> {
    Ok(as_poly(skein::jones(d)?.terms()))
}

fn shifted(p: &Poly, by: i64, scale: i128) -> Poly {
    p.iter().map(|(k, c)| (k + by, c * scale)).collect()
}

fn add(mut p: Poly, q: &Poly) -> Poly {
    for (k, c) in q {
        *p.entry(*k).or_default() += c;
    }
    p.retain(|_, c| *c != 0);
    p
}

fn criterion_5() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut crossings = 0;
    for e in catalog::entries() {
        let d = &e.diagram;
        for c in 0..d.num_crossings() {
            crossings += 1;
            let switched = d.switch_crossing(c);
            let (plus, minus) = if d.crossing_sign(c) > 0 { (d, &switched) } else { (&switched, d) };
            let lhs = add(shifted(&jones_poly(plus)?, 2, 1), &shifted(&jones_poly(minus)?, -2, -1));
            let v0 = jones_poly(&d.smooth_crossing(c))?;
            let rhs = add(shifted(&v0, 1, 1), &shifted(&v0, -1, -1));
            if lhs != rhs {
                failures.push(format!("{} crossing {c}", e.name));
            }
        }
    }
    if jones_poly(&LinkDiagram::unlink(1, 0))? != Poly::from([(0, 1)]) {
        failures.push("V(O) != 1".into());
    }
    for (name, d) in [("empty", LinkDiagram::empty()), ("unknot", LinkDiagram::unlink(1, 0))] {
        if invariants::x_series(&d, 12)? != TruncSeries::one(12) {
            failures.push(format!("X({name}) != 1"));
        }
    }
    Ok(Outcome::from_failures(
        failures,
        format!("skein relation at {crossings} crossings, V(O) = 1, X(empty) = X(O) = 1"),
    ))
}

fn criterion_6() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut count = 0;
    for e in catalog::entries() {
        let d = &e.diagram;
        if d.is_empty() || d.num_crossings() > 10 {
            continue;
        }
        for (label, x) in [("", d.clone()), (" mirror", d.mirror())] {
            count += 1;
            if as_poly(skein::kauffman_bracket(&x)?.terms()) != naive_bracket(&x) {
                failures.push(format!("{}{label}", e.name));
            }
        }
    }
    Ok(Outcome::from_failures(failures, format!("bracket equals the 2^n state sum on {count} diagrams")))
}

fn criterion_7() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut names = Vec::new();
    for e in algebraically_split().into_iter().filter(|e| e.diagram.num_components() >= 4) {
        let a2 = skein::a2(&e.diagram)?;
        names.push(e.name.to_string());
        if a2 != int(0) {
            failures.push(format!("{}: a2 = {a2}", e.name));
        }
    }
    for d in seven_component_unions() {
        let phi2 = invariants::phi_i(&d, 2, 12)?;
        names.push(format!("phi2 {}", d.name()));
        if phi2 != int(0) {
            failures.push(format!("{}: phi2 = {phi2}", d.name()));
        }
    }
    Ok(Outcome::from_failures(failures, format!("zero on {}", names.join(", "))))
}

fn criterion_8() -> Result<Outcome> {
    let all = presentations();
    let mut failures = Vec::new();
    let four: Vec<_> = all.iter().filter(|(_, s)| s.num_components() == 4).map(|(_, s)| s.clone()).collect();
    let r = fintype::order_check(&CASSON, &four, 3)?;
    failures.extend(r.entries.iter().filter(|e| !e.pass).map(|e| format!("casson on {}: {}", e.presentation, e.value)));
    let sevens: Vec<_> = seven_component_unions().into_iter().map(|d| SurgeryPresentation::new(d).unwrap()).collect();
    let r2 = fintype::order_check(&LAMBDA2, &sevens, 6)?;
    failures
        .extend(r2.entries.iter().filter(|e| !e.pass).map(|e| format!("lambda2 on {}: {}", e.presentation, e.value)));
    let three: Vec<_> = all.iter().filter(|(_, s)| s.num_components() == 3).map(|(_, s)| s.clone()).collect();
    let w = fintype::witnesses(&CASSON, &three, 2)?;
    if w.is_empty() {
        failures.push("no three-component witness for casson".into());
    }
    let witness: Vec<_> = w.iter().map(|e| format!("{} = {}", e.presentation, e.value)).collect();
    Ok(Outcome::from_failures(
        failures,
        format!(
            "casson sums vanish on {} four-component ASLs, lambda2 sums on {} seven-component unions, casson witness {} (evidence, not proof)",
            four.len(),
            sevens.len(),
            witness.join(", ")
        ),
    ))
}

fn divisible(x: &Rational, m: i64) -> bool {
    x.is_integer() && x.to_integer() % m == 0.into()
}

fn criterion_9() -> Result<Outcome> {
    let all = presentations();
    let mut failures = Vec::new();
    for (e, s) in &all {
        let l2 = invariants::lambda2(s)?;
        if !divisible(&l2, 3) {
            failures.push(format!("{}: lambda2 = {l2}", e.name));
        }
        let l1 = invariants::lambda1(s)?;
        if !divisible(&l1, 6) {
            failures.push(format!("{}: lambda1 = {l1}", e.name));
        }
    }
    Ok(Outcome::from_failures(failures, format!("lambda2 in 3Z and lambda1 in 6Z on {} presentations", all.len())))
}

fn criterion_10() -> Result<Outcome> {
    let mut failures = Vec::new();
    let k = catalog::trefoil_right(1);
    let m = k.mirror();
    let v3 = v_closed_form(&skein::jones(&k)?, 3);
    if v3 == int(0) {
        failures.push("v3(trefoil) = 0".into());
    }
    if a2_from_jones(&skein::jones(&k)?) != skein::a2(&k)? {
        failures.push("a2 disagrees with the Jones second derivative".into());
    }
    let (sk, sm) = (SurgeryPresentation::new(k)?, SurgeryPresentation::new(m)?);
    let (l2k, l2m) = (invariants::lambda2(&sk)?, invariants::lambda2(&sm)?);
    let (ck, cm) = (invariants::casson(&sk)?, invariants::casson(&sm)?);
    if l2k == l2m {
        failures.push(format!("lambda2 does not separate: {l2k}"));
    }
    if ck != cm {
        failures.push(format!("casson separates: {ck} vs {cm}"));
    }
    Ok(Outcome::from_failures(failures, format!("v3 = {v3}, lambda2 {l2k} vs {l2m}, casson {ck} vs {cm}")))
}

type Criterion = (u32, &'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "lambda2 of +1 surgery on the trefoils", criterion_1),
        (2, "psi2 equals lambda2 on +1-framed catalog knots", criterion_2),
        (3, "lambda1 = 6 casson and additivity", criterion_3),
        (4, "phi1 = 6 a2 on catalog ASLs", criterion_4),
        (5, "skein relation and normalizations", criterion_5),
        (6, "bracket against the naive state sum", criterion_6),
        (7, "vanishing of a2 and phi2", criterion_7),
        (8, "finite-type order evidence", criterion_8),
        (9, "integrality", criterion_9),
        (10, "chirality detection", criterion_10),
    ];
    let mut unexpected = 0;
    for (id, title, run) in criteria {
        let outcome = run().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
            failures: vec![format!("error: {e}")],
        });
        let known = KNOWN.iter().find(|(k, _)| *k == id).map(|(_, f)| *f);
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status}  {title}: {}", outcome.detail);
        for f in &outcome.failures {
            println!("             - {f}");
        }
        match (outcome.pass, known) {
            (true, None) => {}
            (false, Some(expected)) if outcome.failures == expected => {
                println!("             known discrepancy, documented in the README");
            }
            (true, Some(_)) => {
                println!("             a known discrepancy no longer occurs; update KNOWN");
                unexpected += 1;
            }
            _ => unexpected += 1,
        }
    }
    if unexpected == 0 {
        println!("acceptance: no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected failures");
        ExitCode::FAILURE
    }
}
