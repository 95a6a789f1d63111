//! Verification suites over the built-in catalog.
//!
//! Each check records the presentation it ran on, the value it saw and
//! whether it passed. Order checks are falsification attempts, so a passing
//! order suite is evidence, not proof.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry};
use crate::compute::{compute, Invariant};
use crate::diagram::{LinkDiagram, SurgeryPresentation};
use crate::error::{Error, Result};
use crate::fintype::{self, CASSON, CONSTANT_ONE, LAMBDA1, LAMBDA2};
use crate::invariants;
use crate::series::{format_rational, rat, HalfLaurent, Rational, TruncSeries, DEFAULT_ORDER};
use crate::skein;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub presentation: String,
    pub value: String,
    pub pass: bool,
}

impl Check {
    fn new(check: impl Into<String>, presentation: impl Into<String>, value: impl Into<String>, pass: bool) -> Self {
        Check { check: check.into(), presentation: presentation.into(), value: value.into(), pass }
    }

    fn equal(check: &str, presentation: &str, got: &Rational, want: &Rational) -> Self {
        let value = if got == want {
            format_rational(got)
        } else {
            format!("{} (expected {})", format_rational(got), format_rational(want))
        };
        Check::new(check, presentation, value, got == want)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    PaperValues,
    Skein,
    Order,
    Integrality,
    CrossFormula,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::PaperValues, Suite::Skein, Suite::Order, Suite::Integrality, Suite::CrossFormula, Suite::All];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::PaperValues => "paper-values",
            Suite::Skein => "skein",
            Suite::Order => "order",
            Suite::Integrality => "integrality",
            Suite::CrossFormula => "cross-formula",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s).ok_or_else(|| Error::UnknownInvariant(format!("suite {s}")))
    }
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::PaperValues => published_values(),
        Suite::Skein => skein_relation(),
        Suite::Order => order(),
        Suite::Integrality => integrality(),
        Suite::CrossFormula => cross_formula(),
        Suite::All => {
            let mut out = Vec::new();
            for s in &Suite::ALL[..5] {
                out.extend(run(*s)?);
            }
            Ok(out)
        }
    }
}

fn presentations() -> Vec<(CatalogEntry, SurgeryPresentation)> {
    catalog::entries().into_iter().filter_map(|e| e.surgery().ok().map(|sp| (e, sp))).collect()
}

fn sp(name: &str) -> Result<SurgeryPresentation> {
    SurgeryPresentation::new(catalog::diagram(name)?)
}

/// Published surgery values, normalizations, and every expected catalog value.
pub fn published_values() -> Result<Vec<Check>> {
    let n = DEFAULT_ORDER;
    let mut out = vec![
        Check::equal("lambda2", "trefoil-right-plus1", &invariants::lambda2(&sp("trefoil-right-plus1")?)?, &rat(39)),
        Check::equal("lambda2", "trefoil-left-plus1", &invariants::lambda2(&sp("trefoil-left-plus1")?)?, &rat(63)),
        Check::equal("psi2", "trefoil-right", &invariants::psi2(&catalog::trefoil_right(0))?, &rat(39)),
        Check::equal("psi2", "trefoil-left", &invariants::psi2(&catalog::trefoil_left(0))?, &rat(63)),
        Check::equal("psi2", "unknot", &invariants::psi2(&LinkDiagram::unlink(1, 0))?, &rat(0)),
        Check::equal("lambda2", "empty", &invariants::lambda2(&SurgeryPresentation::sphere())?, &rat(0)),
        Check::equal("casson", "empty", &invariants::casson(&SurgeryPresentation::sphere())?, &rat(0)),
    ];
    let v_unknot = skein::jones(&LinkDiagram::unlink(1, 0))?;
    out.push(Check::new("jones = 1", "unknot", v_unknot.to_string(), v_unknot == HalfLaurent::one()));
    for (label, d) in [("empty", LinkDiagram::empty()), ("unknot", LinkDiagram::unlink(1, 0))] {
        let x = invariants::x_series(&d, n)?;
        out.push(Check::new("X = 1", label, x.to_string(), x == TruncSeries::one(n)));
    }
    for e in catalog::entries() {
        for exp in &e.expected {
            let inv: Invariant = exp.invariant.parse()?;
            let got = compute(inv, &e.diagram, None)?;
            let got = got.scalar().expect("expected values are scalars");
            out.push(Check::equal(&format!("{} ({})", exp.invariant, exp.provenance), e.name, got, &exp.value));
        }
    }
    Ok(out)
}

/// `t V(L+) - t^{-1} V(L-) = (t^{1/2} - t^{-1/2}) V(L0)` at every crossing of
/// every catalog diagram.
pub fn skein_relation() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut d1 = HalfLaurent::zero();
    d1.add_term(1, rat(1));
    d1.add_term(-1, rat(-1));
    for e in catalog::entries() {
        let d = &e.diagram;
        let mut failed = Vec::new();
        for c in 0..d.num_crossings() {
            let switched = d.switch_crossing(c);
            let (plus, minus) = if d.crossing_sign(c) > 0 { (d, &switched) } else { (&switched, d) };
            let lhs = &skein::jones(plus)?.shift(2) - &skein::jones(minus)?.shift(-2);
            let rhs = &d1 * &skein::jones(&d.smooth_crossing(c))?;
            if lhs != rhs {
                failed.push(c);
            }
        }
        let value = if failed.is_empty() {
            format!("{} crossings", d.num_crossings())
        } else {
            format!("fails at crossings {failed:?}")
        };
        out.push(Check::new("jones skein relation", e.name, value, failed.is_empty()));
    }
    Ok(out)
}

fn report_checks(r: &fintype::OrderReport, label: &str) -> Vec<Check> {
    r.entries.iter().map(|e| Check::new(label, e.presentation.clone(), e.value.clone(), e.pass)).collect()
}

/// Finite-type order evidence on catalog presentations.
pub fn order() -> Result<Vec<Check>> {
    let all = presentations();
    let at_least = |k: usize| -> Vec<SurgeryPresentation> {
        all.iter().filter(|(_, s)| s.num_components() >= k).map(|(_, s)| s.clone()).collect()
    };
    let mut out = Vec::new();
    out.extend(report_checks(&fintype::order_check(&CASSON, &at_least(4), 3)?, "casson order <= 3"));
    out.extend(report_checks(&fintype::order_check(&LAMBDA1, &at_least(4), 3)?, "lambda1 order <= 3"));
    out.extend(report_checks(&fintype::order_check(&LAMBDA2, &at_least(7), 6)?, "lambda2 order <= 6"));
    out.extend(report_checks(&fintype::order_check(&CONSTANT_ONE, &at_least(1), 0)?, "constant order 0"));

    let three: Vec<_> = all.iter().filter(|(_, s)| s.num_components() == 3).map(|(_, s)| s.clone()).collect();
    let w = fintype::witnesses(&CASSON, &three, 2)?;
    let names: Vec<_> = w.iter().map(|e| format!("{}={}", e.presentation, e.value)).collect();
    out.push(Check::new(
        "casson order exactly 3",
        format!("{} three-component presentations", three.len()),
        if names.is_empty() { "no witness".to_string() } else { names.join(", ") },
        !w.is_empty(),
    ));
    Ok(out)
}

fn divisible(x: &Rational, m: i64) -> bool {
    x.is_integer() && (x.to_integer() % m).is_zero()
}

/// `λ_2 ∈ 3ℤ` and `λ_1 ∈ 6ℤ` on every catalog presentation.
pub fn integrality() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (e, s) in presentations() {
        let l2 = invariants::lambda2(&s)?;
        out.push(Check::new("lambda2 in 3Z", e.name, format_rational(&l2), divisible(&l2, 3)));
        let l1 = invariants::lambda1(&s)?;
        out.push(Check::new("lambda1 in 6Z", e.name, format_rational(&l1), divisible(&l1, 6)));
    }
    Ok(out)
}

/// Agreement between independently computed routes.
pub fn cross_formula() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for e in catalog::entries().into_iter().filter(|e| e.is_knot()) {
        let k = e.diagram.with_framings(vec![1])?;
        let l2 = invariants::lambda2(&SurgeryPresentation::new(k.clone())?)?;
        out.push(Check::equal("psi2 = lambda2(+1 surgery)", e.name, &invariants::psi2(&k)?, &l2));
    }
    for e in catalog::entries() {
        if e.diagram.is_empty() || !e.diagram.is_algebraically_split()? {
            continue;
        }
        for c in murakami(&e.diagram)? {
            out.push(Check::new("phi1 = 6 a2", e.name, c.value, c.pass));
        }
    }
    let all = presentations();
    for (e, s) in &all {
        let l1 = invariants::lambda1(s)?;
        let c = invariants::casson(s)?;
        out.push(Check::equal("lambda1 = 6 casson", e.name, &l1, &(c * rat(6))));
    }
    let small: Vec<_> = all.iter().filter(|(_, s)| (1..=3).contains(&s.num_components())).collect();
    for (a, sa) in &small {
        for (b, sb) in &small {
            if a.name > b.name {
                continue;
            }
            let sum = invariants::lambda1(sa)? + invariants::lambda1(sb)?;
            let u = invariants::lambda1(&sa.disjoint_union(sb))?;
            out.push(Check::equal("lambda1 additive", &format!("{} + {}", a.name, b.name), &u, &sum));
        }
    }
    Ok(out)
}

/// One line per nonempty sublink `L'` of `d`: `φ_1(L')` against `6 a_2(L')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MurakamiLine {
    pub sublink: Vec<usize>,
    pub phi1: String,
    pub six_a2: String,
    pub value: String,
    pub pass: bool,
}

/// `φ_1 = 6 a_2` on every nonempty sublink of an algebraically split `d`.
pub fn murakami(d: &LinkDiagram) -> Result<Vec<MurakamiLine>> {
    if !d.is_algebraically_split()? {
        return Err(Error::NotSurgeryPresentation("the identity needs an algebraically split link".into()));
    }
    let n = d.num_components();
    let order = DEFAULT_ORDER.max(n + 1);
    let phi = invariants::big_phi_table(d, order)?;
    let mut out = Vec::new();
    for mask in 1..1u64 << n {
        let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let k = keep.len();
        let phi1 = rat(-2).pow(k as i32) / factorial(k + 1) * phi[mask as usize].derivative_at_one(k + 1)?;
        let six_a2 = skein::a2(&d.sublink(&keep))? * rat(6);
        let value = format!("{keep:?}: {} vs {}", format_rational(&phi1), format_rational(&six_a2));
        out.push(MurakamiLine {
            sublink: keep,
            pass: phi1 == six_a2,
            phi1: format_rational(&phi1),
            six_a2: format_rational(&six_a2),
            value,
        });
    }
    Ok(out)
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(rat(1), |acc, k| acc * rat(k))
}

/// The checks that did not pass.
pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| !c.pass).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn published_values_pass() {
        let checks = published_values().unwrap();
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn murakami_on_whitehead() {
        let lines = murakami(&catalog::diagram("whitehead").unwrap()).unwrap();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.pass));
        assert!(murakami(&catalog::diagram("hopf-positive").unwrap()).is_err());
    }
}
