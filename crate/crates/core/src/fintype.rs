//! Finite-type machinery over surgery presentations of `S³`: the difference
//! operator, the alternating sublink sum `(S³, L) = Σ_{L'} (-1)^{#L'} S³_{L'}`
//! evaluated through an invariant, and order-bound harnesses.
//!
//! Order checks only falsify. A clean run is evidence that an invariant
//! has the claimed order, never a proof.

use num_traits::Zero;
use serde::Serialize;

use crate::diagram::{LinkDiagram, SurgeryPresentation};
use crate::error::{Error, Result};
use crate::invariants;
use crate::series::{format_rational, rat, Rational};

/// A named invariant of homology spheres, evaluated on surgery presentations.
#[derive(Clone, Copy)]
pub struct InvariantFunction {
    pub name: &'static str,
    pub eval: fn(&SurgeryPresentation) -> Result<Rational>,
}

impl InvariantFunction {
    pub fn eval(&self, sp: &SurgeryPresentation) -> Result<Rational> {
        (self.eval)(sp)
    }
}

impl std::fmt::Debug for InvariantFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InvariantFunction").field("name", &self.name).finish()
    }
}

fn constant_one(_: &SurgeryPresentation) -> Result<Rational> {
    Ok(rat(1))
}

pub const CASSON: InvariantFunction = InvariantFunction { name: "casson", eval: invariants::casson };
pub const LAMBDA1: InvariantFunction = InvariantFunction { name: "lambda1", eval: invariants::lambda1 };
pub const LAMBDA2: InvariantFunction = InvariantFunction { name: "lambda2", eval: invariants::lambda2 };
pub const CONSTANT_ONE: InvariantFunction = InvariantFunction { name: "constant-1", eval: constant_one };

pub fn registry() -> [InvariantFunction; 4] {
    [CASSON, LAMBDA1, LAMBDA2, CONSTANT_ONE]
}

pub fn lookup(name: &str) -> Result<InvariantFunction> {
    registry().into_iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownInvariant(name.to_string()))
}

/// `λ(S³_L) - λ(S³_{L ∪ k})` for an extra ±1-framed component `k`.
pub fn d_pm(lambda: &InvariantFunction, sp: &SurgeryPresentation, k: &LinkDiagram) -> Result<Rational> {
    if k.num_components() != 1 {
        return Err(Error::NotSurgeryPresentation(format!(
            "the added component must be a knot, got {} components",
            k.num_components()
        )));
    }
    let bigger = sp.with_component(k)?;
    Ok(lambda.eval(sp)? - lambda.eval(&bigger)?)
}

/// `Σ_{L' ⊂ L} (-1)^{#L'} λ(S³_{L'})` over all sublinks, the empty one included.
pub fn difference_sum(lambda: &InvariantFunction, sp: &SurgeryPresentation) -> Result<Rational> {
    let n = sp.num_components();
    let mut acc = Rational::zero();
    for mask in 0..1u64 << n {
        let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let v = lambda.eval(&sp.sublink(&keep))?;
        if keep.len().is_multiple_of(2) {
            acc += v;
        } else {
            acc -= v;
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderEntry {
    pub presentation: String,
    pub value: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct OrderReport {
    pub invariant: String,
    pub order: usize,
    pub entries: Vec<OrderEntry>,
}

impl OrderReport {
    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| !e.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: order <= {}: {} failures over {} presentations (evidence, not proof)",
            self.invariant,
            self.order,
            self.failures(),
            self.entries.len()
        )
    }

    /// The entries as a JSON list of `{presentation, value, pass}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("entries serialize")
    }
}

/// Runs `difference_sum` on every presentation; an entry passes when it is zero.
pub fn order_check(lambda: &InvariantFunction, suite: &[SurgeryPresentation], k: usize) -> Result<OrderReport> {
    let mut entries = Vec::with_capacity(suite.len());
    for sp in suite {
        if sp.num_components() < k + 1 {
            return Err(Error::TooFewComponents {
                name: sp.name().to_string(),
                need: k + 1,
                have: sp.num_components(),
            });
        }
        let v = difference_sum(lambda, sp)?;
        entries.push(OrderEntry { presentation: sp.name().to_string(), value: format_rational(&v), pass: v.is_zero() });
    }
    Ok(OrderReport { invariant: lambda.name.to_string(), order: k, entries })
}

/// Presentations in `suite` on which `lambda` fails to have order `<= k`.
pub fn witnesses(lambda: &InvariantFunction, suite: &[SurgeryPresentation], k: usize) -> Result<Vec<OrderEntry>> {
    Ok(order_check(lambda, suite, k)?.entries.into_iter().filter(|e| !e.pass).collect())
}
