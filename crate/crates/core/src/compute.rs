//! Evaluation of any supported invariant by name, with truncation handling.

use std::fmt;
use std::str::FromStr;

use crate::diagram::{LinkDiagram, SurgeryPresentation};
use crate::error::{Error, Result};
use crate::invariants::{self, InvariantReport};
use crate::series::{Rational, DEFAULT_ORDER};
use crate::skein;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Casson,
    Lambda1,
    Lambda2,
    Psi2,
    A2,
    Jones,
    Conway,
    Phi1,
    Phi2,
    V2,
    V3,
    V4,
}

impl Invariant {
    pub const ALL: [Invariant; 12] = [
        Invariant::Casson,
        Invariant::Lambda1,
        Invariant::Lambda2,
        Invariant::Psi2,
        Invariant::A2,
        Invariant::Jones,
        Invariant::Conway,
        Invariant::Phi1,
        Invariant::Phi2,
        Invariant::V2,
        Invariant::V3,
        Invariant::V4,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Invariant::Casson => "casson",
            Invariant::Lambda1 => "lambda1",
            Invariant::Lambda2 => "lambda2",
            Invariant::Psi2 => "psi2",
            Invariant::A2 => "a2",
            Invariant::Jones => "jones",
            Invariant::Conway => "conway",
            Invariant::Phi1 => "phi1",
            Invariant::Phi2 => "phi2",
            Invariant::V2 => "v2",
            Invariant::V3 => "v3",
            Invariant::V4 => "v4",
        }
    }

    /// Whether the value depends on a truncation order.
    pub fn uses_order(&self) -> bool {
        !matches!(self, Invariant::Casson | Invariant::Lambda1 | Invariant::A2 | Invariant::Jones | Invariant::Conway)
    }

    /// The order used when none is requested.
    pub fn default_order(&self, d: &LinkDiagram) -> usize {
        let n = d.num_components();
        match self {
            Invariant::Lambda2 => invariants::lambda2_order(n),
            Invariant::Phi1 => DEFAULT_ORDER.max(n + 1),
            Invariant::Phi2 => DEFAULT_ORDER.max(n + 2),
            _ => DEFAULT_ORDER,
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Invariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Invariant::ALL.into_iter().find(|i| i.as_str() == s).ok_or_else(|| Error::UnknownInvariant(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub enum Computed {
    Scalar(InvariantReport),
    Polynomial { name: String, presentation: String, text: String },
}

impl Computed {
    pub fn name(&self) -> &str {
        match self {
            Computed::Scalar(r) => &r.name,
            Computed::Polynomial { name, .. } => name,
        }
    }

    pub fn presentation(&self) -> &str {
        match self {
            Computed::Scalar(r) => &r.presentation,
            Computed::Polynomial { presentation, .. } => presentation,
        }
    }

    /// Exact rationals as `p/q`, polynomials in ascending exponent order.
    pub fn value_text(&self) -> String {
        match self {
            Computed::Scalar(r) => r.value_string(),
            Computed::Polynomial { text, .. } => text.clone(),
        }
    }

    pub fn scalar(&self) -> Option<&Rational> {
        match self {
            Computed::Scalar(r) => Some(&r.value),
            Computed::Polynomial { .. } => None,
        }
    }
}

/// Evaluates `inv` on `d`. `order` overrides the default truncation order and
/// is rejected with the required order when too small.
pub fn compute(inv: Invariant, d: &LinkDiagram, order: Option<usize>) -> Result<Computed> {
    let name = inv.as_str().to_string();
    let presentation = d.name().to_string();
    let n = order.unwrap_or_else(|| inv.default_order(d));
    let value = match inv {
        Invariant::Jones => {
            let text = if d.is_empty() { "(t^(1/2) + t^(-1/2))^-1".to_string() } else { skein::jones(d)?.to_string() };
            return Ok(Computed::Polynomial { name, presentation, text });
        }
        Invariant::Conway => {
            let text = skein::conway(d)?.to_string();
            return Ok(Computed::Polynomial { name, presentation, text });
        }
        Invariant::Casson => invariants::casson(&SurgeryPresentation::new(d.clone())?)?,
        Invariant::Lambda1 => invariants::lambda1(&SurgeryPresentation::new(d.clone())?)?,
        Invariant::Lambda2 => invariants::lambda2_with_order(&SurgeryPresentation::new(d.clone())?, n)?,
        Invariant::Psi2 => invariants::psi2_with_order(d, n)?,
        Invariant::A2 => skein::a2(d)?,
        Invariant::Phi1 => invariants::phi_i(d, 1, n)?,
        Invariant::Phi2 => invariants::phi_i(d, 2, n)?,
        Invariant::V2 => invariants::v_i(d, 2, n)?,
        Invariant::V3 => invariants::v_i(d, 3, n)?,
        Invariant::V4 => invariants::v_i(d, 4, n)?,
    };
    Ok(Computed::Scalar(InvariantReport { name, value, presentation, order: if inv.uses_order() { n } else { 0 } }))
}
