use std::fmt;

use thiserror::Error;

/// A single structural problem found in a link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    ArcLabel,
    ArcMultiplicity,
    Orientation,
    ComponentCount,
    Framings,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::ArcLabel => "arc label",
            ViolationKind::ArcMultiplicity => "arc multiplicity",
            ViolationKind::Orientation => "orientation",
            ViolationKind::ComponentCount => "component count",
            ViolationKind::Framings => "framings",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.detail)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error("cannot invert a series with zero constant term")]
    SingularInversion,

    #[error("truncation order {have} is insufficient, at least {need} is required")]
    InsufficientTruncation { need: usize, have: usize },

    #[error("invalid link diagram: {}", format_violations(.0))]
    InvalidDiagram(Vec<Violation>),

    #[error("malformed link diagram: {0}")]
    MalformedDiagram(String),

    #[error("not a surgery presentation: {0}")]
    NotSurgeryPresentation(String),

    #[error("the empty diagram has no Kauffman bracket")]
    EmptyDiagram,

    #[error("skein resolution tree exceeded {0} nodes")]
    ResourceLimit(usize),

    #[error("bracket coefficient overflowed 128 bits")]
    CoefficientOverflow,

    #[error("presentation {name} has {have} components, at least {need} are required")]
    TooFewComponents { name: String, need: usize, have: usize },

    #[error("unknown invariant {0}")]
    UnknownInvariant(String),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
