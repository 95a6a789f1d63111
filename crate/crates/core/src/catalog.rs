//! Built-in link diagrams and the invariant values expected of them.
//!
//! Knot PD codes follow the KnotInfo tables; the links are closures of their
//! standard braid words. Their correctness is established by the invariant
//! suites rather than asserted here.

use std::fmt;

use crate::diagram::{LinkDiagram, SurgeryPresentation};
use crate::error::{Error, Result};
use crate::series::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// A value reported in the literature this crate reproduces.
    Published,
    /// Follows immediately from a definition or normalization.
    Trivial,
    /// Worked out independently (by hand or by a second computation route).
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Published => "published",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Expected {
    pub invariant: &'static str,
    pub value: Rational,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub diagram: LinkDiagram,
    pub note: &'static str,
    pub expected: Vec<Expected>,
}

impl CatalogEntry {
    pub fn surgery(&self) -> Result<SurgeryPresentation> {
        SurgeryPresentation::new(self.diagram.clone())
    }

    pub fn is_surgery_presentation(&self) -> bool {
        self.surgery().is_ok()
    }

    pub fn is_knot(&self) -> bool {
        self.diagram.num_components() == 1
    }
}

const TREFOIL_PD: [[u32; 4]; 3] = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];
const FIGURE_EIGHT_PD: [[u32; 4]; 4] = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];
const BORROMEAN_BRAID: [i32; 6] = [1, -2, 1, -2, 1, -2];
const WHITEHEAD_BRAID: [i32; 5] = [1, -2, 1, -2, -2];

/// Closure of a braid word on `strands` strands; generator `±i` crosses
/// strands `i` and `i + 1` with sign `±`.
pub fn closed_braid(name: &str, strands: usize, word: &[i32], framing: i64) -> LinkDiagram {
    let mut column: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::new();
    for &g in word {
        let j = g.unsigned_abs() as usize - 1;
        let (a_in, b_in) = (column[j], column[j + 1]);
        let (a_out, b_out) = (next, next + 1);
        next += 2;
        let positive = g > 0;
        let x = if positive { [b_in, a_out, b_out, a_in] } else { [a_in, b_in, a_out, b_out] };
        crossings.push((x, positive));
        column[j] = b_out;
        column[j + 1] = a_out;
    }
    // Close each strand: its top segment is its bottom segment.
    let close = |a: u32| match column.iter().position(|&c| c == a) {
        Some(x) if a > strands as u32 => x as u32 + 1,
        _ => a,
    };
    let tuples: Vec<[u32; 4]> = crossings.iter().map(|(x, _)| x.map(close)).collect();
    let hints: Vec<bool> = crossings.iter().map(|x| x.1).collect();
    LinkDiagram::from_tuples_with_hints(name, tuples, &hints, framing).expect("braid closures are valid diagrams")
}

fn knot(name: &str, pd: &[[u32; 4]], framing: i64) -> LinkDiagram {
    LinkDiagram::new(name, pd.to_vec(), vec![framing], 0).expect("catalog knot is valid")
}

fn framed(d: LinkDiagram, framings: Vec<i64>, name: &str) -> LinkDiagram {
    d.with_framings(framings).expect("catalog framings match components").with_name(name)
}

fn e(invariant: &'static str, value: i64, provenance: Provenance) -> Expected {
    Expected { invariant, value: rat(value), provenance }
}

pub fn trefoil_right(framing: i64) -> LinkDiagram {
    knot("trefoil-right", &TREFOIL_PD, framing)
}

pub fn trefoil_left(framing: i64) -> LinkDiagram {
    trefoil_right(framing).mirror().with_name("trefoil-left")
}

pub fn figure_eight(framing: i64) -> LinkDiagram {
    knot("figure-eight", &FIGURE_EIGHT_PD, framing)
}

pub fn borromean(framing: i64) -> LinkDiagram {
    closed_braid("borromean", 3, &BORROMEAN_BRAID, framing)
}

pub fn whitehead(framing: i64) -> LinkDiagram {
    closed_braid("whitehead", 3, &WHITEHEAD_BRAID, framing)
}

/// Seven ±1-framed knots side by side.
pub fn seven_knot_union() -> LinkDiagram {
    let pieces = [
        trefoil_right(1),
        trefoil_left(1),
        figure_eight(1),
        trefoil_right(-1),
        figure_eight(-1),
        trefoil_left(-1),
        trefoil_right(1),
    ];
    pieces.iter().fold(LinkDiagram::empty(), |acc, k| acc.disjoint_union(k)).with_name("seven-knots")
}

/// Every built-in entry, in listing order.
pub fn entries() -> Vec<CatalogEntry> {
    use Provenance::*;
    let mut out = vec![
        CatalogEntry {
            name: "empty",
            diagram: LinkDiagram::empty(),
            note: "empty link; surgery gives the 3-sphere",
            expected: vec![e("casson", 0, Trivial), e("lambda1", 0, Trivial), e("lambda2", 0, Trivial)],
        },
        CatalogEntry {
            name: "unknot",
            diagram: LinkDiagram::unlink(1, 0),
            note: "crossing-free circle",
            expected: vec![e("a2", 0, Trivial), e("psi2", 0, Trivial), e("v2", 0, Trivial)],
        },
        CatalogEntry {
            name: "unknot-plus1",
            diagram: LinkDiagram::unlink(1, 1).with_name("unknot-plus1"),
            note: "+1 surgery on the unknot is the 3-sphere",
            expected: vec![e("casson", 0, Trivial), e("lambda2", 0, Trivial)],
        },
        CatalogEntry {
            name: "trefoil-right",
            diagram: trefoil_right(0),
            note: "right-handed trefoil 3_1 (all crossings positive), KnotInfo PD",
            expected: vec![e("a2", 1, Derived), e("phi1", 6, Derived), e("psi2", 39, Published)],
        },
        CatalogEntry {
            name: "trefoil-left",
            diagram: trefoil_left(0),
            note: "left-handed trefoil, mirror of trefoil-right",
            expected: vec![e("a2", 1, Derived), e("psi2", 63, Published)],
        },
        CatalogEntry {
            name: "figure-eight",
            diagram: figure_eight(0),
            note: "figure-eight knot 4_1, KnotInfo PD",
            expected: vec![e("a2", -1, Derived), e("v3", 0, Derived)],
        },
        CatalogEntry {
            name: "trefoil-right-plus1",
            diagram: framed(trefoil_right(0), vec![1], "trefoil-right-plus1"),
            note: "Poincare homology sphere",
            expected: vec![e("casson", 1, Derived), e("lambda1", 6, Derived), e("lambda2", 39, Published)],
        },
        CatalogEntry {
            name: "trefoil-right-minus1",
            diagram: framed(trefoil_right(0), vec![-1], "trefoil-right-minus1"),
            note: "-1 surgery on the right-handed trefoil",
            expected: vec![e("casson", -1, Derived), e("lambda1", -6, Derived)],
        },
        CatalogEntry {
            name: "trefoil-left-plus1",
            diagram: framed(trefoil_left(0), vec![1], "trefoil-left-plus1"),
            note: "Brieskorn sphere Sigma(2,3,7)",
            expected: vec![e("casson", 1, Derived), e("lambda2", 63, Published)],
        },
        CatalogEntry {
            name: "trefoil-left-minus1",
            diagram: framed(trefoil_left(0), vec![-1], "trefoil-left-minus1"),
            note: "-1 surgery on the left-handed trefoil",
            expected: vec![e("casson", -1, Derived)],
        },
        CatalogEntry {
            name: "figure-eight-plus1",
            diagram: framed(figure_eight(0), vec![1], "figure-eight-plus1"),
            note: "+1 surgery on the figure-eight knot",
            expected: vec![e("casson", -1, Derived)],
        },
        CatalogEntry {
            name: "figure-eight-minus1",
            diagram: framed(figure_eight(0), vec![-1], "figure-eight-minus1"),
            note: "-1 surgery on the figure-eight knot",
            expected: vec![e("casson", 1, Derived)],
        },
        CatalogEntry {
            name: "hopf-positive",
            diagram: LinkDiagram::new("hopf-positive", vec![[1, 4, 2, 3], [4, 1, 3, 2]], vec![0, 0], 0)
                .expect("hopf link is valid"),
            note: "positive Hopf link (linking number +1, not algebraically split)",
            expected: vec![],
        },
        CatalogEntry {
            name: "whitehead",
            diagram: whitehead(0),
            note: "Whitehead link 5^2_1, closure of s1 s2^-1 s1 s2^-2",
            expected: vec![e("a2", -1, Derived)],
        },
        CatalogEntry {
            name: "whitehead-plus1",
            diagram: whitehead(1).with_name("whitehead-plus1"),
            note: "Whitehead link with both framings +1",
            expected: vec![e("casson", -1, Derived), e("lambda2", 69, Derived)],
        },
        CatalogEntry {
            name: "borromean",
            diagram: borromean(0),
            note: "Borromean rings 6^3_2, closure of (s1 s2^-1)^3",
            expected: vec![e("a2", 1, Derived)],
        },
        CatalogEntry {
            name: "borromean-plus1",
            diagram: borromean(1).with_name("borromean-plus1"),
            note: "Borromean rings with all framings +1",
            expected: vec![e("casson", 1, Derived), e("lambda1", 6, Derived)],
        },
        CatalogEntry {
            name: "borromean-mixed",
            diagram: framed(borromean(0), vec![1, -1, 1], "borromean-mixed"),
            note: "Borromean rings with framings (+1, -1, +1)",
            expected: vec![e("casson", -1, Derived)],
        },
    ];

    let wp = whitehead(1).parallel(2).expect("parallel of a catalog link");
    out.push(CatalogEntry {
        name: "whitehead-parallel",
        diagram: wp.diagram.with_name("whitehead-parallel"),
        note: "0-framed 2-parallel of the +1-framed Whitehead link (4-component ASL)",
        expected: vec![e("a2", 0, Derived), e("casson", -4, Derived)],
    });
    out.push(CatalogEntry {
        name: "borromean-unknot",
        diagram: borromean(1).disjoint_union(&LinkDiagram::unlink(1, -1)).with_name("borromean-unknot"),
        note: "+1-framed Borromean rings beside a -1-framed unknot (4-component ASL)",
        expected: vec![e("a2", 0, Derived), e("casson", 1, Derived)],
    });
    out.push(CatalogEntry {
        name: "borromean-trefoil",
        diagram: borromean(1).disjoint_union(&trefoil_right(-1)).with_name("borromean-trefoil"),
        note: "+1-framed Borromean rings beside a -1-framed right trefoil (4-component ASL)",
        expected: vec![e("a2", 0, Derived), e("casson", 0, Derived)],
    });
    out.push(CatalogEntry {
        name: "seven-knots",
        diagram: seven_knot_union(),
        note: "split union of seven ±1-framed trefoils and figure-eight knots",
        expected: vec![e("a2", 0, Derived), e("phi2", 0, Published)],
    });
    out
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

pub fn diagram(name: &str) -> Result<LinkDiagram> {
    entry(name).map(|e| e.diagram).ok_or_else(|| Error::MalformedDiagram(format!("no catalog entry named {name:?}")))
}
