//! Finite-type invariants of integral homology spheres presented by surgery
//! on ±1-framed algebraically split links: the Casson invariant, Ohtsuki's
//! `lambda_1` and `lambda_2`, and the induced knot invariant `psi_2`.

pub mod catalog;
pub mod compute;
pub mod diagram;
pub mod error;
pub mod fintype;
pub mod invariants;
pub mod series;
pub mod skein;
pub mod verify;

pub use diagram::{LinkDiagram, LinkFile, Parallel, SurgeryPresentation};
pub use error::{Error, Result};
pub use series::{HalfLaurent, Rational, TruncSeries, ZLaurent};
