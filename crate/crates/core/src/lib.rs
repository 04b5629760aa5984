//! Exact computations around the dual Hesse arrangement: its three quadratic
//! Cremona involutions, the bifurcation diagram of rational curves they
//! generate from a line, the associated elliptic pencils, and symbolic
//! reconstruction of curve equations by strict transforms.
//!
//! All arithmetic is exact — Eisenstein integers, rationals over Q(tau), and
//! homogeneous polynomials with Q(tau) coefficients. No floating point.

pub mod arrangement;
pub mod cremona;
pub mod diagram;
pub mod eisenstein;
pub mod pencil;
pub mod polynomials;
pub mod qtau;
pub mod verify;

pub use arrangement::{dual_hesse, ArrangementData, GroupLabel, Line, ProjPoint};
pub use cremona::{CoarseCurveData, CremonaMap, CremonaTag, FineCurveData};
pub use diagram::{Diagram, DiagramEntry};
pub use eisenstein::{DivisionError, EisensteinInt};
pub use pencil::PencilDescriptor;
pub use polynomials::HomogPoly;
pub use qtau::QTau;
