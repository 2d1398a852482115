//! Arrow diagram formulas for virtual knots in the annulus.
//!
//! Diagrams, the structural maps `S` and `I`, the relation families, the
//! boundary map `d`, exact kernels and the pipelines built on them.

pub mod based;
pub mod boundary;
pub mod diagram;
pub mod engine;
pub mod enumerate;
pub mod format;
pub mod lincomb;
pub mod linalg;
pub mod moves;
pub mod pairing;
pub mod relations;
pub mod templates;

pub use based::{BasedArrowDiagram, BasedDiagram, DegenerateDiagram};
pub use engine::{evaluate, EngineError, Formula, Provenance};
pub use diagram::{Arrow, ArrowDiagram, Decoration, Diagram, DiagramError, GaussDiagram, Sign};
pub use lincomb::{rat, ratio, LinComb, Rational};
pub use relations::{Family, MarkingWindow, WindowMode};
