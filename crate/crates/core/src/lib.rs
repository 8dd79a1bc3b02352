//! Model checking and model surgery for intuitionistic propositional and
//! temporal logics, here-and-there equilibrium models and safe beliefs.

pub mod bisim;
pub mod error;
pub mod constructions;
pub mod equilibrium;
pub mod formula;
pub mod gen;
pub mod gallery;
pub mod kripke;
pub mod safebeliefs;
pub mod semantics;
pub mod sets;
pub mod traces;

pub use error::{Error, Result};
pub use formula::{parse, Alphabet, Atom, Formula, TemporalAtom};
pub use kripke::{FiniteModel, Frame, FrameReport, LogicClass, OrbitInfo, World};
pub use semantics::{bounded_consequence, extension, frame_valid, satisfies, validates_bd, Bounds, ModelBounds, Outcome, Verdict, Witness};
pub use sets::{AtomSet, WorldSet};
pub use traces::{tht_extension, tht_satisfies, Layer, LassoShapeSet, ThtLasso};
