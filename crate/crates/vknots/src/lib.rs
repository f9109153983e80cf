//! Virtual link diagrams as Gauss diagrams: parsing and printing, cut
//! systems and their moves, order-two double covers built by splicing at cut
//! points, and polynomial invariants, together with seeded randomized
//! self-check suites over all of it.

pub mod canon;
pub mod codes;
pub mod cover;
pub mod cutfind;
pub mod cutpath;
pub mod cuts;
pub mod diagram;
pub mod gen;
pub mod invariants;
pub mod laurent;
pub mod moves;
pub mod pd;
pub mod pdgen;
pub mod verify;

pub use diagram::{Chord, ChordId, End, EndpointRef, GaussDiagram, Role, Sign};
