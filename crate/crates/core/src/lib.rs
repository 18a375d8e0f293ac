//! Exact computational models of framed little-disk operads, compactified
//! embedding spaces of arcs on a quotient circle, the m-cyclic category and
//! the comparison between a compressed bar construction and the relative
//! cyclic bar construction.
//!
//! Every number is an exact rational and every angle is measured in turns.

pub mod bar;
pub mod circle;
pub mod cyclic;
pub mod error;
pub mod exact;
pub mod groups;
pub mod operads;
pub mod report;
pub mod suite;

pub use bar::{CyclicClass, FinCmMonoid, LabeledOrbit, PointedCmSet, TElem};
pub use circle::{ArcPair, ArcSystem, Variant};
pub use cyclic::{CyclicPoint, CyclicWord, Gen};
pub use error::{
    BarError, CyclicError, EmbedError, ExactError, GroupError, OperadError, SuiteError,
};
pub use exact::{arcs_overlap, sample_rat, sample_rat_with, ArcInterval, Rat, Turn};
pub use groups::{
    block_cycle_perm, orbit_canon, upsilon, wreath_compose, CyclicElem, CyclicGroup, FiniteGroup,
    GroupElem, Perm, PermGroup, WreathElem, WreathGroup,
};
pub use operads::DiskPair;
pub use report::Violation;
pub use suite::{run_suite, Report, RunConfig, SUITES};
