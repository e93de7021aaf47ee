//! Garside normal forms and length functions for the braid groups B_N in
//! the Artin and Birman–Ko–Lee presentations, with a memory-length
//! (beam search) solver for random equations, a breadth-first geodesic
//! oracle, and a reproducible experiment harness comparing length
//! functions.

pub mod artin;
pub mod bkl;
pub mod error;
pub mod experiments;
pub mod lengths;
pub mod normal_form;
pub mod oracle;
pub mod perm;
pub mod simple;
pub mod solver;
pub mod structure;
pub mod syntax;
pub mod word;

pub use error::{Error, Result};
pub use lengths::LengthMetric;
pub use normal_form::{GreedyNF, RationalNF};
pub use simple::{Kind, Presentation, SimpleElement};
pub use structure::{Side, Structure, StructureDescriptor};
pub use word::{BraidWord, Letter};
