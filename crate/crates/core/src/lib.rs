//! Finite closure systems and their implicational bases.
//!
//! A closure system is a universe of at most 64 labelled elements together
//! with an intersection-closed family of *closed* sets. This crate builds
//! the standard bases of such a system (the canonical direct unit basis,
//! the D-basis and its refinements, the E-basis and the canonical basis of
//! pseudo-closed sets), decides whether a basis computes closures in a
//! single ordered sweep, and compares closure algorithms.
//!
//! ```
//! use closure_basis::{io, bases, closure::ordered_iteration};
//!
//! let system = io::parse_family("{}\n1\n2\n3\n4\n1 2\n1 3\n2 3 4\n4 5\n1 2 3 4 5\n").unwrap();
//! let d = bases::build_d_basis(&system).unwrap();
//! assert_eq!(d.len(), 10);
//!
//! let x = system.universe().parse_set("1 5").unwrap();
//! let run = ordered_iteration(d.implications(), x);
//! assert_eq!(run.closure, system.closure(x));
//! assert_eq!(run.checks, d.len());
//! ```

pub mod bases;
pub mod bench;
pub mod closure;
pub mod error;
pub mod horn;
pub mod implication;
pub mod io;
pub mod reduction;
pub mod set;
pub mod structure;
pub mod system;

pub use error::{Error, Result};
pub use implication::{basis_size, Basis, BasisSize, Form, Implication};
pub use set::{ElementSet, Universe};
pub use system::{ClosureSystem, Limits};
