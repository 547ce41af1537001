//! Eigenvalue multiplicities of the Laplacian on rectangles and flat tori,
//! computed exactly through lattice-point and quadratic-form representation
//! counts.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactnum`]: exact arithmetic in `ℚ`, `ℚ(√d)` and `ℚ(√d₁, √d₂)`;
//! - [`qform`]: positive-definite binary quadratic forms, reduction,
//!   composition, automorphisms and class groups;
//! - [`repcount`]: representation counts `R`, `r⁺`, `r` and first-quadrant
//!   lattice counts, plus exact scans for irrational forms;
//! - [`witness`]: verified constructions of primes and integers with
//!   prescribed representation counts;
//! - [`spectra`]: multiplicity-set classifiers and calculators for
//!   rectangles and tori;
//! - [`report`]: serializable records used by the command-line tool.

pub mod error;
pub mod exactnum;
pub mod primes;
pub mod qform;
pub mod repcount;
pub mod report;
pub mod spectra;
pub mod witness;

pub use error::{Error, Result};
pub use exactnum::{CompositeValue, ExactValue, Rational};
pub use qform::{Discriminant, Form, UnimodularMap};
pub use repcount::RepSet;
pub use spectra::{MultiplicitySet, RectangleSpec, SetTag, TorusFormData, TorusSpec};
pub use witness::{MultiplicityWitness, PrimeWitness};
