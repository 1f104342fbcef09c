//! Loewy lengths of tensor products of modules over the group algebra of a
//! dihedral 2-group in characteristic 2.
//!
//! Two engines are provided: closed-form formulas in terms of binary
//! expansions ([`formulas`]) and an explicit matrix oracle ([`modrep`]).
//! [`verify`] runs both over parameter grids and compares them.

pub mod binlucas;
pub mod error;
pub mod formulas;
pub mod gf2e;
pub mod modrep;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use formulas::{
    loewy_general, projective_summand, Atom, BandBandCase, Engine, LoewyReport, ModuleSpec,
};
pub use gf2e::{Field, FieldElem, FieldMatrix};
pub use words::{Kind, Word};
