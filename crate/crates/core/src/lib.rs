//! Symbolic computations in simply-laced Chevalley groups over fields of
//! characteristic 2, extended by graph automorphisms.

#![allow(clippy::needless_range_loop)]

pub mod chevalley;
pub mod coeffring;
pub mod paperlab;
pub mod parabolic;
pub mod rootsys;

pub use chevalley::{Atom, ChevalleyError, Element, RadicalElement, Word};
pub use coeffring::{Poly, Registry, Var};
pub use parabolic::RParabolicData;
pub use rootsys::{Cochar, Dynkin, Root, RootSystem};
