//! Words in Steinberg generators of a simply-laced Chevalley group over a
//! field of characteristic 2, extended by graph automorphisms.
//!
//! In characteristic 2 every structure constant is 1, `ε_ζ(x)⁻¹ = ε_ζ(x)`,
//! `n_ξ² = 1` and `n_ξ ε_ζ(x) n_ξ⁻¹ = ε_{s_ξ·ζ}(x)`, so the only relation
//! needed for collection is `ε_ξ(y) ε_ζ(x) = ε_ζ(x) ε_ξ(y) ε_{ζ+ξ}(xy)`
//! (trivial when `ζ+ξ` is not a root).

mod adjoint;
mod centralizer;
mod collect;
mod element;
mod frame;
mod parse;

pub use adjoint::{adjoint, adjoint_word, LieVector};
pub use centralizer::{
    centralizer_system, generic_element, solve_constraints, CentralizerResult, ConstraintSystem,
    Solution,
};
pub use collect::{
    canonical_order, closure, collect, collect_canonical, grading, positivity_witness,
    validate_closed_nilpotent, RadicalElement,
};
pub use element::{
    act_torus, act_weyl_rep, commutator, conjugate, conjugate_generic, frame_conjugate, normalize,
    words_equal, Element, Tail,
};
pub use frame::FrameAction;
pub use parse::{parse_word, render_atom, render_word};

use thiserror::Error;

use crate::coeffring::{Monomial, Poly, PolyError};
use crate::rootsys::{Cochar, Root, RootError, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("root {0} lies outside the collection set")]
    OutsideSet(i32),
    #[error("collection set contains both {0} and its negative")]
    OppositePair(i32),
    #[error("collection set is not closed: {0} + {1} = {2} is missing")]
    NotClosed(i32, i32, i32),
    #[error("root set is not contained in any positive system")]
    NotNilpotent,
    #[error("root set is not stable under the frame: {0} maps outside it")]
    Unstable(i32),
    #[error("`{0}` is not a unit monomial")]
    NotUnit(String),
    #[error("tail mixes opposite roots and cannot be collected")]
    NotCollectible,
    #[error("word syntax: {0}")]
    Parse(String),
    #[error("internal: {0}")]
    Internal(String),
}

/// A generator of the extended Chevalley group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `ε_ζ(x)`.
    Root {
        root: Root,
        coeff: Poly,
    },
    /// `n_ξ = ε_ξ(1) ε_{−ξ}(1) ε_ξ(1)`.
    Weyl(Root),
    /// `χ(m)` for a unit monomial `m`.
    Torus {
        cochar: Cochar,
        unit: Monomial,
    },
    /// `σ^k` for the system's designated graph automorphism.
    Graph(u8),
    Inverse(Box<Atom>),
}

impl Atom {
    pub fn root(root: Root, coeff: Poly) -> Self {
        Atom::Root { root, coeff }
    }

    pub fn torus(cochar: Cochar, unit: Monomial) -> Self {
        Atom::Torus { cochar, unit }
    }

    pub fn is_frame(&self) -> bool {
        match self {
            Atom::Root { .. } => false,
            Atom::Inverse(a) => a.is_frame(),
            _ => true,
        }
    }

    /// Inverse without the `Inverse` wrapper.
    pub fn inverse(&self, rs: &RootSystem) -> Atom {
        match self {
            Atom::Root { .. } | Atom::Weyl(_) => self.clone(),
            Atom::Torus { cochar, unit } => Atom::Torus {
                cochar: cochar.clone(),
                unit: unit.inverse(),
            },
            Atom::Graph(k) => {
                let ord = rs.sigma_order();
                Atom::Graph((ord - k % ord) % ord)
            }
            Atom::Inverse(a) => (**a).clone(),
        }
    }

    /// Strips `Inverse` wrappers.
    pub fn simplified(&self, rs: &RootSystem) -> Atom {
        match self {
            Atom::Inverse(a) => a.simplified(rs).inverse(rs),
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Atom>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn single(a: Atom) -> Self {
        Word(vec![a])
    }

    pub fn from_roots(letters: impl IntoIterator<Item = (Root, Poly)>) -> Self {
        Word(
            letters
                .into_iter()
                .map(|(root, coeff)| Atom::Root { root, coeff })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    pub fn inverse(&self, rs: &RootSystem) -> Word {
        Word(self.0.iter().rev().map(|a| a.inverse(rs)).collect())
    }
}

/// `v(x) = ∏ ε_ζ(x)` over the given roots, in order.
pub fn root_product(roots: &[Root], coeff: &Poly) -> Word {
    Word::from_roots(roots.iter().map(|&r| (r, coeff.clone())))
}
