use std::collections::BTreeMap;

use super::{Atom, ChevalleyError};
use crate::coeffring::{Monomial, Poly, Var};
use crate::rootsys::{Cochar, Root, RootMap, RootSystem};

/// Action of a frame element `π·T` (π a root-system automorphism realised by
/// Weyl representatives and graph automorphisms, `T = ∏ χ_v(v)` a formal torus
/// element) on root subgroups: `ε_ρ(x) ↦ ε_{π(ρ)}(∏ v^{<ρ, χ_v>} · x)`.
///
/// In characteristic 2 the elements `n_ξ` generate a copy of the Weyl group,
/// so `π` together with the torus bookkeeping determines the element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameAction {
    pub map: RootMap,
    pub torus: BTreeMap<Var, Cochar>,
}

impl FrameAction {
    pub fn identity(rs: &RootSystem) -> Self {
        FrameAction {
            map: RootMap::identity(rs.len()),
            torus: BTreeMap::new(),
        }
    }

    pub fn from_map(map: RootMap) -> Self {
        FrameAction {
            map,
            torus: BTreeMap::new(),
        }
    }

    pub fn of_atom(rs: &RootSystem, atom: &Atom) -> Result<Self, ChevalleyError> {
        Ok(match atom {
            Atom::Weyl(xi) => Self::from_map(rs.reflection(*xi)),
            Atom::Graph(k) => Self::from_map(rs.sigma_power(*k as i32)),
            Atom::Torus { cochar, unit } => {
                let mut torus = BTreeMap::new();
                for &(v, e) in unit.exponents() {
                    torus.insert(v, cochar.scaled(e));
                }
                FrameAction {
                    map: RootMap::identity(rs.len()),
                    torus,
                }
            }
            Atom::Inverse(a) => Self::of_atom(rs, a)?.inverse(rs),
            Atom::Root { .. } => {
                return Err(ChevalleyError::Internal(
                    "root element used as a frame atom".into(),
                ))
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity() && self.torus.values().all(Cochar::is_zero)
    }

    /// `self · other`.
    pub fn compose(&self, rs: &RootSystem, other: &FrameAction) -> FrameAction {
        // (π₁T₁)(π₂T₂) = π₁π₂ · (π₂⁻¹ T₁ π₂) T₂
        let inv2 = other.map.inverse();
        let mut torus: BTreeMap<Var, Cochar> = BTreeMap::new();
        for (v, c) in &self.torus {
            torus.insert(*v, rs.act_cochar(&inv2, c));
        }
        for (v, c) in &other.torus {
            let e = torus.entry(*v).or_insert_with(|| Cochar::zero(rs.rank()));
            *e = e.add(c);
        }
        torus.retain(|_, c| !c.is_zero());
        FrameAction {
            map: self.map.compose(&other.map),
            torus,
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> FrameAction {
        // (πT)⁻¹ = π⁻¹ · π(T⁻¹)π⁻¹
        let torus = self
            .torus
            .iter()
            .map(|(v, c)| (*v, rs.act_cochar(&self.map, &c.neg())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        FrameAction {
            map: self.map.inverse(),
            torus,
        }
    }

    pub fn scale(&self, rs: &RootSystem, r: Root) -> Monomial {
        Monomial::from_exponents(
            self.torus
                .iter()
                .map(|(v, c)| (*v, rs.pairing(r, c)))
                .collect(),
        )
    }

    /// Conjugates `ε_r(x)` by the frame.
    pub fn act(&self, rs: &RootSystem, r: Root, x: &Poly) -> (Root, Poly) {
        (self.map.apply(r), x.mul_monomial(&self.scale(rs, r)))
    }

    pub fn act_cochar(&self, rs: &RootSystem, chi: &Cochar) -> Cochar {
        rs.act_cochar(&self.map, chi)
    }
}
