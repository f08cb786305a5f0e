//! Adjoint action on the Chevalley basis `{e_ζ} ∪ {h_i}` in characteristic 2.

use std::collections::BTreeMap;

use super::{Atom, ChevalleyError, Word};
use crate::coeffring::{Poly, Registry};
use crate::rootsys::{Root, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieVector {
    pub e: BTreeMap<Root, Poly>,
    pub h: Vec<Poly>,
}

impl LieVector {
    pub fn zero(rs: &RootSystem) -> Self {
        LieVector {
            e: BTreeMap::new(),
            h: vec![Poly::zero(); rs.rank()],
        }
    }

    pub fn basis_e(rs: &RootSystem, r: Root) -> Self {
        let mut v = Self::zero(rs);
        v.add_e(r, &Poly::one());
        v
    }

    pub fn basis_h(rs: &RootSystem, i: usize) -> Self {
        let mut v = Self::zero(rs);
        v.h[i] = Poly::one();
        v
    }

    pub fn add_e(&mut self, r: Root, x: &Poly) {
        if x.is_zero() {
            return;
        }
        let entry = self.e.entry(r).or_insert_with(Poly::zero);
        *entry += x;
        if entry.is_zero() {
            self.e.remove(&r);
        }
    }

    pub fn add(&self, other: &LieVector) -> LieVector {
        let mut out = self.clone();
        for (r, x) in &other.e {
            out.add_e(*r, x);
        }
        for (a, b) in out.h.iter_mut().zip(&other.h) {
            *a += b;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_empty() && self.h.iter().all(Poly::is_zero)
    }

    /// `e6 + e9`, `(x^2)*e12 + h_a`.
    pub fn render(&self, rs: &RootSystem, reg: &Registry) -> String {
        let coef = |p: &Poly, basis: String| {
            if p.is_one() {
                basis
            } else {
                format!("({})*{}", reg.render(p), basis)
            }
        };
        let mut parts: Vec<String> = self
            .e
            .iter()
            .map(|(r, p)| coef(p, format!("e{}", rs.label(*r))))
            .collect();
        for (i, p) in self.h.iter().enumerate() {
            if !p.is_zero() {
                parts.push(coef(p, format!("h_{}", rs.simple_name(i))));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn simple_pairings(rs: &RootSystem, xi: Root) -> Vec<i64> {
    (0..rs.rank())
        .map(|i| rs.pairing(xi, &rs.coroot(rs.simple(i))) as i64)
        .collect()
}

/// `h_ξ` in the `h_i` basis, reduced mod 2.
fn coroot_parity(rs: &RootSystem, xi: Root) -> Vec<bool> {
    rs.coroot(xi)
        .0
        .iter()
        .map(|c| c.rem_euclid(2) == 1)
        .collect()
}

pub fn adjoint(rs: &RootSystem, atom: &Atom, v: &LieVector) -> Result<LieVector, ChevalleyError> {
    let mut out = LieVector::zero(rs);
    match atom.simplified(rs) {
        Atom::Root { root: xi, coeff: x } => {
            let neg = rs.neg(xi);
            let hxi = coroot_parity(rs, xi);
            for (&z, c) in &v.e {
                out.add_e(z, c);
                if z == neg {
                    let cx = c * &x;
                    for (j, &odd) in hxi.iter().enumerate() {
                        if odd {
                            out.h[j] += &cx;
                        }
                    }
                    out.add_e(xi, &(&cx * &x));
                } else if let Some(s) = rs.sum(z, xi) {
                    out.add_e(s, &(c * &x));
                }
            }
            let p = simple_pairings(rs, xi);
            for (i, c) in v.h.iter().enumerate() {
                out.h[i] += c;
                if p[i].rem_euclid(2) == 1 {
                    out.add_e(xi, &(c * &x));
                }
            }
        }
        Atom::Weyl(xi) => {
            for (&z, c) in &v.e {
                out.add_e(rs.reflect(xi, z), c);
            }
            let p = simple_pairings(rs, xi);
            let hxi = coroot_parity(rs, xi);
            let mut s = Poly::zero();
            for (i, c) in v.h.iter().enumerate() {
                out.h[i] += c;
                if p[i].rem_euclid(2) == 1 {
                    s += c;
                }
            }
            for (j, &odd) in hxi.iter().enumerate() {
                if odd {
                    out.h[j] += &s;
                }
            }
        }
        Atom::Graph(k) => {
            let map = rs.sigma_power(k as i32);
            for (&z, c) in &v.e {
                out.add_e(map.apply(z), c);
            }
            for (i, c) in v.h.iter().enumerate() {
                let j = rs.simple_index(map.apply(rs.simple(i))).ok_or_else(|| {
                    ChevalleyError::Internal("graph map moves a simple root".into())
                })?;
                out.h[j] += c;
            }
        }
        Atom::Torus { cochar, unit } => {
            for (&z, c) in &v.e {
                out.add_e(z, &c.mul_monomial(&unit.pow(rs.pairing(z, &cochar))));
            }
            out.h = v.h.clone();
        }
        Atom::Inverse(_) => unreachable!("simplified atoms carry no Inverse wrapper"),
    }
    Ok(out)
}

/// `Ad(a₁⋯a_k) v`, rightmost atom first.
pub fn adjoint_word(
    rs: &RootSystem,
    word: &Word,
    v: &LieVector,
) -> Result<LieVector, ChevalleyError> {
    let mut out = v.clone();
    for atom in word.atoms().iter().rev() {
        out = adjoint(rs, atom, &out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Dynkin;

    fn all_basis(rs: &RootSystem) -> Vec<LieVector> {
        let mut v: Vec<LieVector> = rs.roots().map(|r| LieVector::basis_e(rs, r)).collect();
        v.extend((0..rs.rank()).map(|i| LieVector::basis_h(rs, i)));
        v
    }

    #[test]
    fn weyl_rep_matches_root_product() {
        for rs in [
            RootSystem::new(Dynkin::A(2)).unwrap(),
            RootSystem::new(Dynkin::D4).unwrap(),
        ] {
            for xi in rs.roots().collect::<Vec<_>>() {
                let n = Word::single(Atom::Weyl(xi));
                let one = Poly::one();
                let prod =
                    Word::from_roots([(xi, one.clone()), (rs.neg(xi), one.clone()), (xi, one)]);
                for b in all_basis(&rs) {
                    assert_eq!(
                        adjoint_word(&rs, &n, &b).unwrap(),
                        adjoint_word(&rs, &prod, &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sigma_fixes_sum_in_a2() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let v = LieVector::basis_e(&rs, rs.simple(0)).add(&LieVector::basis_e(&rs, rs.simple(1)));
        assert_eq!(adjoint(&rs, &Atom::Graph(1), &v).unwrap(), v);
        assert_eq!(adjoint_word(&rs, &Word::identity(), &v).unwrap(), v);
    }

    #[test]
    fn curve_fixes_e6_plus_e9() {
        let rs = RootSystem::new(Dynkin::D4).unwrap();
        let mut reg = Registry::standard();
        let x = reg.parse("x").unwrap();
        let (r6, r9) = (rs.by_label(6).unwrap(), rs.by_label(9).unwrap());
        let v = LieVector::basis_e(&rs, r6).add(&LieVector::basis_e(&rs, r9));
        let w = Word::from_roots([(r6, x.clone()), (r9, x)]);
        assert_eq!(adjoint_word(&rs, &w, &v).unwrap(), v);
        assert_eq!(v.render(&rs, &reg), "e6 + e9");
    }
}
