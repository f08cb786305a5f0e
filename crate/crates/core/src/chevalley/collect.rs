//! Collection of products of root elements into a fixed root order.

use std::collections::{BTreeSet, HashMap};

use super::ChevalleyError;
use crate::coeffring::{Poly, Registry, Var};
use crate::rootsys::{Root, RootMap, RootSystem};

/// `∏ ε_ζ(coeff(ζ))` taken in `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalElement {
    order: Vec<Root>,
    coeffs: Vec<Poly>,
}

impl RadicalElement {
    pub fn zero(order: &[Root]) -> Self {
        RadicalElement {
            order: order.to_vec(),
            coeffs: vec![Poly::zero(); order.len()],
        }
    }

    pub fn from_coeffs(order: &[Root], coeffs: Vec<Poly>) -> Self {
        assert_eq!(order.len(), coeffs.len());
        RadicalElement {
            order: order.to_vec(),
            coeffs,
        }
    }

    pub fn order(&self) -> &[Root] {
        &self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn get(&self, r: Root) -> Option<&Poly> {
        self.order
            .iter()
            .position(|&o| o == r)
            .map(|i| &self.coeffs[i])
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Nonzero letters in order.
    pub fn letters(&self) -> Vec<(Root, Poly)> {
        self.order
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&r, c)| (r, c.clone()))
            .collect()
    }

    pub fn all_letters(&self) -> Vec<(Root, Poly)> {
        self.order
            .iter()
            .copied()
            .zip(self.coeffs.iter().cloned())
            .collect()
    }

    pub fn support(&self) -> Vec<Root> {
        self.letters().into_iter().map(|(r, _)| r).collect()
    }

    /// Renders every position, zeros included (`e4(x7)*e5(x4)*…`).
    pub fn render_full(&self, rs: &RootSystem, reg: &Registry) -> String {
        self.order
            .iter()
            .zip(&self.coeffs)
            .map(|(&r, c)| format!("e{}({})", rs.label(r), reg.render(c)))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Renders nonzero positions only; the identity renders as `1`.
    pub fn render(&self, rs: &RootSystem, reg: &Registry) -> String {
        let letters = self.letters();
        if letters.is_empty() {
            return "1".into();
        }
        letters
            .iter()
            .map(|(r, c)| format!("e{}({})", rs.label(*r), reg.render(c)))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Coefficients that mention any of `vars` or the square-root constant
    /// are "not k-rational as presented".
    pub fn mentions(&self, v: Var) -> bool {
        self.coeffs.iter().any(|c| c.mentions(v))
    }
}

/// Closure of a root set under addition (within the root system).
pub fn closure(rs: &RootSystem, roots: impl IntoIterator<Item = Root>) -> Vec<Root> {
    let mut set: BTreeSet<Root> = roots.into_iter().collect();
    loop {
        let mut added = Vec::new();
        for &a in &set {
            for &b in &set {
                if let Some(c) = rs.sum(a, b) {
                    if !set.contains(&c) {
                        added.push(c);
                    }
                }
            }
        }
        if added.is_empty() {
            return set.into_iter().collect();
        }
        set.extend(added);
    }
}

pub fn validate_closed_nilpotent(rs: &RootSystem, set: &[Root]) -> Result<(), ChevalleyError> {
    let members: BTreeSet<Root> = set.iter().copied().collect();
    for &a in &members {
        if members.contains(&rs.neg(a)) {
            return Err(ChevalleyError::OppositePair(rs.label(a)));
        }
        for &b in &members {
            if let Some(c) = rs.sum(a, b) {
                if !members.contains(&c) {
                    return Err(ChevalleyError::NotClosed(
                        rs.label(a),
                        rs.label(b),
                        rs.label(c),
                    ));
                }
            }
        }
    }
    positivity_witness(rs, set).map(|_| ())
}

/// A Weyl element carrying the set into the positive roots.
pub fn positivity_witness(rs: &RootSystem, set: &[Root]) -> Result<RootMap, ChevalleyError> {
    rs.weyl_group()
        .iter()
        .find(|w| set.iter().all(|&r| rs.is_positive(w.apply(r))))
        .cloned()
        .ok_or(ChevalleyError::NotNilpotent)
}

/// Additive grading, positive on the set: height after the witness.
pub fn grading(rs: &RootSystem, set: &[Root]) -> Result<HashMap<Root, i32>, ChevalleyError> {
    let w = positivity_witness(rs, set)?;
    Ok(set.iter().map(|&r| (r, rs.height(w.apply(r)))).collect())
}

/// Ascending (grading, label index); for positive sets the grading is the
/// height.
pub fn canonical_order(rs: &RootSystem, set: &[Root]) -> Result<Vec<Root>, ChevalleyError> {
    let g = grading(rs, set)?;
    let mut order: Vec<Root> = set.to_vec();
    order.sort_by_key(|r| (g[r], *r));
    order.dedup();
    Ok(order)
}

struct Collector<'a> {
    rs: &'a RootSystem,
    order: &'a [Root],
    pos: HashMap<Root, usize>,
    nf: Vec<Poly>,
}

impl Collector<'_> {
    /// Right-multiplies the normal form by `ε_{order[p]}(x)`. The order must
    /// be grading-compatible: every commutator lands strictly later, which
    /// bounds the recursion.
    fn mul_letter(&mut self, p: usize, x: Poly) -> Result<(), ChevalleyError> {
        if x.is_zero() {
            return Ok(());
        }
        let root = self.order[p];
        let mut tail = Vec::new();
        for q in p + 1..self.nf.len() {
            if !self.nf[q].is_zero() {
                tail.push((q, std::mem::take(&mut self.nf[q])));
            }
        }
        self.nf[p] += &x;
        for (q, y) in tail {
            let comm = self.rs.sum(root, self.order[q]).map(|c| (c, &x * &y));
            self.mul_letter(q, y)?;
            if let Some((c, z)) = comm {
                let cp = *self.pos.get(&c).ok_or_else(|| {
                    ChevalleyError::NotClosed(
                        self.rs.label(root),
                        self.rs.label(self.order[q]),
                        self.rs.label(c),
                    )
                })?;
                if cp <= p {
                    return Err(ChevalleyError::Internal(
                        "order is not compatible with the grading".into(),
                    ));
                }
                self.mul_letter(cp, z)?;
            }
        }
        Ok(())
    }
}

/// Collects into a grading-compatible order.
fn collect_graded(
    rs: &RootSystem,
    order: &[Root],
    letters: &[(Root, Poly)],
) -> Result<Vec<Poly>, ChevalleyError> {
    let pos: HashMap<Root, usize> = order.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut c = Collector {
        rs,
        order,
        pos,
        nf: vec![Poly::zero(); order.len()],
    };
    for (r, x) in letters {
        let p = *c
            .pos
            .get(r)
            .ok_or(ChevalleyError::OutsideSet(rs.label(*r)))?;
        c.mul_letter(p, x.clone())?;
    }
    Ok(c.nf)
}

/// Collects a product of root elements into the normal form over `order`.
///
/// `order` may be any ordering of a closed set with no opposite pair. The
/// product is first collected into the canonical (grading, label) order;
/// for other orders the coordinates are then solved level by level, since
/// the coordinate at grading `h` only depends on coordinates of lower
/// grading.
pub fn collect(
    rs: &RootSystem,
    letters: &[(Root, Poly)],
    order: &[Root],
) -> Result<RadicalElement, ChevalleyError> {
    validate_closed_nilpotent(rs, order)?;
    for (r, _) in letters {
        if !order.contains(r) {
            return Err(ChevalleyError::OutsideSet(rs.label(*r)));
        }
    }
    let canon = canonical_order(rs, order)?;
    let target = collect_graded(rs, &canon, letters)?;
    if canon == order {
        return Ok(RadicalElement::from_coeffs(order, target));
    }
    let g = grading(rs, order)?;
    let canon_pos: HashMap<Root, usize> = canon.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let levels: BTreeSet<i32> = g.values().copied().collect();
    let mut y = vec![Poly::zero(); order.len()];
    for level in levels {
        let word: Vec<(Root, Poly)> = order.iter().copied().zip(y.iter().cloned()).collect();
        let current = collect_graded(rs, &canon, &word)?;
        for (i, r) in order.iter().enumerate() {
            if g[r] == level {
                let k = canon_pos[r];
                let fix = &target[k] + &current[k];
                y[i] += &fix;
            }
        }
    }
    let check: Vec<(Root, Poly)> = order.iter().copied().zip(y.iter().cloned()).collect();
    if collect_graded(rs, &canon, &check)? != target {
        return Err(ChevalleyError::Internal(
            "reordering did not converge".into(),
        ));
    }
    Ok(RadicalElement::from_coeffs(order, y))
}

/// Collects into the canonical order of the closure of the support.
pub fn collect_canonical(
    rs: &RootSystem,
    letters: &[(Root, Poly)],
) -> Result<RadicalElement, ChevalleyError> {
    let support = letters
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, _)| *r);
    let set = closure(rs, support);
    let order = canonical_order(rs, &set).map_err(|e| match e {
        ChevalleyError::NotNilpotent => ChevalleyError::NotCollectible,
        other => other,
    })?;
    if set.iter().any(|&r| set.contains(&rs.neg(r))) {
        return Err(ChevalleyError::NotCollectible);
    }
    let nonzero: Vec<(Root, Poly)> = letters
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .cloned()
        .collect();
    collect(rs, &nonzero, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Dynkin;

    #[test]
    fn a2_reordering() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let mut reg = Registry::standard();
        let (x, y, z) = (
            reg.parse("x").unwrap(),
            reg.parse("y").unwrap(),
            reg.parse("z").unwrap(),
        );
        let (a, b, ab) = (
            rs.by_label(1).unwrap(),
            rs.by_label(2).unwrap(),
            rs.by_label(3).unwrap(),
        );
        let out = collect(
            &rs,
            &[(b, x.clone()), (a, y.clone()), (ab, z.clone())],
            &[a, b, ab],
        )
        .unwrap();
        assert_eq!(out.coeffs(), &[y.clone(), x.clone(), &(&x * &y) + &z]);
    }

    #[test]
    fn empty_word() {
        let rs = RootSystem::new(Dynkin::D4).unwrap();
        let order: Vec<Root> = (4..=12).map(|l| rs.by_label(l).unwrap()).collect();
        let out = collect(&rs, &[], &order).unwrap();
        assert!(out.is_identity());
        assert_eq!(out.order().len(), 9);
    }

    #[test]
    fn d4_six_nine_commutator() {
        let rs = RootSystem::new(Dynkin::D4).unwrap();
        let mut reg = Registry::standard();
        let (x, y) = (reg.parse("x").unwrap(), reg.parse("y").unwrap());
        let r = |l| rs.by_label(l).unwrap();
        let out = collect(
            &rs,
            &[(r(9), x.clone()), (r(6), y.clone())],
            &[r(6), r(9), r(12)],
        )
        .unwrap();
        assert_eq!(out.coeffs(), &[y.clone(), x.clone(), &x * &y]);
    }

    #[test]
    fn rejects_bad_sets() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let x = Poly::one();
        let (a, b) = (rs.by_label(1).unwrap(), rs.by_label(2).unwrap());
        assert_eq!(
            collect(&rs, &[(a, x.clone())], &[a, rs.neg(a)]),
            Err(ChevalleyError::OppositePair(1))
        );
        assert!(matches!(
            collect(&rs, &[(a, x.clone())], &[a, b]),
            Err(ChevalleyError::NotClosed(..))
        ));
        assert_eq!(
            collect(&rs, &[(b, x)], &[a]),
            Err(ChevalleyError::OutsideSet(2))
        );
    }

    #[test]
    fn negative_sets_are_collectible() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let mut reg = Registry::standard();
        let (x, y) = (reg.parse("x").unwrap(), reg.parse("y").unwrap());
        let (a, b) = (rs.by_label(-1).unwrap(), rs.by_label(-2).unwrap());
        let out = collect_canonical(&rs, &[(b, x.clone()), (a, y.clone())]).unwrap();
        assert_eq!(out.order().len(), 3);
        assert_eq!(out.get(rs.by_label(-3).unwrap()), Some(&(&x * &y)));
    }
}
