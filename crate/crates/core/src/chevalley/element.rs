//! Normal form `frame · tail` for words, and the conjugation operations.

use std::collections::BTreeSet;

use super::collect::{closure, collect, collect_canonical, RadicalElement};
use super::frame::FrameAction;
use super::{Atom, ChevalleyError, Word};
use crate::coeffring::{Monomial, Poly, Registry};
use crate::rootsys::{Cochar, Root, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Collected(RadicalElement),
    /// Support mixes opposite roots; kept as a freely reduced word.
    Raw(Vec<(Root, Poly)>),
}

impl Tail {
    pub fn letters(&self) -> Vec<(Root, Poly)> {
        match self {
            Tail::Collected(r) => r.letters(),
            Tail::Raw(v) => v.clone(),
        }
    }

    pub fn is_collected(&self) -> bool {
        matches!(self, Tail::Collected(_))
    }

    pub fn is_identity(&self) -> bool {
        self.letters().is_empty()
    }
}

/// A word rewritten as `frame_letters · tail`, with `frame` the action of
/// the frame letters on root subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub frame_letters: Vec<Atom>,
    pub frame: FrameAction,
    pub tail: Tail,
}

impl Element {
    pub fn is_identity(&self) -> bool {
        self.frame.is_identity() && self.tail.is_identity()
    }

    pub fn tail_letters(&self) -> Vec<(Root, Poly)> {
        self.tail.letters()
    }

    pub fn collected_tail(&self) -> Option<&RadicalElement> {
        match &self.tail {
            Tail::Collected(r) => Some(r),
            Tail::Raw(_) => None,
        }
    }

    pub fn to_word(&self) -> Word {
        let mut atoms = self.frame_letters.clone();
        atoms.extend(
            self.tail_letters()
                .into_iter()
                .map(|(root, coeff)| Atom::Root { root, coeff }),
        );
        Word(atoms)
    }

    pub fn render(&self, rs: &RootSystem, reg: &Registry) -> String {
        super::parse::render_word(rs, reg, &self.to_word())
    }
}

fn push_frame_letter(rs: &RootSystem, letters: &mut Vec<Atom>, atom: Atom) {
    let merged = match (letters.last(), &atom) {
        (Some(Atom::Weyl(a)), Atom::Weyl(b)) if a == b || *a == rs.neg(*b) => Some(None),
        (Some(Atom::Graph(a)), Atom::Graph(b)) => {
            let k = (a + b) % rs.sigma_order();
            Some(if k == 0 { None } else { Some(Atom::Graph(k)) })
        }
        (
            Some(Atom::Torus {
                cochar: c1,
                unit: u1,
            }),
            Atom::Torus {
                cochar: c2,
                unit: u2,
            },
        ) if c1 == c2 => {
            let u = u1.mul(u2);
            Some(if u.is_one() {
                None
            } else {
                Some(Atom::Torus {
                    cochar: c1.clone(),
                    unit: u,
                })
            })
        }
        _ => None,
    };
    match merged {
        Some(replacement) => {
            letters.pop();
            if let Some(a) = replacement {
                letters.push(a);
            }
        }
        None => letters.push(atom),
    }
}

fn free_reduce(letters: Vec<(Root, Poly)>) -> Vec<(Root, Poly)> {
    let mut out: Vec<(Root, Poly)> = Vec::new();
    for (r, x) in letters {
        if x.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((last, y)) if *last == r => {
                *y += &x;
                if y.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((r, x)),
        }
    }
    out
}

fn make_tail(rs: &RootSystem, letters: Vec<(Root, Poly)>) -> Result<Tail, ChevalleyError> {
    let letters = free_reduce(letters);
    match collect_canonical(rs, &letters) {
        Ok(r) => Ok(Tail::Collected(r)),
        Err(ChevalleyError::NotCollectible) => Ok(Tail::Raw(letters)),
        Err(e) => Err(e),
    }
}

/// Frame letters, their combined action, and the transformed root letters.
type Split = (Vec<Atom>, FrameAction, Vec<(Root, Poly)>);

/// Pushes every frame atom to the left: `F·T·f = F f · (f⁻¹ T f)`.
fn split(rs: &RootSystem, word: &Word) -> Result<Split, ChevalleyError> {
    let mut letters = Vec::new();
    let mut frame = FrameAction::identity(rs);
    let mut tail: Vec<(Root, Poly)> = Vec::new();
    for atom in word.atoms() {
        match atom.simplified(rs) {
            Atom::Root { root, coeff } => tail.push((root, coeff)),
            f => {
                let action = FrameAction::of_atom(rs, &f)?;
                let inv = action.inverse(rs);
                for (r, x) in tail.iter_mut() {
                    let (r2, x2) = inv.act(rs, *r, x);
                    *r = r2;
                    *x = x2;
                }
                frame = frame.compose(rs, &action);
                push_frame_letter(rs, &mut letters, f);
            }
        }
    }
    if frame.is_identity() {
        letters.clear();
    }
    Ok((letters, frame, tail))
}

pub fn normalize(rs: &RootSystem, word: &Word) -> Result<Element, ChevalleyError> {
    let (frame_letters, frame, tail) = split(rs, word)?;
    Ok(Element {
        frame_letters,
        frame,
        tail: make_tail(rs, tail)?,
    })
}

/// `g h g⁻¹`.
pub fn conjugate(rs: &RootSystem, g: &Word, h: &Word) -> Result<Element, ChevalleyError> {
    normalize(rs, &g.then(h).then(&g.inverse(rs)))
}

/// `g h g⁻¹ h⁻¹`.
pub fn commutator(rs: &RootSystem, g: &Word, h: &Word) -> Result<Element, ChevalleyError> {
    normalize(rs, &g.then(h).then(&g.inverse(rs)).then(&h.inverse(rs)))
}

fn check_stable(rs: &RootSystem, action: &FrameAction, set: &[Root]) -> Result<(), ChevalleyError> {
    let members: BTreeSet<Root> = set.iter().copied().collect();
    for &r in set {
        if !members.contains(&action.map.apply(r)) {
            return Err(ChevalleyError::Unstable(rs.label(r)));
        }
    }
    Ok(())
}

/// `u⁻¹ g u = F · (F⁻¹ u⁻¹ F) T u` for `g = F·T`, the tail collected in
/// `order` (any ordering of u's root set).
pub fn conjugate_generic(
    rs: &RootSystem,
    u: &RadicalElement,
    g: &Word,
    order: &[Root],
) -> Result<(Element, RadicalElement), ChevalleyError> {
    let (frame_letters, frame, g_tail) = split(rs, g)?;
    check_stable(rs, &frame, u.order())?;
    let inv = frame.inverse(rs);
    let mut letters: Vec<(Root, Poly)> = u
        .all_letters()
        .into_iter()
        .rev()
        .map(|(r, x)| inv.act(rs, r, &x))
        .collect();
    letters.extend(g_tail);
    letters.extend(u.all_letters());
    let set: BTreeSet<Root> = order.iter().copied().collect();
    let support: BTreeSet<Root> = letters
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(r, _)| *r)
        .collect();
    if !support.is_subset(&set) || set != u.order().iter().copied().collect() {
        let outside = support.difference(&set).next().copied();
        return Err(ChevalleyError::OutsideSet(
            outside.map(|r| rs.label(r)).unwrap_or(0),
        ));
    }
    let tail = collect(rs, &letters, order)?;
    let head = Element {
        frame_letters,
        frame,
        tail: Tail::Collected(RadicalElement::zero(&[])),
    };
    Ok((head, tail))
}

/// `g u g⁻¹` for `u` over a set stable under g's frame, collected in u's
/// order.
pub fn frame_conjugate(
    rs: &RootSystem,
    g: &Word,
    u: &RadicalElement,
) -> Result<RadicalElement, ChevalleyError> {
    let (_, frame, g_tail) = split(rs, g)?;
    check_stable(rs, &frame, u.order())?;
    let mut inner: Vec<(Root, Poly)> = g_tail.clone();
    inner.extend(u.all_letters());
    inner.extend(g_tail.into_iter().rev());
    let moved: Vec<(Root, Poly)> = inner
        .into_iter()
        .map(|(r, x)| frame.act(rs, r, &x))
        .collect();
    collect(rs, &moved, u.order())
}

/// `n_ξ ε_ζ(x) n_ξ⁻¹ = ε_{s_ξ ζ}(x)`; `None` when `x = 0`.
pub fn act_weyl_rep(rs: &RootSystem, xi: Root, zeta: Root, x: &Poly) -> Option<(Root, Poly)> {
    if x.is_zero() {
        return None;
    }
    Some((rs.reflect(xi, zeta), x.clone()))
}

/// `χ(t) ε_ζ(x) χ(t)⁻¹ = ε_ζ(t^{⟨ζ,χ⟩} x)`.
pub fn act_torus(
    rs: &RootSystem,
    chi: &Cochar,
    t: &Monomial,
    zeta: Root,
    x: &Poly,
) -> (Root, Poly) {
    (zeta, x.mul_monomial(&t.pow(rs.pairing(zeta, chi))))
}

/// Equality of the group elements: frames agree as actions and the tails
/// agree after collection over the closure of both supports.
pub fn words_equal(rs: &RootSystem, a: &Word, b: &Word) -> Result<bool, ChevalleyError> {
    let (_, fa, ta) = split(rs, a)?;
    let (_, fb, tb) = split(rs, b)?;
    if fa != fb {
        return Ok(false);
    }
    let (ta, tb) = (free_reduce(ta), free_reduce(tb));
    let set = closure(rs, ta.iter().chain(&tb).map(|(r, _)| *r));
    if set.iter().any(|&r| set.contains(&rs.neg(r))) {
        return Ok(ta == tb);
    }
    let order = match super::collect::canonical_order(rs, &set) {
        Ok(o) => o,
        Err(ChevalleyError::NotNilpotent) => return Ok(ta == tb),
        Err(e) => return Err(e),
    };
    Ok(collect(rs, &ta, &order)? == collect(rs, &tb, &order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Dynkin;

    fn d4() -> RootSystem {
        RootSystem::new(Dynkin::D4).unwrap()
    }

    #[test]
    fn conjugating_n_alpha_sigma() {
        let rs = d4();
        let mut reg = Registry::standard();
        let s = reg.parse("s").unwrap();
        let r = |l| rs.by_label(l).unwrap();
        let v = Word::from_roots([(r(6), s.clone()), (r(9), s.clone())]);
        let g = Word(vec![Atom::Weyl(rs.simple(0)), Atom::Graph(1)]);
        let out = conjugate(&rs, &v, &g).unwrap();
        assert_eq!(out.render(&rs, &reg), "n[a]·sigma·e12(s^2)");
    }

    #[test]
    fn identity_conjugator() {
        let rs = d4();
        let mut reg = Registry::standard();
        let x = reg.parse("x").unwrap();
        let h = Word::from_roots([(rs.by_label(5).unwrap(), x)]);
        let out = conjugate(&rs, &Word::identity(), &h).unwrap();
        assert!(words_equal(&rs, &out.to_word(), &h).unwrap());
    }

    #[test]
    fn weyl_and_torus_actions() {
        let rs = d4();
        let mut reg = Registry::standard();
        let x = reg.parse("x").unwrap();
        let (a, b) = (rs.simple(0), rs.simple(1));
        let ab = rs.sum(a, b).unwrap();
        assert_eq!(act_weyl_rep(&rs, a, b, &x), Some((ab, x.clone())));
        assert_eq!(act_weyl_rep(&rs, a, b, &Poly::zero()), None);
        let chi = rs.parse_cochar("a+g").unwrap();
        let t = Monomial::var(reg.lookup("t").unwrap());
        let (_, y) = act_torus(&rs, &chi, &t, rs.by_label(4).unwrap(), &x);
        assert_eq!(reg.render(&y), "t^-2*x");
        let (_, z) = act_torus(&rs, &chi, &t, rs.by_label(12).unwrap(), &x);
        assert_eq!(z, x);
    }

    #[test]
    fn uncollectible_tail_is_flagged() {
        let rs = d4();
        let one = Poly::one();
        let w = Word::from_roots([
            (rs.by_label(12).unwrap(), one.clone()),
            (rs.by_label(-12).unwrap(), one),
        ]);
        let out = normalize(&rs, &w).unwrap();
        assert!(!out.tail.is_collected());
        assert_eq!(out.tail_letters().len(), 2);
    }

    #[test]
    fn frame_cancellation() {
        let rs = d4();
        let w = Word(vec![
            Atom::Weyl(rs.simple(0)),
            Atom::Graph(1),
            Atom::Graph(2),
            Atom::Weyl(rs.simple(0)),
        ]);
        assert!(normalize(&rs, &w).unwrap().is_identity());
    }
}
