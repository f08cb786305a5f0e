//! Constraint systems for "a generic radical element commutes with the
//! generators", and a triangular solver for them.

use std::collections::{BTreeMap, BTreeSet};

use super::collect::{validate_closed_nilpotent, RadicalElement};
use super::element::{commutator, frame_conjugate, normalize};
use super::{ChevalleyError, Word};
use crate::coeffring::{Monomial, Poly, Registry, Var, VarKind};
use crate::rootsys::{Root, RootSystem};

/// Coordinate name for a root: `x12`, or `xm12` for a negative label.
pub fn coordinate_name(rs: &RootSystem, r: Root) -> String {
    let l = rs.label(r);
    if l < 0 {
        format!("xm{}", -l)
    } else {
        format!("x{l}")
    }
}

/// `∏ ε_ρ(x_ρ)` over `order` with fresh ordinary coordinates, registered in
/// order so that rendering follows it.
pub fn generic_element(
    rs: &RootSystem,
    reg: &mut Registry,
    order: &[Root],
) -> Result<RadicalElement, ChevalleyError> {
    let coeffs = order
        .iter()
        .map(|&r| reg.ordinary(&coordinate_name(rs, r)).map(Poly::var))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RadicalElement::from_coeffs(order, coeffs))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub equations: Vec<Poly>,
}

impl ConstraintSystem {
    pub fn push(&mut self, p: Poly) {
        if !p.is_zero() && !self.equations.contains(&p) {
            self.equations.push(p);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn render(&self, reg: &Registry) -> Vec<String> {
        self.equations
            .iter()
            .map(|p| format!("{} = 0", reg.render(p)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Classes of coordinates forced equal (size ≥ 2), smallest first.
    pub classes: Vec<Vec<Var>>,
    /// Coordinates forced to vanish.
    pub zeros: Vec<Var>,
    /// The equation that forced each zero, as `eq = 0`.
    pub forced: Vec<String>,
    /// Equations the solver could not reduce.
    pub residual: Vec<Poly>,
}

impl Solution {
    pub fn is_triangular(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn render_classes(&self, reg: &Registry) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| reg.name(v).to_string())
                    .collect::<Vec<_>>()
                    .join(" = ")
            })
            .collect()
    }
}

/// Cofactor involving only unit variables, hence generically nonzero.
fn unit_only(reg: &Registry, p: &Poly) -> bool {
    !p.is_zero() && p.variables().iter().all(|&v| reg.kind(v) == VarKind::Unit)
}

/// If every term of `p` is divisible by one coordinate `x` and the cofactor
/// is a nonzero polynomial in units, `p = 0` forces `x = 0`.
fn forced_zero(reg: &Registry, p: &Poly, coords: &BTreeSet<Var>) -> Option<Var> {
    for &x in coords {
        let k = p.terms().map(|m| m.exponent(x)).min().unwrap_or(0);
        if k <= 0 {
            continue;
        }
        let cofactor = p.mul_monomial(&Monomial::from_exponents(vec![(x, -k)]));
        let others = cofactor.variables();
        if others.iter().any(|v| coords.contains(v)) {
            continue;
        }
        if cofactor.is_one() || unit_only(reg, &cofactor) {
            return Some(x);
        }
    }
    None
}

/// `x_i + x_j` with both coordinates.
fn equality(p: &Poly, coords: &BTreeSet<Var>) -> Option<(Var, Var)> {
    if p.num_terms() != 2 {
        return None;
    }
    let mut vs = p.terms().filter_map(|m| match m.exponents() {
        [(v, 1)] if coords.contains(v) => Some(*v),
        _ => None,
    });
    match (vs.next(), vs.next()) {
        (Some(a), Some(b)) => Some((a.min(b), a.max(b))),
        _ => None,
    }
}

/// Repeatedly merges `x_i = x_j` and kills coordinates forced to zero,
/// substituting back into the remaining equations.
pub fn solve_constraints(
    reg: &Registry,
    system: &ConstraintSystem,
    coords: &[Var],
) -> Result<Solution, ChevalleyError> {
    // representative of each merged coordinate (None once zero)
    let mut rep: BTreeMap<Var, Option<Var>> = coords.iter().map(|&v| (v, Some(v))).collect();
    let mut forced = Vec::new();
    let mut eqs = system.equations.clone();
    loop {
        let bindings: BTreeMap<Var, Poly> = rep
            .iter()
            .filter(|(v, r)| **r != Some(**v))
            .map(|(v, r)| (*v, r.map(Poly::var).unwrap_or_else(Poly::zero)))
            .collect();
        let mut next = Vec::new();
        for e in &eqs {
            let s = e.substitute(reg, &bindings)?;
            if !s.is_zero() && !next.contains(&s) {
                next.push(s);
            }
        }
        eqs = next;
        let live: BTreeSet<Var> = rep.values().flatten().copied().collect();
        let mut changed = false;
        for e in &eqs {
            if let Some((a, b)) = equality(e, &live) {
                for r in rep.values_mut() {
                    if *r == Some(b) {
                        *r = Some(a);
                    }
                }
                changed = true;
                break;
            }
        }
        if !changed {
            for e in &eqs {
                if let Some(x) = forced_zero(reg, e, &live) {
                    forced.push(format!("{} = 0", reg.render(e)));
                    for r in rep.values_mut() {
                        if *r == Some(x) {
                            *r = None;
                        }
                    }
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: BTreeMap<Var, Vec<Var>> = BTreeMap::new();
    let mut zeros = Vec::new();
    for (&v, r) in &rep {
        match r {
            Some(r) => classes.entry(*r).or_default().push(v),
            None => zeros.push(v),
        }
    }
    Ok(Solution {
        classes: classes.into_values().filter(|c| c.len() > 1).collect(),
        zeros,
        forced,
        residual: eqs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerResult {
    pub generic: RadicalElement,
    pub system: ConstraintSystem,
    pub solution: Solution,
    /// When the system is triangular: classes of roots whose coordinates stay
    /// free and equal to each other (a singleton `[ρ]` is the root group U_ρ).
    pub solved_subgroup: Option<Vec<Vec<Root>>>,
}

impl CentralizerResult {
    /// `U12`, `U4·U5`, `diag(U4,U5)` for merged classes, `1` when trivial.
    pub fn render_subgroup(&self, rs: &RootSystem) -> Option<String> {
        let groups = self.solved_subgroup.as_ref()?;
        if groups.is_empty() {
            return Some("1".into());
        }
        Some(
            groups
                .iter()
                .map(|g| {
                    let names: Vec<String> =
                        g.iter().map(|&r| format!("U{}", rs.label(r))).collect();
                    if names.len() == 1 {
                        names[0].clone()
                    } else {
                        format!("diag({})", names.join(","))
                    }
                })
                .collect::<Vec<_>>()
                .join("·"),
        )
    }
}

/// Equations for `g u g⁻¹ = u` for every generator `g`, with `u` generic over
/// `radical` (coordinates `x<label>` / `xm<label>`).
///
/// Generators whose frame preserves the radical and whose root letters lie
/// in it are compared coordinate-wise; others contribute the collected
/// coefficients of the commutator `g u g⁻¹ u⁻¹`.
pub fn centralizer_system(
    rs: &RootSystem,
    reg: &mut Registry,
    generators: &[Word],
    radical: &[Root],
) -> Result<CentralizerResult, ChevalleyError> {
    validate_closed_nilpotent(rs, radical)?;
    let u = generic_element(rs, reg, radical)?;
    let mut system = ConstraintSystem::default();
    for g in generators {
        match frame_conjugate(rs, g, &u) {
            Ok(moved) => {
                for (a, b) in moved.coeffs().iter().zip(u.coeffs()) {
                    system.push(a + b);
                }
            }
            Err(ChevalleyError::Unstable(_)) | Err(ChevalleyError::OutsideSet(_)) => {
                let uw = Word::from_roots(u.all_letters());
                let c = commutator(rs, g, &uw)?;
                if !c.frame.is_identity() {
                    return Err(ChevalleyError::Internal(
                        "commutator with a radical element has a nontrivial frame".into(),
                    ));
                }
                let tail = normalize(rs, &c.to_word())?;
                let Some(collected) = tail.collected_tail() else {
                    return Err(ChevalleyError::NotCollectible);
                };
                for p in collected.coeffs() {
                    system.push(p.clone());
                }
            }
            Err(e) => return Err(e),
        }
    }
    let coords: Vec<Var> = u
        .coeffs()
        .iter()
        .map(|p| *p.variables().iter().next().expect("generic coordinate"))
        .collect();
    let solution = solve_constraints(reg, &system, &coords)?;
    let solved_subgroup = solution.is_triangular().then(|| {
        let zero: BTreeSet<Var> = solution.zeros.iter().copied().collect();
        let mut groups: Vec<Vec<Root>> = Vec::new();
        let mut seen = BTreeSet::new();
        for &v in &coords {
            if zero.contains(&v) || seen.contains(&v) {
                continue;
            }
            let class = solution
                .classes
                .iter()
                .find(|c| c.contains(&v))
                .cloned()
                .unwrap_or_else(|| vec![v]);
            let roots: Vec<Root> = class
                .iter()
                .map(|w| radical[coords.iter().position(|c| c == w).unwrap()])
                .collect();
            seen.extend(class);
            groups.push(roots);
        }
        groups
    });
    Ok(CentralizerResult {
        generic: u,
        system,
        solution,
        solved_subgroup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::parse_word;
    use crate::rootsys::Dynkin;

    fn radical(rs: &RootSystem, sign: i32) -> Vec<Root> {
        (4..=12).map(|l| rs.by_label(sign * l).unwrap()).collect()
    }

    #[test]
    fn n_alpha_sigma_equalities() {
        let rs = RootSystem::new(Dynkin::D4).unwrap();
        let mut reg = Registry::standard();
        let g = parse_word(&rs, &mut reg, "n[a]·sigma").unwrap();
        let out = centralizer_system(&rs, &mut reg, &[g], &radical(&rs, 1)).unwrap();
        assert_eq!(
            out.solution.render_classes(&reg),
            vec!["x4 = x5 = x7 = x8 = x10 = x11", "x6 = x9"]
        );
        let residual: Vec<String> = out
            .solution
            .residual
            .iter()
            .map(|p| reg.render(p))
            .collect();
        assert_eq!(residual, vec!["x4^2 + x6^2"]);
        assert!(out.solved_subgroup.is_none());
    }

    #[test]
    fn with_torus_solves_to_u12() {
        let rs = RootSystem::new(Dynkin::D4).unwrap();
        for sign in [1, -1] {
            let mut reg = Registry::standard();
            let gens = vec![
                parse_word(&rs, &mut reg, "n[a]·sigma").unwrap(),
                parse_word(&rs, &mut reg, "t[a+g](t)").unwrap(),
            ];
            let out = centralizer_system(&rs, &mut reg, &gens, &radical(&rs, sign)).unwrap();
            let expect = if sign > 0 { "U12" } else { "U-12" };
            assert_eq!(out.render_subgroup(&rs).as_deref(), Some(expect));
            let six = if sign > 0 { "x6^2 = 0" } else { "xm6^2 = 0" };
            assert!(
                out.solution.forced.iter().any(|f| f == six),
                "{:?}",
                out.solution.forced
            );
        }
    }

    #[test]
    fn no_generators() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let mut reg = Registry::standard();
        let set: Vec<Root> = rs.positive_roots().collect();
        let out = centralizer_system(&rs, &mut reg, &[], &set).unwrap();
        assert!(out.system.is_empty());
        assert_eq!(out.render_subgroup(&rs).as_deref(), Some("U1·U2·U3"));
    }
}
