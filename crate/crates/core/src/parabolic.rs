//! Root data of R-parabolic subgroups `P_λ = L_λ ⋉ R_u(P_λ)`, limits along
//! cocharacters, refinement, and a minimality search over standard
//! parabolics.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{normalize, render_word, Atom, ChevalleyError, Element, Tail, Word};
use crate::coeffring::Registry;
use crate::rootsys::{Cochar, Root, RootError, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error("generator {0} is not contained in the parabolic")]
    NotContained(String),
    #[error("frame does not centralize the cocharacter")]
    FrameNotInLevi,
    #[error("containment of {0} cannot be decided at root level")]
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RParabolicData {
    pub lambda: Cochar,
    pub p_roots: Vec<Root>,
    pub l_roots: Vec<Root>,
    pub u_roots: Vec<Root>,
    /// Powers `k` (mod the order of σ) with `σ^k·λ = λ`.
    pub sigma_components: Vec<u8>,
}

impl RParabolicData {
    pub fn is_proper(&self) -> bool {
        !self.u_roots.is_empty()
    }

    pub fn labels(rs: &RootSystem, roots: &[Root]) -> Vec<i32> {
        roots.iter().map(|&r| rs.label(r)).collect()
    }

    /// Simple roots of the Levi: positive `l_roots` that are not a sum of
    /// two positive `l_roots`.
    pub fn levi_simple_roots(&self, rs: &RootSystem) -> Vec<Root> {
        let pos: Vec<Root> = self
            .l_roots
            .iter()
            .copied()
            .filter(|&r| rs.is_positive(r))
            .collect();
        pos.iter()
            .copied()
            .filter(|&r| {
                !pos.iter()
                    .any(|&a| pos.iter().any(|&b| rs.sum(a, b) == Some(r)))
            })
            .collect()
    }
}

pub fn rparabolic(rs: &RootSystem, lambda: &Cochar) -> RParabolicData {
    let mut data = RParabolicData {
        lambda: lambda.clone(),
        p_roots: Vec::new(),
        l_roots: Vec::new(),
        u_roots: Vec::new(),
        sigma_components: Vec::new(),
    };
    for r in rs.roots() {
        let p = rs.pairing(r, lambda);
        if p >= 0 {
            data.p_roots.push(r);
        }
        if p == 0 {
            data.l_roots.push(r);
        }
        if p > 0 {
            data.u_roots.push(r);
        }
    }
    for k in 0..rs.sigma_order() {
        if rs.act_cochar(&rs.sigma_power(k as i32), lambda) == *lambda {
            data.sigma_components.push(k);
        }
    }
    data
}

/// Whether the normalized element lies in `P_λ`: `Some(true/false)` when
/// decidable from the root data, `None` otherwise.
///
/// For a frame fixing `λ` the element lies in `P_λ` iff its collected tail
/// does, and the tail's coordinates are unique, so every coordinate at a
/// root pairing negatively must vanish.
pub fn contains(rs: &RootSystem, lambda: &Cochar, element: &Element) -> Option<bool> {
    let frame_in = rs.act_cochar(&element.frame.map, lambda) == *lambda;
    let letters = element.tail_letters();
    let tail_in = letters.iter().all(|(r, _)| rs.pairing(*r, lambda) >= 0);
    match (&element.tail, frame_in, tail_in) {
        (_, true, true) => Some(true),
        (Tail::Collected(_), true, false) => Some(false),
        (_, false, true) => Some(false),
        _ => None,
    }
}

pub fn contains_word(
    rs: &RootSystem,
    lambda: &Cochar,
    word: &Word,
) -> Result<Option<bool>, ParabolicError> {
    Ok(contains(rs, lambda, &normalize(rs, word)?))
}

/// `lim_{a→0} λ(a) g λ(a)⁻¹`, or `None` when it does not exist.
pub fn limit_along(
    rs: &RootSystem,
    lambda: &Cochar,
    element: &Element,
) -> Result<Option<Element>, ParabolicError> {
    if rs.act_cochar(&element.frame.map, lambda) != *lambda {
        return Err(ParabolicError::FrameNotInLevi);
    }
    let letters = element.tail_letters();
    if letters.iter().any(|(r, _)| rs.pairing(*r, lambda) < 0) {
        return match element.tail {
            Tail::Collected(_) => Ok(None),
            Tail::Raw(_) => Err(ParabolicError::Undecided("an uncollected tail".into())),
        };
    }
    let kept: Vec<(Root, crate::coeffring::Poly)> = letters
        .into_iter()
        .filter(|(r, _)| rs.pairing(*r, lambda) == 0)
        .collect();
    let mut word = Word(element.frame_letters.clone());
    word = word.then(&Word::from_roots(kept));
    let mut out = normalize(rs, &word)?;
    // frame letters may have been cleared if they act trivially on roots;
    // keep the original frame bookkeeping
    out.frame = element.frame.clone();
    Ok(Some(out))
}

fn sign(x: i32) -> i32 {
    x.signum()
}

/// `ζ = mλ + μ` with the least `m ≥ 1` preserving the sign of every nonzero
/// pairing with `λ`.
pub fn refine(rs: &RootSystem, lambda: &Cochar, mu: &Cochar) -> Cochar {
    let mut m = 1;
    loop {
        let zeta = lambda.scaled(m).add(mu);
        if rs.roots().all(|r| {
            let p = rs.pairing(r, lambda);
            p == 0 || sign(rs.pairing(r, &zeta)) == sign(p)
        }) {
            return zeta;
        }
        m += 1;
    }
}

/// Solves `C x = b` over the rationals for an invertible square `C`.
fn solve_rational(c: &[Vec<i64>], b: &[i64]) -> Option<Vec<Ratio<i64>>> {
    let n = b.len();
    let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = c[i].iter().map(|&v| Ratio::from_integer(v)).collect();
            row.push(Ratio::from_integer(b[i]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Ratio::from_integer(0))?;
        a.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                for k in 0..=n {
                    let sub = f * a[col][k];
                    a[r][k] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}

/// An integral cocharacter in the span of the coroots of `simples` pairing
/// positively with the members of `chosen` and to zero with the rest.
fn coweight(rs: &RootSystem, simples: &[Root], chosen: &[bool]) -> Cochar {
    let c: Vec<Vec<i64>> = simples
        .iter()
        .map(|&bi| {
            simples
                .iter()
                .map(|&bj| rs.pairing(bi, &rs.coroot(bj)) as i64)
                .collect()
        })
        .collect();
    let b: Vec<i64> = chosen.iter().map(|&x| x as i64).collect();
    let x = solve_rational(&c, &b).expect("Cartan matrices are invertible");
    let den = x.iter().fold(1i64, |acc, r| {
        let d = *r.denom();
        acc / gcd(acc, d) * d
    });
    let mut out = Cochar::zero(rs.rank());
    for (&bj, xj) in simples.iter().zip(&x) {
        let k = (xj * Ratio::from_integer(den)).to_integer() as i32;
        out = out.add(&rs.coroot(bj).scaled(k));
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    /// Names of the Levi simple roots made positive by the refinement.
    pub subset: Vec<String>,
    pub zeta: Vec<i32>,
    pub contains_all: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub candidates: Vec<Candidate>,
    pub minimal: bool,
    /// The smallest refinement still containing every generator.
    pub witness: Option<Candidate>,
}

/// Searches the standard parabolics strictly inside `P_λ` (one for each
/// nonempty subset of Levi simple roots) for one that still contains all
/// generators.
pub fn minimality_certificate(
    rs: &RootSystem,
    reg: &Registry,
    data: &RParabolicData,
    generators: &[Word],
) -> Result<MinimalityReport, ParabolicError> {
    let elements = generators
        .iter()
        .map(|g| normalize(rs, g))
        .collect::<Result<Vec<_>, _>>()?;
    for (g, e) in generators.iter().zip(&elements) {
        match contains(rs, &data.lambda, e) {
            Some(true) => {}
            Some(false) => return Err(ParabolicError::NotContained(render_word(rs, reg, g))),
            None => return Err(ParabolicError::Undecided(render_word(rs, reg, g))),
        }
    }
    let simples = data.levi_simple_roots(rs);
    let r = simples.len();
    let mut candidates = Vec::new();
    for mask in 1u32..(1 << r) {
        let chosen: Vec<bool> = (0..r).map(|i| mask >> i & 1 == 1).collect();
        let mu = coweight(rs, &simples, &chosen);
        let zeta = refine(rs, &data.lambda, &mu);
        let mut all = true;
        for e in &elements {
            if contains(rs, &zeta, e) != Some(true) {
                all = false;
                break;
            }
        }
        candidates.push(Candidate {
            subset: simples
                .iter()
                .zip(&chosen)
                .filter(|(_, &c)| c)
                .map(|(&s, _)| rs.render_root(s))
                .collect(),
            zeta: zeta.0.clone(),
            contains_all: all,
        });
    }
    let witness = candidates
        .iter()
        .filter(|c| c.contains_all)
        .max_by_key(|c| c.subset.len())
        .cloned();
    Ok(MinimalityReport {
        minimal: witness.is_none(),
        candidates,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardParabolic {
    /// Simple roots of the Levi factor.
    pub levi: Vec<usize>,
    pub data: RParabolicData,
}

/// All standard parabolics `P_I`, including `G` itself (`I` = every simple
/// root) and the Borel (`I = ∅`).
pub fn standard_parabolics(rs: &RootSystem) -> Vec<StandardParabolic> {
    let n = rs.rank();
    let simples: Vec<Root> = (0..n).map(|i| rs.simple(i)).collect();
    (0u32..(1 << n))
        .map(|mask| {
            let levi: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let chosen: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 0).collect();
            let lambda = if chosen.iter().any(|&c| c) {
                coweight(rs, &simples, &chosen)
            } else {
                Cochar::zero(n)
            };
            StandardParabolic {
                levi,
                data: rparabolic(rs, &lambda),
            }
        })
        .collect()
}

/// Every coefficient is a polynomial in `a = s²`, i.e. `s` only occurs to
/// even powers.
pub fn is_k_rational_as_presented(reg: &Registry, word: &Word) -> bool {
    let Some(s) = reg.sqrt_var() else {
        return true;
    };
    fn rational(a: &Atom, s: crate::coeffring::Var) -> bool {
        match a {
            Atom::Root { coeff, .. } => coeff.terms().all(|m| m.exponent(s) % 2 == 0),
            Atom::Inverse(inner) => rational(inner, s),
            _ => true,
        }
    }
    word.atoms().iter().all(|a| rational(a, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::parse_word;
    use crate::rootsys::Dynkin;

    fn d4() -> RootSystem {
        RootSystem::new(Dynkin::D4).unwrap()
    }

    #[test]
    fn d4_highest_coroot() {
        let rs = d4();
        let lambda = rs.parse_cochar("12").unwrap();
        let data = rparabolic(&rs, &lambda);
        let mut l = RParabolicData::labels(&rs, &data.l_roots);
        l.sort();
        assert_eq!(l, vec![-3, -2, -1, 1, 2, 3]);
        let mut u = RParabolicData::labels(&rs, &data.u_roots);
        u.sort();
        assert_eq!(u, (4..=12).collect::<Vec<_>>());
        assert_eq!(data.sigma_components, vec![0, 1, 2]);
    }

    #[test]
    fn zero_and_a2() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let data = rparabolic(&rs, &Cochar::zero(2));
        assert!(!data.is_proper());
        assert_eq!(data.p_roots.len(), 6);
        let data = rparabolic(&rs, &rs.parse_cochar("a+b").unwrap());
        assert_eq!(RParabolicData::labels(&rs, &data.u_roots), vec![1, 2, 3]);
        assert_eq!(data.sigma_components, vec![0, 1]);
    }

    #[test]
    fn refinement_examples() {
        let rs = d4();
        let lambda = rs.parse_cochar("12").unwrap();
        assert_eq!(refine(&rs, &lambda, &Cochar::zero(4)), lambda);
        let zeta = refine(&rs, &lambda, &rs.parse_cochar("a").unwrap());
        let data = rparabolic(&rs, &zeta);
        let mut u = RParabolicData::labels(&rs, &data.u_roots);
        u.sort();
        assert_eq!(u, vec![1, 4, 5, 6, 7, 8, 9, 10, 11, 12]);
        let mut l = RParabolicData::labels(&rs, &data.l_roots);
        l.sort();
        assert_eq!(l, vec![-3, -2, 2, 3]);
    }

    #[test]
    fn limits() {
        let rs = d4();
        let mut reg = Registry::standard();
        let lambda = rs.parse_cochar("12").unwrap();
        let w = parse_word(&rs, &mut reg, "e-12(1)*e-2(s)").unwrap();
        let e = normalize(&rs, &w).unwrap();
        assert_eq!(limit_along(&rs, &lambda, &e).unwrap(), None);
        let u = parse_word(&rs, &mut reg, "e4(x)*e12(y)*e2(z)").unwrap();
        let lim = limit_along(&rs, &lambda, &normalize(&rs, &u).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(lim.render(&rs, &reg), "e2(z)");
    }

    #[test]
    fn d4_minimality() {
        let rs = d4();
        let mut reg = Registry::standard();
        let data = rparabolic(&rs, &rs.parse_cochar("12").unwrap());
        let gens = vec![
            parse_word(&rs, &mut reg, "n[a]·sigma").unwrap(),
            parse_word(&rs, &mut reg, "t[a+g](t)").unwrap(),
        ];
        let report = minimality_certificate(&rs, &reg, &data, &gens).unwrap();
        assert_eq!(report.candidates.len(), 7);
        assert!(report.minimal);
        let none = minimality_certificate(&rs, &reg, &data, &[]).unwrap();
        assert!(!none.minimal);
        assert_eq!(none.witness.unwrap().subset.len(), 3);
    }

    #[test]
    fn a2_standard_parabolics() {
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let mut reg = Registry::standard();
        let gens = [
            parse_word(&rs, &mut reg, "sigma·e3(x^2)").unwrap(),
            parse_word(&rs, &mut reg, "e3(1)").unwrap(),
        ];
        let hits: Vec<Vec<usize>> = standard_parabolics(&rs)
            .into_iter()
            .filter(|p| p.data.is_proper())
            .filter(|p| {
                gens.iter()
                    .all(|g| contains_word(&rs, &p.data.lambda, g).unwrap() == Some(true))
            })
            .map(|p| p.levi)
            .collect();
        assert_eq!(hits, vec![Vec::<usize>::new()]);
    }
}
