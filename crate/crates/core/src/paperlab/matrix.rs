//! `SL₃ ⋊ ⟨σ⟩` over small fields of characteristic 2, as 3×3 matrices with a
//! flag for the outer component. Used as an oracle for A₂ identities; it
//! shares only the word syntax with the symbolic engine.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use thiserror::Error;

use super::field::{Gf, F16};
use crate::chevalley::{Atom, LieVector, Word};
use crate::coeffring::{Char2Field, Var};
use crate::rootsys::{Dynkin, Root, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the matrix oracle only models A2, not {0}")]
    NotA2(String),
    #[error("a unit evaluated to zero")]
    ZeroUnit,
    #[error("singular matrix")]
    Singular,
}

pub type Mat3<F> = [[F; 3]; 3];

pub fn identity<F: Char2Field>() -> Mat3<F> {
    let mut m = [[F::zero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn mat_mul<F: Char2Field>(a: &Mat3<F>, b: &Mat3<F>) -> Mat3<F> {
    let mut out = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = F::zero();
            for k in 0..3 {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn det<F: Char2Field>(m: &Mat3<F>) -> F {
    // signs vanish in characteristic 2
    m[0][0] * (m[1][1] * m[2][2] + m[1][2] * m[2][1])
        + m[0][1] * (m[1][0] * m[2][2] + m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] + m[1][1] * m[2][0])
}

pub fn mat_inverse<F: Char2Field>(m: &Mat3<F>) -> Option<Mat3<F>> {
    let d = det(m).inv()?;
    let mut out = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // cofactor of (j, i)
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                + m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
            out[i][j] = minor * d;
        }
    }
    Some(out)
}

fn transpose<F: Char2Field>(m: &Mat3<F>) -> Mat3<F> {
    let mut out = *m;
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m[j][i];
        }
    }
    out
}

/// `J X J` with `J` the antidiagonal unit matrix: reverses rows and columns.
fn flip<F: Char2Field>(m: &Mat3<F>) -> Mat3<F> {
    let mut out = *m;
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m[2 - i][2 - j];
        }
    }
    out
}

/// `g ↦ J (gᵀ)⁻¹ J⁻¹`.
pub fn sigma_of<F: Char2Field>(g: &Mat3<F>) -> Mat3<F> {
    flip(&transpose(
        &mat_inverse(g).expect("group elements are invertible"),
    ))
}

/// Differential of σ on `gl₃`: `X ↦ −J Xᵀ J`.
pub fn lie_sigma<F: Char2Field>(x: &Mat3<F>) -> Mat3<F> {
    flip(&transpose(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixElement<F> {
    pub m: Mat3<F>,
    pub sigma: bool,
}

impl<F: Char2Field> MatrixElement<F> {
    pub fn identity() -> Self {
        MatrixElement {
            m: identity(),
            sigma: false,
        }
    }

    pub fn sigma() -> Self {
        MatrixElement {
            m: identity(),
            sigma: true,
        }
    }

    pub fn linear(m: Mat3<F>) -> Self {
        MatrixElement { m, sigma: false }
    }

    /// `(g, a)(h, b) = (g·σ^a(h), a + b)`.
    pub fn mul(&self, other: &Self) -> Self {
        let h = if self.sigma {
            sigma_of(&other.m)
        } else {
            other.m
        };
        MatrixElement {
            m: mat_mul(&self.m, &h),
            sigma: self.sigma ^ other.sigma,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = mat_inverse(&self.m).expect("group elements are invertible");
        MatrixElement {
            m: if self.sigma { sigma_of(&inv) } else { inv },
            sigma: self.sigma,
        }
    }

    pub fn conjugate(&self, x: &Self) -> Self {
        self.mul(x).mul(&self.inverse())
    }

    /// `Ad(g) X`, for the linear part composed with σ on `gl₃`.
    pub fn adjoint(&self, x: &Mat3<F>) -> Mat3<F> {
        let y = if self.sigma { lie_sigma(x) } else { *x };
        let inv = mat_inverse(&self.m).expect("group elements are invertible");
        mat_mul(&mat_mul(&self.m, &y), &inv)
    }
}

/// Matrix position of the root space: α ↦ (0,1), β ↦ (1,2), α+β ↦ (0,2),
/// negatives transposed.
fn root_position(rs: &RootSystem, r: Root) -> (usize, usize) {
    let (i, j) = match rs.coeffs(r) {
        [1, 0] => (0, 1),
        [0, 1] => (1, 2),
        [1, 1] => (0, 2),
        [-1, 0] => (1, 0),
        [0, -1] => (2, 1),
        [-1, -1] => (2, 0),
        other => unreachable!("{other:?} is not an A2 root"),
    };
    (i, j)
}

pub fn root_element<F: Char2Field>(rs: &RootSystem, r: Root, x: F) -> Mat3<F> {
    let mut m = identity();
    let (i, j) = root_position(rs, r);
    m[i][j] = x;
    m
}

pub fn basis_matrix<F: Char2Field>(rs: &RootSystem, r: Root) -> Mat3<F> {
    let mut m = [[F::zero(); 3]; 3];
    let (i, j) = root_position(rs, r);
    m[i][j] = F::one();
    m
}

/// `h_α = E₁₁ − E₂₂`, `h_β = E₂₂ − E₃₃`, `e_ζ = E_ij`, with coefficients
/// evaluated at `point`.
pub fn lie_matrix<F: Char2Field>(
    rs: &RootSystem,
    v: &LieVector,
    point: &impl Fn(Var) -> F,
) -> Result<Mat3<F>, OracleError> {
    let mut out = [[F::zero(); 3]; 3];
    for (&r, c) in &v.e {
        let (i, j) = root_position(rs, r);
        out[i][j] = out[i][j] + c.eval(point).ok_or(OracleError::ZeroUnit)?;
    }
    for (k, c) in v.h.iter().enumerate() {
        let x = c.eval(point).ok_or(OracleError::ZeroUnit)?;
        out[k][k] = out[k][k] + x;
        out[k + 1][k + 1] = out[k + 1][k + 1] + x;
    }
    Ok(out)
}

fn pow_signed<F: Char2Field>(t: F, k: i32) -> Result<F, OracleError> {
    let base = if k < 0 {
        t.inv().ok_or(OracleError::ZeroUnit)?
    } else {
        t
    };
    let mut out = F::one();
    for _ in 0..k.unsigned_abs() {
        out = out * base;
    }
    Ok(out)
}

pub fn eval_atom<F: Char2Field>(
    rs: &RootSystem,
    atom: &Atom,
    point: &impl Fn(Var) -> F,
) -> Result<MatrixElement<F>, OracleError> {
    Ok(match atom {
        Atom::Root { root, coeff } => {
            let x = coeff.eval(point).ok_or(OracleError::ZeroUnit)?;
            MatrixElement::linear(root_element(rs, *root, x))
        }
        Atom::Weyl(xi) => {
            let a = root_element(rs, *xi, F::one());
            let b = root_element(rs, rs.neg(*xi), F::one());
            MatrixElement::linear(mat_mul(&mat_mul(&a, &b), &a))
        }
        Atom::Torus { cochar, unit } => {
            let mut t = F::one();
            for &(v, e) in unit.exponents() {
                t = t * pow_signed(point(v), e)?;
            }
            let (c1, c2) = (cochar.0[0], cochar.0[1]);
            let mut m = [[F::zero(); 3]; 3];
            m[0][0] = pow_signed(t, c1)?;
            m[1][1] = pow_signed(t, c2 - c1)?;
            m[2][2] = pow_signed(t, -c2)?;
            MatrixElement::linear(m)
        }
        Atom::Graph(k) => {
            if k % 2 == 1 {
                MatrixElement::sigma()
            } else {
                MatrixElement::identity()
            }
        }
        Atom::Inverse(a) => eval_atom(rs, a, point)?.inverse(),
    })
}

pub fn eval_word<F: Char2Field>(
    rs: &RootSystem,
    word: &Word,
    point: &impl Fn(Var) -> F,
) -> Result<MatrixElement<F>, OracleError> {
    let mut out = MatrixElement::identity();
    for atom in word.atoms() {
        out = out.mul(&eval_atom(rs, atom, point)?);
    }
    Ok(out)
}

fn atom_vars(atom: &Atom, out: &mut Vec<Var>) {
    match atom {
        Atom::Root { coeff, .. } => out.extend(coeff.variables()),
        Atom::Torus { unit, .. } => out.extend(unit.exponents().iter().map(|&(v, _)| v)),
        Atom::Inverse(a) => atom_vars(a, out),
        _ => {}
    }
}

pub fn word_vars(words: &[&Word]) -> Vec<Var> {
    let mut vars = Vec::new();
    for w in words {
        for a in w.atoms() {
            atom_vars(a, &mut vars);
        }
    }
    vars.sort();
    vars.dedup();
    vars
}

/// A random point of F₁₆ with every variable nonzero.
pub fn random_point(vars: &[Var], rng: &mut impl Rng) -> HashMap<Var, F16> {
    vars.iter()
        .map(|&v| (v, Gf::new(rng.gen_range(1..16))))
        .collect()
}

/// Evaluates both sides at `points` random points of F₁₆.
pub fn matrix_oracle_check(
    rs: &RootSystem,
    lhs: &Word,
    rhs: &Word,
    points: usize,
    rng: &mut impl Rng,
) -> Result<bool, OracleError> {
    if rs.kind() != Dynkin::A(2) {
        return Err(OracleError::NotA2(rs.kind().to_string()));
    }
    let vars = word_vars(&[lhs, rhs]);
    for _ in 0..points {
        let p = random_point(&vars, rng);
        let at = |v: Var| p[&v];
        if eval_word(rs, lhs, &at)? != eval_word(rs, rhs, &at)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⟨σ, G_{α+β}(F)⟩` by closure under right multiplication by generators.
pub fn m_group<const M: u32>() -> Vec<MatrixElement<Gf<M>>> {
    let mut gens = vec![MatrixElement::sigma()];
    for x in Gf::<M>::nonzero() {
        let mut up = identity::<Gf<M>>();
        up[0][2] = x;
        let mut down = identity::<Gf<M>>();
        down[2][0] = x;
        gens.push(MatrixElement::linear(up));
        gens.push(MatrixElement::linear(down));
    }
    let mut seen: HashSet<MatrixElement<Gf<M>>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(MatrixElement::identity());
    queue.push_back(MatrixElement::identity());
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = g.mul(s);
            if seen.insert(h) {
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out
}

/// `(σ ε_{α+β}(x²), ε_{α+β}(1))`.
pub fn m_pair<const M: u32>(x: Gf<M>) -> (MatrixElement<Gf<M>>, MatrixElement<Gf<M>>) {
    let mut a = identity::<Gf<M>>();
    a[0][2] = x * x;
    let mut b = identity::<Gf<M>>();
    b[0][2] = Gf::one();
    (
        MatrixElement::sigma().mul(&MatrixElement::linear(a)),
        MatrixElement::linear(b),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    pub group_order: usize,
    /// Classes of the input values, each sorted, in order of first member.
    pub classes: Vec<Vec<u8>>,
}

/// Partitions `values` by simultaneous M(F)-conjugacy of the pairs
/// `(m₁, m₂)_x`.
pub fn enumerate_m_conjugacy<const M: u32>(values: &[Gf<M>]) -> ConjugacyPartition {
    let group = m_group::<M>();
    let pairs: Vec<_> = values.iter().map(|&x| m_pair(x)).collect();
    let mut parent: Vec<usize> = (0..values.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let index: HashMap<_, usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    for g in &group {
        for (i, (a, b)) in pairs.iter().enumerate() {
            let image = (g.conjugate(a), g.conjugate(b));
            if let Some(&j) = index.get(&image) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut classes: Vec<Vec<u8>> = Vec::new();
    let mut root_of: HashMap<usize, usize> = HashMap::new();
    for (i, value) in values.iter().enumerate() {
        let r = find(&mut parent, i);
        let k = *root_of.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(value.bits());
    }
    for c in &mut classes {
        c.sort_unstable();
        c.dedup();
    }
    ConjugacyPartition {
        group_order: group.len(),
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paperlab::field::{F2, F4};

    fn a2() -> RootSystem {
        RootSystem::new(Dynkin::A(2)).unwrap()
    }

    #[test]
    fn sigma_pinning() {
        let rs = a2();
        let (a, b, ab) = (rs.simple(0), rs.simple(1), rs.by_label(3).unwrap());
        let s = MatrixElement::<F16>::sigma();
        for x in F16::elements() {
            let ea = MatrixElement::linear(root_element(&rs, a, x));
            let eb = MatrixElement::linear(root_element(&rs, b, x));
            let eab = MatrixElement::linear(root_element(&rs, ab, x));
            assert_eq!(s.conjugate(&ea), eb);
            assert_eq!(s.conjugate(&eb), ea);
            assert_eq!(s.conjugate(&eab), eab);
        }
        assert_eq!(s.mul(&s), MatrixElement::identity());
        let mut d = identity::<F16>();
        d[0][0] = F16::new(3);
        d[1][1] = F16::new(3).inv().unwrap();
        let t = MatrixElement::linear(d);
        assert_eq!(det(&t.m), F16::one());
        let image = s.conjugate(&t);
        assert!(image.m[0][1] == F16::zero() && image.m[1][0] == F16::zero());
    }

    #[test]
    fn inverse_and_product() {
        let rs = a2();
        let g = MatrixElement::linear(root_element(&rs, rs.simple(0), F16::new(7)))
            .mul(&MatrixElement::sigma())
            .mul(&MatrixElement::linear(root_element(
                &rs,
                rs.by_label(-3).unwrap(),
                F16::new(9),
            )));
        assert_eq!(g.mul(&g.inverse()), MatrixElement::identity());
        assert_eq!(g.inverse().mul(&g), MatrixElement::identity());
    }

    #[test]
    fn m_group_orders() {
        assert_eq!(m_group::<1>().len(), 12);
        assert_eq!(m_group::<2>().len(), 120);
    }

    #[test]
    fn conjugacy_partitions() {
        let all: Vec<F4> = F4::elements().collect();
        let p = enumerate_m_conjugacy(&all);
        assert_eq!(p.group_order, 120);
        assert_eq!(p.classes, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(enumerate_m_conjugacy(&[F4::zero()]).classes.len(), 1);
        let two: Vec<F2> = F2::elements().collect();
        assert_eq!(enumerate_m_conjugacy(&two).classes.len(), 2);
    }
}
